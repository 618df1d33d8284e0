// Copyright 2026 The hitlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HITLAB_STRING_HPP_
#define HITLAB_STRING_HPP_

#include <cstddef>
#include <vector>

#include "hitlab/numeric.hpp"

namespace hitlab {

/// A point mass of the speed measure.
struct Atom {
  Rational position;
  Rational mass;
};

/// Piecewise-constant density of dm/dz on (lower, upper). `density` holds
/// one value per equal-width cell; a single value means a constant density.
struct ContinuousPiece {
  Rational lower;
  Rational upper;
  std::vector<Rational> density;
};

/// Ingestion form of a speed measure: atoms, continuous pieces, start and
/// target level.
struct StringSpec {
  std::vector<Atom> atoms;
  std::vector<ContinuousPiece> pieces;
  Rational start;
  Rational target;
};

/// Validated, purely atomic speed measure in natural scale.
///
/// Atoms are strictly increasing in position with positive masses, the
/// target lies above every atom, and at least one atom sits in
/// [start, target). Atoms below `start` are allowed (two-sided strings).
/// Instances are immutable after construction.
class AtomicString {
 public:
  /// Throws InputError naming the violated rule.
  AtomicString(std::vector<Atom> atoms, Rational start, Rational target);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const Rational& start() const { return start_; }
  const Rational& target() const { return target_; }
  std::size_t size() const { return atoms_.size(); }

  Real position(std::size_t i) const { return to_real(atoms_[i].position); }
  Real mass(std::size_t i) const { return to_real(atoms_[i].mass); }

  bool is_normalized() const { return start_ == 0; }
  /// No atoms strictly below the start.
  bool is_one_sided() const;
  /// An atom sits exactly at the start.
  bool has_start_atom() const;
  /// Index of the atom at the start, or of the leftmost atom at or above it.
  std::size_t start_index() const;
  std::size_t atoms_below_start() const;

 private:
  std::vector<Atom> atoms_;
  Rational start_;
  Rational target_;
};

/// Rejects specs with continuous pieces; those go through `discretize_spec`.
AtomicString validate(const StringSpec& spec);

/// Shifts every coordinate by -start.
AtomicString translate_to_origin(const AtomicString& s);

/// Number of atoms strictly inside (open_lower, open_upper).
std::size_t count_increase_points(const AtomicString& s,
                                  const Rational& open_lower,
                                  const Rational& open_upper);

enum class DiscretizationScheme { Midpoint };

/// Lumps the mass of each of k equal cells onto the cell midpoint.
std::vector<Atom> discretize(const ContinuousPiece& piece, std::size_t k,
                             DiscretizationScheme scheme = DiscretizationScheme::Midpoint);

/// Discretizes every piece with k cells, merges with the atoms of the spec
/// (coinciding positions add their masses) and validates the result.
AtomicString discretize_spec(const StringSpec& spec, std::size_t k);

/// Total mass of a piece.
Rational piece_mass(const ContinuousPiece& piece);

}  // namespace hitlab

#endif  // HITLAB_STRING_HPP_
