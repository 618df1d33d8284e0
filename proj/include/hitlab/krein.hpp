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

#ifndef HITLAB_KREIN_HPP_
#define HITLAB_KREIN_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "hitlab/numeric.hpp"
#include "hitlab/polynomial.hpp"
#include "hitlab/string.hpp"

namespace hitlab {

// Solutions of the string equation
//
//   u(z, lambda) = u(a) + u'(a) (z - a) + lambda * int_{[a, z)} (z - t) u(t, lambda) dm(t)
//
// are piecewise linear in z for atomic m: between atoms the value moves
// along the slope, and an atom of mass m at t adds lambda * m * u(t) to the
// slope. Both solutions below are polynomials in lambda with positive
// coefficients.
//
//   psi: u(start) = 0, u'(start) = 1.  y / psi(y, .) is the Laplace
//        transform of the exponential-product factor of the hitting law.
//   phi: u(start) = 1, u'(start) = 0.  1 / phi(y, .) is the Laplace
//        transform of the full hitting law for one-sided strings.

enum class PolynomialKind { Psi, Phi };

/// A solution of the string equation at a fixed position, as a polynomial
/// in the spectral variable.
class LambdaPolynomial {
 public:
  LambdaPolynomial(std::vector<Wide> coefficients, PolynomialKind kind);

  const std::vector<Wide>& coefficients() const { return c_; }
  PolynomialKind kind() const { return kind_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Wide& operator[](std::size_t i) const { return c_[i]; }

  Wide operator()(const Wide& lambda) const;
  Polynomial<Wide> as_polynomial() const { return Polynomial<Wide>(c_); }

 private:
  std::vector<Wide> c_;
  PolynomialKind kind_;
};

struct KreinRecord {
  Real position;
  LambdaPolynomial value;
  LambdaPolynomial right_slope;
};

/// Per-atom (value, right slope) pairs along the propagation.
struct KreinTrace {
  std::vector<KreinRecord> records;
};

struct KreinResult {
  LambdaPolynomial polynomial;
  KreinTrace trace;
  Precision backend;
};

/// Resolves Precision::Auto: exact rationals for at most 16 atoms in
/// play, extended floating point otherwise.
Precision resolve_precision(Precision requested, std::size_t atom_count);

/// psi(target, .) from the start. Atoms below the start do not enter.
KreinResult propagate_psi(const AtomicString& s, Precision precision = Precision::Auto);

/// phi(target, .) from the start. Throws InputError when mass lies below
/// the start.
KreinResult propagate_phi(const AtomicString& s, Precision precision = Precision::Auto);

/// Laplace transform of the hitting law as numerator / denominator, both
/// normalized to value 1 at lambda = 0. The reflecting solution starts at
/// the leftmost atom; numerator = its value at the start, denominator = its
/// value at the target. For one-sided strings the numerator is 1 and the
/// denominator is phi. Two-sided strings must have an atom at the start.
struct HittingTransform {
  LambdaPolynomial numerator;
  LambdaPolynomial denominator;
};
HittingTransform hitting_transform(const AtomicString& s, Precision precision = Precision::Auto);

struct MeanIdentities {
  Real full_mean;  ///< E[tau_target] = sum over [start, y) of (y - t) m
  Real mu1_mean;   ///< sum of 1/a_i = (1/y) sum over (start, y) of t (y - t) m
};

/// Computed exactly from the atoms. Requires a one-sided string.
MeanIdentities mean_identities(const AtomicString& s);

/// Expected hitting time from the start, valid for two-sided strings too:
/// sum over atoms below y of (y - max(t, start)) m.
Real expected_hitting_time(const AtomicString& s);

struct DegreeCheck {
  int psi_degree;
  int phi_degree;
  std::size_t interior_count;
};
DegreeCheck degree_check(const AtomicString& s, Precision precision = Precision::Auto);

}  // namespace hitlab

#endif  // HITLAB_KREIN_HPP_
