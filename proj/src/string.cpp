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

#include "hitlab/string.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace hitlab {

AtomicString::AtomicString(std::vector<Atom> atoms, Rational start, Rational target)
    : atoms_(std::move(atoms)), start_(std::move(start)), target_(std::move(target)) {
  if (target_ <= start_) throw InputError("target must exceed start");
  if (atoms_.empty()) throw InputError("no mass in [start, target)");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].mass <= 0) throw InputError("nonpositive mass");
    if (i > 0) {
      if (atoms_[i].position == atoms_[i - 1].position) throw InputError("duplicate position");
      if (atoms_[i].position < atoms_[i - 1].position) throw InputError("unsorted atoms");
    }
  }
  if (atoms_.back().position >= target_)
    throw InputError("target must exceed all atom positions");
  if (atoms_.back().position < start_) throw InputError("no mass in [start, target)");
}

bool AtomicString::is_one_sided() const { return atoms_.front().position >= start_; }

bool AtomicString::has_start_atom() const {
  return std::any_of(atoms_.begin(), atoms_.end(),
                     [&](const Atom& a) { return a.position == start_; });
}

std::size_t AtomicString::start_index() const { return atoms_below_start(); }

std::size_t AtomicString::atoms_below_start() const {
  return static_cast<std::size_t>(std::count_if(
      atoms_.begin(), atoms_.end(), [&](const Atom& a) { return a.position < start_; }));
}

AtomicString validate(const StringSpec& spec) {
  if (!spec.pieces.empty())
    throw InputError("continuous pieces must be discretized before analysis");
  return AtomicString(spec.atoms, spec.start, spec.target);
}

AtomicString translate_to_origin(const AtomicString& s) {
  std::vector<Atom> shifted = s.atoms();
  for (auto& a : shifted) a.position -= s.start();
  return AtomicString(std::move(shifted), Rational(0), s.target() - s.start());
}

std::size_t count_increase_points(const AtomicString& s, const Rational& open_lower,
                                  const Rational& open_upper) {
  return static_cast<std::size_t>(
      std::count_if(s.atoms().begin(), s.atoms().end(), [&](const Atom& a) {
        return a.position > open_lower && a.position < open_upper;
      }));
}

Rational piece_mass(const ContinuousPiece& piece) {
  const Rational cell = (piece.upper - piece.lower) / Rational(static_cast<long>(piece.density.size()));
  Rational total = 0;
  for (const auto& d : piece.density) total += d * cell;
  return total;
}

namespace {

void check_piece(const ContinuousPiece& piece) {
  if (piece.lower >= piece.upper) throw InputError("piece lower must be below upper");
  if (piece.density.empty()) throw InputError("piece has no density values");
  bool positive = false;
  for (const auto& d : piece.density) {
    if (d < 0) throw InputError("negative piece density");
    positive = positive || d > 0;
  }
  if (!positive) throw InputError("piece density identically zero");
}

}  // namespace

std::vector<Atom> discretize(const ContinuousPiece& piece, std::size_t k,
                             DiscretizationScheme) {
  check_piece(piece);
  if (k == 0) throw InputError("discretization needs k >= 1");
  const Rational width = (piece.upper - piece.lower) / Rational(static_cast<long>(k));
  const auto cells = piece.density.size();
  std::vector<Atom> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const Rational a = piece.lower + width * Rational(static_cast<long>(j));
    const Rational b = a + width;
    // Exact cell mass: integrate the piecewise-constant density over [a, b).
    Rational mass = 0;
    if (cells == 1) {
      mass = piece.density.front() * width;
    } else {
      const Rational h = (piece.upper - piece.lower) / Rational(static_cast<long>(cells));
      for (std::size_t c = 0; c < cells; ++c) {
        const Rational lo = std::max(a, piece.lower + h * Rational(static_cast<long>(c)));
        const Rational hi = std::min(b, piece.lower + h * Rational(static_cast<long>(c + 1)));
        if (hi > lo) mass += piece.density[c] * (hi - lo);
      }
    }
    if (mass > 0) out.push_back(Atom{(a + b) / 2, mass});
  }
  return out;
}

AtomicString discretize_spec(const StringSpec& spec, std::size_t k) {
  std::map<Rational, Rational> merged;
  for (const auto& a : spec.atoms) {
    if (a.mass <= 0) throw InputError("nonpositive mass");
    if (!merged.emplace(a.position, a.mass).second) throw InputError("duplicate position");
  }
  for (const auto& piece : spec.pieces) {
    for (const auto& a : discretize(piece, k)) merged[a.position] += a.mass;
  }
  std::vector<Atom> atoms;
  atoms.reserve(merged.size());
  for (auto& [x, m] : merged) atoms.push_back(Atom{x, m});
  return AtomicString(std::move(atoms), spec.start, spec.target);
}

}  // namespace hitlab
