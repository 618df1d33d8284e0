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

#ifndef HITLAB_SPECTRA_HPP_
#define HITLAB_SPECTRA_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "hitlab/krein.hpp"
#include "hitlab/numeric.hpp"
#include "hitlab/polynomial.hpp"
#include "hitlab/string.hpp"

namespace hitlab {

enum class RateSource { PsiRoots, PhiRoots, GeneratorEigen };

/// Strictly increasing positive exponential rates.
struct RateSet {
  std::vector<Wide> rates;
  RateSource source;
  /// |P(-rate)| / sum_j |c_j| rate^j for roots, ||S v + rate v|| for eigenpairs.
  std::vector<Real> residuals;

  std::size_t size() const { return rates.size(); }
  std::vector<Real> as_real() const;
};

struct RootOptions {
  /// Consecutive rates closer than this (relative) abort the computation.
  Real collision_tolerance = 1e-9L;
  /// Relative bracket width at which refinement stops.
  Real refine_tolerance = 1e-72L;
};

/// Negated real roots of a polynomial with positive coefficients, isolated
/// by Sturm sequences on (-inf, 0) and refined by safeguarded Newton in
/// 80-digit arithmetic. Throws InputError for constants and NumericalError
/// when fewer than `degree` simple roots can be isolated.
RateSet real_roots(const LambdaPolynomial& p, const RootOptions& options = {});

/// Distinct roots of q in (0, inf), ascending, isolated by Sturm sequences
/// and refined to the given relative width. Requires q(0) != 0.
std::vector<Wide> positive_real_roots(const Polynomial<Wide>& q, const Wide& refine_tolerance);

/// Killed birth-death generator on the atoms of a string, symmetrized by
/// D = diag(sqrt(m_i)):
///   S_ii = -(right_i + left_i),  S_{i,i+1} = 1 / (g_i sqrt(m_i m_{i+1}))
/// with right_i = 1/(m_i g_i), left_i = 1/(m_i g_{i-1}), g_i the gap to the
/// next atom (or to the target for the last atom). The leftmost atom has no
/// left rate.
struct KilledGenerator {
  Eigen::Matrix<Real, Eigen::Dynamic, 1> diagonal;
  Eigen::Matrix<Real, Eigen::Dynamic, 1> off_diagonal;
  std::vector<Real> sqrt_mass;
  Real absorption_rate;  ///< last state -> target
};
KilledGenerator build_killed_generator(const AtomicString& s);

/// Eigen-decomposition of -Q; rates ascending, vectors orthonormal columns
/// in the symmetrized basis.
struct SpectralDecomposition {
  std::vector<Real> rates;
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> vectors;
  std::vector<Real> residuals;
};
SpectralDecomposition spectral_decomposition(const AtomicString& s);

RateSet generator_eigenrates(const AtomicString& s);

/// b_1 < a_1 < b_2 < ... < a_n < b_{n+1}. Requires |b| = |a| + 1.
bool check_interlacing(const RateSet& a, const RateSet& b);

}  // namespace hitlab

#endif  // HITLAB_SPECTRA_HPP_
