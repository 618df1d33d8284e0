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

#ifndef HITLAB_DENSITY_HPP_
#define HITLAB_DENSITY_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "hitlab/krein.hpp"
#include "hitlab/numeric.hpp"
#include "hitlab/spectra.hpp"
#include "hitlab/string.hpp"

namespace hitlab {

struct ExpTerm {
  Wide coefficient;
  Wide rate;
};

/// Finite exponential sum  sum_i c_i exp(-b_i t)  on (0, inf), rates
/// strictly increasing and positive. `order` counts how many times the
/// underlying hitting density has been differentiated.
class ExpSumDensity {
 public:
  ExpSumDensity() = default;
  ExpSumDensity(std::vector<ExpTerm> terms, int order = 0);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  int order() const { return order_; }
  std::size_t size() const { return terms_.size(); }

  /// Long double copies used by the fast evaluators.
  std::span<const Real> coefficients() const { return coef_; }
  std::span<const Real> rates() const { return rate_; }

 private:
  std::vector<ExpTerm> terms_;
  int order_ = 0;
  std::vector<Real> coef_;
  std::vector<Real> rate_;
};

struct MixtureComponent {
  Wide weight;
  Wide rate;
};

/// pi = mu1 * mu2: mu1 a product of exponential factors with rates
/// `mu1_rates`, mu2 = atom_weight * delta_0 + sum_j weight_j Exp(rate_j).
struct Factorization {
  RateSet mu1_rates;
  std::vector<MixtureComponent> mu2_mixture;
  Wide atom_weight = 0;
  bool cm_certificate = false;
  Real min_weight = 0;
  Real weight_sum = 0;
};

/// Weight below which a mixture weight breaks the complete-monotonicity
/// certificate.
inline constexpr Real kCmTolerance = 1e-9L;
/// Mixture weights at or below this may be dropped by reconvolve when their
/// rate cannot be separated from a mu1 rate.
inline constexpr Real kNegligibleWeight = 1e-30L;
/// Partial fractions refuse to run when sum |w_i| / |sum w_i| exceeds this.
inline constexpr Real kMaxPartialFractionCondition = 1e12L;

/// Density of a sum of independent exponentials with the given rates:
/// c_i = b_i prod_{j != i} b_j / (b_j - b_i).
ExpSumDensity hypoexp_from_rates(const RateSet& rates);

/// Density with Laplace transform N / D, N(0) = D(0) = 1, deg N < deg D,
/// given the rates (negated roots) of D.
ExpSumDensity rational_density(const LambdaPolynomial& numerator,
                               const LambdaPolynomial& denominator, const RateSet& rates);

/// Hitting density from the string polynomials in 80-digit arithmetic.
/// One-sided strings give hypoexp_from_rates(real_roots(phi)).
ExpSumDensity hitting_density(const AtomicString& s, Precision precision = Precision::Auto);

/// Hitting density from the eigen-decomposition of the killed generator.
/// The start must be an atom, or lie below every atom.
ExpSumDensity phasetype_general(const AtomicString& s);

Factorization yamazato_factorize(const AtomicString& s, Precision precision = Precision::Auto);

/// Density of mu1 * mu2, assembled analytically. Throws NumericalError when
/// a mu2 rate coincides with a mu1 rate and carries a non-negligible weight.
ExpSumDensity reconvolve(const Factorization& f);

ExpSumDensity derivative(const ExpSumDensity& d, int n);

Real eval(const ExpSumDensity& d, Real t);
Wide eval_wide(const ExpSumDensity& d, const Wide& t);
Real cdf(const ExpSumDensity& d, Real t);
Real moment(const ExpSumDensity& d, int k);

/// sum_i c_i (-b_i)^j, the j-th derivative at 0+.
Wide derivative_at_zero(const ExpSumDensity& d, int j);

/// Hitting density on a t grid from the uniformized killed generator,
/// truncation error below `tolerance`.
std::vector<Real> uniformization_check(const AtomicString& s, std::span<const Real> t_grid,
                                       Real tolerance = 1e-12L);

/// Geometric grid of `points` values on [lo, hi].
std::vector<Real> geometric_grid(Real lo, Real hi, std::size_t points);

}  // namespace hitlab

#endif  // HITLAB_DENSITY_HPP_
