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

#include "hitlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace hitlab {

ExpSumDensity::ExpSumDensity(std::vector<ExpTerm> terms, int order)
    : terms_(std::move(terms)), order_(order) {
  std::sort(terms_.begin(), terms_.end(),
            [](const ExpTerm& a, const ExpTerm& b) { return a.rate < b.rate; });
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].rate > 0)) throw InputError("exponential rates must be positive");
    if (i > 0 && terms_[i].rate == terms_[i - 1].rate) throw InputError("duplicate rates");
  }
  coef_.reserve(terms_.size());
  rate_.reserve(terms_.size());
  for (const auto& t : terms_) {
    coef_.push_back(to_real(t.coefficient));
    rate_.push_back(to_real(t.rate));
  }
}

namespace {

void check_distinct(const std::vector<Wide>& rates) {
  for (std::size_t i = 1; i < rates.size(); ++i) {
    if (rates[i] - rates[i - 1] <= Wide(1e-9) * rates[i])
      throw NumericalError("duplicate rates in partial fractions");
  }
}

void check_condition(const std::vector<ExpTerm>& terms) {
  Wide total = 0;
  Wide absolute = 0;
  for (const auto& t : terms) {
    total += t.coefficient / t.rate;
    absolute += abs(t.coefficient / t.rate);
  }
  if (total == 0 || absolute / abs(total) > Wide(kMaxPartialFractionCondition))
    throw NumericalError("partial-fraction weights too ill-conditioned (condition " +
                         std::to_string(to_real(Wide(absolute / abs(total)))) + ")");
}

Wide polynomial_at(const std::vector<Wide>& c, const Wide& x) {
  Wide acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Wide derivative_at(const std::vector<Wide>& c, const Wide& x) {
  Wide acc = 0;
  for (std::size_t j = c.size(); j-- > 1;) acc = acc * x + c[j] * static_cast<long>(j);
  return acc;
}

}  // namespace

ExpSumDensity hypoexp_from_rates(const RateSet& rates) {
  const auto& b = rates.rates;
  if (b.empty()) throw InputError("hypoexponential needs at least one rate");
  check_distinct(b);
  std::vector<ExpTerm> terms;
  terms.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    Wide w = 1;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (j != i) w *= b[j] / (b[j] - b[i]);
    }
    terms.push_back({b[i] * w, b[i]});
  }
  check_condition(terms);
  return ExpSumDensity(std::move(terms));
}

ExpSumDensity rational_density(const LambdaPolynomial& numerator,
                               const LambdaPolynomial& denominator, const RateSet& rates) {
  if (numerator.degree() >= denominator.degree())
    throw InputError("transform must be strictly proper");
  if (rates.size() != static_cast<std::size_t>(denominator.degree()))
    throw InputError("rate count must match the denominator degree");
  check_distinct(rates.rates);
  const Wide n0 = numerator[0];
  const Wide d0 = denominator[0];
  std::vector<ExpTerm> terms;
  for (const auto& b : rates.rates) {
    const Wide x = -b;
    const Wide c = (polynomial_at(numerator.coefficients(), x) / n0) /
                   (derivative_at(denominator.coefficients(), x) / d0);
    terms.push_back({c, b});
  }
  check_condition(terms);
  return ExpSumDensity(std::move(terms));
}

ExpSumDensity hitting_density(const AtomicString& s, Precision precision) {
  const HittingTransform tr = hitting_transform(s, precision);
  const RateSet rates = real_roots(tr.denominator);
  if (tr.numerator.degree() == 0) return hypoexp_from_rates(rates);
  return rational_density(tr.numerator, tr.denominator, rates);
}

namespace {

std::size_t chain_start(const AtomicString& s) {
  if (s.has_start_atom()) return s.start_index();
  if (s.is_one_sided()) return 0;
  throw InputError("start not an atom");
}

}  // namespace

ExpSumDensity phasetype_general(const AtomicString& s) {
  const std::size_t start = chain_start(s);
  const KilledGenerator g = build_killed_generator(s);
  const SpectralDecomposition sd = spectral_decomposition(s);
  const auto last = static_cast<Eigen::Index>(s.size() - 1);
  const auto st = static_cast<Eigen::Index>(start);
  const Real scale = g.sqrt_mass.back() / g.sqrt_mass[start] * g.absorption_rate;
  std::vector<ExpTerm> terms;
  for (std::size_t k = 0; k < sd.rates.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    const Real c = sd.vectors(st, kk) * sd.vectors(last, kk) * scale;
    terms.push_back({Wide(c), Wide(sd.rates[k])});
  }
  return ExpSumDensity(std::move(terms));
}

Factorization yamazato_factorize(const AtomicString& s, Precision precision) {
  Factorization f;
  const KreinResult psi = propagate_psi(s, precision);
  f.mu1_rates = psi.polynomial.degree() >= 1 ? real_roots(psi.polynomial)
                                             : RateSet{{}, RateSource::PsiRoots, {}};
  // mu2 has transform (N / D) * psi / y; partial fractions over the poles
  // of D, plus a point mass at 0 when the degrees balance.
  const HittingTransform tr = hitting_transform(s, precision);
  const RateSet poles = real_roots(tr.denominator);
  const Wide y = to_wide(Rational(s.target() - s.start()));
  const auto& psi_c = psi.polynomial.coefficients();
  const Wide n0 = tr.numerator[0];
  const Wide d0 = tr.denominator[0];
  for (const auto& b : poles.rates) {
    const Wide x = -b;
    const Wide residue = polynomial_at(tr.numerator.coefficients(), x) / n0 *
                         (polynomial_at(psi_c, x) / y) /
                         (derivative_at(tr.denominator.coefficients(), x) / d0);
    f.mu2_mixture.push_back({residue / b, b});
  }
  if (tr.numerator.degree() + psi.polynomial.degree() == tr.denominator.degree()) {
    f.atom_weight = tr.numerator.coefficients().back() / n0 * (psi_c.back() / y) /
                    (tr.denominator.coefficients().back() / d0);
  }
  Wide sum = f.atom_weight;
  Wide min_w = f.mu2_mixture.empty() ? f.atom_weight : f.mu2_mixture.front().weight;
  for (const auto& c : f.mu2_mixture) {
    sum += c.weight;
    min_w = std::min(min_w, c.weight);
  }
  f.weight_sum = to_real(sum);
  f.min_weight = to_real(min_w);
  f.cm_certificate = f.min_weight >= -kCmTolerance && f.atom_weight >= 0;
  return f;
}

ExpSumDensity reconvolve(const Factorization& f) {
  std::map<Wide, Wide> acc;
  std::vector<ExpTerm> h;
  if (!f.mu1_rates.rates.empty()) h = hypoexp_from_rates(f.mu1_rates).terms();
  if (h.empty()) {
    if (f.mu2_mixture.empty()) throw InputError("degenerate factorization: both factors trivial");
    for (const auto& c : f.mu2_mixture) acc[c.rate] += c.weight * c.rate;
  } else {
    for (const auto& term : h) acc[term.rate] += f.atom_weight * term.coefficient;
    for (const auto& term : h) {
      for (const auto& c : f.mu2_mixture) {
        const Wide gap = c.rate - term.rate;
        // Rates are refined to ~1e-72; nearer pairs cannot be told apart.
        // The pair contributes at most |c w| b t exp(-a t) <= |c w| b / (e a),
        // so a negligible weight is dropped rather than refused.
        if (abs(gap) <= Wide(1e-45) * c.rate) {
          if (abs(c.weight) <= Wide(kNegligibleWeight)) continue;
          throw NumericalError("factor rates coincide; analytic convolution undefined");
        }
        const Wide k = term.coefficient * c.weight * c.rate / gap;
        acc[term.rate] += k;
        acc[c.rate] -= k;
      }
    }
  }
  std::vector<ExpTerm> terms;
  for (auto& [rate, coef] : acc) terms.push_back({coef, rate});
  return ExpSumDensity(std::move(terms));
}

ExpSumDensity derivative(const ExpSumDensity& d, int n) {
  if (n < 0) throw InputError("derivative order must be nonnegative");
  std::vector<ExpTerm> terms = d.terms();
  for (auto& t : terms) t.coefficient *= pow(Wide(-t.rate), n);
  return ExpSumDensity(std::move(terms), d.order() + n);
}

Real eval(const ExpSumDensity& d, Real t) {
  CompensatedSum<Real> sum;
  const auto c = d.coefficients();
  const auto b = d.rates();
  for (std::size_t i = 0; i < c.size(); ++i) sum.add(c[i] * std::exp(-b[i] * t));
  return sum.value();
}

Wide eval_wide(const ExpSumDensity& d, const Wide& t) {
  Wide sum = 0;
  for (const auto& term : d.terms()) sum += term.coefficient * exp(-term.rate * t);
  return sum;
}

Real cdf(const ExpSumDensity& d, Real t) {
  if (d.order() != 0) throw InputError("cdf requires an order-0 density");
  if (t <= 0) return 0;
  CompensatedSum<Real> sum;
  sum.add(1);
  const auto c = d.coefficients();
  const auto b = d.rates();
  for (std::size_t i = 0; i < c.size(); ++i) sum.add(-(c[i] / b[i]) * std::exp(-b[i] * t));
  return sum.value();
}

Real moment(const ExpSumDensity& d, int k) {
  if (d.order() != 0) throw InputError("moments require an order-0 density");
  if (k < 0) throw InputError("moment order must be nonnegative");
  Wide factorial = 1;
  for (int j = 2; j <= k; ++j) factorial *= j;
  Wide sum = 0;
  for (const auto& t : d.terms()) sum += t.coefficient * factorial / pow(t.rate, k + 1);
  return to_real(sum);
}

Wide derivative_at_zero(const ExpSumDensity& d, int j) {
  Wide sum = 0;
  for (const auto& t : d.terms()) sum += t.coefficient * pow(Wide(-t.rate), j);
  return sum;
}

std::vector<Real> uniformization_check(const AtomicString& s, std::span<const Real> t_grid,
                                       Real tolerance) {
  const std::size_t start = chain_start(s);
  const std::size_t n = s.size();
  std::vector<Real> gap(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational next = i + 1 < n ? s.atoms()[i + 1].position : s.target();
    gap[i] = to_real(Rational(next - s.atoms()[i].position));
  }
  std::vector<Real> right(n), left(n, 0), exit(n);
  Real uniform = 0;
  for (std::size_t i = 0; i < n; ++i) {
    right[i] = 1 / (s.mass(i) * gap[i]);
    if (i > 0) left[i] = 1 / (s.mass(i) * gap[i - 1]);
    exit[i] = right[i] + left[i];
    uniform = std::max(uniform, exit[i]);
  }
  const Real absorb = right[n - 1];

  // Truncation index per grid point from the Poisson tail bound
  // sum_{k > K} p_k <= p_{K+1} / (1 - a / (K + 2)), valid once K + 2 > a.
  auto log_pmf = [](Real a, std::size_t k) {
    return -a + static_cast<Real>(k) * std::log(a) - std::lgamma(static_cast<Real>(k) + 1);
  };
  std::vector<std::size_t> horizon(t_grid.size(), 0);
  std::size_t max_k = 0;
  for (std::size_t g = 0; g < t_grid.size(); ++g) {
    const Real a = uniform * t_grid[g];
    if (a <= 0) continue;
    std::size_t k = static_cast<std::size_t>(std::ceil(a)) + 1;
    while (true) {
      const Real ratio = a / static_cast<Real>(k + 2);
      const Real bound = std::exp(log_pmf(a, k + 1)) / (1 - ratio);
      if (ratio < 1 && bound * absorb <= tolerance) break;
      if (++k > 50'000'000) throw NumericalError("uniformization truncation horizon exceeded");
    }
    horizon[g] = k;
    max_k = std::max(max_k, k);
  }

  std::vector<Real> out(t_grid.size(), 0);
  std::vector<Real> v(n, 0), next(n, 0);
  v[start] = 1;
  std::vector<CompensatedSum<Real>> sums(t_grid.size());
  for (std::size_t k = 0; k <= max_k; ++k) {
    const Real flux = v[n - 1] * absorb;
    for (std::size_t g = 0; g < t_grid.size(); ++g) {
      const Real a = uniform * t_grid[g];
      if (k > horizon[g] || a <= 0) continue;
      const Real lp = log_pmf(a, k);
      if (lp < -11000) continue;
      sums[g].add(std::exp(lp) * flux);
    }
    for (std::size_t j = 0; j < n; ++j) {
      Real val = v[j] * (1 - exit[j] / uniform);
      if (j > 0) val += v[j - 1] * right[j - 1] / uniform;
      if (j + 1 < n) val += v[j + 1] * left[j + 1] / uniform;
      next[j] = val;
    }
    std::swap(v, next);
  }
  for (std::size_t g = 0; g < t_grid.size(); ++g) {
    out[g] = t_grid[g] > 0 ? sums[g].value() : (start == n - 1 ? absorb : 0);
  }
  return out;
}

std::vector<Real> geometric_grid(Real lo, Real hi, std::size_t points) {
  if (points < 2 || !(lo > 0) || !(hi > lo)) throw InputError("invalid geometric grid");
  std::vector<Real> out(points);
  const Real ratio = std::log(hi / lo) / static_cast<Real>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = lo * std::exp(ratio * static_cast<Real>(i));
  out.back() = hi;
  return out;
}

}  // namespace hitlab
