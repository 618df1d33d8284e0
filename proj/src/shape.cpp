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

#include "hitlab/shape.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "hitlab/polynomial.hpp"
#include "hitlab/spectra.hpp"

namespace hitlab {

namespace {

// Relative size below which a Taylor coefficient at 0+ is a rounding
// residue of an exact zero. Coefficients carry ~78 significant digits.
const Wide kTaylorTolerance = Wide(1e-60);
const Real kWideEpsilon = 1e-78L;

std::optional<int> leading_sign_at_zero(std::vector<ExpTerm> terms) {
  const std::size_t r = terms.size();
  for (std::size_t p = 0; p < r + 2; ++p) {
    Wide total = 0;
    Wide absolute = 0;
    for (const auto& t : terms) {
      total += t.coefficient;
      absolute += abs(t.coefficient);
    }
    if (absolute == 0) return std::nullopt;
    if (abs(total) > kTaylorTolerance * absolute) return sign_of(total);
    for (auto& t : terms) t.coefficient *= -t.rate;
  }
  return std::nullopt;
}

// V(0+) - V(inf) for the kill order given by `order` (indices into terms).
std::optional<std::size_t> budan_fourier_for(const std::vector<ExpTerm>& terms,
                                             const std::vector<std::size_t>& order) {
  std::vector<ExpTerm> g = terms;
  std::vector<int> at_zero;
  std::vector<int> at_inf;
  std::vector<bool> alive(terms.size(), true);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    std::vector<ExpTerm> live;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (alive[i]) live.push_back(g[i]);
    }
    const auto s0 = leading_sign_at_zero(live);
    if (!s0) return std::nullopt;
    at_zero.push_back(*s0);
    // live is sorted by rate; the smallest rate dominates at infinity.
    at_inf.push_back(sign_of(live.front().coefficient));
    if (k + 1 == terms.size()) break;
    const std::size_t kill = order[k];
    const Wide b = g[kill].rate;
    alive[kill] = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (alive[i]) g[i].coefficient *= b - g[i].rate;
    }
  }
  const int v0 = count_variations(at_zero);
  const int vinf = count_variations(at_inf);
  if (v0 < vinf) return std::nullopt;
  return static_cast<std::size_t>(v0 - vinf);
}

struct Evaluator {
  const ExpSumDensity& d;

  // Sign of g(t) when it is certain under the rounding bound, else 0.
  int certain_sign(Real t) const {
    const auto c = d.coefficients();
    const auto b = d.rates();
    CompensatedSum<Real> sum;
    Real absolute = 0;
    Real err = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Real term = c[i] * std::exp(-b[i] * t);
      sum.add(term);
      absolute += std::fabs(term);
      err += std::fabs(term) * (4 + b[i] * t);
    }
    const Real v = sum.value();
    const Real bound = 2 * LDBL_EPSILON * (err + static_cast<Real>(c.size() + 2) * absolute);
    if (std::fabs(v) > bound && absolute > 0) return sign_of(v);
    return wide_sign(t);
  }

  int wide_sign(Real t) const {
    const Wide tw(t);
    Wide sum = 0;
    Wide absolute = 0;
    Wide err = 0;
    for (const auto& term : d.terms()) {
      const Wide v = term.coefficient * exp(-term.rate * tw);
      sum += v;
      absolute += abs(v);
      err += abs(v) * (4 + term.rate * tw);
    }
    const Wide bound = 2 * Wide(kWideEpsilon) *
                       (err + Wide(static_cast<long>(d.size() + 2)) * absolute);
    if (abs(sum) > bound) return sign_of(sum);
    return 0;
  }
};

Real density_scale(const ExpSumDensity& d) {
  // Mean of the underlying order-0 density.
  Wide mean = 0;
  for (const auto& t : d.terms()) {
    mean += t.coefficient / pow(Wide(-t.rate), d.order()) / (t.rate * t.rate);
  }
  const Real m = to_real(mean);
  if (m > 0 && std::isfinite(m)) return m;
  return 1 / d.rates().front();
}

// Beyond this point the smallest-rate term dominates the rest by 2:1 and
// the ratio only decreases, so g has no zeros there.
Real tail_dominance_point(const ExpSumDensity& d) {
  const auto c = d.coefficients();
  const auto b = d.rates();
  auto ratio = [&](Real t) {
    Real r = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
      r += std::exp(std::log(std::fabs(c[i] / c[0])) - (b[i] - b[0]) * t);
    return r;
  };
  Real t = 1 / b.back();
  for (int i = 0; i < 400 && ratio(t) >= 0.5L; ++i) t *= 2;
  return t;
}

}  // namespace

std::size_t descartes_bound(const ExpSumDensity& d) {
  std::vector<int> s;
  for (const auto& t : d.terms()) s.push_back(sign_of(t.coefficient));
  return static_cast<std::size_t>(count_variations(s));
}

std::optional<std::size_t> budan_fourier_bound(const ExpSumDensity& d) {
  const std::size_t m = d.size();
  if (m <= 1) return 0;
  std::vector<std::size_t> ascending(m);
  for (std::size_t i = 0; i < m; ++i) ascending[i] = i;
  std::vector<std::size_t> descending(ascending.rbegin(), ascending.rend());
  const auto a = budan_fourier_for(d.terms(), ascending);
  const auto b = budan_fourier_for(d.terms(), descending);
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

ZeroCount count_zeros_expsum(const ExpSumDensity& d, const ScanOptions& options) {
  if (d.size() == 0) throw InputError("zero counting needs at least one term");
  ZeroCount out;
  out.descartes_bound = descartes_bound(d);
  out.budan_fourier_bound = budan_fourier_bound(d);
  out.upper_bound = out.descartes_bound;
  if (out.budan_fourier_bound) out.upper_bound = std::min(out.upper_bound, *out.budan_fourier_bound);
  // Zeros counted with multiplicity have the parity fixed by the end signs.
  if (const auto s0 = leading_sign_at_zero(d.terms())) {
    const std::size_t parity = *s0 != sign_of(d.terms().front().coefficient) ? 1 : 0;
    if (out.upper_bound % 2 != parity) --out.upper_bound;
  }
  if (out.upper_bound == 0) {
    out.certified = true;
    return out;
  }

  const Evaluator ev{d};
  const Real scale = density_scale(d);
  Real lo = options.lower_factor * scale;
  const Real hi = std::max(options.upper_factor * scale, tail_dominance_point(d));
  std::size_t points = options.grid_points;
  while (true) {
    const std::vector<Real> grid = geometric_grid(lo, hi, points);
    std::vector<std::pair<Real, Real>> brackets;
    Real last_t = 0;
    int last_sign = 0;
    for (Real t : grid) {
      const int s = ev.certain_sign(t);
      if (s == 0) continue;
      if (last_sign != 0 && s != last_sign) brackets.emplace_back(last_t, t);
      last_t = t;
      last_sign = s;
    }
    out.lower_bound = brackets.size();
    if (out.lower_bound == out.upper_bound) {
      for (auto [a, b] : brackets) {
        const int sa = ev.certain_sign(a);
        while (b - a > options.zero_tolerance * std::max<Real>(1, a)) {
          const Real mid = (a + b) / 2;
          const int s = ev.certain_sign(mid);
          if (s == 0) break;
          (s == sa ? a : b) = mid;
        }
        out.zeros.push_back((a + b) / 2);
      }
      out.count = out.lower_bound;
      out.certified = true;
      return out;
    }
    if (out.lower_bound > out.upper_bound || points * 2 > options.max_grid_points) break;
    points *= 2;
    lo /= 4;
  }
  out.count = out.lower_bound;
  out.certified = false;
  return out;
}

EndpointLimit limit_at_zero(const ExpSumDensity& d, Real tolerance) {
  Wide total = 0;
  Wide absolute = 0;
  for (const auto& t : d.terms()) {
    total += t.coefficient;
    absolute += abs(t.coefficient);
  }
  EndpointLimit out{0, abs(total) <= Wide(tolerance) * absolute};
  const auto s = leading_sign_at_zero(d.terms());
  out.sign_after_zero = s ? *s : 0;
  if (!out.vanishes) out.sign_after_zero = sign_of(total);
  return out;
}

namespace {

std::string render_pattern(bool vanishes_at_zero, int first_sign, std::size_t zeros) {
  std::string p;
  if (vanishes_at_zero) p += '0';
  int s = first_sign;
  for (std::size_t i = 0; i <= zeros; ++i) {
    p += s > 0 ? '+' : '-';
    p += '0';
    s = -s;
  }
  return p;
}

}  // namespace

std::string sign_pattern(const ExpSumDensity& d, const ZeroCount& zeros) {
  if (!zeros.certified) throw NumericalError("sign pattern needs a certified zero count");
  const EndpointLimit lim = limit_at_zero(d);
  if (lim.sign_after_zero == 0) throw NumericalError("sign at 0+ undetermined");
  // Certified counts equal an upper bound with multiplicity, so every zero
  // is simple and the sign alternates.
  const int tail = sign_of(d.terms().front().coefficient);
  const int expected_tail = zeros.count % 2 == 0 ? lim.sign_after_zero : -lim.sign_after_zero;
  if (tail != expected_tail) throw NumericalError("sign pattern inconsistent with tail sign");
  return render_pattern(lim.vanishes, lim.sign_after_zero, zeros.count);
}

std::string sign_pattern(const ExpSumDensity& d) { return sign_pattern(d, count_zeros_expsum(d)); }

std::string ShapeClass::str() const {
  switch (kind) {
    case ShapeKind::Bell:
      return "Bell(" + std::to_string(parameter) + ")";
    case ShapeKind::Whale:
      return "Whale";
    case ShapeKind::NShape:
      return "NShape(" + std::to_string(parameter) + ")";
    case ShapeKind::Monotone:
      return "Monotone";
    case ShapeKind::Unknown:
      break;
  }
  return "Unknown";
}

namespace {

bool has_zero_between(const std::vector<Real>& zeros, Real a, Real b) {
  return std::any_of(zeros.begin(), zeros.end(), [&](Real z) { return z > a && z < b; });
}

void finish_report(ShapeReport& report) {
  const auto& o = report.orders;
  const int n_max = report.max_order_checked;
  for (std::size_t i = 0; i + 1 < o.size(); ++i) {
    if (!o[i].certified || !o[i + 1].certified) continue;
    const auto& z = o[i].zeros;
    const auto& z1 = o[i + 1].zeros;
    for (std::size_t j = 0; j + 1 < z.size(); ++j) {
      if (!has_zero_between(z1, z[j], z[j + 1])) report.rolle_consistent = false;
    }
    if (!z.empty()) {
      if (o[i].vanishes_at_zero && !has_zero_between(z1, 0, z.front())) report.rolle_consistent = false;
      if (!has_zero_between(z1, z.back(), INFINITY)) report.rolle_consistent = false;
    }
  }

  ShapeClass& cls = report.classification;
  if (std::any_of(o.begin(), o.end(), [](const OrderRecord& r) { return !r.certified; })) {
    cls = {ShapeKind::Unknown, 0};
    return;
  }
  auto count = [&](int n) { return o[static_cast<std::size_t>(n - 1)].zero_count; };
  if (count(1) == 0) {
    cls = {ShapeKind::Monotone, 0};
    return;
  }
  if (std::all_of(o.begin(), o.end(), [](const OrderRecord& r) { return r.zero_count == 1; })) {
    cls = {ShapeKind::Whale, 1};
    return;
  }
  bool bell = true;
  for (int n = 1; n <= n_max; ++n) {
    const auto& r = o[static_cast<std::size_t>(n - 1)];
    bell = bell && r.zero_count == static_cast<std::size_t>(n) && r.vanishes_at_zero;
  }
  if (bell) {
    cls = {ShapeKind::Bell, n_max};
    return;
  }
  const auto k = count(n_max);
  bool nshape = k >= 2 && k <= static_cast<std::size_t>(n_max);
  for (int n = static_cast<int>(k); nshape && n <= n_max; ++n) nshape = count(n) == k;
  cls = nshape ? ShapeClass{ShapeKind::NShape, static_cast<int>(k)} : ShapeClass{ShapeKind::Unknown, 0};
}

}  // namespace

ShapeReport classify(const ExpSumDensity& density, int max_order, const ScanOptions& options) {
  if (max_order < 2) throw InputError("classification needs max_order >= 2");
  if (density.order() != 0) throw InputError("classification expects an order-0 density");
  ShapeReport report;
  report.max_order_checked = max_order;
  for (int n = 1; n <= max_order; ++n) {
    const ExpSumDensity dn = derivative(density, n);
    const ZeroCount zc = count_zeros_expsum(dn, options);
    OrderRecord rec{n, zc.count, "", zc.certified, limit_at_zero(dn).vanishes, zc.upper_bound, zc.zeros};
    if (zc.certified) {
      try {
        rec.pattern = sign_pattern(dn, zc);
      } catch (const NumericalError&) {
        rec.certified = false;
      }
    }
    report.orders.push_back(std::move(rec));
  }
  finish_report(report);
  return report;
}

void check_gig_domain(const GigParameters& p) {
  if (!std::isfinite(p.lambda) || !std::isfinite(p.chi) || !std::isfinite(p.psi))
    throw InputError("GIG parameters must be finite");
  if (p.chi < 0 || p.psi < 0) throw InputError("GIG requires chi >= 0 and psi >= 0");
  if (p.chi > 0 && p.psi > 0) return;
  if (p.chi > 0 && p.psi == 0 && p.lambda < 0) return;
  if (p.chi == 0 && p.psi > 0 && p.lambda > 0) return;
  throw InputError("GIG parameters outside the admissible domain");
}

namespace {

using RPoly = std::vector<Rational>;

RPoly add(const RPoly& a, const RPoly& b) {
  RPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

RPoly mul(const RPoly& a, const RPoly& b) {
  if (a.empty() || b.empty()) return {};
  RPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

RPoly gig_numerator(const GigParameters& p, int order) {
  const RPoly p1{to_rational(p.chi), to_rational(p.lambda) - 1, -to_rational(p.psi)};
  RPoly pn = p1;
  for (int n = 1; n < order; ++n) {
    RPoly dp;
    for (std::size_t i = 1; i < pn.size(); ++i) dp.push_back(pn[i] * static_cast<long>(i));
    RPoly next = mul(RPoly{0, 0, 1}, dp);
    next = add(next, mul(RPoly{0, Rational(-2 * n)}, pn));
    next = add(next, mul(pn, p1));
    pn = std::move(next);
  }
  return pn;
}

}  // namespace

ZeroCount gig_derivative_zeros(const GigParameters& p, int order) {
  check_gig_domain(p);
  if (order < 1) throw InputError("derivative order must be >= 1");
  Polynomial<Rational> pn(gig_numerator(p, order));
  ZeroCount out;
  if (pn.is_zero()) throw NumericalError("degenerate GIG derivative numerator");
  pn.deflate_zero_roots();
  const SturmChain<Rational> chain(pn);
  out.count = static_cast<std::size_t>(chain.count_positive());
  out.lower_bound = out.upper_bound = out.descartes_bound = out.count;
  out.certified = chain.squarefree();
  if (out.count > 0) {
    std::vector<Wide> wide;
    for (const auto& c : pn.coefficients()) wide.push_back(to_wide(c));
    for (const auto& r : positive_real_roots(Polynomial<Wide>(wide), Wide(1e-40))) out.zeros.push_back(to_real(r));
    if (out.zeros.size() != out.count) out.certified = false;
  }
  return out;
}

ShapeReport classify_gig(const GigParameters& p, int max_order) {
  if (max_order < 2) throw InputError("classification needs max_order >= 2");
  check_gig_domain(p);
  ShapeReport report;
  report.max_order_checked = max_order;
  for (int n = 1; n <= max_order; ++n) {
    const ZeroCount zc = gig_derivative_zeros(p, n);
    Polynomial<Rational> pn(gig_numerator(p, n));
    // f^(n) = f P_n / x^(2n): the sign after 0 is that of P_n at 0+, and
    // exp(-chi/x) forces every derivative to vanish at 0 when chi > 0.
    const int first = sign_at_zero_plus(pn);
    const bool vanishes = p.chi > 0;
    OrderRecord rec{n, zc.count, "", zc.certified, vanishes, zc.upper_bound, zc.zeros};
    if (zc.certified) rec.pattern = render_pattern(vanishes, first, zc.count);
    report.orders.push_back(std::move(rec));
  }
  finish_report(report);
  return report;
}

}  // namespace hitlab
