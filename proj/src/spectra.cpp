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

#include "hitlab/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "hitlab/polynomial.hpp"

namespace hitlab {

std::vector<Real> RateSet::as_real() const {
  std::vector<Real> out;
  out.reserve(rates.size());
  for (const auto& r : rates) out.push_back(to_real(r));
  return out;
}

namespace {

// Fujiwara's bound on the modulus of the roots.
Wide root_modulus_bound(const Polynomial<Wide>& q) {
  const int d = q.degree();
  const Wide lead = abs(q.leading());
  Wide bound = 0;
  for (int j = 0; j < d; ++j) {
    Wide ratio = abs(q[j]) / lead;
    if (j == 0) ratio /= 2;
    if (ratio == 0) continue;
    bound = std::max(bound, Wide(pow(ratio, Wide(1) / Wide(d - j))));
  }
  return 2 * bound;
}

struct Bracket {
  Wide lo;
  Wide hi;
};

class Isolator {
 public:
  Isolator(const Polynomial<Wide>& q, const SturmChain<Wide>& chain)
      : q_(q), chain_(chain) {}

  void isolate(const Wide& lo, const Wide& hi, int v_lo, int v_hi, int depth,
               std::vector<Bracket>& out) {
    const int count = v_lo - v_hi;
    if (count <= 0) return;
    if (count == 1) {
      out.push_back({lo, hi});
      return;
    }
    if (depth > 4000 || (hi - lo) <= hi * Wide(1e-45))
      throw NumericalError("rate collision: cannot separate " + std::to_string(count) +
                           " roots near " + std::to_string(to_real(lo)));
    Wide mid = hi / lo > 4 ? Wide(sqrt(lo * hi)) : Wide((lo + hi) / 2);
    // Sturm counts need a non-root split point.
    if (q_(mid) == 0) mid = mid * (1 + Wide(1e-30));
    const int v_mid = chain_.variations_at(mid);
    isolate(lo, mid, v_lo, v_mid, depth + 1, out);
    isolate(mid, hi, v_mid, v_hi, depth + 1, out);
  }

 private:
  const Polynomial<Wide>& q_;
  const SturmChain<Wide>& chain_;
};

// Refines the unique simple root of q in (lo, hi).
Wide refine(const Polynomial<Wide>& q, const Polynomial<Wide>& dq, Wide lo, Wide hi,
            const Wide& tol) {
  int s_lo = sign_of(q(lo));
  Wide x = hi / lo > 4 ? Wide(sqrt(lo * hi)) : Wide((lo + hi) / 2);
  for (int it = 0; it < 5000; ++it) {
    const Wide fx = q(x);
    const int sx = sign_of(fx);
    if (sx == 0) return x;
    if (sx == s_lo) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= tol * hi) break;
    const Wide d = dq(x);
    Wide next = d != 0 ? Wide(x - fx / d) : Wide(lo);
    if (!(next > lo && next < hi)) next = hi / lo > 4 ? Wide(sqrt(lo * hi)) : Wide((lo + hi) / 2);
    // Newton converged: the step is below tolerance.
    if (abs(next - x) <= tol * x) return next;
    x = next;
  }
  return (lo + hi) / 2;
}

}  // namespace

std::vector<Wide> positive_real_roots(const Polynomial<Wide>& q, const Wide& refine_tolerance) {
  if (q.degree() < 1) return {};
  const SturmChain<Wide> chain(q);
  const Polynomial<Wide> dq = q.derivative();
  if (q[0] == 0) throw InputError("positive root search needs q(0) != 0");
  const Wide hi = root_modulus_bound(q) * 2;
  std::vector<Wide> rev(q.coefficients().rbegin(), q.coefficients().rend());
  const Wide lo = 1 / (root_modulus_bound(Polynomial<Wide>(rev)) * 2);
  const int v_lo = chain.variations_at(lo);
  const int v_hi = chain.variations_at(hi);
  std::vector<Bracket> brackets;
  Isolator(q, chain).isolate(lo, hi, v_lo, v_hi, 0, brackets);
  std::vector<Wide> roots;
  roots.reserve(brackets.size());
  for (const auto& b : brackets) roots.push_back(refine(q, dq, b.lo, b.hi, refine_tolerance));
  return roots;
}

RateSet real_roots(const LambdaPolynomial& p, const RootOptions& options) {
  const int d = p.degree();
  if (d < 1) throw InputError("no roots requested of constant");
  for (const auto& c : p.coefficients()) {
    if (c <= 0) throw InputError("rate extraction requires positive coefficients");
  }
  // Rates are the positive roots of q(x) = p(-x).
  const Polynomial<Wide> q = p.as_polynomial().reflected();
  const std::vector<Wide> roots = positive_real_roots(q, Wide(options.refine_tolerance));
  if (static_cast<int>(roots.size()) != d)
    throw NumericalError("isolated " + std::to_string(roots.size()) + " real roots, expected " +
                         std::to_string(d));

  RateSet out{{}, p.kind() == PolynomialKind::Psi ? RateSource::PsiRoots : RateSource::PhiRoots, {}};
  for (const auto& r : roots) {
    Wide scale = 0;
    Wide power = 1;
    for (const auto& c : p.coefficients()) {
      scale += c * power;
      power *= r;
    }
    out.rates.push_back(r);
    out.residuals.push_back(to_real(Wide(abs(q(r)) / scale)));
  }
  for (std::size_t i = 1; i < out.rates.size(); ++i) {
    if (out.rates[i] - out.rates[i - 1] <= Wide(options.collision_tolerance) * out.rates[i])
      throw NumericalError("rate collision between " + std::to_string(to_real(out.rates[i - 1])) +
                           " and " + std::to_string(to_real(out.rates[i])));
  }
  return out;
}

KilledGenerator build_killed_generator(const AtomicString& s) {
  const std::size_t n = s.size();
  KilledGenerator g;
  g.diagonal.resize(static_cast<Eigen::Index>(n));
  g.off_diagonal.resize(static_cast<Eigen::Index>(n > 0 ? n - 1 : 0));
  g.sqrt_mass.resize(n);
  std::vector<Real> gap(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational next = i + 1 < n ? s.atoms()[i + 1].position : s.target();
    gap[i] = to_real(Rational(next - s.atoms()[i].position));
    g.sqrt_mass[i] = std::sqrt(s.mass(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Real m = s.mass(i);
    Real out_rate = 1 / (m * gap[i]);
    if (i > 0) out_rate += 1 / (m * gap[i - 1]);
    g.diagonal[static_cast<Eigen::Index>(i)] = -out_rate;
    if (i + 1 < n)
      g.off_diagonal[static_cast<Eigen::Index>(i)] = 1 / (gap[i] * g.sqrt_mass[i] * g.sqrt_mass[i + 1]);
  }
  g.absorption_rate = 1 / (s.mass(n - 1) * gap[n - 1]);
  return g;
}

SpectralDecomposition spectral_decomposition(const AtomicString& s) {
  const KilledGenerator g = build_killed_generator(s);
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Matrix> solver;
  solver.computeFromTridiagonal(g.diagonal, g.off_diagonal, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver did not converge");

  const auto n = g.diagonal.size();
  SpectralDecomposition out;
  out.vectors.resize(n, n);
  // Eigenvalues of S ascend (most negative first); rates of -Q ascend when
  // read backwards.
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = n - 1 - k;
    out.rates.push_back(-solver.eigenvalues()[src]);
    out.vectors.col(k) = solver.eigenvectors().col(src);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto v = out.vectors.col(k);
    Eigen::Matrix<Real, Eigen::Dynamic, 1> r = g.diagonal.cwiseProduct(v);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      r[i] += g.off_diagonal[i] * v[i + 1];
      r[i + 1] += g.off_diagonal[i] * v[i];
    }
    r += out.rates[static_cast<std::size_t>(k)] * v;
    out.residuals.push_back(r.norm());
  }
  return out;
}

RateSet generator_eigenrates(const AtomicString& s) {
  const SpectralDecomposition sd = spectral_decomposition(s);
  RateSet out{{}, RateSource::GeneratorEigen, sd.residuals};
  for (Real r : sd.rates) {
    if (!(r > 0)) throw NumericalError("nonpositive generator rate");
    out.rates.emplace_back(r);
  }
  return out;
}

bool check_interlacing(const RateSet& a, const RateSet& b) {
  if (b.size() != a.size() + 1)
    throw InputError("interlacing needs one more phi rate than psi rates");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(b.rates[i] < a.rates[i] && a.rates[i] < b.rates[i + 1])) return false;
  }
  return true;
}

}  // namespace hitlab
