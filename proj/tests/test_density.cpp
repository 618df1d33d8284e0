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

#include <doctest.h>

#include <cmath>

#include "hitlab/corpus.hpp"
#include "hitlab/density.hpp"
#include "hitlab/krein.hpp"
#include "hitlab/spectra.hpp"

using namespace hitlab;

namespace {

AtomicString make(std::vector<std::pair<Rational, Rational>> atoms, Rational start, Rational target) {
  std::vector<Atom> a;
  for (auto& [x, m] : atoms) a.push_back({x, m});
  return AtomicString(std::move(a), start, target);
}

RateSet rates(std::vector<double> r) {
  RateSet out;
  for (double v : r) out.rates.emplace_back(v);
  return out;
}

const AtomicString kOne = make({{Rational(0), Rational(1)}}, Rational(0), Rational(1));
const AtomicString kTwo = make({{Rational(0), Rational(1)}, {Rational(1, 2), Rational(1)}}, Rational(0), Rational(1));
const AtomicString kThreeSided = make(
    {{Rational(-1, 2), Rational(1)}, {Rational(0), Rational(1)}, {Rational(1, 2), Rational(1)}}, Rational(0), Rational(1));

AtomicString brownian(std::size_t k) {
  StringSpec spec{{}, {{Rational(0), Rational(1), {Rational(2)}}}, Rational(0), Rational(1)};
  return discretize_spec(spec, k);
}

// Exp(1) * Exp(2) * Exp(3) at t by Simpson quadrature over the closed-form
// density of the first two factors.
double convolution_oracle(double t) {
  const int n = 4000;
  const double h = t / n;
  double sum = 0;
  for (int i = 0; i <= n; ++i) {
    const double s = i * h;
    const double g = 2 * (std::exp(-s) - std::exp(-2 * s)) * 3 * std::exp(-3 * (t - s));
    sum += g * (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2));
  }
  return sum * h / 3;
}

}  // namespace

TEST_SUITE("density") {
  TEST_CASE("hypoexponential coefficients") {
    const ExpSumDensity one = hypoexp_from_rates(rates({1}));
    CHECK(to_real(one.terms()[0].coefficient) == doctest::Approx(1));

    const RateSet two = real_roots(propagate_phi(kTwo).polynomial);
    const ExpSumDensity d = hypoexp_from_rates(two);
    const Real b1 = 3 - std::sqrt(5.0L);
    const Real b2 = 3 + std::sqrt(5.0L);
    CHECK(d.coefficients()[0] == doctest::Approx(b2 / (b2 - b1) * b1).epsilon(1e-15));
    CHECK(d.coefficients()[1] == doctest::Approx(-b1 / (b2 - b1) * b2).epsilon(1e-15));
    CHECK(d.coefficients()[0] / b1 == doctest::Approx(1.170820393249937).epsilon(1e-14));
    CHECK(std::fabs(d.coefficients()[0] + d.coefficients()[1]) < 1e-17L);

    const ExpSumDensity three = hypoexp_from_rates(rates({1, 2, 3}));
    CHECK(to_real(derivative_at_zero(three, 0)) == doctest::Approx(0).epsilon(1e-18));
    Real mass = 0;
    for (std::size_t i = 0; i < 3; ++i) mass += three.coefficients()[i] / three.rates()[i];
    CHECK(mass == doctest::Approx(1).epsilon(1e-18));
    for (double t : {0.3, 1.0, 2.5, 6.0}) CHECK(eval(three, t) == doctest::Approx(convolution_oracle(t)).epsilon(1e-10));
  }

  TEST_CASE("ExpSumDensity rejects bad rates") {
    CHECK_THROWS_AS(ExpSumDensity({{Wide(1), Wide(-1)}}), InputError);
    CHECK_THROWS_AS(ExpSumDensity({{Wide(1), Wide(2)}, {Wide(1), Wide(2)}}), InputError);
  }

  TEST_CASE("the eigen route matches the Krein route") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const AtomicString s = random_one_sided(seed);
      const ExpSumDensity a = hitting_density(s);
      const ExpSumDensity b = phasetype_general(s);
      const ExpSumDensity c = hypoexp_from_rates(generator_eigenrates(s));
      const Real mean = moment(a, 1);
      for (Real t : geometric_grid(1e-3L * mean, 20 * mean, 60)) {
        CHECK(std::fabs(eval(a, t) - eval(c, t)) < 1e-9L);
        CHECK(std::fabs(eval(a, t) - eval(b, t)) < 1e-9L);
      }
    }
    const ExpSumDensity single = phasetype_general(kOne);
    REQUIRE(single.size() == 1);
    CHECK(single.coefficients()[0] == doctest::Approx(1));
    CHECK(single.rates()[0] == doctest::Approx(1));
  }

  TEST_CASE("two-sided densities: rational route, eigen route and uniformization agree") {
    const ExpSumDensity a = hitting_density(kThreeSided);
    const ExpSumDensity b = phasetype_general(kThreeSided);
    CHECK(moment(a, 1) == doctest::Approx(2.5).epsilon(1e-15));
    const std::vector<Real> grid = geometric_grid(1e-2L, 20, 40);
    const std::vector<Real> u = uniformization_check(kThreeSided, grid, 1e-13L);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::fabs(eval(a, grid[i]) - eval(b, grid[i])) < 1e-9L);
      CHECK(std::fabs(eval(a, grid[i]) - u[i]) < 1e-10L);
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const AtomicString s = random_two_sided(seed);
      const ExpSumDensity x = hitting_density(s);
      const ExpSumDensity y = phasetype_general(s);
      const Real mean = moment(x, 1);
      CHECK(mean == doctest::Approx(expected_hitting_time(s)).epsilon(1e-12));
      for (Real t : geometric_grid(1e-3L * mean, 20 * mean, 40)) CHECK(std::fabs(eval(x, t) - eval(y, t)) < 1e-9L);
    }
  }

  TEST_CASE("uniformization reproduces closed forms") {
    const std::vector<Real> t{1};
    CHECK(uniformization_check(kOne, t)[0] == doctest::Approx(std::exp(-1.0L)).epsilon(1e-10));
    const ExpSumDensity two = hitting_density(kTwo);
    const Real mode = std::log((3 + std::sqrt(5.0L)) / (3 - std::sqrt(5.0L))) / (2 * std::sqrt(5.0L));
    CHECK(std::fabs(uniformization_check(kTwo, std::vector<Real>{mode})[0] - eval(two, mode)) < 1e-8L);
    const AtomicString b32 = brownian(32);
    CHECK(std::fabs(uniformization_check(b32, std::vector<Real>{0.5L})[0] - eval(hitting_density(b32), 0.5L)) < 1e-8L);
  }

  TEST_CASE("Yamazato factorization of the worked strings") {
    const Factorization f = yamazato_factorize(kTwo);
    REQUIRE(f.mu1_rates.size() == 1);
    CHECK(to_real(f.mu1_rates.rates[0]) == doctest::Approx(4));
    REQUIRE(f.mu2_mixture.size() == 2);
    CHECK(to_real(f.mu2_mixture[0].weight) == doctest::Approx(0.9472135954999579).epsilon(1e-14));
    CHECK(to_real(f.mu2_mixture[1].weight) == doctest::Approx(0.0527864045000421).epsilon(1e-13));
    CHECK(to_real(f.mu2_mixture[0].rate) == doctest::Approx(3 - std::sqrt(5.0L)));
    CHECK(to_real(f.atom_weight) == 0);
    CHECK(f.cm_certificate);
    CHECK(f.weight_sum == doctest::Approx(1).epsilon(1e-15));

    const Factorization g = yamazato_factorize(kOne);
    CHECK(g.mu1_rates.size() == 0);
    REQUIRE(g.mu2_mixture.size() == 1);
    CHECK(to_real(g.mu2_mixture[0].weight) == doctest::Approx(1));
    CHECK(to_real(g.mu2_mixture[0].rate) == doctest::Approx(1));
  }

  TEST_CASE("without a start atom mu2 carries a point mass at zero") {
    // psi = 1 + lambda / 4, phi = 1 + lambda / 2: mu2 = (psi / y) / phi
    // = 1/2 delta_0 + 1/2 Exp(2).
    const AtomicString s = make({{Rational(1, 2), Rational(1)}}, Rational(0), Rational(1));
    const Factorization f = yamazato_factorize(s);
    REQUIRE(f.mu1_rates.size() == 1);
    CHECK(to_real(f.mu1_rates.rates[0]) == doctest::Approx(4));
    CHECK(to_real(f.atom_weight) == doctest::Approx(0.5));
    REQUIRE(f.mu2_mixture.size() == 1);
    CHECK(to_real(f.mu2_mixture[0].weight) == doctest::Approx(0.5));
    CHECK(to_real(f.mu2_mixture[0].rate) == doctest::Approx(2));
    // The law itself is Exp(2): the process enters at the atom.
    const ExpSumDensity d = hitting_density(s);
    REQUIRE(d.size() == 1);
    CHECK(d.rates()[0] == doctest::Approx(2));
    const ExpSumDensity r = reconvolve(f);
    for (Real t : {0.1L, 0.5L, 2.0L}) CHECK(eval(r, t) == doctest::Approx(eval(d, t)).epsilon(1e-15));
  }

  TEST_CASE("reconvolution reproduces the density on random strings") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      for (const AtomicString& s : {random_one_sided(seed), random_two_sided(seed)}) {
        const Factorization f = yamazato_factorize(s);
        CHECK(f.cm_certificate);
        CHECK(f.min_weight >= -1e-9L);
        CHECK(std::fabs(f.weight_sum - 1) < 1e-10L);
        Real mu1 = 0;
        for (Real a : f.mu1_rates.as_real()) mu1 += 1 / a;
        if (s.is_one_sided()) CHECK(mu1 == doctest::Approx(mean_identities(s).mu1_mean).epsilon(1e-12));
        const ExpSumDensity d = hitting_density(s);
        const ExpSumDensity r = reconvolve(f);
        const Real mean = moment(d, 1);
        for (Real t : geometric_grid(1e-3L * mean, 20 * mean, 50)) CHECK(std::fabs(eval(d, t) - eval(r, t)) < 1e-10L);
      }
    }
  }

  TEST_CASE("derivatives") {
    const ExpSumDensity e = hypoexp_from_rates(rates({1}));
    CHECK(derivative(e, 1).coefficients()[0] == doctest::Approx(-1));
    const ExpSumDensity d = hitting_density(kTwo);
    const ExpSumDensity d1 = derivative(d, 1);
    CHECK(d1.order() == 1);
    CHECK(to_real(derivative_at_zero(d, 1)) == doctest::Approx(4).epsilon(1e-15));
    CHECK(d1.coefficients()[0] == doctest::Approx(-0.6832815729997476).epsilon(1e-14));
    CHECK(d1.coefficients()[1] == doctest::Approx(4.6832815729997476).epsilon(1e-14));
    const Real h = 1e-6L;
    for (Real t : {0.2L, 0.43L, 1.0L, 3.0L})
      CHECK(eval(d1, t) == doctest::Approx((eval(d, t + h) - eval(d, t - h)) / (2 * h)).epsilon(1e-7));
    const ExpSumDensity twice = derivative(derivative(d, 1), 1);
    const ExpSumDensity d2 = derivative(d, 2);
    for (std::size_t i = 0; i < d2.size(); ++i) CHECK(twice.coefficients()[i] == d2.coefficients()[i]);
    CHECK_THROWS_AS(derivative(d, -1), InputError);
  }

  TEST_CASE("cdf and moments") {
    const ExpSumDensity e = hypoexp_from_rates(rates({1}));
    CHECK(cdf(e, std::log(2.0L)) == doctest::Approx(0.5).epsilon(1e-15));
    const ExpSumDensity d = hitting_density(kTwo);
    CHECK(moment(d, 1) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(moment(d, 0) == doctest::Approx(1).epsilon(1e-15));
    CHECK(moment(d, 2) - 1.5L * 1.5L == doctest::Approx(1.75).epsilon(1e-14));
    Real prev = 0;
    for (Real t : geometric_grid(1e-3L, 100, 200)) {
      const Real c = cdf(d, t);
      CHECK(c >= prev);
      prev = c;
    }
    CHECK(prev == doctest::Approx(1).epsilon(1e-15));
    CHECK_THROWS_AS(cdf(derivative(d, 1), 1), InputError);
  }

  TEST_CASE("geometric grid endpoints") {
    const auto g = geometric_grid(1e-3L, 10, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == doctest::Approx(1e-3));
    CHECK(g.back() == doctest::Approx(10));
    CHECK(g[2] == doctest::Approx(0.1));
  }
}

TEST_SUITE("density") {
  TEST_CASE("reconvolve drops only negligible weights at a shared rate") {
    Factorization f;
    f.mu1_rates = RateSet{{Wide(2)}, RateSource::PsiRoots, {0}};
    f.mu2_mixture = {{Wide(1e-40), Wide(2)}, {Wide(1) - Wide(1e-40), Wide(5)}};
    const ExpSumDensity d = reconvolve(f);
    // Exp(2) * Exp(5) = (10/3)(e^{-2t} - e^{-5t})
    CHECK(eval(d, 0.3L) == doctest::Approx(10.0 / 3 * (std::exp(-0.6) - std::exp(-1.5))).epsilon(1e-14));
    f.mu2_mixture = {{Wide(0.5), Wide(2)}, {Wide(0.5), Wide(5)}};
    CHECK_THROWS_AS(reconvolve(f), NumericalError);
  }
}
