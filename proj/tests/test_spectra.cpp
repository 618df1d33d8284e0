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
#include <numbers>

#include "hitlab/corpus.hpp"
#include "hitlab/krein.hpp"
#include "hitlab/spectra.hpp"

using namespace hitlab;

namespace {

LambdaPolynomial poly(std::vector<double> c, PolynomialKind kind = PolynomialKind::Phi) {
  std::vector<Wide> w;
  for (double v : c) w.emplace_back(v);
  return LambdaPolynomial(w, kind);
}

RateSet rates(std::vector<double> r) {
  RateSet out;
  for (double v : r) out.rates.emplace_back(v);
  return out;
}

AtomicString make(std::vector<std::pair<Rational, Rational>> atoms, Rational start, Rational target) {
  std::vector<Atom> a;
  for (auto& [x, m] : atoms) a.push_back({x, m});
  return AtomicString(std::move(a), start, target);
}

AtomicString brownian(std::size_t k) {
  StringSpec spec{{}, {{Rational(0), Rational(1), {Rational(2)}}}, Rational(0), Rational(1)};
  return discretize_spec(spec, k);
}

}  // namespace

TEST_SUITE("spectra") {
  TEST_CASE("roots of the worked polynomials") {
    const RateSet a = real_roots(poly({1, 0.25}, PolynomialKind::Psi));
    REQUIRE(a.size() == 1);
    CHECK(to_real(a.rates[0]) == doctest::Approx(4).epsilon(1e-18));
    CHECK(a.source == RateSource::PsiRoots);

    const RateSet b = real_roots(poly({1, 1.5, 0.25}));
    REQUIRE(b.size() == 2);
    const Wide s5 = sqrt(Wide(5));
    CHECK(abs(b.rates[0] - (3 - s5)) < Wide(1e-70));
    CHECK(abs(b.rates[1] - (3 + s5)) < Wide(1e-70));
    for (Real r : b.residuals) CHECK(r < 1e-60L);

    CHECK_THROWS_WITH_AS(real_roots(poly({1})), "no roots requested of constant", InputError);
  }

  TEST_CASE("a repeated root is refused") {
    CHECK_THROWS_AS(real_roots(poly({1, 2, 1})), NumericalError);
    CHECK_THROWS_AS(real_roots(poly({1, -1})), InputError);
  }

  TEST_CASE("killed generator of the worked strings") {
    const AtomicString one = make({{Rational(0), Rational(1)}}, Rational(0), Rational(1));
    const KilledGenerator g1 = build_killed_generator(one);
    CHECK(g1.diagonal[0] == -1);
    CHECK(to_real(generator_eigenrates(one).rates[0]) == doctest::Approx(1));

    const AtomicString two = make({{Rational(0), Rational(1)}, {Rational(1, 2), Rational(1)}}, Rational(0), Rational(1));
    const KilledGenerator g2 = build_killed_generator(two);
    CHECK(g2.diagonal[0] == -2);
    CHECK(g2.diagonal[1] == -4);
    CHECK(g2.off_diagonal[0] == doctest::Approx(2));
    CHECK(g2.absorption_rate == doctest::Approx(2));
    const auto r = generator_eigenrates(two).as_real();
    CHECK(r[0] == doctest::Approx(3 - std::sqrt(5.0L)).epsilon(1e-15));
    CHECK(r[1] == doctest::Approx(3 + std::sqrt(5.0L)).epsilon(1e-15));
  }

  TEST_CASE("Brownian discretization approaches the cosh spectrum") {
    const Real target = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 8;
    const Real k64 = to_real(generator_eigenrates(brownian(64)).rates[0]);
    CHECK(std::fabs(k64 - target) / target < 1e-3L);
    const Real krein = to_real(real_roots(propagate_phi(brownian(64)).polynomial).rates[0]);
    CHECK(std::fabs(krein - k64) / k64 < 1e-12L);
    Real prev = 0;
    for (std::size_t k : {8u, 16u, 32u, 64u}) {
      const Real r = to_real(generator_eigenrates(brownian(k)).rates[0]);
      CHECK(r > prev);
      CHECK(r < target);
      prev = r;
    }
  }

  TEST_CASE("Krein roots agree with generator eigenvalues") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      const AtomicString s = random_one_sided(seed);
      const auto a = real_roots(propagate_phi(s).polynomial).as_real();
      const auto b = generator_eigenrates(s).as_real();
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::fabs(a[i] - b[i]) / b[i] < 1e-8L);
    }
  }

  TEST_CASE("interlacing checks") {
    CHECK(check_interlacing(rates({4}), rates({0.763932, 5.236068})));
    CHECK_FALSE(check_interlacing(rates({1}), rates({1, 2})));
    CHECK(check_interlacing(rates({}), rates({1})));
    CHECK_THROWS_AS(check_interlacing(rates({1, 2}), rates({1, 2})), InputError);
  }

  TEST_CASE("Dirichlet and Neumann spectra interlace on random strings with a start atom") {
    std::size_t tested = 0;
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
      const AtomicString s = random_one_sided(seed);
      if (!s.has_start_atom()) continue;
      const auto psi = propagate_psi(s).polynomial;
      const RateSet a = psi.degree() >= 1 ? real_roots(psi) : RateSet{};
      CHECK(check_interlacing(a, real_roots(propagate_phi(s).polynomial)));
      ++tested;
    }
    CHECK(tested > 20);
  }

  TEST_CASE("positive_real_roots isolates roots spread over many decades") {
    // (x - 1e-3)(x - 1)(x - 1e4)
    const Polynomial<Wide> q({Wide(-10), Wide(10010.001), Wide(-10001.001), Wide(1)});
    const auto r = positive_real_roots(q, Wide(1e-60));
    REQUIRE(r.size() == 3);
    CHECK(to_real(r[0]) == doctest::Approx(1e-3));
    CHECK(to_real(r[1]) == doctest::Approx(1));
    CHECK(to_real(r[2]) == doctest::Approx(1e4));
  }
}
