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

#include "hitlab/corpus.hpp"
#include "hitlab/krein.hpp"

using namespace hitlab;

namespace {

AtomicString make(std::vector<std::pair<Rational, Rational>> atoms, Rational start, Rational target) {
  std::vector<Atom> a;
  for (auto& [x, m] : atoms) a.push_back({x, m});
  return AtomicString(std::move(a), start, target);
}

void check_coefficients(const LambdaPolynomial& p, std::vector<double> expected) {
  REQUIRE(p.degree() + 1 == static_cast<int>(expected.size()));
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(to_real(p[i]) == doctest::Approx(expected[i]).epsilon(1e-15));
}

const AtomicString kOne = make({{Rational(0), Rational(1)}}, Rational(0), Rational(1));
const AtomicString kTwo = make({{Rational(0), Rational(1)}, {Rational(1, 2), Rational(1)}}, Rational(0), Rational(1));
const AtomicString kHalf = make({{Rational(1, 2), Rational(1)}}, Rational(0), Rational(1));

AtomicString brownian(std::size_t k) {
  StringSpec spec{{}, {{Rational(0), Rational(1), {Rational(2)}}}, Rational(0), Rational(1)};
  return discretize_spec(spec, k);
}

}  // namespace

TEST_SUITE("krein") {
  TEST_CASE("psi annihilates the start atom") {
    check_coefficients(propagate_psi(kOne).polynomial, {1});
    check_coefficients(propagate_psi(kHalf).polynomial, {1, 0.25});
    check_coefficients(propagate_psi(kTwo).polynomial, {1, 0.25});
  }

  TEST_CASE("phi for the one- and two-atom strings") {
    check_coefficients(propagate_phi(kOne).polynomial, {1, 1});
    check_coefficients(propagate_phi(kTwo).polynomial, {1, 1.5, 0.25});
    check_coefficients(propagate_phi(kHalf).polynomial, {1, 0.5});
  }

  TEST_CASE("the trace records value and slope at each atom") {
    const KreinResult r = propagate_phi(kTwo);
    REQUIRE(r.trace.records.size() == 2);
    check_coefficients(r.trace.records[0].value, {1});
    check_coefficients(r.trace.records[0].right_slope, {0, 1});
    check_coefficients(r.trace.records[1].value, {1, 0.5});
    check_coefficients(r.trace.records[1].right_slope, {0, 2, 0.5});
  }

  TEST_CASE("two-sided strings: phi refuses, the transform reflects at the leftmost atom") {
    const AtomicString s =
        make({{Rational(-1, 2), Rational(1)}, {Rational(0), Rational(1)}, {Rational(1, 2), Rational(1)}}, Rational(0),
             Rational(1));
    CHECK_THROWS_AS(propagate_phi(s), InputError);
    const HittingTransform tr = hitting_transform(s);
    check_coefficients(tr.numerator, {1, 0.5});
    check_coefficients(tr.denominator, {1, 3, 1.25, 0.125});
    // E[tau] = D'(0) - N'(0)
    CHECK(expected_hitting_time(s) == doctest::Approx(2.5));
    const AtomicString no_start =
        make({{Rational(-1, 2), Rational(1)}, {Rational(1, 2), Rational(1)}}, Rational(0), Rational(1));
    CHECK_THROWS_WITH_AS(hitting_transform(no_start), "start not an atom", InputError);
  }

  TEST_CASE("mean identities") {
    CHECK(mean_identities(kOne).full_mean == doctest::Approx(1));
    CHECK(mean_identities(kOne).mu1_mean == doctest::Approx(0));
    CHECK(mean_identities(kTwo).full_mean == doctest::Approx(1.5));
    CHECK(mean_identities(kTwo).mu1_mean == doctest::Approx(0.25));
    for (std::size_t k = 1; k <= 64; k *= 2) CHECK(mean_identities(brownian(k)).full_mean == 1.0L);
  }

  TEST_CASE("the first-order coefficients carry the means") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const AtomicString s = random_one_sided(seed);
      const MeanIdentities m = mean_identities(s);
      CHECK(to_real(propagate_phi(s).polynomial[1]) == doctest::Approx(m.full_mean).epsilon(1e-15));
      const LambdaPolynomial psi = propagate_psi(s).polynomial;
      if (psi.degree() >= 1) CHECK(to_real(psi[1] / psi[0]) == doctest::Approx(m.mu1_mean).epsilon(1e-15));
      CHECK(expected_hitting_time(s) == doctest::Approx(m.full_mean).epsilon(1e-15));
    }
  }

  TEST_CASE("degree checks") {
    const AtomicString three = make(
        {{Rational(1, 4), Rational(1)}, {Rational(1, 2), Rational(1)}, {Rational(3, 4), Rational(1)}}, Rational(0), Rational(1));
    CHECK(degree_check(three).psi_degree == 3);
    const AtomicString heavy = make({{Rational(0), Rational(5)}}, Rational(0), Rational(1));
    CHECK(degree_check(heavy).psi_degree == 0);
    CHECK(degree_check(heavy).phi_degree == 1);
    for (std::size_t k : {3u, 8u, 20u}) {
      const DegreeCheck d = degree_check(brownian(k));
      CHECK(d.psi_degree == static_cast<int>(k));
      CHECK(d.interior_count == k);
    }
  }

  TEST_CASE("the three arithmetic backends agree") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
      const AtomicString s = random_one_sided(seed);
      const auto exact = propagate_phi(s, Precision::Rational).polynomial;
      const auto wide = propagate_phi(s, Precision::Extended).polynomial;
      const auto dbl = propagate_phi(s, Precision::Double).polynomial;
      REQUIRE(exact.degree() == wide.degree());
      REQUIRE(exact.degree() == dbl.degree());
      for (int j = 0; j <= exact.degree(); ++j) {
        CHECK(to_real(abs(wide[j] - exact[j]) / exact[j]) < 1e-60L);
        CHECK(to_real(abs(dbl[j] - exact[j]) / exact[j]) < 1e-12L);
      }
    }
    CHECK(resolve_precision(Precision::Auto, 16) == Precision::Rational);
    CHECK(resolve_precision(Precision::Auto, 17) == Precision::Extended);
    CHECK(resolve_precision(Precision::Double, 3) == Precision::Double);
  }
}
