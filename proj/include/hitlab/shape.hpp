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

#ifndef HITLAB_SHAPE_HPP_
#define HITLAB_SHAPE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hitlab/density.hpp"
#include "hitlab/numeric.hpp"

namespace hitlab {

// Zero counting for exponential sums g(t) = sum_i c_i exp(-b_i t).
//
// Upper bounds (all valid on (0, inf), zeros counted with multiplicity):
//  * Descartes: sign changes of c ordered by rate.
//  * Budan-Fourier: with g_0 = g and g_k = (d/dt + b_{sigma(k)}) g_{k-1},
//    each operator kills one exponential, and
//      #zeros <= V(0+) - V(inf),
//    V counting sign changes of (g_0, ..., g_{m-1}). The signs at 0+ are
//    those of the first nonvanishing Taylor coefficient, computed in
//    80-digit arithmetic; the signs at infinity come from the dominant
//    (smallest-rate) term. Both kill orders (rates ascending, descending)
//    are tried.
//  * Parity: with multiplicity, the count is odd exactly when the signs at
//    0+ and infinity differ, so the bound drops by one when parity is off.
// Lower bound: sign changes on a geometric scan grid, counting only points
// whose sign is certain under a rounding-error bound.
// A count is certified when the bounds coincide.

struct ScanOptions {
  std::size_t grid_points = 4096;
  std::size_t max_grid_points = std::size_t{1} << 18;
  Real lower_factor = 1e-4L;  ///< grid starts at lower_factor * mean
  Real upper_factor = 50;     ///< and ends at upper_factor * mean or later
  Real zero_tolerance = 1e-10L;
};

struct ZeroCount {
  std::size_t count = 0;
  std::vector<Real> zeros;
  bool certified = false;
  std::size_t lower_bound = 0;
  std::size_t upper_bound = 0;
  std::size_t descartes_bound = 0;
  std::optional<std::size_t> budan_fourier_bound;
};

std::size_t descartes_bound(const ExpSumDensity& d);
std::optional<std::size_t> budan_fourier_bound(const ExpSumDensity& d);

ZeroCount count_zeros_expsum(const ExpSumDensity& d, const ScanOptions& options = {});

/// Sign of g(t) as t -> 0+ (first nonvanishing Taylor coefficient) and
/// whether g(0+) itself vanishes, at relative tolerance `tolerance`.
struct EndpointLimit {
  int sign_after_zero;
  bool vanishes;
};
EndpointLimit limit_at_zero(const ExpSumDensity& d, Real tolerance = 1e-9L);

/// Ordered signs on [0, inf] in the notation "0+0-0". Throws
/// NumericalError for uncertified counts.
std::string sign_pattern(const ExpSumDensity& d, const ZeroCount& zeros);
std::string sign_pattern(const ExpSumDensity& d);

enum class ShapeKind { Bell, Whale, NShape, Monotone, Unknown };

struct ShapeClass {
  ShapeKind kind = ShapeKind::Unknown;
  /// N for Bell(N), n for NShape(n), 1 for Whale.
  int parameter = 0;
  std::string str() const;
};

struct OrderRecord {
  int order;
  std::size_t zero_count;
  std::string pattern;  ///< empty when uncertified
  bool certified;
  bool vanishes_at_zero;
  std::size_t upper_bound;
  std::vector<Real> zeros;
};

struct ShapeReport {
  std::vector<OrderRecord> orders;  ///< orders 1..max_order_checked
  ShapeClass classification;
  int max_order_checked = 0;
  /// Between consecutive zeros of f^(n) lies a zero of f^(n+1).
  bool rolle_consistent = true;
};

/// Classifies an order-0 density over derivative orders 1..max_order.
ShapeReport classify(const ExpSumDensity& density, int max_order, const ScanOptions& options = {});

/// Generalized inverse Gaussian density c x^(lambda-1) exp(-(chi/x + psi x)).
struct GigParameters {
  double lambda;
  double chi;
  double psi;
};

/// Throws InputError outside chi, psi >= 0 with: chi > 0 and psi > 0; or
/// chi > 0, psi = 0, lambda < 0; or chi = 0, psi > 0, lambda > 0.
void check_gig_domain(const GigParameters& p);

/// Zeros of the n-th derivative: positive roots of the numerator P_n of
/// f^(n) / f = P_n(x) / x^(2n), where
///   P_1 = -psi x^2 + (lambda - 1) x + chi,
///   P_{n+1} = x^2 P_n' - 2n x P_n + P_n P_1,
/// counted exactly with rational Sturm sequences.
ZeroCount gig_derivative_zeros(const GigParameters& p, int order);

ShapeReport classify_gig(const GigParameters& p, int max_order);

}  // namespace hitlab

#endif  // HITLAB_SHAPE_HPP_
