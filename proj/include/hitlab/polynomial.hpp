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

#ifndef HITLAB_POLYNOMIAL_HPP_
#define HITLAB_POLYNOMIAL_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hitlab/numeric.hpp"

namespace hitlab {

namespace detail {

template <class T>
struct ZeroTest {
  // Relative threshold below which a floating coefficient is treated as a
  // rounding residue of an exact zero.
  static bool negligible(const T& value, const T& scale) {
    using std::abs;
    return abs(value) <= scale * T(1e-60);
  }
};

template <>
struct ZeroTest<Rational> {
  static bool negligible(const Rational& value, const Rational&) {
    return value == 0;
  }
};

template <class T>
T abs_value(const T& x) {
  using std::abs;
  return abs(x);
}

inline Rational abs_value(const Rational& x) { return x < 0 ? Rational(-x) : x; }

}  // namespace detail

/// Dense univariate polynomial, coefficients stored from the constant term up.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coefficients)
      : c_(std::move(coefficients)) {
    trim();
  }

  const std::vector<T>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  const T& leading() const { return c_.back(); }

  T operator()(const T& x) const {
    T acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    std::vector<T> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * T(static_cast<long>(i)));
    return Polynomial(std::move(d));
  }

  T max_abs() const {
    T m = 0;
    for (const auto& v : c_) m = std::max(m, detail::abs_value(v));
    return m;
  }

  /// Remainder of division by `divisor`; a coefficient that cancels to
  /// below the rounding level of the terms that produced it is dropped.
  Polynomial remainder(const Polynomial& divisor) const {
    using std::abs;
    std::vector<T> r = c_;
    std::vector<T> size(c_.size());
    for (std::size_t j = 0; j < c_.size(); ++j) size[j] = abs(c_[j]);
    const int dd = divisor.degree();
    for (int k = degree(); k >= dd; --k) {
      const T q = r[k] / divisor.leading();
      for (int j = 0; j <= dd; ++j) {
        const T term = q * divisor[j];
        r[k - dd + j] -= term;
        const T t = abs(term);
        if (size[k - dd + j] < t) size[k - dd + j] = t;
      }
      r.pop_back();
    }
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (detail::ZeroTest<T>::negligible(r[j], size[j])) r[j] = 0;
    }
    return Polynomial(std::move(r));
  }

  Polynomial scaled(const T& s) const {
    std::vector<T> out = c_;
    for (auto& v : out) v *= s;
    return Polynomial(std::move(out));
  }

  /// p(-x)
  Polynomial reflected() const {
    std::vector<T> out = c_;
    for (std::size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
    return Polynomial(std::move(out));
  }

  /// Removes the factor x^k for the largest possible k; returns k.
  int deflate_zero_roots() {
    int k = 0;
    while (!c_.empty() && c_.front() == 0) {
      c_.erase(c_.begin());
      ++k;
    }
    return k;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

template <class T>
int sign_of_value(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

/// Sign of p(x) as x -> +infinity.
template <class T>
int sign_at_pos_infinity(const Polynomial<T>& p) {
  return p.is_zero() ? 0 : sign_of_value(p.leading());
}

/// Sign of p(x) as x -> 0+ (first nonzero coefficient).
template <class T>
int sign_at_zero_plus(const Polynomial<T>& p) {
  for (const auto& v : p.coefficients()) {
    if (v != 0) return sign_of_value(v);
  }
  return 0;
}

/// Number of sign changes in a sequence, zeros discarded.
inline int count_variations(const std::vector<int>& signs) {
  int last = 0;
  int changes = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Canonical Sturm sequence p, p', -rem(p, p'), ... for a squarefree p.
template <class T>
class SturmChain {
 public:
  explicit SturmChain(const Polynomial<T>& p) {
    chain_.push_back(normalized(p));
    if (p.degree() < 1) return;
    chain_.push_back(normalized(p.derivative()));
    while (true) {
      const auto& a = chain_[chain_.size() - 2];
      const auto& b = chain_.back();
      if (b.degree() < 1) break;
      Polynomial<T> r = a.remainder(b);
      if (r.is_zero()) break;
      chain_.push_back(normalized(r.scaled(T(-1))));
    }
  }

  const std::vector<Polynomial<T>>& polynomials() const { return chain_; }

  /// True when the last element is a nonzero constant (p is squarefree).
  bool squarefree() const { return chain_.back().degree() == 0; }

  int variations_at(const T& x) const {
    std::vector<int> s;
    s.reserve(chain_.size());
    for (const auto& q : chain_) s.push_back(sign_of_value(q(x)));
    return count_variations(s);
  }
  int variations_at_pos_infinity() const {
    std::vector<int> s;
    for (const auto& q : chain_) s.push_back(sign_at_pos_infinity(q));
    return count_variations(s);
  }
  int variations_at_neg_infinity() const {
    std::vector<int> s;
    for (const auto& q : chain_) {
      int v = sign_at_pos_infinity(q);
      if (q.degree() % 2 == 1) v = -v;
      s.push_back(v);
    }
    return count_variations(s);
  }
  int variations_at_zero_plus() const {
    std::vector<int> s;
    for (const auto& q : chain_) s.push_back(sign_at_zero_plus(q));
    return count_variations(s);
  }

  /// Distinct real roots in the open interval (a, b), endpoints not roots.
  int count_in(const T& a, const T& b) const {
    return variations_at(a) - variations_at(b);
  }
  /// Distinct real roots in (0, +infinity).
  int count_positive() const {
    return variations_at_zero_plus() - variations_at_pos_infinity();
  }

 private:
  static Polynomial<T> normalized(const Polynomial<T>& p) {
    if constexpr (std::is_same_v<T, Rational>) {
      return p;
    } else {
      const T m = p.max_abs();
      return m > 0 ? p.scaled(T(1) / m) : p;
    }
  }

  std::vector<Polynomial<T>> chain_;
};

}  // namespace hitlab

#endif  // HITLAB_POLYNOMIAL_HPP_
