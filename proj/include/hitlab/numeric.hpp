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

#ifndef HITLAB_NUMERIC_HPP_
#define HITLAB_NUMERIC_HPP_

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hitlab {

namespace mp = boost::multiprecision;

/// Working floating type for evaluation and sampling (x87 80-bit on x86-64).
using Real = long double;

/// High-precision type used for polynomial roots, partial fractions and
/// sign certification. 80 decimal digits.
using Wide = mp::number<mp::mpfr_float_backend<80>, mp::et_off>;

/// Exact rationals for string data and the exact polynomial backend.
using Rational = mp::mpq_rational;

/// Raised for malformed or inadmissible inputs (CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot be certified: root collisions,
/// ill-conditioned partial fractions, eigen failures (CLI exit code 1).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic used by the polynomial recursion.
/// Extended carries 80 significant decimal digits (the Wide type).
enum class Precision { Auto, Double, Extended, Rational };

Precision parse_precision(std::string_view name);
std::string_view to_string(Precision p);

inline Real to_real(const Wide& x) { return x.convert_to<Real>(); }
inline Real to_real(const Rational& x) { return x.convert_to<Real>(); }

inline Wide to_wide(const Rational& x) {
  Wide out;
  mpfr_set_q(out.backend().data(), x.backend().data(), MPFR_RNDN);
  return out;
}
inline Wide to_wide(Real x) { return Wide(x); }

/// Exact conversion; every finite binary float is a dyadic rational.
Rational to_rational(double x);
Rational to_rational(Real x);

/// Parses "0.125", "-3", "1e-2" or "3/8" exactly.
Rational parse_rational(std::string_view text);

/// Neumaier's compensated summation.
template <class T>
class CompensatedSum {
 public:
  void add(const T& x) {
    const T t = sum_ + x;
    using std::abs;
    if (abs(sum_) >= abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + carry_; }

 private:
  T sum_{0};
  T carry_{0};
};

inline int sign_of(const Wide& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
inline int sign_of(Real x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace hitlab

#endif  // HITLAB_NUMERIC_HPP_
