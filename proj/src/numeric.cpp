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

#include "hitlab/numeric.hpp"

#include <cctype>
#include <cstdint>

namespace hitlab {

Precision parse_precision(std::string_view name) {
  if (name == "auto") return Precision::Auto;
  if (name == "double") return Precision::Double;
  if (name == "extended") return Precision::Extended;
  if (name == "rational") return Precision::Rational;
  throw InputError("unknown precision backend '" + std::string(name) + "'");
}

std::string_view to_string(Precision p) {
  switch (p) {
    case Precision::Auto:
      return "auto";
    case Precision::Double:
      return "double";
    case Precision::Extended:
      return "extended";
    case Precision::Rational:
      return "rational";
  }
  return "auto";
}

namespace {

Rational pow2(long e) {
  mp::mpz_int one = 1;
  mp::mpz_int p;
  if (e >= 0) {
    mpz_mul_2exp(p.backend().data(), one.backend().data(),
                 static_cast<mp_bitcnt_t>(e));
    return Rational(p);
  }
  mpz_mul_2exp(p.backend().data(), one.backend().data(),
               static_cast<mp_bitcnt_t>(-e));
  return Rational(mp::mpz_int(1), p);
}

}  // namespace

Rational to_rational(Real x) {
  if (!std::isfinite(x)) throw InputError("non-finite value");
  if (x == 0) return Rational(0);
  int e = 0;
  Real f = std::frexp(x, &e);  // x = f * 2^e, 0.5 <= |f| < 1
  const bool negative = f < 0;
  if (negative) f = -f;
  // 64-bit significand: f * 2^64 is an integer below 2^64.
  const auto mant = static_cast<std::uint64_t>(std::ldexp(f, 64));
  Rational r{mp::mpz_int(mant)};
  r *= pow2(static_cast<long>(e) - 64);
  return negative ? Rational(-r) : r;
}

Rational to_rational(double x) { return to_rational(static_cast<Real>(x)); }

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw InputError("malformed number '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) return fail();
    return num / den;
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  mp::mpz_int digits = 0;
  long scale = 0;
  bool any = false;
  bool dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (dot) --scale;
      any = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) return fail();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return fail();
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      eneg = text[i] == '-';
      ++i;
    }
    if (i == text.size()) return fail();
    long ev = 0;
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) return fail();
      ev = ev * 10 + (text[i] - '0');
      if (ev > 100000) return fail();
    }
    scale += eneg ? -ev : ev;
  }
  Rational r(digits);
  mp::mpz_int ten = mp::pow(mp::mpz_int(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
  if (scale >= 0) {
    r *= Rational(ten);
  } else {
    r /= Rational(ten);
  }
  return negative ? Rational(-r) : r;
}

}  // namespace hitlab
