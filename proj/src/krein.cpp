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

#include "hitlab/krein.hpp"

#include <algorithm>

namespace hitlab {

LambdaPolynomial::LambdaPolynomial(std::vector<Wide> coefficients, PolynomialKind kind)
    : c_(std::move(coefficients)), kind_(kind) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Wide LambdaPolynomial::operator()(const Wide& lambda) const {
  Wide acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lambda + *it;
  return acc;
}

Precision resolve_precision(Precision requested, std::size_t atom_count) {
  if (requested != Precision::Auto) return requested;
  return atom_count <= 16 ? Precision::Rational : Precision::Extended;
}

namespace {

template <class T>
T convert(const Rational& r) {
  if constexpr (std::is_same_v<T, Rational>) {
    return r;
  } else if constexpr (std::is_same_v<T, Wide>) {
    return to_wide(r);
  } else {
    return r.convert_to<T>();
  }
}

template <class T>
Wide widen(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return to_wide(v);
  } else if constexpr (std::is_same_v<T, Wide>) {
    return v;
  } else {
    return Wide(static_cast<Real>(v));
  }
}

template <class T>
LambdaPolynomial to_lambda(const std::vector<T>& c, PolynomialKind kind) {
  std::vector<Wide> w;
  w.reserve(c.size());
  for (const auto& v : c) w.push_back(widen(v));
  return LambdaPolynomial(std::move(w), kind);
}

// value += gap * slope, coefficientwise.
template <class T>
void advance(std::vector<T>& value, const std::vector<T>& slope, const T& gap) {
  if (value.size() < slope.size()) value.resize(slope.size(), T(0));
  for (std::size_t j = 0; j < slope.size(); ++j) value[j] += gap * slope[j];
}

// slope += lambda * mass * value.
template <class T>
void kick(std::vector<T>& slope, const std::vector<T>& value, const T& mass) {
  if (slope.size() < value.size() + 1) slope.resize(value.size() + 1, T(0));
  for (std::size_t j = 0; j < value.size(); ++j) slope[j + 1] += mass * value[j];
}

template <class T>
void trim(std::vector<T>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

struct Segment {
  std::vector<Atom> atoms;  // atoms to cross, increasing
  Rational from;            // initial position
  Rational to;              // final position
};

struct PropagationOut {
  LambdaPolynomial final_value;
  KreinTrace trace;
  // Value just before crossing each atom, in order (used for the reflected
  // solution evaluated at the start).
  std::vector<LambdaPolynomial> values;
};

template <class T>
PropagationOut run(const Segment& seg, const T& v0, const T& s0, PolynomialKind kind) {
  std::vector<T> value{v0};
  std::vector<T> slope{s0};
  Rational pos = seg.from;
  PropagationOut out{LambdaPolynomial({}, kind), {}, {}};
  for (const auto& atom : seg.atoms) {
    advance(value, slope, convert<T>(atom.position - pos));
    pos = atom.position;
    trim(value);
    out.values.push_back(to_lambda(value, kind));
    kick(slope, value, convert<T>(atom.mass));
    trim(slope);
    out.trace.records.push_back(
        KreinRecord{to_real(atom.position), out.values.back(), to_lambda(slope, kind)});
  }
  advance(value, slope, convert<T>(seg.to - pos));
  trim(value);
  out.final_value = to_lambda(value, kind);
  return out;
}

PropagationOut dispatch(const Segment& seg, int v0, int s0, PolynomialKind kind,
                        Precision backend) {
  switch (backend) {
    case Precision::Double:
      return run<double>(seg, v0, s0, kind);
    case Precision::Rational:
      return run<Rational>(seg, Rational(v0), Rational(s0), kind);
    case Precision::Extended:
    case Precision::Auto:
      break;
  }
  return run<Wide>(seg, Wide(v0), Wide(s0), kind);
}

std::vector<Atom> atoms_in(const AtomicString& s, const Rational& lo, const Rational& hi) {
  std::vector<Atom> out;
  for (const auto& a : s.atoms()) {
    if (a.position >= lo && a.position < hi) out.push_back(a);
  }
  return out;
}

}  // namespace

KreinResult propagate_psi(const AtomicString& s, Precision precision) {
  Segment seg{atoms_in(s, s.start(), s.target()), s.start(), s.target()};
  const Precision backend = resolve_precision(precision, seg.atoms.size());
  auto out = dispatch(seg, 0, 1, PolynomialKind::Psi, backend);
  return KreinResult{std::move(out.final_value), std::move(out.trace), backend};
}

KreinResult propagate_phi(const AtomicString& s, Precision precision) {
  if (!s.is_one_sided())
    throw InputError("phi recursion requires no mass below the start");
  Segment seg{atoms_in(s, s.start(), s.target()), s.start(), s.target()};
  const Precision backend = resolve_precision(precision, seg.atoms.size());
  auto out = dispatch(seg, 1, 0, PolynomialKind::Phi, backend);
  return KreinResult{std::move(out.final_value), std::move(out.trace), backend};
}

HittingTransform hitting_transform(const AtomicString& s, Precision precision) {
  if (s.is_one_sided()) {
    auto phi = propagate_phi(s, precision);
    return HittingTransform{LambdaPolynomial({Wide(1)}, PolynomialKind::Phi),
                            std::move(phi.polynomial)};
  }
  if (!s.has_start_atom()) throw InputError("start not an atom");
  const Rational left = s.atoms().front().position;
  Segment seg{atoms_in(s, left, s.target()), left, s.target()};
  const Precision backend = resolve_precision(precision, seg.atoms.size());
  auto out = dispatch(seg, 1, 0, PolynomialKind::Phi, backend);
  // Value of the reflected solution at the start atom, before its kick.
  const std::size_t idx = s.start_index();
  LambdaPolynomial numerator = out.values[idx];
  return HittingTransform{std::move(numerator), std::move(out.final_value)};
}

MeanIdentities mean_identities(const AtomicString& s) {
  if (!s.is_one_sided())
    throw InputError("mean identities require no mass below the start");
  const Rational y = s.target() - s.start();
  Rational full = 0;
  Rational mu1 = 0;
  for (const auto& a : s.atoms()) {
    const Rational t = a.position - s.start();
    full += (y - t) * a.mass;
    if (t > 0) mu1 += t * (y - t) * a.mass;
  }
  mu1 /= y;
  return MeanIdentities{to_real(full), to_real(mu1)};
}

Real expected_hitting_time(const AtomicString& s) {
  Rational total = 0;
  for (const auto& a : s.atoms()) {
    const Rational& from = a.position > s.start() ? a.position : s.start();
    total += (s.target() - from) * a.mass;
  }
  return to_real(total);
}

DegreeCheck degree_check(const AtomicString& s, Precision precision) {
  const auto psi = propagate_psi(s, precision);
  const int phi_degree = s.is_one_sided()
                             ? propagate_phi(s, precision).polynomial.degree()
                             : hitting_transform(s, precision).denominator.degree();
  return DegreeCheck{psi.polynomial.degree(), phi_degree,
                     count_increase_points(s, s.start(), s.target())};
}

}  // namespace hitlab
