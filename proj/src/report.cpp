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

#include "hitlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hitlab {

std::string format_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(v));
  return buf;
}

namespace {

double num(const Wide& v) { return static_cast<double>(to_real(v)); }

Json reals(std::span<const Real> v) {
  Json out = Json::array();
  for (Real x : v) out.push_back(static_cast<double>(x));
  return out;
}

}  // namespace

Json to_json(const LambdaPolynomial& p) {
  Json c = Json::array();
  for (const auto& v : p.coefficients()) c.push_back(num(v));
  return {{"kind", p.kind() == PolynomialKind::Psi ? "psi" : "phi"}, {"degree", p.degree()}, {"coefficients", c}};
}

Json to_json(const RateSet& r) {
  const char* source = r.source == RateSource::PsiRoots    ? "psi_roots"
                       : r.source == RateSource::PhiRoots  ? "phi_roots"
                                                           : "generator_eigen";
  return {{"source", source}, {"rates", reals(r.as_real())}, {"residuals", reals(r.residuals)}};
}

Json to_json(const ExpSumDensity& d) {
  Json terms = Json::array();
  for (const auto& t : d.terms()) terms.push_back({{"coefficient", num(t.coefficient)}, {"rate", num(t.rate)}});
  return {{"order", d.order()}, {"terms", terms}};
}

Json to_json(const Factorization& f) {
  Json mix = Json::array();
  for (const auto& c : f.mu2_mixture) mix.push_back({{"weight", num(c.weight)}, {"rate", num(c.rate)}});
  return {{"mu1_rates", reals(f.mu1_rates.as_real())},
          {"mu2_atom_weight", num(f.atom_weight)},
          {"mu2_mixture", mix},
          {"min_weight", static_cast<double>(f.min_weight)},
          {"weight_sum", static_cast<double>(f.weight_sum)},
          {"cm_certificate", f.cm_certificate}};
}

Json to_json(const ZeroCount& z) {
  Json out = {{"zero_count", z.count},
              {"zeros", reals(z.zeros)},
              {"certified", z.certified},
              {"lower_bound", z.lower_bound},
              {"upper_bound", z.upper_bound},
              {"descartes_bound", z.descartes_bound}};
  out["budan_fourier_bound"] = z.budan_fourier_bound ? Json(*z.budan_fourier_bound) : Json(nullptr);
  return out;
}

Json to_json(const ShapeReport& r) {
  Json orders = Json::array();
  for (const auto& o : r.orders) {
    orders.push_back({{"order", o.order},
                      {"zero_count", o.zero_count},
                      {"pattern", o.pattern},
                      {"certified", o.certified},
                      {"vanishes_at_zero", o.vanishes_at_zero},
                      {"upper_bound", o.upper_bound},
                      {"zeros", reals(o.zeros)}});
  }
  return {{"classification", r.classification.str()},
          {"max_order_checked", r.max_order_checked},
          {"rolle_consistent", r.rolle_consistent},
          {"orders", orders}};
}

void write_density_csv(std::ostream& out, const ExpSumDensity& d, int max_order,
                       std::span<const Real> grid) {
  std::vector<ExpSumDensity> ds{d};
  for (int n = 1; n <= max_order; ++n) ds.push_back(derivative(d, n));
  out << "t,f";
  for (int n = 1; n <= max_order; ++n) out << ",d" << n;
  out << '\n';
  for (Real t : grid) {
    out << format_real(t);
    for (const auto& di : ds) out << ',' << format_real(eval(di, t));
    out << '\n';
  }
}

void write_samples_csv(std::ostream& out, const SampleSet& s) {
  out << "t\n";
  for (Real v : s.samples) out << format_real(v) << '\n';
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace hitlab
