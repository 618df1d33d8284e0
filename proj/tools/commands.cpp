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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include "hitlab/corpus.hpp"
#include "hitlab/density.hpp"
#include "hitlab/krein.hpp"
#include "hitlab/mc.hpp"
#include "hitlab/report.hpp"
#include "hitlab/shape.hpp"
#include "hitlab/spectra.hpp"
#include "hitlab/string_io.hpp"

namespace hitlab::cli {

namespace {

// Column-ordered table rendered as CSV or as a JSON array of records.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  std::string render(const std::string& format) const {
    if (format == "json") {
      Json out = Json::array();
      for (const auto& r : rows) {
        Json rec = Json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) rec[columns[i]] = r[i];
        out.push_back(rec);
      }
      return out.dump(2) + "\n";
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell(r[i]);
      out << '\n';
    }
    return out.str();
  }

  static std::string cell(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_number_float()) return format_real(v.get<double>());
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    }
    return v.dump();
  }
};

class Outputs {
 public:
  explicit Outputs(const RunConfig& c) : config_(c) { std::filesystem::create_directories(c.output); }

  void put(const std::string& name, const std::string& text) {
    write_text(config_.output / name, text);
    hashes_[name] = hex64(fnv1a64(text));
  }

  std::string table_name(const std::string& stem) const { return stem + "." + config_.format; }

  // Everything needed to rerun the command bit-exactly. Paths and the
  // worker count are left out: neither changes the outputs.
  void write_manifest(const std::string& input_text, Precision resolved) {
    Json args = {{"format", config_.format},
                 {"max_order", config_.max_order},
                 {"samples", config_.samples},
                 {"k_list", config_.k_list},
                 {"precision_requested", std::string(to_string(config_.precision))},
                 {"count", config_.count},
                 {"max_atoms", config_.max_atoms},
                 {"two_sided", config_.two_sided},
                 {"grid_points", config_.grid_points}};
    if (config_.gig) args["gig"] = *config_.gig;
    Json extra = Json::array();
    for (const auto& p : config_.extra) {
      std::string text;
      try {
        text = read_text(p);
      } catch (const InputError&) {
      }
      extra.push_back(hex64(fnv1a64(text)));
    }
    args["extra_input_hashes"] = extra;
    Json m = {{"tool", "hitlab"},
              {"version", HITLAB_VERSION},
              {"command", config_.command},
              {"input_hash", input_text.empty() ? Json(nullptr) : Json(hex64(fnv1a64(input_text)))},
              {"seed", config_.seed},
              {"chunk_size", kChunkSize},
              {"precision", std::string(to_string(resolved))},
              {"arguments", args},
              {"outputs", hashes_}};
    write_text(config_.output / "manifest.json", m.dump(2) + "\n");
  }

 private:
  const RunConfig& config_;
  std::map<std::string, std::string> hashes_;
};

struct Loaded {
  std::string text;
  StringSpec spec;
};

Loaded load(const std::filesystem::path& path) {
  if (path.empty()) throw InputError("--input is required");
  Loaded l;
  l.text = read_text(path);
  l.spec = parse_string_spec(l.text);
  return l;
}

AtomicString atomic(const StringSpec& spec, const RunConfig& c) {
  if (spec.pieces.empty()) return validate(spec);
  return discretize_spec(spec, c.k_list.front());
}

Json string_summary(const AtomicString& s) {
  return {{"atoms", s.size()},
          {"start", rational_to_string(s.start())},
          {"target", rational_to_string(s.target())},
          {"one_sided", s.is_one_sided()},
          {"start_atom", s.has_start_atom()},
          {"interior_atoms", count_increase_points(s, s.start(), s.target())}};
}

Real max_relative_difference(const RateSet& a, const RateSet& b) {
  if (a.size() != b.size()) return INFINITY;
  Real worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::fabs(to_real(a.rates[i]) - to_real(b.rates[i])) / to_real(b.rates[i]));
  return worst;
}

std::vector<Real> linear_grid(Real hi, std::size_t points) {
  std::vector<Real> g;
  for (std::size_t i = 0; i < points; ++i) g.push_back(hi * static_cast<Real>(i) / static_cast<Real>(points - 1));
  return g;
}

std::string join(const std::vector<Real>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + format_real(v[i]);
  return out;
}

void print_list(const char* label, const std::vector<Real>& v) {
  std::cout << label << ':';
  for (Real x : v) std::cout << ' ' << format_real(x);
  std::cout << '\n';
}

int analyze(const RunConfig& c) {
  const Loaded in = load(c.input);
  const AtomicString s = atomic(in.spec, c);
  const Precision backend = resolve_precision(c.precision, s.size());
  Outputs out(c);

  Json rep;
  rep["string"] = string_summary(s);
  rep["precision"] = std::string(to_string(backend));
  const KreinResult psi = propagate_psi(s, backend);
  const HittingTransform tr = hitting_transform(s, backend);
  rep["polynomials"] = {{"psi", to_json(psi.polynomial)},
                        {"numerator", to_json(tr.numerator)},
                        {"denominator", to_json(tr.denominator)}};

  const RateSet krein = real_roots(tr.denominator);
  const RateSet generator = generator_eigenrates(s);
  rep["rates"] = {{"krein", to_json(krein)},
                  {"generator", to_json(generator)},
                  {"max_relative_difference", static_cast<double>(max_relative_difference(krein, generator))}};

  if (s.is_one_sided() && s.has_start_atom()) {
    const RateSet a = psi.polynomial.degree() >= 1 ? real_roots(psi.polynomial) : RateSet{};
    rep["interlacing"] = {{"applicable", true},
                          {"certified", check_interlacing(a, krein)},
                          {"dirichlet_rates", to_json(a)}};
  } else {
    rep["interlacing"] = {{"applicable", false}};
  }

  const ExpSumDensity d = hitting_density(s, backend);
  rep["density"] = to_json(d);
  const Factorization f = yamazato_factorize(s, backend);
  rep["factorization"] = to_json(f);

  const Real mean = moment(d, 1);
  Json moments = {{"mean", static_cast<double>(mean)},
                  {"variance", static_cast<double>(moment(d, 2) - mean * mean)},
                  {"expected_hitting_time", static_cast<double>(expected_hitting_time(s))}};
  if (s.is_one_sided()) moments["mu1_mean"] = static_cast<double>(mean_identities(s).mu1_mean);
  rep["moments"] = moments;
  out.put("report.json", rep.dump(2) + "\n");

  std::ostringstream csv;
  const std::vector<Real> grid = linear_grid(10 * mean, 201);
  if (c.format == "csv") {
    write_density_csv(csv, d, c.max_order, grid);
  } else {
    Table t;
    t.columns = {"t", "f"};
    for (int n = 1; n <= c.max_order; ++n) t.columns.push_back("d" + std::to_string(n));
    std::vector<ExpSumDensity> ds{d};
    for (int n = 1; n <= c.max_order; ++n) ds.push_back(derivative(d, n));
    for (Real x : grid) {
      std::vector<Json> row{static_cast<double>(x)};
      for (const auto& di : ds) row.push_back(static_cast<double>(eval(di, x)));
      t.rows.push_back(row);
    }
    csv << t.render("json");
  }
  out.put(out.table_name("density"), csv.str());
  out.write_manifest(in.text, backend);

  print_list("rates", krein.as_real());
  print_list("mu1 rates", f.mu1_rates.as_real());
  std::vector<Real> w;
  for (const auto& m : f.mu2_mixture) w.push_back(to_real(m.weight));
  print_list("mu2 weights", w);
  std::cout << "mu2 atom weight: " << format_real(to_real(f.atom_weight)) << '\n'
            << "mean: " << format_real(mean) << '\n';
  return 0;
}

GigParameters parse_gig(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InputError("--gig expects lambda,chi,psi");
    }
  }
  if (v.size() != 3) throw InputError("--gig expects lambda,chi,psi");
  return {v[0], v[1], v[2]};
}

int classify_command(const RunConfig& c) {
  ShapeReport report;
  Json source;
  std::string text;
  Precision backend = c.precision;
  if (c.gig) {
    const GigParameters p = parse_gig(*c.gig);
    report = classify_gig(p, c.max_order);
    source = {{"gig", {{"lambda", p.lambda}, {"chi", p.chi}, {"psi", p.psi}}}};
  } else {
    const Loaded in = load(c.input);
    text = in.text;
    const AtomicString s = atomic(in.spec, c);
    backend = resolve_precision(c.precision, s.size());
    ScanOptions options;
    options.grid_points = c.grid_points;
    report = classify(hitting_density(s, backend), c.max_order, options);
    source = {{"string", string_summary(s)}};
  }
  Outputs out(c);
  Json j = source;
  j["report"] = to_json(report);
  out.put("classify.json", j.dump(2) + "\n");

  Table t;
  t.columns = {"order", "zero_count", "certified", "pattern", "upper_bound", "zeros"};
  for (const auto& o : report.orders)
    t.rows.push_back({o.order, o.zero_count, o.certified, o.pattern, o.upper_bound, join(o.zeros)});
  out.put(out.table_name("orders"), t.render(c.format));
  out.write_manifest(text, backend);

  std::cout << "classification: " << report.classification.str() << '\n';
  for (const auto& o : report.orders)
    std::cout << "  order " << o.order << ": " << o.zero_count << (o.certified ? "" : " (uncertified)") << ' '
              << o.pattern << '\n';
  const bool all_certified =
      std::all_of(report.orders.begin(), report.orders.end(), [](const OrderRecord& o) { return o.certified; });
  return all_certified ? 0 : 1;
}

ExpSumDensity analytic_density(const AtomicString& s, Precision p) {
  if (s.is_one_sided() || s.has_start_atom()) return hitting_density(s, p);
  return phasetype_general(s);
}

struct McCheck {
  Real ks;
  Real critical;
  bool ks_pass;
  SampleMoments moments;
  Real expected_mean;
  bool mean_pass;
  Real expected_variance;
  bool variance_pass;
};

McCheck mc_check(const SampleSet& samples, const ExpSumDensity& d, const AtomicString& s) {
  McCheck m{};
  m.ks = ks_statistic(samples, d);
  m.critical = ks_critical_value(samples.count());
  m.ks_pass = m.ks < m.critical;
  m.moments = sample_moments(samples);
  m.expected_mean = expected_hitting_time(s);
  m.mean_pass = std::fabs(m.moments.mean - m.expected_mean) <= 3 * m.moments.mean_standard_error;
  const Real mean = moment(d, 1);
  m.expected_variance = moment(d, 2) - mean * mean;
  m.variance_pass =
      std::fabs(m.moments.variance - m.expected_variance) <= 5 * m.moments.variance_standard_error;
  return m;
}

int simulate(const RunConfig& c) {
  const Loaded in = load(c.input);
  const AtomicString s = atomic(in.spec, c);
  const Precision backend = resolve_precision(c.precision, s.size());
  const ChainSpec chain = build_chain(s);
  const SampleSet samples = simulate_hitting(chain, c.samples, c.seed, c.workers);
  const McCheck m = mc_check(samples, analytic_density(s, backend), s);

  Outputs out(c);
  std::ostringstream csv;
  write_samples_csv(csv, samples);
  out.put("samples.csv", csv.str());
  Json chain_json = {{"positions", Json::array()}, {"right_rate", Json::array()}, {"left_rate", Json::array()},
                     {"start", chain.start}};
  for (std::size_t i = 0; i < chain.positions.size(); ++i) {
    chain_json["positions"].push_back(static_cast<double>(chain.positions[i]));
    chain_json["right_rate"].push_back(static_cast<double>(chain.right_rate[i]));
    chain_json["left_rate"].push_back(static_cast<double>(chain.left_rate[i]));
  }
  const Json j = {{"string", string_summary(s)},
                  {"chain", chain_json},
                  {"samples", samples.count()},
                  {"ks_statistic", static_cast<double>(m.ks)},
                  {"ks_critical_1pct", static_cast<double>(m.critical)},
                  {"ks_pass", m.ks_pass},
                  {"sample_mean", static_cast<double>(m.moments.mean)},
                  {"expected_mean", static_cast<double>(m.expected_mean)},
                  {"mean_within_3sigma", m.mean_pass},
                  {"sample_variance", static_cast<double>(m.moments.variance)},
                  {"expected_variance", static_cast<double>(m.expected_variance)},
                  {"variance_within_5sigma", m.variance_pass}};
  out.put("simulate.json", j.dump(2) + "\n");
  out.write_manifest(in.text, backend);
  std::cout << "KS " << format_real(m.ks) << " (critical " << format_real(m.critical) << ") "
            << (m.ks_pass ? "pass" : "fail") << "\nmean " << format_real(m.moments.mean) << " expected "
            << format_real(m.expected_mean) << (m.mean_pass ? " pass" : " fail") << '\n';
  return 0;
}

int converge(const RunConfig& c) {
  const Loaded in = load(c.input);
  if (in.spec.pieces.empty()) throw InputError("converge needs a string with continuous pieces");
  if (c.k_list.empty()) throw InputError("--k-list is empty");
  Table t;
  t.columns = {"k", "atoms", "rate1", "rate2", "rate3", "expected_tau"};
  for (int n = 1; n <= c.max_order; ++n) t.columns.push_back("zc" + std::to_string(n));
  t.columns.insert(t.columns.end(), {"certified", "classification", "sup_diff_prev"});

  ScanOptions options;
  options.grid_points = c.grid_points;
  std::optional<ExpSumDensity> previous;
  Precision backend = c.precision;
  bool all_certified = true;
  for (std::size_t k : c.k_list) {
    const AtomicString s = discretize_spec(in.spec, k);
    backend = resolve_precision(c.precision, s.size());
    const ExpSumDensity d = hitting_density(s, backend);
    const ShapeReport r = classify(d, c.max_order, options);
    const Real tau = expected_hitting_time(s);
    std::vector<Json> row{k, s.size()};
    for (std::size_t i = 0; i < 3; ++i)
      row.push_back(i < d.size() ? Json(static_cast<double>(d.rates()[i])) : Json(nullptr));
    row.push_back(static_cast<double>(tau));
    bool certified = true;
    for (const auto& o : r.orders) {
      row.push_back(o.zero_count);
      certified = certified && o.certified;
    }
    all_certified = all_certified && certified;
    row.push_back(certified);
    row.push_back(r.classification.str());
    if (previous) {
      Real sup = 0;
      for (Real x : linear_grid(10 * tau, 2001)) sup = std::max(sup, std::fabs(eval(d, x) - eval(*previous, x)));
      row.push_back(static_cast<double>(sup));
    } else {
      row.push_back(nullptr);
    }
    previous = d;
    std::cout << "k=" << k << " rate1=" << format_real(d.rates()[0]) << " E[tau]=" << format_real(tau) << ' '
              << r.classification.str() << '\n';
    t.rows.push_back(std::move(row));
  }
  Outputs out(c);
  out.put(out.table_name("converge"), t.render(c.format));
  out.write_manifest(in.text, backend);
  return all_certified ? 0 : 1;
}

enum class Failure { None, Numerical, Input };

int sweep(const RunConfig& c) {
  struct Item {
    std::string kind;
    Json seed;
    std::optional<AtomicString> string;
    std::string error;
    Failure failure = Failure::None;
  };
  std::vector<Item> items;
  CorpusOptions opts;
  opts.max_atoms = c.max_atoms;
  for (std::size_t i = 0; i < c.count; ++i) {
    const std::uint64_t seed = chunk_seed(c.seed, i);
    const bool two = c.two_sided && i % 2 == 1;
    items.push_back({two ? "two_sided" : "one_sided", seed,
                     two ? random_two_sided(seed, opts) : random_one_sided(seed, opts), "", Failure::None});
  }
  for (const auto& p : c.extra) {
    Item it{"extra:" + p.filename().string(), nullptr, std::nullopt, "", Failure::None};
    try {
      it.string = validate(load(p).spec);
    } catch (const InputError& e) {
      it.error = e.what();
      it.failure = Failure::Input;
    }
    items.push_back(std::move(it));
  }

  Table t;
  t.columns = {"index", "kind", "seed", "atoms", "rates_agree", "interlacing", "cm_certificate", "weight_sum",
               "ray", "unimodal", "ks_pass", "mean_pass", "status", "error"};
  std::size_t ok = 0;
  Failure worst = Failure::None;
  std::map<std::string, std::size_t> passes;
  for (std::size_t i = 0; i < items.size(); ++i) {
    Item& it = items[i];
    std::vector<Json> row{i, it.kind, it.seed};
    Json rates_agree = nullptr, interlacing = nullptr, cm = nullptr, wsum = nullptr, ray = nullptr,
         unimodal = nullptr, ks = nullptr, mean = nullptr;
    bool good = it.failure == Failure::None;
    if (good) {
      const AtomicString& s = *it.string;
      try {
        const Precision backend = resolve_precision(c.precision, s.size());
        const ExpSumDensity d = hitting_density(s, backend);
        if (s.is_one_sided()) {
          const RateSet krein = real_roots(propagate_phi(s, backend).polynomial);
          rates_agree = max_relative_difference(krein, generator_eigenrates(s)) <= 1e-8L;
          if (s.has_start_atom()) {
            const KreinResult psi = propagate_psi(s, backend);
            const RateSet a = psi.polynomial.degree() >= 1 ? real_roots(psi.polynomial) : RateSet{};
            interlacing = check_interlacing(a, krein);
          }
          bool r = true;
          for (int j = 0; j + 2 <= static_cast<int>(d.size()); ++j) {
            Wide scale = 0;
            for (const auto& term : d.terms()) scale += abs(term.coefficient) * pow(term.rate, j);
            r = r && abs(derivative_at_zero(d, j)) <= Wide(1e-9) * scale;
          }
          ray = r;
        }
        if (s.is_one_sided() || s.has_start_atom()) {
          const Factorization f = yamazato_factorize(s, backend);
          cm = f.cm_certificate;
          wsum = static_cast<double>(f.weight_sum);
        }
        if (d.size() >= 2) {
          const ZeroCount z = count_zeros_expsum(derivative(d, 1));
          unimodal = z.certified && z.count == 1;
        }
        if (c.samples > 0) {
          const SampleSet ss = simulate_hitting(build_chain(s), c.samples, c.seed + i, c.workers);
          const McCheck m = mc_check(ss, d, s);
          ks = m.ks_pass;
          mean = m.mean_pass;
        }
        for (const auto* v : {&rates_agree, &interlacing, &cm, &ray, &unimodal, &ks, &mean})
          if (v->is_boolean() && !v->get<bool>()) good = false;
        if (!good) it.failure = Failure::Numerical;
      } catch (const InputError& e) {
        it.error = e.what();
        it.failure = Failure::Input;
      } catch (const NumericalError& e) {
        it.error = e.what();
        it.failure = Failure::Numerical;
      }
      row.push_back(s.size());
    } else {
      row.push_back(nullptr);
    }
    good = it.failure == Failure::None;
    for (const auto& [name, v] : {std::pair{"rates_agree", rates_agree}, {"interlacing", interlacing},
                                  {"cm_certificate", cm}, {"ray", ray}, {"unimodal", unimodal}})
      if (v.is_boolean() && v.get<bool>()) ++passes[name];
    row.insert(row.end(), {rates_agree, interlacing, cm, wsum, ray, unimodal, ks, mean,
                           good ? "ok" : "fail", it.error});
    if (good) ++ok;
    worst = std::max(worst, it.failure);
    t.rows.push_back(std::move(row));
  }
  Outputs out(c);
  out.put(out.table_name("sweep"), t.render(c.format));
  out.write_manifest("", c.precision);
  std::cout << ok << "/" << items.size() << " rows ok\n";
  for (const auto& [name, n] : passes) std::cout << "  " << name << ": " << n << " passed\n";
  if (worst == Failure::Input) return 2;
  return worst == Failure::Numerical ? 1 : 0;
}

}  // namespace

int run(const RunConfig& c) {
  if (c.format != "csv" && c.format != "json") throw InputError("--format must be csv or json");
  if (c.max_order < 1) throw InputError("--max-order must be positive");
  if (c.samples == 0 && c.command == "simulate") throw InputError("--samples must be positive");
  if (c.workers == 0) throw InputError("--workers must be positive");
  if (c.command == "analyze") return analyze(c);
  if (c.command == "classify") return classify_command(c);
  if (c.command == "simulate") return simulate(c);
  if (c.command == "converge") return converge(c);
  if (c.command == "sweep") return sweep(c);
  throw InputError("unknown command '" + c.command + "'");
}

}  // namespace hitlab::cli
