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

#include "hitlab/string_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hitlab {

namespace {

using nlohmann::json;

Rational read_number(const json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  // The shortest round-trip representation keeps the decimal the author wrote.
  if (j.is_number()) return parse_rational(j.dump());
  throw InputError(std::string("field '") + what + "' must be a number or decimal string");
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

std::string rational_to_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  // Terminating decimals print as decimals, others as p/q.
  mp::mpz_int den = mp::denominator(r);
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return r.str();
  const int digits = std::max(twos, fives);
  mp::mpz_int scale = mp::pow(mp::mpz_int(10), static_cast<unsigned>(digits));
  mp::mpz_int scaled = mp::numerator(r) * scale / mp::denominator(r);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits - s.size() + 1, '0');
  s.insert(s.size() - digits, ".");
  return negative ? "-" + s : s;
}

StringSpec parse_string_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("string specification must be a JSON object");

  StringSpec spec;
  spec.start = read_number(require(j, "start"), "start");
  spec.target = read_number(require(j, "target"), "target");
  if (auto it = j.find("atoms"); it != j.end()) {
    if (!it->is_array()) throw InputError("field 'atoms' must be an array");
    for (const auto& a : *it) {
      spec.atoms.push_back(Atom{read_number(require(a, "x"), "x"), read_number(require(a, "m"), "m")});
    }
  }
  if (auto it = j.find("pieces"); it != j.end()) {
    if (!it->is_array()) throw InputError("field 'pieces' must be an array");
    for (const auto& p : *it) {
      ContinuousPiece piece;
      piece.lower = read_number(require(p, "from"), "from");
      piece.upper = read_number(require(p, "to"), "to");
      const json& d = require(p, "density");
      if (d.is_array()) {
        for (const auto& v : d) piece.density.push_back(read_number(v, "density"));
      } else {
        piece.density.push_back(read_number(d, "density"));
      }
      spec.pieces.push_back(std::move(piece));
    }
  }
  return spec;
}

StringSpec load_string_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string_spec(buf.str());
}

std::string dump_string_spec(const StringSpec& spec) {
  json j;
  j["start"] = rational_to_string(spec.start);
  j["target"] = rational_to_string(spec.target);
  j["atoms"] = json::array();
  for (const auto& a : spec.atoms)
    j["atoms"].push_back({{"x", rational_to_string(a.position)}, {"m", rational_to_string(a.mass)}});
  j["pieces"] = json::array();
  for (const auto& p : spec.pieces) {
    json d = json::array();
    for (const auto& v : p.density) d.push_back(rational_to_string(v));
    j["pieces"].push_back({{"from", rational_to_string(p.lower)},
                           {"to", rational_to_string(p.upper)},
                           {"density", d}});
  }
  return j.dump(2);
}

}  // namespace hitlab
