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

#ifndef HITLAB_REPORT_HPP_
#define HITLAB_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "hitlab/density.hpp"
#include "hitlab/krein.hpp"
#include "hitlab/mc.hpp"
#include "hitlab/shape.hpp"
#include "hitlab/spectra.hpp"

namespace hitlab {

using Json = nlohmann::ordered_json;

Json to_json(const LambdaPolynomial& p);
Json to_json(const RateSet& r);
Json to_json(const ExpSumDensity& d);
Json to_json(const Factorization& f);
Json to_json(const ZeroCount& z);
Json to_json(const ShapeReport& r);

/// Columns t, f, d1, ..., dN at %.17g, one row per grid point.
void write_density_csv(std::ostream& out, const ExpSumDensity& d, int max_order,
                       std::span<const Real> grid);
/// Single column "t".
void write_samples_csv(std::ostream& out, const SampleSet& s);

/// %.17g rendering shared by every table.
std::string format_real(Real v);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace hitlab

#endif  // HITLAB_REPORT_HPP_
