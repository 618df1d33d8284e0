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

#ifndef HITLAB_STRING_IO_HPP_
#define HITLAB_STRING_IO_HPP_

#include <filesystem>
#include <string>

#include "hitlab/string.hpp"

namespace hitlab {

// String specification files are JSON:
//
//   {"atoms":  [{"x": "0.5", "m": "1"}, ...],
//    "pieces": [{"from": "0", "to": "1", "density": "2"}, ...],
//    "start": "0", "target": "1"}
//
// Every number may be given as a JSON number or as a decimal / "p/q"
// string; strings are read exactly. `density` is a scalar or an array of
// per-cell values.

StringSpec parse_string_spec(const std::string& json_text);
StringSpec load_string_spec(const std::filesystem::path& path);
std::string dump_string_spec(const StringSpec& spec);

std::string rational_to_string(const Rational& r);

}  // namespace hitlab

#endif  // HITLAB_STRING_IO_HPP_
