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

#ifndef HITLAB_TOOLS_COMMANDS_HPP_
#define HITLAB_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hitlab/numeric.hpp"

namespace hitlab::cli {

struct RunConfig {
  std::string command;
  std::filesystem::path input;
  std::filesystem::path output = ".";
  std::string format = "csv";
  int max_order = 6;
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
  std::vector<std::size_t> k_list{8, 16, 32, 64};
  Precision precision = Precision::Auto;
  unsigned workers = 1;
  std::size_t count = 100;
  std::size_t max_atoms = 8;
  bool two_sided = false;
  std::vector<std::filesystem::path> extra;
  std::optional<std::string> gig;
  std::size_t grid_points = 4096;
};

/// Runs one command and returns the process exit code. Input and numerical
/// errors propagate as exceptions.
int run(const RunConfig& config);

}  // namespace hitlab::cli

#endif  // HITLAB_TOOLS_COMMANDS_HPP_
