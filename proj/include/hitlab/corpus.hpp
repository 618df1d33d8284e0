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

#ifndef HITLAB_CORPUS_HPP_
#define HITLAB_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hitlab/string.hpp"

namespace hitlab {

/// Seeded random strings for property campaigns. Gaps and masses are
/// log-uniform in [low, high].
struct CorpusOptions {
  std::size_t min_atoms = 2;
  std::size_t max_atoms = 12;
  double low = 0.1;
  double high = 10.0;
};

/// No mass below the start; with probability 1/2 the first atom sits at
/// the start (0), otherwise one log-uniform gap above it.
AtomicString random_one_sided(std::uint64_t seed, const CorpusOptions& options = {});

/// Start atom at 0 with at least one atom below it and at least one atom
/// strictly between it and the target.
AtomicString random_two_sided(std::uint64_t seed, const CorpusOptions& options = {});

std::vector<AtomicString> one_sided_corpus(std::size_t count, std::uint64_t seed,
                                           const CorpusOptions& options = {});
std::vector<AtomicString> two_sided_corpus(std::size_t count, std::uint64_t seed,
                                           const CorpusOptions& options = {});

}  // namespace hitlab

#endif  // HITLAB_CORPUS_HPP_
