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

#ifndef HITLAB_MC_HPP_
#define HITLAB_MC_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hitlab/density.hpp"
#include "hitlab/string.hpp"

namespace hitlab {

/// Birth-death chain on the atoms. The last state jumps right into the
/// absorbing target.
struct ChainSpec {
  std::vector<Real> positions;
  std::vector<Real> right_rate;
  std::vector<Real> left_rate;  ///< 0 for the leftmost state
  Real target = 0;
  std::size_t start = 0;
};

/// Throws InputError when the start lies strictly between two atoms.
ChainSpec build_chain(const AtomicString& s);

inline constexpr std::size_t kChunkSize = std::size_t{1} << 14;

struct SampleSet {
  std::vector<Real> samples;
  std::uint64_t seed = 0;
  std::size_t count() const { return samples.size(); }
};

/// Chunk i draws from an mt19937_64 seeded by splitmix64(seed, i), so the
/// output does not depend on the worker count.
SampleSet simulate_hitting(const ChainSpec& chain, std::size_t n_samples, std::uint64_t seed,
                           unsigned workers = 1);

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk);

Real ks_statistic(const SampleSet& samples, const ExpSumDensity& analytic);

/// Asymptotic Kolmogorov critical value sqrt(-ln(alpha / 2) / 2) / sqrt(n).
Real ks_critical_value(std::size_t n, Real alpha = 0.01L);

struct SampleMoments {
  Real mean;
  Real variance;  ///< unbiased
  Real mean_standard_error;
  /// Standard error of the variance estimate from the fourth central moment.
  Real variance_standard_error;
};

SampleMoments sample_moments(const SampleSet& samples);

}  // namespace hitlab

#endif  // HITLAB_MC_HPP_
