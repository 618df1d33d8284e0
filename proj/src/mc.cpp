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

#include "hitlab/mc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace hitlab {

ChainSpec build_chain(const AtomicString& s) {
  const std::size_t n = s.size();
  if (s.atoms_below_start() > 0 && !s.has_start_atom())
    throw InputError("start not an atom");
  ChainSpec c;
  c.target = to_real(s.target());
  c.start = s.start_index();
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& x = s.atoms()[i].position;
    const Rational& m = s.atoms()[i].mass;
    const Rational next = i + 1 < n ? s.atoms()[i + 1].position : s.target();
    c.positions.push_back(to_real(x));
    c.right_rate.push_back(to_real(Rational(1 / (m * (next - x)))));
    c.left_rate.push_back(i == 0 ? Real(0) : to_real(Rational(1 / (m * (x - s.atoms()[i - 1].position)))));
  }
  return c;
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  // splitmix64 applied to the seed, then to the mix with the chunk index.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ chunk);
}

namespace {

struct Walker {
  const ChainSpec& chain;
  std::vector<Real> total;
  std::vector<Real> right_probability;

  explicit Walker(const ChainSpec& c) : chain(c) {
    for (std::size_t i = 0; i < c.positions.size(); ++i) {
      total.push_back(c.right_rate[i] + c.left_rate[i]);
      right_probability.push_back(c.right_rate[i] / total.back());
    }
  }

  static Real uniform(std::mt19937_64& rng) {
    return static_cast<Real>(rng() >> 11) * 0x1.0p-53L;
  }

  Real sample(std::mt19937_64& rng) const {
    const std::size_t last = total.size() - 1;
    std::size_t state = chain.start;
    Real t = 0;
    while (true) {
      t += -std::log1p(-uniform(rng)) / total[state];
      if (uniform(rng) < right_probability[state]) {
        if (state == last) return t;
        ++state;
      } else {
        --state;
      }
    }
  }
};

}  // namespace

SampleSet simulate_hitting(const ChainSpec& chain, std::size_t n_samples, std::uint64_t seed,
                           unsigned workers) {
  if (n_samples == 0) throw InputError("n_samples must be >= 1");
  if (chain.positions.empty()) throw InputError("chain has no states");
  SampleSet out;
  out.seed = seed;
  out.samples.resize(n_samples);
  const Walker walker(chain);
  const std::size_t chunks = (n_samples + kChunkSize - 1) / kChunkSize;
  auto work = [&](std::size_t first) {
    for (std::size_t c = first; c < chunks; c += std::max(1u, workers)) {
      std::mt19937_64 rng(chunk_seed(seed, c));
      const std::size_t end = std::min(n_samples, (c + 1) * kChunkSize);
      for (std::size_t i = c * kChunkSize; i < end; ++i) out.samples[i] = walker.sample(rng);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  return out;
}

Real ks_statistic(const SampleSet& samples, const ExpSumDensity& analytic) {
  if (samples.samples.empty()) throw InputError("empty sample set");
  if (analytic.order() != 0) throw InputError("KS needs an order-0 density");
  std::vector<Real> x = samples.samples;
  std::sort(x.begin(), x.end());
  const Real n = static_cast<Real>(x.size());
  Real d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Real f = cdf(analytic, x[i]);
    d = std::max({d, static_cast<Real>(i + 1) / n - f, f - static_cast<Real>(i) / n});
  }
  return d;
}

Real ks_critical_value(std::size_t n, Real alpha) {
  return std::sqrt(-std::log(alpha / 2) / 2) / std::sqrt(static_cast<Real>(n));
}

SampleMoments sample_moments(const SampleSet& samples) {
  const std::size_t n = samples.count();
  if (n < 2) throw InputError("moments need at least two samples");
  CompensatedSum<Real> sum;
  for (Real v : samples.samples) sum.add(v);
  const Real mean = sum.value() / static_cast<Real>(n);
  CompensatedSum<Real> m2;
  CompensatedSum<Real> m4;
  for (Real v : samples.samples) {
    const Real d2 = (v - mean) * (v - mean);
    m2.add(d2);
    m4.add(d2 * d2);
  }
  const Real nn = static_cast<Real>(n);
  const Real var = m2.value() / (nn - 1);
  const Real mu4 = m4.value() / nn;
  const Real pop = m2.value() / nn;
  return {mean, var, std::sqrt(var / nn), std::sqrt(std::max<Real>(0, (mu4 - pop * pop) / nn))};
}

}  // namespace hitlab
