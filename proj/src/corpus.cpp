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

#include "hitlab/corpus.hpp"

#include <cmath>
#include <random>

#include "hitlab/mc.hpp"

namespace hitlab {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  Rational log_uniform(double lo, double hi) {
    return to_rational(std::exp(std::log(lo) + uniform() * (std::log(hi) - std::log(lo))));
  }

  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng_() % (hi - lo + 1));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

AtomicString random_one_sided(std::uint64_t seed, const CorpusOptions& o) {
  Draw draw(seed);
  const std::size_t n = draw.between(o.min_atoms, o.max_atoms);
  std::vector<Atom> atoms;
  Rational x = draw.uniform() < 0.5 ? Rational(0) : draw.log_uniform(o.low, o.high);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) x += draw.log_uniform(o.low, o.high);
    atoms.push_back({x, draw.log_uniform(o.low, o.high)});
  }
  const Rational target = x + draw.log_uniform(o.low, o.high);
  return AtomicString(std::move(atoms), Rational(0), target);
}

AtomicString random_two_sided(std::uint64_t seed, const CorpusOptions& o) {
  Draw draw(seed);
  const std::size_t n = draw.between(std::max<std::size_t>(3, o.min_atoms), std::max<std::size_t>(3, o.max_atoms));
  const std::size_t below = draw.between(1, n - 2);
  std::vector<Atom> atoms;
  Rational x = 0;
  for (std::size_t i = 0; i < below; ++i) {
    x -= draw.log_uniform(o.low, o.high);
    atoms.insert(atoms.begin(), {x, draw.log_uniform(o.low, o.high)});
  }
  x = 0;
  atoms.push_back({x, draw.log_uniform(o.low, o.high)});
  for (std::size_t i = below + 1; i < n; ++i) {
    x += draw.log_uniform(o.low, o.high);
    atoms.push_back({x, draw.log_uniform(o.low, o.high)});
  }
  const Rational target = x + draw.log_uniform(o.low, o.high);
  return AtomicString(std::move(atoms), Rational(0), target);
}

std::vector<AtomicString> one_sided_corpus(std::size_t count, std::uint64_t seed,
                                           const CorpusOptions& options) {
  std::vector<AtomicString> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_one_sided(chunk_seed(seed, i), options));
  return out;
}

std::vector<AtomicString> two_sided_corpus(std::size_t count, std::uint64_t seed,
                                           const CorpusOptions& options) {
  std::vector<AtomicString> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_two_sided(chunk_seed(seed, i), options));
  return out;
}

}  // namespace hitlab
