/*
 * Copyright 2026 The clore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Seeded random streams.
//
// One user-facing seed is fanned out into named, independent streams so that
// e.g. changing the number of epochs never perturbs the data generator. The
// engine (mt19937_64) is fully specified by the standard and the
// distributions come from Boost.Random, whose algorithms do not vary between
// standard library implementations.

#ifndef CLORE_RNG_H_
#define CLORE_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace clore {

enum class Stream : std::uint64_t {
  kData = 1,
  kInit = 2,
  kShuffle = 3,
  kEval = 4,
};

using Rng = std::mt19937_64;

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a, for deriving substream ids from names.
inline std::uint64_t HashName(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Engine for (seed, stream, substream). `sub` distinguishes e.g. epochs or
// task indices inside one stream.
inline Rng MakeRng(std::uint64_t seed, Stream stream, std::uint64_t sub = 0) {
  std::uint64_t s = SplitMix64(seed);
  s = SplitMix64(s ^ static_cast<std::uint64_t>(stream));
  s = SplitMix64(s ^ sub);
  return Rng(s);
}

// Uniform integer in [lo, hi].
inline std::int64_t UniformInt(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return boost::random::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline double UniformReal(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double Normal(Rng& rng, double mean, double stddev) {
  return boost::random::normal_distribution<double>(mean, stddev)(rng);
}

inline bool Bernoulli(Rng& rng, double p) { return UniformReal(rng) < p; }

// Fisher-Yates; std::shuffle is implementation-defined.
template <typename T>
void Shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(
        UniformInt(rng, 0, static_cast<std::int64_t>(i) - 1));
    using std::swap;
    swap(v[i - 1], v[j]);
  }
}

}  // namespace clore

#endif  // CLORE_RNG_H_
