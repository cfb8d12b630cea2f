// Copyright 2026 The kfpue Authors
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

#ifndef KFPUE__RANDOM_HPP_
#define KFPUE__RANDOM_HPP_

#include <cstdint>
#include <random>

namespace kfpue
{

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Counter-based seed split: the seed of substream (counter, purpose) under `master`.
/// Depends only on its arguments, so any trial can be regenerated in isolation.
std::uint64_t derive_seed(
  std::uint64_t master, std::uint64_t counter, std::uint64_t purpose = 0) noexcept;

/// Independent substreams used inside one Monte Carlo trial.
enum class StreamPurpose : std::uint64_t
{
  kMeasurement = 1,
  kRss = 2,
  kSchedule = 3,
};

inline std::uint64_t derive_seed(
  std::uint64_t master, std::uint64_t counter, StreamPurpose purpose) noexcept
{
  return derive_seed(master, counter, static_cast<std::uint64_t>(purpose));
}

/// Seeded random stream. Owned by the caller; not thread-safe.
class RandomStream
{
public:
  explicit RandomStream(std::uint64_t seed);

  /// One draw from N(0, stddev^2). Always consumes one standard normal, so streams stay
  /// aligned across different stddev values.
  double gaussian(double stddev);

  /// Uniform on [0, 1).
  double uniform();

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace kfpue

#endif  // KFPUE__RANDOM_HPP_
