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
#include "kfpue/random.hpp"

namespace kfpue
{

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(
  std::uint64_t master, std::uint64_t counter, std::uint64_t purpose) noexcept
{
  // Chain the finalizer so each coordinate passes through a full avalanche round.
  return splitmix64(splitmix64(splitmix64(master) ^ counter) ^ purpose);
}

RandomStream::RandomStream(std::uint64_t seed)
: engine_(seed) {}

double RandomStream::gaussian(double stddev) { return stddev * normal_(engine_); }

double RandomStream::uniform() { return uniform_(engine_); }

}  // namespace kfpue
