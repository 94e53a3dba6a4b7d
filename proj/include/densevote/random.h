// Copyright 2026 The densevote Authors
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

#ifndef DENSEVOTE_RANDOM_H_
#define DENSEVOTE_RANDOM_H_

#include <cstdint>

namespace densevote {

// splitmix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for an independent sub-stream identified by `tag`.
constexpr std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t tag) {
  return Mix64(Mix64(seed) ^ Mix64(tag + 0x632be59bd9b4e019ULL));
}

}  // namespace densevote

#endif  // DENSEVOTE_RANDOM_H_
