// Copyright 2026 The PDQ Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PDQ_RANDOM_H_
#define PDQ_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pdq {

// The single random source type used across the library. Every sampling
// routine takes one by reference; nothing holds a hidden generator.
using Rng = std::mt19937_64;

// Uniform draw on the open interval (0, 1), built from the top 53 bits of one
// engine output so the sequence is identical on every standard library.
double UniformOpen01(Rng& rng);

// splitmix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Order-sensitive combination of seed components into one 64-bit seed.
std::uint64_t CombineSeeds(std::initializer_list<std::uint64_t> parts);

}  // namespace pdq

#endif  // PDQ_RANDOM_H_
