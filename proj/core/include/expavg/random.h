// Copyright 2026 The Authors.
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

// Seed derivation helpers. Every stochastic component draws from a
// std::mt19937_64 seeded through these so runs are reproducible.

#ifndef EXPAVG_RANDOM_H_
#define EXPAVG_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace expavg {

// splitmix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// FNV-1a over the bytes of s.
std::uint64_t HashString(std::string_view s);

std::uint64_t HashDouble(double x);

// Order-sensitive combination of several 64-bit words.
std::uint64_t Hash64(std::initializer_list<std::uint64_t> words);

}  // namespace expavg

#endif  // EXPAVG_RANDOM_H_
