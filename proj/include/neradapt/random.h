// Copyright 2026 The neradapt Authors
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

#ifndef NERADAPT_RANDOM_H_
#define NERADAPT_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace neradapt {

// Derives an independent seed for a labeled substream of `seed`, so that each
// pipeline stage (and each sentence inside a stage) draws from its own stream.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view label);
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view label,
                         std::uint64_t index);

// Seeded generator with implementation-independent integer sampling. The
// standard distributions are not specified bit-for-bit, which would make
// outputs differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi], inclusive.
  std::uint64_t UniformInt(std::uint64_t lo, std::uint64_t hi);

  // Uniform index in [0, n). Requires n > 0.
  std::size_t Index(std::size_t n) { return UniformInt(0, n - 1); }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Index(i)]);
    }
  }

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    Shuffle(std::span<T>(items));
  }

  // `count` distinct values from [0, n), in draw order.
  std::vector<std::size_t> SampleWithoutReplacement(std::size_t n,
                                                    std::size_t count);

 private:
  std::mt19937_64 engine_;
};

}  // namespace neradapt

#endif  // NERADAPT_RANDOM_H_
