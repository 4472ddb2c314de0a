// Copyright 2026 The qchan Authors
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

/**
 * @file random.hpp
 * @brief Counter-based random streams for reproducible sampling.
 *
 * Every draw is a pure function of (seed, stream, counter):
 *
 *     key    = mix64(mix64(seed) + stream * 0xD1B54A32D192ED03)
 *     out[c] = mix64(key + (c + 1) * 0x9E3779B97F4A7C15)
 *
 * where mix64 is the SplitMix64 finalizer. Stream splitting is therefore
 * free: a probe that evaluates sample i reads from Rng(seed, i), and the
 * result does not depend on which thread ran it or in what order.
 *
 * Normal and uniform variates are produced here instead of through
 * <random> distributions so that outputs are bit-identical across
 * standard library implementations.
 */

#pragma once

#include <cstdint>
#include <limits>

#include "qchan/linalg.hpp"

namespace qchan {

/// Root seed of a reproducible computation.
struct Seed {
  std::uint64_t value = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(Seed seed, std::uint64_t stream = 0)
      : key_(mix64(mix64(seed.value) + stream * 0xD1B54A32D192ED03ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  /// Independent child stream; children of distinct indices do not overlap.
  Rng split(std::uint64_t index) const {
    return Rng(Seed{key_}, index + 1);
  }

  /// Uniform on (0, 1), never exactly 0 or 1.
  double uniform();
  /// Uniform integer in [lo, hi].
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  /// Standard normal via Box-Muller.
  double normal();
  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex complex_normal();

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Matrix of i.i.d. standard complex Gaussians (Ginibre ensemble).
ComplexMatrix ginibre(Index rows, Index cols, Rng& rng);

/// Haar-random unit vector in C^d.
ComplexVector random_unit_vector(Index d, Rng& rng);

/// Uniform point on the probability simplex (Dirichlet(1, ..., 1)).
RealVector uniform_simplex(Index k, Rng& rng);

}  // namespace qchan
