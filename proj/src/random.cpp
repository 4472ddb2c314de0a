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

#include "qchan/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qchan/errors.hpp"

namespace qchan {

double Rng::uniform() {
  // 53 random mantissa bits, shifted by half an ulp to exclude 0.
  const std::uint64_t bits = (*this)() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = hi - lo;
  if (span == max()) return (*this)();
  const std::uint64_t range = span + 1;
  // Rejection keeps the distribution exact.
  const std::uint64_t limit = max() - max() % range;
  std::uint64_t x;
  do {
    x = (*this)();
  } while (x >= limit);
  return lo + x % range;
}

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix ginibre(Index rows, Index cols, Rng& rng) {
  if (rows < 0 || cols < 0) throw DimensionError("ginibre: negative size");
  ComplexMatrix out(rows, cols);
  // Fill row by row so the draw order matches the documented layout.
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = rng.complex_normal();
  return out;
}

ComplexVector random_unit_vector(Index d, Rng& rng) {
  if (d < 1) throw DimensionError("random_unit_vector: dimension must be >= 1");
  ComplexVector v(d);
  double norm = 0.0;
  do {
    for (Index i = 0; i < d; ++i) v(i) = rng.complex_normal();
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

RealVector uniform_simplex(Index k, Rng& rng) {
  if (k < 1) throw DimensionError("uniform_simplex: need at least one weight");
  RealVector w(k);
  for (Index i = 0; i < k; ++i) w(i) = -std::log(rng.uniform());
  return w / w.sum();
}

}  // namespace qchan
