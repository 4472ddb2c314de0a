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

#include "qchan/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qchan/errors.hpp"

namespace qchan {

ComplexMatrix haar_unitary(Index d, Rng& rng) {
  if (d < 1) throw DimensionError("haar_unitary: dimension must be >= 1");
  const ComplexMatrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix& r = qr.matrixQR();
  for (Index i = 0; i < d; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

ComplexMatrix haar_unitary(Index d, Seed seed) {
  Rng rng(seed);
  return haar_unitary(d, rng);
}

ComplexMatrix random_isometry(Index d_in, Index d_out, Rng& rng) {
  if (d_in < 1 || d_out < d_in) {
    throw DimensionError("random_isometry: need 1 <= d_in <= d_out, got " +
                         std::to_string(d_in) + " -> " + std::to_string(d_out));
  }
  return haar_unitary(d_out, rng).leftCols(d_in);
}

ComplexMatrix random_isometry(Index d_in, Index d_out, Seed seed) {
  Rng rng(seed);
  return random_isometry(d_in, d_out, rng);
}

KrausChannel random_cptp(Index d_in, Index d_out, Index kraus_count, Rng& rng) {
  if (kraus_count < 1) throw DimensionError("random_cptp: kraus_count must be >= 1");
  if (d_out < 1 || d_out * kraus_count < d_in) {
    throw DimensionError("random_cptp: d_out * kraus_count must be >= d_in");
  }
  const ComplexMatrix v = random_isometry(d_in, d_out * kraus_count, rng);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(kraus_count));
  for (Index k = 0; k < kraus_count; ++k) {
    ComplexMatrix x(d_out, d_in);
    // Row o*e + k of V is <o|<k| V.
    for (Index o = 0; o < d_out; ++o) x.row(o) = v.row(o * kraus_count + k);
    kraus.push_back(std::move(x));
  }
  return validate_cptp(std::move(kraus), d_in, d_out);
}

KrausChannel random_cptp(Index d_in, Index d_out, Index kraus_count, Seed seed) {
  Rng rng(seed);
  return random_cptp(d_in, d_out, kraus_count, rng);
}

KrausChannel constant_pure_channel(const ComplexVector& omega, Index d_in) {
  if (d_in < 1 || omega.size() < 1) {
    throw DimensionError("constant_pure_channel: dimensions must be >= 1");
  }
  if (std::abs(omega.norm() - 1.0) > 1e-9) {
    throw StateError("constant_pure_channel: omega is not normalized");
  }
  std::vector<ComplexMatrix> kraus;
  for (Index k = 0; k < d_in; ++k) {
    ComplexMatrix x = ComplexMatrix::Zero(omega.size(), d_in);
    x.col(k) = omega;
    kraus.push_back(std::move(x));
  }
  return validate_cptp(std::move(kraus), d_in, omega.size());
}

KrausChannel random_constant_pure_channel(Index d_in, Index d_out, Rng& rng) {
  return constant_pure_channel(random_unit_vector(d_out, rng), d_in);
}

PureState random_pure_with_rank(BipartiteDims dims, Index r, Rng& rng) {
  dims.validate();
  if (r < 1 || r > dims.min()) {
    throw DimensionError("target Schmidt rank " + std::to_string(r) +
                         " outside [1, " + std::to_string(dims.min()) + "]");
  }
  const ComplexMatrix a = haar_unitary(dims.m, rng);
  const ComplexMatrix b = haar_unitary(dims.n, rng);
  // c_k^2 = floor^2 + (1 - r floor^2) w_k keeps every c_k >= floor.
  const double floor_sq = kSchmidtCoefficientFloor * kSchmidtCoefficientFloor;
  const RealVector w = uniform_simplex(r, rng);
  ComplexMatrix psi = ComplexMatrix::Zero(dims.m, dims.n);
  for (Index k = 0; k < r; ++k) {
    const double c = std::sqrt(floor_sq + (1.0 - double(r) * floor_sq) * w(k));
    psi += c * a.col(k) * b.col(k).transpose();
  }
  return PureState::from_coefficients(psi);
}

PureState random_pure_with_rank(BipartiteDims dims, Index r, Seed seed) {
  Rng rng(seed);
  return random_pure_with_rank(dims, r, rng);
}

PureState random_mes_pure(BipartiteDims dims, Rng& rng) {
  dims.validate();
  const ComplexMatrix a = haar_unitary(dims.m, rng);
  const ComplexMatrix b = haar_unitary(dims.n, rng);
  const Index s = dims.min();
  ComplexMatrix psi = a.leftCols(s) * b.leftCols(s).transpose();
  psi /= std::sqrt(double(s));
  return PureState::from_coefficients(psi);
}

PureState random_mes_pure(BipartiteDims dims, Seed seed) {
  Rng rng(seed);
  return random_mes_pure(dims, rng);
}

DensityMatrix random_mes_mixed(BipartiteDims dims, Index blocks, Rng& rng,
                               const std::optional<RealVector>& weights) {
  dims.validate();
  const Index s = dims.min();
  if (blocks < 1 || blocks * s > dims.max()) {
    throw DimensionError(std::to_string(blocks) + " blocks of size " +
                         std::to_string(s) + " do not fit in dimension " +
                         std::to_string(dims.max()));
  }
  const ComplexMatrix a = haar_unitary(dims.m, rng);
  const ComplexMatrix b = haar_unitary(dims.n, rng);
  RealVector p;
  if (weights) {
    p = *weights;
    if (p.size() != blocks) throw DimensionError("need one weight per block");
    if ((p.array() < 0.0).any() || std::abs(p.sum() - 1.0) > 1e-9) {
      throw std::invalid_argument("weights must be a probability vector");
    }
  } else {
    p = uniform_simplex(blocks, rng);
  }
  const bool a_smaller = dims.m <= dims.n;
  ComplexMatrix rho = ComplexMatrix::Zero(dims.total(), dims.total());
  for (Index k = 0; k < blocks; ++k) {
    const ComplexMatrix psi =
        a_smaller ? ComplexMatrix(a * b.middleCols(k * s, s).transpose())
                  : ComplexMatrix(a.middleCols(k * s, s) * b.transpose());
    const PureState state =
        PureState::from_coefficients(psi / std::sqrt(double(s)));
    rho += p(k) * state.density();
  }
  return DensityMatrix(dims, std::move(rho));
}

DensityMatrix random_mes_mixed(BipartiteDims dims, Index blocks, Seed seed,
                               const std::optional<RealVector>& weights) {
  Rng rng(seed);
  return random_mes_mixed(dims, blocks, rng, weights);
}

PureState random_product_state(BipartiteDims dims, Rng& rng) {
  dims.validate();
  const ComplexVector a = random_unit_vector(dims.m, rng);
  const ComplexVector b = random_unit_vector(dims.n, rng);
  return PureState::product(a, b);
}

KrausChannel named_channel(std::string_view name, double p, Index d) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("channel parameter must lie in [0, 1]");
  }
  if (d < 1) throw DimensionError("channel dimension must be >= 1");
  std::vector<ComplexMatrix> kraus;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  if (name == "depolarizing") {
    if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * id);
    if (p > 0.0) {
      const double c = std::sqrt(p / double(d));
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) {
          ComplexMatrix e = ComplexMatrix::Zero(d, d);
          e(i, j) = c;
          kraus.push_back(std::move(e));
        }
    }
  } else if (name == "dephasing") {
    if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * id);
    if (p > 0.0) {
      for (Index k = 0; k < d; ++k) {
        ComplexMatrix e = ComplexMatrix::Zero(d, d);
        e(k, k) = std::sqrt(p);
        kraus.push_back(std::move(e));
      }
    }
  } else if (name == "amplitude_damping") {
    if (d != 2) throw DimensionError("amplitude_damping is defined for d = 2");
    ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - p);
    kraus.push_back(std::move(k0));
    if (p > 0.0) {
      ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
      k1(0, 1) = std::sqrt(p);
      kraus.push_back(std::move(k1));
    }
  } else {
    throw std::invalid_argument("unknown channel name '" + std::string(name) + "'");
  }
  return validate_cptp(std::move(kraus), d, d);
}

}  // namespace qchan
