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
 * @file generators.hpp
 * @brief Seeded constructions of random and named states and channels.
 *
 * Every function is a pure function of its parameters and the stream it
 * reads. Overloads taking a Seed read from Rng(seed).
 */

#pragma once

#include <optional>
#include <string_view>

#include "qchan/channels.hpp"
#include "qchan/random.hpp"
#include "qchan/states.hpp"

namespace qchan {

/// Haar unitary: QR of a Ginibre matrix with the phases of diag(R) removed.
ComplexMatrix haar_unitary(Index d, Rng& rng);
ComplexMatrix haar_unitary(Index d, Seed seed);

/// First d_in columns of a Haar unitary on C^d_out.
ComplexMatrix random_isometry(Index d_in, Index d_out, Rng& rng);
ComplexMatrix random_isometry(Index d_in, Index d_out, Seed seed);

/// Stinespring channel with an environment of dimension `kraus_count`:
/// V : C^d_in -> C^d_out (x) C^e Haar isometry, X_k = (I (x) <k|) V.
KrausChannel random_cptp(Index d_in, Index d_out, Index kraus_count, Rng& rng);
KrausChannel random_cptp(Index d_in, Index d_out, Index kraus_count, Seed seed);

/// rho -> Tr(rho) |omega><omega| with Kraus {|omega><k|}.
KrausChannel constant_pure_channel(const ComplexVector& omega, Index d_in);
/// Same with a Haar-random |omega> in C^d_out.
KrausChannel random_constant_pure_channel(Index d_in, Index d_out, Rng& rng);

/// Lower bound on each Schmidt coefficient in random_pure_with_rank.
inline constexpr double kSchmidtCoefficientFloor = 0.05;

/// sum_{k<r} c_k |a_k>|b_k> with Haar-random orthonormal a, b and random
/// positive c_k >= 0.05, sum c_k^2 = 1.
PureState random_pure_with_rank(BipartiteDims dims, Index r, Rng& rng);
PureState random_pure_with_rank(BipartiteDims dims, Index r, Seed seed);

/// (1/sqrt(s)) sum_i |a_i>|b_i>, s = min(m, n).
PureState random_mes_pure(BipartiteDims dims, Rng& rng);
PureState random_mes_pure(BipartiteDims dims, Seed seed);

/// sum_k p_k |psi_k><psi_k| where the |psi_k> are maximally entangled on a
/// common Haar basis of the smaller side and on disjoint blocks of a Haar
/// basis of the larger side. Weights are Dirichlet(1, ..., 1) unless given.
/// DimensionError when blocks * min(m, n) > max(m, n).
DensityMatrix random_mes_mixed(BipartiteDims dims, Index blocks, Rng& rng,
                               const std::optional<RealVector>& weights = std::nullopt);
DensityMatrix random_mes_mixed(BipartiteDims dims, Index blocks, Seed seed,
                               const std::optional<RealVector>& weights = std::nullopt);

/// Haar-random product state |a>|b>.
PureState random_product_state(BipartiteDims dims, Rng& rng);

/// "depolarizing":      (1-p) rho + p Tr(rho) I/d
/// "dephasing":         (1-p) rho + p diag(rho)
/// "amplitude_damping": {diag(1, sqrt(1-p)), sqrt(p) |0><1|}, d = 2 only
/// Throws std::invalid_argument for an unknown name or p outside [0, 1],
/// DimensionError for a bad d.
KrausChannel named_channel(std::string_view name, double p, Index d);

}  // namespace qchan
