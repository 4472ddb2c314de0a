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
 * @file channels.hpp
 * @brief CPTP maps in Kraus form, Choi conversion and structural classification.
 *
 * A channel acts as rho -> sum_i X_i rho X_i^dag with sum_i X_i^dag X_i = I.
 * Kraus lists are not unique, so equality is always decided on the Choi
 * matrix C = sum_ij |i><j| (x) L(|i><j|), never on the operators.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qchan/linalg.hpp"
#include "qchan/random.hpp"

namespace qchan {

class KrausChannel;

/// Checks shapes and trace preservation, then builds the channel.
/// Throws DimensionError for inconsistent shapes and
/// NotTracePreservingError (carrying the deviation) otherwise.
KrausChannel validate_cptp(std::vector<ComplexMatrix> kraus, Index dim_in,
                           Index dim_out, const Tolerances& tol = {});

/// Same, with dimensions taken from the first operator.
KrausChannel validate_cptp(std::vector<ComplexMatrix> kraus,
                           const Tolerances& tol = {});

class KrausChannel {
 public:
  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  /// The identity channel on C^d.
  static KrausChannel identity(Index d);
  /// rho -> U rho U^dag for an isometry U.
  static KrausChannel conjugation(const ComplexMatrix& u,
                                  const Tolerances& tol = {});

 private:
  KrausChannel(Index dim_in, Index dim_out, std::vector<ComplexMatrix> kraus)
      : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {}

  friend KrausChannel validate_cptp(std::vector<ComplexMatrix>, Index, Index,
                                    const Tolerances&);

  Index dim_in_;
  Index dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

/// ||sum_i X_i^dag X_i - I||_max for a raw Kraus list of consistent shape.
double trace_preservation_deviation(const std::vector<ComplexMatrix>& kraus);

struct ChoiMatrix {
  Index dim_in = 0;
  Index dim_out = 0;
  /// (dim_in * dim_out) square; row index i * dim_out + o.
  ComplexMatrix matrix;
};

/// sum_i X_i rho X_i^dag. Only the shape of rho is checked.
ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& rho);

ChoiMatrix choi(const KrausChannel& ch);

/// Minimal Kraus set from the eigenpairs of C above rank_tol * mu_max,
/// ordered by decreasing eigenvalue. Throws InvalidChoiError when C is not
/// PSD or its partial trace over the output is not the identity.
KrausChannel kraus_from_choi(const ChoiMatrix& c, const Tolerances& tol = {});

/// Kraus set {A_i (x) B_j}.
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);

/// `after` o `before`: Kraus set {Y_j X_i}. DimensionError on mismatch.
KrausChannel compose(const KrausChannel& after, const KrausChannel& before);

/// ||Choi(a) - Choi(b)||_max <= eq_tol. DimensionError on mismatch.
bool channels_equal(const KrausChannel& a, const KrausChannel& b,
                    const Tolerances& tol = {});

enum class ChannelTag { Unitary, Isometric, ConstantPure, Other };

std::string_view to_string(ChannelTag tag);

/// Structural verdict on a channel's pure-state behaviour.
struct ChannelClass {
  ChannelTag tag = ChannelTag::Other;
  /// The single Kraus operator for Unitary / Isometric.
  std::optional<ComplexMatrix> isometry;
  /// The fixed output |omega> for ConstantPure; phase fixed so that the
  /// largest-magnitude component is real and positive.
  std::optional<ComplexVector> omega;
  /// Size of a minimal Kraus set (numerical rank of the Choi matrix).
  Index kraus_rank = 0;

  /// Unitary or Isometric.
  bool is_isometric() const {
    return tag == ChannelTag::Unitary || tag == ChannelTag::Isometric;
  }
};

/**
 * Classifies a channel as one of the two pure-state-preserving families or
 * as Other.
 *
 * The Kraus set is first reduced to a minimal one through the Choi matrix.
 * A single operator X is an isometry (Unitary when square). Otherwise, if
 * every minimal operator has rank one with a common range vector |omega>
 * (the dominant left singular vector of [X_1 X_2 ...]), and the channel
 * maps each matrix unit E_ij to delta_ij |omega><omega|, the verdict is
 * ConstantPure. Anything else is Other.
 */
ChannelClass classify(const KrausChannel& ch, const Tolerances& tol = {});

struct PurityProbe {
  bool pure_preserving = true;
  Index samples_used = 0;
  /// First input whose image had Tr(rho'^2) < 1 - 10 eq_tol.
  std::optional<ComplexVector> counterexample;
  std::optional<double> counterexample_purity;
};

/// Applies the channel to Haar-random pure inputs; sample i draws from
/// Rng(seed, i). Stops at the first impure output.
PurityProbe is_pure_preserving_behavioral(const KrausChannel& ch, Index samples,
                                          Seed seed, const Tolerances& tol = {});

}  // namespace qchan
