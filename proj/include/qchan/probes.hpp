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
 * @file probes.hpp
 * @brief Behavioural preservation probes for local channels L_a (x) L_b.
 *
 * A probe draws inputs from a family (maximally entangled, fixed Schmidt
 * rank, or product), pushes them through the local channel and stops at the
 * first output outside the family. "Violates" therefore carries a
 * certificate, while "Preserves" only means no counterexample was found in
 * the samples drawn. Sample i reads from Rng(seed, i), so any counterexample
 * can be regenerated from the report alone.
 */

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qchan/channels.hpp"
#include "qchan/states.hpp"

namespace qchan {

inline constexpr Index kDefaultProbeSamples = 64;

enum class Verdict { Preserves, Violates, Inconclusive };
enum class ProbeMode { Mes, Schmidt, Separable };

std::string_view to_string(Verdict v);
std::string_view to_string(ProbeMode m);

struct Counterexample {
  Index sample_index = 0;
  BipartiteDims input_dims;
  BipartiteDims output_dims;
  ComplexMatrix input;   // density matrix of the sampled input
  ComplexMatrix output;  // image under L_a (x) L_b
  /// Which invariant failed, in words.
  std::string diagnostic;
  /// How far the failing quantity is from its required value.
  double deviation = 0.0;
};

struct ProbeReport {
  ProbeMode mode = ProbeMode::Mes;
  /// Target Schmidt rank (Schmidt mode), 1 for separable, 0 for MES.
  Index schmidt_rank = 0;
  BipartiteDims dims;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Counterexample> counterexample;
  Index samples_requested = 0;
  Index samples_used = 0;
  Seed seed;
  Tolerances tolerances;
  /// Largest deviation seen over all evaluated samples.
  double max_deviation = 0.0;
  /// Structural class of L_b, filled in by probe_one_sided.
  std::optional<ChannelClass> channel_b_class;
};

/// The input state evaluated as sample `index` of a probe.
ComplexMatrix probe_input(ProbeMode mode, BipartiteDims dims, Index schmidt_rank,
                          Seed seed, Index index);

/// Regenerates the stored counterexample from (seed, sample_index), checks
/// that it matches the stored input, reapplies the channel and confirms the
/// failure. False when the report has no counterexample.
bool reverify(const ProbeReport& report, const KrausChannel& ch_a,
              const KrausChannel& ch_b);

ProbeReport probe_mes_preservation(const KrausChannel& ch_a, const KrausChannel& ch_b,
                                   BipartiteDims dims,
                                   Index samples = kDefaultProbeSamples,
                                   Seed seed = {}, const Tolerances& tol = {});

/// probe_mes_preservation with L_a = id, plus classify(L_b).
ProbeReport probe_one_sided(const KrausChannel& ch_b, BipartiteDims dims,
                            Index samples = kDefaultProbeSamples, Seed seed = {},
                            const Tolerances& tol = {});

/// Inputs of Schmidt rank r; fails on an impure output or a rank change.
/// r = 1 runs probe_separable_preservation.
ProbeReport probe_schmidt_r_preservation(const KrausChannel& ch_a,
                                         const KrausChannel& ch_b, BipartiteDims dims,
                                         Index r, Index samples = kDefaultProbeSamples,
                                         Seed seed = {}, const Tolerances& tol = {});

ProbeReport probe_separable_preservation(const KrausChannel& ch_a,
                                         const KrausChannel& ch_b, BipartiteDims dims,
                                         Index samples = kDefaultProbeSamples,
                                         Seed seed = {}, const Tolerances& tol = {});

struct EquivalenceReport {
  ChannelClass class_a;
  ChannelClass class_b;
  ProbeReport behavioral;
  /// Whether the structural classes alone say the family is preserved.
  bool structure_predicts_preservation = false;
  bool consistent = false;
  /// Advice when structure and behaviour disagree; empty otherwise.
  std::string note;
};

/**
 * Runs classify on both sides and the probe for `mode`, and compares them.
 *
 * Structure predicts preservation when
 *  - Mes:       both sides are isometric and min of the output dimensions
 *               equals min of the input dimensions (Unitary x Unitary for
 *               square channels);
 *  - Schmidt:   both sides are isometric (r >= 2);
 *  - Separable: each side is isometric or ConstantPure.
 */
EquivalenceReport decide_equivalence(const KrausChannel& ch_a, const KrausChannel& ch_b,
                                     BipartiteDims dims, ProbeMode mode, Index r = 0,
                                     Index samples = kDefaultProbeSamples,
                                     Seed seed = {}, const Tolerances& tol = {});

enum class CheckOutcome { Ok, Violation, Inconclusive };
std::string_view to_string(CheckOutcome c);

struct MonotonicityCheck {
  CheckOutcome outcome = CheckOutcome::Ok;
  Index input_rank = 0;
  /// Exact Schmidt rank for a pure output, else the largest Schmidt rank
  /// among the eigenvectors of the output (an upper bound on its Schmidt
  /// number).
  Index output_rank_bound = 0;
  bool output_pure = false;
};

/// Never reports Violation from the mixed-state upper bound alone.
MonotonicityCheck check_schmidt_monotonicity(const KrausChannel& ch_a,
                                             const KrausChannel& ch_b,
                                             const PureState& psi,
                                             const Tolerances& tol = {});

/// Entropy deviations up to this value count as invariant.
inline constexpr double kEntropyInvarianceTol = 1e-8;

struct EntropyCheck {
  CheckOutcome outcome = CheckOutcome::Ok;
  double input_entropy = 0.0;
  double output_entropy = 0.0;
  double deviation = 0.0;
};

/// Requires both channels to classify as Unitary or Isometric
/// (ContractError otherwise).
EntropyCheck check_entropy_invariance(const KrausChannel& ch_a, const KrausChannel& ch_b,
                                      const PureState& psi, const Tolerances& tol = {});

struct IdentityCheck {
  CheckOutcome outcome = CheckOutcome::Ok;
  double residual = 0.0;
};

/// With |psi> = sum_i lambda_i |a_i>|b_i>, compares
///   pinch((id (x) L_b)|psi><psi|, |a_i0>)
/// against lambda_i0^2 |a_i0><a_i0| (x) L_b(|b_i0><b_i0|) at 10 eq_tol.
/// DimensionError when i0 is not a Schmidt index.
IdentityCheck check_proof_identity(const KrausChannel& ch_b, const PureState& psi,
                                   Index i0, const Tolerances& tol = {});

}  // namespace qchan
