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

#include "qchan/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "qchan/errors.hpp"
#include "qchan/generators.hpp"

namespace qchan {

namespace {

struct SampleOutcome {
  double deviation = 0.0;
  std::optional<std::string> failure;
};

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void check_local_dims(const KrausChannel& a, const KrausChannel& b, BipartiteDims dims) {
  dims.validate();
  if (a.dim_in() != dims.m || b.dim_in() != dims.n) {
    throw DimensionError("local channel acts on " + std::to_string(a.dim_in()) + "x" +
                         std::to_string(b.dim_in()) + " but the system is " +
                         std::to_string(dims.m) + "x" + std::to_string(dims.n));
  }
}

BipartiteDims output_dims(const KrausChannel& a, const KrausChannel& b) {
  return {a.dim_out(), b.dim_out()};
}

// Outputs of valid channels are states up to roundoff; validate loosely so
// that the verdict comes from the family test, not from state validation.
Tolerances loose(const Tolerances& tol) { return {10.0 * tol.eq_tol, tol.rank_tol}; }

SampleOutcome evaluate(ProbeMode mode, Index r, const ComplexMatrix& out,
                       BipartiteDims dims, const Tolerances& tol) {
  SampleOutcome res;
  const double p = purity(out);
  if (mode == ProbeMode::Mes) {
    const DensityMatrix rho(dims, out, loose(tol));
    res.deviation = mes_deviation(rho, tol);
    if (res.deviation > tol.eq_tol) {
      res.failure = "output is not maximally entangled: cross-Gram deviation " +
                    fmt_double(res.deviation) + ", purity " + fmt_double(p);
    }
    return res;
  }
  const Index target = mode == ProbeMode::Separable ? 1 : r;
  const auto pure = as_pure(out, dims, tol);
  if (!pure) {
    res.deviation = 1.0 - p;
    res.failure = "output is mixed: purity " + fmt_double(p);
    return res;
  }
  res.deviation = std::max(0.0, 1.0 - p);
  const Index k = schmidt_rank(*pure, tol);
  if (k != target) {
    res.deviation = double(k > target ? k - target : target - k);
    res.failure = "output Schmidt rank " + std::to_string(k) + ", expected " +
                  std::to_string(target);
  }
  return res;
}

ProbeReport run_probe(ProbeMode mode, Index r, const KrausChannel& ch_a,
                      const KrausChannel& ch_b, BipartiteDims dims, Index samples,
                      Seed seed, const Tolerances& tol) {
  check_local_dims(ch_a, ch_b, dims);
  if (samples < 1) throw ContractError("a probe needs at least one sample");
  const KrausChannel local = tensor(ch_a, ch_b);
  const BipartiteDims out_dims = output_dims(ch_a, ch_b);

  ProbeReport report;
  report.mode = mode;
  report.schmidt_rank = mode == ProbeMode::Mes ? 0 : (mode == ProbeMode::Separable ? 1 : r);
  report.dims = dims;
  report.samples_requested = samples;
  report.seed = seed;
  report.tolerances = tol;
  report.verdict = Verdict::Preserves;

  for (Index i = 0; i < samples; ++i) {
    ComplexMatrix input = probe_input(mode, dims, report.schmidt_rank, seed, i);
    ComplexMatrix output = qchan::apply(local, input);
    const SampleOutcome res = evaluate(mode, report.schmidt_rank, output, out_dims, tol);
    report.samples_used = i + 1;
    report.max_deviation = std::max(report.max_deviation, res.deviation);
    if (res.failure) {
      report.verdict = Verdict::Violates;
      report.counterexample = Counterexample{i,
                                             dims,
                                             out_dims,
                                             std::move(input),
                                             std::move(output),
                                             *res.failure,
                                             res.deviation};
      break;
    }
  }
  return report;
}

bool isometric_or_constant(const ChannelClass& c) {
  return c.is_isometric() || c.tag == ChannelTag::ConstantPure;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Preserves:
      return "Preserves";
    case Verdict::Violates:
      return "Violates";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

std::string_view to_string(ProbeMode m) {
  switch (m) {
    case ProbeMode::Mes:
      return "mes";
    case ProbeMode::Schmidt:
      return "schmidt";
    case ProbeMode::Separable:
      return "separable";
  }
  return "mes";
}

std::string_view to_string(CheckOutcome c) {
  switch (c) {
    case CheckOutcome::Ok:
      return "Ok";
    case CheckOutcome::Violation:
      return "Violation";
    case CheckOutcome::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

ComplexMatrix probe_input(ProbeMode mode, BipartiteDims dims, Index schmidt_rank,
                          Seed seed, Index index) {
  Rng rng(seed, static_cast<std::uint64_t>(index));
  switch (mode) {
    case ProbeMode::Mes: {
      const Index capacity = dims.max() / dims.min();
      if (capacity >= 2 && index % 2 == 1) {
        const auto blocks = static_cast<Index>(
            rng.uniform_int(2, static_cast<std::uint64_t>(capacity)));
        return random_mes_mixed(dims, blocks, rng).matrix();
      }
      return random_mes_pure(dims, rng).density();
    }
    case ProbeMode::Schmidt:
      return random_pure_with_rank(dims, schmidt_rank, rng).density();
    case ProbeMode::Separable:
      return random_product_state(dims, rng).density();
  }
  throw ContractError("unknown probe mode");
}

bool reverify(const ProbeReport& report, const KrausChannel& ch_a,
              const KrausChannel& ch_b) {
  if (!report.counterexample) return false;
  const Counterexample& cx = *report.counterexample;
  const ComplexMatrix input =
      probe_input(report.mode, report.dims, report.schmidt_rank, report.seed, cx.sample_index);
  if (input.rows() != cx.input.rows() || input.cols() != cx.input.cols() ||
      input != cx.input) {
    return false;
  }
  const ComplexMatrix output = qchan::apply(tensor(ch_a, ch_b), input);
  const SampleOutcome res = evaluate(report.mode, report.schmidt_rank, output,
                                     output_dims(ch_a, ch_b), report.tolerances);
  return res.failure.has_value();
}

ProbeReport probe_mes_preservation(const KrausChannel& ch_a, const KrausChannel& ch_b,
                                   BipartiteDims dims, Index samples, Seed seed,
                                   const Tolerances& tol) {
  return run_probe(ProbeMode::Mes, 0, ch_a, ch_b, dims, samples, seed, tol);
}

ProbeReport probe_one_sided(const KrausChannel& ch_b, BipartiteDims dims, Index samples,
                            Seed seed, const Tolerances& tol) {
  dims.validate();
  ProbeReport report = probe_mes_preservation(KrausChannel::identity(dims.m), ch_b, dims,
                                              samples, seed, tol);
  report.channel_b_class = classify(ch_b, tol);
  return report;
}

ProbeReport probe_schmidt_r_preservation(const KrausChannel& ch_a,
                                         const KrausChannel& ch_b, BipartiteDims dims,
                                         Index r, Index samples, Seed seed,
                                         const Tolerances& tol) {
  dims.validate();
  if (r < 1 || r > dims.min()) {
    throw DimensionError("Schmidt rank " + std::to_string(r) + " outside [1, " +
                         std::to_string(dims.min()) + "]");
  }
  if (r == 1) return probe_separable_preservation(ch_a, ch_b, dims, samples, seed, tol);
  return run_probe(ProbeMode::Schmidt, r, ch_a, ch_b, dims, samples, seed, tol);
}

ProbeReport probe_separable_preservation(const KrausChannel& ch_a,
                                         const KrausChannel& ch_b, BipartiteDims dims,
                                         Index samples, Seed seed, const Tolerances& tol) {
  return run_probe(ProbeMode::Separable, 1, ch_a, ch_b, dims, samples, seed, tol);
}

EquivalenceReport decide_equivalence(const KrausChannel& ch_a, const KrausChannel& ch_b,
                                     BipartiteDims dims, ProbeMode mode, Index r,
                                     Index samples, Seed seed, const Tolerances& tol) {
  check_local_dims(ch_a, ch_b, dims);
  EquivalenceReport out;
  out.class_a = classify(ch_a, tol);
  out.class_b = classify(ch_b, tol);

  const bool both_isometric = out.class_a.is_isometric() && out.class_b.is_isometric();
  const bool separable_rule =
      isometric_or_constant(out.class_a) && isometric_or_constant(out.class_b);
  switch (mode) {
    case ProbeMode::Mes: {
      const BipartiteDims od = output_dims(ch_a, ch_b);
      out.structure_predicts_preservation = both_isometric && od.min() == dims.min();
      out.behavioral = probe_mes_preservation(ch_a, ch_b, dims, samples, seed, tol);
      break;
    }
    case ProbeMode::Schmidt:
      out.behavioral = probe_schmidt_r_preservation(ch_a, ch_b, dims, r, samples, seed, tol);
      out.structure_predicts_preservation = r >= 2 ? both_isometric : separable_rule;
      break;
    case ProbeMode::Separable:
      out.behavioral = probe_separable_preservation(ch_a, ch_b, dims, samples, seed, tol);
      out.structure_predicts_preservation = separable_rule;
      break;
  }

  const bool preserves = out.behavioral.verdict == Verdict::Preserves;
  out.consistent = out.structure_predicts_preservation == preserves;
  if (!out.consistent) {
    out.note = preserves
                   ? "sampling may have missed a counterexample; increase samples"
                   : "structure predicts preservation but a counterexample was found; "
                     "check tolerances";
  }
  return out;
}

MonotonicityCheck check_schmidt_monotonicity(const KrausChannel& ch_a,
                                             const KrausChannel& ch_b,
                                             const PureState& psi, const Tolerances& tol) {
  check_local_dims(ch_a, ch_b, psi.dims());
  MonotonicityCheck out;
  out.input_rank = schmidt_rank(psi, tol);
  const BipartiteDims od = output_dims(ch_a, ch_b);
  const ComplexMatrix rho = qchan::apply(tensor(ch_a, ch_b), psi.density());

  if (const auto pure = as_pure(rho, od, tol)) {
    out.output_pure = true;
    out.output_rank_bound = schmidt_rank(*pure, tol);
    out.outcome = out.output_rank_bound <= out.input_rank ? CheckOutcome::Ok
                                                          : CheckOutcome::Violation;
    return out;
  }

  // One decomposition only bounds the Schmidt number from above.
  const auto spec = eigh(rho, loose(tol));
  const double p_max = spec.values.maxCoeff();
  for (Index k = 0; k < spec.values.size(); ++k) {
    if (spec.values(k) > tol.rank_tol * p_max) {
      const PureState v = PureState::normalized(od, spec.vectors.col(k));
      out.output_rank_bound = std::max(out.output_rank_bound, schmidt_rank(v, tol));
    }
  }
  out.outcome = out.output_rank_bound <= out.input_rank ? CheckOutcome::Ok
                                                        : CheckOutcome::Inconclusive;
  return out;
}

EntropyCheck check_entropy_invariance(const KrausChannel& ch_a, const KrausChannel& ch_b,
                                      const PureState& psi, const Tolerances& tol) {
  check_local_dims(ch_a, ch_b, psi.dims());
  if (!classify(ch_a, tol).is_isometric() || !classify(ch_b, tol).is_isometric()) {
    throw ContractError("entropy invariance needs unitary or isometric channels on both sides");
  }
  EntropyCheck out;
  out.input_entropy = entanglement_entropy(psi);
  const BipartiteDims od = output_dims(ch_a, ch_b);
  const auto pure = as_pure(qchan::apply(tensor(ch_a, ch_b), psi.density()), od, tol);
  if (!pure) {
    out.outcome = CheckOutcome::Violation;
    out.deviation = std::numeric_limits<double>::infinity();
    return out;
  }
  out.output_entropy = entanglement_entropy(*pure);
  out.deviation = std::abs(out.output_entropy - out.input_entropy);
  out.outcome = out.deviation <= kEntropyInvarianceTol ? CheckOutcome::Ok
                                                       : CheckOutcome::Violation;
  return out;
}

IdentityCheck check_proof_identity(const KrausChannel& ch_b, const PureState& psi, Index i0,
                                   const Tolerances& tol) {
  const BipartiteDims d = psi.dims();
  if (ch_b.dim_in() != d.n) {
    throw DimensionError("channel input dimension does not match subsystem B");
  }
  const SchmidtData sd = schmidt_decompose(psi, tol);
  if (i0 < 0 || i0 >= sd.coefficients.size()) {
    throw DimensionError("Schmidt index " + std::to_string(i0) + " outside [0, " +
                         std::to_string(sd.coefficients.size()) + ")");
  }
  const BipartiteDims od{d.m, ch_b.dim_out()};
  const ComplexMatrix out =
      qchan::apply(tensor(KrausChannel::identity(d.m), ch_b), psi.density());
  const ComplexVector a = sd.a_basis.col(i0);
  const ComplexVector b = sd.b_basis.col(i0);
  const ComplexMatrix lhs = pinch(DensityMatrix(od, out, loose(tol)), a);
  const double lambda = sd.coefficients(i0);
  const ComplexMatrix rhs = lambda * lambda * kron(outer(a), qchan::apply(ch_b, outer(b)));

  IdentityCheck res;
  res.residual = max_abs_diff(lhs, rhs);
  res.outcome = res.residual <= 10.0 * tol.eq_tol ? CheckOutcome::Ok : CheckOutcome::Violation;
  return res;
}

}  // namespace qchan
