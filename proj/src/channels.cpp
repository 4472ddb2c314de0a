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

#include "qchan/channels.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qchan/errors.hpp"

namespace qchan {

namespace {

std::string shape_str(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Multiplies by a unit phase so the largest-magnitude entry is real positive.
template <typename Derived>
void fix_phase(Eigen::MatrixBase<Derived>& m) {
  Index r = 0, c = 0;
  m.cwiseAbs().maxCoeff(&r, &c);
  const Complex pivot = m(r, c);
  if (std::abs(pivot) > 0.0) m *= std::conj(pivot) / std::abs(pivot);
}

ComplexMatrix matrix_unit(Index d, Index i, Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

double trace_preservation_deviation(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) return 0.0;
  const Index d = kraus.front().cols();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& x : kraus) sum.noalias() += x.adjoint() * x;
  return max_abs_diff(sum, ComplexMatrix::Identity(d, d));
}

KrausChannel validate_cptp(std::vector<ComplexMatrix> kraus, Index dim_in,
                           Index dim_out, const Tolerances& tol) {
  if (kraus.empty()) throw DimensionError("a channel needs at least one Kraus operator");
  if (dim_in < 1 || dim_out < 1) throw DimensionError("channel dimensions must be >= 1");
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    if (kraus[k].rows() != dim_out || kraus[k].cols() != dim_in) {
      throw DimensionError("Kraus operator " + std::to_string(k) + " is " +
                           shape_str(kraus[k]) + ", expected " +
                           std::to_string(dim_out) + "x" + std::to_string(dim_in));
    }
    require_finite(kraus[k]);
  }
  const double dev = trace_preservation_deviation(kraus);
  if (dev > tol.eq_tol) {
    throw NotTracePreservingError(
        "sum of X^dag X deviates from identity by " + std::to_string(dev), dev);
  }
  return KrausChannel(dim_in, dim_out, std::move(kraus));
}

KrausChannel validate_cptp(std::vector<ComplexMatrix> kraus, const Tolerances& tol) {
  if (kraus.empty()) throw DimensionError("a channel needs at least one Kraus operator");
  const Index din = kraus.front().cols();
  const Index dout = kraus.front().rows();
  return validate_cptp(std::move(kraus), din, dout, tol);
}

KrausChannel KrausChannel::identity(Index d) {
  return validate_cptp({ComplexMatrix::Identity(d, d)}, d, d);
}

KrausChannel KrausChannel::conjugation(const ComplexMatrix& u, const Tolerances& tol) {
  return validate_cptp({u}, u.cols(), u.rows(), tol);
}

ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.dim_in() || rho.cols() != ch.dim_in()) {
    throw DimensionError("channel input is " + std::to_string(ch.dim_in()) +
                         "-dimensional, got a " + shape_str(rho) + " operator");
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& x : ch.kraus()) out.noalias() += x * rho * x.adjoint();
  return out;
}

ChoiMatrix choi(const KrausChannel& ch) {
  const Index din = ch.dim_in();
  const Index dout = ch.dim_out();
  ComplexMatrix c = ComplexMatrix::Zero(din * dout, din * dout);
  ComplexVector v(din * dout);
  for (const auto& x : ch.kraus()) {
    for (Index i = 0; i < din; ++i)
      for (Index o = 0; o < dout; ++o) v(i * dout + o) = x(o, i);
    c.noalias() += v * v.adjoint();
  }
  return {din, dout, std::move(c)};
}

KrausChannel kraus_from_choi(const ChoiMatrix& c, const Tolerances& tol) {
  const Index din = c.dim_in;
  const Index dout = c.dim_out;
  if (din < 1 || dout < 1 || c.matrix.rows() != din * dout ||
      c.matrix.cols() != din * dout) {
    throw InvalidChoiError("Choi matrix has the wrong size for " +
                           std::to_string(din) + " -> " + std::to_string(dout));
  }
  EigenDecomposition spec;
  try {
    spec = eigh(c.matrix, tol);
  } catch (const ShapeError& e) {
    throw InvalidChoiError(std::string("Choi matrix: ") + e.what());
  }
  if (spec.values(0) < -tol.eq_tol) {
    throw InvalidChoiError("Choi matrix is not positive semidefinite (eigenvalue " +
                           std::to_string(spec.values(0)) + ")");
  }
  const ComplexMatrix reduced = partial_trace(c.matrix, {din, dout}, Subsystem::A);
  const double tp = max_abs_diff(reduced, ComplexMatrix::Identity(din, din));
  if (tp > tol.eq_tol) {
    throw InvalidChoiError("partial trace of the Choi matrix deviates from identity by " +
                           std::to_string(tp));
  }
  const double mu_max = spec.values(spec.values.size() - 1);
  std::vector<ComplexMatrix> kraus;
  for (Index k = spec.values.size() - 1; k >= 0; --k) {
    const double mu = spec.values(k);
    if (!(mu > tol.rank_tol * mu_max)) break;
    ComplexMatrix x(dout, din);
    for (Index i = 0; i < din; ++i)
      for (Index o = 0; o < dout; ++o) x(o, i) = std::sqrt(mu) * spec.vectors(i * dout + o, k);
    fix_phase(x);
    kraus.push_back(std::move(x));
  }
  return validate_cptp(std::move(kraus), din, dout, tol);
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& x : a.kraus())
    for (const auto& y : b.kraus()) kraus.push_back(kron(x, y));
  return validate_cptp(std::move(kraus), a.dim_in() * b.dim_in(),
                       a.dim_out() * b.dim_out());
}

KrausChannel compose(const KrausChannel& after, const KrausChannel& before) {
  if (after.dim_in() != before.dim_out()) {
    throw DimensionError("cannot compose: outer channel takes dimension " +
                         std::to_string(after.dim_in()) + ", inner produces " +
                         std::to_string(before.dim_out()));
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(after.kraus().size() * before.kraus().size());
  for (const auto& y : after.kraus())
    for (const auto& x : before.kraus()) kraus.push_back(y * x);
  return validate_cptp(std::move(kraus), before.dim_in(), after.dim_out());
}

bool channels_equal(const KrausChannel& a, const KrausChannel& b,
                    const Tolerances& tol) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw DimensionError("channels_equal: dimension mismatch");
  }
  return max_abs_diff(choi(a).matrix, choi(b).matrix) <= tol.eq_tol;
}

std::string_view to_string(ChannelTag tag) {
  switch (tag) {
    case ChannelTag::Unitary:
      return "Unitary";
    case ChannelTag::Isometric:
      return "Isometric";
    case ChannelTag::ConstantPure:
      return "ConstantPure";
    case ChannelTag::Other:
      return "Other";
  }
  return "Other";
}

ChannelClass classify(const KrausChannel& ch, const Tolerances& tol) {
  const KrausChannel minimal = kraus_from_choi(choi(ch), tol);
  const auto& ops = minimal.kraus();
  ChannelClass out;
  out.kraus_rank = static_cast<Index>(ops.size());

  if (ops.size() == 1) {
    const ComplexMatrix& x = ops.front();
    if (is_isometry(x, tol)) {
      out.tag = x.rows() == x.cols() ? ChannelTag::Unitary : ChannelTag::Isometric;
      out.isometry = x;
    }
    return out;
  }

  for (const auto& x : ops) {
    if (numerical_rank(x, tol) != 1) return out;
  }
  const Index din = minimal.dim_in();
  const Index dout = minimal.dim_out();
  ComplexMatrix stacked(dout, din * static_cast<Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) {
    stacked.middleCols(static_cast<Index>(k) * din, din) = ops[k];
  }
  ComplexVector omega = svd(stacked).u.col(0);
  fix_phase(omega);
  const ComplexMatrix target = outer(omega);
  const ComplexMatrix zero = ComplexMatrix::Zero(dout, dout);
  for (Index i = 0; i < din; ++i) {
    for (Index j = 0; j < din; ++j) {
      const ComplexMatrix image = qchan::apply(ch, matrix_unit(din, i, j));
      if (max_abs_diff(image, i == j ? target : zero) > tol.eq_tol) return out;
    }
  }
  out.tag = ChannelTag::ConstantPure;
  out.omega = std::move(omega);
  return out;
}

PurityProbe is_pure_preserving_behavioral(const KrausChannel& ch, Index samples,
                                          Seed seed, const Tolerances& tol) {
  if (samples < 1) throw ContractError("purity probe needs at least one sample");
  PurityProbe out;
  for (Index i = 0; i < samples; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const ComplexVector v = random_unit_vector(ch.dim_in(), rng);
    const double p = purity(qchan::apply(ch, outer(v)));
    out.samples_used = i + 1;
    if (p < 1.0 - 10.0 * tol.eq_tol) {
      out.pure_preserving = false;
      out.counterexample = v;
      out.counterexample_purity = p;
      break;
    }
  }
  return out;
}

}  // namespace qchan
