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

#include "qchan/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qchan/errors.hpp"

namespace qchan {

namespace {

std::string dims_str(BipartiteDims d) {
  return std::to_string(d.m) + "x" + std::to_string(d.n);
}

ComplexMatrix reshape_rows(const ComplexVector& v, Index rows, Index cols) {
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = v(i * cols + j);
  return out;
}

ComplexMatrix two_qubit_spin_flip() {
  ComplexMatrix y(2, 2);
  y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return kron(y, y);
}

}  // namespace

PureState::PureState(BipartiteDims dims, ComplexVector amplitudes,
                     const Tolerances& tol)
    : dims_(dims), amplitudes_(std::move(amplitudes)) {
  dims_.validate();
  if (amplitudes_.size() != dims_.total()) {
    throw DimensionError("pure state on " + dims_str(dims_) + " needs " +
                         std::to_string(dims_.total()) + " amplitudes, got " +
                         std::to_string(amplitudes_.size()));
  }
  require_finite(amplitudes_);
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol.eq_tol) {
    throw StateError("pure state is not normalized (norm " +
                     std::to_string(norm) + ")");
  }
}

PureState PureState::normalized(BipartiteDims dims, ComplexVector amplitudes) {
  require_finite(amplitudes);
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw StateError("cannot normalize the zero vector");
  amplitudes /= norm;
  return PureState(dims, std::move(amplitudes));
}

PureState PureState::product(const ComplexVector& a, const ComplexVector& b) {
  return normalized({a.size(), b.size()}, kron(a, b));
}

PureState PureState::from_coefficients(const ComplexMatrix& psi,
                                       const Tolerances& tol) {
  ComplexVector amps(psi.size());
  for (Index i = 0; i < psi.rows(); ++i)
    for (Index j = 0; j < psi.cols(); ++j) amps(i * psi.cols() + j) = psi(i, j);
  return PureState({psi.rows(), psi.cols()}, std::move(amps), tol);
}

ComplexMatrix PureState::coefficient_matrix() const {
  return reshape_rows(amplitudes_, dims_.m, dims_.n);
}

DensityMatrix::DensityMatrix(BipartiteDims dims, ComplexMatrix matrix,
                             const Tolerances& tol)
    : dims_(dims) {
  dims_.validate();
  if (matrix.rows() != dims_.total() || matrix.cols() != dims_.total()) {
    throw DimensionError("density matrix on " + dims_str(dims_) + " must be " +
                         std::to_string(dims_.total()) + "x" +
                         std::to_string(dims_.total()));
  }
  require_finite(matrix);
  const ComplexMatrix adj = matrix.adjoint();
  if (max_abs_diff(matrix, adj) > tol.eq_tol) {
    throw StateError("density matrix is not Hermitian");
  }
  matrix_ = (matrix + adj) / 2.0;
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > tol.eq_tol) {
    throw StateError("density matrix trace is " + std::to_string(trace));
  }
  const double lowest = eigh(matrix_, tol).values(0);
  if (lowest < -tol.eq_tol) {
    throw StateError("density matrix has negative eigenvalue " +
                     std::to_string(lowest));
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.dims(), psi.density());
}

ComplexVector SchmidtData::reconstruct() const {
  ComplexVector out = ComplexVector::Zero(a_basis.rows() * b_basis.rows());
  for (Index k = 0; k < coefficients.size(); ++k) {
    out += coefficients(k) * kron(a_basis.col(k), b_basis.col(k));
  }
  return out;
}

SchmidtData schmidt_decompose(const PureState& psi, const Tolerances& tol) {
  auto dec = svd(psi.coefficient_matrix());
  SchmidtData out;
  out.rank = count_above_relative(dec.singular_values, tol.rank_tol);
  out.coefficients = std::move(dec.singular_values);
  out.a_basis = std::move(dec.u);
  // Psi = U S V^dag  =>  |psi> = sum_k s_k |u_k> (x) conj(|v_k>)
  out.b_basis = dec.v.conjugate();
  return out;
}

Index schmidt_rank(const PureState& psi, const Tolerances& tol) {
  return numerical_rank(psi.coefficient_matrix(), tol);
}

double mes_deviation(const PureState& psi) {
  const BipartiteDims d = psi.dims();
  const Subsystem smaller = d.m <= d.n ? Subsystem::A : Subsystem::B;
  const ComplexMatrix reduced = partial_trace(psi.density(), d, smaller);
  const Index s = d.min();
  return max_abs_diff(reduced, ComplexMatrix::Identity(s, s) / double(s));
}

bool is_mes_pure(const PureState& psi, const Tolerances& tol) {
  return mes_deviation(psi) <= tol.eq_tol;
}

double mes_deviation(const DensityMatrix& rho, const Tolerances& tol) {
  const BipartiteDims d = rho.dims();
  const auto spec = eigh(rho.matrix(), tol);
  const double p_max = spec.values.maxCoeff();
  std::vector<ComplexMatrix> blocks;
  for (Index k = spec.values.size() - 1; k >= 0; --k) {
    if (spec.values(k) > tol.rank_tol * p_max) {
      blocks.push_back(reshape_rows(spec.vectors.col(k), d.m, d.n));
    }
  }
  const bool a_smaller = d.m <= d.n;
  const Index s = d.min();
  const ComplexMatrix target = ComplexMatrix::Identity(s, s) / double(s);
  const ComplexMatrix zero = ComplexMatrix::Zero(s, s);
  double worst = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i; j < blocks.size(); ++j) {
      const ComplexMatrix gram = a_smaller ? ComplexMatrix(blocks[i] * blocks[j].adjoint())
                                           : ComplexMatrix(blocks[j].adjoint() * blocks[i]);
      worst = std::max(worst, max_abs_diff(gram, i == j ? target : zero));
    }
  }
  return worst;
}

bool is_mes_mixed(const DensityMatrix& rho, const Tolerances& tol) {
  return mes_deviation(rho, tol) <= tol.eq_tol;
}

double entanglement_entropy(const PureState& psi) {
  const RealVector s = svd(psi.coefficient_matrix()).singular_values;
  double h = 0.0;
  for (Index k = 0; k < s.size(); ++k) {
    const double w = s(k) * s(k);
    if (w > 0.0) h -= w * std::log2(w);
  }
  return std::max(h, 0.0);
}

double concurrence_2x2(const DensityMatrix& rho) {
  if (rho.dims() != BipartiteDims{2, 2}) {
    throw DimensionError("concurrence is defined for 2x2 systems only, got " +
                         dims_str(rho.dims()));
  }
  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix yy = two_qubit_spin_flip();
  const ComplexMatrix flipped = yy * r.conjugate() * yy;

  // sqrt(rho) rho~ sqrt(rho) is Hermitian and shares its spectrum with
  // rho rho~, whose square roots are the Wootters lambdas.
  const auto spec = eigh(r);
  const RealVector root = spec.values.cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix sqrt_rho =
      spec.vectors * root.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
  ComplexMatrix m = sqrt_rho * flipped * sqrt_rho;
  m = (m + m.adjoint()).eval() / 2.0;
  RealVector lambdas = eigh(m).values.cwiseMax(0.0).cwiseSqrt();
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  const double c = lambdas(0) - lambdas(1) - lambdas(2) - lambdas(3);
  return std::clamp(c, 0.0, 1.0);
}

ComplexMatrix pinch(const DensityMatrix& rho, const ComplexVector& basis_vector) {
  const BipartiteDims d = rho.dims();
  if (basis_vector.size() != d.m) {
    throw DimensionError("pinch: basis vector must have length " +
                         std::to_string(d.m));
  }
  if (std::abs(basis_vector.norm() - 1.0) > 1e-9) {
    throw StateError("pinch: basis vector is not normalized");
  }
  const ComplexMatrix proj =
      kron(outer(basis_vector), ComplexMatrix::Identity(d.n, d.n));
  return proj * rho.matrix() * proj;
}

std::optional<PureState> as_pure(const ComplexMatrix& rho, BipartiteDims dims,
                                 const Tolerances& tol) {
  if (purity(rho) < 1.0 - 10.0 * tol.eq_tol) return std::nullopt;
  const auto spec = eigh(rho, tol);
  return PureState::normalized(dims, spec.vectors.col(spec.values.size() - 1));
}

}  // namespace qchan
