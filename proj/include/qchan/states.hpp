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
 * @file states.hpp
 * @brief Bipartite pure and mixed states, Schmidt data and entanglement tests.
 *
 * A pure state |psi> on C^m (x) C^n is stored as its amplitude vector; its
 * coefficient matrix Psi (m x n) satisfies Psi(i, j) = <i j|psi>, so that
 * rho_A = Psi Psi^dag and the singular values of Psi are the Schmidt
 * coefficients.
 */

#pragma once

#include <optional>

#include "qchan/linalg.hpp"

namespace qchan {

class PureState {
 public:
  /// Validates the amplitude length and unit norm (within tol.eq_tol).
  PureState(BipartiteDims dims, ComplexVector amplitudes,
            const Tolerances& tol = {});

  /// Normalizes first; throws StateError for a zero vector.
  static PureState normalized(BipartiteDims dims, ComplexVector amplitudes);

  /// |a> (x) |b>, both normalized.
  static PureState product(const ComplexVector& a, const ComplexVector& b);

  /// Reshapes an m x n coefficient matrix into a state.
  static PureState from_coefficients(const ComplexMatrix& psi,
                                     const Tolerances& tol = {});

  BipartiteDims dims() const { return dims_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  ComplexMatrix coefficient_matrix() const;
  ComplexMatrix density() const { return outer(amplitudes_); }

 private:
  BipartiteDims dims_;
  ComplexVector amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, positivity and unit trace within tol.eq_tol.
  /// Throws StateError (DimensionError for a shape mismatch).
  DensityMatrix(BipartiteDims dims, ComplexMatrix matrix,
                const Tolerances& tol = {});

  static DensityMatrix from_pure(const PureState& psi);

  BipartiteDims dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  BipartiteDims dims_;
  ComplexMatrix matrix_;
};

/// |psi> = sum_k lambda_k |a_k>|b_k>.
struct SchmidtData {
  RealVector coefficients;  // all min(m, n) values, descending
  ComplexMatrix a_basis;    // m x min(m, n), orthonormal columns
  ComplexMatrix b_basis;    // n x min(m, n), orthonormal columns
  Index rank = 0;

  /// The first `rank` coefficients.
  RealVector leading() const { return coefficients.head(rank); }
  /// sum_k lambda_k |a_k> (x) |b_k>.
  ComplexVector reconstruct() const;
};

SchmidtData schmidt_decompose(const PureState& psi, const Tolerances& tol = {});

Index schmidt_rank(const PureState& psi, const Tolerances& tol = {});

/// Max-norm distance between the reduced state of the smaller subsystem and
/// I / min(m, n).
double mes_deviation(const PureState& psi);

bool is_mes_pure(const PureState& psi, const Tolerances& tol = {});

/// Largest violation of the cross-Gram condition over the spectral
/// decomposition of rho (see is_mes_mixed).
double mes_deviation(const DensityMatrix& rho, const Tolerances& tol = {});

/**
 * Maximal entanglement test for a possibly mixed state.
 *
 * Decomposes rho = sum_k p_k |psi_k><psi_k| over eigenvalues
 * p_k > rank_tol * p_max and accepts iff the coefficient matrices satisfy
 *
 *   m <= n:  Psi_s Psi_t^dag = delta_st I_m / m
 *   m >= n:  Psi_t^dag Psi_s = delta_st I_n / n
 *
 * within eq_tol. This is the basis-free form of "every component is
 * maximally entangled on a common basis of the smaller side, with mutually
 * orthogonal supports on the larger side". The condition is covariant
 * under unitary mixing inside a degenerate eigenspace, so whichever
 * eigenbasis the solver returns gives the same verdict. A rank-1 rho
 * reduces to is_mes_pure, and rank >= 2 is rejected automatically when
 * max(m, n) < 2 min(m, n).
 */
bool is_mes_mixed(const DensityMatrix& rho, const Tolerances& tol = {});

/// Entropy of the Schmidt weights in bits; 0 log 0 = 0.
double entanglement_entropy(const PureState& psi);

/// Wootters concurrence of a two-qubit state. DimensionError unless 2x2.
double concurrence_2x2(const DensityMatrix& rho);

/// (|v><v| (x) I_B) rho (|v><v| (x) I_B); unnormalized.
ComplexMatrix pinch(const DensityMatrix& rho, const ComplexVector& basis_vector);

/// Dominant eigenvector of rho as a pure state when Tr(rho^2) >= 1 - 10 eq_tol.
std::optional<PureState> as_pure(const ComplexMatrix& rho, BipartiteDims dims,
                                 const Tolerances& tol = {});

}  // namespace qchan
