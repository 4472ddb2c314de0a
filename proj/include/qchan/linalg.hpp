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
 * @file linalg.hpp
 * @brief Dense complex linear algebra shared by states, channels and probes.
 *
 * Matrices are Eigen dense types. Composite indices of a bipartite space
 * follow one convention everywhere: index i*n + j encodes |i>_A |j>_B,
 * which is exactly the layout produced by kron().
 */

#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qchan {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds used by every verdict in the library.
struct Tolerances {
  /// Absolute elementwise tolerance for matrix equality (max norm).
  double eq_tol = 1e-9;
  /// Singular values below rank_tol * sigma_max count as zero.
  double rank_tol = 1e-8;

  /// Throws std::invalid_argument unless both values lie in (0, 1).
  void validate() const;
};

/// Subsystem dimensions of a bipartite system A+B.
struct BipartiteDims {
  Index m = 1;
  Index n = 1;

  Index total() const { return m * n; }
  Index min() const { return m < n ? m : n; }
  Index max() const { return m < n ? n : m; }
  /// Throws DimensionError unless m, n >= 1.
  void validate() const;

  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

enum class Subsystem { A, B };

/// Throws ShapeError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m);

/// Largest absolute entrywise difference. Throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||a - b||_max <= tol.eq_tol.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  const Tolerances& tol = {});

/// Kronecker product; entry (i*b.rows+k, j*b.cols+l) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced operator on the kept subsystem of an (m*n)x(m*n) matrix.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims,
                            Subsystem keep);

/// |v><v|
ComplexMatrix outer(const ComplexVector& v);

/// Tr(rho^2) for a Hermitian rho.
double purity(const ComplexMatrix& rho);

struct EigenDecomposition {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // column k pairs with values(k)
};

/// Spectral decomposition of a Hermitian matrix. Input is symmetrized as
/// (M + M^dag)/2; asymmetry above tol.eq_tol is a ShapeError.
EigenDecomposition eigh(const ComplexMatrix& m, const Tolerances& tol = {});

struct SingularValueDecomposition {
  ComplexMatrix u;            // rows x k, orthonormal columns
  RealVector singular_values; // k = min(rows, cols), descending
  ComplexMatrix v;            // cols x k, orthonormal columns
};

/// Thin SVD, m = u * diag(s) * v^dag.
SingularValueDecomposition svd(const ComplexMatrix& m);

/// Number of values strictly above rank_tol * max(values). Zero if all vanish.
Index count_above_relative(const RealVector& values, double rank_tol);

/// Count of singular values sigma_k > rank_tol * sigma_max.
Index numerical_rank(const ComplexMatrix& m, const Tolerances& tol = {});

/// ||X^dag X - I||_max <= eq_tol. Always false when rows < cols.
bool is_isometry(const ComplexMatrix& x, const Tolerances& tol = {});

/// Square isometry.
bool is_unitary(const ComplexMatrix& x, const Tolerances& tol = {});

}  // namespace qchan
