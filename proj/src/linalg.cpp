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

#include "qchan/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qchan/errors.hpp"

namespace qchan {

namespace {

// Dense storage bound; products beyond this are certainly a caller error.
constexpr Index kMaxEntries = Index{1} << 34;

Index checked_mul(Index a, Index b, const char* what) {
  if (a != 0 && b > std::numeric_limits<Index>::max() / a) {
    throw DimensionError(std::string(what) + ": dimension overflow");
  }
  return a * b;
}

}  // namespace

void Tolerances::validate() const {
  if (!(eq_tol > 0.0 && eq_tol < 1.0) || !(rank_tol > 0.0 && rank_tol < 1.0)) {
    throw std::invalid_argument("tolerances must lie strictly between 0 and 1");
  }
}

void BipartiteDims::validate() const {
  if (m < 1 || n < 1) {
    throw DimensionError("subsystem dimensions must be >= 1, got " +
                         std::to_string(m) + "x" + std::to_string(n));
  }
}

void require_finite(const ComplexMatrix& m) {
  if (!m.allFinite()) {
    throw ShapeError("matrix contains NaN or infinite entries");
  }
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("cannot compare " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " with " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  const Tolerances& tol) {
  return max_abs_diff(a, b) <= tol.eq_tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index rows = checked_mul(a.rows(), b.rows(), "kron");
  const Index cols = checked_mul(a.cols(), b.cols(), "kron");
  if (checked_mul(rows, cols, "kron") > kMaxEntries) {
    throw DimensionError("kron: result too large");
  }
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims,
                            Subsystem keep) {
  dims.validate();
  if (m.rows() != m.cols() || m.rows() != dims.total()) {
    throw DimensionError("partial_trace: expected " +
                         std::to_string(dims.total()) + "x" +
                         std::to_string(dims.total()) + " matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  const Index dm = dims.m;
  const Index dn = dims.n;
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dm, dm);
    for (Index i = 0; i < dm; ++i)
      for (Index j = 0; j < dm; ++j)
        out(i, j) = m.block(i * dn, j * dn, dn, dn).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dn, dn);
  for (Index k = 0; k < dm; ++k) out += m.block(k * dn, k * dn, dn, dn);
  return out;
}

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

double purity(const ComplexMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.squaredNorm();
}

EigenDecomposition eigh(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw ShapeError("eigh: matrix is not square");
  }
  require_finite(m);
  const ComplexMatrix adj = m.adjoint();
  if (m.size() > 0 && max_abs_diff(m, adj) > tol.eq_tol) {
    throw ShapeError("eigh: matrix is not Hermitian within tolerance");
  }
  const ComplexMatrix herm = (m + adj) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw ShapeError("eigh: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SingularValueDecomposition svd(const ComplexMatrix& m) {
  require_finite(m);
  Eigen::JacobiSVD<ComplexMatrix> solver(m,
                                         Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Index count_above_relative(const RealVector& values, double rank_tol) {
  if (values.size() == 0) return 0;
  const double top = values.maxCoeff();
  if (!(top > 0.0)) return 0;
  const double cut = rank_tol * top;
  return static_cast<Index>((values.array() > cut).count());
}

Index numerical_rank(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  return count_above_relative(svd(m).singular_values, tol.rank_tol);
}

bool is_isometry(const ComplexMatrix& x, const Tolerances& tol) {
  if (x.rows() < x.cols() || x.cols() == 0) return false;
  const ComplexMatrix gram = x.adjoint() * x;
  return max_abs_diff(gram, ComplexMatrix::Identity(x.cols(), x.cols())) <=
         tol.eq_tol;
}

bool is_unitary(const ComplexMatrix& x, const Tolerances& tol) {
  return x.rows() == x.cols() && is_isometry(x, tol);
}

}  // namespace qchan
