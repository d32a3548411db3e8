// Dense complex-matrix primitives every other header builds on: hermitian
// eigendecomposition, joint-kernel and range projections, and the trace and
// operator norms. All functions are pure; matrices are immutable values.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "blocksym/errors.hpp"

namespace blocksym {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Relative singular-value cutoff shared by every rank decision (kernel,
// range, carrier). One global cutoff keeps decompositions reproducible.
inline constexpr double kRankCutoff = 1e-10;

// Max entry deviation from self-adjointness accepted by hermitian_eig.
inline constexpr double kHermTol = 1e-10;

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_finite(const ComplexMatrix& m) { return m.allFinite(); }

// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

// Max entry deviation of m from its own adjoint.
inline double herm_deviation(const ComplexMatrix& m) {
  return max_abs(m - ComplexMatrix(m.adjoint()));
}

struct HermitianEig {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns, column k pairs with eigenvalue k
};

// Eigendecomposition of a self-adjoint matrix. The input must be square and
// self-adjoint within kHermTol; the solve runs on the symmetrized matrix so
// results are deterministic for identical inputs.
inline HermitianEig hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("hermitian_eig: input must be square");
  if (herm_deviation(m) > kHermTol)
    throw NotHermitian("hermitian_eig: input deviates from self-adjointness beyond 1e-10");
  ComplexMatrix sym = 0.5 * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error("hermitian_eig: eigensolver failed to converge");
  return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

// Orthogonal projection onto the joint kernel of all input matrices,
// computed from one stacked singular value decomposition. The empty
// intersection convention returns the identity.
inline ComplexMatrix kernel_projection(const std::vector<ComplexMatrix>& ms, int n) {
  for (const auto& m : ms)
    if (m.rows() != n || m.cols() != n)
      throw DimensionMismatch("kernel_projection: every input must be n x n");
  if (ms.empty()) return ComplexMatrix::Identity(n, n);
  ComplexMatrix stacked(n * static_cast<int>(ms.size()), n);
  for (int k = 0; k < static_cast<int>(ms.size()); ++k) stacked.middleRows(k * n, n) = ms[k];
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > kRankCutoff * smax) ++rank;
  ComplexMatrix vnull = svd.matrixV().rightCols(n - rank);
  return vnull * vnull.adjoint();
}

// Orthogonal projection onto the column space, with the shared relative
// rank cutoff.
inline ComplexMatrix range_projection(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("range_projection: input must be square");
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU);
  const RealVector& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > kRankCutoff * smax) ++rank;
  if (rank == 0) return ComplexMatrix::Zero(m.rows(), m.cols());
  ComplexMatrix ur = svd.matrixU().leftCols(rank);
  return ur * ur.adjoint();
}

// Sum of singular values.
inline double trace_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("trace_norm: input must be square");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

// Largest singular value.
inline double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace blocksym
