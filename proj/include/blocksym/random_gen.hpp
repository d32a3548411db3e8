// Seeded random generators for matrices, unitaries, and algebra elements.
// Everything is driven by an explicit std::mt19937_64 so runs reproduce.
#pragma once

#include <cstdint>
#include <random>

#include "blocksym/algebra.hpp"
#include "blocksym/matrix.hpp"
#include "blocksym/states.hpp"

namespace blocksym {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240613;

// Matrix with independent standard complex Gaussian entries.
inline ComplexMatrix ginibre(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  return g;
}

// Haar-distributed n x n unitary: QR of a Ginibre matrix with the R-diagonal
// phases absorbed into Q, which removes the sign ambiguity of plain QR.
inline ComplexMatrix haar_unitary(Rng& rng, int n) {
  ComplexMatrix g = ginibre(rng, n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    Complex d = r(k, k);
    double m = std::abs(d);
    q.col(k) *= (m > 0.0) ? d / m : Complex(1.0, 0.0);
  }
  return q;
}

inline ComplexMatrix random_hermitian(Rng& rng, int n) {
  ComplexMatrix g = ginibre(rng, n, n);
  return 0.5 * (g + g.adjoint().eval());
}

inline ComplexVector random_unit_vector(Rng& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector psi(n);
  for (int k = 0; k < n; ++k) psi[k] = Complex(normal(rng), normal(rng));
  return psi / psi.norm();
}

// Random self-adjoint element with Gaussian hermitian blocks.
inline AlgebraElement random_self_adjoint(Rng& rng, const BlockAlgebra& A) {
  AlgebraElement a = zero_element(A);
  for (auto& block : a.blocks) block = random_hermitian(rng, static_cast<int>(block.rows()));
  return a;
}

inline PureState random_pure_state_in_block(Rng& rng, const BlockAlgebra& A, int block) {
  return PureState{A, block, random_unit_vector(rng, A.dims[block])};
}

inline PureState random_pure_state(Rng& rng, const BlockAlgebra& A) {
  std::uniform_int_distribution<int> pick(0, A.block_count() - 1);
  return random_pure_state_in_block(rng, A, pick(rng));
}

// Random full-rank density: blockwise Wishart matrices with random weights
// summing to one across blocks.
inline State random_density_state(Rng& rng, const BlockAlgebra& A) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  State s{A, {}};
  std::vector<double> weights;
  double total = 0.0;
  for (int b = 0; b < A.block_count(); ++b) {
    weights.push_back(-std::log(1.0 - uniform(rng)));
    total += weights.back();
  }
  for (int b = 0; b < A.block_count(); ++b) {
    const int n = A.dims[b];
    ComplexMatrix g = ginibre(rng, n, n);
    ComplexMatrix w = g * g.adjoint();
    w = (0.5 * (w + w.adjoint().eval())).eval();
    s.rho.push_back(w * (weights[b] / total / w.trace().real()));
  }
  return s;
}

// Random element with 0 <= a <= 1: squash the spectrum of a random hermitian
// through the logistic map, keeping eigenvalues strictly inside (0, 1).
inline AlgebraElement random_positive_contraction(Rng& rng, const BlockAlgebra& A) {
  AlgebraElement a = zero_element(A);
  for (auto& block : a.blocks) {
    const int n = static_cast<int>(block.rows());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(random_hermitian(rng, n));
    RealVector lam = solver.eigenvalues();
    for (int k = 0; k < n; ++k) lam[k] = 1.0 / (1.0 + std::exp(-lam[k]));
    block = solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().adjoint();
    block = (0.5 * (block + block.adjoint().eval())).eval();
  }
  return a;
}

}  // namespace blocksym
