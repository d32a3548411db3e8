// Finite direct sums of complex matrix blocks: elements, the Jordan product,
// and the orthonormal hermitian coordinate basis used throughout the library.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "blocksym/errors.hpp"
#include "blocksym/matrix.hpp"

namespace blocksym {

// A finite-dimensional algebra presented as a direct sum of full matrix
// blocks, identified by the list of block sizes.
struct BlockAlgebra {
  std::vector<int> dims;

  int block_count() const { return static_cast<int>(dims.size()); }

  // Total dimension of the underlying space (the sum of block sizes).
  int total_dim() const {
    int n = 0;
    for (int d : dims) n += d;
    return n;
  }

  // Real dimension of the self-adjoint part (the sum of squared block sizes).
  int sa_dim() const {
    int d = 0;
    for (int n : dims) d += n * n;
    return d;
  }

  bool operator==(const BlockAlgebra& other) const { return dims == other.dims; }
  bool operator!=(const BlockAlgebra& other) const { return dims != other.dims; }
};

// One element of a block algebra: a matrix per block, sizes matching
// `algebra.dims`.
struct AlgebraElement {
  BlockAlgebra algebra;
  std::vector<ComplexMatrix> blocks;
};

inline void require_same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.algebra != b.algebra) throw AlgebraMismatch("elements live in different block algebras");
}

inline AlgebraElement zero_element(const BlockAlgebra& A) {
  AlgebraElement result{A, {}};
  result.blocks.reserve(A.dims.size());
  for (int n : A.dims) result.blocks.push_back(ComplexMatrix::Zero(n, n));
  return result;
}

inline AlgebraElement identity_element(const BlockAlgebra& A) {
  AlgebraElement result{A, {}};
  result.blocks.reserve(A.dims.size());
  for (int n : A.dims) result.blocks.push_back(ComplexMatrix::Identity(n, n));
  return result;
}

inline AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a, b);
  AlgebraElement result = a;
  for (size_t i = 0; i < result.blocks.size(); ++i) result.blocks[i] += b.blocks[i];
  return result;
}

inline AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a, b);
  AlgebraElement result = a;
  for (size_t i = 0; i < result.blocks.size(); ++i) result.blocks[i] -= b.blocks[i];
  return result;
}

inline AlgebraElement scale(Complex s, const AlgebraElement& a) {
  AlgebraElement result = a;
  for (auto& block : result.blocks) block *= s;
  return result;
}

// Blockwise associative product.
inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a, b);
  AlgebraElement result = a;
  for (size_t i = 0; i < result.blocks.size(); ++i)
    result.blocks[i] = a.blocks[i] * b.blocks[i];
  return result;
}

inline AlgebraElement adjoint_el(const AlgebraElement& a) {
  AlgebraElement result = a;
  for (auto& block : result.blocks) block = block.adjoint().eval();
  return result;
}

// Symmetrized product a o b = (ab + ba) / 2.
inline AlgebraElement jordan_product(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a, b);
  AlgebraElement result = a;
  for (size_t i = 0; i < result.blocks.size(); ++i)
    result.blocks[i] = 0.5 * (a.blocks[i] * b.blocks[i] + b.blocks[i] * a.blocks[i]);
  return result;
}

inline Complex trace_of(const AlgebraElement& a) {
  Complex t = 0.0;
  for (const auto& block : a.blocks) t += block.trace();
  return t;
}

inline double frobenius_norm(const AlgebraElement& a) {
  double sq = 0.0;
  for (const auto& block : a.blocks) sq += block.squaredNorm();
  return std::sqrt(sq);
}

inline double max_entry_norm(const AlgebraElement& a) {
  double m = 0.0;
  for (const auto& block : a.blocks) m = std::max(m, max_abs(block));
  return m;
}

inline bool is_self_adjoint(const AlgebraElement& a, double tol = kHermTol) {
  for (const auto& block : a.blocks)
    if (herm_deviation(block) > tol) return false;
  return true;
}

// Positive means self-adjoint with all blockwise eigenvalues >= -1e-10.
inline bool is_positive(const AlgebraElement& a) {
  if (!is_self_adjoint(a)) return false;
  for (const auto& block : a.blocks) {
    if (block.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        0.5 * (block + block.adjoint().eval()), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) return false;
  }
  return true;
}

// Projection means a^2 = a = a* within 1e-9 in Frobenius norm.
inline bool is_projection(const AlgebraElement& a) {
  return frobenius_norm(sub(multiply(a, a), a)) < 1e-9 &&
         frobenius_norm(sub(adjoint_el(a), a)) < 1e-9;
}

// Orthonormal basis of the self-adjoint n x n matrices, in the frozen order:
// diagonal units E_kk (k ascending), then (E_kl + E_lk)/sqrt2 for k < l in
// lexicographic pair order, then i(E_kl - E_lk)/sqrt2 in the same pair order.
inline std::vector<ComplexMatrix> block_hermitian_basis(int n) {
  const double rt = 1.0 / std::sqrt(2.0);
  const Complex i_rt(0.0, rt);
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(k, k) = 1.0;
    basis.push_back(e);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(k, l) = rt;
      e(l, k) = rt;
      basis.push_back(e);
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(k, l) = i_rt;
      e(l, k) = -i_rt;
      basis.push_back(e);
    }
  }
  return basis;
}

// Orthonormal basis of the self-adjoint part of the whole algebra: the frozen
// per-block bases embedded block by block, blocks in order.
inline std::vector<AlgebraElement> hermitian_basis(const BlockAlgebra& A) {
  std::vector<AlgebraElement> basis;
  basis.reserve(A.sa_dim());
  for (int b = 0; b < A.block_count(); ++b) {
    for (const ComplexMatrix& m : block_hermitian_basis(A.dims[b])) {
      AlgebraElement e = zero_element(A);
      e.blocks[b] = m;
      basis.push_back(e);
    }
  }
  return basis;
}

// Coordinates of a self-adjoint element in the frozen hermitian basis,
// computed structurally: a_kk, then sqrt2 * Re a_kl, then sqrt2 * Im a_kl.
inline RealVector sa_coordinates(const AlgebraElement& a) {
  const double rt2 = std::sqrt(2.0);
  RealVector c(a.algebra.sa_dim());
  int idx = 0;
  for (const auto& block : a.blocks) {
    const int n = static_cast<int>(block.rows());
    for (int k = 0; k < n; ++k) c[idx++] = block(k, k).real();
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l) c[idx++] = rt2 * block(k, l).real();
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l) c[idx++] = rt2 * block(k, l).imag();
  }
  return c;
}

// Inverse of sa_coordinates: rebuild the self-adjoint element with entries
// a_kl = (c_sym + i c_anti)/sqrt2 above the diagonal.
inline AlgebraElement sa_from_coordinates(const BlockAlgebra& A, const RealVector& c) {
  if (c.size() != A.sa_dim())
    throw DimensionMismatch("coordinate vector has length " + std::to_string(c.size()) +
                            ", algebra needs " + std::to_string(A.sa_dim()));
  const double rt = 1.0 / std::sqrt(2.0);
  AlgebraElement a = zero_element(A);
  int idx = 0;
  for (auto& block : a.blocks) {
    const int n = static_cast<int>(block.rows());
    for (int k = 0; k < n; ++k) block(k, k) = c[idx++];
    const int pairs = n * (n - 1) / 2;
    int sym = idx;
    int anti = idx + pairs;
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        Complex v(rt * c[sym++], rt * c[anti++]);
        block(k, l) = v;
        block(l, k) = std::conj(v);
      }
    }
    idx += 2 * pairs;
  }
  return a;
}

// Place the blocks on the diagonal of one total_dim x total_dim matrix.
inline ComplexMatrix embed_full(const AlgebraElement& a) {
  const int n = a.algebra.total_dim();
  ComplexMatrix full = ComplexMatrix::Zero(n, n);
  int offset = 0;
  for (const auto& block : a.blocks) {
    const int m = static_cast<int>(block.rows());
    full.block(offset, offset, m, m) = block;
    offset += m;
  }
  return full;
}

// Extract the diagonal blocks of a full matrix; off-block entries are ignored.
inline AlgebraElement element_from_full(const BlockAlgebra& A, const ComplexMatrix& full) {
  if (full.rows() != A.total_dim() || full.cols() != A.total_dim())
    throw DimensionMismatch("full matrix does not match the algebra dimension");
  AlgebraElement a = zero_element(A);
  int offset = 0;
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    const int m = A.dims[i];
    a.blocks[i] = full.block(offset, offset, m, m);
    offset += m;
  }
  return a;
}

}  // namespace blocksym
