// Constructive extraction of the implementing (anti-)unitary of a Jordan
// symmetry on a full matrix block, together with phase canonicalization,
// residual verification, and the phase-insensitive operator distance.
#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "blocksym/algebra.hpp"
#include "blocksym/errors.hpp"
#include "blocksym/matrix.hpp"
#include "blocksym/random_gen.hpp"
#include "blocksym/symmetry.hpp"

namespace blocksym {

enum class MapKind { HOM, ANTI };

// An operator implementing a block restriction by conjugation: the map acts
// as a -> u* a u, with an extra entrywise complex conjugation of a first
// when `antiunitary` is set. Extracted operators are unitary within 1e-9 and
// carry a canonical phase (first significant entry of the first column real
// positive), since conjugation only determines them up to a phase.
struct ImplementingOperator {
  int block = 0;
  ComplexMatrix u;
  bool antiunitary = false;
};

// One residual per hermitian basis element of the block; pass iff the
// largest is below 1e-8.
struct ImplementationReport {
  bool passed = false;
  double max_residual = 0.0;
  std::vector<double> residuals;
};

// Rotate u by a global phase so that the first entry of its first column
// with modulus above 1e-8 becomes real positive. Unitaries always have such
// an entry; anything else is returned unchanged.
inline ComplexMatrix canonical_phase(const ComplexMatrix& u) {
  for (int r = 0; r < u.rows(); ++r) {
    const Complex entry = u(r, 0);
    if (std::abs(entry) > 1e-8) return ComplexMatrix(u * (std::conj(entry) / std::abs(entry)));
  }
  return u;
}

namespace detail {

// The restriction of J to a self-mapped block: embed, apply, read back.
inline ComplexMatrix apply_restricted(const JordanMap& J, int block, const ComplexMatrix& a) {
  AlgebraElement e = zero_element(J.algebra);
  e.blocks[block] = a;
  return apply_jordan(J, e).blocks[block];
}

// Largest multiplicativity defect of the restriction, probed at a fixed set
// of seeded random complex inputs. A validated symmetry has residual at
// machine scale for its true kind and O(1) for the opposite one.
inline double kind_residual(const JordanMap& J, int block, MapKind kind) {
  const int n = J.algebra.dims[block];
  Rng rng(kDefaultSeed + 977 * static_cast<unsigned>(block));
  std::normal_distribution<double> dist(0.0, 1.0);
  double residual = 0.0;
  for (int t = 0; t < 6; ++t) {
    ComplexMatrix a(n, n), b(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        a(r, c) = Complex(dist(rng), dist(rng));
        b(r, c) = Complex(dist(rng), dist(rng));
      }
    ComplexMatrix jab = apply_restricted(J, block, a * b);
    ComplexMatrix ja = apply_restricted(J, block, a);
    ComplexMatrix jb = apply_restricted(J, block, b);
    ComplexMatrix model = (kind == MapKind::HOM) ? ComplexMatrix(ja * jb) : ComplexMatrix(jb * ja);
    residual = std::max(residual, max_abs(ComplexMatrix(jab - model)));
  }
  return residual;
}

// Core sweep for a restriction that is a *-isomorphism of the block: with
// reference vector chi, phi spans the range of the inverse image of the
// rank-1 projector onto chi, and the columns J(|e_k><phi|) chi assemble the
// inverse of the sought operator up to one global phase.
inline ComplexMatrix extract_from_isomorphism(const ValidatedJordan& J, int block,
                                              const ComplexVector& chi) {
  const int n = J.algebra().dims[block];
  AlgebraElement echi = zero_element(J.algebra());
  echi.blocks[block] = chi * chi.adjoint();
  ComplexMatrix ephi = apply_jordan_inverse(J, echi).blocks[block];

  HermitianEig eig = hermitian_eig(ephi);
  if (eig.eigenvalues(n - 1) < 0.5)
    throw SingularExtraction("inverse image of the reference projector has no range vector");
  ComplexVector phi = eig.eigenvectors.col(n - 1);

  ComplexMatrix frame(n, n);
  for (int k = 0; k < n; ++k) {
    ComplexMatrix sweep = ComplexMatrix::Zero(n, n);
    sweep.row(k) = phi.adjoint();
    frame.col(k) = apply_restricted(J.map(), block, sweep) * chi;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(frame);
  if (svd.singularValues()(n - 1) < 1e-6)
    throw SingularExtraction("reference sweep produced a singular frame");
  ComplexMatrix u = frame.inverse();
  if (max_abs(ComplexMatrix(u.adjoint() * u - ComplexMatrix::Identity(n, n))) > 1e-9)
    throw SingularExtraction("extracted operator fails the unitarity gate");
  return canonical_phase(u);
}

}  // namespace detail

// Residual table of op against the restriction of J to op.block, over the
// block's hermitian basis: compares J(a) with u* a u, conjugating a
// entrywise first when the flag is set. Works on arbitrary inputs and
// reports instead of throwing (except for malformed shapes).
inline ImplementationReport verify_implementation(const JordanMap& J,
                                                  const ImplementingOperator& op) {
  const BlockAlgebra& A = J.algebra;
  if (op.block < 0 || op.block >= A.block_count())
    throw IndexOutOfRange("operator block index out of range");
  const int n = A.dims[op.block];
  if (op.u.rows() != n || op.u.cols() != n)
    throw DimensionMismatch("operator size does not match its block");
  ImplementationReport report;
  for (const ComplexMatrix& h : block_hermitian_basis(n)) {
    ComplexMatrix image = detail::apply_restricted(J, op.block, h);
    ComplexMatrix input = op.antiunitary ? ComplexMatrix(h.conjugate()) : h;
    ComplexMatrix model = op.u.adjoint() * input * op.u;
    report.residuals.push_back(max_abs(ComplexMatrix(image - model)));
    report.max_residual = std::max(report.max_residual, report.residuals.back());
  }
  report.passed = report.max_residual < 1e-8;
  return report;
}

// Extract the operator implementing J on one block. The block must be mapped
// to itself by J, and `kind` must agree with the multiplicative type of the
// restriction (one-dimensional blocks are both, so they accept either). The
// ANTI case is reduced to the HOM one by composing with the transpose; the
// same operator then implements the original map together with entrywise
// conjugation. An explicit reference vector may replace the default first
// basis vector; the result is the same up to the canonical phase.
inline ImplementingOperator extract_unitary(
    const ValidatedJordan& J, int block, MapKind kind,
    const std::optional<ComplexVector>& reference = std::nullopt) {
  const BlockAlgebra& A = J.algebra();
  if (block < 0 || block >= A.block_count())
    throw IndexOutOfRange("extraction block index out of range");
  const int n = A.dims[block];

  ComplexVector chi;
  if (reference) {
    if (reference->size() != n)
      throw DimensionMismatch("reference vector size does not match the block");
    if (reference->norm() < 1e-9)
      throw SingularExtraction("reference vector is numerically zero");
    chi = *reference / reference->norm();
  } else {
    chi = ComplexVector::Zero(n);
    chi(0) = 1.0;
  }

  ComplexMatrix unit_image =
      detail::apply_restricted(J.map(), block, ComplexMatrix::Identity(n, n));
  if (max_abs(ComplexMatrix(unit_image - ComplexMatrix::Identity(n, n))) > 1e-6)
    throw SingularExtraction("the symmetry does not map this block to itself");

  if (detail::kind_residual(J.map(), block, kind) > 1e-7)
    throw KindMismatch("the restriction does not have the requested multiplicative type");

  ImplementingOperator op;
  op.block = block;
  op.antiunitary = (kind == MapKind::ANTI);
  if (kind == MapKind::ANTI) {
    ValidatedJordan reduced(compose_jordan(J.map(), transpose_jordan(A)));
    op.u = detail::extract_from_isomorphism(reduced, block, chi);
  } else {
    op.u = detail::extract_from_isomorphism(J, block, chi);
  }

  if (!verify_implementation(J.map(), op).passed)
    throw SingularExtraction("extracted operator fails the implementation check");
  return op;
}

// min over unit-modulus z of the Frobenius distance between u1 and z u2, in
// closed form: the optimal phase is the phase of tr(u2* u1). The norm is
// evaluated on the aligned difference rather than through
// sqrt(2n - 2|tr|), which cancels catastrophically near zero.
inline double phase_distance(const ImplementingOperator& op1, const ImplementingOperator& op2) {
  if (op1.block != op2.block || op1.antiunitary != op2.antiunitary)
    throw FlagMismatch("operators act on different blocks or with different conjugation flags");
  if (op1.u.rows() != op2.u.rows() || op1.u.cols() != op2.u.cols())
    throw DimensionMismatch("operators have different shapes");
  const Complex trace = (op2.u.adjoint() * op1.u).trace();
  const Complex z = (std::abs(trace) > 1e-15) ? trace / std::abs(trace) : Complex(1, 0);
  return ComplexMatrix(op1.u - z * op2.u).norm();
}

}  // namespace blocksym
