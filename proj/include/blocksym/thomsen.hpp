// Defect spaces of a Jordan symmetry and the central-projection
// decomposition splitting it into a homomorphism part, an anti-homomorphism
// part, and a commutative part on which it is both.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "blocksym/algebra.hpp"
#include "blocksym/errors.hpp"
#include "blocksym/matrix.hpp"
#include "blocksym/symmetry.hpp"

namespace blocksym {

enum class DefectKind { ONE, TWO };
enum class BlockLabel { HOM, ANTI, BOTH };

inline const char* to_string(BlockLabel label) {
  switch (label) {
    case BlockLabel::HOM: return "HOM";
    case BlockLabel::ANTI: return "ANTI";
    default: return "BOTH";
  }
}

// Orthonormal basis (Hilbert-Schmidt pairing) of the span of one kind of
// defect, as full N x N matrices.
struct DefectSpace {
  BlockAlgebra algebra;
  DefectKind kind;
  std::vector<ComplexMatrix> basis;
};

struct ThomsenDecomposition {
  BlockAlgebra algebra;
  AlgebraElement p1, p2, p3;  // homomorphism / anti-homomorphism / both
  AlgebraElement q1, q2, q3;  // kernel projections, kept for inspection
  std::vector<BlockLabel> block_labels;
  std::map<std::string, double> residuals;
};

struct CentralityReport {
  bool passed = false;
  double max_commutator = 0.0;
  double max_indicator_deviation = 0.0;
  double completeness_residual = 0.0;
  std::string witness;
};

namespace detail {

// Orthonormalize the span of the given vectorized matrices (rows) and return
// the basis reshaped to n x n, keeping singular directions above the 1e-10
// cutoff. The cutoff is relative but floored at the unit scale: basis-pair
// defects have O(1) entries, so a stack whose largest singular value is
// already negligible is the zero span, not a span to be normalized.
inline std::vector<ComplexMatrix> orthonormal_span(const ComplexMatrix& rows, int n) {
  std::vector<ComplexMatrix> basis;
  if (rows.rows() == 0) return basis;
  Eigen::JacobiSVD<ComplexMatrix> svd(rows, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return basis;
  const double cutoff = kRankCutoff * std::max(sv(0), 1.0);
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) > cutoff) {
      ComplexVector v = svd.matrixV().col(k).conjugate();
      basis.push_back(Eigen::Map<const ComplexMatrix>(v.data(), n, n));
    }
  }
  return basis;
}

}  // namespace detail

// Spans of the two defect kinds, generated from all ordered hermitian-basis
// pairs. The defect (a, b) -> J(ab) - J(a)J(b) is bilinear in (a, b) for the
// fixed linear map J, so basis pairs span the full defect set; an explicit
// pair order can be supplied to show the result does not depend on it.
inline std::pair<DefectSpace, DefectSpace> defect_spaces(
    const ValidatedJordan& J, const std::vector<std::pair<int, int>>& pair_order = {}) {
  const BlockAlgebra& A = J.algebra();
  const int d = A.sa_dim();
  const int n = A.total_dim();
  std::vector<AlgebraElement> basis = hermitian_basis(A);
  std::vector<AlgebraElement> images;
  images.reserve(d);
  for (int k = 0; k < d; ++k)
    images.push_back(sa_from_coordinates(A, RealVector(J.map().matrix.col(k))));

  std::vector<std::pair<int, int>> pairs = pair_order;
  if (pairs.empty()) {
    pairs.reserve(static_cast<size_t>(d) * d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) pairs.emplace_back(k, l);
  }

  ComplexMatrix rows_one(pairs.size(), n * n);
  ComplexMatrix rows_two(pairs.size(), n * n);
  for (size_t p = 0; p < pairs.size(); ++p) {
    const auto& [k, l] = pairs[p];
    AlgebraElement jab = apply_jordan(J.map(), multiply(basis[k], basis[l]));
    ComplexMatrix one = embed_full(sub(jab, multiply(images[k], images[l])));
    ComplexMatrix two = embed_full(sub(jab, multiply(images[l], images[k])));
    rows_one.row(p) = Eigen::Map<const ComplexVector>(one.data(), one.size()).transpose();
    rows_two.row(p) = Eigen::Map<const ComplexVector>(two.data(), two.size()).transpose();
  }

  DefectSpace s1{A, DefectKind::ONE, detail::orthonormal_span(rows_one, n)};
  DefectSpace s2{A, DefectKind::TWO, detail::orthonormal_span(rows_two, n)};
  return {std::move(s1), std::move(s2)};
}

namespace detail {

// Read a full-representation matrix back into the algebra, demanding that
// off-block entries are negligible.
inline AlgebraElement central_part(const BlockAlgebra& A, const ComplexMatrix& full) {
  AlgebraElement el = element_from_full(A, full);
  double off = max_abs(full - embed_full(el));
  if (off > 1e-8)
    throw DecompositionInconsistent("projection has significant off-block entries");
  return el;
}

inline double span_product_residual(const std::vector<ComplexMatrix>& basis,
                                    const ComplexMatrix& p) {
  double r = 0.0;
  for (const auto& m : basis) r = std::max(r, max_abs(ComplexMatrix(m * p)));
  return r;
}

}  // namespace detail

// Split a validated symmetry: q_i are the projections onto the joint kernels
// of the defect spans (kind ONE, kind TWO, and their union); the central
// projections are p1 = 1 - q2, p2 = 1 - q1, p3 = q3. All structural
// invariants are re-checked numerically before returning.
inline ThomsenDecomposition thomsen_decompose(
    const ValidatedJordan& J, const std::vector<std::pair<int, int>>& pair_order = {}) {
  const BlockAlgebra& A = J.algebra();
  const int n = A.total_dim();
  auto [s1, s2] = defect_spaces(J, pair_order);

  std::vector<ComplexMatrix> joint = s1.basis;
  joint.insert(joint.end(), s2.basis.begin(), s2.basis.end());

  ComplexMatrix q1 = kernel_projection(s1.basis, n);
  ComplexMatrix q2 = kernel_projection(s2.basis, n);
  ComplexMatrix q3 = kernel_projection(joint, n);
  ComplexMatrix id = ComplexMatrix::Identity(n, n);

  ThomsenDecomposition dec;
  dec.algebra = A;
  dec.q1 = detail::central_part(A, q1);
  dec.q2 = detail::central_part(A, q2);
  dec.q3 = detail::central_part(A, q3);
  dec.p1 = detail::central_part(A, id - q2);
  dec.p2 = detail::central_part(A, id - q1);
  dec.p3 = dec.q3;

  // Mutual orthogonality and completeness.
  double orth = std::max({frobenius_norm(multiply(dec.p1, dec.p2)),
                          frobenius_norm(multiply(dec.p1, dec.p3)),
                          frobenius_norm(multiply(dec.p2, dec.p3))});
  double complete =
      frobenius_norm(sub(add(add(dec.p1, dec.p2), dec.p3), identity_element(A)));
  dec.residuals["orthogonality"] = orth;
  dec.residuals["completeness"] = complete;
  if (orth >= 1e-9 || complete >= 1e-9)
    throw DecompositionInconsistent("projections are not an orthogonal resolution of 1");

  // Centrality: commute with the hermitian basis and look like 0/1 per block.
  double comm = 0.0;
  double indicator = 0.0;
  std::vector<const AlgebraElement*> ps{&dec.p1, &dec.p2, &dec.p3};
  for (const AlgebraElement* p : ps) {
    for (const AlgebraElement& b : hermitian_basis(A))
      comm = std::max(comm, frobenius_norm(sub(multiply(*p, b), multiply(b, *p))));
    for (int i = 0; i < A.block_count(); ++i) {
      ComplexMatrix blk = p->blocks[i];
      double to_zero = max_abs(blk);
      double to_one = max_abs(ComplexMatrix(blk - ComplexMatrix::Identity(A.dims[i], A.dims[i])));
      indicator = std::max(indicator, std::min(to_zero, to_one));
    }
  }
  dec.residuals["centrality"] = comm;
  dec.residuals["indicator"] = indicator;
  if (comm >= 1e-9 || indicator >= 1e-8)
    throw DecompositionInconsistent("projections are not central 0/1 block combinations");

  // Multiplicativity of the restrictions, checked on the span bases:
  // kind-ONE defects must vanish against p1 and p3, kind-TWO against p2, p3.
  ComplexMatrix p1f = embed_full(dec.p1);
  ComplexMatrix p2f = embed_full(dec.p2);
  ComplexMatrix p3f = embed_full(dec.p3);
  double hom_on_p1 = detail::span_product_residual(s1.basis, p1f);
  double anti_on_p2 = detail::span_product_residual(s2.basis, p2f);
  double both_on_p3 = std::max(detail::span_product_residual(s1.basis, p3f),
                               detail::span_product_residual(s2.basis, p3f));
  dec.residuals["hom_on_p1"] = hom_on_p1;
  dec.residuals["anti_on_p2"] = anti_on_p2;
  dec.residuals["both_on_p3"] = both_on_p3;
  if (hom_on_p1 >= 1e-8 || anti_on_p2 >= 1e-8 || both_on_p3 >= 1e-8)
    throw DecompositionInconsistent("restricted maps fail their multiplicativity law");

  // Strictness: on a nonzero p1 the map must not also be an
  // anti-homomorphism (and symmetrically for p2), otherwise those blocks
  // would belong to p3.
  if (frobenius_norm(dec.p1) > 1e-8 &&
      detail::span_product_residual(s2.basis, p1f) < 1e-6)
    throw DecompositionInconsistent("p1 part is two-sided; it belongs to p3");
  if (frobenius_norm(dec.p2) > 1e-8 &&
      detail::span_product_residual(s1.basis, p2f) < 1e-6)
    throw DecompositionInconsistent("p2 part is two-sided; it belongs to p3");

  for (int i = 0; i < A.block_count(); ++i) {
    ComplexMatrix id_i = ComplexMatrix::Identity(A.dims[i], A.dims[i]);
    if (max_abs(ComplexMatrix(dec.p1.blocks[i] - id_i)) < 1e-8)
      dec.block_labels.push_back(BlockLabel::HOM);
    else if (max_abs(ComplexMatrix(dec.p2.blocks[i] - id_i)) < 1e-8)
      dec.block_labels.push_back(BlockLabel::ANTI);
    else if (max_abs(ComplexMatrix(dec.p3.blocks[i] - id_i)) < 1e-8)
      dec.block_labels.push_back(BlockLabel::BOTH);
    else
      throw DecompositionInconsistent("block " + std::to_string(i) +
                                      " is not claimed by any projection");
  }
  return dec;
}

inline BlockLabel classify_block(const ThomsenDecomposition& dec, int i) {
  if (i < 0 || i >= static_cast<int>(dec.block_labels.size()))
    throw IndexOutOfRange("block index " + std::to_string(i) + " out of range");
  return dec.block_labels[i];
}

// Re-check centrality, the 0/1 block-indicator form, and completeness of an
// arbitrary (possibly hand-built) decomposition. Reports, never throws.
inline CentralityReport verify_centrality(const ThomsenDecomposition& dec,
                                          const BlockAlgebra& A) {
  CentralityReport report;
  std::vector<std::pair<const char*, const AlgebraElement*>> ps{
      {"p1", &dec.p1}, {"p2", &dec.p2}, {"p3", &dec.p3}};
  std::vector<AlgebraElement> basis = hermitian_basis(A);
  for (auto& [name, p] : ps) {
    for (size_t k = 0; k < basis.size(); ++k) {
      double c = frobenius_norm(sub(multiply(*p, basis[k]), multiply(basis[k], *p)));
      if (c > report.max_commutator) {
        report.max_commutator = c;
        if (c >= 1e-9)
          report.witness = std::string(name) + " fails to commute with basis element " +
                           std::to_string(k);
      }
    }
    for (int i = 0; i < A.block_count(); ++i) {
      ComplexMatrix blk = p->blocks[i];
      double dev = std::min(
          max_abs(blk),
          max_abs(ComplexMatrix(blk - ComplexMatrix::Identity(A.dims[i], A.dims[i]))));
      if (dev > report.max_indicator_deviation) {
        report.max_indicator_deviation = dev;
        if (dev >= 1e-8)
          report.witness = std::string(name) + " is not 0 or 1 on block " + std::to_string(i);
      }
    }
  }
  report.completeness_residual =
      frobenius_norm(sub(add(add(dec.p1, dec.p2), dec.p3), identity_element(A)));
  if (report.completeness_residual >= 1e-9 && report.witness.empty())
    report.witness = "p1 + p2 + p3 does not resolve the identity";
  report.passed = report.max_commutator < 1e-9 && report.max_indicator_deviation < 1e-8 &&
                  report.completeness_residual < 1e-9;
  return report;
}

}  // namespace blocksym
