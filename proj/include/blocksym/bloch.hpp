// Bloch-ball geometry of 2x2 states: ball/density conversions, sphere
// transition probabilities, corner algebras spanned by two equivalent pure
// states, the O(3) rotation induced by a 2x2 Jordan map on state
// coordinates, and the orientation classification of a symmetry.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "blocksym/algebra.hpp"
#include "blocksym/errors.hpp"
#include "blocksym/matrix.hpp"
#include "blocksym/states.hpp"
#include "blocksym/symmetry.hpp"
#include "blocksym/thomsen.hpp"

namespace blocksym {

// A point of the closed unit ball; boundary points are the pure states.
struct BlochVector {
  double x = 0.0, y = 0.0, z = 0.0;
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

using Rotation3 = Eigen::Matrix3d;

enum class Orientation { PRESERVING, REVERSING, MIXED, TRIVIAL };

inline const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::PRESERVING: return "PRESERVING";
    case Orientation::REVERSING: return "REVERSING";
    case Orientation::MIXED: return "MIXED";
    default: return "TRIVIAL";
  }
}

// rho(x,y,z) = (1 + x sigma_x + y sigma_y + z sigma_z) / 2. The diagonal is
// completed as 1 - rho_00 so the trace is exactly one.
inline ComplexMatrix bloch_to_density(const BlochVector& v) {
  if (v.norm() > 1.0 + 1e-12)
    throw OutOfBall("bloch vector has norm " + std::to_string(v.norm()));
  ComplexMatrix rho(2, 2);
  const double top = 0.5 * (1.0 + v.z);
  rho(0, 0) = top;
  rho(1, 1) = 1.0 - top;
  rho(0, 1) = Complex(0.5 * v.x, -0.5 * v.y);
  rho(1, 0) = Complex(0.5 * v.x, 0.5 * v.y);
  return rho;
}

// Left inverse of bloch_to_density; rejects anything that is not a 2x2
// density matrix within tolerance.
inline BlochVector density_to_bloch(const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw NotDensity("input is not 2x2");
  if (herm_deviation(rho) > 1e-9) throw NotDensity("input is not self-adjoint");
  if (std::abs(rho.trace().real() - 1.0) > 1e-9 || std::abs(rho.trace().imag()) > 1e-9)
    throw NotDensity("input does not have unit trace");
  ComplexMatrix sym = 0.5 * (rho + rho.adjoint().eval());
  if (hermitian_eig(sym).eigenvalues(0) < -1e-9)
    throw NotDensity("input has a negative eigenvalue");
  return BlochVector{2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(),
                     (rho(0, 0) - rho(1, 1)).real()};
}

// Transition probability of two boundary points: (1 + <x,y>) / 2, which is
// the trace pairing of the corresponding rank-1 densities.
inline double sphere_tp(const BlochVector& x, const BlochVector& y) {
  if (std::abs(x.norm() - 1.0) > 1e-9 || std::abs(y.norm() - 1.0) > 1e-9)
    throw NotOnSphere("sphere transition probabilities need unit vectors");
  return 0.5 * (1.0 + (x.x * y.x + x.y * y.y + x.z * y.z));
}

// The rank-2 projection onto the span of two equivalent pure states with
// distinct rays, supported in their shared block.
inline AlgebraElement corner_projection(const PureState& w, const PureState& wp) {
  validate_pure_state(w);
  validate_pure_state(wp);
  if (!equivalent(w, wp))
    throw InequivalentStates("corner projections need equivalent pure states");
  if (tp_amplitude(w, wp) > 1.0 - 1e-9)
    throw EqualRays("corner projections need distinct rays");
  ComplexVector xi0 = w.psi / w.psi.norm();
  ComplexVector rest = wp.psi - xi0.dot(wp.psi) * xi0;
  ComplexVector xi1 = rest / rest.norm();
  AlgebraElement f = zero_element(w.algebra);
  f.blocks[w.block] = xi0 * xi0.adjoint() + xi1 * xi1.adjoint();
  return f;
}

// A deterministic orthonormal basis of the range of a rank-2 projection:
// project the standard basis vectors in order and keep the first two
// Gram-Schmidt survivors. Fixing the chart makes every derived orientation
// quantity reproducible.
struct CornerChart {
  int block = 0;
  ComplexVector xi0, xi1;
};

inline CornerChart corner_chart(const AlgebraElement& f, int block) {
  const BlockAlgebra& A = f.algebra;
  if (block < 0 || block >= A.block_count())
    throw IndexOutOfRange("corner chart block index out of range");
  if (!is_projection(f)) throw NotRank2("corner input is not a projection");
  for (int b = 0; b < A.block_count(); ++b)
    if (b != block && max_abs(f.blocks[b]) > 1e-9)
      throw NotRank2("corner projection is not supported in the given block");
  const ComplexMatrix& p = f.blocks[block];
  if (std::abs(p.trace().real() - 2.0) > 1e-6)
    throw NotRank2("corner projection does not have rank 2");

  CornerChart chart;
  chart.block = block;
  std::vector<ComplexVector> found;
  for (int k = 0; k < p.cols() && found.size() < 2; ++k) {
    ComplexVector w = p.col(k);
    for (const ComplexVector& xi : found) w -= xi.dot(w) * xi;
    if (w.norm() > 1e-6) found.push_back(w / w.norm());
  }
  if (found.size() < 2) throw NotRank2("projection range did not yield two directions");
  chart.xi0 = found[0];
  chart.xi1 = found[1];
  return chart;
}

namespace detail {

inline void require_chart_orthonormal(const CornerChart& c) {
  if (std::abs(c.xi0.norm() - 1.0) > 1e-8 || std::abs(c.xi1.norm() - 1.0) > 1e-8 ||
      std::abs(c.xi0.dot(c.xi1)) > 1e-8)
    throw NotRank2("chart vectors are not orthonormal");
}

}  // namespace detail

// Compress J between two chart-equipped corners into a Jordan map on M_2:
// m is lifted through the `from` chart, pushed through J, and read back
// through the `to` chart.
inline JordanMap corner_restriction(const ValidatedJordan& J, const CornerChart& from,
                                    const CornerChart& to) {
  const BlockAlgebra& A = J.algebra();
  detail::require_chart_orthonormal(from);
  detail::require_chart_orthonormal(to);
  if (from.xi0.size() != A.dims[from.block] || to.xi0.size() != A.dims[to.block])
    throw DimensionMismatch("chart vectors do not match their blocks");

  Eigen::Matrix<Complex, Eigen::Dynamic, 2> X(A.dims[from.block], 2);
  X.col(0) = from.xi0;
  X.col(1) = from.xi1;
  Eigen::Matrix<Complex, Eigen::Dynamic, 2> Y(A.dims[to.block], 2);
  Y.col(0) = to.xi0;
  Y.col(1) = to.xi1;

  BlockAlgebra two{{2}};
  RealMatrix M(4, 4);
  std::vector<AlgebraElement> basis = hermitian_basis(two);
  for (int k = 0; k < 4; ++k) {
    AlgebraElement lifted = zero_element(A);
    lifted.blocks[from.block] = X * basis[k].blocks[0] * X.adjoint();
    ComplexMatrix compressed = Y.adjoint() * apply_jordan(J, lifted).blocks[to.block] * Y;
    AlgebraElement el{two, {compressed}};
    M.col(k) = sa_coordinates(el);
  }
  return JordanMap{two, M};
}

// The real 3x3 matrix acting on ball coordinates as the state-side action of
// a 2x2 Jordan map, read off from the images of the three coordinate axes.
inline Rotation3 induced_rotation(const JordanMap& J2) {
  if (J2.algebra != BlockAlgebra{{2}})
    throw DimensionMismatch("induced rotations are defined for maps on one 2x2 block");
  if (!is_jordan_symmetry(J2).passed)
    throw NotJordan("input map is not a Jordan symmetry");

  BlockAlgebra two{{2}};
  RealMatrix dual = J2.matrix.transpose();
  Rotation3 r;
  for (int axis = 0; axis < 3; ++axis) {
    BlochVector v{axis == 0 ? 1.0 : 0.0, axis == 1 ? 1.0 : 0.0, axis == 2 ? 1.0 : 0.0};
    AlgebraElement rho{two, {bloch_to_density(v)}};
    AlgebraElement image = sa_from_coordinates(two, RealVector(dual * sa_coordinates(rho)));
    BlochVector w = density_to_bloch(image.blocks[0]);
    r(0, axis) = w.x;
    r(1, axis) = w.y;
    r(2, axis) = w.z;
  }
  if ((r.transpose() * r - Rotation3::Identity()).cwiseAbs().maxCoeff() > 1e-9 ||
      std::abs(std::abs(r.determinant()) - 1.0) > 1e-9)
    throw NotJordan("state action is not orthogonal on ball coordinates");
  return r;
}

struct CornerCheck {
  int block = 0;
  double det = 0.0;
  double residual = 0.0;
};

struct OrientationReport {
  Orientation verdict = Orientation::TRIVIAL;
  std::vector<BlockLabel> block_labels;
  std::vector<CornerCheck> corner_checks;
};

// Classify a symmetry by the blockwise type of its decomposition:
// PRESERVING if every block of dimension >= 2 restricts to a homomorphism,
// REVERSING if every such block is an anti-homomorphism, MIXED when both
// occur, TRIVIAL when the algebra is commutative. Each labeled block is
// cross-checked geometrically on one sampled corner: the induced rotation
// must have determinant +1 for a homomorphism and -1 otherwise.
inline OrientationReport orientation_of(const ValidatedJordan& J) {
  const BlockAlgebra& A = J.algebra();
  ThomsenDecomposition dec = thomsen_decompose(J);
  OrientationReport report;
  report.block_labels = dec.block_labels;

  bool any_hom = false, any_anti = false;
  KadisonView K{J};
  for (int i = 0; i < A.block_count(); ++i) {
    const int n = A.dims[i];
    if (n < 2) continue;
    BlockLabel label = dec.block_labels[i];
    if (label == BlockLabel::BOTH)
      throw DecompositionInconsistent("a block of dimension >= 2 cannot be two-sided");
    (label == BlockLabel::HOM ? any_hom : any_anti) = true;

    ComplexVector e0 = ComplexVector::Zero(n), e1 = ComplexVector::Zero(n);
    e0(0) = 1.0;
    e1(1) = 1.0;
    PureState w0 = detail::basis_state(A, i, e0);
    PureState w1 = detail::basis_state(A, i, e1);
    AlgebraElement f = corner_projection(w0, w1);
    PureState im0 = kadison_apply_pure(K, w0);
    PureState im1 = kadison_apply_pure(K, w1);
    AlgebraElement fprime = corner_projection(im0, im1);

    JordanMap J2 =
        corner_restriction(J, corner_chart(fprime, im0.block), corner_chart(f, i));
    Rotation3 r = induced_rotation(J2);
    CornerCheck check;
    check.block = i;
    check.det = r.determinant();
    check.residual = (r.transpose() * r - Rotation3::Identity()).cwiseAbs().maxCoeff();
    report.corner_checks.push_back(check);

    if ((label == BlockLabel::HOM) != (check.det > 0.0))
      throw DecompositionInconsistent("corner orientation contradicts the block label");
  }

  if (!any_hom && !any_anti)
    report.verdict = Orientation::TRIVIAL;
  else if (any_hom && any_anti)
    report.verdict = Orientation::MIXED;
  else
    report.verdict = any_hom ? Orientation::PRESERVING : Orientation::REVERSING;
  return report;
}

}  // namespace blocksym
