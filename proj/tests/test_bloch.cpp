// Tests for the Bloch-ball parametrization of 2x2 states, corner algebras
// spanned by two equivalent pure states, induced rotations, and orientation
// classification of a symmetry.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "blocksym/bloch.hpp"
#include "blocksym/errors.hpp"
#include "blocksym/random_gen.hpp"
#include "blocksym/symmetry.hpp"

using namespace blocksym;

namespace {

BlochVector random_ball_vector(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::Vector3d dir(gauss(rng), gauss(rng), gauss(rng));
  dir.normalize();
  dir *= std::cbrt(unif(rng));
  return BlochVector{dir(0), dir(1), dir(2)};
}

BlochVector random_sphere_vector(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector3d dir(gauss(rng), gauss(rng), gauss(rng));
  dir.normalize();
  return BlochVector{dir(0), dir(1), dir(2)};
}

JordanMap conjugation_jordan(const BlockAlgebra& A, const ComplexMatrix& u) {
  BlockMapSpec spec;
  spec.sigma = {0};
  spec.us = {u};
  spec.anti = {false};
  return jordan_from_blocks(A, spec);
}

}  // namespace

TEST_CASE("bloch vectors map to the textbook densities") {
  ComplexMatrix north = bloch_to_density(BlochVector{0, 0, 1});
  REQUIRE(max_abs(ComplexMatrix(north - (ComplexMatrix(2, 2) << 1, 0, 0, 0).finished())) <
          1e-15);

  ComplexMatrix center = bloch_to_density(BlochVector{0, 0, 0});
  REQUIRE(max_abs(ComplexMatrix(center - 0.5 * ComplexMatrix::Identity(2, 2))) < 1e-15);

  ComplexMatrix xplus = bloch_to_density(BlochVector{1, 0, 0});
  ComplexMatrix xplus_expected(2, 2);
  xplus_expected << 0.5, 0.5, 0.5, 0.5;
  REQUIRE(max_abs(ComplexMatrix(xplus - xplus_expected)) < 1e-15);

  ComplexMatrix yplus = bloch_to_density(BlochVector{0, 1, 0});
  ComplexMatrix yplus_expected(2, 2);
  yplus_expected << Complex(0.5, 0), Complex(0, -0.5), Complex(0, 0.5), Complex(0.5, 0);
  REQUIRE(max_abs(ComplexMatrix(yplus - yplus_expected)) < 1e-15);

  SECTION("trace is exactly one and the determinant tracks the radius") {
    Rng rng(81);
    for (int t = 0; t < 50; ++t) {
      BlochVector v = random_ball_vector(rng);
      ComplexMatrix rho = bloch_to_density(v);
      REQUIRE(rho.trace().real() == 1.0);
      REQUIRE(rho.trace().imag() == 0.0);
      double det = (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real();
      double expected = 0.25 * (1.0 - v.norm() * v.norm());
      REQUIRE(std::abs(det - expected) < 1e-12);
      // Positivity: trace and determinant of a 2x2 hermitian matrix.
      REQUIRE(det > -1e-12);
    }
  }
  SECTION("points outside the ball are rejected") {
    REQUIRE_THROWS_AS(bloch_to_density(BlochVector{1.1, 0, 0}), OutOfBall);
    REQUIRE_THROWS_AS(bloch_to_density(BlochVector{0.8, 0.8, 0.8}), OutOfBall);
  }
}

TEST_CASE("bloch coordinates round trip through densities") {
  REQUIRE(density_to_bloch((ComplexMatrix(2, 2) << 1, 0, 0, 0).finished()).z == 1.0);
  BlochVector c = density_to_bloch(0.5 * ComplexMatrix::Identity(2, 2));
  REQUIRE(c.norm() < 1e-15);

  Rng rng(82);
  for (int t = 0; t < 100; ++t) {
    BlochVector v = random_ball_vector(rng);
    BlochVector back = density_to_bloch(bloch_to_density(v));
    REQUIRE(std::abs(back.x - v.x) < 1e-10);
    REQUIRE(std::abs(back.y - v.y) < 1e-10);
    REQUIRE(std::abs(back.z - v.z) < 1e-10);
  }

  SECTION("non-densities are rejected") {
    REQUIRE_THROWS_AS(density_to_bloch(ComplexMatrix::Identity(2, 2)), NotDensity);
    ComplexMatrix skew(2, 2);
    skew << Complex(0.5, 0), Complex(0.3, 0), Complex(-0.3, 0), Complex(0.5, 0);
    REQUIRE_THROWS_AS(density_to_bloch(skew), NotDensity);
    ComplexMatrix indefinite(2, 2);
    indefinite << 1.5, 0, 0, -0.5;
    REQUIRE_THROWS_AS(density_to_bloch(indefinite), NotDensity);
    REQUIRE_THROWS_AS(density_to_bloch(ComplexMatrix::Identity(3, 3) / 3.0), NotDensity);
  }
}

TEST_CASE("sphere transition probabilities") {
  BlochVector north{0, 0, 1};
  BlochVector south{0, 0, -1};
  BlochVector east{1, 0, 0};
  REQUIRE(sphere_tp(north, south) == 0.0);
  REQUIRE(sphere_tp(north, north) == 1.0);
  REQUIRE(sphere_tp(north, east) == 0.5);

  SECTION("matches the trace pairing of the densities") {
    Rng rng(83);
    for (int t = 0; t < 100; ++t) {
      BlochVector x = random_sphere_vector(rng);
      BlochVector y = random_sphere_vector(rng);
      double trace_form = (bloch_to_density(x) * bloch_to_density(y)).trace().real();
      REQUIRE(std::abs(sphere_tp(x, y) - trace_form) < 1e-12);
      REQUIRE(std::abs(sphere_tp(x, y) - sphere_tp(y, x)) < 1e-15);
    }
  }
  SECTION("interior points are rejected") {
    REQUIRE_THROWS_AS(sphere_tp(BlochVector{0.5, 0, 0}, north), NotOnSphere);
    REQUIRE_THROWS_AS(sphere_tp(north, BlochVector{0, 0, 0}), NotOnSphere);
  }
}

TEST_CASE("the parametrization is affine") {
  Rng rng(84);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    BlochVector v = random_ball_vector(rng);
    BlochVector w = random_ball_vector(rng);
    double t = unif(rng);
    BlochVector mix{t * v.x + (1 - t) * w.x, t * v.y + (1 - t) * w.y, t * v.z + (1 - t) * w.z};
    ComplexMatrix lhs = bloch_to_density(mix);
    ComplexMatrix rhs = t * bloch_to_density(v) + (1 - t) * bloch_to_density(w);
    REQUIRE(max_abs(ComplexMatrix(lhs - rhs)) < 1e-12);
  }
}

TEST_CASE("corner projection onto the span of two equivalent pure states") {
  BlockAlgebra A{{3}};
  ComplexVector e0 = ComplexVector::Zero(3), e1 = ComplexVector::Zero(3);
  e0(0) = 1.0;
  e1(1) = 1.0;
  PureState w0{A, 0, e0};
  PureState w1{A, 0, e1};

  AlgebraElement f = corner_projection(w0, w1);
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 0) = 1.0;
  expected(1, 1) = 1.0;
  REQUIRE(max_abs(ComplexMatrix(f.blocks[0] - expected)) < 1e-12);
  REQUIRE(is_projection(f));

  SECTION("the span matters, not the chosen pair") {
    ComplexVector mix = (e0 + e1) / std::sqrt(2.0);
    AlgebraElement g = corner_projection(w0, PureState{A, 0, mix});
    REQUIRE(max_abs(ComplexMatrix(g.blocks[0] - expected)) < 1e-12);
  }
  SECTION("the projection fixes both vectors") {
    Rng rng(85);
    PureState a = random_pure_state_in_block(rng, A, 0);
    PureState b = random_pure_state_in_block(rng, A, 0);
    AlgebraElement g = corner_projection(a, b);
    REQUIRE((g.blocks[0] * a.psi - a.psi).norm() < 1e-10);
    REQUIRE((g.blocks[0] * b.psi - b.psi).norm() < 1e-10);
  }
  SECTION("inequivalent or equal inputs are rejected") {
    BlockAlgebra B{{2, 2}};
    ComplexVector u0 = ComplexVector::Zero(2);
    u0(0) = 1.0;
    REQUIRE_THROWS_AS(corner_projection(PureState{B, 0, u0}, PureState{B, 1, u0}),
                      InequivalentStates);
    PureState same_ray{A, 0, ComplexVector(Complex(0, 1) * e0)};
    REQUIRE_THROWS_AS(corner_projection(w0, same_ray), EqualRays);
  }
}

TEST_CASE("corner charts") {
  BlockAlgebra A{{3}};
  AlgebraElement f = zero_element(A);
  f.blocks[0](0, 0) = 1.0;
  f.blocks[0](1, 1) = 1.0;

  SECTION("the standard corner yields the standard chart") {
    CornerChart chart = corner_chart(f, 0);
    REQUIRE(chart.block == 0);
    REQUIRE(std::abs(chart.xi0(0) - 1.0) < 1e-12);
    REQUIRE(std::abs(chart.xi1(1) - 1.0) < 1e-12);
  }
  SECTION("chart vectors are an orthonormal basis of the range") {
    Rng rng(86);
    PureState a = random_pure_state_in_block(rng, A, 0);
    PureState b = random_pure_state_in_block(rng, A, 0);
    AlgebraElement g = corner_projection(a, b);
    CornerChart chart = corner_chart(g, 0);
    REQUIRE(std::abs(chart.xi0.norm() - 1.0) < 1e-10);
    REQUIRE(std::abs(chart.xi1.norm() - 1.0) < 1e-10);
    REQUIRE(std::abs(chart.xi0.dot(chart.xi1)) < 1e-10);
    REQUIRE((g.blocks[0] * chart.xi0 - chart.xi0).norm() < 1e-10);
    REQUIRE((g.blocks[0] * chart.xi1 - chart.xi1).norm() < 1e-10);
  }
  SECTION("wrong ranks are rejected") {
    AlgebraElement rank1 = zero_element(A);
    rank1.blocks[0](0, 0) = 1.0;
    REQUIRE_THROWS_AS(corner_chart(rank1, 0), NotRank2);
    REQUIRE_THROWS_AS(corner_chart(identity_element(A), 0), NotRank2);
  }
}

TEST_CASE("induced rotations of 2x2 Jordan maps") {
  BlockAlgebra A{{2}};

  SECTION("the identity map induces the identity rotation") {
    Rotation3 r = induced_rotation(identity_jordan(A));
    REQUIRE((r - Rotation3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(std::abs(r.determinant() - 1.0) < 1e-12);
  }
  SECTION("conjugation by a z-axis phase rotates about z by the phase angle") {
    for (double theta : {0.3, 1.1, 2.5, -0.7}) {
      ComplexMatrix u = ComplexMatrix::Zero(2, 2);
      u(0, 0) = std::polar(1.0, theta / 2.0);
      u(1, 1) = std::polar(1.0, -theta / 2.0);
      Rotation3 r = induced_rotation(conjugation_jordan(A, u));
      Rotation3 expected;
      expected << std::cos(theta), std::sin(theta), 0,  //
          -std::sin(theta), std::cos(theta), 0,         //
          0, 0, 1;
      REQUIRE((r - expected).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SECTION("the transpose reflects the y axis") {
    Rotation3 r = induced_rotation(transpose_jordan(A));
    Rotation3 expected;
    expected << 1, 0, 0, 0, -1, 0, 0, 0, 1;
    REQUIRE((r - expected).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(std::abs(r.determinant() + 1.0) < 1e-12);
  }
  SECTION("rotations are orthogonal with the right determinant sign") {
    Rng rng(87);
    for (int t = 0; t < 20; ++t) {
      JordanMap hom = conjugation_jordan(A, haar_unitary(rng, 2));
      Rotation3 r = induced_rotation(hom);
      REQUIRE((r.transpose() * r - Rotation3::Identity()).cwiseAbs().maxCoeff() < 1e-9);
      REQUIRE(std::abs(r.determinant() - 1.0) < 1e-9);
      Rotation3 s = induced_rotation(compose_jordan(hom, transpose_jordan(A)));
      REQUIRE(std::abs(s.determinant() + 1.0) < 1e-9);
    }
  }
  SECTION("the rotation reproduces the state-side action on the whole ball") {
    Rng rng(88);
    JordanMap J = conjugation_jordan(A, haar_unitary(rng, 2));
    Rotation3 r = induced_rotation(J);
    ValidatedJordan vj(J);
    for (int t = 0; t < 30; ++t) {
      BlochVector v = random_ball_vector(rng);
      State s{A, {bloch_to_density(v)}};
      State image = kadison_apply(KadisonView{vj}, s);
      BlochVector got = density_to_bloch(image.rho[0]);
      Eigen::Vector3d expected = r * Eigen::Vector3d(v.x, v.y, v.z);
      REQUIRE(std::abs(got.x - expected(0)) < 1e-10);
      REQUIRE(std::abs(got.y - expected(1)) < 1e-10);
      REQUIRE(std::abs(got.z - expected(2)) < 1e-10);
    }
  }
  SECTION("composition multiplies the rotations in reverse order") {
    Rng rng(89);
    for (int t = 0; t < 10; ++t) {
      JordanMap J1 = conjugation_jordan(A, haar_unitary(rng, 2));
      JordanMap J2 = conjugation_jordan(A, haar_unitary(rng, 2));
      Rotation3 r12 = induced_rotation(compose_jordan(J1, J2));
      Rotation3 product = induced_rotation(J2) * induced_rotation(J1);
      REQUIRE((r12 - product).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  SECTION("maps that are not Jordan symmetries are rejected") {
    JordanMap broken = identity_jordan(A);
    broken.matrix(1, 1) = 2.0;
    REQUIRE_THROWS_AS(induced_rotation(broken), NotJordan);
    BlockAlgebra B{{3}};
    REQUIRE_THROWS_AS(induced_rotation(identity_jordan(B)), DimensionMismatch);
  }
}

TEST_CASE("corner restrictions and chart independence of the orientation sign") {
  BlockAlgebra A{{3}};
  Rng rng(90);
  ComplexMatrix u = haar_unitary(rng, 3);
  BlockMapSpec spec;
  spec.sigma = {0};
  spec.us = {u};
  spec.anti = {false};
  ValidatedJordan vj(jordan_from_blocks(A, spec));

  ComplexVector e0 = ComplexVector::Zero(3), e1 = ComplexVector::Zero(3);
  e0(0) = 1.0;
  e1(1) = 1.0;
  PureState w0{A, 0, e0};
  PureState w1{A, 0, e1};
  AlgebraElement f = corner_projection(w0, w1);
  KadisonView K{vj};
  AlgebraElement fprime =
      corner_projection(kadison_apply_pure(K, w0), kadison_apply_pure(K, w1));

  CornerChart to = corner_chart(f, 0);
  CornerChart from = corner_chart(fprime, 0);
  JordanMap J2 = corner_restriction(vj, from, to);
  double det_default = induced_rotation(J2).determinant();
  REQUIRE(std::abs(det_default - 1.0) < 1e-9);

  // Distort the charts: re-phase one second vector, swap the other basis.
  CornerChart from_alt = from;
  from_alt.xi1 *= std::polar(1.0, 0.9);
  CornerChart to_alt{to.block, to.xi1, to.xi0};
  double det_alt = induced_rotation(corner_restriction(vj, from_alt, to_alt)).determinant();
  REQUIRE(det_default * det_alt > 0.0);

  SECTION("an anti-isomorphic restriction has the opposite sign") {
    ValidatedJordan anti(compose_jordan(vj.map(), transpose_jordan(A)));
    KadisonView Ka{anti};
    AlgebraElement fp =
        corner_projection(kadison_apply_pure(Ka, w0), kadison_apply_pure(Ka, w1));
    JordanMap J2a = corner_restriction(anti, corner_chart(fp, 0), to);
    REQUIRE(induced_rotation(J2a).determinant() < 0.0);
  }
}

TEST_CASE("orientation classification") {
  SECTION("a conjugation preserves orientation") {
    BlockAlgebra A{{3}};
    Rng rng(91);
    BlockMapSpec spec;
    spec.sigma = {0};
    spec.us = {haar_unitary(rng, 3)};
    spec.anti = {false};
    OrientationReport report = orientation_of(ValidatedJordan(jordan_from_blocks(A, spec)));
    REQUIRE(report.verdict == Orientation::PRESERVING);
    REQUIRE(report.block_labels == std::vector<BlockLabel>{BlockLabel::HOM});
    REQUIRE(report.corner_checks.size() == 1);
    REQUIRE(report.corner_checks[0].det > 0.0);
  }
  SECTION("a transpose reverses orientation") {
    BlockAlgebra A{{3}};
    OrientationReport report = orientation_of(ValidatedJordan(transpose_jordan(A)));
    REQUIRE(report.verdict == Orientation::REVERSING);
    REQUIRE(report.corner_checks[0].det < 0.0);
  }
  SECTION("mixed blockwise types are first-class") {
    BlockAlgebra A{{2, 2}};
    OrientationReport report =
        orientation_of(ValidatedJordan(partial_transpose_jordan(A, {false, true})));
    REQUIRE(report.verdict == Orientation::MIXED);
    REQUIRE(report.corner_checks.size() == 2);
    REQUIRE(report.corner_checks[0].det > 0.0);
    REQUIRE(report.corner_checks[1].det < 0.0);
  }
  SECTION("commutative algebras have no orientation to speak of") {
    BlockAlgebra A{{1, 1}};
    OrientationReport report = orientation_of(ValidatedJordan(identity_jordan(A)));
    REQUIRE(report.verdict == Orientation::TRIVIAL);
    REQUIRE(report.corner_checks.empty());
  }
  SECTION("one-dimensional blocks do not dilute a verdict") {
    BlockAlgebra A{{2, 1}};
    OrientationReport report = orientation_of(ValidatedJordan(identity_jordan(A)));
    REQUIRE(report.verdict == Orientation::PRESERVING);
    OrientationReport rev =
        orientation_of(ValidatedJordan(partial_transpose_jordan(A, {true, false})));
    REQUIRE(rev.verdict == Orientation::REVERSING);
  }
}
