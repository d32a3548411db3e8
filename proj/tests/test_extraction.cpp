// Tests for extracting the implementing (anti-)unitary of a Jordan symmetry
// restricted to one full matrix block, phase canonicalization, and the
// residual verification report.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "blocksym/errors.hpp"
#include "blocksym/extraction.hpp"
#include "blocksym/random_gen.hpp"
#include "blocksym/symmetry.hpp"

using namespace blocksym;

namespace {

// Jordan map given by conjugation with a single unitary on a one-block
// algebra; the expected round-trip answer is that same unitary.
JordanMap conjugation_jordan(const BlockAlgebra& A, const ComplexMatrix& u) {
  BlockMapSpec spec;
  spec.sigma = {0};
  spec.us = {u};
  spec.anti = {false};
  return jordan_from_blocks(A, spec);
}

}  // namespace

TEST_CASE("extraction on the identity map returns the identity operator") {
  BlockAlgebra A{{3}};
  ValidatedJordan vj(identity_jordan(A));
  ImplementingOperator op = extract_unitary(vj, 0, MapKind::HOM);
  REQUIRE(op.block == 0);
  REQUIRE_FALSE(op.antiunitary);
  REQUIRE(max_abs(ComplexMatrix(op.u - ComplexMatrix::Identity(3, 3))) < 1e-10);
}

TEST_CASE("extraction round-trips a known conjugation up to phase") {
  BlockAlgebra A{{2}};
  ComplexMatrix u0 = ComplexMatrix::Zero(2, 2);
  u0(0, 0) = Complex(1, 0);
  u0(1, 1) = Complex(0, 1);
  ValidatedJordan vj(conjugation_jordan(A, u0));
  ImplementingOperator op = extract_unitary(vj, 0, MapKind::HOM);
  ImplementingOperator reference{0, u0, false};
  REQUIRE(phase_distance(op, reference) < 1e-8);

  SECTION("the same holds for Haar-random conjugations") {
    Rng rng(71);
    for (int n : {2, 3, 5}) {
      BlockAlgebra B{{n}};
      for (int t = 0; t < 10; ++t) {
        ComplexMatrix u = haar_unitary(rng, n);
        ImplementingOperator got =
            extract_unitary(ValidatedJordan(conjugation_jordan(B, u)), 0, MapKind::HOM);
        REQUIRE(phase_distance(got, ImplementingOperator{0, u, false}) < 1e-8);
        REQUIRE(max_abs(ComplexMatrix(got.u.adjoint() * got.u -
                                      ComplexMatrix::Identity(n, n))) < 1e-9);
      }
    }
  }
}

TEST_CASE("extraction flags the transpose as anti-unitary") {
  BlockAlgebra A{{2}};
  ValidatedJordan vj(transpose_jordan(A));
  ImplementingOperator op = extract_unitary(vj, 0, MapKind::ANTI);
  REQUIRE(op.antiunitary);
  // a^T = conj(a) on self-adjoint a, so the transpose is implemented by the
  // identity together with entrywise conjugation.
  REQUIRE(max_abs(ComplexMatrix(op.u - ComplexMatrix::Identity(2, 2))) < 1e-10);
  ImplementationReport report = verify_implementation(vj.map(), op);
  REQUIRE(report.passed);
  REQUIRE(report.max_residual < 1e-8);
}

TEST_CASE("extraction rejects a kind that contradicts the map") {
  BlockAlgebra A{{3}};
  REQUIRE_THROWS_AS(extract_unitary(ValidatedJordan(identity_jordan(A)), 0, MapKind::ANTI),
                    KindMismatch);
  REQUIRE_THROWS_AS(extract_unitary(ValidatedJordan(transpose_jordan(A)), 0, MapKind::HOM),
                    KindMismatch);
}

TEST_CASE("one-dimensional blocks accept either kind") {
  BlockAlgebra A{{2, 1}};
  ValidatedJordan vj(identity_jordan(A));
  ImplementingOperator hom = extract_unitary(vj, 1, MapKind::HOM);
  ImplementingOperator anti = extract_unitary(vj, 1, MapKind::ANTI);
  REQUIRE(max_abs(ComplexMatrix(hom.u - ComplexMatrix::Identity(1, 1))) < 1e-12);
  REQUIRE(max_abs(ComplexMatrix(anti.u - ComplexMatrix::Identity(1, 1))) < 1e-12);
  REQUIRE_FALSE(hom.antiunitary);
  REQUIRE(anti.antiunitary);
}

TEST_CASE("extraction works blockwise on mixed maps") {
  BlockAlgebra A{{2, 3}};
  ValidatedJordan vj(partial_transpose_jordan(A, {false, true}));
  ImplementingOperator op0 = extract_unitary(vj, 0, MapKind::HOM);
  ImplementingOperator op1 = extract_unitary(vj, 1, MapKind::ANTI);
  REQUIRE(max_abs(ComplexMatrix(op0.u - ComplexMatrix::Identity(2, 2))) < 1e-10);
  REQUIRE(max_abs(ComplexMatrix(op1.u - ComplexMatrix::Identity(3, 3))) < 1e-10);
  REQUIRE_THROWS_AS(extract_unitary(vj, 1, MapKind::HOM), KindMismatch);
  REQUIRE_THROWS_AS(extract_unitary(vj, 0, MapKind::ANTI), KindMismatch);
}

TEST_CASE("extraction refuses a block the symmetry moves elsewhere") {
  BlockAlgebra A{{2, 2}};
  Rng rng(72);
  BlockMapSpec spec;
  spec.sigma = {1, 0};
  spec.us = {haar_unitary(rng, 2), haar_unitary(rng, 2)};
  spec.anti = {false, false};
  ValidatedJordan vj(jordan_from_blocks(A, spec));
  REQUIRE_THROWS_AS(extract_unitary(vj, 0, MapKind::HOM), SingularExtraction);
}

TEST_CASE("the canonical phase makes the first significant entry real positive") {
  Rng rng(73);
  for (int t = 0; t < 20; ++t) {
    ComplexMatrix u = haar_unitary(rng, 4);
    ComplexMatrix c = canonical_phase(u);
    int row = 0;
    while (std::abs(c(row, 0)) <= 1e-8) ++row;
    REQUIRE(c(row, 0).real() > 0.0);
    REQUIRE(std::abs(c(row, 0).imag()) < 1e-12);
    // Canonicalization only multiplies by a phase.
    REQUIRE(std::abs(max_abs(ComplexMatrix(c.adjoint() * u)) - 1.0) < 1e-9);
  }
}

TEST_CASE("extractions with different reference vectors agree up to phase") {
  Rng rng(74);
  BlockAlgebra A{{3}};
  ComplexMatrix u = haar_unitary(rng, 3);
  ValidatedJordan vj(conjugation_jordan(A, u));
  ImplementingOperator base = extract_unitary(vj, 0, MapKind::HOM);
  for (int t = 0; t < 10; ++t) {
    ComplexVector chi = random_unit_vector(rng, 3);
    ImplementingOperator other = extract_unitary(vj, 0, MapKind::HOM, chi);
    REQUIRE(phase_distance(base, other) < 1e-8);
  }
  // A reference vector orthogonal to the image of the default one must not
  // break anything either.
  ComplexVector e1 = ComplexVector::Zero(3);
  e1(1) = 1.0;
  REQUIRE(phase_distance(base, extract_unitary(vj, 0, MapKind::HOM, e1)) < 1e-8);
}

TEST_CASE("the extracted operator preserves the sweep norms") {
  Rng rng(75);
  BlockAlgebra A{{4}};
  ComplexMatrix u = haar_unitary(rng, 4);
  ValidatedJordan vj(conjugation_jordan(A, u));
  ImplementingOperator op = extract_unitary(vj, 0, MapKind::HOM);
  ComplexVector chi = ComplexVector::Zero(4);
  chi(0) = 1.0;
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    ComplexMatrix a(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) a(r, c) = Complex(dist(rng), dist(rng));
    AlgebraElement ea = zero_element(A);
    ea.blocks[0] = a;
    ComplexVector image = apply_jordan(vj, ea).blocks[0] * chi;
    REQUIRE(std::abs((op.u * image).norm() - image.norm()) < 1e-10);
  }
}

TEST_CASE("extraction respects composition") {
  Rng rng(76);
  BlockAlgebra A{{3}};
  for (int t = 0; t < 10; ++t) {
    ComplexMatrix u1 = haar_unitary(rng, 3);
    ComplexMatrix u2 = haar_unitary(rng, 3);
    JordanMap J1 = conjugation_jordan(A, u1);
    JordanMap J2 = conjugation_jordan(A, u2);
    ImplementingOperator got =
        extract_unitary(ValidatedJordan(compose_jordan(J1, J2)), 0, MapKind::HOM);
    // J1(J2(a)) = (u2 u1)^* a (u2 u1).
    ImplementingOperator expected{0, ComplexMatrix(u2 * u1), false};
    REQUIRE(phase_distance(got, expected) < 1e-8);
  }
}

TEST_CASE("verification reports") {
  BlockAlgebra A{{2}};
  Rng rng(77);
  ComplexMatrix u = haar_unitary(rng, 2);
  ValidatedJordan vj(conjugation_jordan(A, u));
  ImplementingOperator op = extract_unitary(vj, 0, MapKind::HOM);

  SECTION("a matched pair passes with one residual per basis element") {
    ImplementationReport report = verify_implementation(vj.map(), op);
    REQUIRE(report.passed);
    REQUIRE(report.residuals.size() == 4);
    REQUIRE(report.max_residual < 1e-8);
  }
  SECTION("a global phase does not disturb the verification") {
    ImplementingOperator rotated = op;
    rotated.u *= Complex(0, 1);
    REQUIRE(verify_implementation(vj.map(), rotated).passed);
  }
  SECTION("the wrong conjugation flag fails loudly") {
    ImplementingOperator flipped = op;
    flipped.antiunitary = true;
    ImplementationReport report = verify_implementation(vj.map(), flipped);
    REQUIRE_FALSE(report.passed);
    REQUIRE(report.max_residual > 0.1);
  }
  SECTION("an unrelated unitary fails") {
    ImplementingOperator wrong{0, haar_unitary(rng, 2), false};
    REQUIRE_FALSE(verify_implementation(vj.map(), wrong).passed);
  }
  SECTION("out-of-range blocks and wrong shapes are rejected") {
    ImplementingOperator bad = op;
    bad.block = 5;
    REQUIRE_THROWS_AS(verify_implementation(vj.map(), bad), IndexOutOfRange);
    ImplementingOperator misshaped{0, ComplexMatrix::Identity(3, 3), false};
    REQUIRE_THROWS_AS(verify_implementation(vj.map(), misshaped), DimensionMismatch);
  }
}

TEST_CASE("phase distance") {
  Rng rng(78);
  ComplexMatrix u = haar_unitary(rng, 3);
  ImplementingOperator a{0, u, false};

  SECTION("an operator is at distance zero from itself") {
    REQUIRE(phase_distance(a, a) < 1e-12);
  }
  SECTION("a global phase is invisible") {
    ImplementingOperator b{0, ComplexMatrix(Complex(0, 1) * u), false};
    REQUIRE(phase_distance(a, b) < 1e-12);
    ImplementingOperator c{0, ComplexMatrix(std::polar(1.0, 2.1) * u), false};
    REQUIRE(phase_distance(a, c) < 1e-12);
  }
  SECTION("independent unitaries are far apart") {
    int far = 0;
    for (int t = 0; t < 50; ++t) {
      ImplementingOperator b{0, haar_unitary(rng, 3), false};
      if (phase_distance(a, b) > 0.1) ++far;
    }
    REQUIRE(far >= 48);
  }
  SECTION("mismatched flags or blocks are rejected") {
    ImplementingOperator anti{0, u, true};
    REQUIRE_THROWS_AS(phase_distance(a, anti), FlagMismatch);
    ImplementingOperator other_block{1, u, false};
    REQUIRE_THROWS_AS(phase_distance(a, other_block), FlagMismatch);
  }
  SECTION("distance is symmetric") {
    ImplementingOperator b{0, haar_unitary(rng, 3), false};
    REQUIRE(std::abs(phase_distance(a, b) - phase_distance(b, a)) < 1e-12);
  }
}

TEST_CASE("extracted operators are canonically phased") {
  Rng rng(79);
  for (int t = 0; t < 10; ++t) {
    BlockAlgebra A{{3}};
    ValidatedJordan vj(conjugation_jordan(A, haar_unitary(rng, 3)));
    ImplementingOperator op = extract_unitary(vj, 0, MapKind::HOM);
    int row = 0;
    while (std::abs(op.u(row, 0)) <= 1e-8) ++row;
    REQUIRE(op.u(row, 0).real() > 0.0);
    REQUIRE(std::abs(op.u(row, 0).imag()) < 1e-12);
  }
}
