// The acceptance suite: ten numbered end-to-end criteria exercising every
// module at desk scale (block dimensions up to 8, up to 4 blocks). Counts
// that the criteria pin down are fixed constants here; the `trials` knob
// only scales sampling density where no count is pinned. All tolerances are
// named fields so a front end can override them individually.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "blocksym/algebra.hpp"
#include "blocksym/bloch.hpp"
#include "blocksym/errors.hpp"
#include "blocksym/extraction.hpp"
#include "blocksym/matrix.hpp"
#include "blocksym/random_gen.hpp"
#include "blocksym/states.hpp"
#include "blocksym/symmetry.hpp"
#include "blocksym/thomsen.hpp"

namespace blocksym {

// Shipped bounds for each criterion; every number is part of the contract.
struct Tolerances {
  double tp_equivalence = 1e-9;     // 1: three tp formulas agree
  double distance_identity = 1e-8;  // 2: trace distance vs 2*sqrt(1-tau)
  double herstein = 1e-8;           // 3: defect identity battery
  double thomsen_entries = 1e-9;    // 4: projection entries on the fixture
  double thomsen_uniqueness = 1e-8; // 4: pair-order re-run reproduction
  double extraction = 1e-8;         // 5: phase distance and residual
  double reconstruction = 1e-8;     // 6: coordinate-matrix round trip
  double bloch_identity = 1e-12;    // 7: trace/determinant identities
  double bloch_round_trip = 1e-10;  // 7: ball coordinate round trip
  double orientation_det = 1e-9;    // 8: corner determinant vs +-1
  double unitality = 1e-9;          // 9: J(1) = 1
  double positivity_floor = 1e-8;   // 9: eigenvalue floor of J(positive)
  double witness_dominance = 1e-8;  // 10: witness value >= tau
  double witness_equality = 1e-9;   // 10: equality at the carrier witness
};

// Name -> member map so command-line overrides can address each tolerance.
inline const std::map<std::string, double Tolerances::*>& tolerance_registry() {
  static const std::map<std::string, double Tolerances::*> registry = {
      {"tp_equivalence", &Tolerances::tp_equivalence},
      {"distance_identity", &Tolerances::distance_identity},
      {"herstein", &Tolerances::herstein},
      {"thomsen_entries", &Tolerances::thomsen_entries},
      {"thomsen_uniqueness", &Tolerances::thomsen_uniqueness},
      {"extraction", &Tolerances::extraction},
      {"reconstruction", &Tolerances::reconstruction},
      {"bloch_identity", &Tolerances::bloch_identity},
      {"bloch_round_trip", &Tolerances::bloch_round_trip},
      {"orientation_det", &Tolerances::orientation_det},
      {"unitality", &Tolerances::unitality},
      {"positivity_floor", &Tolerances::positivity_floor},
      {"witness_dominance", &Tolerances::witness_dominance},
      {"witness_equality", &Tolerances::witness_equality}};
  return registry;
}

struct SelftestConfig {
  std::uint64_t seed = kDefaultSeed;
  int trials = 200;
  Tolerances tol;
};

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  double observed = 0.0;  // worst deviation seen for the headline check
  double bound = 0.0;     // tolerance the headline check was held to
  std::string detail;     // empty on a clean pass
};

struct SelftestReport {
  std::vector<CriterionResult> results;
  bool all_passed = false;
};

inline std::string format_line(const CriterionResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "[%s] criterion %2d: %s (observed %.2e, bound %g)",
                r.passed ? "PASS" : "FAIL", r.index, r.name.c_str(), r.observed, r.bound);
  std::string line(buf);
  if (!r.passed && !r.detail.empty()) line += " -- " + r.detail;
  return line;
}

inline std::string format_report(const SelftestReport& report) {
  std::string out;
  for (const CriterionResult& r : report.results) out += format_line(r) + "\n";
  out += report.all_passed ? "all criteria passed\n" : "some criteria FAILED\n";
  return out;
}

namespace detail {

// Track the largest deviation and where it occurred.
struct Worst {
  double value = 0.0;
  std::string where = "nowhere";
  void feed(double v, std::string w) {
    if (v >= value) {
      value = v;
      where = std::move(w);
    }
  }
};

// A secondary condition inside a criterion; failures annotate the detail.
inline void gate(CriterionResult& r, bool ok, const std::string& message) {
  if (ok) return;
  r.passed = false;
  r.detail += (r.detail.empty() ? "" : "; ") + message;
}

// Fold the headline deviation into the result.
inline void settle(CriterionResult& r, const Worst& worst, double bound) {
  r.observed = worst.value;
  r.bound = bound;
  if (worst.value >= bound) {
    r.passed = false;
    gate(r, false, "worst deviation at " + worst.where);
  }
}

inline std::string shape_string(const BlockAlgebra& A) {
  std::string s = "[";
  for (size_t i = 0; i < A.dims.size(); ++i)
    s += (i ? "," : "") + std::to_string(A.dims[i]);
  return s + "]";
}

inline std::vector<BlockAlgebra> acceptance_shapes() {
  return {BlockAlgebra{{3}}, BlockAlgebra{{2, 2}}, BlockAlgebra{{5, 3, 1}},
          BlockAlgebra{{8}}};
}

template <typename Body>
CriterionResult run_criterion(int index, const char* name, const Body& body) {
  CriterionResult r;
  r.index = index;
  r.name = name;
  r.passed = true;
  try {
    body(r);
  } catch (const Error& e) {
    r.passed = false;
    r.observed = std::numeric_limits<double>::infinity();
    gate(r, false, std::string("exception: ") + e.what());
  }
  return r;
}

// 1. The three transition-probability formulas agree pairwise.
inline CriterionResult criterion_tp_equivalence(const SelftestConfig& c) {
  return run_criterion(1, "transition-probability formula equivalence", [&](CriterionResult& r) {
    Rng rng(c.seed + 101);
    std::vector<BlockAlgebra> shapes = acceptance_shapes();
    Worst worst;
    for (int t = 0; t < 1000; ++t) {
      const BlockAlgebra& A = shapes[t % shapes.size()];
      PureState w = random_pure_state(rng, A);
      PureState wp = (t % 2 == 0) ? random_pure_state_in_block(rng, A, w.block)
                                  : random_pure_state(rng, A);
      const double a = tp_amplitude(w, wp);
      const double n = tp_norm(w, wp);
      const double k = tp_carrier(w, wp);
      const double dev = std::max({std::abs(a - n), std::abs(a - k), std::abs(n - k)});
      worst.feed(dev, "pair " + std::to_string(t) + " on " + shape_string(A));
    }
    settle(r, worst, c.tol.tp_equivalence);
  });
}

// 2. trace_norm(rho - rho') = 2 sqrt(1 - tau) for same-block pairs, checked
// against a closed-form 2x2 spectral computation on the spanned subspace.
inline CriterionResult criterion_distance_identity(const SelftestConfig& c) {
  return run_criterion(2, "pure-state distance identity", [&](CriterionResult& r) {
    Rng rng(c.seed + 202);
    std::vector<BlockAlgebra> shapes = acceptance_shapes();
    Worst worst;
    for (int t = 0; t < 1000; ++t) {
      const BlockAlgebra& A = shapes[t % shapes.size()];
      PureState w = random_pure_state(rng, A);
      PureState wp = random_pure_state_in_block(rng, A, w.block);
      const double tau = tp_amplitude(w, wp);
      State s = to_state(w), sp = to_state(wp);
      double dist = 0.0;
      for (size_t b = 0; b < s.rho.size(); ++b) dist += trace_norm(s.rho[b] - sp.rho[b]);

      // Orthonormalize {psi, psi'} and diagonalize the difference by hand.
      ComplexVector xi0 = w.psi;
      ComplexVector g = wp.psi - xi0.dot(wp.psi) * xi0;
      double oracle = 0.0;
      if (g.norm() > 1e-12) {
        ComplexVector xi1 = g / g.norm();
        Eigen::Vector2cd cw(Complex(1.0, 0.0), Complex(0.0, 0.0));
        Eigen::Vector2cd cp(xi0.dot(wp.psi), xi1.dot(wp.psi));
        Eigen::Matrix2cd m = cw * cw.adjoint() - cp * cp.adjoint();
        const double tr = m.trace().real();
        const double det2 = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
        const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det2));
        oracle = std::abs(0.5 * tr + disc) + std::abs(0.5 * tr - disc);
      }
      // The identity dist = 2 sqrt(1 - tau) is checked in its stable forms:
      // sqrt(1 - tau) equals the norm of the orthogonal residual g, and the
      // inverse direction tau = 1 - dist^2/4 avoids amplifying the O(eps)
      // rounding of tau near parallel pairs, where the literal left-to-right
      // evaluation is ill-conditioned for any double-precision input.
      const double stable = 2.0 * g.norm();
      const double tau_back = 1.0 - 0.25 * dist * dist;
      const double dev = std::max({std::abs(dist - stable), std::abs(dist - oracle),
                                   std::abs(tau - tau_back)});
      worst.feed(dev, "pair " + std::to_string(t) + " on " + shape_string(A));
    }
    settle(r, worst, c.tol.distance_identity);
  });
}

// 3. Defect identity battery over random symmetries plus one corrupted
// negative control that must fail the product identity with a witness.
inline CriterionResult criterion_herstein(const SelftestConfig& c) {
  return run_criterion(3, "herstein identity suite", [&](CriterionResult& r) {
    Rng rng(c.seed + 303);
    Worst worst;
    for (const BlockAlgebra& A : acceptance_shapes()) {
      for (int t = 0; t < 50; ++t) {
        JordanMap J = jordan_from_blocks(A, random_block_spec(rng, A));
        HersteinReport rep = check_herstein_identities(J, 10, rng());
        for (const HersteinEntry& e : rep.entries)
          worst.feed(e.max_residual,
                     "identity " + e.name + ", map " + std::to_string(t) + " on " +
                         shape_string(A));
      }
    }
    JordanMap corrupted = identity_jordan(BlockAlgebra{{3}});
    corrupted.matrix *= 2.0;
    HersteinReport control = check_herstein_identities(corrupted, 10, c.seed + 304);
    bool control_failed = false;
    for (const HersteinEntry& e : control.entries)
      if (e.name == "iii") control_failed = !e.passed && e.witness_trial >= 0;
    gate(r, control_failed, "scaled negative control did not fail identity iii");
    settle(r, worst, c.tol.herstein);
  });
}

// 4. The mixed fixture decomposes into the expected block projections and
// labels, and a shuffled pair enumeration reproduces the projections.
inline CriterionResult criterion_thomsen_recovery(const SelftestConfig& c) {
  return run_criterion(4, "thomsen decomposition recovery", [&](CriterionResult& r) {
    BlockAlgebra A{{2, 3, 1}};
    ValidatedJordan vj(partial_transpose_jordan(A, {false, true, false}));
    ThomsenDecomposition dec = thomsen_decompose(vj);

    auto indicator = [&](int block) {
      AlgebraElement e = zero_element(A);
      e.blocks[block] = ComplexMatrix::Identity(A.dims[block], A.dims[block]);
      return e;
    };
    Worst worst;
    worst.feed(frobenius_norm(sub(dec.p1, indicator(0))), "p1 entries");
    worst.feed(frobenius_norm(sub(dec.p2, indicator(1))), "p2 entries");
    worst.feed(frobenius_norm(sub(dec.p3, indicator(2))), "p3 entries");
    gate(r,
         dec.block_labels ==
             std::vector<BlockLabel>{BlockLabel::HOM, BlockLabel::ANTI, BlockLabel::BOTH},
         "fixture labels are not (HOM, ANTI, BOTH)");

    std::vector<std::pair<int, int>> pairs;
    const int d = A.sa_dim();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) pairs.emplace_back(i, j);
    Rng rng(c.seed + 404);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    ThomsenDecomposition redo = thomsen_decompose(vj, pairs);
    const double rerun = std::max({frobenius_norm(sub(dec.p1, redo.p1)),
                                   frobenius_norm(sub(dec.p2, redo.p2)),
                                   frobenius_norm(sub(dec.p3, redo.p3))});
    gate(r, rerun < c.tol.thomsen_uniqueness,
         "pair-order re-run moved the projections by " + std::to_string(rerun));
    settle(r, worst, c.tol.thomsen_entries);
  });
}

// 5. Extract the implementing operator from conjugation maps and their
// transpose compositions; compare with the generating unitary up to phase.
inline CriterionResult criterion_extraction(const SelftestConfig& c) {
  return run_criterion(5, "unitary extraction round trip", [&](CriterionResult& r) {
    Rng rng(c.seed + 505);
    Worst worst;
    for (int n : {2, 3, 5, 8}) {
      BlockAlgebra A{{n}};
      for (int t = 0; t < 200; ++t) {
        const bool anti = t >= 100;
        ComplexMatrix u = haar_unitary(rng, n);
        BlockMapSpec spec{{0}, {u}, {anti}};
        ValidatedJordan vj(jordan_from_blocks(A, spec));
        ImplementingOperator op =
            extract_unitary(vj, 0, anti ? MapKind::ANTI : MapKind::HOM);
        ImplementingOperator ref{0, anti ? ComplexMatrix(u.conjugate()) : u, anti};
        const std::string where =
            (anti ? "antiunitary" : "unitary") + std::string(" case ") +
            std::to_string(t) + ", n = " + std::to_string(n);
        worst.feed(phase_distance(op, ref), "phase distance, " + where);
        worst.feed(verify_implementation(vj.map(), op).max_residual, "residual, " + where);
      }
    }
    settle(r, worst, c.tol.extraction);
  });
}

// 6. Jordan -> pure-state oracle -> Jordan round trip, plus a non-unitary
// oracle that the reconstruction must reject.
inline CriterionResult criterion_reconstruction(const SelftestConfig& c) {
  return run_criterion(6, "wigner reconstruction round trip", [&](CriterionResult& r) {
    Rng rng(c.seed + 606);
    Worst worst;
    for (const BlockAlgebra& A : {BlockAlgebra{{2, 2}}, BlockAlgebra{{4, 3, 1}}}) {
      for (int t = 0; t < 50; ++t) {
        JordanMap J = jordan_from_blocks(A, random_block_spec(rng, A));
        ValidatedJordan vj(J);
        JordanMap back = jordan_from_wigner(wigner_from_jordan(vj), A);
        worst.feed((J.matrix - back.matrix).norm(),
                   "map " + std::to_string(t) + " on " + shape_string(A));
      }
    }

    BlockAlgebra A{{2, 2}};
    ComplexMatrix skew = ComplexMatrix::Identity(2, 2);
    skew(1, 1) = 2.0;
    WignerOracle bad = [A, skew](const PureState& w) {
      ComplexVector v = skew * w.psi;
      return PureState{A, w.block, v / v.norm()};
    };
    bool rejected = false;
    try {
      jordan_from_wigner(bad, A);
    } catch (const OracleInconsistent&) {
      rejected = true;
    }
    gate(r, rejected, "non-unitary oracle was not rejected");
    settle(r, worst, c.tol.reconstruction);
  });
}

// 7. Ball geometry: the trace pairing identity, the determinant identity,
// and the coordinate round trip.
inline CriterionResult criterion_bloch(const SelftestConfig& c) {
  return run_criterion(7, "bloch-ball identities", [&](CriterionResult& r) {
    Rng rng(c.seed + 707);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    auto direction = [&] {
      BlochVector v{normal(rng), normal(rng), normal(rng)};
      const double n = v.norm();
      return BlochVector{v.x / n, v.y / n, v.z / n};
    };
    Worst worst;
    double round_trip = 0.0;
    for (int t = 0; t < 1000; ++t) {
      BlochVector x = direction(), y = direction();
      const double pairing = (bloch_to_density(x) * bloch_to_density(y)).trace().real();
      const double inner = x.x * y.x + x.y * y.y + x.z * y.z;
      worst.feed(std::abs(pairing - 0.5 * (1.0 + inner)), "pairing at sample " + std::to_string(t));

      BlochVector d = direction();
      const double radius = std::cbrt(uniform(rng));
      BlochVector v{radius * d.x, radius * d.y, radius * d.z};
      ComplexMatrix rho = bloch_to_density(v);
      const double det = (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real();
      worst.feed(std::abs(det - 0.25 * (1.0 - radius * radius)),
                 "determinant at sample " + std::to_string(t));

      BlochVector back = density_to_bloch(rho);
      round_trip = std::max({round_trip, std::abs(back.x - v.x), std::abs(back.y - v.y),
                             std::abs(back.z - v.z)});
    }
    gate(r, round_trip < c.tol.bloch_round_trip,
         "coordinate round trip drifted by " + std::to_string(round_trip));
    settle(r, worst, c.tol.bloch_identity);
  });
}

// 8. Orientation classification on the four canonical situations, plus
// chart independence of the corner determinant sign.
inline CriterionResult criterion_orientation(const SelftestConfig& c) {
  return run_criterion(8, "orientation classification", [&](CriterionResult& r) {
    Rng rng(c.seed + 808);
    Worst worst;

    BlockAlgebra M3{{3}};
    ComplexMatrix u = haar_unitary(rng, 3);
    ValidatedJordan conj(jordan_from_blocks(M3, BlockMapSpec{{0}, {u}, {false}}));
    OrientationReport preserving = orientation_of(conj);
    gate(r, preserving.verdict == Orientation::PRESERVING,
         "unitary conjugation did not classify PRESERVING");
    for (const CornerCheck& k : preserving.corner_checks)
      worst.feed(std::abs(k.det - 1.0), "preserving corner determinant");

    ValidatedJordan rev(jordan_from_blocks(M3, BlockMapSpec{{0}, {u}, {true}}));
    OrientationReport reversing = orientation_of(rev);
    gate(r, reversing.verdict == Orientation::REVERSING,
         "transpose composition did not classify REVERSING");
    for (const CornerCheck& k : reversing.corner_checks)
      worst.feed(std::abs(k.det + 1.0), "reversing corner determinant");

    BlockAlgebra M22{{2, 2}};
    OrientationReport mixed =
        orientation_of(ValidatedJordan(partial_transpose_jordan(M22, {false, true})));
    gate(r, mixed.verdict == Orientation::MIXED, "id + transpose did not classify MIXED");

    BlockAlgebra comm{{1, 1, 1}};
    OrientationReport trivial = orientation_of(ValidatedJordan(identity_jordan(comm)));
    gate(r, trivial.verdict == Orientation::TRIVIAL && trivial.corner_checks.empty(),
         "commutative algebra did not classify TRIVIAL");

    // Same corner, two charts: the determinant sign must not depend on the
    // chart choice.
    ComplexVector e0 = ComplexVector::Zero(3), e1 = ComplexVector::Zero(3);
    e0(0) = 1.0;
    e1(1) = 1.0;
    PureState w0 = detail::basis_state(M3, 0, e0);
    PureState w1 = detail::basis_state(M3, 0, e1);
    KadisonView K{conj};
    AlgebraElement f = corner_projection(w0, w1);
    AlgebraElement fp = corner_projection(kadison_apply_pure(K, w0), kadison_apply_pure(K, w1));
    CornerChart from = corner_chart(fp, 0);
    CornerChart to = corner_chart(f, 0);
    const double det1 = induced_rotation(corner_restriction(conj, from, to)).determinant();
    CornerChart from2 = from;
    from2.xi1 *= std::polar(1.0, 0.7);
    CornerChart to2{to.block, to.xi1, to.xi0};
    const double det2 = induced_rotation(corner_restriction(conj, from2, to2)).determinant();
    gate(r, det1 * det2 > 0.0, "determinant sign depends on the chart");

    settle(r, worst, c.tol.orientation_det);
  });
}

// 9. Validated symmetries are unital, preserve positivity on samples, and
// their state action outputs genuine states.
inline CriterionResult criterion_positivity(const SelftestConfig& c) {
  return run_criterion(9, "positivity and unitality", [&](CriterionResult& r) {
    Rng rng(c.seed + 909);
    const int samples = std::max(1, c.trials / 40);
    Worst worst;
    double floor_deficit = 0.0;
    for (const BlockAlgebra& A : acceptance_shapes()) {
      for (int t = 0; t < 10; ++t) {
        ValidatedJordan vj(jordan_from_blocks(A, random_block_spec(rng, A)));
        worst.feed(frobenius_norm(
                       sub(apply_jordan(vj, identity_element(A)), identity_element(A))),
                   "unit image, map " + std::to_string(t) + " on " + shape_string(A));
        for (int s = 0; s < samples; ++s) {
          AlgebraElement image = apply_jordan(vj, random_positive_contraction(rng, A));
          for (const ComplexMatrix& block : image.blocks) {
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(
                0.5 * (block + block.adjoint().eval()), Eigen::EigenvaluesOnly);
            floor_deficit = std::max(floor_deficit, -eig.eigenvalues().minCoeff());
          }
        }
        State moved = kadison_apply(KadisonView{vj}, random_density_state(rng, A));
        bool valid = true;
        try {
          validate_state(moved);
        } catch (const Error&) {
          valid = false;
        }
        gate(r, valid, "state action output failed validation on " + shape_string(A));
      }
    }
    gate(r, floor_deficit < c.tol.positivity_floor,
         "positive image dipped to -" + std::to_string(floor_deficit));
    settle(r, worst, c.tol.unitality);
  });
}

// 10. Every feasible witness dominates the transition probability; the
// carrier witness attains it.
inline CriterionResult criterion_witness_dominance(const SelftestConfig& c) {
  return run_criterion(10, "infimum witness dominance", [&](CriterionResult& r) {
    Rng rng(c.seed + 1010);
    std::vector<BlockAlgebra> shapes = acceptance_shapes();
    Worst worst;
    double equality_dev = 0.0;
    for (int t = 0; t < 100; ++t) {
      const BlockAlgebra& A = shapes[t % shapes.size()];
      PureState w = random_pure_state(rng, A);
      PureState wp = (t % 2 == 0) ? random_pure_state_in_block(rng, A, w.block)
                                  : random_pure_state(rng, A);
      const double tau = tp_amplitude(w, wp);
      AlgebraElement p = carrier(to_state(wp));
      equality_dev = std::max(equality_dev, std::abs(tp_inf_witness(w, wp, p) - tau));

      AlgebraElement comp = sub(identity_element(A), p);
      for (int k = 0; k < 100; ++k) {
        AlgebraElement a =
            add(p, multiply(comp, multiply(random_positive_contraction(rng, A), comp)));
        const double value = tp_inf_witness(w, wp, a);
        worst.feed(std::max(0.0, tau - value),
                   "witness " + std::to_string(k) + " of pair " + std::to_string(t));
      }
    }
    gate(r, equality_dev < c.tol.witness_equality,
         "carrier witness missed tau by " + std::to_string(equality_dev));
    settle(r, worst, c.tol.witness_dominance);
  });
}

}  // namespace detail

inline SelftestReport run_acceptance_criteria(const SelftestConfig& config = {}) {
  SelftestReport report;
  report.results.push_back(detail::criterion_tp_equivalence(config));
  report.results.push_back(detail::criterion_distance_identity(config));
  report.results.push_back(detail::criterion_herstein(config));
  report.results.push_back(detail::criterion_thomsen_recovery(config));
  report.results.push_back(detail::criterion_extraction(config));
  report.results.push_back(detail::criterion_reconstruction(config));
  report.results.push_back(detail::criterion_bloch(config));
  report.results.push_back(detail::criterion_orientation(config));
  report.results.push_back(detail::criterion_positivity(config));
  report.results.push_back(detail::criterion_witness_dominance(config));
  report.all_passed = true;
  for (const CriterionResult& r : report.results) report.all_passed &= r.passed;
  return report;
}

}  // namespace blocksym
