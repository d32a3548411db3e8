// States and pure states on a block algebra: evaluation, carriers,
// equivalence, and the transition probability by three equivalent formulas.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "blocksym/algebra.hpp"
#include "blocksym/errors.hpp"
#include "blocksym/matrix.hpp"

namespace blocksym {

// A (generally mixed) state: one positive-semidefinite matrix per block with
// unit total trace.
struct State {
  BlockAlgebra algebra;
  std::vector<ComplexMatrix> rho;
};

// A pure state: one block carries a unit vector; phase is non-semantic.
struct PureState {
  BlockAlgebra algebra;
  int block = 0;
  ComplexVector psi;
};

inline void validate_state(const State& s) {
  if (static_cast<int>(s.rho.size()) != s.algebra.block_count())
    throw DimensionMismatch("state has wrong number of blocks");
  double total = 0.0;
  for (size_t i = 0; i < s.rho.size(); ++i) {
    const ComplexMatrix& r = s.rho[i];
    if (r.rows() != s.algebra.dims[i] || r.cols() != s.algebra.dims[i])
      throw DimensionMismatch("state block " + std::to_string(i) + " has wrong size");
    if (herm_deviation(r) > 1e-10) throw NotDensity("state block is not self-adjoint");
    if (r.rows() > 0) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (r + r.adjoint().eval()),
                                                          Eigen::EigenvaluesOnly);
      if (solver.eigenvalues().minCoeff() < -1e-10)
        throw NotDensity("state block has a negative eigenvalue");
    }
    total += r.trace().real();
  }
  if (std::abs(total - 1.0) >= 1e-10) throw NotDensity("state total trace is not 1");
}

inline void validate_pure_state(const PureState& w) {
  if (w.block < 0 || w.block >= w.algebra.block_count())
    throw IndexOutOfRange("pure state block index " + std::to_string(w.block) +
                          " out of range");
  if (w.psi.size() != w.algebra.dims[w.block])
    throw DimensionMismatch("pure state vector has wrong length for its block");
  if (std::abs(w.psi.norm() - 1.0) > 1e-12)
    throw NotDensity("pure state vector is not unit norm");
}

// Maximally mixed state: identity / total dimension in every block.
inline State uniform_state(const BlockAlgebra& A) {
  State s{A, {}};
  const double n = static_cast<double>(A.total_dim());
  for (int d : A.dims) s.rho.push_back(ComplexMatrix::Identity(d, d) / n);
  return s;
}

// Density of a pure state: the rank-1 projection in its block.
inline State to_state(const PureState& w) {
  State s{w.algebra, {}};
  for (int d : w.algebra.dims) s.rho.push_back(ComplexMatrix::Zero(d, d));
  s.rho[w.block] = w.psi * w.psi.adjoint();
  return s;
}

// The density matrices packaged as an algebra element.
inline AlgebraElement density_element(const State& s) {
  AlgebraElement a = zero_element(s.algebra);
  a.blocks = s.rho;
  return a;
}

inline Complex state_eval(const State& s, const AlgebraElement& a) {
  if (s.algebra != a.algebra) throw AlgebraMismatch("state and element algebras differ");
  Complex value = 0.0;
  for (size_t i = 0; i < s.rho.size(); ++i) value += (s.rho[i] * a.blocks[i]).trace();
  return value;
}

inline Complex state_eval(const PureState& w, const AlgebraElement& a) {
  if (w.algebra != a.algebra) throw AlgebraMismatch("state and element algebras differ");
  return w.psi.dot(a.blocks[w.block] * w.psi);
}

// Support projection of a state: blockwise range projection of the density.
inline AlgebraElement carrier(const State& s) {
  AlgebraElement e = zero_element(s.algebra);
  for (size_t i = 0; i < s.rho.size(); ++i) e.blocks[i] = range_projection(s.rho[i]);
  return e;
}

// Pure states are (unitarily) equivalent iff they live in the same block.
inline bool equivalent(const PureState& w, const PureState& wp) {
  if (w.algebra != wp.algebra) throw AlgebraMismatch("pure states on different algebras");
  return w.block == wp.block;
}

namespace detail {
inline double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }
}  // namespace detail

// Transition probability, amplitude form: |<psi, psi'>|^2 same block, else 0.
inline double tp_amplitude(const PureState& w, const PureState& wp) {
  if (w.algebra != wp.algebra) throw AlgebraMismatch("pure states on different algebras");
  if (w.block != wp.block) return 0.0;
  return detail::clamp01(std::norm(w.psi.dot(wp.psi)));
}

// Transition probability, distance form: 1 - (trace norm of the density
// difference across all blocks)^2 / 4.
inline double tp_norm(const PureState& w, const PureState& wp) {
  if (w.algebra != wp.algebra) throw AlgebraMismatch("pure states on different algebras");
  State s = to_state(w);
  State sp = to_state(wp);
  double dist = 0.0;
  for (size_t i = 0; i < s.rho.size(); ++i) dist += trace_norm(s.rho[i] - sp.rho[i]);
  return detail::clamp01(1.0 - 0.25 * dist * dist);
}

// Transition probability, carrier form: evaluate one state on the other's
// support projection.
inline double tp_carrier(const PureState& w, const PureState& wp) {
  if (w.algebra != wp.algebra) throw AlgebraMismatch("pure states on different algebras");
  return detail::clamp01(state_eval(w, carrier(to_state(wp))).real());
}

// Evaluate a feasible witness of the infimum form: a must satisfy
// 0 <= a <= 1 and omega'(a) = 1 (both within 1e-9). Every feasible value
// dominates the transition probability; the carrier attains it.
inline double tp_inf_witness(const PureState& w, const PureState& wp,
                             const AlgebraElement& a) {
  if (w.algebra != a.algebra || wp.algebra != a.algebra)
    throw AlgebraMismatch("witness and states on different algebras");
  if (!is_self_adjoint(a, 1e-9)) throw InfeasibleWitness("witness is not self-adjoint");
  for (const auto& block : a.blocks) {
    if (block.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        0.5 * (block + block.adjoint().eval()), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-9 || solver.eigenvalues().maxCoeff() > 1.0 + 1e-9)
      throw InfeasibleWitness("witness spectrum leaves [0, 1]");
  }
  if (std::abs(state_eval(wp, a).real() - 1.0) > 1e-9)
    throw InfeasibleWitness("witness does not evaluate to 1 on the second state");
  return state_eval(w, a).real();
}

}  // namespace blocksym
