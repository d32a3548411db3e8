// JSON encodings for every type that crosses a file or process boundary.
// Matrices are row-major with split real/imaginary arrays; reports are
// one-way (encode only). Every decoder validates shape, finiteness, and the
// semantic invariants of the decoded type, reporting failures as ParseError.
#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "blocksym/algebra.hpp"
#include "blocksym/bloch.hpp"
#include "blocksym/errors.hpp"
#include "blocksym/extraction.hpp"
#include "blocksym/matrix.hpp"
#include "blocksym/states.hpp"
#include "blocksym/symmetry.hpp"
#include "blocksym/thomsen.hpp"

namespace blocksym {

using Json = nlohmann::json;

inline Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("input is not valid JSON");
  return j;
}

namespace detail {

// Fetch a required field, translating absence into ParseError.
inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw ParseError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

inline int int_field(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_number_integer()) throw ParseError(std::string("field \"") + name + "\" is not an integer");
  return f.get<int>();
}

inline std::vector<double> finite_array(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_array()) throw ParseError(std::string("field \"") + name + "\" is not an array");
  std::vector<double> out;
  out.reserve(f.size());
  for (const Json& entry : f) {
    if (!entry.is_number()) throw ParseError(std::string("field \"") + name + "\" has a non-numeric entry");
    double x = entry.get<double>();
    if (!std::isfinite(x)) throw ParseError(std::string("field \"") + name + "\" has a non-finite entry");
    out.push_back(x);
  }
  return out;
}

// Real/imaginary arrays for a vector of known length.
inline ComplexVector complex_parts(const Json& j, int length) {
  std::vector<double> re = finite_array(j, "re");
  std::vector<double> im = finite_array(j, "im");
  if (static_cast<int>(re.size()) != length || static_cast<int>(im.size()) != length)
    throw ParseError("re/im arrays have the wrong length");
  ComplexVector v(length);
  for (int k = 0; k < length; ++k) v(k) = Complex(re[k], im[k]);
  return v;
}

}  // namespace detail

inline Json to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = static_cast<int>(m.rows());
  j["cols"] = static_cast<int>(m.cols());
  Json re = Json::array(), im = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  const int rows = detail::int_field(j, "rows");
  const int cols = detail::int_field(j, "cols");
  if (rows < 0 || cols < 0) throw ParseError("matrix dimensions are negative");
  ComplexVector flat = detail::complex_parts(j, rows * cols);
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = flat(r * cols + c);
  return m;
}

inline Json to_json(const BlockAlgebra& A) { return Json{{"dims", A.dims}}; }

inline BlockAlgebra algebra_from_json(const Json& j) {
  const Json& dims = detail::field(j, "dims");
  if (!dims.is_array() || dims.empty()) throw ParseError("\"dims\" must be a non-empty array");
  BlockAlgebra A;
  for (const Json& d : dims) {
    if (!d.is_number_integer() || d.get<int>() < 1)
      throw ParseError("block dimensions must be positive integers");
    A.dims.push_back(d.get<int>());
  }
  return A;
}

inline Json to_json(const AlgebraElement& a) {
  Json blocks = Json::array();
  for (const ComplexMatrix& b : a.blocks) blocks.push_back(to_json(b));
  return Json{{"algebra", to_json(a.algebra)}, {"blocks", std::move(blocks)}};
}

inline AlgebraElement element_from_json(const Json& j) {
  BlockAlgebra A = algebra_from_json(detail::field(j, "algebra"));
  const Json& blocks = detail::field(j, "blocks");
  if (!blocks.is_array() || static_cast<int>(blocks.size()) != A.block_count())
    throw ParseError("element block count does not match the algebra");
  AlgebraElement a = zero_element(A);
  for (int b = 0; b < A.block_count(); ++b) {
    a.blocks[b] = matrix_from_json(blocks[b]);
    if (a.blocks[b].rows() != A.dims[b] || a.blocks[b].cols() != A.dims[b])
      throw ParseError("element block " + std::to_string(b) + " has the wrong shape");
  }
  return a;
}

// Pure states are written self-contained; decoding also accepts the minimal
// {"block", "re", "im"} form when the caller supplies the algebra.
inline Json to_json(const PureState& w) {
  Json j;
  j["algebra"] = to_json(w.algebra);
  j["block"] = w.block;
  Json re = Json::array(), im = Json::array();
  for (int k = 0; k < w.psi.size(); ++k) {
    re.push_back(w.psi(k).real());
    im.push_back(w.psi(k).imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

inline PureState pure_state_from_json(const Json& j, const BlockAlgebra& A) {
  PureState w;
  w.algebra = A;
  w.block = detail::int_field(j, "block");
  if (w.block < 0 || w.block >= A.block_count())
    throw ParseError("pure state block index out of range");
  w.psi = detail::complex_parts(j, A.dims[w.block]);
  try {
    validate_pure_state(w);
  } catch (const Error& e) {
    throw ParseError(std::string("decoded pure state is invalid: ") + e.what());
  }
  return w;
}

inline PureState pure_state_from_json(const Json& j) {
  return pure_state_from_json(j, algebra_from_json(detail::field(j, "algebra")));
}

// Mixed states are a block list; the algebra is recovered from block shapes.
inline Json to_json(const State& s) {
  Json blocks = Json::array();
  for (const ComplexMatrix& r : s.rho) blocks.push_back(to_json(r));
  return Json{{"blocks", std::move(blocks)}};
}

inline State state_from_json(const Json& j) {
  const Json& blocks = detail::field(j, "blocks");
  if (!blocks.is_array() || blocks.empty()) throw ParseError("state needs at least one block");
  State s;
  for (const Json& b : blocks) {
    ComplexMatrix r = matrix_from_json(b);
    if (r.rows() != r.cols()) throw ParseError("state blocks must be square");
    s.algebra.dims.push_back(static_cast<int>(r.rows()));
    s.rho.push_back(std::move(r));
  }
  try {
    validate_state(s);
  } catch (const Error& e) {
    throw ParseError(std::string("decoded state is invalid: ") + e.what());
  }
  return s;
}

// Jordan maps store the real coordinate matrix as one array per row.
inline Json to_json(const JordanMap& J) {
  Json rows = Json::array();
  for (int r = 0; r < J.matrix.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < J.matrix.cols(); ++c) row.push_back(J.matrix(r, c));
    rows.push_back(std::move(row));
  }
  return Json{{"algebra", to_json(J.algebra)}, {"matrix", std::move(rows)}};
}

inline JordanMap jordan_from_json(const Json& j) {
  BlockAlgebra A = algebra_from_json(detail::field(j, "algebra"));
  const int d = A.sa_dim();
  const Json& rows = detail::field(j, "matrix");
  if (!rows.is_array() || static_cast<int>(rows.size()) != d)
    throw ParseError("coordinate matrix must have one row per basis element");
  RealMatrix M(d, d);
  for (int r = 0; r < d; ++r) {
    const Json& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw ParseError("coordinate matrix rows must have length " + std::to_string(d));
    for (int c = 0; c < d; ++c) {
      if (!row[c].is_number()) throw ParseError("coordinate matrix has a non-numeric entry");
      double x = row[c].get<double>();
      if (!std::isfinite(x)) throw ParseError("coordinate matrix has a non-finite entry");
      M(r, c) = x;
    }
  }
  return JordanMap{std::move(A), std::move(M)};
}

inline constexpr const char* kPhaseConvention = "first-entry-positive";

inline Json to_json(const ImplementingOperator& op) {
  return Json{{"block", op.block},
              {"u", to_json(op.u)},
              {"antiunitary", op.antiunitary},
              {"phase_convention", kPhaseConvention}};
}

inline ImplementingOperator operator_from_json(const Json& j) {
  ImplementingOperator op;
  op.block = detail::int_field(j, "block");
  op.u = matrix_from_json(detail::field(j, "u"));
  if (op.u.rows() != op.u.cols()) throw ParseError("implementing operator must be square");
  const Json& flag = detail::field(j, "antiunitary");
  if (!flag.is_boolean()) throw ParseError("\"antiunitary\" must be a boolean");
  op.antiunitary = flag.get<bool>();
  if (detail::field(j, "phase_convention") != kPhaseConvention)
    throw ParseError("unknown phase convention");
  return op;
}

// Canonical serialized form of a pure-state symmetry: a block permutation
// plus one (unitary, antiunitary flag) pair per block.
inline Json oracle_spec_to_json(const BlockAlgebra& A, const BlockMapSpec& spec) {
  Json blocks = Json::array();
  for (size_t b = 0; b < spec.us.size(); ++b)
    blocks.push_back(Json{{"u", to_json(spec.us[b])}, {"antiunitary", bool(spec.anti[b])}});
  return Json{{"algebra", to_json(A)},
              {"sigma", spec.sigma},
              {"blocks", std::move(blocks)}};
}

inline std::pair<BlockAlgebra, BlockMapSpec> oracle_spec_from_json(const Json& j) {
  BlockAlgebra A = algebra_from_json(detail::field(j, "algebra"));
  const Json& sigma = detail::field(j, "sigma");
  const Json& blocks = detail::field(j, "blocks");
  if (!sigma.is_array() || static_cast<int>(sigma.size()) != A.block_count())
    throw ParseError("\"sigma\" must list one target block per block");
  if (!blocks.is_array() || static_cast<int>(blocks.size()) != A.block_count())
    throw ParseError("\"blocks\" must list one operator per block");
  BlockMapSpec spec;
  for (const Json& s : sigma) {
    if (!s.is_number_integer()) throw ParseError("\"sigma\" entries must be integers");
    spec.sigma.push_back(s.get<int>());
  }
  for (const Json& b : blocks) {
    spec.us.push_back(matrix_from_json(detail::field(b, "u")));
    const Json& flag = detail::field(b, "antiunitary");
    if (!flag.is_boolean()) throw ParseError("\"antiunitary\" must be a boolean");
    spec.anti.push_back(flag.get<bool>());
  }
  try {
    validate_block_spec(A, spec);
  } catch (const Error& e) {
    throw ParseError(std::string("decoded symmetry spec is invalid: ") + e.what());
  }
  return {std::move(A), std::move(spec)};
}

namespace detail {

// Central projections are block indicator sums; report one 0/1 per block.
inline Json block_indicators(const AlgebraElement& p) {
  Json out = Json::array();
  for (int b = 0; b < p.algebra.block_count(); ++b)
    out.push_back(p.blocks[b].trace().real() > 0.5 * p.algebra.dims[b] ? 1 : 0);
  return out;
}

}  // namespace detail

inline Json to_json(const ThomsenDecomposition& dec) {
  Json labels = Json::array();
  for (BlockLabel label : dec.block_labels) labels.push_back(to_string(label));
  Json residuals = Json::object();
  for (const auto& [key, value] : dec.residuals) residuals[key] = value;
  return Json{{"p1_blocks", detail::block_indicators(dec.p1)},
              {"p2_blocks", detail::block_indicators(dec.p2)},
              {"p3_blocks", detail::block_indicators(dec.p3)},
              {"labels", std::move(labels)},
              {"residuals", std::move(residuals)}};
}

inline Json to_json(const OrientationReport& report) {
  Json labels = Json::array();
  for (BlockLabel label : report.block_labels) labels.push_back(to_string(label));
  Json checks = Json::array();
  for (const CornerCheck& c : report.corner_checks)
    checks.push_back(Json{{"block", c.block}, {"det", c.det}, {"residual", c.residual}});
  return Json{{"verdict", to_string(report.verdict)},
              {"block_labels", std::move(labels)},
              {"corner_checks", std::move(checks)}};
}

}  // namespace blocksym
