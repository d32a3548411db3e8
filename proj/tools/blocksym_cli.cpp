// Command-line front end: load algebras, states, and maps from JSON files,
// run the checks, conversions, decompositions, extractions, and the
// orientation classifier, generate seeded random objects, and run the
// acceptance suite. Reports are deterministic functions of the inputs and
// flags. Exit codes: 0 = pass, 1 = a mathematical check failed, 2 = input
// error.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blocksym/blocksym.hpp"

namespace {

using namespace blocksym;

struct CliConfig {
  std::uint64_t seed = kDefaultSeed;
  int trials = 200;
  std::string output;  // empty = standard output
  bool json = false;
  Tolerances tol;
};

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json load_document(const std::string& path) {
  try {
    return parse_json_text(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void emit(const CliConfig& config, const std::string& text) {
  if (config.output.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(config.output, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + config.output);
  out << text;
}

void emit_json(const CliConfig& config, const Json& doc) {
  emit(config, doc.dump(2) + "\n");
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// ---- tp: the three transition-probability formulas on a state pair -------

int cmd_tp(const std::string& path_a, const std::string& path_b, const CliConfig& config) {
  PureState w = pure_state_from_json(load_document(path_a));
  PureState wp = pure_state_from_json(load_document(path_b));
  if (w.algebra != wp.algebra)
    throw AlgebraMismatch("the two states live on different algebras");

  const double a = tp_amplitude(w, wp);
  const double n = tp_norm(w, wp);
  const double k = tp_carrier(w, wp);
  const double dev = std::max({std::abs(a - n), std::abs(a - k), std::abs(n - k)});
  const bool passed = dev < config.tol.tp_equivalence;

  if (config.json) {
    emit_json(config, Json{{"tp_amplitude", a},
                           {"tp_norm", n},
                           {"tp_carrier", k},
                           {"max_deviation", dev},
                           {"passed", passed}});
  } else {
    std::string text;
    text += "tp_amplitude  " + num(a) + "\n";
    text += "tp_norm       " + num(n) + "\n";
    text += "tp_carrier    " + num(k) + "\n";
    text += "max deviation " + num(dev) + (passed ? "  (pass)\n" : "  (FAIL)\n");
    emit(config, text);
  }
  return passed ? 0 : 1;
}

// ---- check-jordan: symmetry validation plus the defect identity battery --

int cmd_check_jordan(const std::string& path, const CliConfig& config) {
  JordanMap J = jordan_from_json(load_document(path));
  JordanCheckReport check = is_jordan_symmetry(J, config.trials, config.seed);
  HersteinReport identities = check_herstein_identities(J, config.trials, config.seed);
  const bool passed = check.passed && identities.passed;

  if (config.json) {
    Json entries = Json::array();
    for (const HersteinEntry& e : identities.entries)
      entries.push_back(Json{{"name", e.name},
                             {"max_residual", e.max_residual},
                             {"passed", e.passed},
                             {"witness_trial", e.witness_trial}});
    emit_json(config, Json{{"jordan_symmetry", check.passed},
                           {"max_basis_residual", check.max_basis_residual},
                           {"detail", check.detail},
                           {"identities", entries},
                           {"passed", passed}});
  } else {
    std::string text;
    text += std::string("jordan symmetry: ") + (check.passed ? "pass" : "FAIL") +
            " (max basis residual " + num(check.max_basis_residual) + ")\n";
    if (!check.passed && !check.detail.empty()) text += "  " + check.detail + "\n";
    for (const HersteinEntry& e : identities.entries) {
      text += "identity " + e.name + ": " + (e.passed ? "pass" : "FAIL") +
              " (max residual " + num(e.max_residual) + ")";
      if (!e.passed) text += " witness trial " + std::to_string(e.witness_trial);
      text += "\n";
    }
    text += passed ? "all checks passed\n" : "some checks FAILED\n";
    emit(config, text);
  }
  return passed ? 0 : 1;
}

// ---- decompose: central projections and block labels ----------------------

int cmd_decompose(const std::string& path, const CliConfig& config) {
  ValidatedJordan vj(jordan_from_json(load_document(path)));
  emit_json(config, to_json(thomsen_decompose(vj)));
  return 0;
}

// ---- extract: implementing operator on one block --------------------------

int cmd_extract(const std::string& path, int block, const std::string& kind_flag,
                const CliConfig& config) {
  ValidatedJordan vj(jordan_from_json(load_document(path)));
  MapKind kind;
  if (kind_flag == "hom") {
    kind = MapKind::HOM;
  } else if (kind_flag == "anti") {
    kind = MapKind::ANTI;
  } else {
    ThomsenDecomposition dec = thomsen_decompose(vj);
    kind = classify_block(dec, block) == BlockLabel::ANTI ? MapKind::ANTI : MapKind::HOM;
  }
  ImplementingOperator op = extract_unitary(vj, block, kind);
  ImplementationReport rep = verify_implementation(vj.map(), op);
  emit_json(config, Json{{"operator", to_json(op)},
                         {"verification",
                          Json{{"passed", rep.passed},
                               {"max_residual", rep.max_residual},
                               {"residuals", rep.residuals}}}});
  return rep.passed ? 0 : 1;
}

// ---- reconstruct: canonical symmetry spec -> Jordan map -------------------

int cmd_reconstruct(const std::string& path, const CliConfig& config) {
  auto [algebra, spec] = oracle_spec_from_json(load_document(path));
  // From here on the spec is only a black-box pure-state action.
  WignerOracle oracle = oracle_from_spec(algebra, spec);
  ReconstructionOptions options;
  options.seed = config.seed;
  options.precheck_trials = std::max(10, config.trials / 5);
  options.verify_samples = std::max(10, config.trials / 5);
  ReconstructionReport report;
  JordanMap J = jordan_from_wigner(oracle, algebra, report, options);
  emit_json(config, Json{{"jordan", to_json(J)},
                         {"sigma", report.sigma},
                         {"anti", report.anti},
                         {"round_trip_residual", report.max_density_deviation},
                         {"verified", report.verified}});
  return report.verified ? 0 : 1;
}

// ---- orientation: classification report -----------------------------------

int cmd_orientation(const std::string& path, const CliConfig& config) {
  ValidatedJordan vj(jordan_from_json(load_document(path)));
  emit_json(config, to_json(orientation_of(vj)));
  return 0;
}

// ---- random: seeded generators --------------------------------------------

int cmd_random(const std::string& kind, const std::vector<int>& dims,
               const CliConfig& config) {
  for (int d : dims)
    if (d < 1) throw ParseError("block dimensions must be positive");
  BlockAlgebra A{dims};
  Rng rng(config.seed);
  if (kind == "jordan") {
    emit_json(config, to_json(jordan_from_blocks(A, random_block_spec(rng, A))));
  } else if (kind == "wigner") {
    emit_json(config, oracle_spec_to_json(A, random_block_spec(rng, A)));
  } else {
    emit_json(config, to_json(random_pure_state(rng, A)));
  }
  return 0;
}

// ---- selftest: the acceptance suite ----------------------------------------

int cmd_selftest(const CliConfig& config) {
  SelftestConfig sc;
  sc.seed = config.seed;
  sc.trials = config.trials;
  sc.tol = config.tol;
  SelftestReport report = run_acceptance_criteria(sc);

  if (config.json) {
    Json criteria = Json::array();
    for (const CriterionResult& r : report.results)
      criteria.push_back(Json{{"index", r.index},
                              {"name", r.name},
                              {"passed", r.passed},
                              {"observed", r.observed},
                              {"bound", r.bound},
                              {"detail", r.detail}});
    emit_json(config, Json{{"criteria", criteria}, {"all_passed", report.all_passed}});
  } else {
    emit(config, format_report(report));
  }
  return report.all_passed ? 0 : 1;
}

bool is_input_error(const Error& e) {
  return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const AlgebraMismatch*>(&e) ||
         dynamic_cast<const DimensionMismatch*>(&e) ||
         dynamic_cast<const IndexOutOfRange*>(&e);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional block-algebra symmetry toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig config;
  app.add_option("--seed", config.seed, "random seed for every generator");
  app.add_option("--trials", config.trials, "sampling density for randomized checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", config.output, "write the report to this file");
  app.add_flag("--json", config.json, "machine-readable JSON report");
  for (const auto& [name, member] : tolerance_registry())
    app.add_option("--tol." + name, config.tol.*member, "tolerance override");

  int exit_code = 0;

  std::string state_a, state_b;
  CLI::App* tp = app.add_subcommand("tp", "transition probabilities of two pure states");
  tp->add_option("stateA", state_a, "pure state JSON file")->required();
  tp->add_option("stateB", state_b, "pure state JSON file")->required();
  tp->callback([&] { exit_code = cmd_tp(state_a, state_b, config); });

  std::string map_path;
  CLI::App* check = app.add_subcommand("check-jordan", "validate a Jordan symmetry");
  check->add_option("map", map_path, "Jordan map JSON file")->required();
  check->callback([&] { exit_code = cmd_check_jordan(map_path, config); });

  std::string dec_path;
  CLI::App* decompose = app.add_subcommand("decompose", "central projection decomposition");
  decompose->add_option("map", dec_path, "Jordan map JSON file")->required();
  decompose->callback([&] { exit_code = cmd_decompose(dec_path, config); });

  std::string ext_path, ext_kind = "auto";
  int ext_block = 0;
  CLI::App* extract = app.add_subcommand("extract", "implementing operator on one block");
  extract->add_option("map", ext_path, "Jordan map JSON file")->required();
  extract->add_option("--block", ext_block, "block index")->required();
  extract->add_option("--kind", ext_kind, "hom, anti, or auto (classify first)")
      ->check(CLI::IsMember({"hom", "anti", "auto"}));
  extract->callback([&] { exit_code = cmd_extract(ext_path, ext_block, ext_kind, config); });

  std::string rec_path;
  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "Jordan map from a canonical symmetry spec");
  reconstruct->add_option("oracle_spec", rec_path, "symmetry spec JSON file")->required();
  reconstruct->callback([&] { exit_code = cmd_reconstruct(rec_path, config); });

  std::string ori_path;
  CLI::App* orientation = app.add_subcommand("orientation", "orientation classification");
  orientation->add_option("map", ori_path, "Jordan map JSON file")->required();
  orientation->callback([&] { exit_code = cmd_orientation(ori_path, config); });

  std::string rnd_kind;
  std::vector<int> rnd_dims;
  CLI::App* random = app.add_subcommand("random", "seeded random objects");
  random->add_option("--kind", rnd_kind, "jordan, wigner, or state")
      ->required()
      ->check(CLI::IsMember({"jordan", "wigner", "state"}));
  random->add_option("--dims", rnd_dims, "block dimensions, e.g. --dims 2 3 1")->required();
  random->callback([&] { exit_code = cmd_random(rnd_kind, rnd_dims, config); });

  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->callback([&] { exit_code = cmd_selftest(config); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return is_input_error(e) ? 2 : 1;
  }
  return exit_code;
}
