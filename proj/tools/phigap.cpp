// phigap: command-line front end.
//
// Exit codes: 0 success, 1 regression failure, 2 input error, 3 internal
// invariant or theorem violation.

#include "phigap/algebra.hpp"
#include "phigap/errors.hpp"
#include "phigap/families.hpp"
#include "phigap/gap_analysis.hpp"
#include "phigap/igusa_todorov.hpp"
#include "phigap/module_expr.hpp"
#include "phigap/quiver.hpp"
#include "phigap/quiver_io.hpp"
#include "phigap/regression.hpp"
#include "phigap/report.hpp"
#include "phigap/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef PHIGAP_FIXTURE_DIR
#define PHIGAP_FIXTURE_DIR "fixtures"
#endif

namespace {

using namespace phigap;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_regression = 1;
constexpr int exit_input = 2;
constexpr int exit_violation = 3;

/// PHIGAP_TIME_BUDGET, in seconds.
std::optional<std::chrono::milliseconds> env_time_budget() {
  const char* s = std::getenv("PHIGAP_TIME_BUDGET");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  const double seconds = std::strtod(s, &end);
  if (end == s || *end != '\0' || seconds <= 0)
    throw input_error("PHIGAP_TIME_BUDGET must be a positive number of seconds");
  return std::chrono::milliseconds(static_cast<long long>(seconds * 1000));
}

SearchBounds default_bounds() {
  SearchBounds b;
  b.time_budget = env_time_budget();
  return b;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

struct Options {
  std::string file;
  bool json = false;

  std::string module;
  std::string engine = "def";

  std::optional<std::size_t> max_summands;
  bool no_local_quotients = false;

  std::string op;
  std::string targets;
  std::string keep;
  std::string vertex;
  bool compare = false;

  std::size_t vertices = 4;
  std::size_t arrows = 6;
  bool loops = false;
  std::size_t samples = 10;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "jsonl";

  std::string fixtures = PHIGAP_FIXTURE_DIR;
  bool verbose = false;
};

Engine parse_engine(const std::string& s) {
  if (s == "def" || s == "definition") return Engine::definition;
  if (s == "filt" || s == "filtration") return Engine::filtration;
  if (s == "both") return Engine::both;
  throw input_error("unknown engine '" + s + "' (expected def, filt or both)");
}

int run_analyze(const Options& o) {
  AlgebraContext ctx(load_quiver_file(o.file));
  const AlgebraReport r = analyze(ctx);
  if (o.json)
    std::cout << to_json(ctx.quiver(), r).dump(2) << "\n";
  else
    std::cout << to_text(ctx.quiver(), r);
  return exit_ok;
}

int run_phi(const Options& o) {
  AlgebraContext ctx(load_quiver_file(o.file));
  const Quiver& q = ctx.quiver();
  const Engine engine = parse_engine(o.engine);
  const ModuleClass m = parse_module(q, o.module);
  const PhiComputation p = phi(ctx, m, engine);
  const PsiComputation s = psi(ctx, m, engine);
  if (o.json) {
    json j{{"module", format_module(q, m)},
           {"engine", to_string(engine)},
           {"phi", p.phi},
           {"psi", s.psi},
           {"finite_pd_supremum", s.finite_pd_supremum},
           {"r_sequence", p.r_sequence}};
    j["definition"] = p.definition_value ? json(*p.definition_value) : json();
    j["filtration"] = p.filtration_value ? json(*p.filtration_value) : json();
    std::cout << j.dump(2) << "\n";
    return exit_ok;
  }
  std::cout << "module: " << format_module(q, m) << "\n";
  std::cout << "distinct non-projective summands: " << p.summands.size() << "\n";
  std::cout << "r:";
  for (auto r : p.r_sequence) std::cout << " " << r;
  std::cout << "\n";
  if (p.definition_value) std::cout << "definition engine: " << *p.definition_value << "\n";
  if (p.filtration_value) std::cout << "filtration engine: " << *p.filtration_value << "\n";
  std::cout << "phi: " << p.phi << "\n";
  std::cout << "psi: " << s.psi << "\n";
  return exit_ok;
}

int run_gaps(const Options& o) {
  AlgebraContext ctx(load_quiver_file(o.file));
  SearchBounds b = default_bounds();
  b.max_summands = o.max_summands;
  b.include_local_quotients = !o.no_local_quotients;
  const GapReport r = find_gaps(ctx, b);
  std::cout << to_json(ctx.quiver(), r).dump(2) << "\n";
  return r.gap_theorem_ok ? exit_ok : exit_violation;
}

struct Invariants {
  std::size_t phidim = 0;
  std::size_t psidim_lower = 0;
  std::size_t findim = 0;
};

Invariants invariants_of(const Quiver& q) {
  AlgebraContext ctx(q);
  return {phidim(ctx), psidim_lower(ctx, default_bounds()), findim(q)};
}

int run_transform(const Options& o) {
  const Quiver q = load_quiver_file(o.file);
  Quiver t = q;
  std::optional<VertexId> extension_vertex;
  if (o.op == "opposite") {
    t = opposite_quiver(q);
  } else if (o.op == "separated") {
    t = separated_quiver(q);
  } else if (o.op == "extend") {
    t = one_point_extension(q, split_list(o.targets), o.vertex);
  } else if (o.op == "subquiver") {
    t = successor_closed_subquiver(q, split_list(o.keep));
  } else {
    throw input_error("unknown transform '" + o.op +
                      "' (expected opposite, separated, extend or subquiver)");
  }

  json comparison;
  bool holds = true;
  if (o.compare) {
    const Invariants before = invariants_of(q), after = invariants_of(t);
    std::string relation = "none";
    if (o.op == "opposite") {
      relation = "phidim(op) = phidim";
      holds = after.phidim == before.phidim;
    } else if (o.op == "extend") {
      relation = "phidim <= phidim(ext) <= phidim + 1";
      holds = before.phidim <= after.phidim && after.phidim <= before.phidim + 1;
    } else if (o.op == "subquiver") {
      relation = "phidim(sub) <= phidim";
      holds = after.phidim <= before.phidim;
    }
    auto inv = [](const Invariants& i) {
      return json{{"phidim", i.phidim}, {"psidim_lower", i.psidim_lower}, {"findim", i.findim}};
    };
    comparison = {{"before", inv(before)},
                  {"after", inv(after)},
                  {"relation", relation},
                  {"holds", holds}};
  }

  if (o.json) {
    if (o.compare)
      std::cout << json{{"quiver", to_json(t)}, {"comparison", comparison}}.dump(2) << "\n";
    else
      std::cout << to_json(t).dump(2) << "\n";
  } else {
    std::cout << serialize_quiver(t);
    if (o.compare) {
      const auto& b = comparison["before"];
      const auto& a = comparison["after"];
      std::cout << "# before: phidim " << b["phidim"] << ", psidim >= " << b["psidim_lower"]
                << ", findim " << b["findim"] << "\n";
      std::cout << "# after:  phidim " << a["phidim"] << ", psidim >= " << a["psidim_lower"]
                << ", findim " << a["findim"] << "\n";
      std::cout << "# " << comparison["relation"].get<std::string>() << ": "
                << (holds ? "holds" : "VIOLATED") << "\n";
    }
  }
  return holds ? exit_ok : exit_violation;
}

struct SampleRecord {
  json record;
  bool violation = false;
};

SampleRecord explore_sample(const families::RandomQuiverConfig& cfg, std::uint64_t seed,
                            std::size_t index, const SearchBounds& bounds) {
  const std::uint64_t sub = families::sample_seed(seed, index);
  const Quiver q = families::random_quiver(cfg, sub);
  AlgebraContext ctx(q);
  const AlgebraReport r = analyze(ctx);
  const AlgebraContext op(opposite_quiver(q));
  const std::size_t phidim_op = phidim(op);
  SearchBounds b2 = bounds;
  b2.stop_at_phidim = true;
  const PartialDimension pd2 = phidim_partial(ctx, 2, b2);
  const GapReport gaps = find_gaps(ctx, bounds);

  bool witnesses = true;
  std::string witness_error;
  if (r.phidim > 0) {
    try {
      boundary_witnesses(ctx, bounds);
    } catch (const invariant_violation& e) {
      witnesses = false;
      witness_error = e.what();
    }
  }
  json checks{{"phidim_le_n", r.phidim <= q.size()},
              {"self_injective_iff_phidim_zero", r.self_injective == (r.phidim == 0)},
              {"self_injective_iff_phidim2_zero", r.self_injective == (pd2.value == 0)},
              {"boundary_witnesses", witnesses},
              {"phidim_op_equal", phidim_op == r.phidim},
              {"gap_theorem", gaps.gap_theorem_ok}};
  bool violation = false;
  for (const auto& [k, v] : checks.items()) violation = violation || !v.get<bool>();

  json rec{{"index", index},
           {"seed", sub},
           {"quiver", serialize_quiver(q)},
           {"vertices", q.size()},
           {"arrows", q.arrows().size()},
           {"connected", r.warnings.empty()},
           {"self_injective", r.self_injective},
           {"gldim", detail::dimension_json(r.gldim)},
           {"findim", r.findim},
           {"phidim", r.phidim},
           {"phidim_op", phidim_op},
           {"phidim2", pd2.value},
           {"gaps", gaps.gaps()},
           {"exhaustive", gaps.exhaustive},
           {"checks", std::move(checks)},
           {"violation", violation}};
  if (!witness_error.empty()) rec["error"] = witness_error;
  return {std::move(rec), violation};
}

std::string csv_row(const json& r) {
  std::ostringstream os;
  std::string gaps;
  for (const auto& g : r["gaps"]) gaps += (gaps.empty() ? "" : ";") + g.dump();
  std::string failed;
  for (const auto& [k, v] : r["checks"].items())
    if (!v.get<bool>()) failed += (failed.empty() ? "" : ";") + k;
  os << r["index"] << "," << r["seed"] << "," << r["vertices"] << "," << r["arrows"] << ","
     << (r["connected"].get<bool>() ? 1 : 0) << "," << (r["self_injective"].get<bool>() ? 1 : 0)
     << "," << (r["gldim"].is_string() ? r["gldim"].get<std::string>() : r["gldim"].dump())
     << "," << r["findim"] << "," << r["phidim"] << "," << r["phidim_op"] << ","
     << r["phidim2"] << "," << gaps << "," << (r["exhaustive"].get<bool>() ? 1 : 0) << ","
     << failed;
  return os.str();
}

int run_explore(const Options& o) {
  if (o.format != "jsonl" && o.format != "csv")
    throw input_error("unknown format '" + o.format + "' (expected jsonl or csv)");
  families::RandomQuiverConfig cfg{o.vertices, o.arrows, o.loops};
  const SearchBounds bounds = default_bounds();

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary | std::ios::trunc);
    if (!file) throw input_error("cannot write " + o.out);
  }
  std::ostream& os = o.out.empty() ? std::cout : file;
  if (o.format == "csv")
    os << "index,seed,vertices,arrows,connected,self_injective,gldim,findim,phidim,phidim_op,"
          "phidim2,gaps,exhaustive,failed_checks\n";

  std::size_t violations = 0;
  for (std::size_t i = 0; i < o.samples; ++i) {
    const SampleRecord s = explore_sample(cfg, o.seed, i, bounds);
    violations += s.violation ? 1 : 0;
    if (o.format == "jsonl")
      os << s.record.dump() << "\n";
    else
      os << csv_row(s.record) << "\n";
  }
  os.flush();
  if (violations) {
    std::cerr << "explore: " << violations << " sample(s) violate a property check\n";
    return exit_violation;
  }
  return exit_ok;
}

int run_regress(const Options& o) {
  const auto fixtures = load_fixtures(o.fixtures);
  const RegressionSummary s = run_regression(fixtures);
  std::string current;
  for (const auto& r : s.results) {
    if (!o.verbose && r.passed) continue;
    std::cout << (r.passed ? "ok   " : "FAIL ") << r.fixture << ": " << r.label << " ["
              << r.source << "] expected " << r.expected.dump() << ", got "
              << r.actual.dump();
    if (!r.passed && !r.note.empty()) std::cout << " (" << r.note << ")";
    std::cout << "\n";
  }
  std::cout << fixtures.size() << " fixtures, " << s.results.size() << " expectations, "
            << s.failures("reference") << " reference failures, " << s.failures("trivial")
            << " trivial failures, " << s.failures("derived") << " derived failures\n";
  return s.reference_ok() ? exit_ok : exit_regression;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Igusa-Todorov phi/psi toolkit for radical square zero algebras"};
  app.require_subcommand(1);
  Options o;

  auto* analyze_cmd = app.add_subcommand("analyze", "invariants of kQ/J^2 for a quiver file");
  analyze_cmd->add_option("file", o.file, "quiver file (DSL or JSON)")->required();
  analyze_cmd->add_flag("--json", o.json, "JSON output");

  auto* phi_cmd = app.add_subcommand("phi", "phi and psi of a module expression");
  phi_cmd->add_option("file", o.file, "quiver file")->required();
  phi_cmd->add_option("-m,--module", o.module, "module expression, e.g. 'S(2)+P(1)/[2]'")
      ->required();
  phi_cmd->add_option("--engine", o.engine, "def, filt or both");
  phi_cmd->add_flag("--json", o.json, "JSON output");

  auto* gaps_cmd = app.add_subcommand("gaps", "admissible phi values and candidate gaps");
  gaps_cmd->add_option("file", o.file, "quiver file")->required();
  gaps_cmd->add_option("--max-summands", o.max_summands, "largest number of summands searched");
  gaps_cmd->add_flag("--no-local-quotients", o.no_local_quotients, "search semisimple sums only");

  auto* transform_cmd = app.add_subcommand("transform", "apply a quiver transform");
  transform_cmd->add_option("file", o.file, "quiver file")->required();
  transform_cmd->add_option("--op", o.op, "opposite, separated, extend or subquiver")->required();
  transform_cmd->add_option("--targets", o.targets, "extend: comma-separated arrow targets");
  transform_cmd->add_option("--vertex", o.vertex, "extend: name of the new vertex");
  transform_cmd->add_option("--keep", o.keep, "subquiver: comma-separated vertices to keep");
  transform_cmd->add_flag("--compare", o.compare, "compare invariants before and after");
  transform_cmd->add_flag("--json", o.json, "JSON output");

  auto* explore_cmd = app.add_subcommand("explore", "seeded random quivers with property checks");
  explore_cmd->add_option("--vertices", o.vertices, "vertices per quiver")->required();
  explore_cmd->add_option("--arrows", o.arrows, "arrows per quiver")->required();
  explore_cmd->add_flag("--loops", o.loops, "allow loops");
  explore_cmd->add_option("--samples", o.samples, "number of quivers");
  explore_cmd->add_option("--seed", o.seed, "64-bit seed");
  explore_cmd->add_option("--out", o.out, "output file (default stdout)");
  explore_cmd->add_option("--format", o.format, "jsonl or csv");

  auto* regress_cmd = app.add_subcommand("regress", "check the bundled fixtures");
  regress_cmd->add_option("--fixtures", o.fixtures, "fixture directory");
  regress_cmd->add_flag("-v,--verbose", o.verbose, "print passing expectations too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }

  try {
    if (*analyze_cmd) return run_analyze(o);
    if (*phi_cmd) return run_phi(o);
    if (*gaps_cmd) return run_gaps(o);
    if (*transform_cmd) return run_transform(o);
    if (*explore_cmd) return run_explore(o);
    if (*regress_cmd) return run_regress(o);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const invariant_violation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_violation;
  }
  return exit_input;
}
