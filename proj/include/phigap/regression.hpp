#pragma once

// Fixture-driven regression checks.
//
// A fixture is a JSON file naming a quiver file and a list of expectations.
// Each expectation has a "check" kind, an "expected" value and a "source":
// "reference" for published values, "trivial" for immediate ones and
// "derived" for values frozen from an independent computation. A run fails
// only when a "reference" expectation fails.

#include "phigap/algebra.hpp"
#include "phigap/errors.hpp"
#include "phigap/gap_analysis.hpp"
#include "phigap/igusa_todorov.hpp"
#include "phigap/module_expr.hpp"
#include "phigap/quiver.hpp"
#include "phigap/quiver_io.hpp"
#include "phigap/search.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace phigap {

struct Expectation {
  std::string check;
  nlohmann::json params; // the whole expectation object
  nlohmann::json expected;
  std::string source;
  std::string note;
};

struct RegressionFixture {
  std::string id;
  std::string description;
  std::filesystem::path quiver_path;
  Quiver quiver;
  std::vector<Expectation> expectations;
};

struct ExpectationResult {
  std::string fixture;
  std::string label;
  std::string source;
  bool passed = false;
  nlohmann::json expected;
  nlohmann::json actual;
  std::string note;
};

struct RegressionSummary {
  std::vector<ExpectationResult> results;

  std::size_t failures(std::string_view source) const {
    return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [&](const auto& r) {
      return !r.passed && r.source == source;
    }));
  }
  bool reference_ok() const { return failures("reference") == 0; }
};

inline std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw input_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Quiver load_quiver_file(const std::filesystem::path& p) {
  try {
    return parse_quiver(read_text_file(p));
  } catch (const parse_error& e) {
    throw parse_error(p.filename().string() + ": " + e.message(), e.line(), e.column());
  }
}

inline RegressionFixture load_fixture(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw input_error(path.filename().string() + ": " + e.what());
  }
  try {
    const auto quiver_path = path.parent_path() / j.at("quiver").get<std::string>();
    RegressionFixture f{j.at("id").get<std::string>(), j.value("description", ""), quiver_path,
                        load_quiver_file(quiver_path), {}};
    for (const auto& e : j.at("expectations")) {
      const std::string source = e.at("source").get<std::string>();
      if (source != "reference" && source != "trivial" && source != "derived")
        throw input_error(path.filename().string() + ": unknown source '" + source + "'");
      f.expectations.push_back({e.at("check").get<std::string>(), e, e.at("expected"), source,
                                e.value("note", "")});
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(path.filename().string() + ": " + e.what());
  }
}

/// All *.json fixtures in dir, sorted by file name.
inline std::vector<RegressionFixture> load_fixtures(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw input_error("fixture directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<RegressionFixture> out;
  for (const auto& p : files) out.push_back(load_fixture(p));
  return out;
}

namespace detail {

class FixtureEvaluator {
public:
  FixtureEvaluator(const RegressionFixture& f, const std::vector<RegressionFixture>& all)
      : fixture_(f), all_(all), ctx_(f.quiver) {}

  nlohmann::json evaluate(const Expectation& e) {
    const Quiver& q = fixture_.quiver;
    const auto& p = e.params;
    if (e.check == "phidim") return phidim(ctx_);
    if (e.check == "findim") return findim(q);
    if (e.check == "gldim") {
      const auto d = gldim(q);
      return d ? nlohmann::json(*d) : nlohmann::json("inf");
    }
    if (e.check == "self_injective") return ctx_.nakayama().self_injective;
    if (e.check == "kernel_dims") return ctx_.filtration().dims;
    if (e.check == "phi")
      return phi(ctx_, parse_module(q, p.at("module").get<std::string>()), Engine::both).phi;
    if (e.check == "psi")
      return psi(ctx_, parse_module(q, p.at("module").get<std::string>()), Engine::both).psi;
    if (e.check == "phidim_partial") {
      SearchBounds b;
      b.stop_at_phidim = true;
      return phidim_partial(ctx_, p.at("l").get<std::size_t>(), b).value;
    }
    if (e.check == "psidim_lower") return psidim_lower(ctx_);
    if (e.check == "gaps") return gaps().gaps();
    if (e.check == "status") {
      const auto v = p.at("value").get<std::size_t>();
      const auto& values = gaps().values;
      const auto it = values.find(v);
      return it == values.end() ? nlohmann::json() : nlohmann::json(to_string(it->second.status));
    }
    if (e.check == "certificate") {
      for (auto c : gaps().certificates)
        if (to_string(c) == e.expected.get<std::string>()) return to_string(c);
      return nullptr;
    }
    if (e.check == "opposite_of") {
      const std::string other = p.at("fixture").get<std::string>();
      for (const auto& f : all_)
        if (f.id == other) return same_structure(opposite_quiver(f.quiver), q);
      throw input_error(fixture_.id + ": unknown fixture '" + other + "'");
    }
    throw input_error(fixture_.id + ": unknown check '" + e.check + "'");
  }

private:
  const GapReport& gaps() {
    if (!gaps_) gaps_ = find_gaps(ctx_);
    return *gaps_;
  }

  const RegressionFixture& fixture_;
  const std::vector<RegressionFixture>& all_;
  AlgebraContext ctx_;
  std::optional<GapReport> gaps_;
};

inline std::string label(const Expectation& e) {
  std::string s = e.check;
  if (e.params.contains("module")) s += " " + e.params.at("module").get<std::string>();
  if (e.params.contains("l")) s += " l=" + e.params.at("l").dump();
  if (e.params.contains("value")) s += " value=" + e.params.at("value").dump();
  if (e.params.contains("fixture")) s += " " + e.params.at("fixture").get<std::string>();
  return s;
}

} // namespace detail

inline RegressionSummary run_regression(const std::vector<RegressionFixture>& fixtures) {
  RegressionSummary summary;
  for (const auto& f : fixtures) {
    detail::FixtureEvaluator eval(f, fixtures);
    for (const auto& e : f.expectations) {
      ExpectationResult r;
      r.fixture = f.id;
      r.label = detail::label(e);
      r.source = e.source;
      r.expected = e.expected;
      r.note = e.note;
      r.actual = eval.evaluate(e);
      r.passed = r.actual == r.expected;
      summary.results.push_back(std::move(r));
    }
  }
  return summary;
}

} // namespace phigap
