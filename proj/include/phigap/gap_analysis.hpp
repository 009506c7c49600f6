#pragma once

// Admissible values of φ, candidate gaps and no-gap certificates.
//
// A value t ≤ φdim is admissible when some module has φ = t. The search only
// covers sums of simples and local quotients, so an unfound value is
// reported as NOT_FOUND_IN_CLASS, never as a proven gap.

#include "phigap/algebra.hpp"
#include "phigap/errors.hpp"
#include "phigap/igusa_todorov.hpp"
#include "phigap/module_expr.hpp"
#include "phigap/quiver.hpp"
#include "phigap/search.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace phigap {

enum class ValueStatus { admissible, not_found_in_class, certified_admissible_structural };

inline std::string to_string(ValueStatus s) {
  switch (s) {
  case ValueStatus::admissible: return "ADMISSIBLE";
  case ValueStatus::not_found_in_class: return "NOT_FOUND_IN_CLASS";
  case ValueStatus::certified_admissible_structural: return "CERTIFIED_ADMISSIBLE_STRUCTURAL";
  }
  return {};
}

struct ValueEntry {
  ValueStatus status = ValueStatus::not_found_in_class;
  std::optional<ModuleClass> witness;
  std::string reason;
};

enum class Certificate {
  finite_gldim,
  /// outdegree ≥ 6 everywhere plus two vertices sharing two targets
  outdegree_six_shared_targets,
  /// outdegree ≥ 4 with a double arrow at every vertex, same sharing pattern
  outdegree_four_double_arrow,
};

inline std::string to_string(Certificate c) {
  switch (c) {
  case Certificate::finite_gldim: return "FINITE_GLDIM";
  case Certificate::outdegree_six_shared_targets: return "OUTDEGREE_6_SHARED_TARGETS";
  case Certificate::outdegree_four_double_arrow: return "OUTDEGREE_4_DOUBLE_ARROW";
  }
  return {};
}

struct AdmissibleValues {
  std::map<std::size_t, ValueEntry> values;
  bool exhaustive = true;
  bool class_truncated = false;
  std::size_t nodes = 0;
};

struct GapReport {
  std::size_t phidim = 0;
  std::size_t findim = 0;
  std::map<std::size_t, ValueEntry> values;
  std::vector<Certificate> certificates;
  bool gap_theorem_ok = true;
  bool exhaustive = true;
  std::size_t nodes = 0;

  std::vector<std::size_t> gaps() const {
    std::vector<std::size_t> out;
    for (const auto& [k, e] : values)
      if (e.status == ValueStatus::not_found_in_class) out.push_back(k);
    return out;
  }
};

/// Two distinct vertices v, w and two distinct targets a, b with arrows
/// v→a, v→b, w→a, w→b.
inline bool has_shared_target_pattern(const Quiver& q) {
  std::vector<std::set<VertexId>> targets(q.size());
  for (VertexId v = 0; v < q.size(); ++v)
    targets[v].insert(q.successors(v).begin(), q.successors(v).end());
  for (VertexId v = 0; v < q.size(); ++v)
    for (VertexId w = v + 1; w < q.size(); ++w) {
      std::size_t common = 0;
      for (VertexId t : targets[v])
        if (targets[w].count(t) && ++common == 2) return true;
    }
  return false;
}

inline std::vector<Certificate> structural_no_gap_certificates(const Quiver& q) {
  std::vector<Certificate> out;
  if (gldim(q)) out.push_back(Certificate::finite_gldim);
  if (q.size() == 0) return out;
  std::size_t min_out = q.out_degree(0);
  bool doubles = true;
  for (VertexId v = 0; v < q.size(); ++v) {
    min_out = std::min(min_out, q.out_degree(v));
    const auto& s = q.successors(v);
    bool has_double = false;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i] == s[i - 1]) has_double = true;
    doubles = doubles && has_double;
  }
  const bool pattern = has_shared_target_pattern(q);
  if (pattern && min_out >= 6) out.push_back(Certificate::outdegree_six_shared_targets);
  if (pattern && min_out >= 4 && doubles) out.push_back(Certificate::outdegree_four_double_arrow);
  return out;
}

/// Searches for the values in `wanted`, recording the first witness of each
/// in canonical order (fewer summands first, semisimple sums before mixed).
inline AdmissibleValues search_values(const AlgebraContext& ctx, std::set<std::size_t> wanted,
                                      const SearchBounds& bounds) {
  AdmissibleValues out;
  const GeneratorClass gen = generator_classes(ctx.quiver(), bounds);
  out.class_truncated = gen.truncated;
  if (wanted.empty() || gen.atoms.empty()) return out;
  IncrementalPhi inc(ctx, gen.atoms);
  SearchBudget budget(bounds);
  const std::size_t limit = bounds.summand_limit(ctx.quiver());

  // unfound wanted values ≥ φ of the current sum
  auto worth = [&](std::size_t current) { return wanted.lower_bound(current) != wanted.end(); };
  auto on_sum = [&](IncrementalPhi& s) {
    const std::size_t v = s.phi();
    if (wanted.erase(v)) {
      ValueEntry e;
      e.status = ValueStatus::admissible;
      e.witness = module_of(gen.atoms, s.pushed());
      out.values[v] = std::move(e);
    }
    return wanted.empty() ? Visit::stop : Visit::descend;
  };
  auto expand = [&](IncrementalPhi& s) { return worth(s.phi()); };

  std::vector<std::size_t> semisimple(gen.simple_count);
  std::iota(semisimple.begin(), semisimple.end(), 0);
  bool complete = visit_sums(inc, semisimple, limit, budget, on_sum, expand);
  if (complete && !wanted.empty() && gen.atoms.size() > gen.simple_count) {
    std::vector<std::size_t> all(gen.atoms.size());
    std::iota(all.begin(), all.end(), 0);
    complete = visit_sums(inc, all, limit, budget, on_sum, expand);
  }
  out.nodes = budget.nodes();
  out.exhaustive = wanted.empty() || (!budget.exhausted() && !gen.truncated &&
                                      bounds.include_local_quotients &&
                                      limit >= ctx.quiver().size() + 1);
  for (std::size_t v : wanted) out.values[v] = ValueEntry{};
  return out;
}

/// ⊕ of one-step lifts of the middle simples: P(u)/[v] for each S_v ∈ S_D,
/// u the source of the first arrow into v, so that Ω of the sum is ⊕ S_D.
inline ModuleClass lifted_middle_simples(const AlgebraContext& ctx) {
  const Quiver& q = ctx.quiver();
  ModuleClass m;
  for (VertexId v : ctx.partition().other)
    m.add(normalize(q, Atom::local_quotient(q.predecessors(v).front(), {v})));
  return m;
}

inline AdmissibleValues admissible_values(const AlgebraContext& ctx,
                                          const SearchBounds& bounds = {}) {
  const std::size_t top = phidim(ctx);
  std::set<std::size_t> wanted;
  for (std::size_t k = 1; k <= top; ++k) wanted.insert(k);
  std::optional<ModuleClass> top_witness;
  if (top > 1) {
    ModuleClass lift = lifted_middle_simples(ctx);
    if (phi(ctx, lift).phi == top) {
      top_witness = std::move(lift);
      wanted.erase(top);
    }
  }
  AdmissibleValues out = search_values(ctx, std::move(wanted), bounds);
  if (top_witness) out.values[top] = {ValueStatus::admissible, std::move(top_witness), {}};
  ValueEntry zero;
  zero.status = ValueStatus::admissible;
  if (ctx.quiver().size() > 0) zero.witness = ModuleClass::projective(0);
  out.values[0] = std::move(zero);
  return out;
}

struct BoundaryWitnesses {
  ModuleClass phi_one;
  ModuleClass top_minus_one;
};

/// Modules with φ = 1 and φ = φdim − 1. The second is Ω of
/// lifted_middle_simples, i.e. ⊕_{S∈S_D} S.
inline BoundaryWitnesses boundary_witnesses(const AlgebraContext& ctx,
                                            const SearchBounds& bounds = {}) {
  const std::size_t top = phidim(ctx);
  if (top == 0) throw input_error("boundary witnesses need a non-self-injective algebra");
  BoundaryWitnesses out;

  if (top == 1) {
    out.top_minus_one = ModuleClass::projective(0);
  } else {
    const ModuleClass m = middle_simples(ctx);
    if (phi(ctx, m).phi != top - 1)
      throw invariant_violation("no module with phi = phidim - 1 found");
    out.top_minus_one = m;
  }

  const AdmissibleValues found = search_values(ctx, {1}, bounds);
  const auto& e = found.values.at(1);
  if (e.status != ValueStatus::admissible)
    throw invariant_violation("no module with phi = 1 found");
  out.phi_one = *e.witness;
  return out;
}

inline GapReport find_gaps(const AlgebraContext& ctx, const SearchBounds& bounds = {}) {
  GapReport r;
  r.phidim = phidim(ctx);
  r.findim = findim(ctx.quiver());
  r.certificates = structural_no_gap_certificates(ctx.quiver());

  AdmissibleValues found = admissible_values(ctx, bounds);
  r.values = std::move(found.values);
  r.exhaustive = found.exhaustive;
  r.nodes = found.nodes;

  if (r.phidim > 0) {
    // φdim − 1 is always realised by ⊕_{S∈S_D} S; fill it in if the bounded
    // search missed it.
    auto& top = r.values[r.phidim - 1];
    if (top.status != ValueStatus::admissible) {
      const ModuleClass m = r.phidim == 1 ? ModuleClass::projective(0) : middle_simples(ctx);
      if (phi(ctx, m).phi == r.phidim - 1) top = {ValueStatus::admissible, m, {}};
    }
    for (std::size_t k : {std::size_t{1}, r.phidim - 1})
      if (r.values[k].status != ValueStatus::admissible && found.exhaustive)
        throw invariant_violation("no witness for phi = " + std::to_string(k) +
                                  " in an untruncated search");
  }

  if (!r.certificates.empty()) {
    const std::string reason = to_string(r.certificates.front());
    for (auto& [k, e] : r.values)
      if (e.status == ValueStatus::not_found_in_class) {
        e.status = ValueStatus::certified_admissible_structural;
        e.reason = reason;
      }
  }

  for (const auto& [k, e] : r.values)
    if (e.status == ValueStatus::not_found_in_class && !(r.findim < k && k < r.phidim))
      r.gap_theorem_ok = false;
  return r;
}

inline nlohmann::json to_json(const Quiver& q, const GapReport& r) {
  nlohmann::json values = nlohmann::json::object();
  for (const auto& [k, e] : r.values) {
    nlohmann::json entry{{"status", to_string(e.status)}};
    entry["witness"] = e.witness ? nlohmann::json(format_module(q, *e.witness)) : nlohmann::json();
    if (!e.reason.empty()) entry["reason"] = e.reason;
    values[std::to_string(k)] = std::move(entry);
  }
  nlohmann::json certs = nlohmann::json::array();
  for (auto c : r.certificates) certs.push_back(to_string(c));
  return {{"phidim", r.phidim},         {"findim", r.findim},
          {"values", std::move(values)}, {"certificates", std::move(certs)},
          {"gaps", r.gaps()},           {"gap_theorem_ok", r.gap_theorem_ok},
          {"exhaustive", r.exhaustive}};
}

} // namespace phigap
