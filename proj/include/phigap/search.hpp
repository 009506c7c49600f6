#pragma once

// Bounded enumeration of direct sums of generator classes.
//
// The generator class is every non-projective simple plus every local
// quotient P(v)/U with U a nonempty proper sub-multiset of rad P(v). Direct
// sums are visited by increasing number of summands, semisimple sums first,
// each size in lexicographic candidate order. Because φ(M) ≤ φ(M ⊕ N),
// a caller may prune every superset of a sum once it knows no wanted value
// can appear there.

#include "phigap/algebra.hpp"
#include "phigap/igusa_todorov.hpp"
#include "phigap/quiver.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace phigap {

struct SearchBounds {
  /// Largest number of distinct summands; defaults to |Q₀| + 1. Any value
  /// of φ reached in the class is reached by at most dim K₁ + 1 summands:
  /// a basis of the Ω-images, plus one dependent summand when φ = 1.
  std::optional<std::size_t> max_summands;
  bool include_local_quotients = true;
  /// Cap on generated local quotients and on visited sums.
  std::size_t max_support_enumeration = std::size_t{1} << 22;
  std::optional<std::chrono::milliseconds> time_budget;
  /// Stop a maximisation once it reaches φdim (no sum can exceed it).
  bool stop_at_phidim = true;

  std::size_t summand_limit(const Quiver& q) const {
    return max_summands.value_or(q.size() + 1);
  }
};

struct GeneratorClass {
  std::vector<Atom> atoms; // canonical order: simples, then local quotients
  std::size_t simple_count = 0;
  bool truncated = false;
};

inline GeneratorClass generator_classes(const Quiver& q, const SearchBounds& bounds = {}) {
  GeneratorClass g;
  for (VertexId v = 0; v < q.size(); ++v)
    if (!q.is_sink(v)) g.atoms.push_back(Atom::simple(v));
  g.simple_count = g.atoms.size();
  if (!bounds.include_local_quotients) return g;

  std::size_t produced = 0;
  for (VertexId v = 0; v < q.size() && !g.truncated; ++v) {
    // rad P(v) as (target, multiplicity)
    std::vector<std::pair<VertexId, std::size_t>> rad;
    for (VertexId t : radical(q, v)) {
      if (!rad.empty() && rad.back().first == t)
        ++rad.back().second;
      else
        rad.emplace_back(t, 1);
    }
    if (rad.empty()) continue;
    std::vector<std::size_t> take(rad.size(), 0);
    for (;;) {
      // odometer increment
      std::size_t i = 0;
      while (i < take.size() && take[i] == rad[i].second) take[i++] = 0;
      if (i == take.size()) break;
      ++take[i];
      bool full = true;
      std::vector<VertexId> u;
      for (std::size_t j = 0; j < rad.size(); ++j) {
        if (take[j] != rad[j].second) full = false;
        u.insert(u.end(), take[j], rad[j].first);
      }
      if (full) continue;
      if (produced == bounds.max_support_enumeration) {
        g.truncated = true;
        break;
      }
      g.atoms.push_back(Atom::local_quotient(v, std::move(u)));
      ++produced;
    }
  }
  std::sort(g.atoms.begin() + static_cast<std::ptrdiff_t>(g.simple_count), g.atoms.end());
  return g;
}

inline ModuleClass module_of(std::span<const Atom> atoms, std::span<const std::size_t> idx) {
  ModuleClass m;
  for (std::size_t i : idx) m.add(atoms[i]);
  return m;
}

/// Shared node/time accounting for one search.
class SearchBudget {
public:
  explicit SearchBudget(const SearchBounds& b)
      : max_nodes_(b.max_support_enumeration), time_budget_(b.time_budget),
        start_(std::chrono::steady_clock::now()) {}

  /// Charges one visited sum; false once the budget is spent.
  bool charge() {
    if (exhausted_) return false;
    if (++nodes_ > max_nodes_) exhausted_ = true;
    if (time_budget_ && (nodes_ & 0xFFU) == 0 &&
        std::chrono::steady_clock::now() - start_ > *time_budget_)
      exhausted_ = true;
    return !exhausted_;
  }

  bool exhausted() const noexcept { return exhausted_; }
  std::size_t nodes() const noexcept { return nodes_; }

private:
  std::size_t max_nodes_;
  std::optional<std::chrono::milliseconds> time_budget_;
  std::chrono::steady_clock::time_point start_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

enum class Visit { descend, prune, stop };

/// Visits sums of 1..max_size distinct candidates drawn from `pool` (indices
/// into the IncrementalPhi candidates). For each size s the visitor sees the
/// sums of exactly s summands; at smaller depths it is asked via `expand`
/// whether the supersets of the current sum are worth visiting.
///   on_sum(inc) -> Visit    called on every sum of the target size
///   expand(inc) -> bool     called on proper prefixes
/// Returns false when stopped or out of budget.
template <class OnSum, class Expand>
bool visit_sums(IncrementalPhi& inc, std::span<const std::size_t> pool, std::size_t max_size,
                SearchBudget& budget, OnSum&& on_sum, Expand&& expand) {
  max_size = std::min(max_size, pool.size());
  bool stopped = false;
  for (std::size_t size = 1; size <= max_size && !stopped; ++size) {
    bool reached = false;
    std::function<void(std::size_t)> dfs = [&](std::size_t start) {
      for (std::size_t i = start; i < pool.size() && !stopped; ++i) {
        if (pool.size() - i < size - inc.size()) break;
        if (!budget.charge()) {
          stopped = true;
          return;
        }
        inc.push(pool[i]);
        if (inc.size() == size) {
          reached = true;
          if (on_sum(inc) == Visit::stop) stopped = true;
        } else if (expand(inc)) {
          dfs(i + 1);
        }
        inc.pop();
      }
    };
    dfs(0);
    if (!reached) break; // every branch was pruned before this size
  }
  return !stopped;
}

struct PartialDimension {
  std::size_t value = 0;
  /// True when the value is certified equal to the true φdim_l, i.e. it
  /// reached φdim.
  bool exact = false;
  bool truncated = false;
  ModuleClass witness;
};

/// Maximum φ over sums of at most l distinct generator classes.
inline PartialDimension phidim_partial(const AlgebraContext& ctx, std::size_t l,
                                       const SearchBounds& bounds = {}) {
  if (l == 0) throw input_error("partial phi-dimension needs l >= 1");
  const Quiver& q = ctx.quiver();
  const GeneratorClass gen = generator_classes(q, bounds);
  PartialDimension out;
  out.witness = gen.atoms.empty() ? ModuleClass() : ModuleClass(gen.atoms.front());
  const std::size_t ceiling = phidim(ctx);
  IncrementalPhi inc(ctx, gen.atoms);
  std::vector<std::size_t> pool(gen.atoms.size());
  std::iota(pool.begin(), pool.end(), 0);
  SearchBudget budget(bounds);
  bool complete = true;
  if (!(bounds.stop_at_phidim && ceiling == 0)) {
    complete = visit_sums(
        inc, pool, l, budget,
        [&](IncrementalPhi& s) {
          const std::size_t v = s.phi();
          if (v > out.value) {
            out.value = v;
            out.witness = module_of(gen.atoms, s.pushed());
          }
          return bounds.stop_at_phidim && out.value >= ceiling ? Visit::stop : Visit::descend;
        },
        [](IncrementalPhi&) { return true; });
  }
  const bool reached_ceiling = bounds.stop_at_phidim && out.value >= ceiling;
  out.truncated = gen.truncated || (!complete && !reached_ceiling) ||
                  !bounds.include_local_quotients;
  out.exact = out.value == ceiling;
  if (out.value > ceiling)
    throw invariant_violation("a searched module exceeds phidim");
  return out;
}

/// Lower bound for ψdim: maximum ψ over the searched sums.
inline std::size_t psidim_lower(const AlgebraContext& ctx, const SearchBounds& bounds = {}) {
  const GeneratorClass gen = generator_classes(ctx.quiver(), bounds);
  IncrementalPhi inc(ctx, gen.atoms);
  std::vector<std::size_t> pool(gen.atoms.size());
  std::iota(pool.begin(), pool.end(), 0);
  SearchBudget budget(bounds);
  std::size_t best = 0;
  // ψ(M) ≤ ψ(M ⊕ N): only maximal sums matter, but every size is cheap to
  // visit and keeps the budget accounting uniform.
  visit_sums(
      inc, pool, bounds.summand_limit(ctx.quiver()), budget,
      [&](IncrementalPhi& s) {
        best = std::max(best, s.psi(s.phi()));
        return Visit::descend;
      },
      [](IncrementalPhi&) { return true; });
  return best;
}

} // namespace phigap
