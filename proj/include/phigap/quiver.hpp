#pragma once

// Finite quivers (directed multigraphs, loops allowed) with the graph
// analytics and quiver-level transforms the algebra layer builds on.

#include "phigap/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace phigap {

using VertexId = std::size_t;

struct Arrow {
  std::optional<std::string> label;
  VertexId source = 0;
  VertexId target = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Named vertices in a fixed order (the order is the basis order e_1..e_n
/// used by every matrix downstream) and a list of arrow records. Parallel
/// arrows are separate records so labels survive round-trips.
class Quiver {
public:
  Quiver() = default;

  Quiver(std::string name, std::vector<std::string> vertices,
         std::vector<Arrow> arrows)
      : name_(std::move(name)), vertices_(std::move(vertices)),
        arrows_(std::move(arrows)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (vertices_[i].empty()) throw input_error("empty vertex identifier");
      if (!index_.emplace(vertices_[i], i).second)
        throw input_error("duplicate vertex '" + vertices_[i] + "'");
    }
    for (const auto& a : arrows_)
      if (a.source >= vertices_.size() || a.target >= vertices_.size())
        throw input_error("arrow endpoint out of range");
    build_adjacency();
  }

  /// Convenience constructor from vertex names; arrows are (source, target)
  /// name pairs, unlabeled.
  static Quiver from_names(
      std::string name, std::vector<std::string> vertices,
      std::span<const std::pair<std::string, std::string>> arrows) {
    Quiver skeleton(name, vertices, {});
    std::vector<Arrow> list;
    list.reserve(arrows.size());
    for (const auto& [s, t] : arrows)
      list.push_back({std::nullopt, skeleton.require(s), skeleton.require(t)});
    return Quiver(std::move(name), std::move(vertices), std::move(list));
  }

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }

  std::optional<VertexId> find(std::string_view vertex) const {
    auto it = index_.find(std::string(vertex));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VertexId require(std::string_view vertex) const {
    if (auto v = find(vertex)) return *v;
    throw input_error("unknown vertex '" + std::string(vertex) + "'");
  }

  /// Targets of the arrows leaving v, one entry per arrow, in arrow order.
  const std::vector<VertexId>& successors(VertexId v) const { return succ_.at(v); }
  const std::vector<VertexId>& predecessors(VertexId v) const { return pred_.at(v); }

  std::size_t out_degree(VertexId v) const { return succ_.at(v).size(); }
  std::size_t in_degree(VertexId v) const { return pred_.at(v).size(); }
  bool is_sink(VertexId v) const { return out_degree(v) == 0; }
  bool is_source(VertexId v) const { return in_degree(v) == 0; }

  std::size_t arrow_count(VertexId from, VertexId to) const {
    const auto& s = succ_.at(from);
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), to));
  }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.name_ == b.name_ && a.vertices_ == b.vertices_ &&
           a.arrows_ == b.arrows_;
  }

private:
  void build_adjacency() {
    succ_.assign(vertices_.size(), {});
    pred_.assign(vertices_.size(), {});
    for (const auto& a : arrows_) {
      succ_[a.source].push_back(a.target);
      pred_[a.target].push_back(a.source);
    }
  }

  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<std::vector<VertexId>> succ_;
  std::vector<std::vector<VertexId>> pred_;
};

/// Same vertex order and same arrow multiset; names and labels ignored.
inline bool same_structure(const Quiver& a, const Quiver& b) {
  if (a.vertices() != b.vertices()) return false;
  auto pairs = [](const Quiver& q) {
    std::vector<std::pair<VertexId, VertexId>> p;
    for (const auto& arrow : q.arrows()) p.emplace_back(arrow.source, arrow.target);
    std::sort(p.begin(), p.end());
    return p;
  };
  return pairs(a) == pairs(b);
}

// ---------------------------------------------------------------------------
// Graph analytics

/// Vertices lying on a directed cycle (a loop counts).
inline std::vector<bool> on_cycle(const Quiver& q) {
  // Tarjan's SCC, iterative.
  const std::size_t n = q.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false), cyclic(n, false);
  std::vector<VertexId> stack;
  int counter = 0;
  struct Frame {
    VertexId v;
    std::size_t next;
  };
  for (VertexId root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& succ = q.successors(f.v);
      if (f.next < succ.size()) {
        const VertexId w = succ[f.next++];
        if (w == f.v) cyclic[w] = true;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const VertexId v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<VertexId> component;
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        if (component.size() > 1)
          for (VertexId u : component) cyclic[u] = true;
      }
    }
  }
  return cyclic;
}

/// Vertices from which some directed cycle is reachable (including vertices
/// on a cycle).
inline std::vector<bool> reaches_cycle(const Quiver& q) {
  auto reach = on_cycle(q);
  std::vector<VertexId> work;
  for (VertexId v = 0; v < q.size(); ++v)
    if (reach[v]) work.push_back(v);
  while (!work.empty()) {
    const VertexId v = work.back();
    work.pop_back();
    for (VertexId u : q.predecessors(v))
      if (!reach[u]) {
        reach[u] = true;
        work.push_back(u);
      }
  }
  return reach;
}

/// Length of the longest directed path starting at each vertex; nullopt for
/// vertices that reach a cycle.
inline std::vector<std::optional<std::size_t>> longest_paths(const Quiver& q) {
  const auto cyc = reaches_cycle(q);
  std::vector<std::optional<std::size_t>> longest(q.size());
  // Vertices not reaching a cycle induce a DAG closed under successors.
  std::vector<int> state(q.size(), 0);
  std::function<std::size_t(VertexId)> visit = [&](VertexId v) -> std::size_t {
    if (state[v] == 2) return *longest[v];
    state[v] = 1;
    std::size_t best = 0;
    for (VertexId w : q.successors(v)) best = std::max(best, visit(w) + 1);
    state[v] = 2;
    longest[v] = best;
    return best;
  };
  for (VertexId v = 0; v < q.size(); ++v)
    if (!cyc[v] && state[v] == 0) visit(v);
  return longest;
}

struct VertexProfile {
  std::string vertex;
  std::size_t out_degree = 0;
  std::size_t in_degree = 0;
  bool is_sink = false;
  bool is_source = false;
  bool reaches_cycle = false;
  std::optional<std::size_t> longest_terminating_path;
};

inline std::vector<VertexProfile> analyze_vertices(const Quiver& q) {
  const auto cyc = reaches_cycle(q);
  const auto longest = longest_paths(q);
  std::vector<VertexProfile> out;
  out.reserve(q.size());
  for (VertexId v = 0; v < q.size(); ++v) {
    out.push_back({q.vertex_name(v), q.out_degree(v), q.in_degree(v), q.is_sink(v),
                   q.is_source(v), cyc[v], longest[v]});
  }
  return out;
}

/// Weak connectivity. The empty quiver counts as connected.
inline bool is_connected(const Quiver& q) {
  if (q.size() == 0) return true;
  std::vector<bool> seen(q.size(), false);
  std::vector<VertexId> work{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!work.empty()) {
    const VertexId v = work.back();
    work.pop_back();
    auto visit = [&](VertexId w) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        work.push_back(w);
      }
    };
    for (VertexId w : q.successors(v)) visit(w);
    for (VertexId w : q.predecessors(v)) visit(w);
  }
  return count == q.size();
}

// ---------------------------------------------------------------------------
// Transforms

inline Quiver opposite_quiver(const Quiver& q) {
  std::vector<Arrow> arrows;
  arrows.reserve(q.arrows().size());
  for (const auto& a : q.arrows()) arrows.push_back({a.label, a.target, a.source});
  std::string name = q.name();
  if (name.size() > 3 && name.ends_with("_op"))
    name.resize(name.size() - 3);
  else
    name += "_op";
  return Quiver(std::move(name), q.vertices(), std::move(arrows));
}

/// Suffix appended to every vertex name to form the primed copies. Grows
/// ("'", "''", …) until no primed name collides with an existing vertex.
inline std::string prime_suffix(const Quiver& q) {
  std::string suffix = "'";
  for (;;) {
    bool clash = false;
    for (const auto& v : q.vertices())
      if (q.find(v + suffix)) {
        clash = true;
        break;
      }
    if (!clash) return suffix;
    suffix += "'";
  }
}

/// Vertices v then v' (same order); each arrow i -> j becomes i -> j'.
inline Quiver separated_quiver(const Quiver& q) {
  const std::string suffix = prime_suffix(q);
  const std::size_t n = q.size();
  std::vector<std::string> vertices = q.vertices();
  for (const auto& v : q.vertices()) vertices.push_back(v + suffix);
  std::vector<Arrow> arrows;
  arrows.reserve(q.arrows().size());
  for (const auto& a : q.arrows()) arrows.push_back({a.label, a.source, n + a.target});
  return Quiver(q.name() + "_sep", std::move(vertices), std::move(arrows));
}

/// Adds a fresh source vertex with one arrow to each entry of `targets`
/// (a multiset; repeated entries give parallel arrows).
inline Quiver one_point_extension(const Quiver& q,
                                  std::span<const std::string> targets,
                                  std::string vertex = {}) {
  if (targets.empty()) throw input_error("one-point extension needs at least one target");
  if (vertex.empty()) {
    vertex = "v";
    for (std::size_t i = 1; q.find(vertex); ++i) vertex = "v" + std::to_string(i);
  } else if (q.find(vertex)) {
    throw input_error("vertex '" + vertex + "' already exists");
  }
  std::vector<std::string> vertices = q.vertices();
  std::vector<Arrow> arrows = q.arrows();
  const VertexId fresh = vertices.size();
  for (const auto& t : targets) arrows.push_back({std::nullopt, fresh, q.require(t)});
  vertices.push_back(std::move(vertex));
  return Quiver(q.name() + "_ext", std::move(vertices), std::move(arrows));
}

/// Full subquiver on `keep`, which must be closed under successors.
inline Quiver successor_closed_subquiver(const Quiver& q,
                                         std::span<const std::string> keep) {
  if (keep.empty()) throw input_error("subquiver needs at least one vertex");
  std::vector<bool> kept(q.size(), false);
  for (const auto& k : keep) kept[q.require(k)] = true;
  for (const auto& a : q.arrows()) {
    if (kept[a.source] && !kept[a.target])
      throw input_error("not closed under successors: arrow " +
                        q.vertex_name(a.source) + " -> " + q.vertex_name(a.target) +
                        " leaves the kept set");
  }
  std::vector<VertexId> new_index(q.size(), 0);
  std::vector<std::string> vertices;
  for (VertexId v = 0; v < q.size(); ++v)
    if (kept[v]) {
      new_index[v] = vertices.size();
      vertices.push_back(q.vertex_name(v));
    }
  std::vector<Arrow> arrows;
  for (const auto& a : q.arrows())
    if (kept[a.source]) arrows.push_back({a.label, new_index[a.source], new_index[a.target]});
  return Quiver(q.name() + "_sub", std::move(vertices), std::move(arrows));
}

} // namespace phigap
