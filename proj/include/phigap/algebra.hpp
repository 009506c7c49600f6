#pragma once

// Semantics of the radical square zero algebra A = kQ/J².
//
// Every syzygy over A is semisimple: Ω(S_i) = ⊕_{α: i→j} S_j. The module
// classes modelled here are the simples, the indecomposable projectives and
// the local quotients P(v)/U of a projective by a sub-multiset U of its
// radical (Ω(P(v)/U) = U), plus formal direct sums of these.

#include "phigap/errors.hpp"
#include "phigap/exact_linalg.hpp"
#include "phigap/quiver.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace phigap {

/// A homological dimension; nullopt stands for infinity.
using Dimension = std::optional<std::size_t>;

inline std::string to_string(const Dimension& d) {
  return d ? std::to_string(*d) : std::string("inf");
}

inline Dimension max_dimension(const Dimension& a, const Dimension& b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

// ---------------------------------------------------------------------------
// Simples and the transfer matrix

struct SimplesPartition {
  std::vector<VertexId> projective; // S_P: sinks
  std::vector<VertexId> injective;  // S_I: sources that are not sinks
  std::vector<VertexId> other;      // S_D
};

/// An isolated vertex is both a source and a sink; it goes to S_P.
inline SimplesPartition simples_partition(const Quiver& q) {
  SimplesPartition p;
  for (VertexId v = 0; v < q.size(); ++v) {
    if (q.is_sink(v))
      p.projective.push_back(v);
    else if (q.is_source(v))
      p.injective.push_back(v);
    else
      p.other.push_back(v);
  }
  return p;
}

/// n×n, column i = Σ_j #{α: i→j} e_j.
inline IntMatrix transfer_matrix(const Quiver& q) {
  IntMatrix t(q.size(), q.size());
  for (const auto& a : q.arrows()) t(a.target, a.source) += 1;
  return t;
}

/// Coordinates of K₁(A): the non-sink vertices, in vertex order. Simples at
/// sinks are projective, so their classes vanish.
class K1Coordinates {
public:
  explicit K1Coordinates(const Quiver& q) : index_(q.size()) {
    for (VertexId v = 0; v < q.size(); ++v) {
      if (!q.is_sink(v)) {
        index_[v] = vertices_.size();
        vertices_.push_back(v);
      }
    }
  }

  std::size_t dim() const noexcept { return vertices_.size(); }
  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  /// Coordinate of v, or nullopt when v is a sink.
  const std::optional<std::size_t>& index(VertexId v) const { return index_.at(v); }

private:
  std::vector<VertexId> vertices_;
  std::vector<std::optional<std::size_t>> index_;
};

/// The transfer matrix with sink rows and columns deleted: the matrix of Ω̄
/// on K₁(A) in the basis of non-projective simples.
inline IntMatrix projectivized_transfer(const Quiver& q) {
  const K1Coordinates k1(q);
  IntMatrix t(k1.dim(), k1.dim());
  for (const auto& a : q.arrows()) {
    const auto& s = k1.index(a.source);
    const auto& d = k1.index(a.target);
    if (s && d) t(*d, *s) += 1;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Module classes

enum class AtomKind { simple, projective, local_quotient };

/// An indecomposable module class. `removed` is the sorted multiset U of a
/// local quotient P(vertex)/U and is empty otherwise.
struct Atom {
  AtomKind kind = AtomKind::simple;
  VertexId vertex = 0;
  std::vector<VertexId> removed;

  static Atom simple(VertexId v) { return {AtomKind::simple, v, {}}; }
  static Atom projective(VertexId v) { return {AtomKind::projective, v, {}}; }
  static Atom local_quotient(VertexId v, std::vector<VertexId> u) {
    std::sort(u.begin(), u.end());
    return {AtomKind::local_quotient, v, std::move(u)};
  }

  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// A formal direct sum of atoms with multiplicities; the empty sum is the
/// zero module.
class ModuleClass {
public:
  ModuleClass() = default;
  explicit ModuleClass(Atom a, std::size_t multiplicity = 1) {
    add(std::move(a), multiplicity);
  }

  static ModuleClass zero() { return {}; }
  static ModuleClass simple(VertexId v) { return ModuleClass(Atom::simple(v)); }
  static ModuleClass projective(VertexId v) { return ModuleClass(Atom::projective(v)); }
  static ModuleClass local_quotient(VertexId v, std::vector<VertexId> u) {
    return ModuleClass(Atom::local_quotient(v, std::move(u)));
  }

  void add(Atom a, std::size_t multiplicity = 1) {
    if (multiplicity == 0) return;
    summands_[std::move(a)] += multiplicity;
  }

  ModuleClass& operator+=(const ModuleClass& other) {
    for (const auto& [a, k] : other.summands_) add(a, k);
    return *this;
  }
  friend ModuleClass operator+(ModuleClass a, const ModuleClass& b) { return a += b; }

  bool is_zero() const noexcept { return summands_.empty(); }
  /// Atoms in canonical order with their multiplicities.
  const std::map<Atom, std::size_t>& summands() const noexcept { return summands_; }

  std::vector<Atom> atoms() const {
    std::vector<Atom> out;
    out.reserve(summands_.size());
    for (const auto& [a, k] : summands_) out.push_back(a);
    return out;
  }

  friend bool operator==(const ModuleClass&, const ModuleClass&) = default;

private:
  std::map<Atom, std::size_t> summands_;
};

/// Sorted multiset of simple summands of rad P(v).
inline std::vector<VertexId> radical(const Quiver& q, VertexId v) {
  auto r = q.successors(v);
  std::sort(r.begin(), r.end());
  return r;
}

/// Validates an atom against q and puts it in normal form: P(v)/rad → S(v),
/// P(v)/0 → P(v), S(v) at a sink → P(v) (the same module).
inline Atom normalize(const Quiver& q, Atom a) {
  if (a.vertex >= q.size()) throw input_error("vertex index out of range");
  switch (a.kind) {
  case AtomKind::projective:
    return a;
  case AtomKind::simple:
    return q.is_sink(a.vertex) ? Atom::projective(a.vertex) : a;
  case AtomKind::local_quotient: {
    std::sort(a.removed.begin(), a.removed.end());
    const auto rad = radical(q, a.vertex);
    if (!std::includes(rad.begin(), rad.end(), a.removed.begin(), a.removed.end()))
      throw input_error("P(" + q.vertex_name(a.vertex) +
                        ")/[...]: removed summands are not a sub-multiset of the radical");
    if (a.removed.empty()) return Atom::projective(a.vertex);
    if (a.removed == rad) return q.is_sink(a.vertex) ? Atom::projective(a.vertex)
                                                     : Atom::simple(a.vertex);
    return a;
  }
  }
  return a;
}

inline ModuleClass normalize(const Quiver& q, const ModuleClass& m) {
  ModuleClass out;
  for (const auto& [a, k] : m.summands()) out.add(normalize(q, a), k);
  return out;
}

inline bool is_projective(const Quiver& q, const Atom& a) {
  return normalize(q, a).kind == AtomKind::projective;
}

inline bool is_semisimple(const Quiver& q, const ModuleClass& m) {
  for (const auto& [a, k] : m.summands()) {
    const Atom n = normalize(q, a);
    if (n.kind == AtomKind::local_quotient) return false;
    if (n.kind == AtomKind::projective && !q.is_sink(n.vertex)) return false;
  }
  return true;
}

inline ModuleClass syzygy(const Quiver& q, const Atom& atom) {
  const Atom a = normalize(q, atom);
  ModuleClass out;
  switch (a.kind) {
  case AtomKind::projective:
    break;
  case AtomKind::simple:
    for (VertexId t : q.successors(a.vertex)) out.add(Atom::simple(t));
    break;
  case AtomKind::local_quotient:
    for (VertexId u : a.removed) out.add(Atom::simple(u));
    break;
  }
  return out;
}

inline ModuleClass syzygy(const Quiver& q, const ModuleClass& m) {
  ModuleClass out;
  for (const auto& [a, k] : m.summands()) {
    const ModuleClass omega = syzygy(q, a);
    for (const auto& [b, j] : omega.summands()) out.add(b, j * k);
  }
  return out;
}

inline ModuleClass syzygy(const Quiver& q, const ModuleClass& m, std::size_t times) {
  ModuleClass out = m;
  for (std::size_t i = 0; i < times; ++i) out = syzygy(q, out);
  return out;
}

/// Multiplicity vector of a semisimple class in K₁ coordinates (sink simples
/// are projective and dropped).
inline IntVector class_vector(const Quiver& q, const ModuleClass& m) {
  if (!is_semisimple(q, m))
    throw input_error("class_vector: module class is not semisimple");
  const K1Coordinates k1(q);
  IntVector v(k1.dim());
  for (const auto& [a, k] : m.summands()) {
    if (const auto& i = k1.index(a.vertex)) v[*i] += k;
  }
  return v;
}

/// Ω̄[a] in K₁ coordinates.
inline IntVector omega_vector(const Quiver& q, const Atom& a) {
  return class_vector(q, syzygy(q, a));
}

// ---------------------------------------------------------------------------
// Projective dimensions

/// pd S_v for every vertex: 0 at sinks, ∞ when a cycle is reachable,
/// otherwise the longest path leaving v.
inline std::vector<Dimension> simple_pds(const Quiver& q) {
  const auto longest = longest_paths(q);
  return {longest.begin(), longest.end()};
}

inline Dimension pd(const Quiver& q, const std::vector<Dimension>& simple_pd,
                    const Atom& atom) {
  const Atom a = normalize(q, atom);
  switch (a.kind) {
  case AtomKind::projective:
    return 0;
  case AtomKind::simple:
    return simple_pd[a.vertex];
  case AtomKind::local_quotient: {
    Dimension d = 0;
    for (VertexId u : a.removed) d = max_dimension(d, simple_pd[u]);
    if (d) return *d + 1;
    return std::nullopt;
  }
  }
  return std::nullopt;
}

inline Dimension pd(const Quiver& q, const ModuleClass& m) {
  const auto spd = simple_pds(q);
  Dimension d = 0;
  for (const auto& [a, k] : m.summands()) d = max_dimension(d, pd(q, spd, a));
  return d;
}

inline Dimension gldim(const Quiver& q) {
  Dimension d = 0;
  for (const auto& p : simple_pds(q)) d = max_dimension(d, p);
  return d;
}

/// Global dimension as the longest path from a source to a sink; nullopt
/// when the quiver has an oriented cycle.
inline Dimension gldim_by_paths(const Quiver& q) {
  const auto cyc = on_cycle(q);
  if (std::find(cyc.begin(), cyc.end(), true) != cyc.end()) return std::nullopt;
  const auto longest = longest_paths(q);
  std::size_t best = 0;
  for (VertexId v = 0; v < q.size(); ++v)
    if (q.is_source(v)) best = std::max(best, *longest[v]);
  return best;
}

/// Largest finite pd: over the simples, and over 1 + pd S_t for every arrow
/// target t (realised by a local quotient whose syzygy is S_t).
inline std::size_t findim(const Quiver& q) {
  const auto spd = simple_pds(q);
  std::size_t best = 0;
  for (const auto& d : spd)
    if (d) best = std::max(best, *d);
  for (const auto& a : q.arrows())
    if (spd[a.target]) best = std::max(best, *spd[a.target] + 1);
  return best;
}

// ---------------------------------------------------------------------------
// Self-injectivity

struct NakayamaResult {
  bool self_injective = false;
  /// socles[v]: sorted multiset of simple summands of Soc P(v).
  std::vector<std::vector<VertexId>> socles;
  /// ν(v) = the vertex of Soc P(v), present only when A is self-injective.
  std::optional<std::vector<VertexId>> permutation;
};

inline NakayamaResult nakayama_check(const Quiver& q) {
  NakayamaResult r;
  r.socles.reserve(q.size());
  for (VertexId v = 0; v < q.size(); ++v)
    r.socles.push_back(q.is_sink(v) ? std::vector<VertexId>{v} : radical(q, v));
  std::vector<VertexId> nu;
  std::vector<bool> hit(q.size(), false);
  bool ok = true;
  for (const auto& soc : r.socles) {
    if (soc.size() != 1 || hit[soc.front()]) {
      ok = false;
      break;
    }
    hit[soc.front()] = true;
    nu.push_back(soc.front());
  }
  r.self_injective = ok;
  if (ok) r.permutation = std::move(nu);
  return r;
}

} // namespace phigap
