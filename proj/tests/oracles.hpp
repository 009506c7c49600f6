#pragma once

// Test-side reference computations. They read only the arrow list of a
// quiver and use rational arithmetic, so they share no code path with the
// library beyond the Quiver container itself.

#include "phigap/quiver.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using RMatrix = std::vector<std::vector<Rational>>; // row-major

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RMatrix m) { return rref(m).size(); }

/// Basis of {x : m x = 0}.
inline std::vector<std::vector<Rational>> kernel(RMatrix m, std::size_t cols) {
  const auto pivots = rref(m);
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<Rational> x(cols, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -m[i][f];
    out.push_back(std::move(x));
  }
  return out;
}

/// Column j of the result is Ω(S_j) counted per vertex.
inline RMatrix omega_matrix(const phigap::Quiver& q) {
  RMatrix t(q.size(), std::vector<Rational>(q.size(), 0));
  for (const auto& a : q.arrows()) t[a.target][a.source] += 1;
  return t;
}

inline RMatrix multiply(const RMatrix& a, const RMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RMatrix c(n, std::vector<Rational>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline std::vector<Rational> apply(const RMatrix& t, const std::vector<Rational>& v) {
  std::vector<Rational> out(t.size(), 0);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += t[i][j] * v[j];
  return out;
}

/// An indecomposable: P(v)/U for a sub-multiset U of rad P(v). U empty is
/// P(v); U = rad P(v) is S(v).
struct Indec {
  std::size_t vertex = 0;
  std::vector<std::size_t> removed; // sorted
  friend auto operator<=>(const Indec&, const Indec&) = default;
};

inline std::vector<std::size_t> rad(const phigap::Quiver& q, std::size_t v) {
  std::vector<std::size_t> r;
  for (const auto& a : q.arrows())
    if (a.source == v) r.push_back(a.target);
  std::sort(r.begin(), r.end());
  return r;
}

inline Indec simple(const phigap::Quiver& q, std::size_t v) { return {v, rad(q, v)}; }
inline Indec projective(std::size_t v) { return {v, {}}; }

inline bool is_projective(const phigap::Quiver& q, const Indec& m) {
  return m.removed.empty() || rad(q, m.vertex).empty();
}

/// Ω(P(v)/U) = U, as a count vector over all vertices.
inline std::vector<Rational> omega(const phigap::Quiver& q, const Indec& m) {
  std::vector<Rational> v(q.size(), 0);
  if (is_projective(q, m)) return v;
  for (auto u : m.removed) v[u] += 1;
  return v;
}

/// Every indecomposable of the local kind: all sub-multisets of each radical.
inline std::vector<Indec> all_local(const phigap::Quiver& q) {
  std::vector<Indec> out;
  for (std::size_t v = 0; v < q.size(); ++v) {
    const auto r = rad(q, v);
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t mask = 0; mask < (std::size_t{1} << r.size()); ++mask) {
      std::vector<std::size_t> u;
      for (std::size_t i = 0; i < r.size(); ++i)
        if (mask >> i & 1U) u.push_back(r[i]);
      if (seen.insert(u).second) out.push_back({v, u});
    }
  }
  return out;
}

/// pd of each simple by direct recursion on successors; nullopt = infinite.
inline std::vector<std::optional<std::size_t>> simple_pd(const phigap::Quiver& q) {
  const std::size_t n = q.size();
  std::vector<std::optional<std::size_t>> pd(n);
  // pd S_v ≤ k iff every successor has pd ≤ k-1; iterate n+1 rounds
  for (std::size_t round = 0; round <= n + 1; ++round) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto r = rad(q, v);
      if (r.empty()) {
        pd[v] = 0;
        continue;
      }
      std::optional<std::size_t> best = 0;
      for (auto u : r) {
        if (!pd[u]) {
          best.reset();
          break;
        }
        best = std::max(*best, *pd[u] + 1);
      }
      if (best) pd[v] = best;
    }
  }
  return pd;
}

inline std::optional<std::size_t> pd(const phigap::Quiver& q, const Indec& m,
                                     const std::vector<std::optional<std::size_t>>& spd) {
  if (is_projective(q, m)) return 0;
  std::size_t best = 1;
  for (auto u : m.removed) {
    if (!spd[u]) return std::nullopt;
    best = std::max(best, *spd[u] + 1);
  }
  return best;
}

/// Largest finite pd over all local indecomposables.
inline std::size_t findim(const phigap::Quiver& q) {
  const auto spd = simple_pd(q);
  std::size_t best = 0;
  for (const auto& m : all_local(q))
    if (auto d = pd(q, m, spd)) best = std::max(best, *d);
  return best;
}

inline std::optional<std::size_t> gldim(const phigap::Quiver& q) {
  const auto spd = simple_pd(q);
  std::size_t best = 0;
  for (const auto& d : spd) {
    if (!d) return std::nullopt;
    best = std::max(best, *d);
  }
  return best;
}

struct PhiResult {
  std::vector<std::size_t> r;
  std::size_t phi = 0;
  std::size_t psi = 0;
};

/// φ straight from the definition on a long window: r_0 is the number of
/// distinct non-projective summands, r_k the rank of the span of the
/// Ω^k-classes of the summands in the group of non-projective simples.
inline PhiResult phi(const phigap::Quiver& q, const std::vector<Indec>& module) {
  const std::size_t n = q.size();
  std::set<Indec> distinct;
  for (const auto& m : module)
    if (!is_projective(q, m)) distinct.insert(m);
  const RMatrix t = omega_matrix(q);
  std::vector<bool> sink(n);
  for (std::size_t v = 0; v < n; ++v) sink[v] = rad(q, v).empty();

  const std::size_t window = 3 * n + 4;
  PhiResult out;
  out.r.push_back(distinct.size());
  std::vector<std::vector<Rational>> images;
  for (const auto& m : distinct) images.push_back(omega(q, m));
  std::vector<std::vector<std::vector<Rational>>> history;
  history.push_back(images);
  for (std::size_t k = 1; k <= window; ++k) {
    RMatrix rows;
    for (const auto& v : images) {
      std::vector<Rational> row;
      for (std::size_t i = 0; i < n; ++i)
        if (!sink[i]) row.push_back(v[i]);
      rows.push_back(std::move(row));
    }
    out.r.push_back(rows.empty() || rows[0].empty() ? 0 : oracle::rank(rows));
    for (auto& v : images) v = oracle::apply(t, v);
    history.push_back(images);
  }
  std::size_t l = out.r.size() - 1;
  while (l > 0 && out.r[l - 1] == out.r.back()) --l;
  out.phi = l;

  // summands of Ω^φ M: M itself at φ = 0, else the simples in the support
  const auto spd = simple_pd(q);
  std::size_t sup = 0;
  if (out.phi == 0) {
    for (const auto& m : distinct)
      if (auto d = pd(q, m, spd)) sup = std::max(sup, *d);
  } else {
    for (const auto& v : history[out.phi - 1])
      for (std::size_t i = 0; i < n; ++i)
        if (v[i] != 0 && spd[i]) sup = std::max(sup, *spd[i]);
  }
  out.psi = out.phi + sup;
  return out;
}

/// Converts a module description "v:u1,u2" list into Indec values by name.
inline Indec local(const phigap::Quiver& q, const std::string& v,
                   const std::vector<std::string>& removed) {
  Indec m{q.require(v), {}};
  for (const auto& u : removed) m.removed.push_back(q.require(u));
  std::sort(m.removed.begin(), m.removed.end());
  return m;
}

} // namespace oracle
