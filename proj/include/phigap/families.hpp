#pragma once

// Named quiver families and a seeded random quiver generator.

#include "phigap/errors.hpp"
#include "phigap/quiver.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace phigap::families {

namespace detail {

inline std::vector<std::string> numbered(std::size_t n, std::size_t first = 1) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(std::to_string(first + i));
  return v;
}

inline std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

} // namespace detail

/// 1 → 2 → … → n
inline Quiver path(std::size_t n) {
  if (n == 0) throw input_error("path quiver needs at least one vertex");
  std::vector<Arrow> arrows;
  for (VertexId v = 0; v + 1 < n; ++v) arrows.push_back({{}, v, v + 1});
  return Quiver("A" + std::to_string(n), detail::numbered(n), std::move(arrows));
}

/// One vertex with one loop.
inline Quiver loop() { return Quiver("loop", {"1"}, {{{}, 0, 0}}); }

/// 1 → 2 → … → n → 1
inline Quiver cycle(std::size_t n) {
  if (n == 0) throw input_error("cycle quiver needs at least one vertex");
  std::vector<Arrow> arrows;
  for (VertexId v = 0; v < n; ++v) arrows.push_back({{}, v, (v + 1) % n});
  return Quiver("C" + std::to_string(n), detail::numbered(n), std::move(arrows));
}

/// One arrow for every ordered pair of vertices (loops optional).
inline Quiver complete(std::size_t n, bool loops = true) {
  std::vector<Arrow> arrows;
  for (VertexId s = 0; s < n; ++s)
    for (VertexId t = 0; t < n; ++t)
      if (loops || s != t) arrows.push_back({{}, s, t});
  return Quiver("K" + std::to_string(n), detail::numbered(n), std::move(arrows));
}

/// Loops at 1 and m, the path 1 → … → m, and for k = m+1..n a loop at k
/// and an arrow k → m.
inline Quiver gamma(std::size_t m, std::size_t n) {
  if (m == 0 || m > n) throw input_error("gamma quiver needs 0 < m <= n");
  std::vector<Arrow> arrows{{{}, 0, 0}};
  for (VertexId v = 0; v + 1 < m; ++v) arrows.push_back({{}, v, v + 1});
  if (m > 1) arrows.push_back({{}, m - 1, m - 1});
  for (VertexId k = m; k < n; ++k) {
    arrows.push_back({{}, k, k});
    arrows.push_back({{}, k, m - 1});
  }
  return Quiver("Gamma" + std::to_string(m) + "_" + std::to_string(n), detail::numbered(n),
                std::move(arrows));
}

/// Rows 0..k of l+1 vertices (i,j) feeding down column by column, row k
/// shifting one column left into row k+1 (which has l vertices), and row
/// k+1 wrapping back to row 0 with (k+1,l) also hitting (0,l+1).
inline Quiver grid(std::size_t k, std::size_t l) {
  if (k == 0 || l < 2) throw input_error("grid quiver needs k >= 1 and l >= 2");
  std::vector<std::string> names;
  for (std::size_t i = 0; i <= k + 1; ++i)
    for (std::size_t j = 1; j <= (i == k + 1 ? l : l + 1); ++j)
      names.push_back(detail::pair_name(i, j));
  Quiver skeleton("grid", names, {});
  auto id = [&](std::size_t i, std::size_t j) {
    return skeleton.require(detail::pair_name(i, j));
  };
  std::vector<Arrow> arrows;
  auto add = [&](VertexId s, VertexId t) { arrows.push_back({{}, s, t}); };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 1; j <= l + 1; ++j) add(id(i, j), id(i + 1, j));
  add(id(k, 1), id(k + 1, 1));
  for (std::size_t j = 2; j <= l; ++j) {
    add(id(k, j), id(k + 1, j));
    add(id(k, j), id(k + 1, j - 1));
  }
  add(id(k, l + 1), id(k + 1, l));
  for (std::size_t j = 1; j <= l; ++j) add(id(k + 1, j), id(0, j));
  add(id(k + 1, l), id(0, l + 1));
  return Quiver("grid_" + std::to_string(k) + "_" + std::to_string(l), std::move(names),
                std::move(arrows));
}

struct RandomQuiverConfig {
  std::size_t vertices = 4;
  std::size_t arrows = 6;
  bool allow_loops = true;
};

/// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of sample `index` in a run seeded with `seed`; independent of the
/// order in which samples are generated.
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index));
}

/// Uniform multigraph: each arrow picks an ordered pair i.i.d. (rejecting
/// loops when they are disallowed).
inline Quiver random_quiver(const RandomQuiverConfig& cfg, std::uint64_t seed) {
  if (cfg.vertices == 0) throw input_error("random quiver needs at least one vertex");
  if (cfg.vertices == 1 && !cfg.allow_loops && cfg.arrows > 0)
    throw input_error("one vertex without loops admits no arrows");
  std::mt19937_64 rng(seed);
  // rejection sampling, same stream on every standard library
  auto draw = [&](std::size_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return static_cast<VertexId>(x % bound);
  };
  std::vector<Arrow> arrows;
  while (arrows.size() < cfg.arrows) {
    const VertexId s = draw(cfg.vertices), t = draw(cfg.vertices);
    if (s == t && !cfg.allow_loops) continue;
    arrows.push_back({{}, s, t});
  }
  return Quiver("random_" + std::to_string(seed), detail::numbered(cfg.vertices, 0),
                std::move(arrows));
}

} // namespace phigap::families
