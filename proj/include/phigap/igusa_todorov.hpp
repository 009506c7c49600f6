#pragma once

// Igusa-Todorov φ and ψ for radical square zero algebras.
//
// For a module M with distinct non-projective indecomposable summands
// M_1..M_t, put r_0 = t and r_k = rank Ω̄^k⟨add M⟩ = rank{T^{k-1} Ω̄[M_i]}
// for k ≥ 1, T the transfer matrix on K₁. Then φ(M) is the least l with r
// constant on [l, ∞). Constancy from k = #K₁-coordinates + 1 on is forced
// (T is invertible on its eventual image), so checking up to that cutoff
// decides "for all s".
//
// Two engines compute φ:
//  * definition: the rank sequence above;
//  * filtration: the last k ≥ 2 with ⟨Ω̄[M_i]⟩ ∩ Ker T^{k-1} ⊄ Ker T^{k-2},
//    falling back to the r_0 > r_1 test when no such k exists.

#include "phigap/algebra.hpp"
#include "phigap/errors.hpp"
#include "phigap/exact_linalg.hpp"
#include "phigap/quiver.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phigap {

enum class Engine { definition, filtration, both };

inline std::string to_string(Engine e) {
  switch (e) {
  case Engine::definition: return "definition";
  case Engine::filtration: return "filtration";
  case Engine::both: return "both";
  }
  return {};
}

/// Everything about A that φ/ψ evaluations share, computed once.
class AlgebraContext {
public:
  explicit AlgebraContext(Quiver q)
      : quiver_(std::move(q)), k1_(quiver_), transfer_(projectivized_transfer(quiver_)),
        filtration_(kernel_filtration(transfer_)), simple_pd_(simple_pds(quiver_)),
        nakayama_(nakayama_check(quiver_)), partition_(simples_partition(quiver_)) {}

  const Quiver& quiver() const noexcept { return quiver_; }
  const K1Coordinates& k1() const noexcept { return k1_; }
  /// Ω̄ on K₁ (sink coordinates removed).
  const IntMatrix& transfer() const noexcept { return transfer_; }
  const KernelFiltration& filtration() const noexcept { return filtration_; }
  const std::vector<Dimension>& simple_pd() const noexcept { return simple_pd_; }
  const NakayamaResult& nakayama() const noexcept { return nakayama_; }
  const SimplesPartition& partition() const noexcept { return partition_; }
  std::size_t cutoff() const noexcept { return k1_.dim() + 1; }

  Dimension pd(const Atom& a) const { return phigap::pd(quiver_, simple_pd_, a); }

private:
  Quiver quiver_;
  K1Coordinates k1_;
  IntMatrix transfer_;
  KernelFiltration filtration_;
  std::vector<Dimension> simple_pd_;
  NakayamaResult nakayama_;
  SimplesPartition partition_;
};

/// Least l with r[l] = r[l+1] = … = r.back().
inline std::size_t stabilization_onset(std::span<const std::size_t> r) {
  if (r.empty()) return 0;
  std::size_t l = r.size() - 1;
  while (l > 0 && r[l - 1] == r.back()) --l;
  return l;
}

struct PhiComputation {
  /// Distinct non-projective summands (normal form) and their multiplicities.
  std::vector<Atom> summands;
  std::vector<std::size_t> multiplicities;
  /// r_0 .. r_cutoff.
  std::vector<std::size_t> r_sequence;
  std::size_t phi = 0;
  Engine engine = Engine::definition;
  /// Stabilization onset of the rank sequence.
  std::size_t eta = 0;
  std::optional<std::size_t> definition_value;
  std::optional<std::size_t> filtration_value;
};

namespace detail {

inline void collect_summands(const AlgebraContext& ctx, const ModuleClass& m,
                             PhiComputation& out) {
  std::map<Atom, std::size_t> distinct;
  for (const auto& [a, k] : m.summands()) {
    Atom n = normalize(ctx.quiver(), a);
    if (n.kind == AtomKind::projective) continue;
    distinct[std::move(n)] += k;
  }
  for (auto& [a, k] : distinct) {
    out.summands.push_back(a);
    out.multiplicities.push_back(k);
  }
}

inline std::vector<IntVector> omega_vectors(const AlgebraContext& ctx,
                                            std::span<const Atom> atoms) {
  std::vector<IntVector> gens;
  gens.reserve(atoms.size());
  for (const auto& a : atoms) gens.push_back(omega_vector(ctx.quiver(), a));
  return gens;
}

inline std::vector<std::size_t> rank_sequence(const AlgebraContext& ctx,
                                              std::span<const Atom> atoms) {
  std::vector<std::size_t> r{atoms.size()};
  if (ctx.k1().dim() == 0) {
    r.resize(ctx.cutoff() + 1, 0);
    return r;
  }
  const auto ranks = iterated_image_ranks(ctx.transfer(), omega_vectors(ctx, atoms),
                                          ctx.cutoff());
  r.insert(r.end(), ranks.begin(), ranks.end());
  return r;
}

inline std::size_t filtration_phi(const AlgebraContext& ctx, std::span<const Atom> atoms,
                                  std::size_t r0, std::size_t r1) {
  const std::size_t n = ctx.k1().dim();
  const auto& filt = ctx.filtration();
  const SubspaceBasis span = SubspaceBasis::span(n, omega_vectors(ctx, atoms));
  std::size_t prev = 0; // dim(span ∩ Ker T^0)
  std::size_t best = 0;
  for (std::size_t j = 1; j <= filt.stabilization_index; ++j) {
    const std::size_t d = intersect(span, filt.kernel(j)).dim();
    if (d > prev) best = j + 1;
    prev = d;
  }
  if (best >= 2) return best;
  // φ ∈ {0, 1}: decided by whether Ω̄ already fails to be injective on ⟨add M⟩.
  return r0 > r1 ? 1 : 0;
}

} // namespace detail

inline PhiComputation phi(const AlgebraContext& ctx, const ModuleClass& m,
                          Engine engine = Engine::definition) {
  PhiComputation out;
  out.engine = engine;
  detail::collect_summands(ctx, m, out);
  out.r_sequence = detail::rank_sequence(ctx, out.summands);
  out.eta = stabilization_onset(out.r_sequence);
  if (engine != Engine::filtration) out.definition_value = out.eta;
  if (engine != Engine::definition) {
    const std::size_t r1 = out.r_sequence.size() > 1 ? out.r_sequence[1] : 0;
    out.filtration_value =
        detail::filtration_phi(ctx, out.summands, out.r_sequence[0], r1);
  }
  if (engine == Engine::both && *out.definition_value != *out.filtration_value) {
    throw invariant_violation("phi engines disagree: definition gives " +
                              std::to_string(*out.definition_value) +
                              ", filtration gives " +
                              std::to_string(*out.filtration_value));
  }
  out.phi = engine == Engine::filtration ? *out.filtration_value : *out.definition_value;
  return out;
}

struct PsiComputation {
  std::size_t phi = 0;
  std::size_t finite_pd_supremum = 0;
  std::size_t psi = 0;
};

inline PsiComputation psi(const AlgebraContext& ctx, const ModuleClass& m,
                          Engine engine = Engine::definition) {
  PsiComputation out;
  out.phi = phi(ctx, m, engine).phi;
  const ModuleClass shifted = syzygy(ctx.quiver(), normalize(ctx.quiver(), m), out.phi);
  for (const auto& [a, k] : shifted.summands())
    if (const auto d = ctx.pd(a)) out.finite_pd_supremum = std::max(out.finite_pd_supremum, *d);
  out.psi = out.phi + out.finite_pd_supremum;
  return out;
}

/// ⊕_{S ∈ S_D} S.
inline ModuleClass middle_simples(const AlgebraContext& ctx) {
  ModuleClass m;
  for (VertexId v : ctx.partition().other) m.add(Atom::simple(v));
  return m;
}

/// 0 for self-injective A, otherwise φ(⊕_{S∈S_D} S) + 1 (φ(0) = 0).
inline std::size_t phidim(const AlgebraContext& ctx) {
  if (ctx.nakayama().self_injective) return 0;
  const std::size_t value = phi(ctx, middle_simples(ctx)).phi + 1;
  if (value > ctx.quiver().size())
    throw invariant_violation("phidim " + std::to_string(value) +
                              " exceeds the number of vertices");
  return value;
}

/// φ of a growing set of distinct non-projective atoms, one push at a time.
/// Keeps one incremental echelon basis per power of T, so push/pop cost a
/// handful of vector reductions. Only powers up to the kernel stabilization
/// index s are tracked: T is injective on Im T^s, so r_k is constant for
/// k > s. Arithmetic runs in 64 bits and switches to big integers for good
/// on the first overflow.
class IncrementalPhi {
public:
  IncrementalPhi(const AlgebraContext& ctx, std::span<const Atom> candidates)
      : cutoff_(ctx.cutoff()),
        levels_(std::min(ctx.cutoff(), ctx.filtration().stabilization_index + 1)),
        dim_(ctx.k1().dim()) {
    const auto& t = ctx.transfer();
    images_.reserve(candidates.size());
    finite_pd_.reserve(candidates.size());
    for (const auto& a : candidates) {
      if (is_projective(ctx.quiver(), a))
        throw std::invalid_argument("IncrementalPhi: projective candidate");
      std::vector<IntVector> powers;
      powers.reserve(levels_);
      IntVector v = omega_vector(ctx.quiver(), a);
      for (std::size_t j = 0; j < levels_; ++j) {
        powers.push_back(v);
        if (j + 1 < levels_) v = t.apply(v);
      }
      if (!wide_) {
        std::vector<SmallEchelon::Vector> narrow;
        for (const auto& p : powers) {
          auto n = SmallEchelon::narrow(p);
          if (!n) {
            wide_ = true;
            break;
          }
          narrow.push_back(std::move(*n));
        }
        small_images_.push_back(std::move(narrow));
      }
      images_.push_back(std::move(powers));
      finite_pd_.push_back(shifted_finite_pd(ctx, a));
    }
    if (wide_) small_images_.clear();
    reset_levels();
  }

  std::size_t size() const noexcept { return pushed_.size(); }
  std::size_t candidate_count() const noexcept { return images_.size(); }
  const std::vector<std::size_t>& pushed() const noexcept { return pushed_; }

  void push(std::size_t candidate) {
    pushed_.push_back(candidate);
    if (!wide_) {
      try {
        undo_.push_back(insert_small(candidate));
        return;
      } catch (const std::overflow_error&) {
        wide_ = true;
        reset_levels();
        undo_.clear();
        for (std::size_t c : pushed_) undo_.push_back(insert_wide(c));
        return;
      }
    }
    undo_.push_back(insert_wide(candidate));
  }

  void pop() {
    const auto& grew = undo_.back();
    for (std::size_t k = 0; k < levels_; ++k) {
      if (!grew[k]) continue;
      if (wide_)
        wide_levels_[k].pop();
      else
        small_levels_[k].pop();
    }
    undo_.pop_back();
    pushed_.pop_back();
  }

  /// r_0 .. r_cutoff, as PhiComputation::r_sequence.
  std::vector<std::size_t> r_sequence() const {
    std::vector<std::size_t> r = short_sequence();
    r.resize(cutoff_ + 1, r.back());
    return r;
  }

  std::size_t phi() const { return stabilization_onset(short_sequence()); }

  std::size_t psi(std::size_t phi_value) const {
    std::size_t sup = 0;
    for (std::size_t c : pushed_) {
      const auto& table = finite_pd_[c];
      const std::size_t k = std::min(phi_value, table.size() - 1);
      if (table[k]) sup = std::max(sup, *table[k]);
    }
    return phi_value + sup;
  }

private:
  /// For k = 0..cutoff: the largest finite pd among summands of Ω^k(a).
  std::vector<std::optional<std::size_t>> shifted_finite_pd(const AlgebraContext& ctx,
                                                            const Atom& a) const {
    const Quiver& q = ctx.quiver();
    std::vector<std::optional<std::size_t>> table;
    table.push_back(ctx.pd(a));
    std::set<VertexId> support;
    const ModuleClass first = syzygy(q, a);
    for (const auto& [s, k] : first.summands()) support.insert(s.vertex);
    for (std::size_t k = 1; k <= cutoff_; ++k) {
      std::optional<std::size_t> best;
      for (VertexId u : support)
        if (const auto& d = ctx.simple_pd()[u]) best = std::max(best.value_or(0), *d);
      table.push_back(best);
      std::set<VertexId> next;
      for (VertexId u : support)
        for (VertexId w : q.successors(u)) next.insert(w);
      support = std::move(next);
    }
    return table;
  }

  std::vector<std::size_t> short_sequence() const {
    std::vector<std::size_t> r{pushed_.size()};
    for (std::size_t k = 0; k < levels_; ++k)
      r.push_back(wide_ ? wide_levels_[k].rank() : small_levels_[k].rank());
    return r;
  }

  void reset_levels() {
    small_levels_.assign(wide_ ? 0 : levels_, SmallEchelon(dim_));
    wide_levels_.assign(wide_ ? levels_ : 0, Echelon(dim_));
  }

  std::vector<bool> insert_small(std::size_t c) {
    std::vector<bool> grew(levels_, false);
    std::size_t k = 0;
    try {
      for (; k < levels_; ++k) grew[k] = small_levels_[k].insert(small_images_[c][k]);
    } catch (...) {
      for (std::size_t j = 0; j < k; ++j)
        if (grew[j]) small_levels_[j].pop();
      throw;
    }
    return grew;
  }

  std::vector<bool> insert_wide(std::size_t c) {
    std::vector<bool> grew(levels_, false);
    for (std::size_t k = 0; k < levels_; ++k) grew[k] = wide_levels_[k].insert(images_[c][k]);
    return grew;
  }

  std::size_t cutoff_;
  std::size_t levels_;
  std::size_t dim_;
  bool wide_ = false;
  std::vector<SmallEchelon> small_levels_;
  std::vector<Echelon> wide_levels_;
  std::vector<std::vector<SmallEchelon::Vector>> small_images_;
  std::vector<std::vector<IntVector>> images_;
  std::vector<std::vector<std::optional<std::size_t>>> finite_pd_;
  std::vector<std::vector<bool>> undo_;
  std::vector<std::size_t> pushed_;
};

} // namespace phigap
