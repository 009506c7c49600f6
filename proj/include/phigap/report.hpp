#pragma once

// Whole-algebra summary: partition, transfer matrix, kernel filtration and
// the homological dimensions.

#include "phigap/algebra.hpp"
#include "phigap/errors.hpp"
#include "phigap/exact_linalg.hpp"
#include "phigap/igusa_todorov.hpp"
#include "phigap/quiver.hpp"

#include <json.hpp>

#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace phigap {

struct AlgebraReport {
  std::string name;
  std::size_t vertex_count = 0;
  std::size_t arrow_count = 0;
  SimplesPartition partition;
  IntMatrix transfer_matrix;
  bool self_injective = false;
  std::optional<std::vector<VertexId>> nakayama_permutation;
  Dimension gldim;
  std::size_t findim = 0;
  std::size_t phidim = 0;
  KernelFiltration kernel_filtration;
  std::vector<std::string> warnings;
};

inline AlgebraReport analyze(const AlgebraContext& ctx) {
  const Quiver& q = ctx.quiver();
  AlgebraReport r;
  r.name = q.name();
  r.vertex_count = q.size();
  r.arrow_count = q.arrows().size();
  r.partition = ctx.partition();
  r.transfer_matrix = transfer_matrix(q);
  r.self_injective = ctx.nakayama().self_injective;
  r.nakayama_permutation = ctx.nakayama().permutation;
  r.gldim = gldim(q);
  r.findim = findim(q);
  r.phidim = phidim(ctx);
  r.kernel_filtration = ctx.filtration();
  if (!is_connected(q)) r.warnings.push_back("quiver is not connected");

  if (r.self_injective != (r.phidim == 0))
    throw invariant_violation("self-injectivity and phidim = 0 disagree");
  if (r.findim > r.phidim && !r.self_injective)
    throw invariant_violation("findim exceeds phidim");
  if (r.gldim != gldim_by_paths(q) && r.gldim)
    throw invariant_violation("gldim formulas disagree");
  return r;
}

namespace detail {

inline nlohmann::json vertex_names(const Quiver& q, const std::vector<VertexId>& vs) {
  nlohmann::json out = nlohmann::json::array();
  for (VertexId v : vs) out.push_back(q.vertex_name(v));
  return out;
}

inline nlohmann::json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

inline nlohmann::json vector_json(const IntVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

inline nlohmann::json dimension_json(const Dimension& d) {
  return d ? nlohmann::json(*d) : nlohmann::json("inf");
}

} // namespace detail

inline nlohmann::json to_json(const Quiver& q, const AlgebraReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < r.transfer_matrix.rows(); ++i)
    rows.push_back(detail::vector_json(r.transfer_matrix.row(i)));
  nlohmann::json generators = nlohmann::json::array();
  for (const auto& step : r.kernel_filtration.new_generators) {
    nlohmann::json g = nlohmann::json::array();
    for (const auto& v : step) g.push_back(detail::vector_json(v));
    generators.push_back(std::move(g));
  }
  nlohmann::json out{
      {"name", r.name},
      {"vertices", r.vertex_count},
      {"arrows", r.arrow_count},
      {"partition",
       {{"projective", detail::vertex_names(q, r.partition.projective)},
        {"injective", detail::vertex_names(q, r.partition.injective)},
        {"other", detail::vertex_names(q, r.partition.other)}}},
      {"transfer_matrix", std::move(rows)},
      {"self_injective", r.self_injective},
      {"gldim", detail::dimension_json(r.gldim)},
      {"findim", r.findim},
      {"phidim", r.phidim},
      {"kernel_filtration",
       {{"dims", r.kernel_filtration.dims},
        {"stabilization_index", r.kernel_filtration.stabilization_index},
        {"new_generators", std::move(generators)}}},
      {"warnings", r.warnings},
  };
  if (r.nakayama_permutation)
    out["nakayama_permutation"] = detail::vertex_names(q, *r.nakayama_permutation);
  return out;
}

inline std::string to_text(const Quiver& q, const AlgebraReport& r) {
  std::ostringstream os;
  auto names = [&](const std::vector<VertexId>& vs) {
    std::string s = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? ", " : "") + q.vertex_name(vs[i]);
    return s + "}";
  };
  os << "quiver " << r.name << ": " << r.vertex_count << " vertices, " << r.arrow_count
     << " arrows\n";
  os << "simples: projective " << names(r.partition.projective) << ", injective "
     << names(r.partition.injective) << ", other " << names(r.partition.other) << "\n";
  os << "transfer matrix:\n";
  for (std::size_t i = 0; i < r.transfer_matrix.rows(); ++i)
    os << "  " << to_string(r.transfer_matrix.row(i)) << "\n";
  os << "kernel filtration dims:";
  if (r.kernel_filtration.dims.empty()) os << " (T injective)";
  for (auto d : r.kernel_filtration.dims) os << " " << d;
  os << "\n";
  os << "self-injective: " << (r.self_injective ? "yes" : "no");
  if (r.nakayama_permutation) os << ", nu = " << names(*r.nakayama_permutation);
  os << "\n";
  os << "gldim: " << to_string(r.gldim) << "\n";
  os << "findim: " << r.findim << "\n";
  os << "phidim: " << r.phidim << "\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

} // namespace phigap
