#include "test_util.hpp"

#include "phigap/families.hpp"
#include "phigap/quiver.hpp"
#include "phigap/quiver_io.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace phigap;

namespace {

const char* const four_vertex = R"(
# comment line
quiver four {
  vertices: 1 2 3 4;
  arrows:
    a: 1 -> 1;
    b: 1 -> 2;
    2 -> 3;
    3 -> 4; 4 -> 3;
    f: 4 -> 4;
}
)";

parse_error parse_failure(const std::string& text) {
  try {
    parse_quiver(text);
  } catch (const parse_error& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return parse_error("none", 0, 0);
}

} // namespace

TEST(Quiver, ParsesDsl) {
  const Quiver q = parse_quiver(four_vertex);
  EXPECT_EQ(q.name(), "four");
  EXPECT_EQ(q.size(), 4U);
  EXPECT_EQ(q.arrows().size(), 6U);
  EXPECT_EQ(q.arrows()[0].label, std::optional<std::string>("a"));
  EXPECT_FALSE(q.arrows()[2].label);
  EXPECT_EQ(q.out_degree(q.require("1")), 2U);
  EXPECT_EQ(q.in_degree(q.require("3")), 2U);
  EXPECT_EQ(q.arrow_count(q.require("4"), q.require("4")), 1U);
}

TEST(Quiver, DslRoundTrip) {
  const Quiver q = parse_quiver(four_vertex);
  EXPECT_EQ(parse_quiver(serialize_quiver(q)), q);
  EXPECT_EQ(parse_quiver(to_json(q).dump()), q);
}

TEST(Quiver, ParseErrorsCarryPosition) {
  auto e = parse_failure("quiver q {\n  vertices: 1 2;\n  arrows:\n    1 -> 3;\n}\n");
  EXPECT_EQ(e.line(), 4U);
  EXPECT_EQ(e.column(), 10U);
  EXPECT_NE(std::string(e.what()).find("undeclared vertex '3'"), std::string::npos);

  e = parse_failure("quiver q {\n  vertices: 1 1;\n  arrows:\n}\n");
  EXPECT_EQ(e.line(), 2U);
  EXPECT_EQ(e.column(), 15U);

  e = parse_failure("quiver q {\n  vertices: 1;\n  arrows:\n    1 -> 1\n}\n");
  EXPECT_EQ(e.line(), 5U);
  EXPECT_EQ(e.column(), 1U);

  e = parse_failure("quiver q { vertices: ; arrows: }");
  EXPECT_EQ(e.line(), 1U);
  EXPECT_EQ(e.column(), 22U);

  e = parse_failure("graph q {}");
  EXPECT_EQ(e.line(), 1U);
  EXPECT_EQ(e.column(), 1U);

  e = parse_failure("quiver q { vertices: 1; arrows: } extra");
  EXPECT_EQ(e.column(), 35U);
}

TEST(Quiver, MalformedJson) {
  EXPECT_THROW(parse_quiver("{\"vertices\": [\"1\"], \"arrows\": [{\"source\": \"1\"}]}"), input_error);
  EXPECT_THROW(parse_quiver("{\"vertices\": [\"1\"], \"arrows\": [{\"source\": \"1\", \"target\": \"2\"}]}"),
               input_error);
  EXPECT_THROW(parse_quiver("{ not json"), input_error);
}

TEST(Quiver, RejectsDuplicateVertices) {
  EXPECT_THROW(Quiver("q", {"a", "a"}, {}), input_error);
  EXPECT_THROW(Quiver("q", {"a"}, {{{}, 0, 1}}), input_error);
}

TEST(Quiver, CycleAnalysis) {
  // 0 -> 1 -> 2 -> 1, 3 -> 0, 4 isolated with a loop, 5 -> 6
  const Quiver q("q", {"0", "1", "2", "3", "4", "5", "6"},
                 {{{}, 0, 1}, {{}, 1, 2}, {{}, 2, 1}, {{}, 3, 0}, {{}, 4, 4}, {{}, 5, 6}});
  const auto cyc = on_cycle(q);
  EXPECT_EQ(cyc, (std::vector<bool>{false, true, true, false, true, false, false}));
  const auto reach = reaches_cycle(q);
  EXPECT_EQ(reach, (std::vector<bool>{true, true, true, true, true, false, false}));
  const auto longest = longest_paths(q);
  EXPECT_FALSE(longest[0]);
  EXPECT_EQ(longest[5], std::optional<std::size_t>(1));
  EXPECT_EQ(longest[6], std::optional<std::size_t>(0));
  EXPECT_FALSE(is_connected(q));
  const auto prof = analyze_vertices(q);
  EXPECT_TRUE(prof[6].is_sink);
  EXPECT_TRUE(prof[3].is_source);
}

TEST(Quiver, CycleAnalysisMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Quiver q = testutil::random_quiver(seed, 7, 10);
    const std::size_t n = q.size();
    // reachability closure
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (const auto& a : q.arrows()) r[a.source][a.target] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (r[i][k] && r[k][j]) r[i][j] = true;
    const auto cyc = on_cycle(q);
    const auto reach = reaches_cycle(q);
    for (std::size_t v = 0; v < n; ++v) {
      EXPECT_EQ(cyc[v], r[v][v]) << "seed " << seed;
      bool expected = false;
      for (std::size_t w = 0; w < n; ++w)
        if ((w == v || r[v][w]) && r[w][w]) expected = true;
      EXPECT_EQ(reach[v], expected) << "seed " << seed;
    }
  }
}

TEST(Quiver, OppositeIsInvolution) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Quiver q = testutil::random_quiver(seed, 6, 10);
    EXPECT_EQ(opposite_quiver(opposite_quiver(q)), q);
    const Quiver op = opposite_quiver(q);
    for (VertexId v = 0; v < q.size(); ++v) EXPECT_EQ(q.out_degree(v), op.in_degree(v));
  }
  EXPECT_EQ(opposite_quiver(parse_quiver(four_vertex)).name(), "four_op");
}

TEST(Quiver, SeparatedQuiver) {
  const Quiver q = parse_quiver(four_vertex);
  const Quiver s = separated_quiver(q);
  EXPECT_EQ(s.size(), 8U);
  EXPECT_EQ(s.arrows().size(), q.arrows().size());
  EXPECT_TRUE(s.find("4'"));
  for (const auto& a : s.arrows()) {
    EXPECT_LT(a.source, 4U);
    EXPECT_GE(a.target, 4U);
  }
  // primed names already in use force a longer suffix
  const Quiver primed("p", {"1", "1'"}, {{{}, 0, 1}});
  EXPECT_TRUE(separated_quiver(primed).find("1''"));
}

TEST(Quiver, OnePointExtensionAddsOneSource) {
  const Quiver q = parse_quiver(four_vertex);
  const std::vector<std::string> targets{"2", "2", "3"};
  const Quiver e = one_point_extension(q, targets);
  EXPECT_EQ(e.size(), 5U);
  const VertexId v = e.size() - 1;
  EXPECT_EQ(e.vertex_name(v), "v");
  EXPECT_TRUE(e.is_source(v));
  EXPECT_EQ(e.arrow_count(v, e.require("2")), 2U);
  EXPECT_EQ(e.arrows().size(), q.arrows().size() + 3);
  EXPECT_THROW(one_point_extension(q, std::vector<std::string>{}), input_error);
  EXPECT_THROW(one_point_extension(q, targets, "1"), input_error);
  EXPECT_THROW(one_point_extension(q, std::vector<std::string>{"9"}), input_error);
}

TEST(Quiver, SubquiverClosure) {
  const Quiver q = parse_quiver(four_vertex);
  const std::vector<std::string> keep{"3", "4"};
  const Quiver s = successor_closed_subquiver(q, keep);
  EXPECT_EQ(s.size(), 2U);
  EXPECT_EQ(s.arrows().size(), 3U);
  const std::vector<std::string> bad{"2"};
  EXPECT_THROW(successor_closed_subquiver(q, bad), input_error);
}

TEST(Quiver, SubquiverClosureFuzz) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Quiver q = testutil::random_quiver(seed, 7, 10);
    std::mt19937_64 rng(seed);
    std::vector<std::string> keep;
    std::vector<bool> kept(q.size(), false);
    for (VertexId v = 0; v < q.size(); ++v)
      if (rng() % 2) {
        keep.push_back(q.vertex_name(v));
        kept[v] = true;
      }
    if (keep.empty()) continue;
    bool closed = true;
    for (const auto& a : q.arrows())
      if (kept[a.source] && !kept[a.target]) closed = false;
    if (!closed) {
      EXPECT_THROW(successor_closed_subquiver(q, keep), input_error);
      continue;
    }
    const Quiver s = successor_closed_subquiver(q, keep);
    EXPECT_EQ(s.size(), keep.size());
    for (VertexId v = 0; v < s.size(); ++v)
      EXPECT_EQ(s.out_degree(v), q.out_degree(q.require(s.vertex_name(v))));
  }
}

TEST(Families, Shapes) {
  EXPECT_EQ(families::path(4).arrows().size(), 3U);
  EXPECT_EQ(families::cycle(5).arrows().size(), 5U);
  EXPECT_EQ(families::complete(3, true).arrows().size(), 9U);
  EXPECT_EQ(families::complete(3, false).arrows().size(), 6U);
  const Quiver g = families::gamma(4, 6);
  EXPECT_EQ(g.size(), 6U);
  EXPECT_EQ(g.arrows().size(), 1U + 3U + 1U + 2U * 2U);
  const Quiver grid = families::grid(1, 2);
  EXPECT_TRUE(same_structure(grid, testutil::fixture("grid-1-2")));
  EXPECT_THROW(families::grid(0, 2), input_error);
}

TEST(Families, RandomQuiverIsDeterministic) {
  const families::RandomQuiverConfig cfg{5, 9, true};
  EXPECT_EQ(families::random_quiver(cfg, 42), families::random_quiver(cfg, 42));
  std::set<std::string> distinct;
  for (std::uint64_t i = 0; i < 20; ++i)
    distinct.insert(serialize_quiver(families::random_quiver(cfg, families::sample_seed(42, i))));
  EXPECT_GT(distinct.size(), 15U);
  const Quiver q = families::random_quiver({4, 30, false}, 7);
  for (const auto& a : q.arrows()) EXPECT_NE(a.source, a.target);
  EXPECT_THROW(families::random_quiver({1, 1, false}, 1), input_error);
}
