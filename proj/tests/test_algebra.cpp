#include "test_util.hpp"

#include "phigap/algebra.hpp"
#include "phigap/families.hpp"
#include "phigap/module_expr.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace phigap;

namespace {

std::string omega_text(const Quiver& q, const std::string& m) {
  return format_module(q, syzygy(q, parse_module(q, m)));
}

} // namespace

TEST(Algebra, SyzygyOfSimplesIsRadical) {
  const Quiver q = testutil::fixture("ex-5-4vertex");
  EXPECT_EQ(omega_text(q, "S(1)"), "S(1) + S(2)");
  EXPECT_EQ(omega_text(q, "S(2)"), "S(3)");
  EXPECT_EQ(omega_text(q, "S(3)"), "S(4)");
  EXPECT_EQ(omega_text(q, "S(4)"), "S(3) + S(4)");
  EXPECT_EQ(omega_text(q, "P(1)/[2]"), "S(2)");
  EXPECT_EQ(omega_text(q, "P(3)"), "0");
  EXPECT_EQ(omega_text(q, "S(1)^3"), "S(1)^3 + S(2)^3");
}

TEST(Algebra, Normalization) {
  const Quiver q = testutil::fixture("ex-5-4vertex");
  EXPECT_EQ(format_module(q, parse_module(q, "P(1)/[1,2]")), "S(1)");
  EXPECT_EQ(format_module(q, parse_module(q, "P(4)/[4]")), "P(4)/[4]");
  EXPECT_THROW(parse_module(q, "P(2)/[4]"), input_error);
  const Quiver a = families::path(2);
  EXPECT_EQ(format_module(a, parse_module(a, "S(2)")), "P(2)");
  EXPECT_TRUE(is_semisimple(a, parse_module(a, "S(1) + S(2)")));
  EXPECT_FALSE(is_semisimple(a, parse_module(a, "P(1)")));
}

TEST(Algebra, ModuleExpressionErrors) {
  const Quiver q = testutil::fixture("ex-5-4vertex");
  EXPECT_THROW(parse_module(q, "S(9)"), input_error);
  EXPECT_THROW(parse_module(q, "Q(1)"), parse_error);
  EXPECT_THROW(parse_module(q, "S(1) +"), parse_error);
  EXPECT_THROW(parse_module(q, "S(1)^0"), parse_error);
  EXPECT_TRUE(parse_module(q, "0").is_zero());
  const Quiver g = families::grid(1, 2);
  EXPECT_EQ(format_module(g, parse_module(g, "S((0,1))")), "S((0,1))");
}

TEST(Algebra, TransferMatrixAndK1) {
  const Quiver q = families::path(3);
  const IntMatrix t = transfer_matrix(q);
  EXPECT_EQ(t, (IntMatrix{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
  const K1Coordinates k1(q);
  EXPECT_EQ(k1.dim(), 2U);
  EXPECT_FALSE(k1.index(2));
  EXPECT_EQ(projectivized_transfer(q), (IntMatrix{{0, 0}, {1, 0}}));
  const auto part = simples_partition(q);
  EXPECT_EQ(part.projective, (std::vector<VertexId>{2}));
  EXPECT_EQ(part.injective, (std::vector<VertexId>{0}));
  EXPECT_EQ(part.other, (std::vector<VertexId>{1}));
}

TEST(Algebra, DimensionsOfPaths) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const Quiver q = families::path(n);
    EXPECT_EQ(gldim(q), Dimension(n - 1));
    EXPECT_EQ(gldim_by_paths(q), Dimension(n - 1));
    EXPECT_EQ(findim(q), n - 1);
  }
  EXPECT_EQ(gldim(families::loop()), std::nullopt);
  EXPECT_EQ(findim(families::loop()), 0U);
}

TEST(Algebra, DimensionsMatchOracle) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Quiver q = testutil::random_quiver(seed, 6, 9);
    EXPECT_EQ(findim(q), oracle::findim(q)) << serialize_quiver(q);
    EXPECT_EQ(gldim(q), oracle::gldim(q)) << serialize_quiver(q);
    if (gldim(q)) {
      EXPECT_EQ(gldim(q), gldim_by_paths(q));
    }
    const auto spd = simple_pds(q);
    const auto ospd = oracle::simple_pd(q);
    for (const auto& m : oracle::all_local(q)) {
      const Atom a = Atom::local_quotient(m.vertex, m.removed);
      EXPECT_EQ(pd(q, spd, a), oracle::pd(q, m, ospd));
    }
  }
}

TEST(Algebra, PdOfSumIsMaximum) {
  const Quiver q = families::path(4);
  EXPECT_EQ(pd(q, parse_module(q, "S(1) + S(3)")), Dimension(3));
  EXPECT_EQ(pd(q, parse_module(q, "P(1)/[2]")), Dimension(3));
  const Quiver f = testutil::fixture("ex-5-4vertex");
  EXPECT_EQ(pd(f, parse_module(f, "S(1)")), std::nullopt);
  EXPECT_EQ(pd(f, parse_module(f, "P(2)")), Dimension(0));
}

TEST(Algebra, ClassVectors) {
  const Quiver q = families::path(3);
  EXPECT_EQ(class_vector(q, parse_module(q, "S(1)^2 + S(2) + S(3)")), make_vector({2, 1}));
  EXPECT_THROW(class_vector(q, parse_module(q, "P(1)")), input_error);
  EXPECT_EQ(omega_vector(q, Atom::simple(0)), make_vector({0, 1}));
}

TEST(Algebra, NakayamaLoopAndCycle) {
  const auto loop = nakayama_check(families::loop());
  EXPECT_TRUE(loop.self_injective);
  EXPECT_EQ(loop.permutation, (std::vector<VertexId>{0}));

  const auto c = nakayama_check(families::cycle(4));
  EXPECT_TRUE(c.self_injective);
  EXPECT_EQ(c.permutation, (std::vector<VertexId>{1, 2, 3, 0}));

  EXPECT_FALSE(nakayama_check(families::path(2)).self_injective);
  EXPECT_FALSE(nakayama_check(testutil::fixture("ex-5-4vertex")).self_injective);
  // two loops at one vertex: socle of P is S^2
  EXPECT_FALSE(nakayama_check(Quiver("q", {"1"}, {{{}, 0, 0}, {{}, 0, 0}})).self_injective);
}

TEST(Algebra, SelfInjectiveIffPermutationQuiver) {
  // kQ/J^2 is self-injective exactly when every vertex is isolated or has
  // one outgoing and one incoming arrow
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Quiver q = testutil::random_quiver(seed, 5, 6);
    bool permutation = true;
    for (VertexId v = 0; v < q.size(); ++v)
      if (q.out_degree(v) != q.in_degree(v) || q.out_degree(v) > 1) permutation = false;
    EXPECT_EQ(nakayama_check(q).self_injective, permutation) << serialize_quiver(q);
  }
}
