#include <gtest/gtest.h>

#include <set>

#include "ldcflow/classify.hpp"
#include "ldcflow/errors.hpp"
#include "ldcflow/gadgets.hpp"
#include "ldcflow/mff.hpp"
#include "ldcflow/msf.hpp"

using namespace ldc;

namespace {

std::vector<Rational> caps(const Network& n) {
  std::vector<Rational> out;
  for (const auto& e : n.edges()) out.push_back(e.cap);
  return out;
}

Rational cap_of(const Network& n, const NodeId& u, const NodeId& v) { return n.edges()[*n.edge_index(u, v)].cap; }

}  // namespace

TEST(Gsch, Structure) {
  const Network n = gsch(1, "v", Polarity::Minus);
  EXPECT_EQ(n.node_count(), 3u);
  EXPECT_EQ(n.edge_count(), 3u);
  EXPECT_EQ(cap_of(n, "g", "v"), Rational(1));
  EXPECT_EQ(cap_of(n, "g", "l"), Rational(2));
  EXPECT_EQ(cap_of(n, "v", "l"), Rational(1));
  EXPECT_EQ(n.role("v"), NodeRole::Load);
  EXPECT_TRUE(n.is_ldc());

  const Network p = gsch(3, "v", Polarity::Port);
  EXPECT_EQ(cap_of(p, "g", "v"), Rational(3));
  EXPECT_EQ(cap_of(p, "g", "l"), Rational(6));
  EXPECT_EQ(cap_of(p, "v", "l"), Rational(3));
  EXPECT_EQ(p.role("v"), NodeRole::Plain);
  EXPECT_EQ(gsch(1, "v", Polarity::Plus).role("v"), NodeRole::Generator);
}

TEST(Gsch, Prefix) {
  const Network n = gsch(1, "port", Polarity::Port, "X1.");
  EXPECT_TRUE(n.has_node("X1.g"));
  EXPECT_TRUE(n.has_node("X1.l"));
  EXPECT_TRUE(n.has_node("port"));
}

TEST(Gsch, RejectsNonpositiveSize) {
  for (const Rational& x : {Rational(0), Rational(-1)}) {
    try {
      (void)gsch(x, "v", Polarity::Minus);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NonpositiveX);
    }
  }
  EXPECT_THROW((void)gfch(0, "v", Polarity::Minus), Error);
}

TEST(Gsch, SwitchingValueAndPortChoices) {
  for (const Rational& x : {Rational(1), Rational(2), Rational(7, 2)}) {
    const Network n = gsch(x, "v", Polarity::Minus);
    EXPECT_EQ(solve_msf_exhaustive(n).value, 3 * x);
    std::set<Rational> loads;
    for (const auto& o : msf_optima(n)) loads.insert(o.solution.load.at("v"));
    EXPECT_EQ(loads, (std::set<Rational>{0, x}));
  }
}

// With the port as a generator, forcing it to supply anything leaves the
// gadget's own generator below 3x.
TEST(Gsch, PortSupplyCostsGeneration) {
  for (const Rational& x : {Rational(1), Rational(2), Rational(7, 2)}) {
    const Network n = gsch(x, "v", Polarity::Plus);
    const auto optima = msf_optima(n);
    ASSERT_FALSE(optima.empty());
    for (const auto& o : optima) {
      const Network sub = subnetwork(n, o.switched);
      FlowModel m = build_flow_model(sub, std::vector<EdgeMode>(sub.edge_count(), EdgeMode::Kept));
      const std::size_t v = *sub.node_index("v");
      const std::size_t g = *sub.node_index("g");
      m.lp.set_bounds(*m.gen[v], x / 10, std::nullopt);
      // best own generation while the port supplies at least x/10
      m.lp.set_objective({{*m.gen[g], 1}});
      const LpResult r = solve_lp(m.lp);
      if (r.status != LpStatus::Optimal) continue;
      EXPECT_LT(r[*m.gen[g]], 3 * x);
    }
  }
}

TEST(Gfch, Structure) {
  const Network n = gfch(1, "v", Polarity::Minus);
  EXPECT_EQ(n.node_count(), 6u);
  EXPECT_EQ(n.edge_count(), 7u);
  EXPECT_EQ(n.facts_edges().size(), 1u);
  const Edge& ev = n.edges()[*n.edge_index("e", "v")];
  EXPECT_EQ(ev.s_min, Rational(2, 5));
  EXPECT_EQ(ev.s_max, Rational(8, 5));
  EXPECT_EQ(max_degree(n), 4u);

  const Network p = gfch(3, "v", Polarity::Port);
  const std::vector<std::pair<const char*, const char*>> order{{"g", "v"}, {"e", "v"}, {"e", "c"}, {"v", "c"},
                                                               {"t", "c"}, {"t", "l"}, {"c", "l"}};
  const std::vector<Rational> expected{3,  Rational(6, 5),    Rational(39, 20), Rational(27, 10),
                                       3, Rational(213, 20), Rational(153, 20)};
  for (std::size_t i = 0; i < order.size(); ++i) {
    EXPECT_EQ(cap_of(p, order[i].first, order[i].second), expected[i]) << order[i].first << order[i].second;
  }
  EXPECT_EQ(caps(p).size(), 7u);
}

TEST(Gfch, FactsValue) {
  for (const Rational& x : {Rational(1), Rational(2), Rational(10)}) {
    const Network n = gfch(x, "v", Polarity::Minus);
    const MffOutcome r = solve_mff_endpoints(n);
    EXPECT_EQ(r.value, x * Rational(61, 10));
    EXPECT_EQ(directed_flow(r.solution, "g", "v"), x);
    EXPECT_EQ(directed_flow(r.solution, "e", "c"), x * Rational(13, 20));
    EXPECT_EQ(directed_flow(r.solution, "t", "c"), x);
  }
}

TEST(Gadgets, AreCactiWithSmallDegree) {
  for (Polarity p : {Polarity::Minus, Polarity::Plus, Polarity::Port}) {
    const Network s = gsch(2, "v", p);
    EXPECT_TRUE(is_cactus(s));
    EXPECT_LE(max_degree(s), 3u);
    const Network f = gfch(2, "v", p);
    EXPECT_TRUE(is_cactus(f));
    EXPECT_LE(max_degree(f), 4u);
  }
}
