#include <gtest/gtest.h>

#include <numeric>

#include "ldcflow/classify.hpp"
#include "ldcflow/errors.hpp"
#include "ldcflow/reductions.hpp"
#include "oracles.hpp"

using namespace ldc;

namespace {

ExactCover3Instance six_element_cover() {
  return {{"a", "b", "c", "d", "e", "f"}, {{"a", "b", "c"}, {"b", "c", "d"}, {"d", "e", "f"}}};
}

ExactCover3Instance overlapping_pair() { return {{"a", "b", "c", "d"}, {{"a", "b", "c"}, {"b", "c", "d"}}}; }

HamiltonianInstance four_node_graph() {
  return {{"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"c", "d"}, {"c", "b"}, {"d", "b"}}, "a", "b"};
}

HamiltonianInstance star() { return {{"a", "b", "c", "d"}, {{"a", "c"}, {"c", "b"}, {"c", "d"}}, "a", "b"}; }

template <class Fn>
void expect_code(ErrorCode code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Reductions, KindNames) {
  for (auto k : {ReductionKind::ExactCoverMff, ReductionKind::ExactCoverMsf, ReductionKind::Hamiltonian,
                 ReductionKind::SubsetSumCactusMsf, ReductionKind::SubsetSumCactusMff, ReductionKind::SubsetSumTree}) {
    EXPECT_EQ(parse_reduction_kind(to_string(k)), k);
  }
  expect_code(ErrorCode::Parse, [] { (void)parse_reduction_kind("nope"); });
}

TEST(Reductions, ExactCoverSizesAndPredictions) {
  const auto mff = encode_exact_cover_mff(six_element_cover());
  EXPECT_EQ(mff.predicted_value, Rational(639, 10));
  // glue: g, l, 6 elements, 3 ports; 5 internal nodes per gadget
  EXPECT_EQ(mff.network.node_count(), 2u + 6 + 3 + 3 * 5);
  EXPECT_EQ(mff.network.edge_count(), 1u + 2 * 6 + 3 * 3 + 3 * 7);
  EXPECT_EQ(mff.network.facts_edges().size(), 3u);
  EXPECT_TRUE(validate_network(mff.network).ok());

  const auto msf = encode_exact_cover_msf(six_element_cover());
  EXPECT_EQ(msf.predicted_value, Rational(36));
  EXPECT_EQ(msf.network.node_count(), 2u + 6 + 3 + 3 * 2);
  EXPECT_EQ(msf.network.edge_count(), 1u + 2 * 6 + 3 * 3 + 3 * 3);
  EXPECT_TRUE(msf.network.is_ldc());

  EXPECT_EQ(encode_exact_cover_mff(overlapping_pair()).predicted_value, 3 + Rational(183, 5) + 4);

  const auto empty = encode_exact_cover_mff({});
  EXPECT_EQ(empty.predicted_value, Rational(3));
  EXPECT_EQ(empty.network.edge_count(), 1u);
  EXPECT_EQ(solve_mff_endpoints(empty.network).value, Rational(3));
  EXPECT_EQ(solve_msf_exhaustive(encode_exact_cover_msf({}).network).value, Rational(3));
}

TEST(Reductions, ExactCoverRejectsBadInstances) {
  expect_code(ErrorCode::InvalidInstance, [] { (void)encode_exact_cover_mff({{"a", "b"}, {{"a", "b", "c"}}}); });
  expect_code(ErrorCode::InvalidInstance, [] { (void)encode_exact_cover_mff({{"a", "b", "c"}, {{"a", "a", "b"}}}); });
  expect_code(ErrorCode::InvalidInstance, [] { (void)encode_exact_cover_msf({{"a", "a", "b"}, {}}); });
  expect_code(ErrorCode::InvalidInstance,
              [] { (void)encode_exact_cover_msf({{"a", "b", "c"}, {{"a", "b", "c"}, {"c", "b", "a"}}}); });
}

TEST(Reductions, HamiltonianShape) {
  const auto enc = encode_hamiltonian(four_node_graph());
  EXPECT_EQ(enc.network.node_count(), 10u);
  EXPECT_EQ(enc.network.edge_count(), 12u);
  EXPECT_EQ(enc.predicted_value, Rational(2));
  EXPECT_EQ(enc.network.role("$v0"), NodeRole::Generator);
  EXPECT_EQ(enc.network.role("$v5"), NodeRole::Load);
  EXPECT_TRUE(enc.network.has_node("$v4'"));
  EXPECT_LE(max_degree(enc.network), 4u);
  expect_code(ErrorCode::InvalidInstance, [] { (void)encode_hamiltonian({{"a", "b"}, {{"a", "a"}}, "a", "b"}); });
  expect_code(ErrorCode::InvalidInstance, [] { (void)encode_hamiltonian({{"a", "b"}, {}, "a", "a"}); });
  expect_code(ErrorCode::InvalidInstance, [] { (void)encode_hamiltonian({{"a", "$v1"}, {}, "a", "$v1"}); });
}

TEST(Reductions, HamiltonianValues) {
  EXPECT_EQ(solve_msf_bnb(encode_hamiltonian(four_node_graph()).network).value, Rational(2));
  EXPECT_LT(solve_msf_bnb(encode_hamiltonian(star()).network).value, Rational(2));
  const auto edge = encode_hamiltonian({{"a", "b"}, {{"a", "b"}}, "a", "b"});
  EXPECT_EQ(solve_msf_exhaustive(edge.network).value, Rational(2));
}

TEST(Reductions, CactusShapeAndValues) {
  const SubsetSumInstance inst{{1, 2, 3}, 5};
  const auto msf = encode_subset_sum_cactus_msf(inst);
  EXPECT_EQ(msf.predicted_value, Rational(26));
  EXPECT_EQ(msf.network.node_count(), 2u + 3 + 3 * 2);
  EXPECT_EQ(msf.network.edge_count(), 3u + 2 + 3 * 3);
  EXPECT_TRUE(is_cactus(msf.network));
  EXPECT_LE(max_degree(msf.network), 5u);

  const auto mff = encode_subset_sum_cactus_mff(inst);
  EXPECT_EQ(mff.predicted_value, 3 + 5 + Rational(61, 10) * 6);
  EXPECT_TRUE(is_cactus(mff.network));
  EXPECT_EQ(mff.network.facts_edges().size(), 3u);

  EXPECT_EQ(encode_subset_sum_cactus_msf({{2}, 1}).predicted_value, Rational(10));
  EXPECT_EQ(encode_subset_sum_cactus_msf({{1}, 1}).predicted_value, Rational(7));
  EXPECT_LT(solve_msf_exhaustive(encode_subset_sum_cactus_msf({{2}, 1}).network).value, Rational(10));
  EXPECT_EQ(solve_msf_exhaustive(encode_subset_sum_cactus_msf({{1}, 1}).network).value, Rational(7));
}

TEST(Reductions, CactusFactsValues) {
  const auto two = encode_subset_sum_cactus_mff({{1, 2}, 2});
  EXPECT_EQ(two.predicted_value, Rational(233, 10));
  EXPECT_EQ(solve_mff_endpoints(two.network).value, Rational(233, 10));

  const auto bad = encode_subset_sum_cactus_mff({{2}, 1});
  EXPECT_LT(solve_mff_endpoints(bad.network).value, bad.predicted_value);
  EXPECT_LT(solve_mff_grid(bad.network, 8).value, bad.predicted_value);

  const auto one = encode_subset_sum_cactus_mff({{1}, 1});
  EXPECT_EQ(one.predicted_value, 4 + Rational(61, 10));
  EXPECT_EQ(solve_mff_endpoints(one.network).value, one.predicted_value);
}

TEST(Reductions, SubsetSumRejectsBadInstances) {
  expect_code(ErrorCode::InvalidInstance, [] { (void)encode_subset_sum_tree({{1, 1}, 1}); });
  expect_code(ErrorCode::InvalidInstance, [] { (void)encode_subset_sum_tree({{0, 1}, 1}); });
  expect_code(ErrorCode::InvalidInstance, [] { (void)encode_subset_sum_cactus_msf({{1}, 0}); });
}

TEST(Reductions, TreeShape) {
  const SubsetSumInstance inst{{2, 1, 3}, 5};
  const auto enc = encode_subset_sum_tree(inst);
  EXPECT_EQ(enc.predicted_value, Rational(12));
  // n = 4: g, g1, g5, p, a1..a5, l1..l5
  EXPECT_EQ(enc.network.node_count(), 4u + 5 + 5);
  EXPECT_EQ(enc.network.edge_count(), 7u + 2 * 3 + 4);
  const Edge& p4 = enc.network.edges()[*enc.network.edge_index("p", "a4")];
  EXPECT_EQ(p4.s_min, Rational(1));
  EXPECT_EQ(p4.cap, Rational(3));
  const Edge& side = enc.network.edges()[*enc.network.edge_index("g", "g5")];
  EXPECT_EQ(side.s_min, Rational(2, 5));
  EXPECT_TRUE(is_connected(enc.network));

  EXPECT_EQ(encode_subset_sum_tree({{2, 3}, 4}).predicted_value, Rational(10));
  EXPECT_EQ(encode_subset_sum_tree({{1, 2}, 3}).predicted_value, Rational(7));
  // m = 0 drops the chain
  const auto tiny = encode_subset_sum_tree({{1}, 1});
  EXPECT_EQ(tiny.predicted_value, Rational(3));
  EXPECT_FALSE(tiny.network.edge_index("a1", "a2"));
}

TEST(Reductions, TreeWitness) {
  const SubsetSumInstance inst{{2, 1, 3}, 5};
  const auto enc = encode_subset_sum_tree(inst);
  const auto [switched, sol] = witness_tree(inst, {2, 3});
  EXPECT_EQ(switched.removed, (std::set<EdgeKey>{make_key("p", "a3")}));
  const auto report = validate_solution(subnetwork(enc.network, switched), sol);
  EXPECT_TRUE(report.ok()) << report.summary();
  EXPECT_EQ(total_generation(sol), Rational(12));

  const SubsetSumInstance one{{1}, 1};
  const auto [s1, sol1] = witness_tree(one, {1});
  EXPECT_TRUE(validate_solution(subnetwork(encode_subset_sum_tree(one).network, s1), sol1).ok());
  EXPECT_EQ(total_generation(sol1), Rational(3));

  expect_code(ErrorCode::NotACertificate, [&] { (void)witness_tree(inst, {1}); });
  expect_code(ErrorCode::NotACertificate, [&] { (void)witness_tree(inst, {5}); });
}

TEST(Reductions, TreeWitnessAlwaysValidates) {
  oracle::Rng rng(83);
  for (int trial = 0; trial < 40; ++trial) {
    const SubsetSumInstance inst = oracle::random_subset_sum(rng, 5, 15);
    const std::size_t n = inst.values.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<long> chosen;
      long total = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1u) {
          chosen.push_back(inst.values[i]);
          total += inst.values[i];
        }
      }
      if (total != inst.target) continue;
      const auto enc = encode_subset_sum_tree(inst);
      const auto [switched, sol] = witness_tree(inst, chosen);
      const auto report = validate_solution(subnetwork(enc.network, switched), sol);
      EXPECT_TRUE(report.ok()) << report.summary();
      EXPECT_EQ(total_generation(sol), enc.predicted_value);
    }
  }
}

TEST(Reductions, TreeValues) {
  EXPECT_EQ(solve_msf_bnb(encode_subset_sum_tree({{2, 1, 3}, 5}).network).value, Rational(12));
  EXPECT_LT(solve_msf_bnb(encode_subset_sum_tree({{2, 3}, 4}).network).value, Rational(10));
  EXPECT_EQ(solve_msf_bnb(encode_subset_sum_tree({{1, 2}, 3}).network).value, Rational(7));
}

TEST(Reductions, DecodeSubsetSum) {
  const SubsetSumInstance cactus{{1, 2, 3}, 5};
  const MsfOutcome c = solve_msf_bnb(encode_subset_sum_cactus_msf(cactus).network);
  const auto v = decode_subset_sum(c, cactus, ReductionKind::SubsetSumCactusMsf);
  EXPECT_EQ(std::accumulate(v.begin(), v.end(), 0L), 5);

  const SubsetSumInstance tree{{2, 1, 3}, 5};
  const MsfOutcome t = solve_msf_bnb(encode_subset_sum_tree(tree).network);
  const auto w = decode_subset_sum(t, tree, ReductionKind::SubsetSumTree);
  EXPECT_EQ(std::accumulate(w.begin(), w.end(), 0L), 5);

  MsfOutcome low = c;
  low.value = 25;
  expect_code(ErrorCode::NotOptimal, [&] { (void)decode_subset_sum(low, cactus, ReductionKind::SubsetSumCactusMsf); });

  const SubsetSumInstance facts{{1, 2}, 2};
  const MffOutcome f = solve_mff_endpoints(encode_subset_sum_cactus_mff(facts).network);
  EXPECT_EQ(decode_subset_sum(f, facts, ReductionKind::SubsetSumCactusMff), (std::vector<long>{2}));
}

TEST(Reductions, DecodeExactCover) {
  const auto inst = six_element_cover();
  const MffOutcome r = solve_mff_endpoints(encode_exact_cover_mff(inst).network);
  ASSERT_EQ(r.value, Rational(639, 10));
  EXPECT_EQ(decode_exact_cover(r, inst), (std::vector<std::size_t>{0, 2}));

  const MffOutcome e = solve_mff_endpoints(encode_exact_cover_mff({}).network);
  EXPECT_TRUE(decode_exact_cover(e, {}).empty());

  MffOutcome low = r;
  low.value = 60;
  expect_code(ErrorCode::NotOptimal, [&] { (void)decode_exact_cover(low, inst); });

  const MsfOutcome s = solve_msf_bnb(encode_exact_cover_msf(inst).network);
  ASSERT_EQ(s.value, Rational(36));
  EXPECT_EQ(decode_exact_cover(s, inst), (std::vector<std::size_t>{0, 2}));
}
