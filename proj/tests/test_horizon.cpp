#include "evac/horizon.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace evac;

TEST(Horizon, ReferenceInstance) {
  Instance d1 = small_reference_instance();
  HorizonResult h = min_time_horizon(*d1.net, d1.supply);
  EXPECT_EQ(h.t_star, Rational(9, 2));
  EXPECT_EQ(h.a_star, (NodeSet{0, 1}));
  EXPECT_EQ(h.family.nonempty_subsets(), (std::vector<NodeSet>{{1}, {0}, {0, 1}}));
  EXPECT_EQ(h.family.entry_for({1}).theta, 4);
  EXPECT_EQ(h.family.entry_for({0, 0}).theta, Rational(7, 2));
  EXPECT_EQ(h.family.entry_for({1, 0}).theta, Rational(9, 2));
  EXPECT_TRUE(h.family.entry_for({0}).subset.empty());
  EXPECT_EQ(h.family.entry_for({0}).theta, 0);
  EXPECT_EQ(h.family.tuples_examined, 6u);
  EXPECT_TRUE(h.family.warnings.empty());
}

TEST(Horizon, CheckAdmits) {
  Instance d1 = small_reference_instance();
  EXPECT_TRUE(check_admits(*d1.net, {1}));
  EXPECT_FALSE(check_admits(*d1.net, {0}));
  EXPECT_TRUE(check_admits(*d1.net, {0, 0}));
  EXPECT_TRUE(check_admits(*d1.net, {1, 0}));
  EXPECT_FALSE(check_admits(*d1.net, {0, 1}));
  EXPECT_FALSE(check_admits(*d1.net, {1, 1}));
  EXPECT_FALSE(check_admits(*d1.net, {0, 0, 0}));
  EXPECT_THROW(check_admits(*d1.net, {2}), std::invalid_argument);
}

TEST(Horizon, ComputeAHat) {
  Instance d1 = small_reference_instance();
  EXPECT_EQ(compute_a_hat(*d1.net, d1.supply, {1, 0}).subset, (NodeSet{0, 1}));
  EXPECT_EQ(compute_a_hat(*d1.net, d1.supply, {0, 0}).subset, (NodeSet{0}));
  EXPECT_EQ(compute_a_hat(*d1.net, d1.supply, {1}).subset, (NodeSet{1}));
  EXPECT_TRUE(compute_a_hat(*d1.net, d1.supply, {0, 1}).subset.empty());
}

TEST(Horizon, ErrorsPropagate) {
  Network net(3, {{0, 2, Rational(1), {}}}, Rational(1), {0, 1}, 2);
  SupplyFunction w({Rational(1), Rational(1), Rational(-2)});
  EXPECT_THROW(min_time_horizon(net, w), UnreachableSupply);
  SupplyFunction bad({Rational(1), Rational(1), Rational(-3)});
  EXPECT_THROW(min_time_horizon(net, bad), InvalidInstance);
}

TEST(HorizonProperties, EnumerationMatchesPerTupleComputation) {
  RandomInstanceOptions options;
  options.max_sources = 5;
  for (const Instance& inst : support::random_corpus(80, 2000, options)) {
    const Network& net = *inst.net;
    AHatFamily family = enumerate_a_hat(net, inst.supply);
    AHatFamily parallel = enumerate_a_hat(net, inst.supply, {3});
    EXPECT_EQ(family.nonempty_subsets(), parallel.nonempty_subsets());
    EXPECT_EQ(family.admitted(), parallel.admitted());
    EXPECT_EQ(family.search_states, parallel.search_states);

    auto tuples = support::all_tuples(net.sources(), net.sink_in_degree());
    AHatFamily literal = build_family(net, inst.supply, tuples);
    EXPECT_EQ(family.nonempty_subsets(), literal.nonempty_subsets());
    EXPECT_EQ(family.admitted(), literal.admitted());
    for (const AdmitTuple& t : tuples) {
      EXPECT_EQ(check_admits(net, t), family.admitted().count(t) == 1);
    }
    EXPECT_TRUE(family.warnings.empty());
  }
}

TEST(HorizonProperties, MaximalSubsetIsUnionOfAdmittingSubsets) {
  RandomInstanceOptions options;
  options.max_sources = 5;
  for (const Instance& inst : support::random_corpus(80, 3000, options)) {
    const Network& net = *inst.net;
    support::SubsetScan scan = support::scan_subsets(net, inst.supply);
    AHatFamily family = enumerate_a_hat(net, inst.supply);
    for (const auto& [tuple, subsets] : scan.admitting) {
      if (tuple.empty()) continue;
      NodeSet u;
      for (const NodeSet& a : subsets) u = set_union(u, a);
      EXPECT_EQ(family.entry_for(tuple).subset, u);
      for (NodeId v : net.sources()) {
        if (contains(u, v)) continue;
        EXPECT_NE(successive_shortest_paths(net, set_union(u, {v})).origins(), tuple);
      }
    }
    EXPECT_EQ(static_cast<std::size_t>(family.admitted().size()), scan.admitting.size() - scan.admitting.count({}));
  }
}

TEST(HorizonProperties, OptimalHorizonIsMaximumOverAllSubsets) {
  for (const Instance& inst : support::random_corpus(80, 4000)) {
    support::SubsetScan scan = support::scan_subsets(*inst.net, inst.supply);
    Rational best = 0;
    for (const Rational& t : scan.theta) best = std::max(best, t);
    HorizonResult h = min_time_horizon(*inst.net, inst.supply);
    EXPECT_EQ(h.t_star, best);
    EXPECT_EQ(h.family.entries()[0].subset, NodeSet{});
  }
}
