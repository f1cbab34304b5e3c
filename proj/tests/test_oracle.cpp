#include "evac/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace evac;

TEST(TimeExpanded, Layers) {
  Instance d1 = small_reference_instance();
  TimeExpandedNet g = build_time_expanded(*d1.net, Rational(9, 2), Rational(1, 2));
  EXPECT_EQ(g.layers(), 10);
  TimeExpandedNet one = build_time_expanded(*d1.net, 1, 1);
  EXPECT_TRUE(one.has_arc(1, 0));
  EXPECT_FALSE(one.has_arc(0, 0));
  EXPECT_FALSE(one.delivers(1, 0));
  EXPECT_NO_THROW(build_time_expanded(*d1.net, 1, Rational(1, 3)));
  EXPECT_THROW(build_time_expanded(*d1.net, 2, Rational(2, 5)), GridError);
  EXPECT_THROW(build_time_expanded(*d1.net, Rational(1, 2), 1), GridError);
  EXPECT_THROW(build_time_expanded(*d1.net, 1, 0), GridError);
}

TEST(TimeExpanded, DefaultStep) {
  Instance d1 = small_reference_instance();
  EXPECT_EQ(default_step(*d1.net, Rational(9, 2)), Rational(1, 2));
  EXPECT_EQ(default_step(*d1.net, 4), 1);
  Network zero(2, {{0, 1, Rational(0), {}}}, Rational(1), {0}, 1);
  EXPECT_EQ(default_step(zero, 0), 1);
}

TEST(Oracle, MaxOutflow) {
  Instance d1 = small_reference_instance();
  EXPECT_EQ(oracle_max_outflow(*d1.net, {0, 1}, Rational(9, 2), Rational(1, 2)), 5);
  EXPECT_EQ(oracle_max_outflow(*d1.net, {1}, 1, 1), 0);
  EXPECT_EQ(oracle_max_outflow(*d1.net, {0, 1}, 0), 0);
  EXPECT_EQ(oracle_max_outflow(*d1.net, {0}, Rational(9, 2)), 4);
}

TEST(Oracle, Feasibility) {
  Instance d1 = small_reference_instance();
  EXPECT_TRUE(oracle_feasible(*d1.net, d1.supply, Rational(9, 2)));
  EXPECT_FALSE(oracle_feasible(*d1.net, d1.supply, 4));
  EXPECT_TRUE(oracle_feasible(*d1.net, d1.supply, 100));
  SupplyFunction zero({Rational(0), Rational(0), Rational(0)});
  EXPECT_TRUE(oracle_feasible(*d1.net, zero, 0));
}

TEST(Oracle, TStar) {
  Instance d1 = small_reference_instance();
  EXPECT_EQ(oracle_t_star(*d1.net, d1.supply), Rational(9, 2));
  auto thetas = all_subset_thetas(*d1.net, d1.supply);
  EXPECT_EQ(thetas[1], Rational(7, 2));  // {v1}
  EXPECT_EQ(thetas[2], 4);               // {v2}
  EXPECT_EQ(thetas[3], Rational(9, 2));

  Network single(2, {{0, 1, Rational(3), {}}}, Rational(2), {0}, 1);
  EXPECT_EQ(oracle_t_star(single, SupplyFunction({Rational(5), Rational(-5)})), Rational(3) + Rational(5, 2));
}

TEST(Oracle, TooManySources) {
  std::vector<Edge> edges;
  std::vector<NodeId> sources;
  std::vector<Rational> w(22);
  for (int v = 0; v < 21; ++v) {
    edges.push_back({v, 21, Rational(1), {}});
    sources.push_back(v);
    w[static_cast<std::size_t>(v)] = 1;
  }
  w[21] = -21;
  Network net(22, edges, Rational(1), sources, 21);
  EXPECT_THROW(oracle_t_star(net, SupplyFunction(w)), InvalidInstance);
}

TEST(Verifier, DetectsEachConstraint) {
  Instance d1 = small_reference_instance();
  const Rational T(9, 2), step(1, 2);
  auto flow = oracle_feasible_flow(*d1.net, d1.supply, T, step);
  ASSERT_TRUE(flow.has_value());
  EXPECT_TRUE(verify_dynamic_flow(*flow, d1.supply, T).ok());

  TimeExpandedFlow over = *flow;
  over.amount(1, 0) = 1;  // capacity * step is 1/2
  EXPECT_EQ(verify_dynamic_flow(over, d1.supply, T).violated, 1);

  TimeExpandedFlow stranded = *flow;
  for (int j = 0; j < stranded.grid.slots; ++j) {
    if (stranded.amount(0, j) > 0) {
      stranded.amount(0, j) = 0;
      break;
    }
  }
  EXPECT_EQ(verify_dynamic_flow(stranded, d1.supply, T).violated, 3);

  // v2 forwarding flow before any has arrived from v1 breaks storage.
  SupplyFunction w({Rational(1, 2), Rational(0), Rational(-1, 2)});
  Network chain(3, {{0, 1, Rational(1), {}}, {1, 2, Rational(1), {}}}, Rational(1), {0}, 2);
  TimeExpandedFlow relay(build_time_expanded(chain, 2, 1));
  relay.amount(1, 0) = Rational(1, 2);
  relay.amount(0, 0) = Rational(1, 2);
  EXPECT_EQ(verify_dynamic_flow(relay, w, 2).violated, 2);
  relay.amount(1, 0) = 0;
  relay.amount(1, 1) = Rational(1, 2);
  relay.amount(0, 0) = Rational(1, 2);
  EXPECT_EQ(verify_dynamic_flow(relay, w, 2).violated, 3);  // arrives at 3 > 2
  TimeExpandedFlow ok(build_time_expanded(chain, 3, 1));
  ok.amount(0, 0) = Rational(1, 2);
  ok.amount(1, 1) = Rational(1, 2);
  EXPECT_TRUE(verify_dynamic_flow(ok, w, 3).ok());
}

TEST(OracleProperties, AgreesWithPathFormula) {
  for (const Instance& inst : support::random_corpus(40, 5000)) {
    const Network& net = *inst.net;
    for (const NodeSet& a : support::all_subsets(net.sources())) {
      if (a.empty()) continue;
      SsspResult r = successive_shortest_paths(net, a);
      for (int T = 0; T <= 12; T += 3) {
        EXPECT_EQ(oracle_max_outflow(net, a, T, 1), max_outflow(r, net.capacity(), T));
      }
      Rational half(15, 2);
      EXPECT_EQ(oracle_max_outflow(net, a, half), max_outflow(r, net.capacity(), half));
    }
  }
}

TEST(OracleProperties, RefinementMonotone) {
  for (const Instance& inst : support::random_corpus(30, 6000)) {
    const Network& net = *inst.net;
    NodeSet a = net.sources();
    for (int T : {3, 7}) {
      Rational coarse = oracle_max_outflow(net, a, T, 1);
      EXPECT_EQ(oracle_max_outflow(net, a, T, Rational(1, 2)), coarse);
      EXPECT_EQ(oracle_max_outflow(net, a, T, Rational(1, 4)), coarse);
    }
  }
}

TEST(OracleProperties, FeasibilityThreshold) {
  for (const Instance& inst : support::random_corpus(30, 7000)) {
    Rational t_star = oracle_t_star(*inst.net, inst.supply);
    Rational step = default_step(*inst.net, t_star);
    EXPECT_TRUE(oracle_feasible(*inst.net, inst.supply, t_star, step));
    EXPECT_FALSE(oracle_feasible(*inst.net, inst.supply, t_star - step, step));
  }
}
