#include "evac/generators.hpp"

#include <algorithm>
#include <random>

namespace evac {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Instance random_instance(std::uint64_t seed, const RandomInstanceOptions& options) {
  std::mt19937_64 rng(seed);
  const int n = uniform(rng, options.min_nodes, options.max_nodes);
  const NodeId sink = uniform(rng, 0, n - 1);
  std::vector<NodeId> others;
  for (NodeId v = 0; v < n; ++v) {
    if (v != sink) others.push_back(v);
  }
  std::shuffle(others.begin(), others.end(), rng);

  const int d = uniform(rng, 1, std::min(options.max_sink_degree, n - 1));
  const Rational capacity = options.capacities[static_cast<std::size_t>(
      uniform(rng, 0, static_cast<int>(options.capacities.size()) - 1))];
  auto transit = [&] { return Rational(uniform(rng, options.min_transit, options.max_transit)); };

  std::vector<Edge> edges;
  for (int i = 0; i < d; ++i) edges.push_back({others[static_cast<std::size_t>(i)], sink, transit(), {}});
  for (std::size_t i = static_cast<std::size_t>(d); i < others.size(); ++i) {
    NodeId parent = others[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(i) - 1))];
    edges.push_back({others[i], parent, transit(), {}});
  }
  const int extra = static_cast<int>(options.extra_edge_ratio * n);
  for (int i = 0, count = uniform(rng, 0, extra); i < count; ++i) {
    NodeId a = uniform(rng, 0, n - 1), b = uniform(rng, 0, n - 1);
    if (a == b || b == sink) continue;
    edges.push_back({a, b, transit(), {}});
  }

  std::vector<NodeId> pool = others;
  std::shuffle(pool.begin(), pool.end(), rng);
  const int k = uniform(rng, 1, std::min(options.max_sources, n - 1));
  std::vector<NodeId> sources(pool.begin(), pool.begin() + k);
  std::sort(sources.begin(), sources.end());

  std::vector<Rational> supply(static_cast<std::size_t>(n));
  Rational total = 0;
  for (NodeId s : sources) {
    supply[static_cast<std::size_t>(s)] = uniform(rng, 1, options.max_supply);
    total += supply[static_cast<std::size_t>(s)];
  }
  supply[static_cast<std::size_t>(sink)] = -total;

  Instance out;
  out.net = std::make_shared<const Network>(n, std::move(edges), capacity, std::move(sources), sink);
  out.supply = SupplyFunction(std::move(supply));
  return out;
}

Instance small_reference_instance() {
  Instance out;
  out.net = std::make_shared<const Network>(
      3, std::vector<Edge>{{0, 2, Rational(3), {}}, {1, 2, Rational(1), {}}, {0, 1, Rational(1), {}}}, Rational(1),
      std::vector<NodeId>{0, 1}, 2, std::vector<std::string>{"v1", "v2", "t"});
  out.supply = SupplyFunction({Rational(2), Rational(3), Rational(-5)});
  return out;
}

}  // namespace evac
