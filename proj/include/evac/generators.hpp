#pragma once

#include "evac/network.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace evac {

/// Network plus supplies. The network sits behind a shared pointer so flows
/// and families that refer to it stay valid when the instance is copied.
struct Instance {
  std::shared_ptr<const Network> net;
  SupplyFunction supply;
};

struct RandomInstanceOptions {
  int min_nodes = 3;
  int max_nodes = 10;
  int max_sources = 6;
  int max_sink_degree = 3;
  int min_transit = 1;
  int max_transit = 5;
  std::vector<int> capacities{1, 2};
  int max_supply = 5;
  /// Extra random edges on top of the spanning in-tree, as a multiple of n.
  double extra_edge_ratio = 1.0;
};

/// Random instance in which every node reaches the sink. Same seed, same instance.
Instance random_instance(std::uint64_t seed, const RandomInstanceOptions& options = {});

/// Three nodes v1, v2, t; edges (v1,t) 3, (v2,t) 1, (v1,v2) 1; u = 1; w = (2, 3, -5).
Instance small_reference_instance();

}  // namespace evac
