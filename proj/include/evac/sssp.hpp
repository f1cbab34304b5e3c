#pragma once

#include "evac/network.hpp"

#include <vector>

namespace evac {

struct AugmentingPath {
  std::vector<ResidualArc> arcs;
  Rational cost;
  NodeId origin = 0;
};

/// Outcome of successive shortest path augmentation from a source subset.
struct SsspResult {
  NodeSet subset;
  std::vector<AugmentingPath> paths;  ///< P_1..P_p in augmentation order
  StaticFlow final_flow;
  std::vector<Rational> prefix_costs;  ///< prefix_costs[h-1] = |P_1| + ... + |P_h|

  int p() const { return static_cast<int>(paths.size()); }
  std::vector<NodeId> origins() const;
};

/// Repeatedly augments u units along the cheapest residual path from `subset`
/// to the sink until none is left. Throws std::logic_error if the number of
/// paths exceeds the sink in-degree.
SsspResult successive_shortest_paths(const Network& net, const NodeSet& subset);

/// o^T(A) = max(0, max_h sum_{i<=h} (T - |P_i|) u).
Rational max_outflow(const SsspResult& result, const Rational& capacity, const Rational& horizon);

/// Minimum T with o^T(A) >= supply. Zero when supply is zero; throws
/// UnreachableSupply when supply is positive and no path exists.
Rational min_required_time(const SsspResult& result, const Rational& capacity, const Rational& supply);

}  // namespace evac
