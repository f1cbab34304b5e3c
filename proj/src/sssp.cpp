#include "evac/sssp.hpp"

#include <stdexcept>

namespace evac {

std::vector<NodeId> SsspResult::origins() const {
  std::vector<NodeId> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(p.origin);
  return out;
}

SsspResult successive_shortest_paths(const Network& net, const NodeSet& subset) {
  SsspResult result;
  result.subset = subset;
  result.final_flow = StaticFlow(net.num_edges());
  Rational running = 0;
  while (true) {
    ResidualView res(net, result.final_flow);
    auto path = shortest_path(res, subset, net.sink());
    if (!path) break;
    if (result.p() == net.sink_in_degree()) {
      throw std::logic_error("successive shortest paths produced more paths than the sink in-degree");
    }
    result.final_flow = augment(net, result.final_flow, path->arcs, net.capacity());
    running += path->cost;
    result.prefix_costs.push_back(running);
    result.paths.push_back({std::move(path->arcs), std::move(path->cost), path->origin});
  }
  return result;
}

Rational max_outflow(const SsspResult& result, const Rational& capacity, const Rational& horizon) {
  Rational best = 0;
  for (int h = 1; h <= result.p(); ++h) {
    Rational value = (Rational(h) * horizon - result.prefix_costs[static_cast<std::size_t>(h - 1)]) * capacity;
    if (value > best) best = value;
  }
  return best;
}

Rational min_required_time(const SsspResult& result, const Rational& capacity, const Rational& supply) {
  if (supply == 0) return 0;
  if (supply < 0) throw std::invalid_argument("min_required_time needs a nonnegative supply");
  if (result.p() == 0) throw UnreachableSupply("unreachable supply: no path from the subset to the sink");
  Rational best;
  for (int h = 1; h <= result.p(); ++h) {
    Rational candidate = (result.prefix_costs[static_cast<std::size_t>(h - 1)] + supply / capacity) / h;
    if (h == 1 || candidate < best) best = candidate;
  }
  if (max_outflow(result, capacity, best) != supply) {
    throw std::logic_error("min_required_time does not reproduce the supply");
  }
  return best;
}

}  // namespace evac
