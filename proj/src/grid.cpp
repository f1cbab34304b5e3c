#include "evac/grid.hpp"

#include "max_flow.hpp"

#include <algorithm>

namespace evac {

GridInstance gen_grid(const GridSpec& spec) {
  const int n = spec.side;
  if (n < 2) throw GridError("grid side must be at least 2");
  if (spec.sink_row < 0 || spec.sink_row >= n || spec.sink_col < 0 || spec.sink_col >= n) {
    throw GridError("sink position outside the grid");
  }
  auto id = [n](int r, int c) { return r * n + c; };
  std::vector<Edge> edges;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c + 1 < n) {
        edges.push_back({id(r, c), id(r, c + 1), spec.transit, {}});
        edges.push_back({id(r, c + 1), id(r, c), spec.transit, {}});
      }
      if (r + 1 < n) {
        edges.push_back({id(r, c), id(r + 1, c), spec.transit, {}});
        edges.push_back({id(r + 1, c), id(r, c), spec.transit, {}});
      }
    }
  }
  const NodeId sink = id(spec.sink_row, spec.sink_col);
  std::vector<NodeId> sources;
  std::vector<std::string> names;
  std::vector<Rational> supply(static_cast<std::size_t>(n * n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      names.push_back("r" + std::to_string(r) + "c" + std::to_string(c));
      if (id(r, c) == sink) continue;
      sources.push_back(id(r, c));
      supply[static_cast<std::size_t>(id(r, c))] = spec.supply;
    }
  }
  supply[static_cast<std::size_t>(sink)] = -spec.supply * (n * n - 1);
  GridInstance out;
  out.spec = spec;
  out.net = std::make_shared<const Network>(n * n, std::move(edges), spec.capacity, std::move(sources), sink,
                                            std::move(names));
  out.supply = SupplyFunction(std::move(supply));
  return out;
}

std::string area_name(Area area) {
  switch (area) {
    case Area::C1: return "C1";
    case Area::C2: return "C2";
    case Area::C3: return "C3";
    case Area::X1: return "X1";
    case Area::X2: return "X2";
  }
  return "?";
}

namespace {

int unit_disjoint_paths(const Network& net, NodeId from, const std::vector<char>& usable) {
  detail::MaxFlow flow(net.num_nodes());
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    if (usable[static_cast<std::size_t>(e)]) flow.add_arc(net.edge(e).tail, net.edge(e).head, 1);
  }
  return static_cast<int>(flow.augment(from, net.sink()));
}

}  // namespace

AreaMap classify_areas(const Network& net) {
  AreaMap out;
  const auto n = static_cast<std::size_t>(net.num_nodes());
  out.label.assign(n, std::nullopt);
  out.shortest_paths.assign(n, 0);
  out.disjoint_paths.assign(n, 0);
  out.distance.assign(n, Rational(0));
  out.detour_paths.assign(n, 0);

  StaticFlow zero(net.num_edges());
  ResidualView res(net, zero);
  std::vector<std::int64_t> dist = res.scaled_distances_to(net.sink());
  std::vector<char> all(static_cast<std::size_t>(net.num_edges()), 1), tight(all.size(), 0);
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const Edge& edge = net.edge(e);
    std::int64_t dt = dist[static_cast<std::size_t>(edge.tail)], dh = dist[static_cast<std::size_t>(edge.head)];
    tight[static_cast<std::size_t>(e)] = dt != kUnreachable && dh != kUnreachable && dt == dh + net.scaled_transit(e);
  }
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    const auto i = static_cast<std::size_t>(v);
    if (dist[i] != kUnreachable) out.distance[i] = net.unscale(dist[i]);
    if (v == net.sink()) continue;
    int s = unit_disjoint_paths(net, v, tight);
    int t = unit_disjoint_paths(net, v, all);
    out.shortest_paths[i] = s;
    out.disjoint_paths[i] = t;
    if (dist[i] != kUnreachable) {
      // Edges on some v-to-sink walk at most two transit times longer than the
      // shortest one. Grids are bidirected, so distances from v equal distances to v.
      std::vector<std::int64_t> from = res.scaled_distances_to(v);
      std::vector<char> near(all.size(), 0);
      for (EdgeId e = 0; e < net.num_edges(); ++e) {
        const Edge& edge = net.edge(e);
        std::int64_t a = from[static_cast<std::size_t>(edge.tail)], b = dist[static_cast<std::size_t>(edge.head)];
        near[static_cast<std::size_t>(e)] = a != kUnreachable && b != kUnreachable &&
                                            a + net.scaled_transit(e) + b <= dist[i] + 2 * net.scaled_transit(e);
      }
      out.detour_paths[i] = unit_disjoint_paths(net, v, near);
    }
    if (s >= 2) {
      out.label[i] = t >= 4 ? Area::C1 : t == 3 ? Area::C2 : Area::C3;
    } else {
      out.label[i] = t >= 4 ? Area::X1 : Area::X2;
    }
  }
  return out;
}

CandidateSet candidate_set(const Network& net, const AreaMap& areas, const Rational& transit) {
  CandidateSet out;
  out.max_length = std::min(net.sink_in_degree(), 4);
  out.roots = net.sources();
  out.pools.resize(static_cast<std::size_t>(net.num_nodes()));
  std::vector<NodeId> by_distance = net.sources();
  std::stable_sort(by_distance.begin(), by_distance.end(), [&](NodeId a, NodeId b) {
    return areas.distance[static_cast<std::size_t>(a)] < areas.distance[static_cast<std::size_t>(b)];
  });

  for (NodeId v1 : net.sources()) {
    const Rational& base = areas.distance[static_cast<std::size_t>(v1)];
    const Area area = *areas.label[static_cast<std::size_t>(v1)];
    // Per position 2..4: whether it must repeat v1, and the distance slack.
    bool repeat = area == Area::C1 || area == Area::C2 || area == Area::C3;
    std::optional<Rational> slack[5];
    switch (area) {
      case Area::C1: slack[3] = 4 * transit; slack[4] = 4 * transit; break;
      case Area::C2: slack[3] = 4 * transit; break;
      case Area::C3: break;
      case Area::X1: slack[2] = 2 * transit; slack[3] = 2 * transit; slack[4] = 8 * transit; break;
      case Area::X2: slack[2] = 2 * transit; slack[3] = 2 * transit; break;
    }
    // Once v1's edge-disjoint paths are used up it no longer bounds later origins.
    const int paths = areas.disjoint_paths[static_cast<std::size_t>(v1)];
    for (int i = paths + 1; i <= 4; ++i) slack[i].reset();
    if (area == Area::X1 || area == Area::X2) {
      const int detours = areas.detour_paths[static_cast<std::size_t>(v1)];
      for (int i = 2; i <= 3; ++i) {
        if (i > detours) slack[i].reset();
      }
    }

    CandidateSet::Pools& p = out.pools[static_cast<std::size_t>(v1)];
    // Each augmentation cuts at most one of v1's disjoint paths.
    p.min_length = std::max(2, paths);
    p.at.resize(5);
    for (int i = 2; i <= 4; ++i) {
      auto& pool = p.at[static_cast<std::size_t>(i)];
      if (i == 2 && repeat) {
        pool = {v1};
        continue;
      }
      for (NodeId u : by_distance) {
        const Rational& du = areas.distance[static_cast<std::size_t>(u)];
        if (du < base) continue;
        if (slack[i] && du > base + *slack[i]) break;
        pool.push_back(u);
      }
      std::sort(pool.begin(), pool.end());
    }
  }
  return out;
}

const std::vector<NodeId>& CandidateSet::next(const AdmitTuple& prefix) const {
  static const std::vector<NodeId> none;
  if (prefix.empty()) return roots;
  const int position = static_cast<int>(prefix.size()) + 1;
  if (position > max_length) return none;
  return pools[static_cast<std::size_t>(prefix[0])].at[static_cast<std::size_t>(position)];
}

bool CandidateSet::contains(const AdmitTuple& tuple) const {
  if (tuple.size() < 2 || static_cast<int>(tuple.size()) > max_length) return false;
  const Pools& p = pools[static_cast<std::size_t>(tuple[0])];
  if (static_cast<int>(tuple.size()) < p.min_length) return false;
  for (std::size_t i = 1; i < tuple.size(); ++i) {
    const auto& pool = p.at[i + 1];
    if (!std::binary_search(pool.begin(), pool.end(), tuple[i])) return false;
  }
  return true;
}

std::uint64_t CandidateSet::size() const {
  std::uint64_t total = 0;
  for (NodeId v1 : roots) {
    const Pools& p = pools[static_cast<std::size_t>(v1)];
    std::uint64_t count = 1;
    for (int length = 2; length <= max_length; ++length) {
      count *= p.at[static_cast<std::size_t>(length)].size();
      if (length >= p.min_length) total += count;
    }
  }
  return total;
}

std::vector<AdmitTuple> CandidateSet::tuples() const {
  std::vector<AdmitTuple> out;
  AdmitTuple tuple;
  auto walk = [&](auto&& self) -> void {
    for (NodeId u : next(tuple)) {
      tuple.push_back(u);
      if (contains(tuple)) out.push_back(tuple);
      self(self);
      tuple.pop_back();
    }
  };
  walk(walk);
  std::sort(out.begin(), out.end(), [](const AdmitTuple& a, const AdmitTuple& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

TupleFilter CandidateSet::filter() const {
  TupleFilter f;
  f.next = [this](const AdmitTuple& prefix) -> const std::vector<NodeId>& { return next(prefix); };
  f.accept = [this](const AdmitTuple& tuple) { return contains(tuple); };
  f.size = size();
  return f;
}

std::vector<AdmitTuple> candidate_tuples(const Network& net, const AreaMap& areas, const Rational& transit) {
  return candidate_set(net, areas, transit).tuples();
}

HorizonResult grid_horizon(const GridInstance& grid, const SolveOptions& options, std::uint64_t* candidates) {
  const Network& net = *grid.net;
  require_valid(net, grid.supply);
  require_reachable_supply(net, grid.supply);
  CandidateSet set = candidate_set(net, classify_areas(net), grid.spec.transit);
  if (candidates) *candidates = set.size();
  return horizon_from_family(enumerate_a_hat(net, grid.supply, set.filter(), {options.jobs}));
}

GridSolveResult grid_solve(const GridInstance& grid, const SolveOptions& options) {
  GridSolveResult out;
  out.areas = classify_areas(*grid.net);
  out.candidates = candidate_set(*grid.net, out.areas, grid.spec.transit);
  const Network& net = *grid.net;
  require_valid(net, grid.supply);
  require_reachable_supply(net, grid.supply);
  HorizonResult horizon = horizon_from_family(enumerate_a_hat(net, grid.supply, out.candidates.filter(), {options.jobs}));
  out.solution = complete_solution(net, grid.supply, std::move(horizon), options);
  return out;
}

}  // namespace evac
