#include "evac/network.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace evac {

NodeSet make_node_set(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

bool contains(const NodeSet& set, NodeId v) { return std::binary_search(set.begin(), set.end(), v); }

bool is_subset(const NodeSet& small, const NodeSet& large) {
  return std::includes(large.begin(), large.end(), small.begin(), small.end());
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// ---------------------------------------------------------------------------
// Network

Network::Network(int num_nodes, std::vector<Edge> edges, Rational capacity, std::vector<NodeId> sources, NodeId sink,
                 std::vector<std::string> names)
    : num_nodes_(num_nodes),
      edges_(std::move(edges)),
      capacity_(std::move(capacity)),
      sources_(make_node_set(sources)),
      declared_sources_(std::move(sources)),
      sink_(sink),
      names_(std::move(names)) {
  if (num_nodes_ <= 0) throw InvalidInstance("network needs at least one node");
  auto check_node = [&](NodeId v, const char* what) {
    if (v < 0 || v >= num_nodes_) {
      throw InvalidInstance(std::string(what) + " id " + std::to_string(v) + " out of range");
    }
  };
  check_node(sink_, "sink");
  for (NodeId s : declared_sources_) check_node(s, "source");
  for (const Edge& e : edges_) {
    check_node(e.tail, "edge tail");
    check_node(e.head, "edge head");
  }
  if (names_.empty()) {
    for (int v = 0; v < num_nodes_; ++v) names_.push_back(std::to_string(v));
  } else if (static_cast<int>(names_.size()) != num_nodes_) {
    throw InvalidInstance("names must list one entry per node");
  }

  out_edges_.resize(static_cast<std::size_t>(num_nodes_));
  in_edges_.resize(static_cast<std::size_t>(num_nodes_));
  for (EdgeId e = 0; e < num_edges(); ++e) {
    out_edges_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].tail)].push_back(e);
    in_edges_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].head)].push_back(e);
  }

  // Common denominator of all transit times.
  Integer scale = 1;
  for (const Edge& e : edges_) {
    Integer den = denominator_of(e.transit);
    scale = boost::multiprecision::lcm(scale, den);
  }
  transit_scale_ = scale;
  // Path costs sum at most 2m terms; keep every term well inside int64.
  const Integer limit = Integer(1) << 40;
  scaled_transit_.reserve(edges_.size());
  for (const Edge& e : edges_) {
    Rational scaled = e.transit * Rational(scale);
    Integer n = numerator_of(scaled);
    if (n > limit || n < -limit) throw InvalidInstance("transit time too large for the integer cost scale");
    scaled_transit_.push_back(n.convert_to<std::int64_t>());
  }
}

const Rational& Network::edge_capacity(EdgeId e) const {
  const Edge& edge = edges_[static_cast<std::size_t>(e)];
  return edge.capacity ? *edge.capacity : capacity_;
}

bool Network::has_uniform_capacity() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return !e.capacity || *e.capacity == capacity_; });
}

bool Network::is_source(NodeId v) const { return contains(sources_, v); }

Rational SupplyFunction::total(const NodeSet& subset) const {
  Rational sum = 0;
  for (NodeId v : subset) sum += (*this)[v];
  return sum;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_network(const Network& net, const SupplyFunction& w) {
  ValidationReport report;
  auto add = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  if (net.capacity() <= 0) add("capacity must be positive");
  if (!net.has_uniform_capacity()) add("non-uniform capacity");
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const Edge& edge = net.edge(e);
    if (edge.transit < 0) add("edge " + std::to_string(e) + " has negative transit time");
    if (edge.tail == net.sink() && edge.head == net.sink()) add("self-loop at the sink");
  }
  if (net.sources().size() != net.declared_sources().size()) add("duplicate source");
  if (net.is_source(net.sink())) add("sink is also a source");
  if (net.sources().empty()) add("no sources");

  if (w.size() != net.num_nodes()) {
    add("supply must list one value per node");
    return report;
  }
  Rational sum = 0;
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    sum += w[v];
    if (v == net.sink()) {
      if (w[v] >= 0) add("sink with non-negative demand");
    } else if (net.is_source(v)) {
      if (w[v] <= 0) add("source with non-positive supply");
    } else if (w[v] != 0) {
      add("non-terminal node " + std::to_string(v) + " has non-zero supply");
    }
  }
  if (sum != 0) add("supplies do not sum to zero");
  return report;
}

void require_valid(const Network& net, const SupplyFunction& w) {
  ValidationReport report = validate_network(net, w);
  if (report.ok()) return;
  std::string msg = "invalid instance:";
  for (const auto& v : report.violations) msg += " " + v + ";";
  throw InvalidInstance(msg);
}

std::vector<std::string> validate_static_flow(const Network& net, const StaticFlow& flow, const NodeSet& terminals) {
  std::vector<std::string> problems;
  if (flow.num_edges() != net.num_edges()) {
    problems.push_back("flow size does not match edge count");
    return problems;
  }
  std::vector<Rational> balance(static_cast<std::size_t>(net.num_nodes()));
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const Rational& f = flow.amount(e);
    if (f < 0 || f > net.edge_capacity(e)) problems.push_back("edge " + std::to_string(e) + " violates capacity");
    balance[static_cast<std::size_t>(net.edge(e).head)] += f;
    balance[static_cast<std::size_t>(net.edge(e).tail)] -= f;
  }
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    if (!contains(terminals, v) && balance[static_cast<std::size_t>(v)] != 0) {
      problems.push_back("conservation fails at node " + std::to_string(v));
    }
  }
  return problems;
}

// ---------------------------------------------------------------------------
// Residual network

ResidualView::ResidualView(const Network& net, const StaticFlow& flow) : net_(&net), flow_(&flow) {
  out_.resize(static_cast<std::size_t>(net.num_nodes()));
  in_.resize(static_cast<std::size_t>(net.num_nodes()));
  arcs_.reserve(static_cast<std::size_t>(net.num_edges()));
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const Edge& edge = net.edge(e);
    const Rational& f = flow.amount(e);
    if (f < net.edge_capacity(e)) arcs_.push_back({e, true, edge.tail, edge.head, net.scaled_transit(e)});
    if (f > 0) arcs_.push_back({e, false, edge.head, edge.tail, -net.scaled_transit(e)});
  }
  for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) {
    out_[static_cast<std::size_t>(arcs_[static_cast<std::size_t>(i)].from)].push_back(i);
    in_[static_cast<std::size_t>(arcs_[static_cast<std::size_t>(i)].to)].push_back(i);
  }
}

std::vector<std::int64_t> ResidualView::scaled_distances_to(NodeId target) const {
  const int n = net_->num_nodes();
  std::vector<std::int64_t> dist(static_cast<std::size_t>(n), kUnreachable);
  std::vector<int> hops(static_cast<std::size_t>(n), 0);
  std::vector<char> queued(static_cast<std::size_t>(n), 0);
  std::deque<NodeId> queue;
  dist[static_cast<std::size_t>(target)] = 0;
  queue.push_back(target);
  queued[static_cast<std::size_t>(target)] = 1;
  while (!queue.empty()) {
    NodeId y = queue.front();
    queue.pop_front();
    queued[static_cast<std::size_t>(y)] = 0;
    const std::int64_t dy = dist[static_cast<std::size_t>(y)];
    for (int ai : in_[static_cast<std::size_t>(y)]) {
      const ResidualArc& a = arcs_[static_cast<std::size_t>(ai)];
      const std::int64_t candidate = dy + a.scaled_cost;
      auto x = static_cast<std::size_t>(a.from);
      if (candidate < dist[x]) {
        dist[x] = candidate;
        hops[x] = hops[static_cast<std::size_t>(y)] + 1;
        if (hops[x] >= n) throw NegativeCycleError("negative-cost cycle in residual network");
        if (!queued[x]) {
          queued[x] = 1;
          queue.push_back(a.from);
        }
      }
    }
  }
  return dist;
}

std::vector<std::optional<Rational>> ResidualView::distances_to(NodeId target) const {
  std::vector<std::int64_t> scaled = scaled_distances_to(target);
  std::vector<std::optional<Rational>> out;
  out.reserve(scaled.size());
  for (std::int64_t d : scaled) {
    out.push_back(d == kUnreachable ? std::nullopt : std::optional<Rational>(net_->unscale(d)));
  }
  return out;
}

bool preferred_origin(const std::vector<std::int64_t>& dist, NodeId a, NodeId b) {
  const std::int64_t da = dist[static_cast<std::size_t>(a)];
  const std::int64_t db = dist[static_cast<std::size_t>(b)];
  if (da == kUnreachable) return false;
  if (da != db) return da < db;
  return a < b;
}

namespace {

bool is_tight(const ResidualArc& a, const std::vector<std::int64_t>& dist) {
  const std::int64_t dx = dist[static_cast<std::size_t>(a.from)];
  const std::int64_t dy = dist[static_cast<std::size_t>(a.to)];
  return dx != kUnreachable && dy != kUnreachable && dx == a.scaled_cost + dy;
}

// Whether `start` reaches `target` over tight arcs without entering `blocked`.
bool reaches_over_tight(const ResidualView& res, const std::vector<std::int64_t>& dist, NodeId start, NodeId target,
                        const std::vector<char>& blocked) {
  if (start == target) return true;
  std::vector<char> seen(blocked);
  std::vector<NodeId> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (int ai : res.out_arcs(x)) {
      const ResidualArc& a = res.arcs()[static_cast<std::size_t>(ai)];
      if (!is_tight(a, dist)) continue;
      if (a.to == target) return true;
      if (seen[static_cast<std::size_t>(a.to)]) continue;
      seen[static_cast<std::size_t>(a.to)] = 1;
      stack.push_back(a.to);
    }
  }
  return false;
}

}  // namespace

std::optional<ShortestPath> shortest_path(const ResidualView& res, const NodeSet& from, NodeId target,
                                          const std::vector<std::int64_t>& dist) {
  std::optional<NodeId> origin;
  for (NodeId v : from) {
    if (dist[static_cast<std::size_t>(v)] == kUnreachable) continue;
    if (!origin || preferred_origin(dist, v, *origin)) origin = v;
  }
  if (!origin) return std::nullopt;

  ShortestPath path;
  path.origin = *origin;
  path.cost = res.network().unscale(dist[static_cast<std::size_t>(*origin)]);
  if (*origin == target) return path;

  // Greedy lexicographic walk over tight arcs, keeping the remainder simple.
  std::vector<char> visited(static_cast<std::size_t>(res.network().num_nodes()), 0);
  NodeId current = *origin;
  visited[static_cast<std::size_t>(current)] = 1;
  while (current != target) {
    bool advanced = false;
    for (int ai : res.out_arcs(current)) {
      const ResidualArc& a = res.arcs()[static_cast<std::size_t>(ai)];
      if (!is_tight(a, dist) || visited[static_cast<std::size_t>(a.to)]) continue;
      if (!reaches_over_tight(res, dist, a.to, target, visited)) continue;
      path.arcs.push_back(a);
      current = a.to;
      visited[static_cast<std::size_t>(current)] = 1;
      advanced = true;
      break;
    }
    if (!advanced) throw NegativeCycleError("no tight path from origin; distance labels are inconsistent");
  }
  return path;
}

std::optional<ShortestPath> shortest_path(const ResidualView& res, const NodeSet& from, NodeId target) {
  return shortest_path(res, from, target, res.scaled_distances_to(target));
}

StaticFlow augment(const Network& net, const StaticFlow& flow, std::span<const ResidualArc> path,
                   const Rational& amount) {
  StaticFlow out = flow;
  for (const ResidualArc& a : path) {
    Rational updated = a.forward ? Rational(out.amount(a.edge) + amount) : Rational(out.amount(a.edge) - amount);
    if (updated > net.edge_capacity(a.edge)) {
      throw CapacityViolation("augmentation exceeds capacity of edge " + std::to_string(a.edge));
    }
    if (updated < 0) throw CapacityViolation("augmentation drives edge " + std::to_string(a.edge) + " negative");
    out.set_amount(a.edge, std::move(updated));
  }
  return out;
}

std::string describe_path(const Network& net, const ShortestPath& path) {
  std::ostringstream os;
  os << net.name(path.origin);
  for (const ResidualArc& a : path.arcs) os << (a.forward ? "->" : "~>") << net.name(a.to);
  return os.str();
}

}  // namespace evac
