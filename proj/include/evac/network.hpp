#pragma once

// Dynamic flow network model, static flows, residual networks and the
// single-target shortest path used by successive shortest path augmentation.

#include "evac/errors.hpp"
#include "evac/rational.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace evac {

using NodeId = int;
using EdgeId = int;

/// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;

NodeSet make_node_set(std::vector<NodeId> nodes);
bool contains(const NodeSet& set, NodeId v);
bool is_subset(const NodeSet& small, const NodeSet& large);
NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);

struct Edge {
  NodeId tail = 0;
  NodeId head = 0;
  Rational transit;
  /// Per-edge capacity. Absent means the network's uniform capacity. Only the
  /// time-expanded oracle honours a differing value; the solver rejects it.
  std::optional<Rational> capacity;
};

/// Directed graph with transit times, a capacity, sources S+ and one sink.
/// Immutable after construction; safe to share across threads.
class Network {
 public:
  /// Throws InvalidInstance when ids are out of range or a transit time
  /// cannot be put on a common integer scale. Model-level conditions
  /// (signs, uniformity, supply balance) are reported by validate_network.
  Network(int num_nodes, std::vector<Edge> edges, Rational capacity, std::vector<NodeId> sources, NodeId sink,
          std::vector<std::string> names = {});

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const { return edges_; }

  const Rational& capacity() const { return capacity_; }
  const Rational& edge_capacity(EdgeId e) const;
  bool has_uniform_capacity() const;

  const NodeSet& sources() const { return sources_; }
  /// Sources exactly as given, before sorting; used only by validation.
  const std::vector<NodeId>& declared_sources() const { return declared_sources_; }
  NodeId sink() const { return sink_; }
  int num_sources() const { return static_cast<int>(sources_.size()); }
  bool is_source(NodeId v) const;

  /// Number of edges entering the sink (d).
  int sink_in_degree() const { return static_cast<int>(in_edges_[static_cast<std::size_t>(sink_)].size()); }

  const std::vector<EdgeId>& out_edges(NodeId v) const { return out_edges_[static_cast<std::size_t>(v)]; }
  const std::vector<EdgeId>& in_edges(NodeId v) const { return in_edges_[static_cast<std::size_t>(v)]; }

  /// Transit times share the integer scale transit(e) = scaled_transit(e) / transit_scale().
  std::int64_t scaled_transit(EdgeId e) const { return scaled_transit_[static_cast<std::size_t>(e)]; }
  const Integer& transit_scale() const { return transit_scale_; }
  Rational unscale(std::int64_t scaled_cost) const { return Rational(Integer(scaled_cost), transit_scale_); }

  const std::string& name(NodeId v) const { return names_[static_cast<std::size_t>(v)]; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  int num_nodes_;
  std::vector<Edge> edges_;
  Rational capacity_;
  NodeSet sources_;
  std::vector<NodeId> declared_sources_;
  NodeId sink_;
  std::vector<std::string> names_;
  std::vector<std::vector<EdgeId>> out_edges_;
  std::vector<std::vector<EdgeId>> in_edges_;
  std::vector<std::int64_t> scaled_transit_;
  Integer transit_scale_;
};

/// Supply/demand w: positive at sources, negative at the sink, zero elsewhere.
class SupplyFunction {
 public:
  SupplyFunction() = default;
  explicit SupplyFunction(std::vector<Rational> values) : values_(std::move(values)) {}

  const Rational& operator[](NodeId v) const { return values_[static_cast<std::size_t>(v)]; }
  Rational& operator[](NodeId v) { return values_[static_cast<std::size_t>(v)]; }
  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<Rational>& values() const { return values_; }

  Rational total(const NodeSet& subset) const;

 private:
  std::vector<Rational> values_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the model assumptions: uniform positive capacity, nonnegative
/// transit times, sink not a source, no self-loop at the sink, supply signs
/// and balance. Never throws.
ValidationReport validate_network(const Network& net, const SupplyFunction& w);

/// Throws InvalidInstance listing every violation when the report is not ok.
void require_valid(const Network& net, const SupplyFunction& w);

/// Static flow on the edges of a network.
class StaticFlow {
 public:
  StaticFlow() = default;
  explicit StaticFlow(int num_edges) : amount_(static_cast<std::size_t>(num_edges)) {}

  const Rational& amount(EdgeId e) const { return amount_[static_cast<std::size_t>(e)]; }
  void set_amount(EdgeId e, Rational value) { amount_[static_cast<std::size_t>(e)] = std::move(value); }
  int num_edges() const { return static_cast<int>(amount_.size()); }

  friend bool operator==(const StaticFlow&, const StaticFlow&) = default;

 private:
  std::vector<Rational> amount_;
};

/// Violations of 0 <= f(e) <= u(e) and of conservation at nodes outside
/// `terminals`. Empty when the flow is a feasible static flow.
std::vector<std::string> validate_static_flow(const Network& net, const StaticFlow& flow, const NodeSet& terminals);

struct ResidualArc {
  EdgeId edge = 0;
  bool forward = true;
  NodeId from = 0;
  NodeId to = 0;
  std::int64_t scaled_cost = 0;

  friend bool operator==(const ResidualArc&, const ResidualArc&) = default;
};

inline constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

/// Residual network of a static flow: a forward arc of cost tau(e) for every
/// edge with f(e) < u(e) and a backward arc of cost -tau(e) for every edge
/// with f(e) > 0. Non-owning: `net` and `flow` must outlive the view.
class ResidualView {
 public:
  ResidualView(const Network& net, const StaticFlow& flow);

  const Network& network() const { return *net_; }
  const StaticFlow& flow() const { return *flow_; }

  /// Arcs ordered by (edge id, forward before backward).
  std::span<const ResidualArc> arcs() const { return arcs_; }
  const std::vector<int>& out_arcs(NodeId v) const { return out_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& in_arcs(NodeId v) const { return in_[static_cast<std::size_t>(v)]; }

  Rational cost(const ResidualArc& arc) const { return net_->unscale(arc.scaled_cost); }

  /// Scaled minimum cost from every node to `target` (kUnreachable when no
  /// path exists). Label correcting, so negative arcs are fine; throws
  /// NegativeCycleError if a negative cycle reaches the target.
  std::vector<std::int64_t> scaled_distances_to(NodeId target) const;

  std::vector<std::optional<Rational>> distances_to(NodeId target) const;

 private:
  const Network* net_;
  const StaticFlow* flow_;
  std::vector<ResidualArc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

struct ShortestPath {
  std::vector<ResidualArc> arcs;
  Rational cost;
  NodeId origin = 0;
};

/// True when `a` is preferred over `b` as the origin of the next path given
/// scaled distances: strictly closer, or equally close with a smaller id.
/// Unreachable nodes are never preferred.
bool preferred_origin(const std::vector<std::int64_t>& dist, NodeId a, NodeId b);

/// Minimum-cost path from some node of `from` to `target` in the residual
/// network. Among minimum-cost origins the smallest node id wins; among the
/// minimum-cost simple paths from that origin the one whose arc sequence
/// (edge id, forward first) is lexicographically smallest wins.
std::optional<ShortestPath> shortest_path(const ResidualView& res, const NodeSet& from, NodeId target);

/// Same as shortest_path but reuses distances computed by scaled_distances_to.
std::optional<ShortestPath> shortest_path(const ResidualView& res, const NodeSet& from, NodeId target,
                                          const std::vector<std::int64_t>& dist);

/// Pushes `amount` along the path: forward arcs gain it, backward arcs lose
/// it. Throws CapacityViolation if a capacity or zero lower bound would break.
StaticFlow augment(const Network& net, const StaticFlow& flow, std::span<const ResidualArc> path,
                   const Rational& amount);

std::string describe_path(const Network& net, const ShortestPath& path);

}  // namespace evac
