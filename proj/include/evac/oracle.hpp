#pragma once

// Time-expanded brute force: o^T(A), feasibility of (w, T), T* over all
// subsets, and a checker for discrete dynamic flows.
//
// Time is cut into slots [j*step, (j+1)*step) for j = 0 .. horizon/step - 1.
// Flow entering edge e during slot j leaves it during the slot starting at
// j*step + transit(e); it counts as delivered only when that slot ends by the
// horizon. Rates are constant within a slot, so each slot carries at most
// capacity * step units per edge.

#include "evac/network.hpp"

#include <optional>
#include <string>
#include <vector>

namespace evac {

struct TimeExpandedNet {
  const Network* net = nullptr;
  Rational step;
  Rational horizon;
  int slots = 0;                        ///< horizon / step; node copies exist at layers 0..slots
  std::vector<std::int64_t> shift;      ///< transit(e) / step

  int layers() const { return slots + 1; }
  /// Whether flow can enter edge e during slot j and arrive at a layer of the grid.
  bool has_arc(EdgeId e, int j) const;
  /// Whether flow entering e during slot j is delivered by the horizon.
  bool delivers(EdgeId e, int j) const;
  bool same_grid(const TimeExpandedNet& other) const;
};

/// Throws GridError("non-divisible step") unless horizon/step and every
/// transit/step are integers, step > 0 and horizon >= 0.
TimeExpandedNet build_time_expanded(const Network& net, const Rational& horizon, const Rational& step);

/// Largest step that divides the horizon and every transit time (1 if all are zero).
Rational default_step(const Network& net, const Rational& horizon);

/// Amount of flow entering each (edge, slot) of a grid.
struct TimeExpandedFlow {
  TimeExpandedNet grid;
  std::vector<Rational> amounts;  ///< index e * slots + j

  TimeExpandedFlow() = default;
  explicit TimeExpandedFlow(TimeExpandedNet g);

  const Rational& amount(EdgeId e, int j) const;
  Rational& amount(EdgeId e, int j);

  /// Departures minus delivered arrivals at every node.
  std::vector<Rational> net_outflow() const;
  /// net_outflow restricted to sources, indexed by node id (zero elsewhere).
  std::vector<Rational> source_totals() const;
};

/// Maximum flow from A (unlimited supply at time 0) into the sink by the horizon.
Rational oracle_max_outflow(const Network& net, const NodeSet& subset, const Rational& horizon, const Rational& step);
Rational oracle_max_outflow(const Network& net, const NodeSet& subset, const Rational& horizon);

/// oracle_max_outflow for every horizon j * step, j = 0 .. horizon / step,
/// from one layered network whose sink copies are opened one slot at a time.
std::vector<Rational> oracle_outflow_profile(const Network& net, const NodeSet& subset, const Rational& horizon,
                                             const Rational& step);

/// Whether every source can ship its full supply into the sink by the horizon.
bool oracle_feasible(const Network& net, const SupplyFunction& w, const Rational& horizon, const Rational& step);
bool oracle_feasible(const Network& net, const SupplyFunction& w, const Rational& horizon);

/// A flow shipping all supplies by the horizon, or nothing if none exists.
std::optional<TimeExpandedFlow> oracle_feasible_flow(const Network& net, const SupplyFunction& w,
                                                     const Rational& horizon, const Rational& step);

/// Lexicographically maximal flow: each source in `order` in turn sends as much
/// as possible without reducing what the earlier ones send. Supply is unlimited.
TimeExpandedFlow oracle_lexmax_flow(const Network& net, const std::vector<NodeId>& order, const Rational& horizon,
                                    const Rational& step);

inline constexpr int kOracleMaxSources = 20;

/// T* as the maximum of theta(A) over all 2^k source subsets, confirmed by a
/// bisection of oracle_feasible over the grid multiples of default_step(T*).
/// Throws InvalidInstance when k exceeds kOracleMaxSources and
/// OracleDisagreement when the two computations differ.
Rational oracle_t_star(const Network& net, const SupplyFunction& w);

/// theta(A) for every subset, indexed by bitmask over net.sources().
std::vector<Rational> all_subset_thetas(const Network& net, const SupplyFunction& w);

struct FlowCheck {
  int violated = 0;  ///< 0 when the flow passes, else the first failing constraint (1, 2 or 3)
  std::string message;
  bool ok() const { return violated == 0; }
};

/// (1) 0 <= amount <= capacity * step on every edge and slot; (2) no node
/// ever sends more than it has received plus its supply; (3) by the horizon
/// every node has sent out exactly its supply (the sink absorbs its demand).
FlowCheck verify_dynamic_flow(const TimeExpandedFlow& flow, const SupplyFunction& w, const Rational& horizon);

}  // namespace evac
