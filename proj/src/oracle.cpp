#include "evac/oracle.hpp"

#include "evac/sssp.hpp"
#include "max_flow.hpp"

#include <stdexcept>

namespace evac {

using detail::MaxFlow;

bool TimeExpandedNet::has_arc(EdgeId e, int j) const {
  return j >= 0 && j < slots && j + shift[static_cast<std::size_t>(e)] <= slots;
}

bool TimeExpandedNet::delivers(EdgeId e, int j) const {
  return has_arc(e, j) && j + shift[static_cast<std::size_t>(e)] < slots;
}

bool TimeExpandedNet::same_grid(const TimeExpandedNet& other) const {
  return net == other.net && step == other.step && horizon == other.horizon;
}

TimeExpandedNet build_time_expanded(const Network& net, const Rational& horizon, const Rational& step) {
  if (step <= 0 || horizon < 0) throw GridError("non-divisible step: step must be positive and horizon nonnegative");
  TimeExpandedNet grid;
  grid.net = &net;
  grid.step = step;
  grid.horizon = horizon;
  Rational slots = horizon / step;
  if (!is_integral(slots)) throw GridError("non-divisible step: " + to_string(step) + " does not divide horizon " +
                                           to_string(horizon));
  grid.slots = static_cast<int>(to_int64(slots));
  for (const Edge& e : net.edges()) {
    Rational shift = e.transit / step;
    if (!is_integral(shift)) {
      throw GridError("non-divisible step: " + to_string(step) + " does not divide transit time " +
                      to_string(e.transit));
    }
    grid.shift.push_back(to_int64(shift));
  }
  return grid;
}

Rational default_step(const Network& net, const Rational& horizon) {
  Rational g = horizon;
  for (const Edge& e : net.edges()) g = rational_gcd(g, e.transit);
  return g == 0 ? Rational(1) : g;
}

TimeExpandedFlow::TimeExpandedFlow(TimeExpandedNet g) : grid(std::move(g)) {
  amounts.resize(static_cast<std::size_t>(grid.net->num_edges()) * static_cast<std::size_t>(grid.slots));
}

const Rational& TimeExpandedFlow::amount(EdgeId e, int j) const {
  return amounts[static_cast<std::size_t>(e) * static_cast<std::size_t>(grid.slots) + static_cast<std::size_t>(j)];
}

Rational& TimeExpandedFlow::amount(EdgeId e, int j) {
  return amounts[static_cast<std::size_t>(e) * static_cast<std::size_t>(grid.slots) + static_cast<std::size_t>(j)];
}

std::vector<Rational> TimeExpandedFlow::net_outflow() const {
  const Network& net = *grid.net;
  std::vector<Rational> out(static_cast<std::size_t>(net.num_nodes()));
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    for (int j = 0; j < grid.slots; ++j) {
      const Rational& a = amount(e, j);
      if (a == 0) continue;
      out[static_cast<std::size_t>(net.edge(e).tail)] += a;
      if (grid.delivers(e, j)) out[static_cast<std::size_t>(net.edge(e).head)] -= a;
    }
  }
  return out;
}

std::vector<Rational> TimeExpandedFlow::source_totals() const {
  std::vector<Rational> out = net_outflow();
  for (NodeId v = 0; v < grid.net->num_nodes(); ++v) {
    if (!grid.net->is_source(v)) out[static_cast<std::size_t>(v)] = 0;
  }
  return out;
}

namespace {

Integer lcm_integer(const Integer& a, const Integer& b) { return a / boost::multiprecision::gcd(a, b) * b; }

std::int64_t scaled(const Rational& value, const Integer& scale) {
  Rational v = value * Rational(scale);
  if (!is_integral(v)) throw std::logic_error("capacity scale does not clear a denominator");
  Integer limit = Integer(MaxFlow::kInfinite) / 4;
  if (abs(numerator_of(v)) > limit) throw std::overflow_error("time-expanded capacity too large");
  return to_int64(v);
}

// Static layered network of a grid. Node v at layer j is v * layers + j.
struct Expanded {
  const TimeExpandedNet& grid;
  Integer scale = 1;
  MaxFlow flow;
  int source = 0;
  int sink = 0;
  std::vector<int> arc_of;

  Expanded(const TimeExpandedNet& g, const std::vector<Rational>& extra_amounts, bool open_sink = true) : grid(g) {
    const Network& net = *grid.net;
    for (EdgeId e = 0; e < net.num_edges(); ++e) {
      scale = lcm_integer(scale, denominator_of(net.edge_capacity(e) * grid.step));
    }
    for (const Rational& a : extra_amounts) scale = lcm_integer(scale, denominator_of(a));

    const int layers = grid.layers();
    flow = MaxFlow(net.num_nodes() * layers);
    source = flow.add_node();
    sink = flow.add_node();
    for (NodeId v = 0; v < net.num_nodes(); ++v) {
      for (int j = 0; j + 1 < layers; ++j) flow.add_arc(node(v, j), node(v, j + 1), MaxFlow::kInfinite);
    }
    arc_of.assign(static_cast<std::size_t>(net.num_edges()) * static_cast<std::size_t>(grid.slots), -1);
    for (EdgeId e = 0; e < net.num_edges(); ++e) {
      const Edge& edge = net.edge(e);
      std::int64_t cap = scaled(net.edge_capacity(e) * grid.step, scale);
      for (int j = 0; j < grid.slots; ++j) {
        if (!grid.has_arc(e, j)) continue;
        int to_layer = j + static_cast<int>(grid.shift[static_cast<std::size_t>(e)]);
        arc_of[index(e, j)] = flow.add_arc(node(edge.tail, j), node(edge.head, to_layer), cap);
      }
    }
    if (open_sink) {
      for (int j = 0; j < grid.slots; ++j) open_sink_slot(j);
    }
  }

  void open_sink_slot(int j) { flow.add_arc(node(grid.net->sink(), j), sink, MaxFlow::kInfinite); }

  int node(NodeId v, int j) const { return v * grid.layers() + j; }
  std::size_t index(EdgeId e, int j) const {
    return static_cast<std::size_t>(e) * static_cast<std::size_t>(grid.slots) + static_cast<std::size_t>(j);
  }

  void add_supply(NodeId v, std::int64_t cap) { flow.add_arc(source, node(v, 0), cap); }

  std::int64_t augment() {
    std::int64_t pushed = flow.augment(source, sink);
    if (pushed >= MaxFlow::kInfinite / 2) throw std::logic_error("unbounded time-expanded flow");
    return pushed;
  }

  Rational unscale(std::int64_t amount) const { return Rational(Integer(amount), scale); }

  TimeExpandedFlow extract() const {
    TimeExpandedFlow out(grid);
    for (std::size_t i = 0; i < arc_of.size(); ++i) {
      if (arc_of[i] >= 0) out.amounts[i] = unscale(flow.flow(arc_of[i]));
    }
    return out;
  }
};

std::vector<Rational> positive_supplies(const Network& net, const SupplyFunction& w) {
  std::vector<Rational> out;
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    if (w[v] > 0) out.push_back(w[v]);
  }
  return out;
}

// Runs the supply-capped max flow; returns the layered network when every
// supply reaches the sink.
std::optional<TimeExpandedFlow> capped_flow(const Network& net, const SupplyFunction& w, const Rational& horizon,
                                            const Rational& step) {
  if (w.size() != net.num_nodes()) throw std::invalid_argument("supply must list one value per node");
  TimeExpandedNet grid = build_time_expanded(net, horizon, step);
  Expanded ex(grid, positive_supplies(net, w));
  Rational total = 0;
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    if (w[v] > 0 && v != net.sink()) {
      ex.add_supply(v, scaled(w[v], ex.scale));
      total += w[v];
    }
  }
  if (total != -w[net.sink()]) return std::nullopt;
  if (ex.unscale(ex.augment()) != total) return std::nullopt;
  return ex.extract();
}

}  // namespace

Rational oracle_max_outflow(const Network& net, const NodeSet& subset, const Rational& horizon, const Rational& step) {
  TimeExpandedNet grid = build_time_expanded(net, horizon, step);
  Expanded ex(grid, {});
  for (NodeId v : subset) {
    if (v != net.sink()) ex.add_supply(v, MaxFlow::kInfinite);
  }
  return ex.unscale(ex.augment());
}

Rational oracle_max_outflow(const Network& net, const NodeSet& subset, const Rational& horizon) {
  return oracle_max_outflow(net, subset, horizon, default_step(net, horizon));
}

std::vector<Rational> oracle_outflow_profile(const Network& net, const NodeSet& subset, const Rational& horizon,
                                             const Rational& step) {
  // Arcs only move forward in time, so with sink copies open up to slot j-1
  // the value is exactly the one for horizon j * step.
  TimeExpandedNet grid = build_time_expanded(net, horizon, step);
  Expanded ex(grid, {}, false);
  for (NodeId v : subset) {
    if (v != net.sink()) ex.add_supply(v, MaxFlow::kInfinite);
  }
  std::vector<Rational> out{Rational(0)};
  std::int64_t total = 0;
  for (int j = 0; j < grid.slots; ++j) {
    ex.open_sink_slot(j);
    total += ex.augment();
    out.push_back(ex.unscale(total));
  }
  return out;
}

bool oracle_feasible(const Network& net, const SupplyFunction& w, const Rational& horizon, const Rational& step) {
  return capped_flow(net, w, horizon, step).has_value();
}

bool oracle_feasible(const Network& net, const SupplyFunction& w, const Rational& horizon) {
  return oracle_feasible(net, w, horizon, default_step(net, horizon));
}

std::optional<TimeExpandedFlow> oracle_feasible_flow(const Network& net, const SupplyFunction& w,
                                                     const Rational& horizon, const Rational& step) {
  return capped_flow(net, w, horizon, step);
}

TimeExpandedFlow oracle_lexmax_flow(const Network& net, const std::vector<NodeId>& order, const Rational& horizon,
                                    const Rational& step) {
  TimeExpandedNet grid = build_time_expanded(net, horizon, step);
  Expanded ex(grid, {});
  for (NodeId v : order) {
    if (v == net.sink()) throw std::invalid_argument("lex-max order must list sources only");
    ex.add_supply(v, MaxFlow::kInfinite);
    ex.augment();
  }
  return ex.extract();
}

std::vector<Rational> all_subset_thetas(const Network& net, const SupplyFunction& w) {
  const NodeSet& sources = net.sources();
  const int k = static_cast<int>(sources.size());
  if (k > kOracleMaxSources) {
    throw InvalidInstance("instance too large for the subset oracle: " + std::to_string(k) + " sources");
  }
  std::vector<Rational> thetas(std::size_t{1} << k);
  for (std::size_t mask = 1; mask < thetas.size(); ++mask) {
    NodeSet subset;
    for (int i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) subset.push_back(sources[static_cast<std::size_t>(i)]);
    }
    SsspResult sssp = successive_shortest_paths(net, subset);
    thetas[mask] = min_required_time(sssp, net.capacity(), w.total(subset));
  }
  return thetas;
}

Rational oracle_t_star(const Network& net, const SupplyFunction& w) {
  Rational t_star = 0;
  for (const Rational& theta : all_subset_thetas(net, w)) {
    if (theta > t_star) t_star = theta;
  }

  const Rational step = default_step(net, t_star);
  const std::int64_t top = to_int64(t_star / step);
  if (!oracle_feasible(net, w, t_star, step)) {
    throw OracleDisagreement("subset maximum " + to_string(t_star) + " is not feasible on the time-expanded network");
  }
  std::int64_t lo = 0, hi = top;  // smallest feasible multiple lies in [lo, hi]
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (oracle_feasible(net, w, Rational(mid) * step, step)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (lo != top) {
    throw OracleDisagreement("time-expanded bisection finds " + to_string(Rational(lo) * step) +
                             " but the subset maximum is " + to_string(t_star));
  }
  return t_star;
}

FlowCheck verify_dynamic_flow(const TimeExpandedFlow& flow, const SupplyFunction& w, const Rational& horizon) {
  const TimeExpandedNet& grid = flow.grid;
  if (grid.net == nullptr) return {3, "flow has no network"};
  const Network& net = *grid.net;
  if (grid.horizon != horizon) {
    return {3, "flow grid ends at " + to_string(grid.horizon) + ", not at " + to_string(horizon)};
  }
  if (w.size() != net.num_nodes()) return {3, "supply must list one value per node"};

  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const Rational limit = net.edge_capacity(e) * grid.step;
    for (int j = 0; j < grid.slots; ++j) {
      const Rational& a = flow.amount(e, j);
      if (a < 0 || a > limit) {
        return {1, "edge " + std::to_string(e) + " carries " + to_string(a) + " in slot starting at " +
                       to_string(Rational(j) * grid.step) + ", outside [0, " + to_string(limit) + "]"};
      }
    }
  }

  const std::size_t n = static_cast<std::size_t>(net.num_nodes());
  const std::size_t slots = static_cast<std::size_t>(grid.slots);
  // departures[v][j], arrivals[v][j] by slot; arrivals outside the grid are dropped.
  std::vector<std::vector<Rational>> dep(n, std::vector<Rational>(slots)), arr(n, std::vector<Rational>(slots));
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const Edge& edge = net.edge(e);
    for (int j = 0; j < grid.slots; ++j) {
      const Rational& a = flow.amount(e, j);
      if (a == 0) continue;
      dep[static_cast<std::size_t>(edge.tail)][static_cast<std::size_t>(j)] += a;
      if (grid.delivers(e, j)) {
        auto slot = static_cast<std::size_t>(j + grid.shift[static_cast<std::size_t>(e)]);
        arr[static_cast<std::size_t>(edge.head)][slot] += a;
      }
    }
  }
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    Rational stock = w[v] > 0 ? w[v] : Rational(0);
    for (std::size_t j = 0; j < slots; ++j) {
      stock += arr[static_cast<std::size_t>(v)][j] - dep[static_cast<std::size_t>(v)][j];
      if (stock < 0) {
        return {2, "node " + net.name(v) + " sends more than it holds by time " +
                       to_string(Rational(static_cast<long long>(j + 1)) * grid.step)};
      }
    }
  }
  std::vector<Rational> out = flow.net_outflow();
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    if (out[static_cast<std::size_t>(v)] != w[v]) {
      return {3, "node " + net.name(v) + " has net outflow " + to_string(out[static_cast<std::size_t>(v)]) +
                     " by the horizon but supply " + to_string(w[v])};
    }
  }
  return {};
}

}  // namespace evac
