#include "evac/polytope.hpp"

#include "evac/sssp.hpp"

#include <algorithm>
#include <stdexcept>

namespace evac {

Rational sum_over(const GroundVector& x, const NodeSet& set) {
  Rational total = 0;
  for (NodeId v : set) total += x[static_cast<std::size_t>(v)];
  return total;
}

OutflowFunction::OutflowFunction(const Network& net, Rational horizon, const AHatFamily* family)
    : net_(&net), horizon_(std::move(horizon)), ground_(net.sources()) {
  ground_ = make_node_set([&] {
    auto g = ground_;
    g.push_back(net.sink());
    return g;
  }());
  if (family != nullptr) {
    for (const AHatEntry& e : family->entries()) {
      if (e.sssp) cache_.emplace(e.subset, max_outflow(*e.sssp, net.capacity(), horizon_));
    }
  }
}

Rational OutflowFunction::operator()(const NodeSet& set) const {
  if (set.empty() || contains(set, net_->sink())) return 0;
  auto it = cache_.find(set);
  if (it != cache_.end()) return it->second;
  Rational value = max_outflow(successive_shortest_paths(*net_, set), net_->capacity(), horizon_);
  cache_.emplace(set, value);
  return value;
}

bool is_total_order(const Network& net, const TotalOrder& order) {
  NodeSet ground = net.sources();
  ground.push_back(net.sink());
  return make_node_set(order) == make_node_set(ground) && order.size() == ground.size();
}

PolytopeVertex vertex_from_order(const OutflowFunction& o, const TotalOrder& order) {
  const Network& net = o.network();
  if (!is_total_order(net, order)) throw std::invalid_argument("order must list every terminal exactly once");
  PolytopeVertex vertex{order, GroundVector(static_cast<std::size_t>(net.num_nodes()))};
  NodeSet prefix;
  Rational previous = 0;
  for (NodeId v : order) {
    prefix = set_union(prefix, NodeSet{v});
    Rational current = o(prefix);
    vertex.point[static_cast<std::size_t>(v)] = current - previous;
    previous = current;
  }
  return vertex;
}

PolytopeVertex vertex_from_order(const Network& net, const AHatFamily& family, const Rational& t_star,
                                 const TotalOrder& order) {
  OutflowFunction o(net, t_star, &family);
  return vertex_from_order(o, order);
}

std::vector<NodeSet> bounding_sets(const Network& net, const AHatFamily& family) {
  std::vector<NodeSet> sets = family.nonempty_subsets();
  NodeSet ground = net.sources();
  ground.push_back(net.sink());
  ground = make_node_set(ground);
  for (NodeId v : net.sources()) sets.push_back(set_difference(ground, NodeSet{v}));
  return sets;
}

bool satisfies_bounds(const OutflowFunction& o, const GroundVector& x, const std::vector<NodeSet>& sets) {
  if (sum_over(x, o.ground()) != 0) return false;
  return std::all_of(sets.begin(), sets.end(), [&](const NodeSet& a) { return sum_over(x, a) <= o(a); });
}

namespace {

int rank_of(std::vector<std::vector<Rational>> rows, std::size_t columns) {
  int rank = 0;
  for (std::size_t col = 0; col < columns && static_cast<std::size_t>(rank) < rows.size(); ++col) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[static_cast<std::size_t>(rank)]);
    const auto& top = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      Rational factor = rows[r][col] / top[col];
      for (std::size_t c = col; c < columns; ++c) rows[r][c] -= factor * top[c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool is_vertex(const OutflowFunction& o, const GroundVector& x, const std::vector<NodeSet>& sets) {
  const NodeSet& ground = o.ground();
  if (sum_over(x, ground) != 0) return false;
  auto row_of = [&](const NodeSet& set) {
    std::vector<Rational> row(ground.size());
    for (std::size_t i = 0; i < ground.size(); ++i) row[i] = contains(set, ground[i]) ? 1 : 0;
    return row;
  };
  std::vector<std::vector<Rational>> rows{row_of(ground)};
  for (const NodeSet& a : sets) {
    if (sum_over(x, a) == o(a)) rows.push_back(row_of(a));
  }
  return rank_of(std::move(rows), ground.size()) == static_cast<int>(ground.size());
}

GroundVector ConvexDecomposition::combination() const {
  GroundVector out;
  for (const auto& t : terms) {
    if (out.empty()) out.assign(t.vertex.size(), Rational(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t.lambda * t.vertex[i];
  }
  return out;
}

Rational ConvexDecomposition::lambda_sum() const {
  Rational total = 0;
  for (const auto& t : terms) total += t.lambda;
  return total;
}

TotalOrder order_for_chain(const Network& net, const std::vector<NodeSet>& chain) {
  NodeSet ground = net.sources();
  ground.push_back(net.sink());
  ground = make_node_set(ground);
  TotalOrder order;
  NodeSet placed;
  auto place_gap = [&](const NodeSet& upto) {
    NodeSet gap = set_difference(upto, placed);
    bool has_sink = false;
    for (NodeId v : gap) {
      if (v == net.sink()) {
        has_sink = true;
      } else {
        order.push_back(v);
      }
    }
    if (has_sink) order.push_back(net.sink());
    placed = set_union(placed, gap);
  };
  for (const NodeSet& c : chain) {
    if (!is_subset(placed, c)) throw DecompositionError("chain violation: chain sets are not nested");
    place_gap(c);
  }
  place_gap(ground);
  return order;
}

namespace {

bool nests(const NodeSet& a, const NodeSet& b) { return is_subset(a, b) || is_subset(b, a); }

bool nests_with_chain(const NodeSet& a, const std::vector<NodeSet>& chain) {
  return std::all_of(chain.begin(), chain.end(), [&](const NodeSet& c) { return nests(a, c); });
}

std::string set_text(const Network& net, const NodeSet& set) {
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i) s += (i ? "," : "") + net.name(set[i]);
  return s + "}";
}

// Tight sets at a point of the polytope are closed under union and
// intersection. When the hyperplane hit crosses a chain set C, one of A & C,
// A | C is tight at the new point but not at the vertex, and it nests with C.
NodeSet fit_into_chain(const OutflowFunction& o, NodeSet a, const std::vector<NodeSet>& chain,
                       const GroundVector& hit, const GroundVector& vertex) {
  auto tight = [&](const NodeSet& s, const GroundVector& x) { return sum_over(x, s) == o(s); };
  for (std::size_t guard = 0; guard <= chain.size() + 1; ++guard) {
    auto crossing = std::find_if(chain.begin(), chain.end(), [&](const NodeSet& c) { return !nests(a, c); });
    if (crossing == chain.end()) return a;
    bool replaced = false;
    for (NodeSet candidate : {set_intersection(a, *crossing), set_union(a, *crossing)}) {
      if (!candidate.empty() && tight(candidate, hit) && !tight(candidate, vertex)) {
        a = std::move(candidate);
        replaced = true;
        break;
      }
    }
    if (!replaced) {
      throw DecompositionError("chain violation: " + set_text(o.network(), a) + " crosses chain set " +
                               set_text(o.network(), *crossing));
    }
  }
  throw DecompositionError("chain violation: could not nest " + set_text(o.network(), a));
}

}  // namespace

ConvexDecomposition decompose_supply(const Network& net, const SupplyFunction& w, const Rational& t_star,
                                     const NodeSet& a_star, const AHatFamily& family) {
  OutflowFunction o(net, t_star, &family);
  const std::vector<NodeSet> sets = bounding_sets(net, family);
  GroundVector x = w.values();
  if (static_cast<int>(x.size()) != net.num_nodes()) throw std::invalid_argument("supply must list one value per node");
  if (a_star.empty() || sum_over(x, a_star) != o(a_star)) {
    throw DecompositionError("supply is not tight at " + set_text(net, a_star) + " for horizon " + to_string(t_star));
  }

  ConvexDecomposition result;
  result.chain = {a_star};
  Rational alpha = 1;
  const int k = net.num_sources();
  for (int iteration = 0; iteration <= k + 1; ++iteration) {
    TotalOrder order = order_for_chain(net, result.chain);
    GroundVector b = vertex_from_order(o, order).point;
    if (b == x) {
      result.terms.push_back({std::move(order), std::move(b), alpha});
      std::vector<NodeSet> known = sets;
      std::sort(known.begin(), known.end());
      for (const NodeSet& c : result.chain) {
        if (!std::binary_search(known.begin(), known.end(), c)) ++result.off_family_chain_sets;
      }
      return result;
    }

    GroundVector dir(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dir[i] = x[i] - b[i];

    std::optional<Rational> best_s;
    std::vector<const NodeSet*> best;
    for (const NodeSet& a : sets) {
      Rational slope = sum_over(dir, a);
      if (slope <= 0) continue;
      Rational s = (o(a) - sum_over(b, a)) / slope;
      if (!best_s || s < *best_s) {
        best_s = s;
        best.clear();
      }
      if (s == *best_s) best.push_back(&a);
    }
    if (!best_s) throw DecompositionError("no forward intersection from " + to_string(alpha) + "-scaled point");
    if (*best_s < 1) throw DecompositionError("no forward intersection: current point lies outside the polytope");

    std::stable_sort(best.begin(), best.end(), [&](const NodeSet* p, const NodeSet* q) {
      bool np = nests_with_chain(*p, result.chain), nq = nests_with_chain(*q, result.chain);
      if (np != nq) return np;
      if (p->size() != q->size()) return p->size() < q->size();
      return *p < *q;
    });

    const Rational s = *best_s;
    GroundVector hit(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) hit[i] = b[i] + s * dir[i];
    NodeSet inserted = fit_into_chain(o, *best.front(), result.chain, hit, b);

    WalkStep step;
    step.point = x;
    step.alpha = alpha;
    step.s = s;
    step.inserted = inserted;
    if (s == 1) {
      step.beta = 0;
      step.gamma = 1;
    } else {
      step.beta = 1 - 1 / s;
      step.gamma = 1 / s;
      result.terms.push_back({order, b, alpha * step.beta});
      alpha *= step.gamma;
      x = hit;
    }
    result.trace.push_back(std::move(step));

    auto pos = std::find_if(result.chain.begin(), result.chain.end(),
                            [&](const NodeSet& c) { return is_subset(inserted, c); });
    result.chain.insert(pos, std::move(inserted));
  }
  throw DecompositionError("facet walk did not reach a vertex within " + std::to_string(k + 2) + " steps");
}

Rational lexmax_step(const Rational& horizon) {
  if (horizon == 0) return 1;
  return Rational(Integer(1), denominator_of(horizon));
}

TimeExpandedFlow lexmax_flow(const Network& net, const TotalOrder& order, const Rational& horizon) {
  for (const Edge& e : net.edges()) {
    if (!is_integral(e.transit)) throw InvalidInstance("non-integral transit");
  }
  if (!is_total_order(net, order)) throw std::invalid_argument("order must list every terminal exactly once");
  std::vector<NodeId> sources;
  for (NodeId v : order) {
    if (v == net.sink()) break;
    sources.push_back(v);
  }
  return oracle_lexmax_flow(net, sources, horizon, lexmax_step(horizon));
}

TimeExpandedFlow assemble_quickest_flow(const ConvexDecomposition& decomposition,
                                        const std::vector<TimeExpandedFlow>& flows) {
  if (flows.size() != decomposition.terms.size() || flows.empty()) {
    throw std::invalid_argument("need one flow per decomposition term");
  }
  TimeExpandedFlow out(flows.front().grid);
  for (std::size_t i = 0; i < flows.size(); ++i) {
    if (!flows[i].grid.same_grid(out.grid)) throw GridError("grid mismatch");
    const Rational& lambda = decomposition.terms[i].lambda;
    for (std::size_t a = 0; a < out.amounts.size(); ++a) {
      if (flows[i].amounts[a] != 0) out.amounts[a] += lambda * flows[i].amounts[a];
    }
  }
  return out;
}

QuickestFlow complete_solution(const Network& net, const SupplyFunction& w, HorizonResult horizon,
                               const SolveOptions& options) {
  QuickestFlow out;
  out.decomposition = decompose_supply(net, w, horizon.t_star, horizon.a_star, horizon.family);
  out.horizon = std::move(horizon);
  if (!options.build_flow) return out;
  bool integral = std::all_of(net.edges().begin(), net.edges().end(),
                              [](const Edge& e) { return is_integral(e.transit); });
  if (!integral) {
    out.notes.push_back("flow assembly skipped: transit times are not integral");
    return out;
  }
  std::vector<TimeExpandedFlow> flows;
  for (const auto& term : out.decomposition.terms) flows.push_back(lexmax_flow(net, term.order, out.horizon.t_star));
  out.flow = assemble_quickest_flow(out.decomposition, flows);
  return out;
}

QuickestFlow solve_quickest_flow(const Network& net, const SupplyFunction& w, const SolveOptions& options) {
  return complete_solution(net, w, min_time_horizon(net, w, {options.jobs}), options);
}

}  // namespace evac
