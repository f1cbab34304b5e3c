#include "evac/horizon.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace evac {

// ---------------------------------------------------------------------------
// AHatFamily

AHatFamily::AHatFamily() { entries_.push_back(AHatEntry{}); }

const AHatEntry& AHatFamily::entry_for(const AdmitTuple& tuple) const {
  auto it = by_tuple_.find(tuple);
  return it == by_tuple_.end() ? entries_.front() : entries_[static_cast<std::size_t>(it->second)];
}

std::vector<NodeSet> AHatFamily::nonempty_subsets() const {
  std::vector<NodeSet> out;
  for (std::size_t i = 1; i < entries_.size(); ++i) out.push_back(entries_[i].subset);
  return out;
}

void AHatFamily::add(AHatEntry entry) {
  if (entry.subset.empty()) return;
  if (entry.warning) warnings.push_back(*entry.warning);
  auto [it, inserted] = by_subset_.try_emplace(entry.subset, static_cast<int>(entries_.size()));
  by_tuple_.emplace(entry.tuple, it->second);
  if (inserted) entries_.push_back(std::move(entry));
}

namespace {

void require_tuple(const Network& net, const AdmitTuple& tuple) {
  if (tuple.empty()) throw std::invalid_argument("admit tuple must be nonempty");
  for (NodeId v : tuple) {
    if (!net.is_source(v)) throw std::invalid_argument("admit tuple contains a non-source node");
  }
}

std::uint64_t count_tuples(int k, int d) {
  std::uint64_t total = 0, power = 1;
  for (int p = 1; p <= d; ++p) {
    power *= static_cast<std::uint64_t>(k);
    total += power;
  }
  return total;
}

std::string tuple_text(const Network& net, const AdmitTuple& tuple) {
  std::string s = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) s += (i ? "," : "") + net.name(tuple[i]);
  return s + ")";
}

// Everything an admitted tuple contributes, before it is turned into an entry.
struct AdmittedRecord {
  AdmitTuple tuple;
  NodeSet subset;
  std::vector<AugmentingPath> paths;
  StaticFlow final_flow;
};

AHatEntry make_entry(const Network& net, const SupplyFunction& w, AdmittedRecord rec) {
  AHatEntry entry;
  entry.tuple = std::move(rec.tuple);
  entry.subset = std::move(rec.subset);
  SsspResult sssp;
  sssp.subset = entry.subset;
  Rational running = 0;
  for (auto& p : rec.paths) {
    running += p.cost;
    sssp.prefix_costs.push_back(running);
  }
  sssp.paths = std::move(rec.paths);
  sssp.final_flow = std::move(rec.final_flow);
  entry.theta = min_required_time(sssp, net.capacity(), w.total(entry.subset));
  entry.sssp = std::move(sssp);
  return entry;
}

// Depth-first walk over tuple prefixes. A prefix (v_1..v_i) fixes the first i
// augmentations, hence the residual network and its distance labels; an
// extension v is viable only if it does not beat any earlier origin at that
// origin's step and no earlier origin beats it at its own step.
class PrefixSearch {
 public:
  PrefixSearch(const Network& net, const TupleFilter* filter = nullptr)
      : net_(net), sources_(net.sources()), depth_limit_(net.sink_in_degree()), filter_(filter) {}

  std::vector<AdmittedRecord> run_from(NodeId first) {
    records_.clear();
    states_ = 0;
    StaticFlow zero(net_.num_edges());
    ResidualView res(net_, zero);
    dists_.assign(1, res.scaled_distances_to(net_.sink()));
    prefix_.clear();
    paths_.clear();
    extend(zero, first);
    return std::move(records_);
  }

  std::uint64_t states() const { return states_; }

 private:
  bool viable(NodeId v) const {
    const auto& current = dists_.back();
    if (current[static_cast<std::size_t>(v)] == kUnreachable) return false;
    for (std::size_t j = 0; j < prefix_.size(); ++j) {
      NodeId earlier = prefix_[j];
      if (earlier == v) continue;
      if (preferred_origin(current, earlier, v)) return false;
      if (preferred_origin(dists_[j], v, earlier)) return false;
    }
    return true;
  }

  void extend(const StaticFlow& flow, NodeId v) {
    if (!viable(v)) return;
    ++states_;
    ResidualView res(net_, flow);
    auto path = shortest_path(res, NodeSet{v}, net_.sink(), dists_.back());
    StaticFlow next = augment(net_, flow, path->arcs, net_.capacity());
    ResidualView next_res(net_, next);
    prefix_.push_back(v);
    paths_.push_back({std::move(path->arcs), std::move(path->cost), v});
    dists_.push_back(next_res.scaled_distances_to(net_.sink()));

    const auto& final_dist = dists_.back();
    bool closed = std::all_of(prefix_.begin(), prefix_.end(), [&](NodeId a) {
      return final_dist[static_cast<std::size_t>(a)] == kUnreachable;
    });
    if (closed && (!filter_ || filter_->accept(prefix_))) record(next);
    if (static_cast<int>(prefix_.size()) < depth_limit_) {
      for (NodeId u : filter_ ? filter_->next(prefix_) : sources_) extend(next, u);
    }

    dists_.pop_back();
    paths_.pop_back();
    prefix_.pop_back();
  }

  void record(const StaticFlow& final_flow) {
    NodeSet subset;
    const auto& final_dist = dists_.back();
    for (NodeId s : sources_) {
      if (final_dist[static_cast<std::size_t>(s)] != kUnreachable) continue;
      bool beaten = false;
      for (std::size_t j = 0; j < prefix_.size() && !beaten; ++j) {
        beaten = preferred_origin(dists_[j], s, prefix_[j]);
      }
      if (!beaten) subset.push_back(s);
    }
    records_.push_back({prefix_, std::move(subset), paths_, final_flow});
  }

  const Network& net_;
  const NodeSet& sources_;
  int depth_limit_;
  const TupleFilter* filter_;
  std::vector<NodeId> prefix_;
  std::vector<AugmentingPath> paths_;
  std::vector<std::vector<std::int64_t>> dists_;
  std::vector<AdmittedRecord> records_;
  std::uint64_t states_ = 0;
};

template <typename Task>
void run_jobs(int jobs, int count, Task task) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (int i = t; i < count; i += jobs) task(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

bool tuple_order(const AdmitTuple& a, const AdmitTuple& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

// ---------------------------------------------------------------------------

bool check_admits(const Network& net, const AdmitTuple& tuple) {
  require_tuple(net, tuple);
  if (static_cast<int>(tuple.size()) > net.sink_in_degree()) return false;
  SsspResult sssp = successive_shortest_paths(net, make_node_set(tuple));
  return sssp.origins() == tuple;
}

AHatEntry compute_a_hat(const Network& net, const SupplyFunction& w, const AdmitTuple& tuple) {
  require_tuple(net, tuple);
  AHatEntry empty;
  empty.tuple = tuple;
  if (static_cast<int>(tuple.size()) > net.sink_in_degree()) return empty;
  SsspResult sssp = successive_shortest_paths(net, make_node_set(tuple));
  if (sssp.origins() != tuple) return empty;

  std::vector<char> keep(static_cast<std::size_t>(net.num_nodes()), 0);
  for (NodeId s : net.sources()) keep[static_cast<std::size_t>(s)] = 1;
  StaticFlow flow(net.num_edges());
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    ResidualView res(net, flow);
    auto dist = res.scaled_distances_to(net.sink());
    // Drop every source the tie-broken path search would pick before v_i.
    for (NodeId s : net.sources()) {
      if (preferred_origin(dist, s, tuple[i])) keep[static_cast<std::size_t>(s)] = 0;
    }
    flow = augment(net, flow, sssp.paths[i].arcs, net.capacity());
  }
  ResidualView res(net, flow);
  auto dist = res.scaled_distances_to(net.sink());
  for (NodeId s : net.sources()) {
    if (dist[static_cast<std::size_t>(s)] != kUnreachable) keep[static_cast<std::size_t>(s)] = 0;
  }

  AdmittedRecord rec;
  rec.tuple = tuple;
  for (NodeId s : net.sources()) {
    if (keep[static_cast<std::size_t>(s)]) rec.subset.push_back(s);
  }
  for (NodeId v : tuple) {
    if (!keep[static_cast<std::size_t>(v)]) {
      AHatEntry flagged = empty;
      flagged.warning = "origin removed from maximal subset of admitted tuple " + tuple_text(net, tuple);
      return flagged;
    }
  }
  rec.paths = std::move(sssp.paths);
  rec.final_flow = std::move(sssp.final_flow);
  return make_entry(net, w, std::move(rec));
}

namespace {

AHatFamily run_prefix_search(const Network& net, const SupplyFunction& w, const NodeSet& roots,
                             const TupleFilter* filter, const EnumerationOptions& options) {
  const int k = static_cast<int>(roots.size());
  std::vector<std::vector<AdmittedRecord>> per_first(static_cast<std::size_t>(k));
  std::vector<std::uint64_t> states(static_cast<std::size_t>(k), 0);
  if (net.sink_in_degree() > 0) {
    run_jobs(options.jobs, k, [&](int i) {
      PrefixSearch search(net, filter);
      per_first[static_cast<std::size_t>(i)] = search.run_from(roots[static_cast<std::size_t>(i)]);
      states[static_cast<std::size_t>(i)] = search.states();
    });
  }

  std::vector<AdmittedRecord> all;
  for (auto& bucket : per_first) {
    for (auto& rec : bucket) all.push_back(std::move(rec));
  }
  std::sort(all.begin(), all.end(),
            [](const AdmittedRecord& a, const AdmittedRecord& b) { return tuple_order(a.tuple, b.tuple); });

  AHatFamily family;
  for (std::uint64_t s : states) family.search_states += s;
  for (auto& rec : all) family.add(make_entry(net, w, std::move(rec)));
  return family;
}

}  // namespace

AHatFamily enumerate_a_hat(const Network& net, const SupplyFunction& w, const EnumerationOptions& options) {
  AHatFamily family = run_prefix_search(net, w, net.sources(), nullptr, options);
  family.tuples_examined = count_tuples(static_cast<int>(net.sources().size()), net.sink_in_degree());
  return family;
}

AHatFamily enumerate_a_hat(const Network& net, const SupplyFunction& w, const TupleFilter& filter,
                           const EnumerationOptions& options) {
  NodeSet roots = filter.next({});
  for (NodeId v : roots) {
    if (!net.is_source(v)) throw std::invalid_argument("tuple filter lists a non-source node");
  }
  AHatFamily family = run_prefix_search(net, w, roots, &filter, options);
  family.tuples_examined = filter.size;
  return family;
}

AHatFamily build_family(const Network& net, const SupplyFunction& w, const std::vector<AdmitTuple>& tuples,
                        const EnumerationOptions& options) {
  std::vector<AHatEntry> entries(tuples.size());
  run_jobs(options.jobs, static_cast<int>(tuples.size()), [&](int i) {
    entries[static_cast<std::size_t>(i)] = compute_a_hat(net, w, tuples[static_cast<std::size_t>(i)]);
  });
  std::vector<std::size_t> order(tuples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return tuple_order(tuples[a], tuples[b]); });
  AHatFamily family;
  family.tuples_examined = tuples.size();
  family.search_states = tuples.size();
  for (std::size_t i : order) {
    if (entries[i].warning) family.warnings.push_back(*entries[i].warning);
    family.add(std::move(entries[i]));
  }
  return family;
}

void require_reachable_supply(const Network& net, const SupplyFunction& w) {
  StaticFlow zero(net.num_edges());
  ResidualView res(net, zero);
  auto dist = res.scaled_distances_to(net.sink());
  for (NodeId s : net.sources()) {
    if (w[s] > 0 && dist[static_cast<std::size_t>(s)] == kUnreachable) {
      throw UnreachableSupply("unreachable supply: source " + net.name(s) + " cannot reach the sink");
    }
  }
}

HorizonResult horizon_from_family(AHatFamily family) {
  HorizonResult result;
  result.t_star = 0;
  bool found = false;
  for (std::size_t i = 1; i < family.entries().size(); ++i) {
    const AHatEntry& e = family.entries()[i];
    if (!found || e.theta > result.t_star || (e.theta == result.t_star && e.subset < result.a_star)) {
      result.t_star = e.theta;
      result.a_star = e.subset;
      found = true;
    }
  }
  result.family = std::move(family);
  return result;
}

HorizonResult min_time_horizon(const Network& net, const SupplyFunction& w, const EnumerationOptions& options) {
  require_valid(net, w);
  require_reachable_supply(net, w);
  return horizon_from_family(enumerate_a_hat(net, w, options));
}

}  // namespace evac
