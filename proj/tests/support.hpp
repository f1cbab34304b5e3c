#pragma once

#include "evac/generators.hpp"
#include "evac/horizon.hpp"
#include "evac/sssp.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace evac::support {

/// Every subset of `ground`, indexed by bitmask.
inline std::vector<NodeSet> all_subsets(const NodeSet& ground) {
  std::vector<NodeSet> out(std::size_t{1} << ground.size());
  for (std::size_t mask = 0; mask < out.size(); ++mask) {
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if (mask & (std::size_t{1} << i)) out[mask].push_back(ground[i]);
    }
  }
  return out;
}

/// Every tuple over `alphabet` of length 1..max_len, shortest first.
inline std::vector<AdmitTuple> all_tuples(const NodeSet& alphabet, int max_len) {
  std::vector<AdmitTuple> out, layer{{}};
  for (int p = 1; p <= max_len; ++p) {
    std::vector<AdmitTuple> next;
    for (const auto& t : layer) {
      for (NodeId v : alphabet) {
        AdmitTuple u = t;
        u.push_back(v);
        next.push_back(u);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// Runs successive shortest paths from every nonempty source subset and
/// groups the subsets by the origin tuple they produce.
struct SubsetScan {
  std::map<AdmitTuple, std::vector<NodeSet>> admitting;
  std::vector<Rational> theta;  ///< by bitmask over sources
};

inline SubsetScan scan_subsets(const Network& net, const SupplyFunction& w) {
  SubsetScan scan;
  auto subsets = all_subsets(net.sources());
  scan.theta.resize(subsets.size());
  for (std::size_t mask = 1; mask < subsets.size(); ++mask) {
    SsspResult r = successive_shortest_paths(net, subsets[mask]);
    scan.admitting[r.origins()].push_back(subsets[mask]);
    scan.theta[mask] = min_required_time(r, net.capacity(), w.total(subsets[mask]));
  }
  return scan;
}

/// Instances of the random acceptance family, seeds base .. base + count - 1.
inline std::vector<Instance> random_corpus(int count, std::uint64_t base, const RandomInstanceOptions& options = {}) {
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) out.push_back(random_instance(base + static_cast<std::uint64_t>(i), options));
  return out;
}

}  // namespace evac::support
