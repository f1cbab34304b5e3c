#pragma once

// Bidirected N x N grids: generator, area labels and the candidate filter
// that restricts the admitted-tuple search to O(n^2) tuples.

#include "evac/horizon.hpp"
#include "evac/polytope.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace evac {

struct GridSpec {
  int side = 2;
  Rational transit = 1;
  Rational capacity = 1;
  int sink_row = 0;
  int sink_col = 0;
  Rational supply = 1;  ///< supply of every non-sink node
};

struct GridInstance {
  GridSpec spec;
  std::shared_ptr<const Network> net;
  SupplyFunction supply;
};

/// Node (r, c) gets id r * side + c and name "r<r>c<c>". Every adjacent pair
/// is joined by two opposite edges. Throws GridError when side < 2 or the sink
/// lies outside the grid.
GridInstance gen_grid(const GridSpec& spec);

enum class Area { C1, C2, C3, X1, X2 };

std::string area_name(Area area);

struct AreaMap {
  std::vector<std::optional<Area>> label;  ///< empty for the sink
  std::vector<int> shortest_paths;         ///< edge-disjoint shortest paths to the sink
  std::vector<int> disjoint_paths;         ///< edge-disjoint paths to the sink
  std::vector<Rational> distance;          ///< static distance to the sink
  std::vector<int> detour_paths;           ///< edge-disjoint paths at most 2 tau longer than the shortest
};

/// C1/C2/C3: at least two edge-disjoint shortest paths and 4/3/2 edge-disjoint
/// paths. X1: one shortest path, 4 disjoint paths. X2: one shortest path, at
/// most 3 disjoint paths.
AreaMap classify_areas(const Network& net);

/// The candidate set I: tuples (v_1..v_p), 2 <= p <= min(d, 4), with
/// |v_1 s| <= |v_i s| for all i and:
///   C1: v_2 = v_1, |v_3 s|, |v_4 s| <= |v_1 s| + 4 tau
///   C2: v_2 = v_1, |v_3 s| <= |v_1 s| + 4 tau
///   C3: v_2 = v_1
///   X1: |v_2 s|, |v_3 s| <= |v_1 s| + 2 tau, |v_4 s| <= |v_1 s| + 8 tau
///   X2: |v_2 s|, |v_3 s| <= |v_1 s| + 2 tau
/// Distance bounds on positions beyond v_1's disjoint path count are dropped,
/// and the 2 tau bounds of X1 and X2 hold only up to v_1's detour path count.
/// Tuples shorter than v_1's disjoint path count are excluded. The allowed
/// elements at a position depend only on v_1 and the position, so the set is
/// stored as one pool per (v_1, position).
struct CandidateSet {
  struct Pools {
    int min_length = 2;
    std::vector<std::vector<NodeId>> at;  ///< sorted pool for positions 2..4
  };
  int max_length = 0;
  NodeSet roots;
  std::vector<Pools> pools;  ///< indexed by v_1

  const std::vector<NodeId>& next(const AdmitTuple& prefix) const;
  bool contains(const AdmitTuple& tuple) const;
  std::uint64_t size() const;
  /// Members sorted by length, then lexicographically.
  std::vector<AdmitTuple> tuples() const;
  /// Trie view for enumerate_a_hat; refers to this set, which must outlive it.
  TupleFilter filter() const;
};

CandidateSet candidate_set(const Network& net, const AreaMap& areas, const Rational& transit);
std::vector<AdmitTuple> candidate_tuples(const Network& net, const AreaMap& areas, const Rational& transit);

struct GridSolveResult {
  AreaMap areas;
  CandidateSet candidates;
  QuickestFlow solution;
};

/// Horizon over the candidate tuples only, then the usual decomposition.
GridSolveResult grid_solve(const GridInstance& grid, const SolveOptions& options = {});

/// Horizon part of grid_solve; `candidates` receives |I|.
HorizonResult grid_horizon(const GridInstance& grid, const SolveOptions& options = {},
                           std::uint64_t* candidates = nullptr);

}  // namespace evac
