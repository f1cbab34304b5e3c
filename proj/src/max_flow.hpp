#pragma once

// Integer Dinic max-flow. Used by the time-expanded oracle and the grid
// area classification; every capacity there is scaled to an integer first.

#include <cstdint>
#include <vector>

namespace evac::detail {

class MaxFlow {
 public:
  static constexpr std::int64_t kInfinite = std::int64_t{1} << 60;

  explicit MaxFlow(int num_nodes = 0);

  int add_node();
  int num_nodes() const { return static_cast<int>(adj_.size()); }

  /// Returns an arc handle usable with flow().
  int add_arc(int from, int to, std::int64_t capacity);

  /// Pushes as much additional flow from s to t as the residual graph allows
  /// and returns the amount pushed. Existing flow is kept, so arcs may be
  /// added between calls.
  std::int64_t augment(int s, int t);

  std::int64_t flow(int arc) const { return arcs_[static_cast<std::size_t>(arc)].flow; }

 private:
  struct Arc {
    int to;
    std::int64_t cap;
    std::int64_t flow;
  };

  bool build_levels(int s, int t);
  std::int64_t push(int v, int t, std::int64_t limit);

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace evac::detail
