#include "max_flow.hpp"

#include <algorithm>
#include <queue>

namespace evac::detail {

MaxFlow::MaxFlow(int num_nodes) : adj_(static_cast<std::size_t>(num_nodes)) {}

int MaxFlow::add_node() {
  adj_.emplace_back();
  return num_nodes() - 1;
}

int MaxFlow::add_arc(int from, int to, std::int64_t capacity) {
  int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, 0});
  arcs_.push_back({from, 0, 0});
  adj_[static_cast<std::size_t>(from)].push_back(id);
  adj_[static_cast<std::size_t>(to)].push_back(id + 1);
  return id;
}

bool MaxFlow::build_levels(int s, int t) {
  level_.assign(adj_.size(), -1);
  std::queue<int> queue;
  level_[static_cast<std::size_t>(s)] = 0;
  queue.push(s);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (int id : adj_[static_cast<std::size_t>(v)]) {
      const Arc& a = arcs_[static_cast<std::size_t>(id)];
      if (a.cap - a.flow > 0 && level_[static_cast<std::size_t>(a.to)] < 0) {
        level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(v)] + 1;
        queue.push(a.to);
      }
    }
  }
  return level_[static_cast<std::size_t>(t)] >= 0;
}

std::int64_t MaxFlow::push(int v, int t, std::int64_t limit) {
  if (v == t) return limit;
  auto& cursor = next_[static_cast<std::size_t>(v)];
  const auto& out = adj_[static_cast<std::size_t>(v)];
  for (; cursor < out.size(); ++cursor) {
    int id = out[cursor];
    Arc& a = arcs_[static_cast<std::size_t>(id)];
    if (a.cap - a.flow <= 0 || level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(v)] + 1) {
      continue;
    }
    std::int64_t pushed = push(a.to, t, std::min(limit, a.cap - a.flow));
    if (pushed > 0) {
      a.flow += pushed;
      arcs_[static_cast<std::size_t>(id ^ 1)].flow -= pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t MaxFlow::augment(int s, int t) {
  std::int64_t total = 0;
  if (s == t) return 0;
  while (build_levels(s, t)) {
    next_.assign(adj_.size(), 0);
    while (std::int64_t pushed = push(s, t, kInfinite)) total += pushed;
  }
  return total;
}

}  // namespace evac::detail
