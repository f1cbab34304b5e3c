#pragma once

// Maximal admitting source subsets and the minimum feasible time horizon.
//
// A source subset A admits the tuple (v_1, ..., v_p) when successive shortest
// path augmentation from A yields exactly p paths whose origins are v_1..v_p
// in order. For every tuple the admitting subsets are closed under union, so
// there is a unique maximal one; the family of those maximal subsets over all
// tuples of length at most the sink in-degree contains a subset whose
// minimum required time equals the optimal horizon.

#include "evac/network.hpp"
#include "evac/sssp.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace evac {

using AdmitTuple = std::vector<NodeId>;

struct AHatEntry {
  AdmitTuple tuple;
  NodeSet subset;  ///< empty when no subset admits the tuple
  std::optional<SsspResult> sssp;
  Rational theta = 0;
  std::optional<std::string> warning;
};

class AHatFamily {
 public:
  AHatFamily();

  /// entries()[0] is the empty-set sentinel; the rest are distinct nonempty
  /// subsets in first-seen order (tuple length ascending, then lexicographic).
  const std::vector<AHatEntry>& entries() const { return entries_; }
  /// Entry for `tuple`, or the empty sentinel when the tuple is not admitted.
  const AHatEntry& entry_for(const AdmitTuple& tuple) const;
  /// Every admitted tuple with the index of its entry.
  const std::map<AdmitTuple, int>& admitted() const { return by_tuple_; }

  std::vector<NodeSet> nonempty_subsets() const;
  int num_nonempty() const { return static_cast<int>(entries_.size()) - 1; }

  /// Tuples covered by the enumeration (sum of k^p over p = 1..d).
  std::uint64_t tuples_examined = 0;
  /// Residual states actually expanded.
  std::uint64_t search_states = 0;
  std::vector<std::string> warnings;

  /// Adds an admitted entry; a subset already present only gains a tuple link.
  void add(AHatEntry entry);

 private:
  std::vector<AHatEntry> entries_;
  std::map<NodeSet, int> by_subset_;
  std::map<AdmitTuple, int> by_tuple_;
};

/// Whether {v_1..v_p} itself admits the tuple; by the union/restriction
/// property this decides whether any subset admits it.
bool check_admits(const Network& net, const AdmitTuple& tuple);

/// The unique maximal subset admitting `tuple`, with its path data and theta.
/// Returns an entry with an empty subset when nothing admits the tuple.
AHatEntry compute_a_hat(const Network& net, const SupplyFunction& w, const AdmitTuple& tuple);

struct EnumerationOptions {
  int jobs = 1;
};

/// Maximal admitting subsets for all tuples in (S+)^p, p = 1..d. Shares the
/// residual computations of common tuple prefixes and prunes prefixes that no
/// extension can rescue; the result equals calling compute_a_hat on every
/// tuple. Output is identical for any job count.
AHatFamily enumerate_a_hat(const Network& net, const SupplyFunction& w, const EnumerationOptions& options = {});

/// A tuple set given as an implicit trie: `next` lists the elements that may
/// follow a prefix (the empty prefix included) and `accept` whether a prefix
/// is itself a member.
struct TupleFilter {
  std::function<const std::vector<NodeId>&(const AdmitTuple&)> next;
  std::function<bool(const AdmitTuple&)> accept;
  std::uint64_t size = 0;  ///< number of members, reported as tuples_examined
};

/// enumerate_a_hat restricted to the members of `filter`. Prefixes that are
/// not themselves members are still walked when members extend them.
AHatFamily enumerate_a_hat(const Network& net, const SupplyFunction& w, const TupleFilter& filter,
                           const EnumerationOptions& options = {});

/// Family built by calling compute_a_hat on the listed tuples, in order.
AHatFamily build_family(const Network& net, const SupplyFunction& w, const std::vector<AdmitTuple>& tuples,
                        const EnumerationOptions& options = {});

struct HorizonResult {
  Rational t_star;
  NodeSet a_star;
  AHatFamily family;
};

/// Throws UnreachableSupply when a source with positive supply cannot reach the sink.
void require_reachable_supply(const Network& net, const SupplyFunction& w);

/// T* = max theta over the family; A* is the lexicographically smallest maximiser.
HorizonResult horizon_from_family(AHatFamily family);

/// Validates the instance, enumerates the family and returns T* and A*.
HorizonResult min_time_horizon(const Network& net, const SupplyFunction& w, const EnumerationOptions& options = {});

}  // namespace evac
