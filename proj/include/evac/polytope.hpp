#pragma once

// Vertices of the base polytope of o^T, the facet walk that writes the supply
// vector as a convex combination of such vertices, and assembly of the
// quickest flow from the matching lex-max flows.
//
// Ground set U = S+ together with the sink. For a terminal set L, o^T(L) is the
// most flow the sources in L can push into sinks outside L by time T, so any
// set containing the sink has value 0. The polytope is
//   B(o) = { x : x(A) <= o(A) for A in S+, x(v) >= 0 for v in S+, x(U) = 0 }
// where x(v) >= 0 is the constraint x(U \ {v}) <= o(U \ {v}) = 0.

#include "evac/horizon.hpp"
#include "evac/oracle.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace evac {

/// Point of R^U stored by node id; entries of non-terminal nodes stay zero.
using GroundVector = std::vector<Rational>;

/// Permutation of the terminals S+ and the sink.
using TotalOrder = std::vector<NodeId>;

Rational sum_over(const GroundVector& x, const NodeSet& set);

/// o^T on terminal sets, cached. Values for subsets already in a family reuse
/// the stored path data. Not thread-safe.
class OutflowFunction {
 public:
  OutflowFunction(const Network& net, Rational horizon, const AHatFamily* family = nullptr);

  const Network& network() const { return *net_; }
  const Rational& horizon() const { return horizon_; }
  /// All terminals, sorted.
  const NodeSet& ground() const { return ground_; }

  Rational operator()(const NodeSet& set) const;

 private:
  const Network* net_;
  Rational horizon_;
  NodeSet ground_;
  mutable std::map<NodeSet, Rational> cache_;
};

struct PolytopeVertex {
  TotalOrder order;
  GroundVector point;
};

/// Whether `order` lists every terminal exactly once.
bool is_total_order(const Network& net, const TotalOrder& order);

/// b(u_l) = o(first l terminals) - o(first l-1 terminals).
PolytopeVertex vertex_from_order(const OutflowFunction& o, const TotalOrder& order);
PolytopeVertex vertex_from_order(const Network& net, const AHatFamily& family, const Rational& t_star,
                                 const TotalOrder& order);

/// Hyperplanes x(A) = o(A) bounding the polytope as the walk sees it: every
/// nonempty family subset plus U \ {v} for each source v.
std::vector<NodeSet> bounding_sets(const Network& net, const AHatFamily& family);

/// x(A) <= o(A) on every listed set and x(U) = 0.
bool satisfies_bounds(const OutflowFunction& o, const GroundVector& x, const std::vector<NodeSet>& sets);

/// Whether the listed sets tight at x, together with x(U) = 0, pin x down
/// (rank |U| in exact arithmetic).
bool is_vertex(const OutflowFunction& o, const GroundVector& x, const std::vector<NodeSet>& sets);

struct DecompositionTerm {
  TotalOrder order;
  GroundVector vertex;
  Rational lambda;
};

/// One pass of the walk. A zero-length step (s = 1) only inserts a chain set:
/// beta = 0, gamma = 1 and no term is emitted.
struct WalkStep {
  GroundVector point;  ///< x'_i, the point being decomposed
  Rational alpha;
  Rational beta;
  Rational gamma;
  Rational s;          ///< ray parameter of the hyperplane hit
  NodeSet inserted;    ///< chain set added after the step
};

struct ConvexDecomposition {
  std::vector<DecompositionTerm> terms;
  std::vector<NodeSet> chain;  ///< strictly nested, starting at A*
  std::vector<WalkStep> trace;
  /// Chain sets that are neither family subsets nor of the form U \ {v}.
  int off_family_chain_sets = 0;

  GroundVector combination() const;
  Rational lambda_sum() const;
};

/// Order whose prefixes include every chain set. Within a gap sources come in
/// ascending id and the sink comes last.
TotalOrder order_for_chain(const Network& net, const std::vector<NodeSet>& chain);

/// Facet walk from w with chain {A*}. Throws DecompositionError on
/// "no forward intersection", "chain violation" or when w is not tight at A*.
ConvexDecomposition decompose_supply(const Network& net, const SupplyFunction& w, const Rational& t_star,
                                     const NodeSet& a_star, const AHatFamily& family);

/// Grid step used for lex-max flows at horizon T: 1 / den(T).
Rational lexmax_step(const Rational& horizon);

/// Lex-max flow for the order on the time-expanded network at lexmax_step.
/// Sources after the sink send nothing. Throws InvalidInstance("non-integral
/// transit") unless every transit time is an integer.
TimeExpandedFlow lexmax_flow(const Network& net, const TotalOrder& order, const Rational& horizon);

/// sum lambda_i * flows[i], arc by arc. Throws GridError("grid mismatch").
TimeExpandedFlow assemble_quickest_flow(const ConvexDecomposition& decomposition,
                                        const std::vector<TimeExpandedFlow>& flows);

struct SolveOptions {
  int jobs = 1;
  bool build_flow = true;
};

struct QuickestFlow {
  HorizonResult horizon;
  ConvexDecomposition decomposition;
  std::optional<TimeExpandedFlow> flow;
  std::vector<std::string> notes;
};

/// Decomposition and (when transit times are integral) the assembled flow
/// for an already computed horizon.
QuickestFlow complete_solution(const Network& net, const SupplyFunction& w, HorizonResult horizon,
                               const SolveOptions& options = {});

/// Full pipeline: horizon, decomposition, lex-max flows, assembly.
QuickestFlow solve_quickest_flow(const Network& net, const SupplyFunction& w, const SolveOptions& options = {});

}  // namespace evac
