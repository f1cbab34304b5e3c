// Acceptance runner. Usage: acceptance <evac-cli> <data-dir> <work-dir>
// Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

#include "evac/grid.hpp"
#include "evac/instance_io.hpp"
#include "evac/oracle.hpp"
#include "evac/polytope.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace evac;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> problems;
  std::string summary;

  void fail(const std::string& why) {
    pass = false;
    if (problems.size() < 10) problems.push_back(why);
  }
  void expect(bool condition, const std::string& why) {
    if (!condition) fail(why);
  }
};

constexpr int kRandomInstances = 200;
constexpr std::uint64_t kRandomSeed = 20240901;

const std::vector<Instance>& corpus() {
  static const std::vector<Instance> instances = support::random_corpus(kRandomInstances, kRandomSeed);
  return instances;
}

std::string label(int index) { return "instance " + std::to_string(index); }

// 1 -------------------------------------------------------------------------
Outcome reference_instance() {
  Outcome out;
  auto start = Clock::now();
  Instance d1 = small_reference_instance();
  QuickestFlow q = solve_quickest_flow(*d1.net, d1.supply);
  out.expect(q.horizon.t_star == Rational(9, 2), "T* = " + to_string(q.horizon.t_star));
  out.expect(q.horizon.family.nonempty_subsets() == std::vector<NodeSet>{{1}, {0}, {0, 1}}, "wrong family");
  const auto& terms = q.decomposition.terms;
  bool shape = terms.size() == 2 && terms[0].lambda == Rational(1, 5) && terms[1].lambda == Rational(4, 5) &&
               terms[0].vertex == GroundVector{4, 1, -5} &&
               terms[1].vertex == GroundVector{Rational(3, 2), Rational(7, 2), -5};
  out.expect(shape, "decomposition differs");
  out.expect(q.flow && verify_dynamic_flow(*q.flow, d1.supply, q.horizon.t_star).ok(), "flow fails verification");
  double elapsed = seconds_since(start);
  out.expect(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  out.summary = "T* = 9/2, lambda = (1/5, 4/5), " + std::to_string(elapsed) + " s";
  return out;
}

// 2 -------------------------------------------------------------------------
Outcome horizon_equivalence() {
  Outcome out;
  auto start = Clock::now();
  int i = 0;
  for (const Instance& inst : corpus()) {
    const Network& net = *inst.net;
    HorizonResult h = min_time_horizon(net, inst.supply);
    Rational oracle = oracle_t_star(net, inst.supply);
    out.expect(h.t_star == oracle, label(i) + ": solver " + to_string(h.t_star) + " oracle " + to_string(oracle));
    Rational step = default_step(net, h.t_star);
    out.expect(oracle_feasible(net, inst.supply, h.t_star, step), label(i) + ": infeasible at T*");
    out.expect(!oracle_feasible(net, inst.supply, h.t_star - step, step), label(i) + ": feasible before T*");
    ++i;
  }
  double elapsed = seconds_since(start);
  out.expect(elapsed < 300, "took " + std::to_string(elapsed) + " s");
  out.summary = std::to_string(i) + " instances, " + std::to_string(elapsed) + " s";
  return out;
}

// 3 -------------------------------------------------------------------------
Outcome outflow_agreement() {
  Outcome out;
  long comparisons = 0;
  int i = 0;
  for (const Instance& inst : corpus()) {
    const Network& net = *inst.net;
    std::vector<Rational> thetas = all_subset_thetas(net, inst.supply);
    Rational max_theta = *std::max_element(thetas.begin(), thetas.end());
    Integer top = numerator_of(2 * max_theta) / denominator_of(2 * max_theta);
    for (const NodeSet& a : support::all_subsets(net.sources())) {
      SsspResult r = successive_shortest_paths(net, a);
      std::vector<Rational> profile = oracle_outflow_profile(net, a, Rational(top), 1);
      for (std::size_t T = 0; T < profile.size(); ++T) {
        Rational formula = max_outflow(r, net.capacity(), Rational(static_cast<long long>(T)));
        out.expect(formula == profile[T], label(i) + ": o^" + std::to_string(T) + " differs");
        ++comparisons;
      }
    }
    ++i;
  }
  out.summary = std::to_string(comparisons) + " (subset, T) pairs";
  return out;
}

// 4 -------------------------------------------------------------------------
Outcome maximality() {
  Outcome out;
  long tuples = 0;
  int instances = 0;
  int i = -1;
  for (const Instance& inst : corpus()) {
    ++i;
    const Network& net = *inst.net;
    if (net.num_sources() > 5) continue;
    ++instances;
    support::SubsetScan scan = support::scan_subsets(net, inst.supply);
    for (const AdmitTuple& t : support::all_tuples(net.sources(), net.sink_in_degree())) {
      ++tuples;
      NodeSet u;
      auto it = scan.admitting.find(t);
      if (it != scan.admitting.end()) {
        for (const NodeSet& a : it->second) u = set_union(u, a);
      }
      AHatEntry e = compute_a_hat(net, inst.supply, t);
      out.expect(e.subset == u, label(i) + ": maximal subset differs");
      out.expect(!e.warning, label(i) + ": " + e.warning.value_or(""));
      if (u.empty()) continue;
      for (NodeId v : net.sources()) {
        if (contains(u, v)) continue;
        out.expect(successive_shortest_paths(net, set_union(u, {v})).origins() != t,
                   label(i) + ": adding " + net.name(v) + " keeps admission");
      }
    }
  }
  out.summary = std::to_string(tuples) + " tuples on " + std::to_string(instances) + " instances with k <= 5";
  return out;
}

// 5 -------------------------------------------------------------------------
Outcome decomposition() {
  Outcome out;
  int i = 0, max_terms = 0, off_family = 0;
  for (const Instance& inst : corpus()) {
    const Network& net = *inst.net;
    QuickestFlow q;
    try {
      q = solve_quickest_flow(net, inst.supply);
    } catch (const std::exception& e) {
      out.fail(label(i++) + ": " + e.what());
      continue;
    }
    const ConvexDecomposition& dec = q.decomposition;
    out.expect(dec.lambda_sum() == 1, label(i) + ": lambda sum");
    out.expect(dec.combination() == inst.supply.values(), label(i) + ": combination differs from w");
    out.expect(static_cast<int>(dec.terms.size()) <= net.num_sources(), label(i) + ": too many terms");
    max_terms = std::max(max_terms, static_cast<int>(dec.terms.size()));
    off_family += dec.off_family_chain_sets;
    OutflowFunction o(net, q.horizon.t_star, &q.horizon.family);
    const auto family = q.horizon.family.nonempty_subsets();
    for (const auto& t : dec.terms) {
      out.expect(t.lambda > 0, label(i) + ": nonpositive lambda");
      for (const NodeSet& a : family) out.expect(sum_over(t.vertex, a) <= o(a), label(i) + ": vertex above o");
      for (const NodeSet& c : dec.chain) {
        bool prefix = true;
        NodeSet seen;
        for (std::size_t l = 0; l < c.size(); ++l) seen.push_back(t.order[l]);
        prefix = make_node_set(seen) == c;
        if (prefix) out.expect(sum_over(t.vertex, c) == o(c), label(i) + ": chain prefix not tight");
      }
    }
    out.expect(q.flow.has_value(), label(i) + ": no flow");
    if (q.flow) {
      FlowCheck check = verify_dynamic_flow(*q.flow, inst.supply, q.horizon.t_star);
      out.expect(check.ok(), label(i) + ": " + check.message);
    }
    ++i;
  }
  out.summary = std::to_string(i) + " instances, at most " + std::to_string(max_terms) + " terms, " +
                std::to_string(off_family) + " chain sets outside the family";
  return out;
}

// 6 -------------------------------------------------------------------------
Outcome grid_equivalence() {
  Outcome out;
  int grids = 0;
  for (int side = 2; side <= 5; ++side) {
    for (int r = 0; r < side; ++r) {
      for (int c = 0; c < side; ++c) {
        GridSpec spec;
        spec.side = side;
        spec.sink_row = r;
        spec.sink_col = c;
        GridInstance g = gen_grid(spec);
        const std::string where = std::to_string(side) + "x" + std::to_string(side) + " sink " + std::to_string(r) +
                                  "," + std::to_string(c);
        GridSolveResult gs = grid_solve(g);
        HorizonResult general = min_time_horizon(*g.net, g.supply);
        out.expect(gs.solution.horizon.t_star == general.t_star, where + ": grid and general T* differ");
        out.expect(gs.solution.decomposition.combination() == g.supply.values(), where + ": decomposition");
        if (side == 2) {
          out.expect(general.t_star == oracle_t_star(*g.net, g.supply), where + ": oracle T* differs");
        }
        if (side <= 4) {
          for (const auto& [tuple, index] : general.family.admitted()) {
            out.expect(gs.candidates.contains(tuple), where + ": admitted tuple missing from the filter");
          }
        }
        ++grids;
      }
    }
  }
  out.summary = std::to_string(grids) + " grids";
  return out;
}

// 7 -------------------------------------------------------------------------
Outcome scaling(const std::string& cli, const std::string& work) {
  Outcome out;
  std::vector<double> xs, ys;
  std::ostringstream sizes;
  for (int side = 4; side <= 12; ++side) {
    GridSpec spec;
    spec.side = side;
    spec.sink_row = spec.sink_col = (side - 1) / 2;
    GridInstance g = gen_grid(spec);
    std::uint64_t count = candidate_set(*g.net, classify_areas(*g.net), spec.transit).size();
    xs.push_back(std::log(static_cast<double>(g.net->num_nodes())));
    ys.push_back(std::log(static_cast<double>(count)));
    sizes << (side == 4 ? "" : ",") << count;
  }
  double mx = 0, my = 0, sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
  double slope = sxy / sxx;
  out.expect(slope <= 2.2, "slope " + std::to_string(slope));

  int i = 0;
  for (const Instance& inst : corpus()) {
    const Network& net = *inst.net;
    AHatFamily family = enumerate_a_hat(net, inst.supply);
    double bound = 2 * std::pow(net.num_sources(), net.sink_in_degree());
    out.expect(family.num_nonempty() <= bound, label(i) + ": family too large");
    ++i;
  }

  auto start = Clock::now();
  std::string command = "\"" + cli + "\" bench --sides 12 > \"" + work + "/bench12.txt\" 2>&1";
  int status = std::system(command.c_str());
  double elapsed = seconds_since(start);
  out.expect(status == 0, "bench exited with status " + std::to_string(status));
  out.expect(elapsed < 600, "bench took " + std::to_string(elapsed) + " s");

  std::ostringstream s;
  s << "|I| for N=4..12 (center sink): " << sizes.str() << ", slope " << slope << ", bench N=12 " << elapsed << " s";
  out.summary = s.str();
  return out;
}

// 8 -------------------------------------------------------------------------
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const std::string& cli, const std::string& data, const std::string& work) {
  Outcome out;
  std::vector<std::string> inputs{data + "/d1.json"};
  for (int i : {3, 17, 101}) {
    const Instance& inst = corpus()[static_cast<std::size_t>(i)];
    std::string path = work + "/random" + std::to_string(i) + ".json";
    write_json(path, instance_to_json(*inst.net, inst.supply));
    inputs.push_back(path);
  }
  std::string grid_path = work + "/grid5.json";
  std::system(("\"" + cli + "\" gen-grid --side 5 --sink 2,1 -o \"" + grid_path + "\"").c_str());
  inputs.push_back(grid_path);

  int runs = 0;
  for (const std::string& input : inputs) {
    std::string reference;
    std::string reference_flow;
    for (const char* jobs : {"1", "1", "3"}) {
      std::string stem = work + "/det" + std::to_string(runs++);
      std::string extra = input == grid_path ? " --grid" : "";
      std::string command = "\"" + cli + "\" solve \"" + input + "\" --emit-trace" + extra + " --jobs " + jobs +
                            " -o \"" + stem + ".flow.json\" > \"" + stem + ".out\" 2>&1";
      int status = std::system(command.c_str());
      out.expect(status == 0, input + ": solve exited with " + std::to_string(status));
      std::string text = slurp(stem + ".out") + slurp(stem + ".flow.json");
      std::string family_cmd = "\"" + cli + "\" horizon \"" + input + "\" --family --jobs " + jobs + " > \"" + stem +
                               ".family\" 2>&1";
      std::system(family_cmd.c_str());
      text += slurp(stem + ".family");
      if (reference.empty()) {
        reference = text;
      } else {
        out.expect(text == reference, input + ": output differs with --jobs " + jobs);
      }
    }
  }
  out.summary = std::to_string(runs) + " runs over " + std::to_string(inputs.size()) + " inputs";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 4) {
    std::cerr << "usage: acceptance <evac-cli> <data-dir> <work-dir> [--known-red N]...\n";
    return 2;
  }
  const std::string cli = argv[1], data = argv[2], work = argv[3];
  // Criteria listed here still print FAIL but do not set the exit status.
  std::set<std::string> known_red;
  for (int i = 4; i + 1 < argc; i += 2) {
    if (std::string(argv[i]) == "--known-red") known_red.insert(argv[i + 1]);
  }

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 reference instance end-to-end", reference_instance},
      {"2 horizon equals brute-force oracle", horizon_equivalence},
      {"3 outflow formula equals time-expanded max-flow", outflow_agreement},
      {"4 maximal admitting subsets", maximality},
      {"5 decomposition invariants", decomposition},
      {"6 grid filter equivalence and completeness", grid_equivalence},
      {"7 scaling sanity", [&] { return scaling(cli, work); }},
      {"8 deterministic output", [&] { return determinism(cli, data, work); }},
  };

  int failures = 0;
  for (auto& [name, run] : criteria) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << "criterion " << name << ": " << o.summary << " ["
              << seconds_since(start) << " s]\n";
    for (const std::string& p : o.problems) std::cout << "    " << p << "\n";
    const std::string number = name.substr(0, name.find(' '));
    if (!o.pass && known_red.count(number)) {
      std::cout << "    known red, excluded from the exit status\n";
    } else if (!o.pass) {
      ++failures;
    }
    std::cout.flush();
  }
  return failures == 0 ? 0 : 1;
}
