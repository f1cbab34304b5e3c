// evac: command-line front end for the evacuation solver.

#include "evac/generators.hpp"
#include "evac/grid.hpp"
#include "evac/horizon.hpp"
#include "evac/instance_io.hpp"
#include "evac/oracle.hpp"
#include "evac/polytope.hpp"
#include "evac/sssp.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace evac;

namespace {

enum ExitCode { kOk = 0, kFailed = 1, kBadInput = 2, kUnreachableSupply = 3, kMismatch = 4 };

int default_jobs() {
  if (const char* env = std::getenv("EVAC_JOBS")) {
    try {
      int jobs = std::stoi(env);
      if (jobs > 0) return jobs;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::string set_text(const Network& net, const NodeSet& set) {
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i) s += (i ? "," : "") + net.name(set[i]);
  return s + "}";
}

std::string tuple_text(const Network& net, const std::vector<NodeId>& tuple) {
  std::string s = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) s += (i ? "," : "") + net.name(tuple[i]);
  return s + ")";
}

std::string point_text(const Network& net, const GroundVector& x) {
  std::string s;
  NodeSet ground = net.sources();
  ground.push_back(net.sink());
  for (NodeId v : make_node_set(ground)) {
    if (!s.empty()) s += ' ';
    s += net.name(v) + ":" + to_string(x[static_cast<std::size_t>(v)]);
  }
  return s;
}

NodeSet parse_set(const Network& net, const std::string& text) {
  std::map<std::string, NodeId> by_name;
  for (NodeId v = 0; v < net.num_nodes(); ++v) by_name.emplace(net.name(v), v);
  std::vector<NodeId> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto it = by_name.find(item);
    if (it == by_name.end()) throw InvalidInstance("unknown node \"" + item + "\"");
    out.push_back(it->second);
  }
  return make_node_set(out);
}

Rational parse_number(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw InvalidInstance("bad number \"" + text + "\"");
  }
}

void print_horizon(const Network& net, const HorizonResult& h) {
  std::cout << "T* = " << to_string(h.t_star) << ", A* = " << set_text(net, h.a_star) << "\n";
  std::cout << "family: " << h.family.num_nonempty() << " subsets, " << h.family.tuples_examined
            << " tuples covered, " << h.family.search_states << " states expanded\n";
  for (const std::string& w : h.family.warnings) std::cout << "warning: " << w << "\n";
}

void print_family(const Network& net, const AHatFamily& family) {
  for (std::size_t i = 1; i < family.entries().size(); ++i) {
    const AHatEntry& e = family.entries()[i];
    std::cout << "  " << set_text(net, e.subset) << "  theta = " << to_string(e.theta) << "  tuple "
              << tuple_text(net, e.tuple) << "\n";
  }
}

// ---------------------------------------------------------------------------

struct Common {
  std::string input;
  int jobs = default_jobs();
};

int run_horizon(const Common& c, bool show_family) {
  Instance inst = read_instance(c.input);
  HorizonResult h = min_time_horizon(*inst.net, inst.supply, {c.jobs});
  print_horizon(*inst.net, h);
  if (show_family) print_family(*inst.net, h.family);
  return kOk;
}

int run_theta(const Common& c, const std::string& set) {
  Instance inst = read_instance(c.input);
  const Network& net = *inst.net;
  require_valid(net, inst.supply);
  if (!set.empty()) {
    NodeSet a = parse_set(net, set);
    for (NodeId v : a) {
      if (!net.is_source(v)) throw InvalidInstance("node " + net.name(v) + " is not a source");
    }
    SsspResult sssp = successive_shortest_paths(net, a);
    std::cout << "theta(" << set_text(net, a) << ") = "
              << to_string(min_required_time(sssp, net.capacity(), inst.supply.total(a))) << "\n";
    for (const auto& p : sssp.paths) {
      std::cout << "  path " << describe_path(net, {p.arcs, p.cost, p.origin}) << "  cost " << to_string(p.cost)
                << "\n";
    }
    return kOk;
  }
  HorizonResult h = min_time_horizon(net, inst.supply, {c.jobs});
  print_family(net, h.family);
  return kOk;
}

struct SolveFlags {
  bool grid = false;
  bool cross_check = false;
  bool emit_trace = false;
  std::string output;
  std::string delta;
};

GridInstance grid_from_document(const Json& doc, const Instance& inst) {
  if (!doc.contains("grid")) throw InvalidInstance("--grid needs an instance written by gen-grid");
  const Json& g = doc.at("grid");
  GridSpec spec;
  spec.side = g.at("side").get<int>();
  spec.sink_row = g.at("sink").at(0).get<int>();
  spec.sink_col = g.at("sink").at(1).get<int>();
  spec.transit = rational_from_json(g.at("transit"));
  spec.capacity = rational_from_json(g.at("capacity"));
  spec.supply = rational_from_json(g.at("supply"));
  GridInstance grid = gen_grid(spec);
  if (instance_to_json(*grid.net, grid.supply) != instance_to_json(*inst.net, inst.supply)) {
    throw InvalidInstance("instance does not match its grid description");
  }
  return grid;
}

int run_solve(const Common& c, const SolveFlags& flags) {
  Json doc = read_json(c.input);
  Instance inst = instance_from_json(doc);
  const Network& net = *inst.net;
  const SupplyFunction& w = inst.supply;
  SolveOptions options{c.jobs, true};

  QuickestFlow q;
  std::optional<GridInstance> grid;
  if (flags.grid) {
    grid = grid_from_document(doc, inst);
    std::uint64_t candidates = 0;
    HorizonResult h = grid_horizon(*grid, options, &candidates);
    std::cout << "grid candidates: " << candidates << "\n";
    q = complete_solution(*grid->net, grid->supply, std::move(h), options);
  } else {
    q = solve_quickest_flow(net, w, options);
  }
  const Network& solved = flags.grid ? *grid->net : net;
  print_horizon(solved, q.horizon);

  const ConvexDecomposition& dec = q.decomposition;
  std::cout << "decomposition: " << dec.terms.size() << " terms\n";
  for (const auto& t : dec.terms) {
    std::cout << "  lambda = " << to_string(t.lambda) << "  order " << tuple_text(solved, t.order) << "  vertex "
              << point_text(solved, t.vertex) << "\n";
  }
  std::cout << "chain:";
  for (std::size_t i = 0; i < dec.chain.size(); ++i) std::cout << (i ? " < " : " ") << set_text(solved, dec.chain[i]);
  std::cout << "\n";
  if (flags.emit_trace) {
    for (std::size_t i = 0; i < dec.trace.size(); ++i) {
      const WalkStep& s = dec.trace[i];
      std::cout << "  step " << i + 1 << ": s = " << to_string(s.s) << ", alpha = " << to_string(s.alpha)
                << ", beta = " << to_string(s.beta) << ", gamma = " << to_string(s.gamma) << ", point "
                << point_text(solved, s.point) << ", inserted " << set_text(solved, s.inserted) << "\n";
    }
  }
  for (const std::string& note : q.notes) std::cout << "note: " << note << "\n";

  bool flow_ok = true;
  if (q.flow) {
    FlowCheck check = verify_dynamic_flow(*q.flow, w, q.horizon.t_star);
    flow_ok = check.ok();
    std::cout << "flow: step " << to_string(q.flow->grid.step) << ", verifier "
              << (check.ok() ? "pass" : "fail (" + std::to_string(check.violated) + "): " + check.message) << "\n";
    if (!flags.output.empty()) write_json(flags.output, flow_to_json(*q.flow));
  }

  if (!flags.cross_check) return flow_ok ? kOk : kFailed;

  std::vector<std::string> mismatches;
  if (!flow_ok) mismatches.push_back("assembled flow fails verification");
  if (net.num_sources() <= kOracleMaxSources) {
    try {
      Rational oracle = oracle_t_star(net, w);
      if (oracle != q.horizon.t_star) mismatches.push_back("oracle T* = " + to_string(oracle));
    } catch (const OracleDisagreement& e) {
      mismatches.push_back(e.what());
    }
  } else {
    std::cout << "note: subset oracle skipped for " << net.num_sources() << " sources\n";
  }
  Rational step = flags.delta.empty() ? default_step(net, q.horizon.t_star) : parse_number(flags.delta);
  if (!oracle_feasible(net, w, q.horizon.t_star, step)) mismatches.push_back("oracle finds T* infeasible");
  if (q.horizon.t_star >= step && oracle_feasible(net, w, q.horizon.t_star - step, step)) {
    mismatches.push_back("oracle finds T* - " + to_string(step) + " feasible");
  }
  if (flags.grid) {
    HorizonResult general = min_time_horizon(net, w, {c.jobs});
    if (general.t_star != q.horizon.t_star) mismatches.push_back("general solver T* = " + to_string(general.t_star));
  }
  if (dec.combination() != w.values()) mismatches.push_back("decomposition does not reproduce the supply");
  if (dec.lambda_sum() != 1) mismatches.push_back("coefficients do not sum to 1");
  OutflowFunction o(solved, q.horizon.t_star, &q.horizon.family);
  std::vector<NodeSet> sets = bounding_sets(solved, q.horizon.family);
  for (const auto& t : dec.terms) {
    if (t.lambda <= 0) mismatches.push_back("nonpositive coefficient");
    if (!satisfies_bounds(o, t.vertex, sets)) mismatches.push_back("vertex outside the polytope");
  }
  if (static_cast<int>(dec.terms.size()) > net.num_sources()) mismatches.push_back("more terms than sources");

  if (mismatches.empty()) {
    std::cout << "cross-check: pass\n";
    return kOk;
  }
  for (const std::string& m : mismatches) std::cout << "cross-check mismatch: " << m << "\n";
  return kMismatch;
}

int run_verify(const Common& c, const std::string& flow_path) {
  Instance inst = read_instance(c.input);
  TimeExpandedFlow flow = flow_from_json(*inst.net, read_json(flow_path));
  FlowCheck check = verify_dynamic_flow(flow, inst.supply, flow.grid.horizon);
  if (check.ok()) {
    std::cout << "pass\n";
    return kOk;
  }
  std::cout << "fail: constraint (" << check.violated << "): " << check.message << "\n";
  return kFailed;
}

struct OracleFlags {
  std::string op;
  std::string set;
  std::string horizon;
  std::string delta;
  std::string flow;
};

int run_oracle(const Common& c, const OracleFlags& f) {
  if (f.op == "verify") {
    if (f.flow.empty()) throw InvalidInstance("oracle verify needs a flow file");
    return run_verify(c, f.flow);
  }
  Instance inst = read_instance(c.input);
  const Network& net = *inst.net;
  if (f.op == "tstar") {
    require_valid(net, inst.supply);
    require_reachable_supply(net, inst.supply);
    std::cout << to_string(oracle_t_star(net, inst.supply)) << "\n";
    return kOk;
  }
  if (f.horizon.empty()) throw InvalidInstance("--horizon is required for oracle " + f.op);
  Rational horizon = parse_number(f.horizon);
  Rational step = f.delta.empty() ? default_step(net, horizon) : parse_number(f.delta);
  if (f.op == "otA") {
    NodeSet a = parse_set(net, f.set);
    std::cout << to_string(oracle_max_outflow(net, a, horizon, step)) << "\n";
    return kOk;
  }
  if (f.op == "feasible") {
    std::cout << (oracle_feasible(net, inst.supply, horizon, step) ? "true" : "false") << "\n";
    return kOk;
  }
  throw InvalidInstance("unknown oracle operation \"" + f.op + "\"");
}

struct GridFlags {
  int side = 4;
  std::string sink = "0,0";
  std::string tau = "1";
  std::string cap = "1";
  std::string supply = "1";
  std::string output;
};

GridSpec grid_spec(const GridFlags& g) {
  GridSpec spec;
  spec.side = g.side;
  auto comma = g.sink.find(',');
  if (comma == std::string::npos) throw InvalidInstance("--sink must be r,c");
  try {
    spec.sink_row = std::stoi(g.sink.substr(0, comma));
    spec.sink_col = std::stoi(g.sink.substr(comma + 1));
  } catch (const std::exception&) {
    throw InvalidInstance("--sink must be r,c");
  }
  spec.transit = parse_number(g.tau);
  spec.capacity = parse_number(g.cap);
  spec.supply = parse_number(g.supply);
  return spec;
}

int run_gen_grid(const GridFlags& g) {
  GridSpec spec = grid_spec(g);
  GridInstance grid = gen_grid(spec);
  Json doc = instance_to_json(*grid.net, grid.supply);
  doc["grid"] = {{"side", spec.side},
                 {"sink", {spec.sink_row, spec.sink_col}},
                 {"transit", rational_to_json(spec.transit)},
                 {"capacity", rational_to_json(spec.capacity)},
                 {"supply", rational_to_json(spec.supply)}};
  if (g.output.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_json(g.output, doc);
  }
  return kOk;
}

struct BenchFlags {
  std::vector<int> sides{4, 6, 8, 10, 12};
  std::string sink = "center";
  bool general = false;
};

int run_bench(const Common& c, const BenchFlags& b) {
  std::cout << std::left << std::setw(4) << "N" << std::setw(6) << "n" << std::setw(4) << "d" << std::setw(12)
            << "|I|" << std::setw(8) << "|A^|" << std::setw(12) << "T*" << std::setw(10) << "seconds";
  if (b.general) std::cout << std::setw(12) << "general s";
  std::cout << "\n";
  std::vector<double> xs, ys;
  for (int side : b.sides) {
    GridSpec spec;
    spec.side = side;
    if (b.sink == "center") {
      spec.sink_row = spec.sink_col = (side - 1) / 2;
    } else if (b.sink != "corner") {
      throw InvalidInstance("--sink must be center or corner");
    }
    GridInstance grid = gen_grid(spec);
    auto start = std::chrono::steady_clock::now();
    std::uint64_t candidates = 0;
    HorizonResult h = grid_horizon(grid, {c.jobs, false}, &candidates);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const int n = grid.net->num_nodes();
    std::cout << std::setw(4) << side << std::setw(6) << n << std::setw(4) << grid.net->sink_in_degree()
              << std::setw(12) << candidates << std::setw(8) << h.family.num_nonempty() << std::setw(12)
              << to_string(h.t_star) << std::setw(10) << std::fixed << std::setprecision(3) << seconds;
    if (b.general) {
      start = std::chrono::steady_clock::now();
      HorizonResult g = min_time_horizon(*grid.net, grid.supply, {c.jobs});
      double general = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::cout << std::setw(12) << general;
      if (g.t_star != h.t_star) {
        std::cout << "\nmismatch: general T* = " << to_string(g.t_star) << "\n";
        return kMismatch;
      }
    }
    std::cout << "\n";
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(static_cast<double>(std::max<std::uint64_t>(candidates, 1))));
  }
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / xs.size(), my += ys[i] / xs.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    std::cout << "log-log slope of |I| against n: " << std::setprecision(3) << sxy / sxx << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evacuation planning on dynamic flow networks with a single sink"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("instance", common.input, "instance JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--jobs,-j", common.jobs, "worker threads (default: EVAC_JOBS or 1)")->check(CLI::PositiveNumber);
  };

  bool show_family = false;
  auto* horizon = app.add_subcommand("horizon", "minimum feasible time horizon");
  add_common(horizon);
  horizon->add_flag("--family", show_family, "list every maximal admitting subset");

  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "horizon, convex decomposition and quickest flow");
  add_common(solve);
  solve->add_flag("--grid", solve_flags.grid, "use the grid candidate filter (instance from gen-grid)");
  solve->add_flag("--cross-check", solve_flags.cross_check, "compare against the time-expanded oracle");
  solve->add_flag("--emit-trace", solve_flags.emit_trace, "print every step of the facet walk");
  solve->add_option("--output,-o", solve_flags.output, "write the quickest flow to this file");
  solve->add_option("--delta", solve_flags.delta, "time step for the cross-check");

  std::string theta_set;
  auto* theta = app.add_subcommand("theta", "minimum time for a source subset");
  add_common(theta);
  theta->add_option("--set", theta_set, "comma-separated node names; default lists the whole family");

  OracleFlags oracle_flags;
  auto* oracle = app.add_subcommand("oracle", "time-expanded brute force");
  oracle->add_option("op", oracle_flags.op, "otA | feasible | tstar | verify")
      ->required()
      ->check(CLI::IsMember({"otA", "feasible", "tstar", "verify"}));
  add_common(oracle);
  oracle->add_option("flow", oracle_flags.flow, "flow file (verify)");
  oracle->add_option("--set", oracle_flags.set, "source subset for otA");
  oracle->add_option("--horizon,-T", oracle_flags.horizon, "time horizon");
  oracle->add_option("--delta", oracle_flags.delta, "time step (default: largest step dividing T and all transits)");

  std::string verify_flow;
  auto* verify = app.add_subcommand("verify", "check a flow file against an instance");
  add_common(verify);
  verify->add_option("flow", verify_flow, "flow file")->required()->check(CLI::ExistingFile);

  GridFlags grid_flags;
  auto* gen = app.add_subcommand("gen-grid", "write a bidirected grid instance");
  gen->add_option("--side", grid_flags.side, "grid side N")->required();
  gen->add_option("--sink", grid_flags.sink, "sink position r,c");
  gen->add_option("--tau", grid_flags.tau, "transit time of every edge");
  gen->add_option("--cap", grid_flags.cap, "capacity of every edge");
  gen->add_option("--supply", grid_flags.supply, "supply of every non-sink node");
  gen->add_option("--output,-o", grid_flags.output, "output file (default: stdout)");

  BenchFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "grid scaling table");
  bench->add_option("--sides", bench_flags.sides, "grid sides")->delimiter(',');
  bench->add_option("--sink", bench_flags.sink, "center | corner");
  bench->add_flag("--general", bench_flags.general, "also time the unfiltered enumeration");
  bench->add_option("--jobs,-j", common.jobs, "worker threads")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*horizon) return run_horizon(common, show_family);
    if (*solve) return run_solve(common, solve_flags);
    if (*theta) return run_theta(common, theta_set);
    if (*oracle) return run_oracle(common, oracle_flags);
    if (*verify) return run_verify(common, verify_flow);
    if (*gen) return run_gen_grid(grid_flags);
    if (*bench) return run_bench(common, bench_flags);
  } catch (const UnreachableSupply& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnreachableSupply;
  } catch (const OracleDisagreement& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  } catch (const InvalidInstance& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const GridError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kFailed;
}
