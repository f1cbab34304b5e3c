#include "evac/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace evac {

Rational rational_from_json(const Json& value) {
  try {
    if (value.is_number_integer()) return parse_rational(value.dump());
    if (value.is_number_float()) return parse_rational(value.dump());
    if (value.is_string()) return parse_rational(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InvalidInstance("bad number " + value.dump() + ": " + e.what());
  }
  throw InvalidInstance("expected a number, got " + value.dump());
}

Json rational_to_json(const Rational& value) {
  if (is_integral(value)) {
    Integer n = numerator_of(value);
    if (abs(n) < (Integer(1) << 62)) return Json(static_cast<long long>(n));
  }
  return Json(to_string(value));
}

namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InvalidInstance(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

class NodeLookup {
 public:
  NodeLookup(int n, const std::vector<std::string>& names) : n_(n) {
    for (std::size_t i = 0; i < names.size(); ++i) by_name_.emplace(names[i], static_cast<NodeId>(i));
  }

  NodeId operator()(const Json& ref) const {
    if (ref.is_number_integer()) return checked(ref.get<long long>(), ref.dump());
    if (ref.is_string()) return (*this)(ref.get<std::string>());
    throw InvalidInstance("bad node reference " + ref.dump());
  }

  NodeId operator()(const std::string& ref) const {
    auto it = by_name_.find(ref);
    if (it != by_name_.end()) return it->second;
    if (!ref.empty() && std::all_of(ref.begin(), ref.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return checked(std::stoll(ref), ref);
    }
    throw InvalidInstance("unknown node \"" + ref + "\"");
  }

 private:
  NodeId checked(long long id, const std::string& text) const {
    if (id < 0 || id >= n_) throw InvalidInstance("node " + text + " out of range");
    return static_cast<NodeId>(id);
  }

  int n_;
  std::map<std::string, NodeId> by_name_;
};

}  // namespace

Instance instance_from_json(const Json& doc) {
  const Json& nodes = field(doc, "nodes");
  if (!nodes.is_number_integer() || nodes.get<long long>() < 1) throw InvalidInstance("\"nodes\" must be a positive count");
  const int n = static_cast<int>(nodes.get<long long>());

  std::vector<std::string> names;
  if (doc.contains("names")) {
    for (const Json& name : doc.at("names")) {
      if (!name.is_string()) throw InvalidInstance("names must be strings");
      names.push_back(name.get<std::string>());
    }
    if (static_cast<int>(names.size()) != n) throw InvalidInstance("names must list one entry per node");
  }
  NodeLookup node(n, names);

  std::vector<Edge> edges;
  for (const Json& e : field(doc, "edges")) {
    Edge edge;
    if (e.is_array()) {
      if (e.size() < 3 || e.size() > 4) throw InvalidInstance("edge must be [tail, head, transit(, capacity)]");
      edge.tail = node(e[0]);
      edge.head = node(e[1]);
      edge.transit = rational_from_json(e[2]);
      if (e.size() == 4) edge.capacity = rational_from_json(e[3]);
    } else if (e.is_object()) {
      edge.tail = node(field(e, "tail"));
      edge.head = node(field(e, "head"));
      edge.transit = rational_from_json(field(e, "transit"));
      if (e.contains("capacity")) edge.capacity = rational_from_json(e.at("capacity"));
    } else {
      throw InvalidInstance("bad edge " + e.dump());
    }
    edges.push_back(std::move(edge));
  }

  std::vector<NodeId> sources;
  for (const Json& s : field(doc, "sources")) sources.push_back(node(s));

  const Json& sink_ref = field(doc, "sink");
  NodeId sink;
  if (sink_ref.is_array()) {
    if (sink_ref.empty()) throw InvalidInstance("no sink");
    if (sink_ref.size() != 1) throw InvalidInstance("multiple sinks");
    sink = node(sink_ref[0]);
  } else {
    sink = node(sink_ref);
  }

  std::vector<Rational> supply(static_cast<std::size_t>(n));
  const Json& w = field(doc, "supply");
  if (w.is_array()) {
    if (static_cast<int>(w.size()) != n) throw InvalidInstance("supply must list one value per node");
    for (int v = 0; v < n; ++v) supply[static_cast<std::size_t>(v)] = rational_from_json(w[static_cast<std::size_t>(v)]);
  } else if (w.is_object()) {
    for (const auto& [key, value] : w.items()) supply[static_cast<std::size_t>(node(key))] = rational_from_json(value);
  } else {
    throw InvalidInstance("supply must be an object or an array");
  }

  Instance out;
  out.net = std::make_shared<const Network>(n, std::move(edges), rational_from_json(field(doc, "capacity")),
                                            std::move(sources), sink, std::move(names));
  out.supply = SupplyFunction(std::move(supply));
  return out;
}

Json instance_to_json(const Network& net, const SupplyFunction& w) {
  Json doc;
  doc["nodes"] = net.num_nodes();
  doc["names"] = net.names();
  Json edges = Json::array();
  for (const Edge& e : net.edges()) {
    Json row = Json::array({e.tail, e.head, rational_to_json(e.transit)});
    if (e.capacity) row.push_back(rational_to_json(*e.capacity));
    edges.push_back(std::move(row));
  }
  doc["edges"] = std::move(edges);
  doc["capacity"] = rational_to_json(net.capacity());
  doc["sources"] = net.declared_sources();
  doc["sink"] = net.sink();
  Json supply = Json::object();
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    if (w[v] != 0) supply[std::to_string(v)] = rational_to_json(w[v]);
  }
  doc["supply"] = std::move(supply);
  return doc;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInstance(path + ": " + e.what());
  }
}

Instance read_instance(const std::string& path) {
  try {
    return instance_from_json(read_json(path));
  } catch (const Json::exception& e) {
    throw InvalidInstance(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << '\n';
}

Json flow_to_json(const TimeExpandedFlow& flow) {
  const TimeExpandedNet& grid = flow.grid;
  const Network& net = *grid.net;
  Json records = Json::array();
  for (int j = 0; j < grid.slots; ++j) {
    for (EdgeId e = 0; e < net.num_edges(); ++e) {
      const Rational& a = flow.amount(e, j);
      if (a == 0) continue;
      Json r;
      r["edge"] = e;
      r["tail"] = net.edge(e).tail;
      r["head"] = net.edge(e).head;
      r["time"] = to_string(Rational(j) * grid.step);
      r["amount"] = to_string(a);
      records.push_back(std::move(r));
    }
  }
  Json doc;
  doc["horizon"] = to_string(grid.horizon);
  doc["step"] = to_string(grid.step);
  doc["records"] = std::move(records);
  return doc;
}

TimeExpandedFlow flow_from_json(const Network& net, const Json& doc) {
  try {
    TimeExpandedFlow flow(build_time_expanded(net, rational_from_json(field(doc, "horizon")),
                                              rational_from_json(field(doc, "step"))));
    for (const Json& r : field(doc, "records")) {
      const Json& edge_ref = field(r, "edge");
      if (!edge_ref.is_number_integer() || edge_ref.get<long long>() < 0 ||
          edge_ref.get<long long>() >= net.num_edges()) {
        throw InvalidInstance("flow record has bad edge " + edge_ref.dump());
      }
      EdgeId e = static_cast<EdgeId>(edge_ref.get<long long>());
      if ((r.contains("tail") && r.at("tail") != net.edge(e).tail) ||
          (r.contains("head") && r.at("head") != net.edge(e).head)) {
        throw InvalidInstance("flow record endpoints do not match edge " + std::to_string(e));
      }
      Rational slot = rational_from_json(field(r, "time")) / flow.grid.step;
      if (!is_integral(slot) || slot < 0 || slot >= flow.grid.slots) {
        throw InvalidInstance("flow record time " + r.at("time").dump() + " is not a slot start of the grid");
      }
      Rational& a = flow.amount(e, static_cast<int>(to_int64(slot)));
      if (a != 0) throw InvalidInstance("duplicate flow record for edge " + std::to_string(e));
      a = rational_from_json(field(r, "amount"));
    }
    return flow;
  } catch (const GridError& e) {
    throw InvalidInstance(std::string("flow grid: ") + e.what());
  } catch (const Json::exception& e) {
    throw InvalidInstance(std::string("flow file: ") + e.what());
  }
}

}  // namespace evac
