#pragma once

// JSON formats for instances and time-expanded flows.
//
// Instance:
//   {"nodes": 3, "names": ["v1", "v2", "t"],
//    "edges": [[0, 2, 3], [1, 2, 1], [0, 1, "1/2", 2]],   tail, head, transit[, capacity]
//    "capacity": 1, "sources": [0, 1], "sink": 2,
//    "supply": {"0": 2, "1": 3, "2": -5}}
// Node references may be ids or names. Numbers may be JSON numbers, decimal
// strings or "p/q" strings; supply may also be an array with one entry per node.
//
// Flow:
//   {"horizon": "9/2", "step": "1/2",
//    "records": [{"edge": 0, "tail": 0, "head": 2, "time": "0", "amount": "1/2"}, ...]}
// Records list nonzero amounts sorted by (time, edge).

#include "evac/generators.hpp"
#include "evac/oracle.hpp"

#include <json.hpp>

#include <string>

namespace evac {

using Json = nlohmann::ordered_json;

Rational rational_from_json(const Json& value);
/// Integers become JSON numbers, everything else a reduced "p/q" string.
Json rational_to_json(const Rational& value);

Instance instance_from_json(const Json& doc);
Json instance_to_json(const Network& net, const SupplyFunction& w);

Instance read_instance(const std::string& path);
void write_json(const std::string& path, const Json& doc);
Json read_json(const std::string& path);

Json flow_to_json(const TimeExpandedFlow& flow);
/// Throws InvalidInstance when a record does not fit the network or grid.
TimeExpandedFlow flow_from_json(const Network& net, const Json& doc);

}  // namespace evac
