#pragma once

#include <map>
#include <string>

#include "qdp/divisor.hpp"
#include "qdp/errors.hpp"
#include "qdp/graph.hpp"
#include "qdp/qd_poset.hpp"
#include "qdp/torelli.hpp"
#include "qdp/tropical.hpp"

namespace qdp {

// File formats.  Graphs come in two shapes: JSON
//
//   {"vertices": [{"id": "s", "weight": 0}, ...],
//    "edges": [{"id": "e1", "ends": ["s", "t"], "length": "3/2"}, ...]}
//
// with "weight" defaulting to 0 and the optional "length" (a rational
// "p/q" string or an integer) present either on every edge or on none; and
// a plain edge list, one edge per line,
//
//   u v [edge-id]     # anything after '#' is a comment
//
// where vertices appear implicitly with weight 0 and omitted edge ids are
// filled in as e1, e2, ... in line order.  All parse failures raise
// ParseError carrying a 1-based line/column when one is known.

struct GraphFile {
    Graph graph;
    std::map<std::string, Rat> lengths;
    bool has_lengths = false;

    // The metric graph, when lengths were present (std::invalid_argument
    // otherwise).
    MetricGraph metric() const;
};

GraphFile parse_graph_json(const std::string& text);
GraphFile parse_graph_edge_list(const std::string& text);
// Sniffs the format: first non-space byte '{' means JSON.
GraphFile parse_graph_text(const std::string& text);
GraphFile load_graph_file(const std::string& path);

// Polarization JSON: an object {vertex-id: "p/q", ...}.
Polarization parse_polarization_json(const std::string& text);
Polarization load_polarization_file(const std::string& path);

// ---- writers (deterministic: object keys sorted, arrays in input order) ----

std::string graph_to_json(const Graph& g);
std::string metric_graph_to_json(const MetricGraph& x);
std::string polarization_to_json(const Polarization& mu);

// {"edges": [...], "divisor": {vertex-or-exceptional-id: int, ...}}
std::string pseudo_divisor_to_json(const PseudoDivisor& pd);
PseudoDivisor parse_pseudo_divisor_json(const std::string& text);

// {"elements": [pseudo-divisors], "covers": [[parent, child,
//  {"edge": id, "to": vertex}], ...], "basepoint": id}
std::string poset_to_json(const QDPoset& p);

// {"cells": [{"element": i, "dim": d, "sides": {edge: "p/q"},
//  "volume": "p/q"}, ...], "attachments": [[parent, child,
//  {"edge": id, "side": "0"|"1"}], ...]}
std::string complex_to_json(const JacobianComplex& j);

std::string torelli_verdict_to_json(const TorelliVerdict& v);
std::string tropical_verdict_to_json(const TropicalVerdict& v);
std::string falsifier_to_json(const FalsifierError& e);

// Structural equality of two JSON documents (object key order ignored).
// ParseError when either input is not JSON.
bool json_equal(const std::string& a, const std::string& b);

}  // namespace qdp
