#include "qdp/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "qdp/errors.hpp"

namespace qdp {

namespace {

using json = nlohmann::json;

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    std::size_t idx = std::min(byte == 0 ? std::size_t{0} : byte - 1, text.size());
    int line = 1, col = 1;
    for (std::size_t k = 0; k < idx; ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte);
        throw ParseError(e.what(), line, col);
    }
}

Rat parse_length(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_string()) {
        auto r = rat_parse(v.get<std::string>());
        if (r) return *r;
    }
    throw ParseError(where + ": expected a rational \"p/q\" or an integer");
}

const json& member(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing \"" + key + "\"");
    return *it;
}

// Tokens of one edge-list line with their 1-based starting columns;
// everything from '#' on is a comment.
std::vector<std::pair<std::string, int>> tokenize(const std::string& line) {
    std::vector<std::pair<std::string, int>> out;
    std::size_t i = 0;
    while (i < line.size() && line[i] != '#') {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != '#')
            ++i;
        out.emplace_back(line.substr(start, i - start), static_cast<int>(start) + 1);
    }
    return out;
}

GraphFile finish_graph(std::vector<VertexData> verts, std::vector<EdgeData> edges,
                       std::map<std::string, Rat> lengths, bool has_lengths) {
    GraphFile out;
    try {
        out.graph = Graph(std::move(verts), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    out.lengths = std::move(lengths);
    out.has_lengths = has_lengths;
    return out;
}

json divisor_json(const Divisor& d) {
    json out = json::object();
    for (const auto& [v, k] : d.values()) out[v] = k;
    return out;
}

json element_json(const PseudoDivisor& pd) {
    return json{{"edges", pd.edges}, {"divisor", divisor_json(pd.divisor)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

MetricGraph GraphFile::metric() const {
    if (!has_lengths)
        throw std::invalid_argument("graph file carries no edge lengths");
    return MetricGraph{graph, lengths};
}

GraphFile parse_graph_json(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw ParseError("graph file: expected a JSON object");

    std::vector<VertexData> verts;
    const json& jv = member(j, "vertices", "graph file");
    if (!jv.is_array()) throw ParseError("graph file: \"vertices\" must be an array");
    for (const auto& v : jv) {
        if (!v.is_object() || !v.contains("id") || !v["id"].is_string())
            throw ParseError("graph file: every vertex needs a string \"id\"");
        int weight = 0;
        if (v.contains("weight")) {
            if (!v["weight"].is_number_integer())
                throw ParseError("graph file: vertex \"weight\" must be an integer");
            weight = v["weight"].get<int>();
        }
        verts.push_back({v["id"].get<std::string>(), weight});
    }

    std::vector<EdgeData> edges;
    std::map<std::string, Rat> lengths;
    int with_length = 0;
    const json& je = member(j, "edges", "graph file");
    if (!je.is_array()) throw ParseError("graph file: \"edges\" must be an array");
    for (const auto& e : je) {
        if (!e.is_object() || !e.contains("id") || !e["id"].is_string())
            throw ParseError("graph file: every edge needs a string \"id\"");
        const std::string id = e["id"].get<std::string>();
        const json& ends = member(e, "ends", "edge '" + id + "'");
        if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() ||
            !ends[1].is_string())
            throw ParseError("edge '" + id + "': \"ends\" must be two vertex ids");
        edges.push_back({id, {ends[0].get<std::string>(), ends[1].get<std::string>()}});
        if (e.contains("length")) {
            lengths[id] = parse_length(e["length"], "edge '" + id + "'");
            ++with_length;
        }
    }
    if (with_length != 0 && with_length != static_cast<int>(edges.size()))
        throw ParseError("graph file: either every edge carries a length or none does");
    return finish_graph(std::move(verts), std::move(edges), std::move(lengths),
                        with_length != 0 && !edges.empty());
}

GraphFile parse_graph_edge_list(const std::string& text) {
    std::vector<VertexData> verts;
    std::vector<EdgeData> edges;
    std::map<std::string, std::pair<int, int>> seen;    // edge id -> line/col
    std::map<std::string, bool> known_vertex;

    auto touch_vertex = [&](const std::string& id) {
        if (!known_vertex.count(id)) {
            known_vertex[id] = true;
            verts.push_back({id, 0});
        }
    };

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() < 2 || tokens.size() > 3)
            throw ParseError("expected 'u v [edge-id]'", lineno, tokens[0].second);
        std::string id;
        int idcol = tokens[0].second;
        if (tokens.size() == 3) {
            id = tokens[2].first;
            idcol = tokens[2].second;
        } else {
            id = "e" + std::to_string(edges.size() + 1);
        }
        if (seen.count(id))
            throw ParseError("duplicate edge id '" + id + "'", lineno, idcol);
        seen[id] = {lineno, idcol};
        touch_vertex(tokens[0].first);
        touch_vertex(tokens[1].first);
        edges.push_back({id, {tokens[0].first, tokens[1].first}});
    }
    if (verts.empty()) throw ParseError("edge list is empty", 1, 1);
    return finish_graph(std::move(verts), std::move(edges), {}, false);
}

GraphFile parse_graph_text(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        if (c == '{') return parse_graph_json(text);
        break;
    }
    return parse_graph_edge_list(text);
}

GraphFile load_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph_text(buf.str());
}

Polarization parse_polarization_json(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw ParseError("polarization file: expected a JSON object");
    Polarization mu;
    for (const auto& [key, val] : j.items())
        mu.values[key] = parse_length(val, "polarization of '" + key + "'");
    return mu;
}

Polarization load_polarization_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_polarization_json(buf.str());
}

std::string graph_to_json(const Graph& g) {
    json verts = json::array(), edges = json::array();
    for (const auto& v : g.vertices()) verts.push_back({{"id", v.id}, {"weight", v.weight}});
    for (const auto& e : g.edges())
        edges.push_back({{"id", e.id}, {"ends", {e.ends[0], e.ends[1]}}});
    return dump(json{{"vertices", verts}, {"edges", edges}});
}

std::string metric_graph_to_json(const MetricGraph& x) {
    json verts = json::array(), edges = json::array();
    for (const auto& v : x.graph.vertices())
        verts.push_back({{"id", v.id}, {"weight", v.weight}});
    for (const auto& e : x.graph.edges())
        edges.push_back({{"id", e.id},
                         {"ends", {e.ends[0], e.ends[1]}},
                         {"length", rat_format(x.lengths.at(e.id))}});
    return dump(json{{"vertices", verts}, {"edges", edges}});
}

std::string polarization_to_json(const Polarization& mu) {
    json out = json::object();
    for (const auto& [v, r] : mu.values) out[v] = rat_format(r);
    return dump(out);
}

std::string pseudo_divisor_to_json(const PseudoDivisor& pd) { return dump(element_json(pd)); }

PseudoDivisor parse_pseudo_divisor_json(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw ParseError("pseudo-divisor: expected a JSON object");
    const json& je = member(j, "edges", "pseudo-divisor");
    if (!je.is_array()) throw ParseError("pseudo-divisor: \"edges\" must be an array");
    std::vector<std::string> edges;
    for (const auto& e : je) {
        if (!e.is_string()) throw ParseError("pseudo-divisor: edge ids must be strings");
        edges.push_back(e.get<std::string>());
    }
    const json& jd = member(j, "divisor", "pseudo-divisor");
    if (!jd.is_object()) throw ParseError("pseudo-divisor: \"divisor\" must be an object");
    Divisor d;
    for (const auto& [key, val] : jd.items()) {
        if (!val.is_number_integer())
            throw ParseError("pseudo-divisor: divisor values must be integers");
        d.set(key, val.get<int>());
    }
    try {
        return PseudoDivisor(std::move(edges), std::move(d));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string poset_to_json(const QDPoset& p) {
    json elements = json::array(), covers = json::array();
    for (const auto& el : p.elements()) elements.push_back(element_json(el));
    for (const auto& c : p.covers())
        covers.push_back(
            json::array({c.parent, c.child, json{{"edge", c.edge}, {"to", c.to_vertex}}}));
    return dump(
        json{{"elements", elements}, {"covers", covers}, {"basepoint", p.basepoint()}});
}

std::string complex_to_json(const JacobianComplex& j) {
    json cells = json::array(), attachments = json::array();
    for (const auto& c : j.cells) {
        json sides = json::object();
        for (const auto& [e, len] : c.sides) sides[e] = rat_format(len);
        cells.push_back({{"element", c.element},
                         {"dim", c.dim},
                         {"sides", sides},
                         {"volume", rat_format(c.volume)}});
    }
    for (const auto& a : j.attachments)
        attachments.push_back(json::array(
            {a.parent, a.child,
             json{{"edge", a.edge}, {"side", a.side == 0 ? "0" : "1"}}}));
    return dump(json{{"cells", cells}, {"attachments", attachments}});
}

std::string torelli_verdict_to_json(const TorelliVerdict& v) {
    return dump(json{{"poset_isomorphic", v.poset_isomorphic},
                     {"components_match", v.components_match},
                     {"agree", v.agree},
                     {"witness", v.witness}});
}

std::string tropical_verdict_to_json(const TropicalVerdict& v) {
    return dump(json{{"complexes_isomorphic", v.complexes_isomorphic},
                     {"curves_match", v.curves_match},
                     {"agree", v.agree},
                     {"witness", v.witness}});
}

std::string falsifier_to_json(const FalsifierError& e) {
    return dump(json{{"falsifier", e.statement}, {"instance", e.instance}});
}

bool json_equal(const std::string& a, const std::string& b) {
    return parse_json(a) == parse_json(b);
}

}  // namespace qdp
