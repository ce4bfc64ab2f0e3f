#include "qdp/tropical.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "qdp/divisor.hpp"
#include "qdp/errors.hpp"

namespace qdp {

namespace {

std::string far_end(const EdgeData& e, const std::string& v) {
    return e.ends[0] == v ? e.ends[1] : e.ends[0];
}

void require_pure(const Graph& g, const std::string& who) {
    for (const auto& v : g.vertices())
        if (v.weight != 0)
            throw std::invalid_argument(who + ": graph must be pure, vertex '" + v.id +
                                        "' has weight " + std::to_string(v.weight));
}

// The multiset of side lengths of a cell, rendered canonically: values
// sorted ascending, comma-separated.  Equal multisets give equal strings
// and distinct ones distinct strings ("/" never collides with ",").
std::string cell_label(const JacobianCell& c) {
    std::vector<Rat> sides;
    sides.reserve(c.sides.size());
    for (const auto& [e, len] : c.sides) sides.push_back(len);
    std::sort(sides.begin(), sides.end());
    std::string out;
    for (const auto& r : sides) {
        if (!out.empty()) out += ",";
        out += rat_format(r);
    }
    return out;
}

std::string render_fvector(const std::vector<int>& f) {
    std::string out = "[";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i != 0) out += ",";
        out += std::to_string(f[i]);
    }
    return out + "]";
}

MetricGraph restrict_lengths(const Graph& piece, const std::map<std::string, Rat>& lengths) {
    std::map<std::string, Rat> sub;
    for (const auto& e : piece.edges()) sub.emplace(e.id, lengths.at(e.id));
    return MetricGraph{piece, std::move(sub)};
}

std::map<std::string, std::string> length_labels(const MetricGraph& x) {
    std::map<std::string, std::string> lab;
    for (const auto& [e, len] : x.lengths) lab.emplace(e, rat_format(len));
    return lab;
}

// Multiset matching under length-preserving isomorphism.  Greedy is exact
// here because isomorphism is an equivalence relation: if a piece matches
// any unused partner, all of its matches are interchangeable.
bool metric_pieces_match(const std::vector<MetricGraph>& a, const std::vector<MetricGraph>& b) {
    if (a.size() != b.size()) return false;
    std::vector<char> used(b.size(), 0);
    for (const auto& ga : a) {
        const auto la = length_labels(ga);
        bool hit = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            if (graph_isomorphic_labeled(ga.graph, b[j].graph, la, length_labels(b[j]))) {
                used[j] = 1;
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

}  // namespace

void validate_metric_graph(const MetricGraph& x) {
    for (const auto& e : x.graph.edges()) {
        auto it = x.lengths.find(e.id);
        if (it == x.lengths.end())
            throw std::invalid_argument("metric graph: edge '" + e.id + "' has no length");
        if (it->second <= Rat(0))
            throw std::invalid_argument("metric graph: edge '" + e.id +
                                        "' has nonpositive length " + rat_format(it->second));
    }
    for (const auto& [id, len] : x.lengths)
        if (!x.graph.has_edge(id))
            throw std::invalid_argument("metric graph: length for unknown edge '" + id + "'");
}

Rat total_length(const MetricGraph& x) {
    Rat s(0);
    for (const auto& [id, len] : x.lengths) s += len;
    return s;
}

MetricGraph canonical_model(const MetricGraph& x) {
    validate_metric_graph(x);
    std::vector<VertexData> verts = x.graph.vertices();
    std::vector<EdgeData> edges = x.graph.edges();
    std::map<std::string, Rat> lengths = x.lengths;

    for (;;) {
        // The lexicographically least suppressible vertex: weight 0 and
        // exactly two incident non-loop edge slots.  A loop contributes 2
        // to the valence, so requiring zero loops both excludes the
        // one-vertex circle model and guarantees two distinct edges.
        std::string pick;
        for (const auto& v : verts) {
            if (v.weight != 0) continue;
            int valence = 0, loops = 0;
            for (const auto& e : edges) {
                if (e.ends[0] == v.id) ++valence;
                if (e.ends[1] == v.id) ++valence;
                if (e.ends[0] == v.id && e.ends[1] == v.id) ++loops;
            }
            if (valence != 2 || loops != 0) continue;
            if (pick.empty() || v.id < pick) pick = v.id;
        }
        if (pick.empty()) break;

        std::size_t i = edges.size(), j = edges.size();
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (edges[k].ends[0] != pick && edges[k].ends[1] != pick) continue;
            (i == edges.size() ? i : j) = k;
        }
        // Concatenate: the smaller id survives, its far end becomes end 0.
        if (edges[j].id < edges[i].id) std::swap(i, j);
        const Rat merged = lengths.at(edges[i].id) + lengths.at(edges[j].id);
        lengths.erase(edges[i].id);
        lengths.erase(edges[j].id);
        edges[i] = EdgeData{edges[i].id, {far_end(edges[i], pick), far_end(edges[j], pick)}};
        lengths.emplace(edges[i].id, merged);
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(j));

        for (std::size_t k = 0; k < verts.size(); ++k)
            if (verts[k].id == pick) {
                verts.erase(verts.begin() + static_cast<std::ptrdiff_t>(k));
                break;
            }
    }
    return MetricGraph{Graph(std::move(verts), std::move(edges)), std::move(lengths)};
}

JacobianComplex build_jacobian_complex(const MetricGraph& x, const std::string& basepoint) {
    validate_metric_graph(x);
    require_pure(x.graph, "jacobian complex");
    QDPoset p = enumerate_qd(x.graph, basepoint, canonical_polarization(x.graph));

    std::vector<JacobianCell> cells;
    cells.reserve(p.elements().size());
    for (int i = 0; i < p.size(); ++i) {
        const PseudoDivisor& el = p.elements()[i];
        JacobianCell c;
        c.element = i;
        c.dim = static_cast<int>(el.edges.size());
        for (const auto& e : el.edges) {
            const Rat len = x.lengths.at(e);
            c.sides.emplace(e, len);
            c.volume *= len;
        }
        cells.push_back(std::move(c));
    }

    std::vector<JacobianAttachment> attachments;
    attachments.reserve(p.covers().size());
    for (const auto& cov : p.covers()) {
        const int side = cov.to_vertex == x.graph.edge(cov.edge).ends[0] ? 0 : 1;
        attachments.push_back(JacobianAttachment{cov.parent, cov.child, cov.edge, side});
    }
    return JacobianComplex{std::move(p), std::move(cells), std::move(attachments)};
}

std::vector<int> f_vector(const JacobianComplex& j) {
    int maxdim = 0;
    for (const auto& c : j.cells) maxdim = std::max(maxdim, c.dim);
    std::vector<int> f(static_cast<std::size_t>(maxdim) + 1, 0);
    for (const auto& c : j.cells) f[c.dim] += 1;
    return f;
}

Rat top_volume(const JacobianComplex& j) {
    Rat v(0);
    for (int i : j.poset.maximal_elements()) v += j.cells[i].volume;
    return v;
}

TropicalVerdict tropical_torelli_compare(const MetricGraph& x, const MetricGraph& y) {
    validate_metric_graph(x);
    validate_metric_graph(y);
    require_pure(x.graph, "tropical comparison");
    require_pure(y.graph, "tropical comparison");
    if (!bridges(x.graph).empty() || !bridges(y.graph).empty())
        throw BridgedInputError("input has bridges");

    const MetricGraph a = canonical_model(x);
    const MetricGraph b = canonical_model(y);

    const JacobianComplex ja = build_jacobian_complex(a, a.graph.vertices().front().id);
    const JacobianComplex jb = build_jacobian_complex(b, b.graph.vertices().front().id);

    // Complex side: a poset isomorphism constrained to match every cell's
    // multiset of side lengths.  For an edge in no special pair the rank-1
    // cells pin its length exactly; for a special pair the rank-2 cells pin
    // the unordered pair of lengths, which is all an isomorphism of the
    // complexes remembers about the pair.
    std::vector<std::string> la, lb;
    la.reserve(ja.cells.size());
    lb.reserve(jb.cells.size());
    for (const auto& c : ja.cells) la.push_back(cell_label(c));
    for (const auto& c : jb.cells) lb.push_back(cell_label(c));
    const bool complexes =
        poset_isomorphism(abstract_of(ja.poset), abstract_of(jb.poset), &la, &lb).has_value();

    // Curve side: biconnected pieces of the canonical model, each taken as
    // a tropical curve in its own right (so re-canonicalized: a cycle
    // block, say, is just a circle once its junction vertices lose their
    // other blocks).
    std::vector<MetricGraph> pa, pb;
    for (const auto& piece : biconnected_components(a.graph).components)
        pa.push_back(canonical_model(restrict_lengths(piece, a.lengths)));
    for (const auto& piece : biconnected_components(b.graph).components)
        pb.push_back(canonical_model(restrict_lengths(piece, b.lengths)));
    const bool curves = metric_pieces_match(pa, pb);

    // Isomorphic complexes force matching pieces, but not conversely: the
    // complex remembers how the articulation points subdivide a cycle
    // block, while the block as a curve forgets them.  Agreement is
    // therefore the implication, not equality.
    TropicalVerdict verdict;
    verdict.complexes_isomorphic = complexes;
    verdict.curves_match = curves;
    verdict.agree = !complexes || curves;
    verdict.witness = {
        {"left volume", rat_format(top_volume(ja))},
        {"right volume", rat_format(top_volume(jb))},
        {"left fvector", render_fvector(f_vector(ja))},
        {"right fvector", render_fvector(f_vector(jb))},
        {"left pieces", std::to_string(pa.size())},
        {"right pieces", std::to_string(pb.size())},
        {"left total length", rat_format(total_length(a))},
        {"right total length", rat_format(total_length(b))},
    };
    return verdict;
}

}  // namespace qdp
