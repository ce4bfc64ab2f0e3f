#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "qdp/errors.hpp"
#include "qdp/qd_poset.hpp"
#include "qdp/torelli.hpp"

using namespace qdp;

namespace {

QDPoset qd(const Graph& g, const std::string& v0) {
    return enumerate_qd(g, v0, canonical_polarization(g));
}

PseudoDivisor pd_of(const Graph& g, std::vector<std::string> edges,
                    std::map<std::string, int> vals) {
    Divisor d;
    for (const auto& v : g.vertices()) d.set(v.id, 0);
    for (const auto& [k, x] : vals) d.set(k, x);
    for (const auto& e : edges) d.set("v@" + e, 1);
    return PseudoDivisor(std::move(edges), std::move(d));
}

int find_idx(const QDPoset& p, const PseudoDivisor& pd) {
    auto i = p.find(pd);
    REQUIRE(i.has_value());
    return *i;
}

PosetIso identity_iso(int n) {
    PosetIso f;
    f.forward.resize(n);
    f.inverse.resize(n);
    std::iota(f.forward.begin(), f.forward.end(), 0);
    std::iota(f.inverse.begin(), f.inverse.end(), 0);
    return f;
}

// four parallel edges between s and t
Graph banana4() {
    return Graph({{"s", 0}, {"t", 0}},
                 {{"e1", {"s", "t"}}, {"e2", {"s", "t"}}, {"e3", {"s", "t"}}, {"e4", {"s", "t"}}});
}

// plain 4-cycle
Graph c4() {
    return Graph({{"x1", 0}, {"x2", 0}, {"x3", 0}, {"x4", 0}},
                 {{"f1", {"x1", "x2"}},
                  {"f2", {"x2", "x3"}},
                  {"f3", {"x3", "x4"}},
                  {"f4", {"x4", "x1"}}});
}

void check_valid_graph_iso(const Graph& g, const Graph& h, const GraphIso& iso) {
    REQUIRE(iso.vertex_map.size() == static_cast<std::size_t>(g.vertex_count()));
    REQUIRE(iso.edge_map.size() == static_cast<std::size_t>(g.edge_count()));
    std::set<std::string> vimg, eimg;
    for (const auto& v : g.vertices()) {
        auto it = iso.vertex_map.find(v.id);
        REQUIRE(it != iso.vertex_map.end());
        CHECK(h.vertex_index(it->second) >= 0);
        vimg.insert(it->second);
    }
    CHECK(vimg.size() == static_cast<std::size_t>(h.vertex_count()));
    for (const auto& e : g.edges()) {
        auto it = iso.edge_map.find(e.id);
        REQUIRE(it != iso.edge_map.end());
        eimg.insert(it->second);
        const auto& img = h.edge(it->second);
        const std::string a = iso.vertex_map.at(e.ends[0]);
        const std::string b = iso.vertex_map.at(e.ends[1]);
        const bool ok = (img.ends[0] == a && img.ends[1] == b) ||
                        (img.ends[0] == b && img.ends[1] == a);
        CHECK_MESSAGE(ok, "edge ", e.id, " maps with mismatched ends");
    }
    CHECK(eimg.size() == static_cast<std::size_t>(h.edge_count()));
}

// All injective cover-preserving images of the four-element model: pairs of
// same-rank elements sharing at least two cover parents, with every parent
// pair on top of them.
std::vector<std::array<int, 4>> p_configurations(const QDPoset& p) {
    std::vector<std::array<int, 4>> out;
    for (int c = 0; c < p.size(); ++c)
        for (int d = c + 1; d < p.size(); ++d) {
            if (p.rank(c) != p.rank(d)) continue;
            std::vector<int> common;
            const auto& pc = p.parents(c);
            const auto& pdp = p.parents(d);
            for (int a : pc)
                if (std::find(pdp.begin(), pdp.end(), a) != pdp.end()) common.push_back(a);
            for (std::size_t i = 0; i < common.size(); ++i)
                for (std::size_t j = i + 1; j < common.size(); ++j)
                    out.push_back({common[i], common[j], c, d});
        }
    return out;
}

// All injective rank- and order-preserving images of the eight-element model.
std::vector<std::array<int, 8>> r_mappings(const QDPoset& p) {
    std::vector<std::array<int, 8>> out;
    std::vector<int> rank0;
    for (int i = 0; i < p.size(); ++i)
        if (p.rank(i) == 0) rank0.push_back(i);
    for (int a1 = 0; a1 < p.size(); ++a1) {
        if (p.rank(a1) != 2) continue;
        const std::vector<int> kids = p.children(a1);
        if (kids.size() < 4) continue;
        std::vector<int> perm(kids.size());
        std::iota(perm.begin(), perm.end(), 0);
        // ordered choices of four distinct children
        std::vector<std::array<int, 4>> betas;
        for (int b1 : kids)
            for (int b2 : kids)
                for (int b3 : kids)
                    for (int b4 : kids) {
                        std::set<int> dd{b1, b2, b3, b4};
                        if (dd.size() == 4) betas.push_back({b1, b2, b3, b4});
                    }
        for (const auto& b : betas)
            for (int g1 : rank0) {
                if (!p.leq(g1, b[0]) || !p.leq(g1, b[1])) continue;
                for (int g2 : rank0) {
                    if (g2 == g1) continue;
                    if (!p.leq(g2, b[0]) || !p.leq(g2, b[1]) || !p.leq(g2, b[2]) ||
                        !p.leq(g2, b[3]))
                        continue;
                    for (int g3 : rank0) {
                        if (g3 == g1 || g3 == g2) continue;
                        if (!p.leq(g3, b[2]) || !p.leq(g3, b[3])) continue;
                        out.push_back({a1, b[0], b[1], b[2], b[3], g1, g2, g3});
                    }
                }
            }
    }
    return out;
}

}  // namespace

TEST_CASE("model posets have the expected shape") {
    AbstractPoset P = model_poset_P();
    CHECK(P.n == 4);
    CHECK(P.covers.size() == 4);
    CHECK(P.rank == std::vector<int>{1, 1, 0, 0});

    AbstractPoset R = model_poset_R();
    CHECK(R.n == 8);
    CHECK(R.covers.size() == 12);
    CHECK(R.rank == std::vector<int>{2, 1, 1, 1, 1, 0, 0, 0});

    CHECK(poset_isomorphism(P, P).has_value());
    CHECK(poset_isomorphism(R, R).has_value());
    CHECK_FALSE(poset_isomorphism(P, R).has_value());
}

TEST_CASE("classifying a four-element image on the two-cycle") {
    Graph g = corpus::twocyc();
    auto p = qd(g, "s");
    int ia = find_idx(p, pd_of(g, {"e1"}, {{"s", -1}}));
    int ib = find_idx(p, pd_of(g, {"e2"}, {{"s", -1}}));
    int ic = find_idx(p, pd_of(g, {}, {}));
    int id = find_idx(p, pd_of(g, {}, {{"s", -1}, {"t", 1}}));

    PImageWitness w = classify_P_image(p, {ia, ib, ic, id});
    CHECK(w.shape == 1);
    CHECK(w.e1 == "e1");
    CHECK(w.e2 == "e2");
    CHECK(w.s == "s");
    CHECK(w.t == "t");
    CHECK(w.base_edges.empty());
    Divisor base;
    base.set("s", -1), base.set("t", 0);
    CHECK(w.base_divisor == base);

    // the model tops and bottoms can be listed in either order
    PImageWitness swapped = classify_P_image(p, {ib, ia, id, ic});
    CHECK(swapped.shape == 1);
    CHECK(swapped.e1 == "e2");
    CHECK(swapped.e2 == "e1");
    CHECK(swapped.base_divisor == base);

    CHECK_THROWS_AS(classify_P_image(p, {ia, ia, ic, id}), std::invalid_argument);
    CHECK_THROWS_AS(classify_P_image(p, {ia, ib, ic, 99}), std::invalid_argument);
    CHECK_THROWS_AS(classify_P_image(p, {ic, ib, ia, id}), std::invalid_argument);
}

TEST_CASE("classifying a shared-top image on the four-banana") {
    Graph g = banana4();
    auto p = qd(g, "s");
    int ia = find_idx(p, pd_of(g, {"e1", "e2"}, {}));
    int ib = find_idx(p, pd_of(g, {"e1", "e2"}, {{"s", -1}, {"t", 1}}));
    int ic = find_idx(p, pd_of(g, {"e1"}, {{"t", 1}}));
    int id = find_idx(p, pd_of(g, {"e2"}, {{"t", 1}}));

    PImageWitness w = classify_P_image(p, {ia, ib, ic, id});
    CHECK(w.shape == 2);
    CHECK(w.e1 == "e1");
    CHECK(w.e2 == "e2");
    CHECK(w.s == "s");
    CHECK(w.t == "t");
    CHECK(w.base_edges.empty());
    Divisor base;
    base.set("s", 0), base.set("t", 1);
    CHECK(w.base_divisor == base);
}

TEST_CASE("every four-element image in the corpus classifies") {
    struct Entry {
        const char* name;
        Graph graph;
        const char* v0;
        int expected;  // -1: only require at least one
    };
    std::vector<Entry> entries;
    entries.push_back({"twocyc", corpus::twocyc(), "s", 1});
    entries.push_back({"theta", corpus::theta(), "s", 9});
    entries.push_back({"dumb", corpus::dumb(), "s", 5});
    entries.push_back({"banana4", banana4(), "s", 54});
    entries.push_back({"triangle", corpus::triangle(), "x", 0});
    entries.push_back({"k4", corpus::k4(), "v1", 0});
    entries.push_back({"twotri", corpus::twotri(), "m", 0});
    entries.push_back({"loop", corpus::loop(), "u", 0});
    entries.push_back({"three_loops", corpus::three_loops(), "u", 0});
    entries.push_back({"whitney1", corpus::whitney1(), "a", -1});

    for (const auto& entry : entries) {
        CAPTURE(entry.name);
        auto p = qd(entry.graph, entry.v0);
        auto configs = p_configurations(p);
        for (const auto& m : configs) {
            PImageWitness w = classify_P_image(p, m);  // must never falsify
            CHECK(are_parallel(p.graph(), w.e1, w.e2));
        }
        if (entry.expected >= 0)
            CHECK(static_cast<int>(configs.size()) == entry.expected);
        else
            CHECK(configs.size() > 0);
    }
}

TEST_CASE("the eight-element family is found wherever it maps in") {
    struct Entry {
        const char* name;
        Graph graph;
        const char* v0;
        int expected;
    };
    std::vector<Entry> entries;
    entries.push_back({"twocyc", corpus::twocyc(), "s", 0});
    entries.push_back({"theta", corpus::theta(), "s", 24});
    entries.push_back({"dumb", corpus::dumb(), "s", 8});
    entries.push_back({"banana4", banana4(), "s", 96});
    entries.push_back({"k4", corpus::k4(), "v1", 0});
    entries.push_back({"three_loops", corpus::three_loops(), "u", 0});

    for (const auto& entry : entries) {
        CAPTURE(entry.name);
        auto p = qd(entry.graph, entry.v0);
        auto maps = r_mappings(p);
        for (const auto& m : maps) {
            RImageWitness w = locate_R_image(p, m);  // must never falsify
            const auto& top = p.elements()[m[0]];
            std::vector<std::string> pair{w.e1, w.e2};
            std::sort(pair.begin(), pair.end());
            CHECK(pair == top.edges);
            CHECK(w.divisor == top.divisor);
            CHECK(w.s != w.t);
        }
        CHECK(static_cast<int>(maps.size()) == entry.expected);
    }
}

TEST_CASE("prescribed eight-element family on the dumbbell") {
    Graph g = corpus::dumb();
    auto p = qd(g, "s");
    Divisor D = pd_of(g, {"e1", "e2"}, {{"s", -1}}).divisor;
    auto family = r_family(g, "e1", "e2", D);
    CHECK(family[0] == pd_of(g, {"e1", "e2"}, {{"s", -1}}));
    CHECK(family[1] == pd_of(g, {"e1"}, {}));
    CHECK(family[2] == pd_of(g, {"e2"}, {}));
    CHECK(family[3] == pd_of(g, {"e1"}, {{"s", -1}, {"t", 1}}));
    CHECK(family[4] == pd_of(g, {"e2"}, {{"s", -1}, {"t", 1}}));
    CHECK(family[5] == pd_of(g, {}, {{"s", 1}}));
    CHECK(family[6] == pd_of(g, {}, {{"t", 1}}));
    CHECK(family[7] == pd_of(g, {}, {{"s", -1}, {"t", 2}}));

    std::array<int, 8> mapping;
    for (int i = 0; i < 8; ++i) mapping[i] = find_idx(p, family[i]);
    RImageWitness w = locate_R_image(p, mapping);
    CHECK(w.e1 == "e1");
    CHECK(w.e2 == "e2");
    CHECK(w.s == "s");
    CHECK(w.t == "t");
    CHECK(w.divisor == D);

    // swapping the two s-side slots swaps the reported pair
    RImageWitness v =
        locate_R_image(p, {mapping[0], mapping[2], mapping[1], mapping[4], mapping[3],
                           mapping[5], mapping[6], mapping[7]});
    CHECK(v.e1 == "e2");
    CHECK(v.e2 == "e1");
    CHECK(v.s == "s");
    CHECK(v.t == "t");

    CHECK_THROWS_AS(locate_R_image(p, {mapping[0], mapping[1], mapping[1], mapping[3],
                                       mapping[4], mapping[5], mapping[6], mapping[7]}),
                    std::invalid_argument);
    CHECK_THROWS_AS(locate_R_image(p, {mapping[1], mapping[0], mapping[2], mapping[3],
                                       mapping[4], mapping[5], mapping[6], mapping[7]}),
                    std::invalid_argument);

    Graph tri = corpus::triangle();
    Divisor td = pd_of(tri, {"a", "b"}, {{"x", -1}}).divisor;
    CHECK_THROWS_AS(r_family(tri, "a", "b", td), std::invalid_argument);
    Divisor missing;
    missing.set("s", -1);
    CHECK_THROWS_AS(r_family(g, "e1", "e2", missing), std::invalid_argument);
}

TEST_CASE("a common lower bound certifies parallel edges") {
    Graph g = corpus::dumb();
    CHECK(check_parallel_lemma(g, pd_of(g, {"e1", "e2"}, {{"s", -1}}), "e1", "e2"));
    CHECK_FALSE(check_parallel_lemma(g, pd_of(g, {"e1", "p1"}, {{"s", -1}}), "e1", "p1"));

    Graph tri = corpus::triangle();
    CHECK_FALSE(check_parallel_lemma(tri, pd_of(tri, {"a", "b"}, {{"x", -1}}), "a", "b"));

    CHECK_THROWS_AS(check_parallel_lemma(g, pd_of(g, {"e1", "e2"}, {}), "e1", "p1"),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_parallel_lemma(g, pd_of(g, {"e1", "e2"}, {}), "e1", "e1"),
                    std::invalid_argument);
    Graph tl = corpus::three_loops();
    CHECK_THROWS_AS(check_parallel_lemma(tl, pd_of(tl, {"l1", "l2"}, {}), "l1", "l2"),
                    std::invalid_argument);

    // across the corpus the certificate appears exactly for parallel pairs
    std::vector<Graph> graphs{corpus::twocyc(), corpus::theta(), corpus::dumb(),
                              corpus::triangle(), corpus::k4(), banana4()};
    for (const auto& gr : graphs) {
        auto p = qd(gr, gr.vertices().front().id);
        for (const auto& el : p.elements()) {
            if (el.edges.size() < 2) continue;
            for (const auto& e : el.edges) {
                if (gr.is_loop(e)) continue;
                for (const auto& e0 : el.edges) {
                    if (e0 == e) continue;
                    const bool found = check_parallel_lemma(gr, el, e, e0);
                    CHECK(found == are_parallel(gr, e, e0));
                }
            }
        }
    }
}

TEST_CASE("the induced edge map of an isomorphism") {
    Graph tri = corpus::triangle();
    auto p = qd(tri, "x");
    EdgeMap fe = induce_edge_map(identity_iso(p.size()), p, p);
    CHECK(fe.forward ==
          std::map<std::string, std::string>{{"a", "a"}, {"b", "b"}, {"c", "c"}});
    CHECK(fe.special_source.empty());
    CHECK(fe.special_target.empty());

    Graph two = corpus::twocyc();
    auto pt = qd(two, "s");
    auto [qt, tr] = translate_basepoint(pt, "t");
    EdgeMap fe2 = induce_edge_map(tr, pt, qt);
    CHECK(fe2.forward ==
          std::map<std::string, std::string>{{"e1", "e1"}, {"e2", "e2"}});
    CHECK(fe2.special_source.empty());  // removing both edges disconnects

    Graph d = corpus::dumb();
    auto pd = qd(d, "s");
    EdgeMap fe3 = induce_edge_map(identity_iso(pd.size()), pd, pd);
    CHECK(fe3.special_source ==
          std::vector<std::pair<std::string, std::string>>{{"e1", "e2"}});
    CHECK(fe3.special_target == fe3.special_source);
    CHECK(fe3.forward == std::map<std::string, std::string>{
                             {"e1", "e1"}, {"e2", "e2"}, {"p1", "p1"}, {"p2", "p2"}});

    // pendant triangles reduced at different corners still induce a bijection
    Graph r1 = contract_edges(purify(corpus::triangle_pendant("x")), {"d"}).target;
    Graph r2 = contract_edges(purify(corpus::triangle_pendant("y")), {"d"}).target;
    auto q1 = qd(r1, r1.vertices().front().id);
    auto q2 = qd(r2, r2.vertices().front().id);
    auto iso = poset_isomorphism(q1, q2);
    REQUIRE(iso.has_value());
    EdgeMap fe4 = induce_edge_map(*iso, q1, q2);
    std::set<std::string> img;
    for (const auto& [e, e2] : fe4.forward) img.insert(e2);
    CHECK(fe4.forward.size() == 3);
    CHECK(img.size() == 3);

    // bridged graphs are rejected outright
    Graph pend = purify(corpus::triangle_pendant("x"));
    auto pp = qd(pend, "x");
    CHECK_THROWS_AS(induce_edge_map(identity_iso(pp.size()), pp, pp),
                    std::invalid_argument);

    // a bijection that breaks the order is rejected
    PosetIso bad = identity_iso(p.size());
    int b1 = find_idx(p, pd_of(tri, {}, {}));
    int b2 = find_idx(p, pd_of(tri, {}, {{"x", -1}, {"y", 1}}));
    std::swap(bad.forward[b1], bad.forward[b2]);
    std::swap(bad.inverse[b1], bad.inverse[b2]);
    CHECK_THROWS_AS(induce_edge_map(bad, p, p), std::invalid_argument);
}

TEST_CASE("normalizing an isomorphism along its edge map") {
    Graph tri = corpus::triangle();
    auto p = qd(tri, "x");
    PosetIso f = identity_iso(p.size());
    PosetIso h = normalize_iso(f, induce_edge_map(f, p, p), p, p);
    CHECK(h.forward == f.forward);

    // the edge swap automorphism of the dumbbell normalizes to the identity
    Graph d = corpus::dumb();
    auto pd = qd(d, "s");
    auto rename = [](const PseudoDivisor& el) {
        auto flip = [](const std::string& id) {
            if (id == "e1") return std::string("e2");
            if (id == "e2") return std::string("e1");
            return id;
        };
        std::vector<std::string> edges;
        for (const auto& e : el.edges) edges.push_back(flip(e));
        Divisor dv;
        for (const auto& [k, x] : el.divisor.values()) {
            if (k.rfind("v@", 0) == 0)
                dv.set("v@" + flip(k.substr(2)), x);
            else
                dv.set(k, x);
        }
        return PseudoDivisor(std::move(edges), std::move(dv));
    };
    PosetIso swap_iso;
    swap_iso.forward.assign(pd.size(), -1);
    swap_iso.inverse.assign(pd.size(), -1);
    for (int i = 0; i < pd.size(); ++i) {
        int j = find_idx(pd, rename(pd.elements()[i]));
        swap_iso.forward[i] = j;
        swap_iso.inverse[j] = i;
    }
    CHECK(swap_iso.forward != identity_iso(pd.size()).forward);
    EdgeMap fe = induce_edge_map(swap_iso, pd, pd);
    CHECK(fe.forward == std::map<std::string, std::string>{
                            {"e1", "e1"}, {"e2", "e2"}, {"p1", "p1"}, {"p2", "p2"}});
    PosetIso hd = normalize_iso(swap_iso, fe, pd, pd);
    CHECK(hd.forward == identity_iso(pd.size()).forward);

    // with no special pairs normalization changes nothing
    Graph two = corpus::twocyc();
    auto pt = qd(two, "s");
    auto [qt, tr] = translate_basepoint(pt, "t");
    PosetIso ht = normalize_iso(tr, induce_edge_map(tr, pt, qt), pt, qt);
    CHECK(ht.forward == tr.forward);
}

TEST_CASE("recovering the star of a vertex") {
    Graph tri = corpus::triangle();
    auto p = qd(tri, "x");

    VertexStar sy = recover_vertex_star(p, "y");
    CHECK(sy.E1.empty());
    CHECK(p.elements()[sy.base_index] == pd_of(tri, {}, {{"x", -1}, {"y", 1}}));
    REQUIRE(sy.extensions.size() == 3);
    CHECK(sy.extensions[0].first.empty());
    CHECK(sy.extensions[0].second == sy.base_index);
    CHECK(sy.extensions[1].first == std::vector<std::string>{"a"});
    CHECK(p.elements()[sy.extensions[1].second] == pd_of(tri, {"a"}, {{"x", -1}}));
    CHECK(sy.extensions[2].first == std::vector<std::string>{"b"});
    CHECK(p.elements()[sy.extensions[2].second] == pd_of(tri, {"b"}, {{"x", -1}}));

    VertexStar sx = recover_vertex_star(p, "x");  // the basepoint itself
    CHECK(p.elements()[sx.base_index] == pd_of(tri, {}, {}));
    CHECK(sx.extensions.size() == 3);

    Graph th = corpus::theta();
    auto pt = qd(th, "s");
    VertexStar st = recover_vertex_star(pt, "t");
    CHECK(st.E1.empty());
    CHECK(pt.elements()[st.base_index] == pd_of(th, {}, {{"s", -1}, {"t", 2}}));
    CHECK(st.extensions.size() == 7);

    Graph lp = corpus::loop();
    auto pl = qd(lp, "u");
    VertexStar su = recover_vertex_star(pl, "u");
    CHECK(pl.elements()[su.base_index] == pd_of(lp, {}, {}));
    CHECK(su.extensions.size() == 1);

    Graph k = corpus::k4();
    auto pk = qd(k, "v1");
    for (const auto& v : k.vertices()) {
        VertexStar s = recover_vertex_star(pk, v.id);
        CHECK(s.E1.size() == 1);
        CHECK(s.extensions.size() == 7);
    }

    Graph tt = corpus::twotri();
    auto ptt = qd(tt, "m");
    CHECK_THROWS_AS(recover_vertex_star(ptt, "m"), std::invalid_argument);
    CHECK_THROWS_AS(recover_vertex_star(p, "nope"), std::invalid_argument);

    Graph weighted({{"x", 1}, {"y", 0}, {"z", 0}},
                   {{"a", {"x", "y"}}, {"b", {"y", "z"}}, {"c", {"x", "z"}}});
    auto pw = qd(weighted, "x");
    CHECK_THROWS_AS(recover_vertex_star(pw, "y"), std::invalid_argument);
}

TEST_CASE("probing a bond for a common vertex") {
    Graph tri = corpus::triangle();
    auto p = qd(tri, "x");
    VertexStar sy = recover_vertex_star(p, "y");
    BondProbe probe = bond_vertex_test(p, sy.base_index, {"a", "b"});
    CHECK(probe.status == BondProbe::Status::vertex_found);
    CHECK(probe.vertex == "y");

    Graph th = corpus::theta();
    auto pt = qd(th, "s");
    VertexStar st = recover_vertex_star(pt, "t");
    BondProbe pb = bond_vertex_test(pt, st.base_index, {"e1", "e2", "e3"});
    CHECK(pb.status == BondProbe::Status::vertex_found);
    CHECK(pb.vertex == "s");  // both ends qualify; the smaller one is reported

    // on the 4-cycle the opposite-edge bond never satisfies the hypothesis
    Graph c = c4();
    auto pc = qd(c, "x1");
    for (int i = 0; i < pc.size(); ++i) {
        if (pc.rank(i) != 0) continue;
        BondProbe bp = bond_vertex_test(pc, i, {"f1", "f3"});
        CHECK(bp.status == BondProbe::Status::hypothesis_not_satisfied);
    }
    int base = find_idx(pc, pd_of(c, {}, {}));
    BondProbe bp = bond_vertex_test(pc, base, {"f1", "f3"});
    REQUIRE(bp.status == BondProbe::Status::hypothesis_not_satisfied);
    CHECK(bp.failed_S == std::vector<std::string>{"f3"});
    CHECK(bp.failed_count == 0);

    CHECK_THROWS_AS(bond_vertex_test(pc, base, {"f1"}), std::invalid_argument);
    CHECK_THROWS_AS(bond_vertex_test(p, sy.base_index, {"a", "b", "c"}),
                    std::invalid_argument);
    int witha = find_idx(p, pd_of(tri, {"a"}, {{"x", -1}}));
    CHECK_THROWS_AS(bond_vertex_test(p, witha, {"a", "b"}), std::invalid_argument);
    CHECK_THROWS_AS(bond_vertex_test(p, -1, {"a", "b"}), std::invalid_argument);
}

TEST_CASE("rebuilding a biconnected graph from its poset") {
    Graph tri = corpus::triangle();
    auto p = qd(tri, "x");

    GraphIso self = reconstruct_biconnected(identity_iso(p.size()), p, p);
    check_valid_graph_iso(tri, tri, self);
    CHECK(self.vertex_map == std::map<std::string, std::string>{
                                 {"x", "x"}, {"y", "y"}, {"z", "z"}});

    Graph tri2({{"p", 0}, {"q", 0}, {"r", 0}},
               {{"d", {"p", "q"}}, {"e", {"q", "r"}}, {"f0", {"p", "r"}}});
    auto p2 = qd(tri2, "p");
    auto iso = poset_isomorphism(p, p2);
    REQUIRE(iso.has_value());
    check_valid_graph_iso(tri, tri2, reconstruct_biconnected(*iso, p, p2));

    // one- and two-vertex graphs resolve directly
    Graph lp = corpus::loop();
    auto pl = qd(lp, "u");
    check_valid_graph_iso(lp, lp, reconstruct_biconnected(identity_iso(pl.size()), pl, pl));

    Graph th = corpus::theta();
    Graph th2({{"a0", 0}, {"b0", 0}},
              {{"h1", {"a0", "b0"}}, {"h2", {"a0", "b0"}}, {"h3", {"a0", "b0"}}});
    auto pt = qd(th, "s");
    auto pt2 = qd(th2, "a0");
    auto iso_t = poset_isomorphism(pt, pt2);
    REQUIRE(iso_t.has_value());
    check_valid_graph_iso(th, th2, reconstruct_biconnected(*iso_t, pt, pt2));

    // full pipeline across a basepoint change on the complete graph
    Graph k = corpus::k4();
    auto pk = qd(k, "v1");
    auto [qk, trk] = translate_basepoint(pk, "v2");
    GraphIso kk = reconstruct_biconnected(trk, pk, qk);
    check_valid_graph_iso(k, k, kk);
    CHECK(kk.vertex_map.at("v1") == "v1");

    // special pairs flow through the pipeline
    Graph d = corpus::dumb();
    auto pdp = qd(d, "s");
    GraphIso dd = reconstruct_biconnected(identity_iso(pdp.size()), pdp, pdp);
    check_valid_graph_iso(d, d, dd);
    CHECK(dd.vertex_map == std::map<std::string, std::string>{
                               {"s", "s"}, {"t", "t"}, {"u", "u"}});

    // basepoint independence
    auto py = qd(tri, "y");
    auto iso_xy = poset_isomorphism(p, py);
    REQUIRE(iso_xy.has_value());
    check_valid_graph_iso(tri, tri, reconstruct_biconnected(*iso_xy, p, py));

    Graph tt = corpus::twotri();
    auto ptt = qd(tt, "m");
    CHECK_THROWS_AS(reconstruct_biconnected(identity_iso(ptt.size()), ptt, ptt),
                    std::invalid_argument);
    Graph weighted({{"x", 1}, {"y", 0}, {"z", 0}},
                   {{"a", {"x", "y"}}, {"b", {"y", "z"}}, {"c", {"x", "z"}}});
    auto pw = qd(weighted, "x");
    CHECK_THROWS_AS(reconstruct_biconnected(identity_iso(pw.size()), pw, pw),
                    std::invalid_argument);
}

TEST_CASE("comparing graphs through their posets") {
    auto expect = [](const TorelliVerdict& v, bool posets, bool comps) {
        CHECK(v.poset_isomorphic == posets);
        CHECK(v.components_match == comps);
        CHECK(v.agree);
    };

    expect(torelli_compare(corpus::triangle_pendant("x"), corpus::triangle_pendant("y")),
           true, true);
    expect(torelli_compare(corpus::triangle(), corpus::theta()), false, false);
    expect(torelli_compare(corpus::whitney1(), corpus::whitney2()), false, false);
    expect(torelli_compare(corpus::whitney1(), corpus::whitney1()), true, true);
    expect(torelli_compare(corpus::twotri(), corpus::twotri()), true, true);
    expect(torelli_compare(corpus::path2(), corpus::loop()), false, false);
    expect(torelli_compare(corpus::loop(), corpus::triangle()), false, false);

    Graph path3({{"u", 0}, {"v", 0}, {"w", 0}}, {{"b1", {"u", "v"}}, {"b2", {"v", "w"}}});
    expect(torelli_compare(corpus::path2(), path3), true, true);

    Graph weighted({{"x", 2}, {"y", 0}, {"z", 0}},
                   {{"a", {"x", "y"}}, {"b", {"y", "z"}}, {"c", {"x", "z"}}});
    expect(torelli_compare(weighted, corpus::triangle()), true, true);

    // the verdict agrees with the reconstruction theorem across the corpus
    std::vector<Graph> graphs{corpus::loop(),    corpus::twocyc(),
                              corpus::theta(),   corpus::triangle(),
                              corpus::dumb(),    corpus::path2(),
                              corpus::twotri(),  corpus::three_loops(),
                              corpus::triangle_pendant("x")};
    for (const auto& a : graphs)
        for (const auto& b : graphs) {
            TorelliVerdict v = torelli_compare(a, b);
            CHECK(v.agree);
        }
}
