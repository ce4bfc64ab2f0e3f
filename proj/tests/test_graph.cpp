#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "oracles.hpp"
#include "qdp/errors.hpp"
#include "qdp/graph.hpp"

using namespace qdp;

TEST_CASE("construction validates input") {
    CHECK_THROWS_AS(Graph({{"u", 0}, {"u", 0}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Graph({{"u", 0}}, {{"e", {"u", "w"}}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph({{"u", -1}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Graph({{"u", 0}, {"w", 0}}, {{"e", {"u", "u"}}, {"e", {"u", "u"}}}),
                    std::invalid_argument);
    // two isolated vertices: rejected unless explicitly allowed
    CHECK_THROWS_AS(Graph({{"u", 0}, {"w", 0}}, {}), DisconnectedError);
    Graph g({{"u", 0}, {"w", 0}}, {}, allow_disconnected);
    CHECK(g.component_count() == 2);
}

TEST_CASE("basic queries") {
    Graph d = corpus::dumb();
    CHECK(d.vertex_count() == 3);
    CHECK(d.edge_count() == 4);
    CHECK(d.valence("s") == 3);
    CHECK(d.valence("u") == 2);
    CHECK(d.edges_between("s", "t") == 2);
    CHECK(d.edges_between("s", "u") == 1);
    CHECK(d.incident_edges("s") == std::vector<std::string>{"e1", "e2", "p1"});

    Graph l = corpus::loop();
    CHECK(l.valence("u") == 2);  // a loop counts twice
    CHECK(l.loops_at("u") == 1);
    CHECK(l.edges_between("u", "u") == 1);
}

TEST_CASE("genus") {
    CHECK(genus(corpus::loop()) == 1);
    CHECK(genus(corpus::twocyc()) == 1);
    CHECK(genus(corpus::theta()) == 2);
    CHECK(genus(corpus::triangle()) == 1);
    CHECK(genus(corpus::dumb()) == 2);
    CHECK(genus(corpus::path2()) == 0);
    CHECK(genus(corpus::k4()) == 3);
    CHECK(genus(corpus::twotri()) == 2);
    CHECK(genus(corpus::whitney1()) == 3);
    CHECK(genus(corpus::whitney2()) == 3);
    // weights add to the genus
    Graph wt({{"x", 2}, {"y", 0}, {"z", 0}},
             {{"a", {"x", "y"}}, {"b", {"y", "z"}}, {"c", {"x", "z"}}});
    CHECK(genus(wt) == 3);
}

TEST_CASE("subgraph genus") {
    Graph th = corpus::theta();
    CHECK(subgraph_genus(th, {"s", "t"}) == 2);
    CHECK(subgraph_genus(th, {"s"}) == 0);
    Graph tr = corpus::triangle();
    CHECK(subgraph_genus(tr, {"x", "y"}) == 0);
    // disconnected induced subgraph: betti uses the component count
    Graph d = corpus::dumb();
    CHECK(subgraph_genus(d, {"s", "t"}) == 1);  // e1, e2 make a 2-cycle
    Graph k = corpus::k4();
    CHECK(subgraph_genus(k, {"v1", "v2", "v3", "v4"}) == 3);
}

TEST_CASE("cuts, bonds, hemispheres") {
    Graph p = corpus::path2();
    CHECK(enumerate_hemispheres(p) ==
          std::vector<std::vector<std::string>>{{"u"}, {"v"}});
    CHECK(enumerate_bonds(p) == std::vector<std::vector<std::string>>{{"b"}});

    Graph th = corpus::theta();
    CHECK(enumerate_hemispheres(th) ==
          std::vector<std::vector<std::string>>{{"s"}, {"t"}});
    CHECK(enumerate_bonds(th) ==
          std::vector<std::vector<std::string>>{{"e1", "e2", "e3"}});

    Graph d = corpus::dumb();
    CHECK(enumerate_hemispheres(d).size() == 6);  // every proper nonempty subset
    auto bonds = enumerate_bonds(d);
    CHECK(bonds == std::vector<std::vector<std::string>>{
                       {"e1", "e2", "p1"}, {"e1", "e2", "p2"}, {"p1", "p2"}});
    CHECK(cut_of(d, {"s"}) == std::vector<std::string>{"e1", "e2", "p1"});
    CHECK(cut_of(d, {"t", "u"}) == std::vector<std::string>{"e1", "e2", "p1"});

    // V is a hemisphere exactly when E(V, V^c) is a bond
    for (const Graph& g : {corpus::dumb(), corpus::k4(), corpus::twotri(), corpus::whitney1()}) {
        std::set<std::vector<std::string>> bondset;
        for (auto& b : enumerate_bonds(g)) bondset.insert(b);
        int hemis = 0;
        for (auto& V : enumerate_hemispheres(g)) {
            CHECK(bondset.count(cut_of(g, V)) == 1);
            ++hemis;
        }
        // each bond comes from exactly one complementary pair {V, V^c}
        CHECK(hemis == 2 * static_cast<int>(bondset.size()));
    }

    // loops never appear in cuts
    Graph l = corpus::loop();
    CHECK(enumerate_cuts(l).empty());
}

TEST_CASE("spanning trees match the matrix-tree count") {
    auto check = [](const Graph& g, long long expect) {
        auto trees = spanning_trees(g);
        CHECK(static_cast<long long>(trees.size()) == expect);
        CHECK(oracle::kirchhoff_count(g) == expect);
        std::set<std::vector<std::string>> uniq(trees.begin(), trees.end());
        CHECK(uniq.size() == trees.size());
    };
    check(corpus::loop(), 1);
    check(corpus::twocyc(), 2);
    check(corpus::theta(), 3);
    check(corpus::triangle(), 3);
    check(corpus::dumb(), 5);
    check(corpus::path2(), 1);
    check(corpus::k4(), 16);
    check(corpus::twotri(), 9);
    check(corpus::whitney1(), 12);
    check(corpus::whitney2(), 12);
    check(corpus::three_loops(), 1);
}

TEST_CASE("bridges and nondisconnecting edges") {
    CHECK(bridges(corpus::path2()) == std::vector<std::string>{"b"});
    CHECK(bridges(corpus::dumb()).empty());
    CHECK(bridges(corpus::loop()).empty());
    CHECK(bridges(corpus::triangle_pendant("x")) == std::vector<std::string>{"d"});
    CHECK(nondisconnecting_edges(corpus::triangle_pendant("x")) ==
          std::vector<std::string>{"a", "b", "c"});
    CHECK(nondisconnecting_edges(corpus::path2()).empty());
}

TEST_CASE("maximally nondisconnecting sets are tree complements") {
    CHECK(maximally_nondisconnecting_sets(corpus::triangle()) ==
          std::vector<std::vector<std::string>>{{"a"}, {"b"}, {"c"}});
    CHECK(maximally_nondisconnecting_sets(corpus::theta()) ==
          std::vector<std::vector<std::string>>{{"e1", "e2"}, {"e1", "e3"}, {"e2", "e3"}});
    CHECK(maximally_nondisconnecting_sets(corpus::loop()) ==
          std::vector<std::vector<std::string>>{{"a"}});
    // every member, with the tree, partitions the edge set
    Graph d = corpus::dumb();
    auto mnds = maximally_nondisconnecting_sets(d);
    CHECK(mnds.size() == 5);
    for (auto& S : mnds) CHECK(delete_edges(d, S, true).first_betti() == 0);
}

TEST_CASE("subdivision") {
    Graph th = corpus::theta();
    auto sub = subdivide(th, {"e1", "e3"});
    CHECK(sub.graph.vertex_count() == 4);
    CHECK(sub.graph.edge_count() == 5);
    CHECK(sub.exceptional.at("e1") == "v@e1");
    CHECK(sub.graph.edge("e1:0").ends == std::array<std::string, 2>{"s", "v@e1"});
    CHECK(sub.graph.edge("e1:1").ends == std::array<std::string, 2>{"v@e1", "t"});
    CHECK(genus(sub.graph) == genus(th));  // subdivision preserves genus

    // subdividing a loop produces a 2-cycle
    auto lsub = subdivide(corpus::loop(), {"a"});
    CHECK(lsub.graph.vertex_count() == 2);
    CHECK(lsub.graph.edges_between("u", "v@a") == 2);
    CHECK(genus(lsub.graph) == 1);
}

TEST_CASE("edge deletion") {
    Graph d = corpus::dumb();
    Graph del = delete_edges(d, {"e1"}, true);
    CHECK(del.vertex_count() == 3);
    CHECK(del.edge_count() == 3);
    CHECK_THROWS_AS(delete_edges(d, {"p1", "p2"}, true), DisconnectedError);
    Graph free = delete_edges(d, {"p1", "p2"}, false);
    CHECK(free.component_count() == 2);  // u is stranded but kept
    CHECK(free.vertex_count() == 3);
}

TEST_CASE("contraction") {
    Graph tr = corpus::triangle();
    auto con = contract_edges(tr, {"a", "b"});  // a spanning tree
    CHECK(con.target.vertex_count() == 1);
    CHECK(con.target.edge_count() == 1);
    CHECK(con.target.is_loop("c"));
    CHECK(con.target.vertices()[0].id == "x");  // least id of the merged class
    CHECK(genus(con.target) == genus(tr));
    con.validate();

    // contracting a loop deletes it and drops the genus
    auto lcon = contract_edges(corpus::loop(), {"a"});
    CHECK(lcon.target.vertex_count() == 1);
    CHECK(lcon.target.edge_count() == 0);
    CHECK(genus(lcon.target) == 0);

    // contracting a bridge preserves the genus
    Graph tp = corpus::triangle_pendant("x");
    auto bcon = contract_edges(tp, {"d"});
    CHECK(genus(bcon.target) == genus(tp));
    CHECK(bcon.target.vertex_count() == 3);

    // weights accumulate on the merged vertex
    Graph wt({{"x", 1}, {"y", 2}}, {{"e", {"x", "y"}}});
    auto wcon = contract_edges(wt, {"e"});
    CHECK(wcon.target.vertices()[0].weight == 3);
}

TEST_CASE("parallel edges and special pairs") {
    Graph d = corpus::dumb();
    CHECK(are_parallel(d, "e1", "e2"));
    CHECK_FALSE(are_parallel(d, "e1", "p1"));
    CHECK(special_pairs(d) ==
          std::vector<std::pair<std::string, std::string>>{{"e1", "e2"}});
    // theta: a third parallel edge disqualifies everything
    CHECK(special_pairs(corpus::theta()).empty());
    // twocyc: removing the pair disconnects, so it is not special
    CHECK(special_pairs(corpus::twocyc()).empty());
    // loops are parallel to nothing
    Graph two_loops({{"u", 0}}, {{"l1", {"u", "u"}}, {"l2", {"u", "u"}}});
    CHECK_FALSE(are_parallel(two_loops, "l1", "l2"));
    CHECK(special_pairs(corpus::whitney1()) ==
          std::vector<std::pair<std::string, std::string>>{{"e2", "e3"}, {"f1", "f2"}});
    CHECK(special_pairs(corpus::whitney2()) ==
          std::vector<std::pair<std::string, std::string>>{{"e2", "e3"}, {"f1", "f2"}});
}

TEST_CASE("articulation vertices use the subdivision convention") {
    CHECK(articulation_vertices(corpus::triangle()).empty());
    CHECK(articulation_vertices(corpus::dumb()).empty());
    CHECK(articulation_vertices(corpus::twotri()) == std::vector<std::string>{"m"});
    CHECK(articulation_vertices(corpus::triangle_pendant("x")) == std::vector<std::string>{"x"});
    // a vertex carrying a loop plus anything else separates the loop
    Graph lp({{"u", 0}, {"w", 0}}, {{"l", {"u", "u"}}, {"e", {"u", "w"}}});
    CHECK(articulation_vertices(lp) == std::vector<std::string>{"u"});
    CHECK(articulation_vertices(corpus::loop()).empty());
    CHECK(articulation_vertices(corpus::three_loops()) == std::vector<std::string>{"u"});
}

TEST_CASE("biconnectivity") {
    CHECK(is_biconnected(corpus::loop()));
    CHECK(is_biconnected(corpus::twocyc()));
    CHECK(is_biconnected(corpus::theta()));
    CHECK(is_biconnected(corpus::triangle()));
    CHECK(is_biconnected(corpus::dumb()));
    CHECK(is_biconnected(corpus::k4()));
    CHECK(is_biconnected(corpus::whitney1()));
    CHECK(is_biconnected(corpus::whitney2()));
    CHECK_FALSE(is_biconnected(corpus::path2()));  // one edge: biconnected iff loop
    CHECK_FALSE(is_biconnected(corpus::twotri()));
    CHECK_FALSE(is_biconnected(corpus::three_loops()));
    CHECK(is_biconnected(Graph({{"u", 0}}, {})));
}

TEST_CASE("biconnected decomposition") {
    auto dec = biconnected_components(corpus::twotri());
    REQUIRE(dec.components.size() == 2);
    CHECK(dec.articulations == std::vector<std::string>{"m"});
    CHECK(dec.components[0].edge_count() == 3);
    CHECK(dec.components[1].edge_count() == 3);
    for (const auto& c : dec.components) CHECK(is_biconnected(c));

    auto dec2 = biconnected_components(corpus::triangle_pendant("y"));
    REQUIRE(dec2.components.size() == 2);  // triangle + the bridge
    CHECK(dec2.articulations == std::vector<std::string>{"y"});

    auto dec3 = biconnected_components(corpus::three_loops());
    CHECK(dec3.components.size() == 3);

    // edge sets always partition E
    for (const Graph& g : {corpus::dumb(), corpus::twotri(), corpus::k4(),
                           corpus::triangle_pendant("x"), corpus::three_loops()}) {
        auto d = biconnected_components(g);
        std::set<std::string> all;
        int total = 0;
        for (const auto& c : d.components) {
            total += c.edge_count();
            for (const auto& e : c.edges()) all.insert(e.id);
        }
        CHECK(total == g.edge_count());
        CHECK(static_cast<int>(all.size()) == g.edge_count());
        CHECK(d.articulations == articulation_vertices(g));
    }
}

TEST_CASE("split at an articulation vertex") {
    auto sp = split_at_articulation(corpus::twotri(), "m");
    CHECK(sp.first.edge_count() + sp.second.edge_count() == 6);
    CHECK(sp.first.has_vertex("m"));
    CHECK(sp.second.has_vertex("m"));
    CHECK(sp.first.edge_count() == 3);
    CHECK(sp.first.has_edge("t1"));  // piece holding the least edge id comes first
    CHECK_THROWS_AS(split_at_articulation(corpus::triangle(), "x"), std::invalid_argument);

    // loops at the articulation vertex are pieces of their own
    auto sp3 = split_at_articulation(corpus::three_loops(), "u");
    CHECK(sp3.first.edge_count() == 1);
    CHECK(sp3.first.has_edge("l1"));
    CHECK(sp3.second.edge_count() == 2);
}

TEST_CASE("weak cyclic equivalence") {
    auto identity = [](const Graph& g) {
        std::map<std::string, std::string> f;
        for (const auto& e : nondisconnecting_edges(g)) f[e] = e;
        return f;
    };
    Graph t = corpus::triangle();
    CHECK(is_weak_cyclic_equivalence(t, t, identity(t)));
    CHECK(is_weak_cyclic_equivalence(corpus::whitney1(), corpus::whitney2(),
                                     identity(corpus::whitney1())));
    // swapping a parallel edge with a path edge breaks tree complements
    Graph d = corpus::dumb();
    std::map<std::string, std::string> bad{{"e1", "p1"}, {"p1", "e1"}, {"e2", "e2"}, {"p2", "p2"}};
    CHECK_FALSE(is_weak_cyclic_equivalence(d, d, bad));
    // wrong sizes
    CHECK_FALSE(is_weak_cyclic_equivalence(t, corpus::theta(), identity(t)));
}

TEST_CASE("graph isomorphism") {
    Graph t = corpus::triangle();
    Graph t2({{"n1", 0}, {"n2", 0}, {"n3", 0}},
             {{"q1", {"n2", "n1"}}, {"q2", {"n3", "n2"}}, {"q3", {"n1", "n3"}}});
    auto iso = graph_isomorphic(t, t2);
    REQUIRE(iso.has_value());
    // witness really is an isomorphism
    for (const auto& e : t.edges()) {
        const auto& img = t2.edge(iso->edge_map.at(e.id));
        std::set<std::string> want{iso->vertex_map.at(e.ends[0]), iso->vertex_map.at(e.ends[1])};
        std::set<std::string> got{img.ends[0], img.ends[1]};
        CHECK(want == got);
    }

    CHECK_FALSE(graph_isomorphic(corpus::whitney1(), corpus::whitney2()).has_value());
    CHECK_FALSE(graph_isomorphic(corpus::theta(), corpus::triangle()).has_value());
    CHECK(graph_isomorphic(corpus::dumb(), corpus::dumb()).has_value());

    // weights count
    Graph w1({{"x", 1}, {"y", 0}}, {{"e", {"x", "y"}}});
    Graph w2({{"x", 0}, {"y", 1}}, {{"e", {"x", "y"}}});
    CHECK(graph_isomorphic(w1, w2).has_value());
    Graph w3({{"x", 0}, {"y", 0}}, {{"e", {"x", "y"}}});
    CHECK_FALSE(graph_isomorphic(w1, w3).has_value());

    // labeled variant distinguishes edge attributes
    Graph c1 = corpus::twocyc(), c2 = corpus::twocyc();
    std::map<std::string, std::string> l35{{"e1", "3"}, {"e2", "5"}};
    std::map<std::string, std::string> l53{{"e1", "5"}, {"e2", "3"}};
    std::map<std::string, std::string> l34{{"e1", "3"}, {"e2", "4"}};
    CHECK(graph_isomorphic_labeled(c1, c2, l35, l53).has_value());
    auto li = graph_isomorphic_labeled(c1, c2, l35, l53);
    CHECK(li->edge_map.at("e1") == "e2");  // the 3 must go to the 3
    CHECK_FALSE(graph_isomorphic_labeled(c1, c2, l35, l34).has_value());
}

TEST_CASE("purify") {
    Graph wt({{"x", 2}, {"y", 1}}, {{"e", {"x", "y"}}});
    Graph p = purify(wt);
    CHECK(p.total_weight() == 0);
    CHECK(p.edge_count() == 1);
    CHECK(genus(p) == 0);
}
