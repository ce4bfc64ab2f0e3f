#include "qdp/torelli.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qdp/errors.hpp"

namespace qdp {

namespace {

std::string render_divisor(const Divisor& d) {
    std::string out;
    for (const auto& [v, k] : d.values()) {
        if (!out.empty()) out += ' ';
        out += v + ':' + std::to_string(k);
    }
    return out;
}

std::string render_edge_set(const std::vector<std::string>& edges) {
    std::string out = "{";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) out += ',';
        out += edges[i];
    }
    return out + "}";
}

std::string render_element(const PseudoDivisor& pd) {
    return render_edge_set(pd.edges) + " | " + render_divisor(pd.divisor);
}

std::vector<std::string> edge_difference(const std::vector<std::string>& big,
                                         const std::vector<std::string>& small) {
    std::vector<std::string> out;
    std::set_difference(big.begin(), big.end(), small.begin(), small.end(),
                        std::back_inserter(out));
    return out;
}

std::vector<std::string> edge_union(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// (parent, child) with rank gap exactly 1; in a QD poset that is a cover.
bool is_cover(const QDPoset& p, int parent, int child) {
    return p.rank(parent) == p.rank(child) + 1 && p.leq(child, parent);
}

void validate_poset_iso(const PosetIso& f, const QDPoset& p, const QDPoset& q,
                        const char* who) {
    const int n = p.size();
    if (q.size() != n || static_cast<int>(f.forward.size()) != n ||
        static_cast<int>(f.inverse.size()) != n)
        throw std::invalid_argument(std::string(who) + ": isomorphism has the wrong shape");
    for (int i = 0; i < n; ++i) {
        const int j = f.forward[i];
        if (j < 0 || j >= n || f.inverse[j] != i)
            throw std::invalid_argument(std::string(who) + ": map is not a bijection");
    }
    for (const auto& c : p.covers())
        if (!q.leq(f.forward[c.child], f.forward[c.parent]))
            throw std::invalid_argument(std::string(who) + ": map does not preserve order");
    for (const auto& c : q.covers())
        if (!p.leq(f.inverse[c.child], f.inverse[c.parent]))
            throw std::invalid_argument(std::string(who) + ": inverse does not preserve order");
}

// The common eight-element construction behind r_family and locate_R_image,
// with the roles of s and t fixed by the caller.
std::array<PseudoDivisor, 8> r_family_at(const std::string& e1, const std::string& e2,
                                         const Divisor& D, const std::string& s,
                                         const std::string& t) {
    const std::string ve1 = "v@" + e1, ve2 = "v@" + e2;
    Divisor b1 = D, b2 = D, b3 = D, b4 = D, g1 = D, g2 = D, g3 = D;
    b1.erase(ve2), b1.add(s, 1);
    b2.erase(ve1), b2.add(s, 1);
    b3.erase(ve2), b3.add(t, 1);
    b4.erase(ve1), b4.add(t, 1);
    for (Divisor* d : {&g1, &g2, &g3}) d->erase(ve1), d->erase(ve2);
    g1.add(s, 2);
    g2.add(s, 1), g2.add(t, 1);
    g3.add(t, 2);
    return {PseudoDivisor({e1, e2}, D),   PseudoDivisor({e1}, b1),
            PseudoDivisor({e2}, b2),      PseudoDivisor({e1}, b3),
            PseudoDivisor({e2}, b4),      PseudoDivisor({}, g1),
            PseudoDivisor({}, g2),        PseudoDivisor({}, g3)};
}

// All ways to drop one edge `over` from pd, as bare pushforward divisors.
std::vector<PseudoDivisor> drops_over(const Graph& g, const PseudoDivisor& pd,
                                      const std::string& over) {
    std::vector<PseudoDivisor> out;
    for (const auto& s : elementary_specializations(g, pd))
        if (s.edge == over) out.push_back(s.target);
    return out;
}

}  // namespace

AbstractPoset model_poset_P() {
    return abstract_from_covers(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

AbstractPoset model_poset_R() {
    return abstract_from_covers(8, {{0, 1},
                                    {0, 2},
                                    {0, 3},
                                    {0, 4},
                                    {1, 5},
                                    {1, 6},
                                    {2, 5},
                                    {2, 6},
                                    {3, 6},
                                    {3, 7},
                                    {4, 6},
                                    {4, 7}});
}

PImageWitness classify_P_image(const QDPoset& p, const std::array<int, 4>& mapping) {
    for (int i : mapping)
        if (i < 0 || i >= p.size())
            throw std::invalid_argument("classify_P_image: element index out of range");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (mapping[i] == mapping[j])
                throw std::invalid_argument("classify_P_image: mapping is not injective");
    for (int top : {0, 1})
        for (int bot : {2, 3})
            if (!is_cover(p, mapping[top], mapping[bot]))
                throw std::invalid_argument(
                    "classify_P_image: mapping does not preserve cover relations");

    const PseudoDivisor& A = p.elements()[mapping[0]];
    const PseudoDivisor& B = p.elements()[mapping[1]];
    const PseudoDivisor& C = p.elements()[mapping[2]];
    const PseudoDivisor& Dm = p.elements()[mapping[3]];
    const Graph& g = p.graph();

    const char* claim = "images of the model poset P come from parallel edges";
    auto fail = [&](const std::string& reason) -> FalsifierError {
        return FalsifierError(claim, {{"alpha", render_element(A)},
                                      {"beta", render_element(B)},
                                      {"gamma", render_element(C)},
                                      {"delta", render_element(Dm)},
                                      {"reason", reason}});
    };

    PImageWitness w;
    if (C.edges == Dm.edges) {
        if (A.edges == B.edges) throw fail("top and bottom edge sets both coincide");
        w.shape = 1;
        w.base_edges = C.edges;
        auto d1 = edge_difference(A.edges, w.base_edges);
        auto d2 = edge_difference(B.edges, w.base_edges);
        if (d1.size() != 1 || d2.size() != 1)
            throw fail("tops do not extend the common bottom edge set by one edge");
        w.e1 = d1.front(), w.e2 = d2.front();
        if (!are_parallel(g, w.e1, w.e2)) throw fail("the two added edges are not parallel");
        w.s = g.edge(w.e1).ends[0], w.t = g.edge(w.e1).ends[1];

        w.base_divisor = A.divisor;
        w.base_divisor.erase("v@" + w.e1);
        Divisor other = B.divisor;
        other.erase("v@" + w.e2);
        if (other != w.base_divisor)
            throw fail("the two tops disagree away from the parallel pair");

        Divisor ds = w.base_divisor, dt = w.base_divisor;
        ds.add(w.s, 1), dt.add(w.t, 1);
        const bool straight = C.divisor == ds && Dm.divisor == dt;
        const bool crossed = C.divisor == dt && Dm.divisor == ds;
        if (!straight && !crossed)
            throw fail("the bottoms are not the divisors pushed into the two ends");
    } else {
        if (A.edges != B.edges) throw fail("neither family shape matches the image");
        w.shape = 2;
        std::vector<std::string> common;
        std::set_intersection(C.edges.begin(), C.edges.end(), Dm.edges.begin(),
                              Dm.edges.end(), std::back_inserter(common));
        w.base_edges = common;
        auto d1 = edge_difference(C.edges, common);
        auto d2 = edge_difference(Dm.edges, common);
        if (d1.size() != 1 || d2.size() != 1)
            throw fail("bottoms do not extend a common edge set by one edge each");
        w.e1 = d1.front(), w.e2 = d2.front();
        if (edge_union(common, {w.e1, w.e2}) != A.edges)
            throw fail("tops do not sit on the union of the bottom edge sets");
        if (!are_parallel(g, w.e1, w.e2)) throw fail("the two added edges are not parallel");
        w.s = g.edge(w.e1).ends[0], w.t = g.edge(w.e1).ends[1];

        w.base_divisor = C.divisor;
        w.base_divisor.erase("v@" + w.e1);
        Divisor other = Dm.divisor;
        other.erase("v@" + w.e2);
        if (other != w.base_divisor)
            throw fail("the two bottoms disagree away from the parallel pair");

        Divisor xs = w.base_divisor, xt = w.base_divisor;
        for (Divisor* d : {&xs, &xt}) d->set("v@" + w.e1, 1), d->set("v@" + w.e2, 1);
        xs.add(w.s, -1), xt.add(w.t, -1);
        const bool straight = A.divisor == xt && B.divisor == xs;
        const bool crossed = A.divisor == xs && B.divisor == xt;
        if (!straight && !crossed)
            throw fail("the tops are not the divisors pulled off the two ends");
    }
    return w;
}

std::array<PseudoDivisor, 8> r_family(const Graph& g, const std::string& e1,
                                      const std::string& e2, const Divisor& D) {
    validate_pseudo_divisor(g, PseudoDivisor({e1, e2}, D));
    if (!are_parallel(g, e1, e2))
        throw std::invalid_argument("r_family requires a pair of parallel edges");
    return r_family_at(e1, e2, D, g.edge(e1).ends[0], g.edge(e1).ends[1]);
}

RImageWitness locate_R_image(const QDPoset& p, const std::array<int, 8>& mapping) {
    static const int model_rank[8] = {2, 1, 1, 1, 1, 0, 0, 0};
    static const int model_covers[12][2] = {{0, 1}, {0, 2}, {0, 3}, {0, 4},
                                            {1, 5}, {1, 6}, {2, 5}, {2, 6},
                                            {3, 6}, {3, 7}, {4, 6}, {4, 7}};
    for (int i : mapping)
        if (i < 0 || i >= p.size())
            throw std::invalid_argument("locate_R_image: element index out of range");
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            if (mapping[i] == mapping[j])
                throw std::invalid_argument("locate_R_image: mapping is not injective");
    for (int i = 0; i < 8; ++i)
        if (p.rank(mapping[i]) != model_rank[i])
            throw std::invalid_argument("locate_R_image: mapping does not preserve rank");
    for (const auto& c : model_covers)
        if (!p.leq(mapping[c[1]], mapping[c[0]]))
            throw std::invalid_argument("locate_R_image: mapping does not preserve order");

    const Graph& g = p.graph();
    const PseudoDivisor& top = p.elements()[mapping[0]];
    const char* claim = "images of the model poset R come from parallel pairs";
    auto fail = [&](const std::string& reason) -> FalsifierError {
        std::map<std::string, std::string> inst{{"alpha1", render_element(top)},
                                                {"reason", reason}};
        static const char* slot[8] = {"alpha1", "beta1", "beta2", "beta3",
                                      "beta4",  "gamma1", "gamma2", "gamma3"};
        for (int i = 1; i < 8; ++i) inst[slot[i]] = render_element(p.elements()[mapping[i]]);
        return FalsifierError(claim, inst);
    };

    RImageWitness w;
    if (top.edges.size() != 2) throw fail("the top does not carry a two-edge set");
    if (!are_parallel(g, top.edges[0], top.edges[1]))
        throw fail("the top edges are not parallel");
    w.divisor = top.divisor;

    // Each middle image must differ from the top exactly by dropping the
    // exceptional vertex of the other top edge and raising one end.  The
    // abstract symmetries of the model permute which of the two edges a
    // slot carries, so the edge is read off the slot rather than assumed.
    auto pushed_end = [&](int model_slot) {
        const PseudoDivisor& el = p.elements()[mapping[model_slot]];
        const std::string& carried = el.edges.front();
        if (carried != top.edges[0] && carried != top.edges[1])
            throw fail("a middle edge set is not one of the top edges");
        const std::string dropped =
            carried == top.edges[0] ? top.edges[1] : top.edges[0];
        Divisor base = w.divisor;
        base.erase("v@" + dropped);
        std::string end;
        for (const auto& [v, k] : el.divisor.values()) {
            const int delta = k - base.value(v);
            if (delta == 0) continue;
            if (delta != 1 || !end.empty() || !g.has_vertex(v))
                throw fail("a middle divisor is not an end-push of the top");
            end = v;
        }
        if (end.empty()) throw fail("a middle divisor is not an end-push of the top");
        return std::make_pair(carried, end);
    };
    const auto [x1, s1] = pushed_end(1);
    const auto [x2, s2] = pushed_end(2);
    const auto [x3, t3] = pushed_end(3);
    const auto [x4, t4] = pushed_end(4);
    w.e1 = x1;
    w.e2 = x1 == top.edges[0] ? top.edges[1] : top.edges[0];
    w.s = s1;
    w.t = t3;
    if (s2 != w.s || x2 != w.e2) throw fail("beta2 does not push the partner edge into s");
    if (t4 != w.t || x4 != (x3 == w.e1 ? w.e2 : w.e1))
        throw fail("beta4 does not push the partner of beta3 into t");
    if (w.s == w.t) throw fail("the two pushes land in the same end");
    const auto& ends = g.edge(w.e1).ends;
    if (!((w.s == ends[0] && w.t == ends[1]) || (w.s == ends[1] && w.t == ends[0])))
        throw fail("the pushed vertices are not the ends of the parallel pair");

    Divisor g1 = w.divisor, g2 = w.divisor, g3 = w.divisor;
    for (Divisor* d : {&g1, &g2, &g3}) d->erase("v@" + w.e1), d->erase("v@" + w.e2);
    g1.add(w.s, 2);
    g2.add(w.s, 1), g2.add(w.t, 1);
    g3.add(w.t, 2);
    static const char* slot[3] = {"gamma1", "gamma2", "gamma3"};
    const Divisor* expect[3] = {&g1, &g2, &g3};
    for (int i = 0; i < 3; ++i)
        if (p.elements()[mapping[5 + i]].divisor != *expect[i])
            throw fail(std::string(slot[i]) + " is not the prescribed bottom " +
                       render_divisor(*expect[i]));
    return w;
}

bool check_parallel_lemma(const Graph& g, const PseudoDivisor& pd, const std::string& e,
                          const std::string& e0) {
    validate_pseudo_divisor(g, pd);
    if (!std::binary_search(pd.edges.begin(), pd.edges.end(), e) ||
        !std::binary_search(pd.edges.begin(), pd.edges.end(), e0))
        throw std::invalid_argument("check_parallel_lemma: both edges must lie in the edge set");
    if (e == e0) throw std::invalid_argument("check_parallel_lemma: the edges must differ");
    if (g.is_loop(e)) throw std::invalid_argument("check_parallel_lemma: e must not be a loop");

    const auto& ends = g.edge(e).ends;
    auto target = [&](const std::string& end) {
        Divisor d = pd.divisor;
        d.erase("v@" + e);
        d.add(end, 1);
        return PseudoDivisor(edge_difference(pd.edges, {e}), d);
    };
    const auto below_s = drops_over(g, target(ends[0]), e0);
    const auto below_t = drops_over(g, target(ends[1]), e0);

    bool found = false;
    for (const auto& a : below_s)
        for (const auto& b : below_t)
            if (a == b) found = true;
    if (found && !are_parallel(g, e, e0))
        throw FalsifierError("a common lower bound forces parallel edges",
                             {{"element", render_element(pd)},
                              {"e", e},
                              {"e0", e0}});
    return found;
}

EdgeMap induce_edge_map(const PosetIso& f, const QDPoset& p, const QDPoset& q) {
    validate_poset_iso(f, p, q, "induce_edge_map");
    const Graph& g = p.graph();
    const Graph& h = q.graph();
    if (!bridges(g).empty() || !bridges(h).empty())
        throw std::invalid_argument("induce_edge_map requires bridgeless graphs");

    EdgeMap out;
    out.special_source = special_pairs(g);
    out.special_target = special_pairs(h);
    std::set<std::string> special_edges;
    for (const auto& [a, b] : out.special_source) special_edges.insert(a), special_edges.insert(b);

    // Image edge sets seen per single edge and per special pair.
    std::map<std::string, std::set<std::string>> single_images;
    std::map<std::vector<std::string>, std::set<std::vector<std::string>>> pair_images;
    std::set<std::vector<std::string>> special_sets;
    for (const auto& [a, b] : out.special_source) special_sets.insert({a, b});

    for (int i = 0; i < p.size(); ++i) {
        const auto& E = p.elements()[i].edges;
        const auto& img = q.elements()[f.forward[i]].edges;
        if (E.size() != img.size())
            throw std::invalid_argument("induce_edge_map: map does not preserve rank");
        if (E.size() == 1 && !special_edges.count(E.front()))
            single_images[E.front()].insert(img.front());
        else if (E.size() == 2 && special_sets.count(E))
            pair_images[E].insert(img);
    }

    const char* independence = "the induced edge image is independent of the divisor";
    const char* equivalence = "the induced edge map is a weak cyclic equivalence";
    auto render_images = [](const std::set<std::vector<std::string>>& sets) {
        std::string out_;
        for (const auto& s : sets) out_ += (out_.empty() ? "" : " ") + render_edge_set(s);
        return out_;
    };

    for (const auto& e : nondisconnecting_edges(g)) {
        if (special_edges.count(e)) continue;
        const auto& seen = single_images[e];
        if (seen.size() != 1)
            throw FalsifierError(independence,
                                 {{"edge", e},
                                  {"images", [&] {
                                       std::string s;
                                       for (const auto& x : seen) s += (s.empty() ? "" : " ") + x;
                                       return s.empty() ? std::string("none") : s;
                                   }()}});
        out.forward[e] = *seen.begin();
    }
    for (const auto& [a, b] : out.special_source) {
        const auto& seen = pair_images[{a, b}];
        if (seen.size() != 1)
            throw FalsifierError(independence, {{"pair", a + "," + b},
                                                {"images", render_images(seen)}});
        const auto& img = *seen.begin();
        out.forward[a] = img[0];
        out.forward[b] = img[1];
        if (!std::binary_search(out.special_target.begin(), out.special_target.end(),
                                std::make_pair(img[0], img[1])))
            throw FalsifierError(equivalence, {{"pair", a + "," + b},
                                               {"image", render_edge_set(img)},
                                               {"reason", "image is not a special pair"}});
    }

    std::set<std::string> image_edges;
    for (const auto& [e, e2] : out.forward) image_edges.insert(e2);
    if (static_cast<int>(out.forward.size()) != g.edge_count() ||
        static_cast<int>(image_edges.size()) != h.edge_count() ||
        out.special_source.size() != out.special_target.size())
        throw FalsifierError(equivalence,
                             {{"reason", "edge counts or special-pair counts disagree"},
                              {"mapped", std::to_string(out.forward.size())},
                              {"distinct images", std::to_string(image_edges.size())}});
    if (!is_weak_cyclic_equivalence(g, h, out.forward)) {
        std::map<std::string, std::string> inst{{"reason", "spanning structure not preserved"}};
        for (const auto& [e, e2] : out.forward) inst["f(" + e + ")"] = e2;
        throw FalsifierError(equivalence, inst);
    }
    return out;
}

PosetIso normalize_iso(const PosetIso& f, const EdgeMap& fE, const QDPoset& p,
                       const QDPoset& q) {
    validate_poset_iso(f, p, q, "normalize_iso");
    const Graph& h = q.graph();
    for (const auto& e : p.graph().edges())
        if (!fE.forward.count(e.id))
            throw std::invalid_argument("normalize_iso: edge map does not cover the source");

    PosetIso out;
    out.forward.assign(p.size(), -1);
    out.inverse.assign(q.size(), -1);
    for (int i = 0; i < p.size(); ++i) {
        const PseudoDivisor& img = q.elements()[f.forward[i]];
        std::vector<std::string> mapped;
        for (const auto& e : p.elements()[i].edges) mapped.push_back(fE.forward.at(e));

        Divisor d;
        for (const auto& v : h.vertices()) d.set(v.id, img.divisor.value(v.id));
        for (const auto& e : mapped) d.set("v@" + e, 1);
        PseudoDivisor aligned(mapped, d);

        if (!equivalent_pseudo_divisors(h, img, aligned))
            throw FalsifierError("images agree with the induced edge map up to special swaps",
                                 {{"element", render_element(p.elements()[i])},
                                  {"image", render_element(img)},
                                  {"aligned", render_element(aligned)}});
        auto j = q.find(aligned);
        if (!j)
            throw FalsifierError("images agree with the induced edge map up to special swaps",
                                 {{"element", render_element(p.elements()[i])},
                                  {"aligned", render_element(aligned)},
                                  {"reason", "aligned element is not quasistable"}});
        if (out.inverse[*j] != -1)
            throw FalsifierError("the normalized map is an order isomorphism",
                                 {{"reason", "two elements align to the same image"},
                                  {"image", render_element(aligned)}});
        out.forward[i] = *j;
        out.inverse[*j] = i;
    }
    for (const auto& c : p.covers())
        if (!q.leq(out.forward[c.child], out.forward[c.parent]))
            throw FalsifierError("the normalized map is an order isomorphism",
                                 {{"parent", render_element(p.elements()[c.parent])},
                                  {"child", render_element(p.elements()[c.child])},
                                  {"reason", "a cover is lost"}});
    for (const auto& c : q.covers())
        if (!p.leq(out.inverse[c.child], out.inverse[c.parent]))
            throw FalsifierError("the normalized map is an order isomorphism",
                                 {{"parent", render_element(q.elements()[c.parent])},
                                  {"child", render_element(q.elements()[c.child])},
                                  {"reason", "a cover is lost by the inverse"}});
    return out;
}

VertexStar recover_vertex_star(const QDPoset& p, const std::string& v1) {
    const Graph& g = p.graph();
    g.vertex_index(v1);  // throws for unknown ids
    for (const auto& v : g.vertices())
        if (v.weight != 0)
            throw std::invalid_argument("recover_vertex_star requires a pure graph");
    if (is_articulation(g, v1))
        throw std::invalid_argument("recover_vertex_star: v1 must not be an articulation vertex");

    VertexStar star;
    if (g.vertex_count() > 1)
        star.E1 = maximally_nondisconnecting_sets(vertex_deleted(g, v1)).front();

    const int marked = g.valence(v1) - (v1 == p.basepoint() ? 2 : 1);
    std::vector<int> hits;
    for (int i = 0; i < p.size(); ++i)
        if (p.elements()[i].edges == star.E1 && p.elements()[i].divisor.value(v1) == marked)
            hits.push_back(i);
    if (hits.size() != 1)
        throw FalsifierError("the vertex star has a unique marking divisor",
                             {{"vertex", v1},
                              {"frame", render_edge_set(star.E1)},
                              {"marked value", std::to_string(marked)},
                              {"matches", std::to_string(hits.size())}});
    star.base_index = hits.front();

    const auto at_v1 = g.incident_edges(v1);
    const int k = static_cast<int>(at_v1.size());
    std::vector<std::vector<std::string>> subsets;
    for (int mask = 0; mask + 1 < (1 << k); ++mask) {
        std::vector<std::string> S;
        for (int b = 0; b < k; ++b)
            if (mask & (1 << b)) S.push_back(at_v1[b]);
        subsets.push_back(std::move(S));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (auto& S : subsets) {
        const auto extended = edge_union(star.E1, S);
        std::vector<int> found;
        for (int j = 0; j < p.size(); ++j)
            if (p.elements()[j].edges == extended && p.leq(star.base_index, j))
                found.push_back(j);
        if (found.size() != 1)
            throw FalsifierError("vertex star extensions are unique",
                                 {{"vertex", v1},
                                  {"subset", render_edge_set(S)},
                                  {"base", render_element(p.elements()[star.base_index])},
                                  {"matches", std::to_string(found.size())}});
        star.extensions.emplace_back(std::move(S), found.front());
    }
    return star;
}

BondProbe bond_vertex_test(const QDPoset& p, int base_index,
                           const std::vector<std::string>& bond) {
    const Graph& g = p.graph();
    if (base_index < 0 || base_index >= p.size())
        throw std::invalid_argument("bond_vertex_test: base index out of range");
    std::vector<std::string> sorted_bond = bond;
    std::sort(sorted_bond.begin(), sorted_bond.end());
    if (sorted_bond.empty() ||
        std::adjacent_find(sorted_bond.begin(), sorted_bond.end()) != sorted_bond.end())
        throw std::invalid_argument("bond_vertex_test: malformed bond candidate");
    for (const auto& e : sorted_bond) g.edge_index(e);
    const auto bonds = enumerate_bonds(g);
    if (std::find(bonds.begin(), bonds.end(), sorted_bond) == bonds.end())
        throw std::invalid_argument("bond_vertex_test: candidate is not a bond");

    const auto& E = p.elements()[base_index].edges;
    for (const auto& e : sorted_bond)
        if (std::binary_search(E.begin(), E.end(), e))
            throw std::invalid_argument("bond_vertex_test: bond meets the base edge set");

    const int k = static_cast<int>(sorted_bond.size());
    for (int mask = 0; mask + 1 < (1 << k); ++mask) {
        std::vector<std::string> S;
        for (int b = 0; b < k; ++b)
            if (mask & (1 << b)) S.push_back(sorted_bond[b]);
        const auto extended = edge_union(E, S);
        int count = 0;
        for (int j = 0; j < p.size(); ++j)
            if (p.elements()[j].edges == extended && p.leq(base_index, j)) ++count;
        if (count != 1) {
            BondProbe probe;
            probe.status = BondProbe::Status::hypothesis_not_satisfied;
            probe.failed_S = std::move(S);
            probe.failed_count = count;
            return probe;
        }
    }

    std::vector<std::string> ids;
    for (const auto& vd : g.vertices()) ids.push_back(vd.id);
    std::sort(ids.begin(), ids.end());
    for (const auto& v : ids) {
        bool incident_to_all = true;
        for (const auto& e : sorted_bond) {
            const auto& ends = g.edge(e).ends;
            if (ends[0] != v && ends[1] != v) incident_to_all = false;
        }
        if (incident_to_all) {
            BondProbe probe;
            probe.status = BondProbe::Status::vertex_found;
            probe.vertex = v;
            return probe;
        }
    }
    throw FalsifierError("unique extensions over a bond force a common vertex",
                         {{"bond", render_edge_set(sorted_bond)},
                          {"base", render_element(p.elements()[base_index])}});
}

GraphIso reconstruct_biconnected(const PosetIso& f, const QDPoset& p, const QDPoset& q) {
    const Graph& g = p.graph();
    const Graph& h = q.graph();
    for (const Graph* gr : {&g, &h}) {
        for (const auto& v : gr->vertices())
            if (v.weight != 0)
                throw std::invalid_argument("reconstruct_biconnected requires pure graphs");
        if (!is_biconnected(*gr))
            throw std::invalid_argument("reconstruct_biconnected requires biconnected graphs");
    }
    validate_poset_iso(f, p, q, "reconstruct_biconnected");

    const char* claim = "isomorphic posets of biconnected graphs come from isomorphic graphs";
    auto shape = [](const Graph& gr) {
        return std::to_string(gr.vertex_count()) + "v " + std::to_string(gr.edge_count()) + "e";
    };

    // With at most two vertices the edge count pins the graph down.
    if (g.vertex_count() <= 2 || h.vertex_count() <= 2) {
        auto iso = graph_isomorphic(g, h);
        if (!iso)
            throw FalsifierError(claim, {{"left", shape(g)}, {"right", shape(h)}});
        return *iso;
    }

    const EdgeMap fE = induce_edge_map(f, p, q);
    const PosetIso hf = normalize_iso(f, fE, p, q);
    const auto bonds_h = enumerate_bonds(h);

    GraphIso iso;
    for (const auto& vd : g.vertices()) {
        const VertexStar star = recover_vertex_star(p, vd.id);
        std::vector<std::string> bond_img;
        for (const auto& e : g.incident_edges(vd.id)) bond_img.push_back(fE.forward.at(e));
        std::sort(bond_img.begin(), bond_img.end());
        if (std::find(bonds_h.begin(), bonds_h.end(), bond_img) == bonds_h.end())
            throw FalsifierError("a weak cyclic equivalence carries bonds to bonds",
                                 {{"vertex", vd.id}, {"image", render_edge_set(bond_img)}});

        const BondProbe probe = bond_vertex_test(q, hf.forward[star.base_index], bond_img);
        if (probe.status != BondProbe::Status::vertex_found)
            throw FalsifierError("isomorphisms transfer unique star extensions",
                                 {{"vertex", vd.id},
                                  {"subset", render_edge_set(probe.failed_S)},
                                  {"matches", std::to_string(probe.failed_count)}});

        std::vector<std::string> candidates;
        for (const auto& vh : h.vertices())
            if (h.incident_edges(vh.id) == bond_img) candidates.push_back(vh.id);
        if (candidates.size() != 1)
            throw FalsifierError(claim, {{"vertex", vd.id},
                                         {"image star", render_edge_set(bond_img)},
                                         {"candidates", std::to_string(candidates.size())}});
        iso.vertex_map[vd.id] = candidates.front();
    }

    std::set<std::string> hit;
    for (const auto& [v, vh] : iso.vertex_map) hit.insert(vh);
    if (static_cast<int>(hit.size()) != h.vertex_count())
        throw FalsifierError(claim, {{"reason", "vertex map is not a bijection"},
                                     {"left", shape(g)},
                                     {"right", shape(h)}});

    iso.edge_map = fE.forward;
    for (const auto& ed : g.edges()) {
        const auto& img = h.edge(iso.edge_map.at(ed.id));
        const std::string a = iso.vertex_map.at(ed.ends[0]);
        const std::string b = iso.vertex_map.at(ed.ends[1]);
        const bool matches = (img.ends[0] == a && img.ends[1] == b) ||
                             (img.ends[0] == b && img.ends[1] == a);
        if (!matches)
            throw FalsifierError(claim, {{"edge", ed.id},
                                         {"image", img.id},
                                         {"reason", "edge image misses the mapped ends"}});
    }
    return iso;
}

namespace {

// Forget weights, then contract every bridge.
Graph reduced_form(const Graph& g) {
    Graph pure = purify(g);
    const auto br = bridges(pure);
    if (br.empty()) return pure;
    return contract_edges(pure, br).target;
}

bool components_multiset_match(const std::vector<Graph>& a, const std::vector<Graph>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& ga : a) {
        bool matched = false;
        for (std::size_t j = 0; j < b.size() && !matched; ++j) {
            if (used[j]) continue;
            if (graph_isomorphic(ga, b[j])) used[j] = matched = true;
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace

TorelliVerdict torelli_compare(const Graph& g, const Graph& h) {
    const Graph a = reduced_form(g);
    const Graph b = reduced_form(h);
    const QDPoset pa = enumerate_qd(a, a.vertices().front().id, canonical_polarization(a));
    const QDPoset pb = enumerate_qd(b, b.vertices().front().id, canonical_polarization(b));
    const auto ca = biconnected_components(a).components;
    const auto cb = biconnected_components(b).components;

    TorelliVerdict verdict;
    verdict.poset_isomorphic = poset_isomorphism(pa, pb).has_value();
    verdict.components_match = components_multiset_match(ca, cb);
    verdict.agree = verdict.poset_isomorphic == verdict.components_match;
    verdict.witness = {
        {"left poset", std::to_string(pa.size())},
        {"right poset", std::to_string(pb.size())},
        {"left components", std::to_string(ca.size())},
        {"right components", std::to_string(cb.size())},
        {"left reduced", std::to_string(a.vertex_count()) + "v " +
                             std::to_string(a.edge_count()) + "e"},
        {"right reduced", std::to_string(b.vertex_count()) + "v " +
                              std::to_string(b.edge_count()) + "e"},
    };
    return verdict;
}

ModelImageSweep sweep_model_images(const QDPoset& p) {
    ModelImageSweep sweep;

    // P: every unordered pair of same-rank elements with two or more common
    // parents, crossed with every unordered pair of those parents.
    for (int c = 0; c < p.size(); ++c) {
        for (int d = c + 1; d < p.size(); ++d) {
            if (p.rank(c) != p.rank(d)) continue;
            const auto& pc = p.parents(c);
            const auto& pd = p.parents(d);
            std::vector<int> common;
            std::set_intersection(pc.begin(), pc.end(), pd.begin(), pd.end(),
                                  std::back_inserter(common));
            for (std::size_t i = 0; i < common.size(); ++i)
                for (std::size_t j = i + 1; j < common.size(); ++j) {
                    classify_P_image(p, {common[i], common[j], c, d});
                    ++sweep.p_images;
                }
        }
    }

    // R: every rank-2 top, every ordered choice of four distinct children
    // b1..b4, and every triple (g1, g2, g3) of pairwise distinct
    // grandchildren with g1 under b1 and b2, g2 under all four, g3 under
    // b3 and b4.
    auto under_both = [&](int x, int u, int v) {
        const auto& pu = p.parents(x);
        return std::find(pu.begin(), pu.end(), u) != pu.end() &&
               std::find(pu.begin(), pu.end(), v) != pu.end();
    };
    for (int a = 0; a < p.size(); ++a) {
        if (p.rank(a) != 2) continue;
        const auto& ch = p.children(a);
        for (int b1 : ch)
            for (int b2 : ch)
                for (int b3 : ch)
                    for (int b4 : ch) {
                        if (b1 == b2 || b1 == b3 || b1 == b4 || b2 == b3 ||
                            b2 == b4 || b3 == b4)
                            continue;
                        for (int g1 : p.children(b1)) {
                            if (!under_both(g1, b1, b2)) continue;
                            for (int g3 : p.children(b3)) {
                                if (g3 == g1 || !under_both(g3, b3, b4)) continue;
                                for (int g2 : p.children(b1)) {
                                    if (g2 == g1 || g2 == g3) continue;
                                    if (!under_both(g2, b1, b2) ||
                                        !under_both(g2, b3, b4))
                                        continue;
                                    locate_R_image(p, {a, b1, b2, b3, b4, g1, g2, g3});
                                    ++sweep.r_images;
                                }
                            }
                        }
                    }
    }
    return sweep;
}

}  // namespace qdp
