#include "qdp/divisor.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "bits.hpp"
#include "qdp/errors.hpp"

namespace qdp {

PseudoDivisor::PseudoDivisor(std::vector<std::string> edges_, Divisor divisor_)
    : edges(std::move(edges_)), divisor(std::move(divisor_)) {
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("pseudo-divisor with duplicate edge");
}

void validate_pseudo_divisor(const Graph& g, const PseudoDivisor& pd) {
    std::set<std::string> expected;
    for (const auto& v : g.vertices()) expected.insert(v.id);
    for (const auto& e : pd.edges) {
        g.edge_index(e);
        expected.insert("v@" + e);
        if (pd.divisor.value("v@" + e) != 1)
            throw std::invalid_argument("pseudo-divisor: value at v@" + e + " must be 1");
    }
    std::set<std::string> got;
    for (const auto& [id, k] : pd.divisor.values()) got.insert(id);
    if (got != expected)
        throw std::invalid_argument("pseudo-divisor: divisor keys must be exactly V(subdivision)");
}

Rat beta(const Graph& carrier, const Divisor& D, const Polarization& mu,
         const std::vector<std::string>& V) {
    auto cut = cut_of(carrier, V);  // validates V along the way
    return Rat(D.sum_over(V)) - mu.sum_over(V) + Rat(static_cast<long long>(cut.size()), 2);
}

Polarization canonical_polarization(const Graph& g) {
    Polarization mu;
    for (const auto& v : g.vertices()) {
        int loops = g.loops_at(v.id);
        int nonloop = g.valence(v.id) - 2 * loops;
        mu.values[v.id] = Rat(v.weight + loops - 1) + Rat(nonloop, 2);
    }
    return mu;
}

InducedPolarizations induced_polarizations(const Graph& g, const Polarization& mu,
                                           const std::vector<std::string>& E0) {
    std::set<std::string> E(E0.begin(), E0.end());
    for (const auto& e : E0) g.edge_index(e);
    InducedPolarizations out;
    for (const auto& v : g.vertices()) out.up.values[v.id] = mu.value(v.id);
    for (const auto& e : E) out.up.values["v@" + e] = Rat(0);
    for (const auto& v : g.vertices()) {
        int val = 0;  // valence of v through E0, loops twice
        for (const auto& e : E) {
            const auto& ed = g.edge(e);
            if (ed.ends[0] == v.id) ++val;
            if (ed.ends[1] == v.id) ++val;
        }
        out.down.values[v.id] = mu.value(v.id) - Rat(val, 2);
    }
    return out;
}

bool is_quasistable(const Graph& g, const std::string& v0, const Polarization& mu,
                    const PseudoDivisor& pd) {
    validate_pseudo_divisor(g, pd);
    g.vertex_index(v0);
    if (Rat(pd.divisor.degree()) != mu.degree()) return false;

    auto sub = subdivide(g, pd.edges);
    const Graph& gE = sub.graph;
    Polarization muE = induced_polarizations(g, mu, pd.edges).up;

    int n = gE.vertex_count();
    auto adj = detail::adjacency_masks(gE);
    std::vector<long long> dval(n);
    std::vector<Rat> mval(n);
    for (int i = 0; i < n; ++i) {
        dval[i] = pd.divisor.value(gE.vertices()[i].id);
        mval[i] = muE.value(gE.vertices()[i].id);
    }
    int m = gE.edge_count();
    std::vector<int> end0(m), end1(m);
    for (int i = 0; i < m; ++i) {
        end0[i] = gE.vertex_index(gE.edges()[i].ends[0]);
        end1[i] = gE.vertex_index(gE.edges()[i].ends[1]);
    }
    int v0i = gE.vertex_index(v0);

    bool ok = true;
    detail::for_each_hemisphere(n, adj, [&](std::uint64_t mask) {
        if (!ok) return;
        Rat b(0);
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) b += Rat(dval[i]) - mval[i];
        long long cut = 0;
        for (int i = 0; i < m; ++i)
            if (((mask >> end0[i]) & 1) != ((mask >> end1[i]) & 1)) ++cut;
        b += Rat(cut, 2);
        if (b < Rat(0)) ok = false;
        else if (b == Rat(0) && !((mask >> v0i) & 1)) ok = false;
    });
    return ok;
}

std::vector<Specialization> elementary_specializations(const Graph& g, const PseudoDivisor& pd) {
    validate_pseudo_divisor(g, pd);
    std::vector<Specialization> out;
    for (const auto& e : pd.edges) {
        const auto& ed = g.edge(e);
        std::vector<std::string> targets{ed.ends[0]};
        if (ed.ends[1] != ed.ends[0]) targets.push_back(ed.ends[1]);
        for (const auto& to : targets) {
            std::vector<std::string> rest;
            for (const auto& f : pd.edges)
                if (f != e) rest.push_back(f);
            Divisor d = pd.divisor;
            d.erase("v@" + e);
            d.add(to, 1);
            out.push_back({e, to, PseudoDivisor(std::move(rest), std::move(d))});
        }
    }
    return out;
}

PseudoDivisor pushforward(const SpecializationMap& m, const PseudoDivisor& pd) {
    // edges of the pseudo-divisor must survive the specialization
    std::map<std::string, std::string> surviving;  // source edge -> target edge
    for (const auto& [tgt, src] : m.edge_section) surviving[src] = tgt;
    std::vector<std::string> Eimg;
    for (const auto& e : pd.edges) {
        auto it = surviving.find(e);
        if (it == surviving.end())
            throw std::invalid_argument("pushforward: edge '" + e + "' is contracted away");
        Eimg.push_back(it->second);
    }
    Divisor d;
    for (const auto& v : m.target.vertices()) d.set(v.id, 0);
    for (const auto& v : m.source.vertices())
        d.add(m.vertex_map.at(v.id), pd.divisor.value(v.id));
    for (const auto& e : Eimg) d.set("v@" + e, 1);
    return PseudoDivisor(std::move(Eimg), std::move(d));
}

Polarization pushforward(const SpecializationMap& m, const Polarization& mu) {
    Polarization out;
    for (const auto& v : m.target.vertices()) out.values[v.id] = Rat(0);
    for (const auto& v : m.source.vertices()) out.values[m.vertex_map.at(v.id)] += mu.value(v.id);
    return out;
}

PseudoDivisor pushforward_checked(const SpecializationMap& m, const std::string& v0,
                                  const Polarization& mu, const PseudoDivisor& pd) {
    PseudoDivisor img = pushforward(m, pd);
    if (is_quasistable(m.source, v0, mu, pd)) {
        Polarization mu2 = pushforward(m, mu);
        const std::string& v02 = m.vertex_map.at(v0);
        if (!is_quasistable(m.target, v02, mu2, img)) {
            std::map<std::string, std::string> inst;
            inst["source_basepoint"] = v0;
            inst["target_basepoint"] = v02;
            std::string es;
            for (const auto& e : pd.edges) es += (es.empty() ? "" : ",") + e;
            inst["edges"] = es;
            throw FalsifierError("pushforward preserves quasistability", inst);
        }
    }
    return img;
}

bool equivalent_pseudo_divisors(const Graph& g, const PseudoDivisor& a, const PseudoDivisor& b) {
    validate_pseudo_divisor(g, a);
    validate_pseudo_divisor(g, b);
    for (const auto& v : g.vertices())
        if (a.divisor.value(v.id) != b.divisor.value(v.id)) return false;

    std::set<std::string> ea(a.edges.begin(), a.edges.end());
    std::set<std::string> eb(b.edges.begin(), b.edges.end());
    std::vector<std::string> only_a, only_b;
    for (const auto& e : ea)
        if (!eb.count(e)) only_a.push_back(e);
    for (const auto& e : eb)
        if (!ea.count(e)) only_b.push_back(e);
    if (only_a.size() != only_b.size()) return false;

    std::map<std::string, std::string> partner;  // special pairs are disjoint
    for (const auto& [p, q] : special_pairs(g)) {
        partner[p] = q;
        partner[q] = p;
    }
    std::set<std::string> need(only_b.begin(), only_b.end());
    for (const auto& e : only_a) {
        auto it = partner.find(e);
        if (it == partner.end() || !need.count(it->second)) return false;
        need.erase(it->second);
    }
    return need.empty();
}

}  // namespace qdp
