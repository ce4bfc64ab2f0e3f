#include "qdp/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bits.hpp"
#include "qdp/errors.hpp"

namespace qdp {

// ---- construction ----------------------------------------------------------

Graph::Graph(std::vector<VertexData> vertices, std::vector<EdgeData> edges)
    : verts_(std::move(vertices)), edges_(std::move(edges)) {
    build(true);
}

Graph::Graph(std::vector<VertexData> vertices, std::vector<EdgeData> edges, allow_disconnected_t)
    : verts_(std::move(vertices)), edges_(std::move(edges)) {
    build(false);
}

void Graph::build(bool require_connected) {
    for (int i = 0; i < static_cast<int>(verts_.size()); ++i) {
        const auto& v = verts_[i];
        if (v.id.empty()) throw std::invalid_argument("vertex with empty id");
        if (v.weight < 0) throw std::invalid_argument("negative weight on vertex '" + v.id + "'");
        if (!vidx_.emplace(v.id, i).second)
            throw std::invalid_argument("duplicate vertex id '" + v.id + "'");
    }
    inc_.assign(verts_.size(), {});
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        const auto& e = edges_[i];
        if (e.id.empty()) throw std::invalid_argument("edge with empty id");
        if (!eidx_.emplace(e.id, i).second)
            throw std::invalid_argument("duplicate edge id '" + e.id + "'");
        for (const auto& end : e.ends) {
            auto it = vidx_.find(end);
            if (it == vidx_.end())
                throw std::invalid_argument("edge '" + e.id + "' references unknown vertex '" +
                                            end + "'");
        }
        int a = vidx_[e.ends[0]], b = vidx_[e.ends[1]];
        inc_[a].push_back(i);
        if (b != a) inc_[b].push_back(i);
    }
    if (require_connected && !is_connected())
        throw DisconnectedError("graph is not connected");
}

int Graph::vertex_index(const std::string& id) const {
    auto it = vidx_.find(id);
    if (it == vidx_.end()) throw std::invalid_argument("unknown vertex id '" + id + "'");
    return it->second;
}

int Graph::edge_index(const std::string& id) const {
    auto it = eidx_.find(id);
    if (it == eidx_.end()) throw std::invalid_argument("unknown edge id '" + id + "'");
    return it->second;
}

std::vector<std::string> Graph::incident_edges(const std::string& vertex_id) const {
    std::vector<std::string> out;
    for (int ei : inc_[vertex_index(vertex_id)]) out.push_back(edges_[ei].id);
    std::sort(out.begin(), out.end());
    return out;
}

int Graph::valence(const std::string& vertex_id) const {
    int vi = vertex_index(vertex_id), val = 0;
    for (int ei : inc_[vi]) val += is_loop(ei) ? 2 : 1;
    return val;
}

int Graph::loops_at(const std::string& vertex_id) const {
    int vi = vertex_index(vertex_id), k = 0;
    for (int ei : inc_[vi])
        if (is_loop(ei)) ++k;
    return k;
}

int Graph::edges_between(const std::string& u, const std::string& v) const {
    int ui = vertex_index(u), vi = vertex_index(v), k = 0;
    for (int ei : inc_[ui]) {
        int a = vidx_.at(edges_[ei].ends[0]), b = vidx_.at(edges_[ei].ends[1]);
        if ((a == ui && b == vi) || (a == vi && b == ui)) ++k;
    }
    if (ui == vi) return loops_at(u);
    return k;
}

std::vector<int> Graph::component_labels() const {
    std::vector<int> label(verts_.size(), -1);
    int next = 0;
    for (int s = 0; s < static_cast<int>(verts_.size()); ++s) {
        if (label[s] != -1) continue;
        label[s] = next;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int ei : inc_[u]) {
                for (const auto& end : edges_[ei].ends) {
                    int w = vidx_.at(end);
                    if (label[w] == -1) {
                        label[w] = next;
                        stack.push_back(w);
                    }
                }
            }
        }
        ++next;
    }
    return label;
}

int Graph::component_count() const {
    auto label = component_labels();
    return label.empty() ? 0 : 1 + *std::max_element(label.begin(), label.end());
}

bool Graph::is_connected() const { return component_count() <= 1; }

int Graph::total_weight() const {
    int w = 0;
    for (const auto& v : verts_) w += v.weight;
    return w;
}

int Graph::first_betti() const {
    return edge_count() - vertex_count() + component_count();
}

// ---- genus and subgraphs ----------------------------------------------

int genus(const Graph& g) {
    if (!g.is_connected()) throw DisconnectedError("genus requires a connected graph");
    return g.first_betti() + g.total_weight();
}

Graph induced_subgraph(const Graph& g, const std::vector<std::string>& V) {
    std::set<std::string> keep(V.begin(), V.end());
    std::vector<VertexData> vs;
    for (const auto& v : g.vertices())
        if (keep.count(v.id)) vs.push_back(v);
    if (vs.size() != keep.size()) throw std::invalid_argument("induced_subgraph: unknown vertex");
    std::vector<EdgeData> es;
    for (const auto& e : g.edges())
        if (keep.count(e.ends[0]) && keep.count(e.ends[1])) es.push_back(e);
    return Graph(std::move(vs), std::move(es), allow_disconnected);
}

int subgraph_genus(const Graph& g, const std::vector<std::string>& V) {
    Graph sub = induced_subgraph(g, V);
    return sub.first_betti() + sub.total_weight();
}

Graph vertex_deleted(const Graph& g, const std::string& v) {
    g.vertex_index(v);  // validate
    std::vector<VertexData> vs;
    for (const auto& vd : g.vertices())
        if (vd.id != v) vs.push_back(vd);
    std::vector<EdgeData> es;
    for (const auto& e : g.edges())
        if (e.ends[0] != v && e.ends[1] != v) es.push_back(e);
    return Graph(std::move(vs), std::move(es), allow_disconnected);
}

Graph purify(const Graph& g) {
    std::vector<VertexData> vs = g.vertices();
    for (auto& v : vs) v.weight = 0;
    return g.is_connected() ? Graph(std::move(vs), g.edges())
                            : Graph(std::move(vs), g.edges(), allow_disconnected);
}

// ---- cuts, bonds, hemispheres ------------------------------------------

std::vector<std::string> cut_of(const Graph& g, const std::vector<std::string>& V) {
    std::set<std::string> side(V.begin(), V.end());
    for (const auto& id : V) g.vertex_index(id);
    std::vector<std::string> out;
    for (const auto& e : g.edges()) {
        bool a = side.count(e.ends[0]) != 0, b = side.count(e.ends[1]) != 0;
        if (a != b) out.push_back(e.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// All distinct nonempty cuts as edge-index masks.
std::vector<std::uint64_t> cut_masks(const Graph& g) {
    int n = g.vertex_count(), m = g.edge_count();
    if (n > 24) throw std::invalid_argument("cut enumeration supports at most 24 vertices");
    if (m > 63) throw std::invalid_argument("cut enumeration supports at most 63 edges");
    std::vector<int> end0(m), end1(m);
    for (int i = 0; i < m; ++i) {
        end0[i] = g.vertex_index(g.edges()[i].ends[0]);
        end1[i] = g.vertex_index(g.edges()[i].ends[1]);
    }
    std::set<std::uint64_t> cuts;
    const std::uint64_t full = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        std::uint64_t cut = 0;
        for (int i = 0; i < m; ++i) {
            bool a = (mask >> end0[i]) & 1, b = (mask >> end1[i]) & 1;
            if (a != b) cut |= std::uint64_t{1} << i;
        }
        if (cut) cuts.insert(cut);
    }
    return {cuts.begin(), cuts.end()};
}

std::vector<std::string> edge_mask_to_ids(const Graph& g, std::uint64_t mask) {
    std::vector<std::string> ids;
    while (mask) {
        int i = __builtin_ctzll(mask);
        mask &= mask - 1;
        ids.push_back(g.edges()[i].id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace

std::vector<std::vector<std::string>> enumerate_cuts(const Graph& g) {
    std::vector<std::vector<std::string>> out;
    for (auto mask : cut_masks(g)) out.push_back(edge_mask_to_ids(g, mask));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::string>> enumerate_bonds(const Graph& g) {
    auto cuts = cut_masks(g);
    std::vector<std::vector<std::string>> out;
    for (auto c : cuts) {
        bool minimal = true;
        for (auto d : cuts)
            if (d != c && (d & c) == d) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(edge_mask_to_ids(g, c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::string>> enumerate_hemispheres(const Graph& g) {
    auto adj = detail::adjacency_masks(g);
    std::vector<std::vector<std::string>> out;
    detail::for_each_hemisphere(g.vertex_count(), adj, [&](std::uint64_t mask) {
        std::vector<std::string> ids;
        while (mask) {
            int v = __builtin_ctzll(mask);
            mask &= mask - 1;
            ids.push_back(g.vertices()[v].id);
        }
        std::sort(ids.begin(), ids.end());
        out.push_back(std::move(ids));
    });
    std::sort(out.begin(), out.end());
    return out;
}

// ---- trees, bridges, cyclic structure -----------------------------------

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

std::vector<std::vector<std::string>> spanning_trees(const Graph& g) {
    if (!g.is_connected()) throw DisconnectedError("spanning_trees requires a connected graph");
    int n = g.vertex_count();
    std::vector<int> nonloop;
    for (int i = 0; i < g.edge_count(); ++i)
        if (!g.is_loop(i)) nonloop.push_back(i);
    int k = n - 1;
    std::vector<std::vector<std::string>> out;
    std::vector<int> chosen;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(chosen.size()) == k) {
            Dsu dsu(n);
            for (int ei : chosen) {
                const auto& e = g.edges()[ei];
                if (!dsu.unite(g.vertex_index(e.ends[0]), g.vertex_index(e.ends[1]))) return;
            }
            std::vector<std::string> ids;
            for (int ei : chosen) ids.push_back(g.edges()[ei].id);
            std::sort(ids.begin(), ids.end());
            out.push_back(std::move(ids));
            return;
        }
        for (int i = start; i < static_cast<int>(nonloop.size()); ++i) {
            chosen.push_back(nonloop[i]);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> bridges(const Graph& g) {
    if (!g.is_connected()) throw DisconnectedError("bridges requires a connected graph");
    std::vector<std::string> out;
    for (const auto& e : g.edges()) {
        if (e.ends[0] == e.ends[1]) continue;  // loops are never bridges
        Graph gd = delete_edges(g, {e.id}, false);
        if (!gd.is_connected()) out.push_back(e.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> nondisconnecting_edges(const Graph& g) {
    auto br = bridges(g);
    std::set<std::string> brs(br.begin(), br.end());
    std::vector<std::string> out;
    for (const auto& e : g.edges())
        if (!brs.count(e.id)) out.push_back(e.id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::string>> maximally_nondisconnecting_sets(const Graph& g) {
    std::vector<std::vector<std::string>> out;
    std::set<std::string> all;
    for (const auto& e : g.edges()) all.insert(e.id);
    for (const auto& tree : spanning_trees(g)) {
        std::set<std::string> rest = all;
        for (const auto& id : tree) rest.erase(id);
        out.emplace_back(rest.begin(), rest.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- graph surgeries -----------------------------------------------------

SubdivisionResult subdivide(const Graph& g, const std::vector<std::string>& E0) {
    std::set<std::string> sub(E0.begin(), E0.end());
    for (const auto& id : E0) g.edge_index(id);
    std::vector<VertexData> vs = g.vertices();
    std::map<std::string, std::string> exceptional;
    for (const auto& id : sub) {  // sorted, so new vertices land in id order
        exceptional[id] = "v@" + id;
        vs.push_back({"v@" + id, 0});
    }
    std::vector<EdgeData> es;
    for (const auto& e : g.edges()) {
        if (!sub.count(e.id)) {
            es.push_back(e);
        } else {
            const std::string& mid = exceptional[e.id];
            es.push_back({e.id + ":0", {e.ends[0], mid}});
            es.push_back({e.id + ":1", {mid, e.ends[1]}});
        }
    }
    bool conn = g.is_connected();
    Graph out = conn ? Graph(std::move(vs), std::move(es))
                     : Graph(std::move(vs), std::move(es), allow_disconnected);
    return {std::move(out), std::move(exceptional)};
}

Graph delete_edges(const Graph& g, const std::vector<std::string>& E0, bool require_connected) {
    std::set<std::string> del(E0.begin(), E0.end());
    for (const auto& id : E0) g.edge_index(id);
    std::vector<EdgeData> es;
    for (const auto& e : g.edges())
        if (!del.count(e.id)) es.push_back(e);
    if (require_connected) return Graph(g.vertices(), std::move(es));
    return Graph(g.vertices(), std::move(es), allow_disconnected);
}

void SpecializationMap::validate() const {
    // vertex map: total and surjective
    std::set<std::string> hit;
    for (const auto& v : source.vertices()) {
        auto it = vertex_map.find(v.id);
        if (it == vertex_map.end())
            throw std::logic_error("specialization: vertex '" + v.id + "' unmapped");
        target.vertex_index(it->second);
        hit.insert(it->second);
    }
    if (static_cast<int>(hit.size()) != target.vertex_count())
        throw std::logic_error("specialization: vertex map not surjective");
    // edge section: total on target edges, injective, incidence-compatible
    std::set<std::string> used;
    for (const auto& e : target.edges()) {
        auto it = edge_section.find(e.id);
        if (it == edge_section.end())
            throw std::logic_error("specialization: edge '" + e.id + "' has no section");
        const auto& src = source.edge(it->second);
        if (!used.insert(it->second).second)
            throw std::logic_error("specialization: edge section not injective");
        std::pair<std::string, std::string> mapped{vertex_map.at(src.ends[0]),
                                                   vertex_map.at(src.ends[1])};
        std::pair<std::string, std::string> want{e.ends[0], e.ends[1]};
        std::pair<std::string, std::string> flipped{e.ends[1], e.ends[0]};
        if (mapped != want && mapped != flipped)
            throw std::logic_error("specialization: incidence mismatch on edge '" + e.id + "'");
    }
    // everything outside the section image is collapsed
    std::set<std::string> image;
    for (const auto& [tgt, src] : edge_section) image.insert(src);
    for (const auto& e : source.edges()) {
        if (image.count(e.id)) continue;
        if (vertex_map.at(e.ends[0]) != vertex_map.at(e.ends[1]))
            throw std::logic_error("specialization: contracted edge '" + e.id +
                                   "' has distinct images");
    }
}

SpecializationMap contract_edges(const Graph& g, const std::vector<std::string>& E0) {
    std::set<std::string> con(E0.begin(), E0.end());
    for (const auto& id : E0) g.edge_index(id);
    int n = g.vertex_count();
    Dsu dsu(n);
    for (const auto& id : con) {
        const auto& e = g.edge(id);
        dsu.unite(g.vertex_index(e.ends[0]), g.vertex_index(e.ends[1]));
    }
    // class representative: lexicographically least member id
    std::vector<std::string> rep(n);
    for (int i = 0; i < n; ++i) {
        int r = dsu.find(i);
        const std::string& id = g.vertices()[i].id;
        if (rep[r].empty() || id < rep[r]) rep[r] = id;
    }
    std::map<std::string, std::string> vmap;
    std::vector<VertexData> vs;
    std::set<int> seen;
    for (int i = 0; i < n; ++i) {
        int r = dsu.find(i);
        vmap[g.vertices()[i].id] = rep[r];
        if (seen.insert(r).second) vs.push_back({rep[r], 0});
    }
    for (auto& v : vs)  // merged weight = sum of constituents
        for (int i = 0; i < n; ++i)
            if (rep[dsu.find(i)] == v.id) v.weight += g.vertices()[i].weight;
    std::vector<EdgeData> es;
    std::map<std::string, std::string> section;
    for (const auto& e : g.edges()) {
        if (con.count(e.id)) continue;
        es.push_back({e.id, {vmap.at(e.ends[0]), vmap.at(e.ends[1])}});
        section[e.id] = e.id;
    }
    bool conn = g.is_connected();
    Graph target = conn ? Graph(std::move(vs), std::move(es))
                        : Graph(std::move(vs), std::move(es), allow_disconnected);
    SpecializationMap out{g, std::move(target), std::move(vmap), std::move(section)};
    out.validate();
    return out;
}

// ---- parallel edges -------------------------------------------------------

bool are_parallel(const Graph& g, const std::string& e, const std::string& f) {
    const auto& a = g.edge(e);
    const auto& b = g.edge(f);
    if (e == f) return false;
    if (a.ends[0] == a.ends[1] || b.ends[0] == b.ends[1]) return false;  // loops: one vertex
    return (a.ends[0] == b.ends[0] && a.ends[1] == b.ends[1]) ||
           (a.ends[0] == b.ends[1] && a.ends[1] == b.ends[0]);
}

std::vector<std::pair<std::string, std::string>> special_pairs(const Graph& g) {
    // bucket non-loop edges by unordered endpoint pair
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> classes;
    for (const auto& e : g.edges()) {
        if (e.ends[0] == e.ends[1]) continue;
        auto key = std::minmax(e.ends[0], e.ends[1]);
        classes[{key.first, key.second}].push_back(e.id);
    }
    std::vector<std::pair<std::string, std::string>> out;
    for (auto& [ends, ids] : classes) {
        if (ids.size() != 2) continue;  // a third parallel edge disqualifies the pair
        Graph gd = delete_edges(g, ids, false);
        if (!gd.is_connected()) continue;
        std::sort(ids.begin(), ids.end());
        out.emplace_back(ids[0], ids[1]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- biconnectivity --------------------------------------------------------

namespace {

// Number of pieces the graph falls into at v, in the subdivision-stable
// sense: components of Γ minus v, plus one per loop at v.  v is an
// articulation vertex exactly when this is at least 2.
int pieces_at(const Graph& g, const std::string& v) {
    return vertex_deleted(g, v).component_count() + g.loops_at(v);
}

}  // namespace

bool is_articulation(const Graph& g, const std::string& v) { return pieces_at(g, v) >= 2; }

std::vector<std::string> articulation_vertices(const Graph& g) {
    std::vector<std::string> out;
    for (const auto& v : g.vertices())
        if (is_articulation(g, v.id)) out.push_back(v.id);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_biconnected(const Graph& g) {
    if (!g.is_connected()) return false;
    if (g.edge_count() == 0) return g.vertex_count() <= 1;
    auto decomp = biconnected_components(g);
    if (decomp.components.size() != 1) return false;
    const Graph& c = decomp.components[0];
    return !(c.edge_count() == 1 && !c.is_loop(0));  // a lone bridge is not biconnected
}

BiconnectedDecomposition biconnected_components(const Graph& g) {
    int n = g.vertex_count(), m = g.edge_count();
    std::vector<int> disc(n, 0), low(n, 0);
    std::vector<char> used(m, 0);
    std::vector<int> estack;
    std::vector<std::vector<int>> blocks;
    int timer = 0;

    std::function<void(int)> dfs = [&](int u) {
        disc[u] = low[u] = ++timer;
        for (int ei : g.incident(u)) {
            if (used[ei] || g.is_loop(ei)) continue;
            used[ei] = 1;
            const auto& e = g.edges()[ei];
            int w = g.vertex_index(e.ends[0]) == u ? g.vertex_index(e.ends[1])
                                                   : g.vertex_index(e.ends[0]);
            estack.push_back(ei);
            if (disc[w] == 0) {
                dfs(w);
                low[u] = std::min(low[u], low[w]);
                if (low[w] >= disc[u]) {
                    std::vector<int> blk;
                    for (;;) {
                        int x = estack.back();
                        estack.pop_back();
                        blk.push_back(x);
                        if (x == ei) break;
                    }
                    blocks.push_back(std::move(blk));
                }
            } else {
                low[u] = std::min(low[u], disc[w]);
            }
        }
    };
    for (int v = 0; v < n; ++v)
        if (disc[v] == 0) dfs(v);

    for (int ei = 0; ei < m; ++ei)  // every loop is its own component
        if (g.is_loop(ei)) blocks.push_back({ei});

    for (auto& blk : blocks) std::sort(blk.begin(), blk.end());
    std::sort(blocks.begin(), blocks.end());

    BiconnectedDecomposition out;
    std::map<std::string, int> seen_in;  // vertex id -> number of blocks containing it
    for (const auto& blk : blocks) {
        std::set<std::string> vset;
        for (int ei : blk) {
            vset.insert(g.edges()[ei].ends[0]);
            vset.insert(g.edges()[ei].ends[1]);
        }
        std::vector<VertexData> vs;
        for (const auto& v : g.vertices())
            if (vset.count(v.id)) vs.push_back(v);
        std::vector<EdgeData> es;
        std::set<int> eset(blk.begin(), blk.end());
        for (int ei = 0; ei < m; ++ei)
            if (eset.count(ei)) es.push_back(g.edges()[ei]);
        out.components.emplace_back(std::move(vs), std::move(es));
        for (const auto& v : vset) seen_in[v] += 1;
    }
    for (const auto& [v, cnt] : seen_in)
        if (cnt >= 2) out.articulations.push_back(v);
    return out;
}

Split split_at_articulation(const Graph& g, const std::string& v0) {
    if (!g.is_connected()) throw DisconnectedError("split_at_articulation needs a connected graph");
    int v0i = g.vertex_index(v0);
    Graph rest = vertex_deleted(g, v0);
    auto labels = rest.component_labels();
    auto rest_idx = [&](const std::string& id) { return rest.vertex_index(id); };

    // pieces: one per component of Γ minus v0, then one per loop at v0
    int ncomp = rest.component_count();
    std::vector<std::vector<int>> pieces(ncomp);
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const auto& e = g.edges()[ei];
        if (e.ends[0] == v0 && e.ends[1] == v0) {
            pieces.push_back({ei});
        } else {
            const std::string& far = e.ends[0] == v0 ? e.ends[1] : e.ends[0];
            pieces[labels[rest_idx(far)]].push_back(ei);
        }
    }
    if (pieces.size() < 2)
        throw std::invalid_argument("'" + v0 + "' is not an articulation vertex");

    // first = the piece holding the lexicographically least edge id
    auto min_id = [&](const std::vector<int>& p) {
        std::string best;
        for (int ei : p) {
            const std::string& id = g.edges()[ei].id;
            if (best.empty() || id < best) best = id;
        }
        return best;
    };
    std::size_t first = 0;
    for (std::size_t i = 1; i < pieces.size(); ++i)
        if (min_id(pieces[i]) < min_id(pieces[first])) first = i;

    auto build = [&](const std::vector<int>& edge_idxs) {
        std::set<int> eset(edge_idxs.begin(), edge_idxs.end());
        std::set<std::string> vset{v0};
        for (int ei : edge_idxs) {
            vset.insert(g.edges()[ei].ends[0]);
            vset.insert(g.edges()[ei].ends[1]);
        }
        std::vector<VertexData> vs;
        for (const auto& v : g.vertices())
            if (vset.count(v.id)) vs.push_back(v);
        std::vector<EdgeData> es;
        for (int ei = 0; ei < g.edge_count(); ++ei)
            if (eset.count(ei)) es.push_back(g.edges()[ei]);
        return Graph(std::move(vs), std::move(es));
    };

    std::vector<int> second;
    for (std::size_t i = 0; i < pieces.size(); ++i)
        if (i != first) second.insert(second.end(), pieces[i].begin(), pieces[i].end());
    (void)v0i;
    return {build(pieces[first]), build(second)};
}

// ---- equivalences ----------------------------------------------------------

bool is_weak_cyclic_equivalence(const Graph& g, const Graph& h,
                                const std::map<std::string, std::string>& f) {
    auto nd_g = nondisconnecting_edges(g);
    auto nd_h = nondisconnecting_edges(h);
    if (f.size() != nd_g.size() || nd_g.size() != nd_h.size()) return false;
    std::set<std::string> dom(nd_g.begin(), nd_g.end()), cod(nd_h.begin(), nd_h.end());
    std::set<std::string> image;
    for (const auto& [a, b] : f) {
        if (!dom.count(a) || !cod.count(b)) return false;
        if (!image.insert(b).second) return false;  // not injective
    }
    auto mnd_h = maximally_nondisconnecting_sets(h);
    std::set<std::vector<std::string>> targets(mnd_h.begin(), mnd_h.end());
    auto mnd_g = maximally_nondisconnecting_sets(g);
    if (mnd_g.size() != mnd_h.size()) return false;
    for (const auto& S : mnd_g) {
        std::vector<std::string> img;
        for (const auto& e : S) img.push_back(f.at(e));
        std::sort(img.begin(), img.end());
        if (!targets.count(img)) return false;
    }
    return true;
}

// ---- isomorphism -----------------------------------------------------------

namespace {

using LabelMap = std::map<std::string, std::string>;

std::string edge_label(const LabelMap* labels, const std::string& id) {
    if (!labels) return {};
    auto it = labels->find(id);
    return it == labels->end() ? std::string{} : it->second;
}

// Multiset of labels on the edges between u and v (loops when u == v).
std::vector<std::string> pair_labels(const Graph& g, const LabelMap* labels, int u, int v) {
    std::vector<std::string> out;
    for (int ei : g.incident(u)) {
        const auto& e = g.edges()[ei];
        int a = g.vertex_index(e.ends[0]), b = g.vertex_index(e.ends[1]);
        bool match = (u == v) ? (a == u && b == u) : ((a == u && b == v) || (a == v && b == u));
        if (match) out.push_back(edge_label(labels, e.id));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string vertex_signature(const Graph& g, const LabelMap* labels, int vi) {
    std::string sig = "w" + std::to_string(g.vertices()[vi].weight);
    sig += ";self:";
    for (const auto& l : pair_labels(g, labels, vi, vi)) sig += "[" + l + "]";
    std::vector<std::string> nbr;
    for (int u = 0; u < g.vertex_count(); ++u) {
        if (u == vi) continue;
        auto ls = pair_labels(g, labels, vi, u);
        if (ls.empty()) continue;
        std::string s = "(";
        for (const auto& l : ls) s += "[" + l + "]";
        s += ")";
        nbr.push_back(s);
    }
    std::sort(nbr.begin(), nbr.end());
    sig += ";nbrs:";
    for (const auto& s : nbr) sig += s;
    return sig;
}

std::optional<GraphIso> iso_impl(const Graph& g, const Graph& h, const LabelMap* gl,
                                 const LabelMap* hl) {
    int n = g.vertex_count();
    if (n != h.vertex_count() || g.edge_count() != h.edge_count()) return std::nullopt;

    std::vector<std::string> gs(n), hs(n);
    for (int i = 0; i < n; ++i) gs[i] = vertex_signature(g, gl, i);
    for (int i = 0; i < n; ++i) hs[i] = vertex_signature(h, hl, i);
    {
        auto a = gs, b = hs;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }

    // most-constrained-first: rarest signature class, then id, keeps the
    // search deterministic
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::map<std::string, int> freq;
    for (const auto& s : gs) freq[s] += 1;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (freq[gs[a]] != freq[gs[b]]) return freq[gs[a]] < freq[gs[b]];
        return g.vertices()[a].id < g.vertices()[b].id;
    });

    std::vector<int> assign(n, -1);
    std::vector<char> taken(n, 0);
    std::function<bool(int)> rec = [&](int pos) -> bool {
        if (pos == n) return true;
        int vi = order[pos];
        for (int cand = 0; cand < n; ++cand) {
            if (taken[cand] || hs[cand] != gs[vi]) continue;
            bool ok = true;
            for (int prev = 0; prev < pos && ok; ++prev) {
                int pj = order[prev];
                if (pair_labels(g, gl, vi, pj) != pair_labels(h, hl, cand, assign[pj])) ok = false;
            }
            if (pair_labels(g, gl, vi, vi) != pair_labels(h, hl, cand, cand)) ok = false;
            if (!ok) continue;
            assign[vi] = cand;
            taken[cand] = 1;
            if (rec(pos + 1)) return true;
            assign[vi] = -1;
            taken[cand] = 0;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;

    GraphIso iso;
    for (int i = 0; i < n; ++i) iso.vertex_map[g.vertices()[i].id] = h.vertices()[assign[i]].id;

    // edge bijection: within each endpoint pair, align by (label, id)
    auto edges_by_pair = [&](const Graph& gr, const LabelMap* lm, int u, int v) {
        std::vector<std::pair<std::string, std::string>> out;  // (label, id)
        for (int ei : gr.incident(u)) {
            const auto& e = gr.edges()[ei];
            int a = gr.vertex_index(e.ends[0]), b = gr.vertex_index(e.ends[1]);
            bool match = (u == v) ? (a == u && b == u) : ((a == u && b == v) || (a == v && b == u));
            if (match) out.emplace_back(edge_label(lm, e.id), e.id);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    for (int u = 0; u < n; ++u) {
        for (int v = u; v < n; ++v) {
            auto ge = edges_by_pair(g, gl, u, v);
            if (ge.empty()) continue;
            auto he = edges_by_pair(h, hl, assign[u], assign[v]);
            for (std::size_t i = 0; i < ge.size(); ++i) iso.edge_map[ge[i].second] = he[i].second;
        }
    }
    return iso;
}

}  // namespace

std::optional<GraphIso> graph_isomorphic(const Graph& g, const Graph& h) {
    return iso_impl(g, h, nullptr, nullptr);
}

std::optional<GraphIso> graph_isomorphic_labeled(const Graph& g, const Graph& h,
                                                 const LabelMap& g_edge_label,
                                                 const LabelMap& h_edge_label) {
    return iso_impl(g, h, &g_edge_label, &h_edge_label);
}

}  // namespace qdp
