#include "qdp/qd_poset.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bits.hpp"
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

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

int max_edges_limit() {
    if (const char* env = std::getenv("QDPOSET_MAX_EDGES")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return 14;
}

}  // namespace

QDPoset::QDPoset(Graph g, std::string basepoint, Polarization mu,
                 std::vector<PseudoDivisor> elements, std::vector<CoverRel> covers)
    : graph_(std::move(g)),
      basepoint_(std::move(basepoint)),
      mu_(std::move(mu)),
      elements_(std::move(elements)),
      covers_(std::move(covers)) {
    parents_.assign(elements_.size(), {});
    children_.assign(elements_.size(), {});
    for (const auto& c : covers_) {
        if (c.parent < 0 || c.parent >= size() || c.child < 0 || c.child >= size())
            throw std::invalid_argument("cover index out of range");
        if (rank(c.parent) != rank(c.child) + 1)
            throw std::invalid_argument("cover does not drop rank by 1");
        parents_[c.child].push_back(c.parent);
        children_[c.parent].push_back(c.child);
    }
    for (auto& v : parents_) std::sort(v.begin(), v.end());
    for (auto& v : children_) std::sort(v.begin(), v.end());
}

int QDPoset::rank(int i) const {
    return static_cast<int>(elements_.at(i).edges.size());
}

const std::vector<int>& QDPoset::parents(int i) const { return parents_.at(i); }
const std::vector<int>& QDPoset::children(int i) const { return children_.at(i); }

std::optional<int> QDPoset::find(const PseudoDivisor& pd) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), pd);
    if (it == elements_.end() || !(*it == pd)) return std::nullopt;
    return static_cast<int>(it - elements_.begin());
}

std::vector<int> QDPoset::maximal_elements() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (parents_[i].empty()) out.push_back(i);
    return out;
}

std::vector<int> QDPoset::rank_histogram() const {
    int top = 0;
    for (int i = 0; i < size(); ++i) top = std::max(top, rank(i));
    std::vector<int> h(size() ? top + 1 : 0, 0);
    for (int i = 0; i < size(); ++i) ++h[rank(i)];
    return h;
}

void QDPoset::ensure_closure() const {
    if (!desc_.empty() || elements_.empty()) return;
    const std::size_t words = (elements_.size() + 63) / 64;
    desc_.assign(elements_.size(), std::vector<std::uint64_t>(words, 0));
    // elements are sorted by rank first, so children precede parents
    for (int i = 0; i < size(); ++i) {
        desc_[i][i / 64] |= std::uint64_t(1) << (i % 64);
        for (int c : children_[i])
            for (std::size_t w = 0; w < words; ++w) desc_[i][w] |= desc_[c][w];
    }
}

bool QDPoset::leq(int i, int j) const {
    if (i < 0 || i >= size() || j < 0 || j >= size())
        throw std::invalid_argument("element index out of range");
    ensure_closure();
    return (desc_[j][i / 64] >> (i % 64)) & 1;
}

QDPoset enumerate_qd(const Graph& g, const std::string& v0, const Polarization& mu) {
    g.vertex_index(v0);  // throws on unknown basepoint
    const int m = g.edge_count();
    const int limit = max_edges_limit();
    if (m > limit)
        throw std::runtime_error("graph has " + std::to_string(m) +
                                 " edges, above the QDPOSET_MAX_EDGES limit of " +
                                 std::to_string(limit));

    const int n = g.vertex_count();
    const Rat total = mu.degree();

    // adjacency of Γ restricted to an edge mask, for Γ_E connectivity
    std::vector<std::pair<int, int>> ends(m);
    for (int e = 0; e < m; ++e)
        ends[e] = {g.vertex_index(g.edges()[e].ends[0]),
                   g.vertex_index(g.edges()[e].ends[1])};

    std::vector<PseudoDivisor> elements;

    for (std::uint32_t emask = 0; emask < (std::uint32_t(1) << m); ++emask) {
        // Γ_E must stay connected
        std::vector<std::uint64_t> adj(n, 0);
        for (int e = 0; e < m; ++e) {
            if ((emask >> e) & 1) continue;
            auto [a, b] = ends[e];
            adj[a] |= std::uint64_t(1) << b;
            adj[b] |= std::uint64_t(1) << a;
        }
        std::uint64_t full = n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
        if (!detail::mask_connected(full, adj)) continue;

        std::vector<std::string> E;
        for (int e = 0; e < m; ++e)
            if ((emask >> e) & 1) E.push_back(g.edges()[e].id);

        // divisor degree on the original vertices
        Rat orig_total = total - Rat(static_cast<long long>(E.size()));
        if (orig_total.denominator() != 1) continue;
        const long long target = orig_total.numerator();

        auto sub = subdivide(g, E);
        const Graph& sg = sub.graph;
        const int sn = sg.vertex_count();

        // mu^E: original values, 0 on exceptional vertices
        std::vector<Rat> muE(sn, Rat(0));
        std::vector<int> orig_pos(sn, -1);  // index into g's vertex order
        for (int i = 0; i < n; ++i) {
            int k = sg.vertex_index(g.vertices()[i].id);
            muE[k] = mu.value(g.vertices()[i].id);
            orig_pos[k] = i;
        }
        const int v0_sub = sg.vertex_index(v0);

        // hemisphere constraints: sum of D over original members >= threshold
        std::vector<std::pair<int, int>> sends;  // non-loop edge ends, by index
        for (const auto& ed : sg.edges()) {
            int a = sg.vertex_index(ed.ends[0]), b = sg.vertex_index(ed.ends[1]);
            if (a != b) sends.emplace_back(a, b);
        }
        auto sadj = detail::adjacency_masks(sg);
        struct Constraint {
            std::uint64_t orig_mask;
            long long threshold;
        };
        std::vector<Constraint> constraints;
        detail::for_each_hemisphere(sn, sadj, [&](std::uint64_t V) {
            int delta = 0;
            for (auto [a, b] : sends)
                delta += ((V >> a) & 1) != ((V >> b) & 1);
            Rat bound(0);
            long long exc = 0;
            std::uint64_t omask = 0;
            for (int k = 0; k < sn; ++k) {
                if (!((V >> k) & 1)) continue;
                bound += muE[k];
                if (orig_pos[k] >= 0)
                    omask |= std::uint64_t(1) << orig_pos[k];
                else
                    ++exc;
            }
            bound -= Rat(delta, 2);
            bool strict = !((V >> v0_sub) & 1);
            long long t = strict ? rat_floor(bound) + 1 : rat_ceil(bound);
            constraints.push_back({omask, t - exc});
            return true;
        });

        // per-vertex enumeration box
        std::vector<long long> lo(n), hi(n);
        for (int i = 0; i < n; ++i) {
            const std::string& vid = g.vertices()[i].id;
            Rat mv = mu.value(vid);
            long long dv = sg.valence(vid) - 2 * sg.loops_at(vid);
            lo[i] = rat_ceil(mv - Rat(dv, 2));
            hi[i] = rat_floor(mv + Rat(dv, 2) + 1);
        }
        std::vector<long long> suf_lo(n + 1, 0), suf_hi(n + 1, 0);
        for (int i = n - 1; i >= 0; --i) {
            suf_lo[i] = suf_lo[i + 1] + lo[i];
            suf_hi[i] = suf_hi[i + 1] + hi[i];
        }

        std::vector<long long> vals(n, 0);
        auto emit = [&]() {
            for (const auto& c : constraints) {
                long long s = 0;
                for (int i = 0; i < n; ++i)
                    if ((c.orig_mask >> i) & 1) s += vals[i];
                if (s < c.threshold) return;
            }
            std::map<std::string, int> dm;
            for (int i = 0; i < n; ++i)
                dm[g.vertices()[i].id] = static_cast<int>(vals[i]);
            for (const auto& e : E) dm["v@" + e] = 1;
            elements.emplace_back(E, Divisor(dm));
        };
        auto rec = [&](auto&& self, int i, long long sum) -> void {
            if (i == n) {
                if (sum == target) emit();
                return;
            }
            for (long long x = lo[i]; x <= hi[i]; ++x) {
                long long rest = target - sum - x;
                if (rest < suf_lo[i + 1] || rest > suf_hi[i + 1]) continue;
                vals[i] = x;
                self(self, i + 1, sum + x);
            }
        };
        if (n > 0 && suf_lo[0] <= target && target <= suf_hi[0]) rec(rec, 0, 0);
    }

    std::sort(elements.begin(), elements.end());

    // covers by elementary specialization; every image must be an element
    std::map<PseudoDivisor, int> index;
    for (int i = 0; i < static_cast<int>(elements.size()); ++i) index[elements[i]] = i;
    std::vector<CoverRel> covers;
    for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
        for (const auto& s : elementary_specializations(g, elements[i])) {
            auto it = index.find(s.target);
            if (it == index.end())
                throw FalsifierError(
                    "elementary specializations preserve quasistability",
                    {{"parent", render_edge_set(elements[i].edges) + " | " +
                                    render_divisor(elements[i].divisor)},
                     {"edge", s.edge},
                     {"to", s.to_vertex}});
            covers.push_back({i, it->second, s.edge, s.to_vertex});
        }
    }

    return QDPoset(g, v0, mu, std::move(elements), std::move(covers));
}

std::pair<QDPoset, PosetIso> translate_basepoint(const QDPoset& p, const std::string& v1) {
    const Graph& g = p.graph();
    g.vertex_index(v1);
    if (!(p.polarization() == canonical_polarization(g)))
        throw std::invalid_argument(
            "translate_basepoint requires the canonical polarization");

    QDPoset q = enumerate_qd(g, v1, p.polarization());
    if (q.size() != p.size())
        throw FalsifierError("basepoint translation is a bijection",
                             {{"from", p.basepoint()}, {"to", v1},
                              {"sizes", std::to_string(p.size()) + " vs " +
                                            std::to_string(q.size())}});

    PosetIso iso;
    iso.forward.assign(p.size(), -1);
    iso.inverse.assign(q.size(), -1);
    for (int i = 0; i < p.size(); ++i) {
        PseudoDivisor mapped = p.elements()[i];
        mapped.divisor.add(p.basepoint(), 1);
        mapped.divisor.add(v1, -1);
        auto j = q.find(mapped);
        if (!j)
            throw FalsifierError("basepoint translation lands in the target poset",
                                 {{"element", render_edge_set(p.elements()[i].edges) +
                                                  " | " +
                                                  render_divisor(p.elements()[i].divisor)},
                                  {"from", p.basepoint()},
                                  {"to", v1}});
        iso.forward[i] = *j;
        iso.inverse[*j] = i;
    }

    // cover-preservation in both directions: mapped covers are covers, and
    // the cover counts agree
    std::set<std::tuple<int, int, std::string, std::string>> qcov;
    for (const auto& c : q.covers()) qcov.insert({c.parent, c.child, c.edge, c.to_vertex});
    for (const auto& c : p.covers())
        if (!qcov.count({iso.forward[c.parent], iso.forward[c.child], c.edge, c.to_vertex}))
            throw FalsifierError("basepoint translation preserves covers",
                                 {{"from", p.basepoint()}, {"to", v1}, {"edge", c.edge}});
    if (p.covers().size() != q.covers().size())
        throw FalsifierError("basepoint translation preserves covers",
                             {{"from", p.basepoint()}, {"to", v1},
                              {"cover counts", std::to_string(p.covers().size()) + " vs " +
                                                   std::to_string(q.covers().size())}});
    return {std::move(q), std::move(iso)};
}

ProductSplit product_split(const Graph& g, const std::string& v0, const Split& split) {
    for (const auto& v : g.vertices())
        if (v.weight != 0) throw std::invalid_argument("product_split requires a pure graph");
    const Graph& g1 = split.first;
    const Graph& g2 = split.second;
    // the two parts share exactly v0 and partition the edge set
    std::set<std::string> v1set, v2set;
    for (const auto& v : g1.vertices()) v1set.insert(v.id);
    for (const auto& v : g2.vertices()) v2set.insert(v.id);
    if (!v1set.count(v0) || !v2set.count(v0))
        throw std::invalid_argument("invalid split: parts must contain the split vertex");
    for (const auto& v : v1set)
        if (v != v0 && v2set.count(v))
            throw std::invalid_argument("invalid split: parts share a vertex besides v0");
    if (g1.edge_count() == 0 || g2.edge_count() == 0)
        throw std::invalid_argument("invalid split: both parts need an edge");
    std::set<std::string> e1set, e2set, eall;
    for (const auto& e : g1.edges()) e1set.insert(e.id);
    for (const auto& e : g2.edges()) e2set.insert(e.id);
    for (const auto& e : g.edges()) eall.insert(e.id);
    if (g1.edge_count() + g2.edge_count() != g.edge_count())
        throw std::invalid_argument("invalid split: edges must partition");
    for (const auto& e : e1set)
        if (e2set.count(e) || !eall.count(e))
            throw std::invalid_argument("invalid split: edges must partition");
    for (const auto& e : e2set)
        if (!eall.count(e)) throw std::invalid_argument("invalid split: edges must partition");

    ProductSplit out{enumerate_qd(g1, v0, canonical_polarization(g1)),
                     enumerate_qd(g2, v0, canonical_polarization(g2)),
                     enumerate_qd(g, v0, canonical_polarization(g)),
                     {}};
    const int n1 = out.factor1.size(), n2 = out.factor2.size();
    if (n1 * n2 != out.whole.size())
        throw FalsifierError("product decomposition is a bijection",
                             {{"sizes", std::to_string(n1) + "*" + std::to_string(n2) +
                                            " vs " + std::to_string(out.whole.size())}});

    out.iso.forward.assign(n1 * n2, -1);
    out.iso.inverse.assign(out.whole.size(), -1);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const auto& a = out.factor1.elements()[i];
            const auto& b = out.factor2.elements()[j];
            std::vector<std::string> E = a.edges;
            E.insert(E.end(), b.edges.begin(), b.edges.end());
            std::map<std::string, int> dm;
            for (const auto& [v, k] : a.divisor.values()) dm[v] = k;
            for (const auto& [v, k] : b.divisor.values()) dm[v] += k;
            dm[v0] += 1;
            PseudoDivisor sigma(E, Divisor(dm));
            auto k = out.whole.find(sigma);
            if (!k)
                throw FalsifierError("product decomposition lands in QD of the whole",
                                     {{"element", render_edge_set(sigma.edges) + " | " +
                                                      render_divisor(sigma.divisor)}});
            if (out.iso.inverse[*k] != -1)
                throw FalsifierError("product decomposition is injective",
                                     {{"index", std::to_string(*k)}});
            out.iso.forward[i * n2 + j] = *k;
            out.iso.inverse[*k] = i * n2 + j;
        }
    }

    // order-preserving in both directions, on the componentwise order
    for (int a = 0; a < n1 * n2; ++a) {
        for (int b = 0; b < n1 * n2; ++b) {
            bool prod = out.factor1.leq(a / n2, b / n2) && out.factor2.leq(a % n2, b % n2);
            bool whole = out.whole.leq(out.iso.forward[a], out.iso.forward[b]);
            if (prod != whole)
                throw FalsifierError("product decomposition preserves order",
                                     {{"pair", std::to_string(a) + "," + std::to_string(b)},
                                      {"product order", prod ? "<=" : "not <="},
                                      {"image order", whole ? "<=" : "not <="}});
        }
    }
    return out;
}

bool is_upper_connected(const QDPoset& p, int i, int j) {
    if (i < 0 || i >= p.size() || j < 0 || j >= p.size())
        throw std::invalid_argument("element index out of range");
    if (p.elements()[i].edges != p.elements()[j].edges)
        throw std::invalid_argument("is_upper_connected requires equal edge sets");
    if (i == j) return true;
    const auto& E = p.elements()[i].edges;
    std::deque<int> queue{i};
    std::set<int> seen{i};
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int pa : p.parents(x)) {
            for (int c : p.children(pa)) {
                if (seen.count(c) || p.elements()[c].edges != E) continue;
                if (c == j) return true;
                seen.insert(c);
                queue.push_back(c);
            }
        }
    }
    return false;
}

AbstractPoset abstract_from_covers(int n, const std::vector<std::pair<int, int>>& covers) {
    AbstractPoset p;
    p.n = n;
    p.covers = covers;
    p.parents.assign(n, {});
    p.children.assign(n, {});
    for (auto [a, b] : covers) {
        if (a < 0 || a >= n || b < 0 || b >= n || a == b)
            throw std::invalid_argument("cover index out of range");
        p.parents[b].push_back(a);
        p.children[a].push_back(b);
    }
    // rank = longest path down to a minimal element; refuse cycles and
    // covers that do not drop the rank by exactly 1
    p.rank.assign(n, -1);
    std::vector<int> state(n, 0);
    auto dfs = [&](auto&& self, int x) -> int {
        if (state[x] == 1) throw std::invalid_argument("covers contain a cycle");
        if (state[x] == 2) return p.rank[x];
        state[x] = 1;
        int r = 0;
        for (int c : p.children[x]) r = std::max(r, self(self, c) + 1);
        state[x] = 2;
        return p.rank[x] = r;
    };
    for (int x = 0; x < n; ++x) dfs(dfs, x);
    for (auto [a, b] : covers)
        if (p.rank[a] != p.rank[b] + 1)
            throw std::invalid_argument("covers do not define a ranked poset");
    for (auto& v : p.parents) std::sort(v.begin(), v.end());
    for (auto& v : p.children) std::sort(v.begin(), v.end());
    return p;
}

AbstractPoset abstract_of(const QDPoset& p) {
    std::vector<std::pair<int, int>> covers;
    covers.reserve(p.covers().size());
    for (const auto& c : p.covers()) covers.emplace_back(c.parent, c.child);
    return abstract_from_covers(p.size(), covers);
}

namespace {

// one round of shared color refinement; returns false on class-size mismatch
bool refine_round(const AbstractPoset& p, const AbstractPoset& q, std::vector<int>& cp,
                  std::vector<int>& cq) {
    using Key = std::tuple<int, std::vector<int>, std::vector<int>>;
    std::map<Key, int> dict;
    auto color_of = [&](const AbstractPoset& a, const std::vector<int>& c, int x) {
        std::vector<int> up, down;
        for (int y : a.parents[x]) up.push_back(c[y]);
        for (int y : a.children[x]) down.push_back(c[y]);
        std::sort(up.begin(), up.end());
        std::sort(down.begin(), down.end());
        Key k{c[x], std::move(up), std::move(down)};
        auto it = dict.find(k);
        if (it == dict.end()) it = dict.emplace(std::move(k), static_cast<int>(dict.size())).first;
        return it->second;
    };
    std::vector<int> np(p.n), nq(q.n);
    for (int x = 0; x < p.n; ++x) np[x] = color_of(p, cp, x);
    for (int x = 0; x < q.n; ++x) nq[x] = color_of(q, cq, x);
    std::map<int, int> count;
    for (int c : np) ++count[c];
    for (int c : nq) --count[c];
    for (auto [c, k] : count)
        if (k != 0) return false;
    cp = std::move(np);
    cq = std::move(nq);
    return true;
}

bool extend_match(const AbstractPoset& p, const AbstractPoset& q, const std::vector<int>& cp,
                  const std::vector<int>& cq, std::vector<int>& mp, std::vector<int>& mq) {
    int best = -1, best_count = -1;
    for (int x = 0; x < p.n; ++x) {
        if (mp[x] != -1) continue;
        int count = 0;
        for (int y = 0; y < q.n; ++y)
            if (mq[y] == -1 && cq[y] == cp[x]) ++count;
        if (count == 0) return false;
        if (best == -1 || count < best_count) {
            best = x;
            best_count = count;
        }
    }
    if (best == -1) return true;  // everything matched

    int x = best;
    for (int y = 0; y < q.n; ++y) {
        if (mq[y] != -1 || cq[y] != cp[x]) continue;
        bool ok = true;
        for (int a : p.parents[x])
            if (mp[a] != -1 && !std::binary_search(q.parents[y].begin(), q.parents[y].end(), mp[a])) {
                ok = false;
                break;
            }
        if (ok)
            for (int a : p.children[x])
                if (mp[a] != -1 &&
                    !std::binary_search(q.children[y].begin(), q.children[y].end(), mp[a])) {
                    ok = false;
                    break;
                }
        if (ok)
            for (int b : q.parents[y])
                if (mq[b] != -1 &&
                    !std::binary_search(p.parents[x].begin(), p.parents[x].end(), mq[b])) {
                    ok = false;
                    break;
                }
        if (ok)
            for (int b : q.children[y])
                if (mq[b] != -1 &&
                    !std::binary_search(p.children[x].begin(), p.children[x].end(), mq[b])) {
                    ok = false;
                    break;
                }
        if (!ok) continue;
        mp[x] = y;
        mq[y] = x;
        if (extend_match(p, q, cp, cq, mp, mq)) return true;
        mp[x] = -1;
        mq[y] = -1;
    }
    return false;
}

}  // namespace

std::optional<PosetIso> poset_isomorphism(const AbstractPoset& p, const AbstractPoset& q,
                                          const std::vector<std::string>* p_labels,
                                          const std::vector<std::string>* q_labels) {
    if (p.n != q.n || p.covers.size() != q.covers.size()) return std::nullopt;
    if ((p_labels == nullptr) != (q_labels == nullptr))
        throw std::invalid_argument("labels must be given for both posets or neither");
    if (p_labels && (static_cast<int>(p_labels->size()) != p.n ||
                     static_cast<int>(q_labels->size()) != q.n))
        throw std::invalid_argument("label vector length mismatch");

    // initial colors: (rank, up-degree, down-degree, label)
    using Key = std::tuple<int, int, int, std::string>;
    std::map<Key, int> dict;
    auto initial = [&](const AbstractPoset& a, const std::vector<std::string>* labels, int x) {
        Key k{a.rank[x], static_cast<int>(a.parents[x].size()),
              static_cast<int>(a.children[x].size()), labels ? (*labels)[x] : std::string()};
        auto it = dict.find(k);
        if (it == dict.end()) it = dict.emplace(std::move(k), static_cast<int>(dict.size())).first;
        return it->second;
    };
    std::vector<int> cp(p.n), cq(q.n);
    for (int x = 0; x < p.n; ++x) cp[x] = initial(p, p_labels, x);
    for (int x = 0; x < q.n; ++x) cq[x] = initial(q, q_labels, x);
    {
        std::map<int, int> count;
        for (int c : cp) ++count[c];
        for (int c : cq) --count[c];
        for (auto [c, k] : count)
            if (k != 0) return std::nullopt;
    }
    for (int round = 0; round < p.n; ++round) {
        std::vector<int> before = cp;
        if (!refine_round(p, q, cp, cq)) return std::nullopt;
        std::set<int> classes_before(before.begin(), before.end());
        std::set<int> classes_after(cp.begin(), cp.end());
        if (classes_after.size() == classes_before.size()) break;  // stable
    }

    std::vector<int> mp(p.n, -1), mq(q.n, -1);
    if (!extend_match(p, q, cp, cq, mp, mq)) return std::nullopt;
    PosetIso iso;
    iso.forward = std::move(mp);
    iso.inverse = std::move(mq);
    return iso;
}

std::optional<PosetIso> poset_isomorphism(const QDPoset& p, const QDPoset& q) {
    return poset_isomorphism(abstract_of(p), abstract_of(q));
}

std::string hasse_export(const QDPoset& p) {
    std::ostringstream out;
    out << "digraph QD {\n";
    for (int i = 0; i < p.size(); ++i) {
        const auto& el = p.elements()[i];
        out << "  n" << i << " [label=\""
            << dot_escape("(" + render_edge_set(el.edges) + " | " +
                          render_divisor(el.divisor) + ")")
            << "\"];\n";
    }
    for (const auto& c : p.covers())
        out << "  n" << c.parent << " -> n" << c.child << " [label=\""
            << dot_escape(c.edge + "->" + c.to_vertex) << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace qdp
