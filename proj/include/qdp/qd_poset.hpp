#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdp/divisor.hpp"
#include "qdp/graph.hpp"

namespace qdp {

// One Hasse-diagram arrow: `parent` specializes to `child` by sliding the
// exceptional vertex of `edge` into `to_vertex`.
struct CoverRel {
    int parent = -1;
    int child = -1;
    std::string edge;
    std::string to_vertex;

    friend bool operator==(const CoverRel&, const CoverRel&) = default;
};

// The poset of (v0, mu)-quasistable pseudo-divisors, ranked by |E|.
// Elements are sorted by (|E|, edge ids, divisor values) so equal inputs
// produce identical posets.
class QDPoset {
  public:
    QDPoset(Graph g, std::string basepoint, Polarization mu,
            std::vector<PseudoDivisor> elements, std::vector<CoverRel> covers);

    const Graph& graph() const { return graph_; }
    const std::string& basepoint() const { return basepoint_; }
    const Polarization& polarization() const { return mu_; }
    const std::vector<PseudoDivisor>& elements() const { return elements_; }
    const std::vector<CoverRel>& covers() const { return covers_; }
    int size() const { return static_cast<int>(elements_.size()); }

    int rank(int i) const;                        // |E| of element i
    const std::vector<int>& parents(int i) const;   // indices covering i
    const std::vector<int>& children(int i) const;  // indices covered by i
    std::optional<int> find(const PseudoDivisor& pd) const;

    std::vector<int> maximal_elements() const;
    std::vector<int> rank_histogram() const;  // count per rank, 0..max

    // Order relation: i <= j iff i is reachable from j along covers.
    bool leq(int i, int j) const;

  private:
    Graph graph_;
    std::string basepoint_;
    Polarization mu_;
    std::vector<PseudoDivisor> elements_;
    std::vector<CoverRel> covers_;
    std::vector<std::vector<int>> parents_, children_;
    // descendant closure, one bitset row per element, built on first leq()
    mutable std::vector<std::vector<std::uint64_t>> desc_;
    void ensure_closure() const;
};

// Exhaustive construction: every E ⊆ E(Γ) with Γ_E connected, every
// quasistable divisor in the enumeration box.  Refuses graphs with more
// than QDPOSET_MAX_EDGES edges (environment variable, default 14).
QDPoset enumerate_qd(const Graph& g, const std::string& v0, const Polarization& mu);

// A bijection of element indices, order-preserving in both directions.
struct PosetIso {
    std::vector<int> forward;  // p-index -> q-index
    std::vector<int> inverse;  // q-index -> p-index
};

// The canonical isomorphism QD_{v0} -> QD_{v1}, (E, D) |-> (E, D + v0 - v1).
// Only defined for the canonical polarization.  Returns the target poset
// together with the witnessing iso.
std::pair<QDPoset, PosetIso> translate_basepoint(const QDPoset& p, const std::string& v1);

// The product decomposition at an articulation vertex v0 of a pure graph:
// sigma((E1,D1),(E2,D2)) = (E1 ∪ E2, D1 + D2 + v0) identifies
// QD(Γ1) × QD(Γ2) with QD(Γ).  Pair (i, j) sits at flat index
// i * factor2.size() + j.
struct ProductSplit {
    QDPoset factor1;
    QDPoset factor2;
    QDPoset whole;
    PosetIso iso;  // forward: flat product index -> index in whole
};

ProductSplit product_split(const Graph& g, const std::string& v0, const Split& split);

// True iff elements i and j (which must share their edge set E) are joined
// by a zig-zag of same-E elements in which consecutive ones have a common
// parent of rank |E| + 1.
bool is_upper_connected(const QDPoset& p, int i, int j);

// A bare ranked poset: covers only, rank recomputed as longest path from a
// minimal element.  abstract_from_covers refuses input where some cover
// does not drop the recomputed rank by exactly 1.
struct AbstractPoset {
    int n = 0;
    std::vector<std::pair<int, int>> covers;  // (parent, child)
    std::vector<int> rank;
    std::vector<std::vector<int>> parents, children;
};

AbstractPoset abstract_from_covers(int n, const std::vector<std::pair<int, int>>& covers);
AbstractPoset abstract_of(const QDPoset& p);

// Order-isomorphism of ranked posets, or nullopt.  Partition refinement on
// (rank, degrees, neighbor colors, optional element labels) followed by
// most-constrained-first backtracking; deterministic.
std::optional<PosetIso> poset_isomorphism(const AbstractPoset& p, const AbstractPoset& q,
                                          const std::vector<std::string>* p_labels = nullptr,
                                          const std::vector<std::string>* q_labels = nullptr);

std::optional<PosetIso> poset_isomorphism(const QDPoset& p, const QDPoset& q);

// DOT rendering of the Hasse diagram, edges parent -> child.
std::string hasse_export(const QDPoset& p);

}  // namespace qdp
