#pragma once

#include <map>
#include <string>
#include <vector>

#include "qdp/graph.hpp"
#include "qdp/qd_poset.hpp"
#include "qdp/rational.hpp"

namespace qdp {

// Metric graph (Γ, ℓ): a multigraph together with a positive rational
// length for every edge.  Lengths are exact end to end; comparisons of
// lengths and volumes are equality of rationals, never of floats.
struct MetricGraph {
    Graph graph;
    std::map<std::string, Rat> lengths;  // edge id -> length > 0
};

// Checks the length table: exactly one entry per edge of the graph, every
// value positive.  Throws std::invalid_argument otherwise.
void validate_metric_graph(const MetricGraph& x);

// Sum of all edge lengths.
Rat total_length(const MetricGraph& x);

// The canonical model of the underlying metric space: weight-0 vertices of
// valence 2 are suppressed one at a time (lexicographically least first),
// their two distinct incident edges concatenated into a single edge that
// keeps the lexicographically smaller id, the sum of the lengths, and the
// far end of the smaller edge as end 0.  A vertex whose valence comes from
// a loop is never suppressed, so the circle keeps its one-vertex-one-loop
// model.  The result has no suppressible vertices, preserves total length,
// and is a fixed point of the operation.
MetricGraph canonical_model(const MetricGraph& x);

// One cell of the Jacobian complex.  Element i of the QD poset, with edge
// set E, realizes the box ∏_{e ∈ E} [0, ℓ(e)]: coordinate x_e measures the
// distance of the exceptional point on e from end 0 of e.
struct JacobianCell {
    int element = -1;                // index into the poset
    int dim = 0;                     // |E|
    std::map<std::string, Rat> sides;  // edge id -> ℓ(e)
    Rat volume{1};                   // product of the sides; 1 for a point
};

// One gluing record per cover relation: the child cell is identified with
// the facet of the parent where the exceptional point of `edge` reaches an
// end — side 0 is the facet x_e = 0 (end 0 of the edge), side 1 the facet
// x_e = ℓ(e).  A loop contributes a single record (side 0), since both of
// its facets carry the same specialization.
struct JacobianAttachment {
    int parent = -1;
    int child = -1;
    std::string edge;
    int side = 0;

    friend bool operator==(const JacobianAttachment&, const JacobianAttachment&) = default;
};

// The polyhedral model of the tropical Jacobian: the face data of the
// colimit of the boxes, kept combinatorial.  Cells are indexed like the
// poset elements; the quotient topology itself is never materialized,
// because every comparison made here is decided by cells, lengths and
// attachments alone.
struct JacobianComplex {
    QDPoset poset;
    std::vector<JacobianCell> cells;
    std::vector<JacobianAttachment> attachments;
};

// Builds the complex over the given basepoint with the canonical
// polarization.  The underlying graph must be pure (weights would add
// abelian directions the boxes do not see); std::invalid_argument
// otherwise.  The input is used as given — callers who want the canonical
// model take it first.
JacobianComplex build_jacobian_complex(const MetricGraph& x, const std::string& basepoint);

// Number of cells per dimension, 0..max.  Equals the rank histogram of the
// underlying poset.
std::vector<int> f_vector(const JacobianComplex& j);

// Total volume of the maximal cells: Σ over top-dimensional cells of
// ∏_{e ∈ E} ℓ(e), which equals Σ over spanning trees T of ∏_{e ∉ T} ℓ(e).
// A point has volume 1.
Rat top_volume(const JacobianComplex& j);

// Two-sided metric comparison: the complex answer and the curve answer,
// computed independently, plus their agreement.  Isomorphic complexes
// force matching curves but not conversely (the complex remembers where
// articulation points subdivide a cycle block; the block as a curve does
// not), so agreement is the implication complexes ⇒ curves.
struct TropicalVerdict {
    bool complexes_isomorphic = false;  // Jacobian complexes isomorphic
    bool curves_match = false;          // biconnected pieces metrically isomorphic
    bool agree = false;                 // curves_match, or complexes not isomorphic
    std::map<std::string, std::string> witness;  // volumes, f-vectors, counts
};

// Compares two bridgeless pure metric graphs.  Bridged input is rejected
// with BridgedInputError (a bridge collapses to nothing in the Jacobian,
// so the comparison would be answering a different question); weights are
// rejected with std::invalid_argument.  Both curves are replaced by their
// canonical models first.  The complex side asks for a poset isomorphism
// that also matches every cell's multiset of side lengths — for an edge in
// no special pair this pins ℓ(e) exactly, for a special pair it pins the
// unordered pair of lengths.  The curve side decomposes into biconnected
// pieces, takes each piece's canonical model, and matches the two piece
// lists under length-preserving graph isomorphism.
TropicalVerdict tropical_torelli_compare(const MetricGraph& x, const MetricGraph& y);

}  // namespace qdp
