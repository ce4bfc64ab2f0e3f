#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qdp/divisor.hpp"
#include "qdp/graph.hpp"
#include "qdp/qd_poset.hpp"

namespace qdp {

// ---- model posets ----------------------------------------------------------

// The square poset P = {alpha, beta, gamma, delta}: two maximal elements,
// two minimal ones, and every maximal covering every minimal.  Element
// order: 0 = alpha, 1 = beta (rank 1); 2 = gamma, 3 = delta (rank 0).
AbstractPoset model_poset_P();

// The poset R = {alpha1, beta1..beta4, gamma1..gamma3}: one top covering
// four middles; beta1, beta2 cover {gamma1, gamma2} and beta3, beta4 cover
// {gamma2, gamma3}.  Element order: 0 = alpha1, 1..4 = beta1..beta4,
// 5..7 = gamma1..gamma3.
AbstractPoset model_poset_R();

// ---- images of P and R inside a QD poset -----------------------------------

// Every injective cover-preserving image of P in a QD poset is built from a
// pair of parallel edges e1, e2 with ends s, t over a common frame (E, D):
//
//   shape 1:  tops (E+e1, D+v_e1), (E+e2, D+v_e2); bottoms (E, D+s), (E, D+t)
//   shape 2:  tops (E+e1+e2, D-t+v_e1+v_e2), (E+e1+e2, D-s+v_e1+v_e2);
//             bottoms (E+e1, D+v_e1), (E+e2, D+v_e2)
struct PImageWitness {
    int shape = 0;                        // 1 or 2
    std::string e1, e2;                   // the parallel pair
    std::string s, t;                     // their common ends (end order of e1)
    std::vector<std::string> base_edges;  // E, sorted
    Divisor base_divisor;                 // D, keyed on the vertices of the E-subdivision
};

// Classifies the image of P under the mapping (indices into p.elements(),
// in model order alpha, beta, gamma, delta).  The mapping must be injective
// and carry the four cover relations of P to cover relations of p; anything
// else throws std::invalid_argument.  A valid mapping whose image matches
// neither shape would disprove the classification and raises FalsifierError.
PImageWitness classify_P_image(const QDPoset& p, const std::array<int, 4>& mapping);

// The eight-element family with top ({e1, e2}, D), where e1 and e2 are
// parallel with ends s, t (taken in the end order of e1):
//
//   alpha1 = ({e1,e2}, D)
//   beta1  = ({e1}, D - v_e2 + s)     beta2 = ({e2}, D - v_e1 + s)
//   beta3  = ({e1}, D - v_e2 + t)     beta4 = ({e2}, D - v_e1 + t)
//   gamma1 = (0, D - v_e1 - v_e2 + 2s)
//   gamma2 = (0, D - v_e1 - v_e2 + s + t)
//   gamma3 = (0, D - v_e1 - v_e2 + 2t)
//
// Results are in model order.  D must be a valid divisor for the pseudo-
// divisor ({e1,e2}, D); the edges must be parallel.
std::array<PseudoDivisor, 8> r_family(const Graph& g, const std::string& e1,
                                      const std::string& e2, const Divisor& D);

struct RImageWitness {
    std::string e1, e2;  // parallel pair: e1 carried by beta1, e2 by beta2
    std::string s, t;    // ends: s read off beta1, t off beta3
    Divisor divisor;     // divisor of the top element, on the {e1,e2}-subdivision
};

// Recovers the witnesses from an injective rank- and order-preserving image
// of R (indices in model order).  Rank or order violations throw
// std::invalid_argument; a valid mapping whose image is not an r_family
// would disprove the classification and raises FalsifierError.
RImageWitness locate_R_image(const QDPoset& p, const std::array<int, 8>& mapping);

// ---- parallel-edge detection from the order alone ---------------------------

// Both e and e0 must lie in pd's edge set and e must not be a loop.  Writing
// s, t for the ends of e, returns true iff some pseudo-divisor on E-{e,e0}
// lies below both (E-{e}, D - v_e + s) and (E-{e}, D - v_e + t).  A true
// result forces e and e0 to be parallel; a counterexample raises
// FalsifierError.
bool check_parallel_lemma(const Graph& g, const PseudoDivisor& pd, const std::string& e,
                          const std::string& e0);

// ---- the induced edge map and the normalized isomorphism --------------------

// The edge bijection read off a poset isomorphism, together with the special
// pairs of both graphs.  Special pairs map to special pairs; the map is a
// weak cyclic equivalence (both facts are verified on construction).
struct EdgeMap {
    std::map<std::string, std::string> forward;                       // E(G) -> E(H)
    std::vector<std::pair<std::string, std::string>> special_source;  // special pairs of G
    std::vector<std::pair<std::string, std::string>> special_target;  // special pairs of H
};

// Extracts the edge map from a poset isomorphism f : p -> q between the QD
// posets of two bridgeless graphs.  For an edge e in no special pair the
// image edge set of every ({e}, D) must be the same singleton; for a
// special pair {e1, e2} the image edge set of every ({e1,e2}, D) must be
// the same special pair, assigned in sorted order (f(min) = min).  Any
// dependence on D, or a failed weak-cyclic-equivalence check, raises
// FalsifierError.  Bridges or a malformed f throw std::invalid_argument.
EdgeMap induce_edge_map(const PosetIso& f, const QDPoset& p, const QDPoset& q);

// Rewrites f into the normalized isomorphism h with edge sets aligned to
// fE: h(E, D) keeps the vertex values of f(E, D) and carries the edge set
// fE(E).  The result satisfies edge-set-of(h(E,D)) = fE(E) everywhere and
// is again an order isomorphism; violations raise FalsifierError.
PosetIso normalize_iso(const PosetIso& f, const EdgeMap& fE, const QDPoset& p,
                       const QDPoset& q);

// ---- vertex-star recovery and bond location ---------------------------------

// The order-theoretic fingerprint of the star of v1: a frame (E1, D1) below
// a unique marked divisor for every proper subset of the edges at v1.
struct VertexStar {
    std::vector<std::string> E1;  // lexicographically least maximally
                                  // nondisconnecting subset away from v1
    int base_index = -1;          // index in p of (E1, D1)
    // proper subsets S of the edges at v1, by (size, lexicographic) order,
    // each with the index of the unique element above (E1, D1) on E1 + S
    std::vector<std::pair<std::vector<std::string>, int>> extensions;
};

// Requires a pure graph and a non-articulation vertex v1 (else
// std::invalid_argument).  D1 is the unique element of QD(G, E1) whose
// value at v1 is val(v1) - 1, or val(v1) - 2 when v1 is the basepoint; a
// missing or ambiguous divisor at any step raises FalsifierError.
VertexStar recover_vertex_star(const QDPoset& p, const std::string& v1);

// Outcome of probing a bond against a base element.
struct BondProbe {
    enum class Status { vertex_found, hypothesis_not_satisfied };
    Status status = Status::hypothesis_not_satisfied;
    std::string vertex;                 // set when a vertex was found
    std::vector<std::string> failed_S;  // first subset with a non-unique extension
    int failed_count = 0;               // how many extensions that subset had
};

// Tests the bond hypothesis at p.elements()[base_index] = (E, D): for every
// proper subset S of the bond there must be exactly one element above
// (E, D) with edge set E + S.  If some subset fails, reports it (this is
// not a counterexample to anything).  If all succeed, returns the
// lexicographically least vertex incident to every bond edge; absence of
// such a vertex would disprove the bond lemma and raises FalsifierError.
// The candidate must be a bond disjoint from E (else std::invalid_argument).
BondProbe bond_vertex_test(const QDPoset& p, int base_index,
                           const std::vector<std::string>& bond);

// ---- reconstruction and the two-sided comparison -----------------------------

// Rebuilds a graph isomorphism from a poset isomorphism f : p -> q, for
// biconnected pure graphs.  Graphs with at most two vertices are matched
// directly; otherwise each vertex star of the source is recovered, pushed
// through the normalized isomorphism, and located in the target via the
// bond test.  The result is verified edge by edge before returning; any
// failed uniqueness or verification step raises FalsifierError.
GraphIso reconstruct_biconnected(const PosetIso& f, const QDPoset& p, const QDPoset& q);

// Two-sided comparison: the poset answer and the graph answer, computed
// independently, plus their agreement.
struct TorelliVerdict {
    bool poset_isomorphic = false;   // QD posets isomorphic after reduction
    bool components_match = false;   // biconnected components match as pure graphs
    bool agree = false;              // the two answers coincide
    std::map<std::string, std::string> witness;  // sizes and counts backing the verdict
};

// Reduces both graphs (forget weights, contract bridges), then answers the
// same question twice: are the QD posets isomorphic, and do the biconnected
// components match up to isomorphism as a multiset?  The two answers agree
// on every input unless the reconstruction theorem itself fails.
TorelliVerdict torelli_compare(const Graph& g, const Graph& h);

// Exhaustive classification sweep over all images of the model posets in p.
struct ModelImageSweep {
    long long p_images = 0;  // cover-preserving P-images classified
    long long r_images = 0;  // rank-preserving R-images located
};

// Generates every injective cover-preserving image of P (two bottoms with
// at least two common parents) and every injective rank- and
// order-preserving image of R (rank-2 top, four middles, three bottoms)
// and runs classify_P_image / locate_R_image on each.  Returns the counts;
// an unclassifiable image surfaces as the FalsifierError raised below.
ModelImageSweep sweep_model_images(const QDPoset& p);

}  // namespace qdp
