#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qdp {

// Finite multigraph with loops, parallel edges and nonnegative integer
// vertex weights.  Edges keep their two ends in a fixed order (end 0,
// end 1); for a loop both ends name the same vertex.  Vertices and edges
// are identified by strings and keep their insertion order, which makes
// every derived enumeration deterministic.

struct VertexData {
    std::string id;
    int weight = 0;
};

struct EdgeData {
    std::string id;
    std::array<std::string, 2> ends;
};

struct allow_disconnected_t {
    explicit allow_disconnected_t() = default;
};
// Tag for the few internal constructions (edge deletion, vertex removal)
// that legitimately produce disconnected graphs.
inline constexpr allow_disconnected_t allow_disconnected{};

class Graph {
public:
    Graph() = default;  // empty graph; useful only as a container default

    // Validates ids, endpoints and weights, and requires connectivity.
    Graph(std::vector<VertexData> vertices, std::vector<EdgeData> edges);

    // Same validation but connectivity is not required.
    Graph(std::vector<VertexData> vertices, std::vector<EdgeData> edges, allow_disconnected_t);

    int vertex_count() const { return static_cast<int>(verts_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<VertexData>& vertices() const { return verts_; }
    const std::vector<EdgeData>& edges() const { return edges_; }

    bool has_vertex(const std::string& id) const { return vidx_.count(id) != 0; }
    bool has_edge(const std::string& id) const { return eidx_.count(id) != 0; }
    int vertex_index(const std::string& id) const;  // throws std::invalid_argument if unknown
    int edge_index(const std::string& id) const;
    const VertexData& vertex(const std::string& id) const { return verts_[vertex_index(id)]; }
    const EdgeData& edge(const std::string& id) const { return edges_[edge_index(id)]; }

    bool is_loop(int edge_idx) const {
        return edges_[edge_idx].ends[0] == edges_[edge_idx].ends[1];
    }
    bool is_loop(const std::string& id) const { return is_loop(edge_index(id)); }

    // Incident edge indices (a loop appears once); insertion order.
    const std::vector<int>& incident(int vertex_idx) const { return inc_[vertex_idx]; }
    // Incident edge ids, sorted; loops appear once.
    std::vector<std::string> incident_edges(const std::string& vertex_id) const;

    int valence(const std::string& vertex_id) const;  // loops count twice
    int loops_at(const std::string& vertex_id) const;
    int edges_between(const std::string& u, const std::string& v) const;

    bool is_connected() const;
    int component_count() const;
    // Component label per vertex index (labels are 0..c-1 in discovery order).
    std::vector<int> component_labels() const;

    int total_weight() const;
    // First Betti number |E| - |V| + #components.
    int first_betti() const;

private:
    void build(bool require_connected);

    std::vector<VertexData> verts_;
    std::vector<EdgeData> edges_;
    std::unordered_map<std::string, int> vidx_, eidx_;
    std::vector<std::vector<int>> inc_;
};

// ---- genus and subgraphs ----------------------------------------------

// Genus g = b1 + total weight; requires a connected graph.
int genus(const Graph& g);

// Genus of the induced subgraph on the vertex set V: first Betti number of
// Γ(V) (which may be disconnected) plus the weights in V.
int subgraph_genus(const Graph& g, const std::vector<std::string>& V);

// Induced subgraph Γ(V): vertices V and every edge with both ends in V.
Graph induced_subgraph(const Graph& g, const std::vector<std::string>& V);

// Γ minus one vertex: drops v and every edge incident to it.
Graph vertex_deleted(const Graph& g, const std::string& v);

// Copy with all vertex weights set to zero.
Graph purify(const Graph& g);

// ---- cuts, bonds, hemispheres ------------------------------------------

// Edge ids of E(V, V^c), sorted.
std::vector<std::string> cut_of(const Graph& g, const std::vector<std::string>& V);

// All distinct nonempty cuts E(V, V^c), each sorted, list sorted.
std::vector<std::vector<std::string>> enumerate_cuts(const Graph& g);

// Inclusion-minimal nonempty cuts.
std::vector<std::vector<std::string>> enumerate_bonds(const Graph& g);

// Hemispheres: nonempty proper vertex sets V such that both Γ(V) and
// Γ(V^c) are connected.  Both members of a complementary pair are listed.
std::vector<std::vector<std::string>> enumerate_hemispheres(const Graph& g);

// ---- trees, bridges, cyclic structure -----------------------------------

// All spanning trees as sorted edge-id sets, lexicographically ordered.
std::vector<std::vector<std::string>> spanning_trees(const Graph& g);

// Bridges: edges whose removal disconnects the graph (loops never are).
std::vector<std::string> bridges(const Graph& g);

// ND(Γ) = E(Γ) minus the bridges, sorted.
std::vector<std::string> nondisconnecting_edges(const Graph& g);

// Maximal subsets E with Γ_E connected = complements of spanning trees.
std::vector<std::vector<std::string>> maximally_nondisconnecting_sets(const Graph& g);

// ---- graph surgeries -----------------------------------------------------

struct SubdivisionResult {
    Graph graph;                                        // Γ^{E0}
    std::map<std::string, std::string> exceptional;     // edge id -> id of its new vertex
};

// Subdivide every edge of E0: edge e = (a, b) becomes a weight-0 vertex
// "v@e" with edges "e:0" = (a, v@e) and "e:1" = (v@e, b).
SubdivisionResult subdivide(const Graph& g, const std::vector<std::string>& E0);

// Γ_{E0}: delete the edges of E0, keep all vertices.  When
// require_connected is set, a disconnecting E0 raises DisconnectedError.
Graph delete_edges(const Graph& g, const std::vector<std::string>& E0, bool require_connected);

// A specialization Γ ⇝ Γ': vertex map is surjective, the edge section
// identifies E(Γ') with a subset of E(Γ), and incidences commute.
struct SpecializationMap {
    Graph source;
    Graph target;
    std::map<std::string, std::string> vertex_map;    // V(source) -> V(target)
    std::map<std::string, std::string> edge_section;  // E(target) -> E(source), injective

    void validate() const;  // throws std::logic_error when the maps are inconsistent
};

// Γ/E0: contract the edges of E0.  Edges of E0 that close up (loops, or
// cycles within E0) are deleted; a merged vertex takes the
// lexicographically least constituent id and the sum of the weights.
SpecializationMap contract_edges(const Graph& g, const std::vector<std::string>& E0);

// ---- parallel edges -------------------------------------------------------

// Edges e, f are parallel if two distinct vertices are incident to both.
bool are_parallel(const Graph& g, const std::string& e, const std::string& f);

// Special pairs {e1, e2}: parallel, with no third edge parallel to them,
// and Γ minus both still connected.  Pairs are returned with e1 < e2 and
// the list sorted; distinct special pairs are always disjoint.
std::vector<std::pair<std::string, std::string>> special_pairs(const Graph& g);

// ---- biconnectivity --------------------------------------------------------

// Biconnectivity is taken in the subdivision-stable sense: a graph is
// biconnected when no subdivision of it has a disconnecting vertex.  Under
// this convention a single loop is biconnected, a bridge is not, and a
// vertex carrying a loop plus anything else is an articulation vertex.
bool is_articulation(const Graph& g, const std::string& v);
std::vector<std::string> articulation_vertices(const Graph& g);
bool is_biconnected(const Graph& g);

struct BiconnectedDecomposition {
    std::vector<Graph> components;          // edge sets partition E(Γ)
    std::vector<std::string> articulations;
};

// Blocks of the graph: maximal biconnected subgraphs, each bridge its own
// component, each loop its own component.  Vertex and edge ids are kept.
BiconnectedDecomposition biconnected_components(const Graph& g);

// A split of Γ at an articulation vertex v0: two connected subgraphs that
// share exactly v0 and partition the edge set, both nonempty.
struct Split {
    Graph first;
    Graph second;
};

Split split_at_articulation(const Graph& g, const std::string& v0);

// ---- equivalences ----------------------------------------------------------

// f : ND(Γ) -> ND(Γ') is a weak cyclic equivalence when it is a bijection
// carrying maximally nondisconnecting sets to maximally nondisconnecting
// sets (equivalently: spanning-tree complements to spanning-tree
// complements).
bool is_weak_cyclic_equivalence(const Graph& g, const Graph& h,
                                const std::map<std::string, std::string>& f);

struct GraphIso {
    std::map<std::string, std::string> vertex_map;
    std::map<std::string, std::string> edge_map;
};

// Isomorphism of weighted multigraphs; nullopt when none exists.  The
// search is deterministic, so equal inputs give equal witnesses.
std::optional<GraphIso> graph_isomorphic(const Graph& g, const Graph& h);

// Variant that must also preserve an edge attribute (used for metric
// graphs: the attribute is the edge length rendered as a string).
std::optional<GraphIso> graph_isomorphic_labeled(
    const Graph& g, const Graph& h,
    const std::map<std::string, std::string>& g_edge_label,
    const std::map<std::string, std::string>& h_edge_label);

}  // namespace qdp
