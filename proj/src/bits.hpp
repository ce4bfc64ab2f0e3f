#pragma once

// Internal bitmask helpers shared by the enumeration code.  Vertex sets of
// the graphs this library enumerates over are tiny (the CLI caps edges at
// QDPOSET_MAX_EDGES), so subsets are uint64_t masks.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qdp/graph.hpp"

namespace qdp::detail {

// Adjacency mask per vertex index through non-loop edges.
inline std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
    int n = g.vertex_count();
    if (n > 63) throw std::invalid_argument("exhaustive enumeration supports at most 63 vertices");
    std::vector<std::uint64_t> adj(n, 0);
    for (const auto& e : g.edges()) {
        int a = g.vertex_index(e.ends[0]);
        int b = g.vertex_index(e.ends[1]);
        if (a == b) continue;
        adj[a] |= std::uint64_t{1} << b;
        adj[b] |= std::uint64_t{1} << a;
    }
    return adj;
}

// Is the induced subgraph on `mask` connected?  The empty set counts as
// connected here; callers that care exclude it themselves.
inline bool mask_connected(std::uint64_t mask, const std::vector<std::uint64_t>& adj) {
    if (mask == 0) return true;
    std::uint64_t reach = mask & (~mask + 1);  // lowest set bit
    for (;;) {
        std::uint64_t next = reach;
        std::uint64_t rest = reach;
        while (rest) {
            int v = __builtin_ctzll(rest);
            rest &= rest - 1;
            next |= adj[v] & mask;
        }
        if (next == reach) break;
        reach = next;
    }
    return reach == mask;
}

// Calls fn(mask) for every hemisphere V (nonempty, proper, both sides
// connected), in increasing mask order.
template <class F>
inline void for_each_hemisphere(int n, const std::vector<std::uint64_t>& adj, F&& fn) {
    if (n <= 1) return;
    if (n > 24) throw std::invalid_argument("hemisphere enumeration supports at most 24 vertices");
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        if (mask_connected(mask, adj) && mask_connected(full & ~mask, adj)) fn(mask);
    }
}

}  // namespace qdp::detail
