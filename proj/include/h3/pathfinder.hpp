#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "h3/core.hpp"
#include "h3/rng.hpp"
#include "h3/walks.hpp"

namespace h3 {

// Restrictions on the vertices and edges a connector may use.
struct PathConstraints {
    std::optional<VertexSet> allowed;      // U: internal vertices come from here
    const Graph2* allowed_pairs = nullptr; // G: prescribed end pairs must lie here
    const ThreeGraph* avoid = nullptr;     // edges that may not be used
    std::optional<VertexSet> forbidden;    // vertices never used internally
};

struct SearchOptions {
    std::uint64_t seed = 0;
    unsigned restarts = 64;
};

struct ConnectResult {
    std::vector<Vertex> internal;
    bool ok = false;
    std::size_t failed_step = 0; // 1-based step of the last failed attempt
};

// Finds w_1..w_k such that a b w_1..w_k c d is a tight walk whose k+2
// windows are distinct edges of g outside cons.avoid. With `fresh`, the
// w_i are distinct, avoid {a,b,c,d} and forbidden vertices, and lie in U.
// Without it only window validity is required (used to close tours).
ConnectResult connect(const ThreeGraph& g, Vertex a, Vertex b, Vertex c, Vertex d, std::size_t k,
                      const PathConstraints& cons, Rng& rng, unsigned restarts, bool fresh = true);

// (v1,v2,v_{l-1},v_l)-path on `length` vertices.
WalkSeq find_path(const ThreeGraph& g, Vertex v1, Vertex v2, Vertex end1, Vertex end2, std::size_t length,
                  const PathConstraints& cons = {}, const SearchOptions& opts = {});

// Cycle on `length` vertices containing p, new vertices in U. The edges of
// p itself need not lie in g (the extender grows h1-paths inside a reserve).
WalkSeq extend_to_cycle(const ThreeGraph& g, const WalkSeq& p, std::size_t length,
                        const PathConstraints& cons = {}, const SearchOptions& opts = {});

// Closes an open trail into a tour with at most three connector vertices,
// using edges outside `avoid` and the trail.
WalkSeq close_to_tour(const ThreeGraph& g, const WalkSeq& trail, const ThreeGraph* avoid = nullptr,
                      const SearchOptions& opts = {});

// Walks with `edges` edges whose first edge is s and last edge is t, as
// ordered triples. Throws LimitExceeded on 64-bit overflow.
std::uint64_t count_connector_walks(const ThreeGraph& g, OrderedTriple s, OrderedTriple t, std::size_t edges);

// For all distinct v1,v2,v4,v5: at least alpha*n vertices v3 make
// v1 v2 v3 v4 v5 a walk.
bool is_alpha_connected(const ThreeGraph& g, double alpha);

} // namespace h3
