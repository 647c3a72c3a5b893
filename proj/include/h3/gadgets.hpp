#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "h3/core.hpp"
#include "h3/tour_trail.hpp"
#include "h3/walks.hpp"

namespace h3 {

struct GadgetOptions {
    std::uint64_t seed = 0;
    unsigned restarts = 64;               // pathfinder restarts per connector
    unsigned retries = 16;                // fresh seeds per sub-build
    const VertexSet* forbidden = nullptr; // never used as new gadget vertices
};

// C_l-decomposable subgraph together with its cycle certificate and, for
// S3/C4/P6, the trails that realise its residual contribution.
struct Gadget {
    std::vector<Triple> edges; // sorted
    std::vector<WalkSeq> cycles;
    TourTrailDecomposition ttd;

    ResidualDigraph residual_delta() const { return residual(ttd); }
};

// True iff `cycles` are edge-disjoint l-cycles whose union is exactly the
// given edge set.
bool certifies(std::vector<Triple> edges, const std::vector<WalkSeq>& cycles, std::size_t ell);
bool certifies(const ThreeGraph& g, const std::vector<WalkSeq>& cycles, std::size_t ell);

// Residual multisets the gadgets are required to realise.
ResidualDigraph s3_arcs(std::size_t n, Vertex v1, Vertex v2, Vertex v3);
ResidualDigraph c4_arcs(std::size_t n, std::array<Vertex, 4> v);
ResidualDigraph p6_arcs(std::size_t n, std::array<Vertex, 6> v);

// Edges of `avoid` are never used. Gadget vertices other than the given
// attachment vertices are new in the sense that they avoid opts.forbidden.
Gadget build_S3(const ThreeGraph& host, const ThreeGraph& avoid, Vertex v1, Vertex v2, Vertex v3, std::size_t ell,
                const GadgetOptions& opts = {});
Gadget build_C4(const ThreeGraph& host, const ThreeGraph& avoid, std::array<Vertex, 4> v, std::size_t ell,
                const GadgetOptions& opts = {});
Gadget build_P6(const ThreeGraph& host, const ThreeGraph& avoid, std::array<Vertex, 6> v, std::size_t ell,
                const GadgetOptions& opts = {});

// k l-cycles sharing one consecutive pair; ttd holds the single tour.
Gadget build_B(const ThreeGraph& host, const ThreeGraph& avoid, std::size_t k, std::size_t ell,
               const GadgetOptions& opts = {});

struct MergedTours {
    Gadget connector; // one l-cycle
    WalkSeq merged;
};

MergedTours merge_tours(const ThreeGraph& host, const ThreeGraph& avoid, const WalkSeq& t1, const WalkSeq& t2,
                        std::size_t ell, const GadgetOptions& opts = {});

// (R,C)-transformer: r_side decomposes R u L, c_side decomposes C u L.
struct Transformer {
    std::vector<Triple> edges;
    std::vector<WalkSeq> r_side;
    std::vector<WalkSeq> c_side;
};

Transformer build_transformer(const ThreeGraph& host, const ThreeGraph& avoid, const WalkSeq& r, const WalkSeq& c,
                              std::size_t ell, const GadgetOptions& opts = {});

// Absorber A for R: both A and A u R carry C_l-decompositions.
struct Absorber {
    std::vector<Triple> edges; // sorted
    std::vector<WalkSeq> cycles;        // decomposes A
    std::vector<WalkSeq> cycles_with_r; // decomposes A u R
    std::size_t tour_gadget_edges = 0;  // A1
    std::size_t merge_edges = 0;        // A'
    std::size_t merged_tour_edges = 0;  // m'
    std::size_t cycle_edges = 0;        // C
    std::size_t b_edges = 0;            // B
    std::size_t l1_edges = 0;
    std::size_t l2_edges = 0;
};

// A2 = L1 u C u L2 u B for a single C_l-divisible tour r.
Absorber build_absorber_from_tour(const ThreeGraph& host, const ThreeGraph& avoid, const WalkSeq& r,
                                  std::size_t ell, const GadgetOptions& opts = {});

// Full absorber for a C_l-divisible r inside host.
Absorber build_absorber(const ThreeGraph& host, const ThreeGraph& r, std::size_t ell, const GadgetOptions& opts = {});

// Tour decomposition of r: an exact partition into tight cycles when a
// budgeted search finds one, otherwise greedily peeled cycles plus
// single-edge trails with opposite ends merged.
TourTrailDecomposition initial_ttd(const ThreeGraph& r, std::uint64_t node_budget = 200000);

} // namespace h3
