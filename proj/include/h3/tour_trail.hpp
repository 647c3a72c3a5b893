#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "h3/core.hpp"
#include "h3/walks.hpp"

namespace h3 {

// Edge-disjoint tours and open trails.
struct TourTrailDecomposition {
    std::size_t n = 0;
    std::vector<WalkSeq> tours;
    std::vector<WalkSeq> trails;

    bool all_tours() const { return trails.empty(); }
    std::size_t edge_count() const;
    ThreeGraph edge_graph() const;
    // Appends another decomposition on the same vertex count.
    void absorb(const TourTrailDecomposition& o);
};

// Multiset of trail ends.
class ResidualDigraph {
public:
    ResidualDigraph() = default;
    explicit ResidualDigraph(std::size_t n) : n_(n) {}

    std::size_t n() const { return n_; }
    void add(Arc a, std::size_t times = 1);
    // Removes one copy; returns false if absent.
    bool remove(Arc a);
    std::size_t multiplicity(Arc a) const;
    bool contains(Arc a) const { return multiplicity(a) > 0; }
    std::size_t arc_count() const { return total_; }
    bool empty() const { return total_ == 0; }
    std::size_t out_degree(Vertex v) const;
    std::size_t in_degree(Vertex v) const;
    const std::map<Arc, std::size_t>& multiplicities() const { return mult_; }
    // Arcs with repetition, lexicographic.
    std::vector<Arc> arcs() const;

    bool operator==(const ResidualDigraph& o) const { return mult_ == o.mult_; }

private:
    std::size_t n_ = 0;
    std::size_t total_ = 0;
    std::map<Arc, std::size_t> mult_;
};

// Oriented triangle (a,b),(b,c),(c,a), rotated so that a is smallest.
using OrientedTriangle = std::array<Vertex, 3>;

struct TriangleLake {
    std::vector<OrientedTriangle> triangles;

    std::size_t arc_count() const { return 3 * triangles.size(); }
    bool empty() const { return triangles.empty(); }
};

// One trail a b c per edge {a<b<c}.
TourTrailDecomposition trivial_ttd(const ThreeGraph& r);

ResidualDigraph residual(const TourTrailDecomposition& t);

// Throws NotADecomposition unless the tours and trails partition host.
void require_decomposes(const TourTrailDecomposition& t, const ThreeGraph& host);

// d+(x) == d-(x) (mod 3) at every vertex of the residual.
bool check_mod3(const TourTrailDecomposition& t, const ThreeGraph& host);

// Merges one trail with end `a` and one with end a.reversed(). Returns false
// when either is missing.
bool cancel_arc(TourTrailDecomposition& t, Arc a);

// Repeats cancel_arc on the lexicographically least opposite pair until
// none remains.
TourTrailDecomposition cancel_opposite(TourTrailDecomposition t);

// Components that are simple oriented triangles with no other arcs.
TriangleLake sea_of_triangles(const ResidualDigraph& d);
bool is_sea(const ResidualDigraph& d);

// Residual arcs outside the sea.
std::size_t phi_potential(const TourTrailDecomposition& t);

// ---- sea-of-triangles reduction ------------------------------------------

struct SeaStep {
    int rule = 0; // 1..5 for cases I..V
    std::size_t arcs_before = 0;
    std::size_t arcs_after = 0;
    std::size_t phi_before = 0;
    std::size_t phi_after = 0;
    std::vector<Vertex> vertices; // a,b[,c[,d]] then fresh reservoir vertices
};

struct SeaResult {
    ThreeGraph added;             // T, edge-disjoint from r
    std::vector<WalkSeq> cycles;  // C_l-decomposition of `added`
    TourTrailDecomposition ttd;   // of r u added
    std::vector<SeaStep> trace;
    std::vector<Vertex> reservoir_left;
};

struct SeaOptions {
    std::uint64_t seed = 0;
    unsigned retries = 16;             // fresh seeds per gadget
    const ThreeGraph* avoid = nullptr; // extra edges gadgets must not use
    const VertexSet* forbidden = nullptr; // never used as gadget vertices
};

// Adds gadgets until the residual is a sea of triangles. Fresh gadget
// vertices are taken from the front of `reservoir`, which must be disjoint
// from V(r).
SeaResult reduce_to_sea(const ThreeGraph& host, const ThreeGraph& r, TourTrailDecomposition t,
                        std::vector<Vertex> reservoir, std::size_t ell, const SeaOptions& opts = {});

struct TourResult {
    ThreeGraph added;             // A1
    std::vector<WalkSeq> cycles;  // C_l-decomposition of A1
    TourTrailDecomposition ttd;   // tours only
};

// Pairs up the sea's triangles with prisms so that every arc cancels.
TourResult eliminate_triangles(const ThreeGraph& host, const ThreeGraph& r, SeaResult state, std::size_t ell,
                               const SeaOptions& opts = {});

} // namespace h3
