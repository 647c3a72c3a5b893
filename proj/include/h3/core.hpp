#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "h3/vertex_set.hpp"

namespace h3 {

// Unordered pair stored with u < v.
struct Pair {
    Vertex u = 0;
    Vertex v = 0;

    static Pair of(Vertex a, Vertex b);
    auto operator<=>(const Pair&) const = default;
};

// Edge stored with a < b < c.
struct Triple {
    Vertex a = 0;
    Vertex b = 0;
    Vertex c = 0;

    static Triple of(Vertex x, Vertex y, Vertex z);
    bool contains(Vertex v) const { return a == v || b == v || c == v; }
    auto operator<=>(const Triple&) const = default;
};

// Ordered pair (tail, head), used for trail ends and residual arcs.
struct Arc {
    Vertex from = 0;
    Vertex to = 0;

    Arc reversed() const { return {to, from}; }
    auto operator<=>(const Arc&) const = default;
};

using OrderedTriple = std::array<Vertex, 3>;

class Graph2;

// 3-uniform hypergraph on vertices 0..n-1. For every pair x<y it keeps the
// neighbourhood N(xy) as a bitset row, so edge tests are O(1) and codegrees
// are popcounts.
class ThreeGraph {
public:
    ThreeGraph() = default;
    explicit ThreeGraph(std::size_t n);

    std::size_t n() const { return n_; }
    std::size_t edge_count() const { return edge_count_; }
    bool empty() const { return edge_count_ == 0; }

    bool contains(Vertex x, Vertex y, Vertex z) const;
    bool contains(const Triple& t) const { return contains(t.a, t.b, t.c); }

    // Return whether the graph changed.
    bool add(Vertex x, Vertex y, Vertex z);
    bool add(const Triple& t) { return add(t.a, t.b, t.c); }
    bool remove(Vertex x, Vertex y, Vertex z);
    bool remove(const Triple& t) { return remove(t.a, t.b, t.c); }

    std::span<const VertexSet::Word> row(Vertex x, Vertex y) const;
    VertexSet neighbourhood(Vertex x, Vertex y) const;
    std::size_t codegree(Vertex x, Vertex y) const;
    std::size_t codegree(Vertex x, Vertex y, const VertexSet& within) const;
    std::size_t degree(Vertex x) const;
    std::size_t degree(Vertex x, const VertexSet& within) const;

    // Lexicographic order.
    std::vector<Triple> edges() const;
    template <class F>
    void for_each_edge(F&& f) const;

    VertexSet support() const;
    ThreeGraph induced(const VertexSet& within) const;
    // Same vertex count required.
    ThreeGraph& operator|=(const ThreeGraph& o);
    ThreeGraph& operator-=(const ThreeGraph& o);
    bool operator==(const ThreeGraph& o) const;

private:
    std::size_t pair_slot(Vertex x, Vertex y) const;
    VertexSet::Word* row_ptr(std::size_t slot) { return bits_.data() + slot * words_; }
    const VertexSet::Word* row_ptr(std::size_t slot) const { return bits_.data() + slot * words_; }
    void check_vertex(Vertex v) const;
    void flip(Vertex x, Vertex y, Vertex z, bool on);

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<VertexSet::Word> bits_;
    std::vector<std::size_t> degree_;
};

// Simple 2-graph: sorted distinct pairs.
class Graph2 {
public:
    Graph2() = default;
    explicit Graph2(std::size_t n) : n_(n) {}
    Graph2(std::size_t n, std::vector<Pair> pairs);

    std::size_t n() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Pair>& edges() const { return edges_; }
    bool contains(Vertex x, Vertex y) const;
    std::vector<std::vector<Vertex>> adjacency() const;
    bool operator==(const Graph2&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Pair> edges_;
};

struct DivisibilityKind {
    enum class Kind { Vertex3, Cycle, K43 };
    Kind kind = Kind::Vertex3;
    std::size_t ell = 0;

    static DivisibilityKind vertex3() { return {Kind::Vertex3, 0}; }
    static DivisibilityKind cycle(std::size_t ell);
    static DivisibilityKind k43() { return {Kind::K43, 0}; }
};

struct DivisibilityViolation {
    enum class What { VertexDegree, EdgeCount, Codegree };
    What what = What::VertexDegree;
    std::optional<Vertex> vertex;
    std::optional<Pair> pair;
    std::size_t value = 0;
    std::size_t modulus = 0;

    std::string describe() const;
};

struct DivisibilityResult {
    bool ok = true;
    std::optional<DivisibilityViolation> violation;
};

ThreeGraph build_graph(std::size_t n, std::span<const Triple> triples);
ThreeGraph build_graph_unordered(std::size_t n, std::span<const OrderedTriple> triples);
ThreeGraph complete_graph(std::size_t n);

std::size_t codegree(const ThreeGraph& g, Vertex x, Vertex y,
                     const std::optional<VertexSet>& within = std::nullopt);
std::size_t degree(const ThreeGraph& g, Vertex x,
                   const std::optional<VertexSet>& within = std::nullopt);
std::size_t min_codegree(const ThreeGraph& g);
std::size_t max_codegree(const ThreeGraph& g);
Graph2 shadow(const ThreeGraph& g);
// Link graph H(x, U): pairs yz inside U with xyz an edge.
Graph2 link(const ThreeGraph& g, Vertex x, const std::optional<VertexSet>& within = std::nullopt);
VertexSet joint_neighbourhood(const ThreeGraph& g, Pair e1, Pair e2, Pair e3, const VertexSet& within);
DivisibilityResult check_divisibility(const ThreeGraph& g, DivisibilityKind kind);

// Edges of g whose vertices all lie in `within`.
ThreeGraph restrict_to(const ThreeGraph& g, const VertexSet& within);
ThreeGraph edge_union(const ThreeGraph& a, const ThreeGraph& b);
ThreeGraph edge_difference(const ThreeGraph& a, const ThreeGraph& b);

// .3g text format.
ThreeGraph read_3g(std::istream& in);
void write_3g(std::ostream& out, const ThreeGraph& g);
ThreeGraph load_3g(const std::string& path);
void save_3g(const std::string& path, const ThreeGraph& g);

template <class F>
void ThreeGraph::for_each_edge(F&& f) const
{
    for (Vertex a = 0; a < n_; ++a) {
        for (Vertex b = a + 1; b < n_; ++b) {
            const VertexSet::Word* r = row_ptr(pair_slot(a, b));
            // only c > b, so start from the word holding b + 1
            for (std::size_t w = (b + 1) / VertexSet::word_bits; w < words_; ++w) {
                VertexSet::Word bits = r[w];
                if (w == (b + 1) / VertexSet::word_bits) {
                    std::size_t off = (b + 1) % VertexSet::word_bits;
                    bits = off == 0 ? bits : (bits >> off) << off;
                }
                while (bits) {
                    Vertex c = static_cast<Vertex>(w * VertexSet::word_bits + std::countr_zero(bits));
                    f(Triple{a, b, c});
                    bits &= bits - 1;
                }
            }
        }
    }
}

} // namespace h3
