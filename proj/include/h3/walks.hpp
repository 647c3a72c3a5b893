#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "h3/core.hpp"

namespace h3 {

enum class WalkKind { Walk, Trail, Path, ClosedWalk, Tour, Cycle };

bool is_closed_kind(WalkKind kind);
const char* to_string(WalkKind kind);

struct TripleHash {
    std::size_t operator()(const Triple& t) const noexcept;
};

class WalkSeq;
namespace detail {
WalkSeq check_walk(std::vector<Vertex> seq, WalkKind kind, const ThreeGraph* host);
}

// Validated tight walk. Consecutive triples (cyclically when closed) are the
// edges, stored in traversal order.
class WalkSeq {
public:
    WalkSeq() = default;

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Triple>& edges() const { return edges_; }
    WalkKind kind() const { return kind_; }
    bool closed() const { return is_closed_kind(kind_); }
    std::size_t size() const { return vertices_.size(); }
    Vertex operator[](std::size_t i) const { return vertices_[i]; }

    WalkSeq reversed() const;
    // Edges as a graph on n vertices.
    ThreeGraph edge_graph(std::size_t n) const;

    bool operator==(const WalkSeq& o) const { return kind_ == o.kind_ && vertices_ == o.vertices_; }

private:
    friend WalkSeq detail::check_walk(std::vector<Vertex> seq, WalkKind kind, const ThreeGraph* host);

    std::vector<Vertex> vertices_;
    std::vector<Triple> edges_;
    WalkKind kind_ = WalkKind::Walk;
};

// Structural check plus host membership of every window.
WalkSeq validate(std::vector<Vertex> seq, WalkKind kind, const ThreeGraph& host);
// Structural check only; for sequences whose windows are known host edges.
WalkSeq assemble(std::vector<Vertex> seq, WalkKind kind);

// ((u2,u1), (u_{k-1},u_k)) of an open walk.
std::pair<Arc, Arc> ends(const WalkSeq& trail);

// max(|e ∩ s(P)|, |e ∩ t(P)|).
unsigned classify_type(const WalkSeq& path, Pair e);

// Inserts the cycle at a consecutive pair it shares with the tour.
WalkSeq splice_cycle(const WalkSeq& tour, const WalkSeq& cycle);

// Joins t1 at its end (x,y) with t2 at its end (y,x). If t1 and t2 are the
// same trail (equal or reversed sequences) with ends (x,y),(y,x), returns
// the tour obtained by closing it.
WalkSeq merge_opposite_trails(const WalkSeq& t1, const WalkSeq& t2);
// Joins at the given arc: t1 must have end `at`, t2 must have end at.reversed().
WalkSeq merge_at(const WalkSeq& t1, const WalkSeq& t2, Arc at);
// Closes a trail whose ends are (x,y) and (y,x).
WalkSeq close_trail(const WalkSeq& t);

// Every unordered pair of vertices with positive host degree occurs
// consecutively in w (cyclically when w is closed).
bool is_spanning_trail(const WalkSeq& w, const ThreeGraph& host);

// Lexicographically least rotation/reflection.
std::vector<Vertex> canonical_cycle(std::span<const Vertex> cycle);

// Reorders an open walk so that its terminal end equals `end`; the walk must
// have that arc as one of its ends.
WalkSeq orient_to_end(const WalkSeq& trail, Arc end);

} // namespace h3
