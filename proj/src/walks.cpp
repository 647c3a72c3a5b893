#include "h3/walks.hpp"

#include <algorithm>
#include <unordered_set>

#include "h3/error.hpp"
#include "h3/rng.hpp"

namespace h3 {

bool is_closed_kind(WalkKind kind)
{
    return kind == WalkKind::ClosedWalk || kind == WalkKind::Tour || kind == WalkKind::Cycle;
}

const char* to_string(WalkKind kind)
{
    switch (kind) {
    case WalkKind::Walk: return "walk";
    case WalkKind::Trail: return "trail";
    case WalkKind::Path: return "path";
    case WalkKind::ClosedWalk: return "closed walk";
    case WalkKind::Tour: return "tour";
    case WalkKind::Cycle: return "cycle";
    }
    return "walk";
}

std::size_t TripleHash::operator()(const Triple& t) const noexcept
{
    std::uint64_t key = (static_cast<std::uint64_t>(t.a) << 42) ^ (static_cast<std::uint64_t>(t.b) << 21) ^ t.c;
    return static_cast<std::size_t>(mix64(key));
}

namespace detail {

WalkSeq check_walk(std::vector<Vertex> seq, WalkKind kind, const ThreeGraph* host)
{
    const bool closed = is_closed_kind(kind);
    const bool edge_distinct = kind != WalkKind::Walk && kind != WalkKind::ClosedWalk;
    const bool vertex_distinct = kind == WalkKind::Path || kind == WalkKind::Cycle;
    const std::size_t k = seq.size();
    const std::size_t min_len = kind == WalkKind::Cycle ? 4 : 3;
    if (k < min_len)
        fail(ErrorCode::TooShort, std::string(to_string(kind)) + " needs at least " +
                                      std::to_string(min_len) + " vertices");
    const std::size_t windows = closed ? k : k - 2;
    std::vector<Triple> edges;
    edges.reserve(windows);
    std::unordered_set<Triple, TripleHash> seen;
    for (std::size_t i = 0; i < windows; ++i) {
        Vertex x = seq[i];
        Vertex y = seq[(i + 1) % k];
        Vertex z = seq[(i + 2) % k];
        if (x == y || y == z || x == z || (host && !host->contains(x, y, z)))
            fail(ErrorCode::NotAnEdge, "window at index " + std::to_string(i) + " is not an edge", i);
        Triple t = Triple::of(x, y, z);
        if (edge_distinct && !seen.insert(t).second)
            fail(ErrorCode::RepeatedEdge, "edge repeats at index " + std::to_string(i), i);
        edges.push_back(t);
    }
    if (vertex_distinct) {
        std::unordered_set<Vertex> used;
        for (std::size_t i = 0; i < k; ++i)
            if (!used.insert(seq[i]).second)
                fail(ErrorCode::RepeatedVertex, "vertex repeats at index " + std::to_string(i), i);
    }
    WalkSeq w;
    w.vertices_ = std::move(seq);
    w.edges_ = std::move(edges);
    w.kind_ = kind;
    return w;
}

} // namespace detail

WalkSeq validate(std::vector<Vertex> seq, WalkKind kind, const ThreeGraph& host)
{
    return detail::check_walk(std::move(seq), kind, &host);
}

WalkSeq assemble(std::vector<Vertex> seq, WalkKind kind)
{
    return detail::check_walk(std::move(seq), kind, nullptr);
}

WalkSeq WalkSeq::reversed() const
{
    std::vector<Vertex> r(vertices_.rbegin(), vertices_.rend());
    return assemble(std::move(r), kind_);
}

ThreeGraph WalkSeq::edge_graph(std::size_t n) const
{
    ThreeGraph g(n);
    for (const auto& t : edges_)
        g.add(t);
    return g;
}

std::pair<Arc, Arc> ends(const WalkSeq& trail)
{
    if (trail.closed())
        fail(ErrorCode::ClosedWalk, "closed walks have no ends");
    const auto& v = trail.vertices();
    const std::size_t k = v.size();
    return {Arc{v[1], v[0]}, Arc{v[k - 2], v[k - 1]}};
}

unsigned classify_type(const WalkSeq& path, Pair e)
{
    const auto& v = path.vertices();
    const std::size_t k = v.size();
    auto overlap = [&](Vertex p, Vertex q) {
        unsigned c = 0;
        c += (e.u == p || e.u == q) ? 1U : 0U;
        c += (e.v == p || e.v == q) ? 1U : 0U;
        return c;
    };
    return std::max(overlap(v[0], v[1]), overlap(v[k - 2], v[k - 1]));
}

namespace {

void require_disjoint(const WalkSeq& a, const WalkSeq& b)
{
    std::unordered_set<Triple, TripleHash> seen(a.edges().begin(), a.edges().end());
    for (const auto& t : b.edges())
        if (seen.count(t))
            fail(ErrorCode::EdgeOverlap, "walks share an edge");
}

} // namespace

WalkSeq splice_cycle(const WalkSeq& tour, const WalkSeq& cycle)
{
    if (!tour.closed() || !cycle.closed())
        fail(ErrorCode::PreconditionFailed, "splice_cycle needs a tour and a cycle");
    require_disjoint(tour, cycle);
    const auto& t = tour.vertices();
    const auto& c = cycle.vertices();
    const std::size_t k = t.size();
    const std::size_t m = c.size();
    for (std::size_t i = 0; i < k; ++i) {
        Vertex a = t[i];
        Vertex b = t[(i + 1) % k];
        auto pa = std::find(c.begin(), c.end(), a);
        auto pb = std::find(c.begin(), c.end(), b);
        if (pa == c.end() || pb == c.end())
            continue;
        std::size_t ia = static_cast<std::size_t>(pa - c.begin());
        std::size_t ib = static_cast<std::size_t>(pb - c.begin());
        bool forward = ib == (ia + 1) % m;
        bool backward = ia == (ib + 1) % m;
        if (!forward && !backward)
            continue;
        // cycle as v1=a, v2=b, v3, ..., vm; insert v3..vm v1 v2 after b
        std::vector<Vertex> insert;
        insert.reserve(m);
        for (std::size_t s = 2; s < m + 2; ++s) {
            std::size_t idx = forward ? (ia + s) % m : (ia + m * 2 - s) % m;
            insert.push_back(c[idx]);
        }
        std::size_t j = (i + 1) % k;
        std::vector<Vertex> out(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        out.insert(out.end(), insert.begin(), insert.end());
        out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(j) + 1, t.end());
        return assemble(std::move(out), WalkKind::Tour);
    }
    fail(ErrorCode::NoSharedConsecutivePair, "cycle shares no consecutive pair with the tour");
}

WalkSeq orient_to_end(const WalkSeq& trail, Arc end)
{
    auto [first, last] = ends(trail);
    if (last == end)
        return trail;
    if (first == end)
        return trail.reversed();
    fail(ErrorCode::NoOppositeEnds, "walk has no end (" + std::to_string(end.from) + "," +
                                        std::to_string(end.to) + ")");
}

WalkSeq merge_at(const WalkSeq& t1, const WalkSeq& t2, Arc at)
{
    require_disjoint(t1, t2);
    WalkSeq a = orient_to_end(t1, at);
    // t2 oriented to end in (y,x), then reversed, starts with x y
    WalkSeq b = orient_to_end(t2, at.reversed()).reversed();
    std::vector<Vertex> out = a.vertices();
    out.insert(out.end(), b.vertices().begin() + 2, b.vertices().end());
    return assemble(std::move(out), WalkKind::Trail);
}

WalkSeq close_trail(const WalkSeq& t)
{
    auto [first, last] = ends(t);
    if (first != last.reversed())
        fail(ErrorCode::NoOppositeEnds, "trail ends are not opposite");
    std::vector<Vertex> v = t.vertices();
    v.resize(v.size() - 2);
    return assemble(std::move(v), WalkKind::Tour);
}

WalkSeq merge_opposite_trails(const WalkSeq& t1, const WalkSeq& t2)
{
    if (t1.closed() || t2.closed())
        fail(ErrorCode::ClosedWalk, "merging needs open trails");
    std::vector<Vertex> rev(t2.vertices().rbegin(), t2.vertices().rend());
    if (t1.vertices() == t2.vertices() || t1.vertices() == rev)
        return close_trail(t1);
    auto [a1, a2] = ends(t1);
    auto [b1, b2] = ends(t2);
    for (Arc e : {a1, a2})
        if (e.reversed() == b1 || e.reversed() == b2)
            return merge_at(t1, t2, e);
    fail(ErrorCode::NoOppositeEnds, "trails have no opposite ends");
}

bool is_spanning_trail(const WalkSeq& w, const ThreeGraph& host)
{
    const std::size_t n = host.n();
    std::vector<Vertex> support = host.support().members();
    if (support.size() < 2)
        return true;
    std::vector<char> seen(n * n, 0);
    const auto& v = w.vertices();
    const std::size_t k = v.size();
    const std::size_t steps = w.closed() ? k : k - 1;
    for (std::size_t i = 0; i < steps; ++i) {
        Vertex a = v[i];
        Vertex b = v[(i + 1) % k];
        if (a < n && b < n) {
            seen[a * n + b] = 1;
            seen[b * n + a] = 1;
        }
    }
    for (std::size_t i = 0; i < support.size(); ++i)
        for (std::size_t j = i + 1; j < support.size(); ++j)
            if (!seen[support[i] * n + support[j]])
                return false;
    return true;
}

std::vector<Vertex> canonical_cycle(std::span<const Vertex> cycle)
{
    const std::size_t m = cycle.size();
    std::vector<Vertex> best(cycle.begin(), cycle.end());
    std::vector<Vertex> cand(m);
    for (std::size_t start = 0; start < m; ++start) {
        for (int dir = 0; dir < 2; ++dir) {
            for (std::size_t i = 0; i < m; ++i)
                cand[i] = dir == 0 ? cycle[(start + i) % m] : cycle[(start + m - i) % m];
            if (cand < best)
                best = cand;
        }
    }
    return best;
}

} // namespace h3
