#include "h3/pathfinder.hpp"

#include <algorithm>
#include <unordered_set>

#include "h3/error.hpp"

namespace h3 {

namespace {

// N_g(xy) minus N_avoid(xy).
VertexSet open_nbhd(const ThreeGraph& g, const ThreeGraph* avoid, Vertex x, Vertex y)
{
    VertexSet s = g.neighbourhood(x, y);
    if (avoid)
        s.and_not_words(avoid->row(x, y));
    return s;
}

bool open_edge(const ThreeGraph& g, const ThreeGraph* avoid, Vertex x, Vertex y, Vertex z)
{
    return g.contains(x, y, z) && !(avoid && avoid->contains(x, y, z));
}

bool windows_distinct(const std::vector<Vertex>& seq)
{
    std::unordered_set<Triple, TripleHash> seen;
    for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
        if (seq[i] == seq[i + 1] || seq[i + 1] == seq[i + 2] || seq[i] == seq[i + 2])
            return false;
        if (!seen.insert(Triple::of(seq[i], seq[i + 1], seq[i + 2])).second)
            return false;
    }
    return true;
}

class Connector {
public:
    Connector(const ThreeGraph& g, Vertex a, Vertex b, Vertex c, Vertex d, std::size_t k,
              const PathConstraints& cons, bool fresh)
        : g_(g), a_(a), b_(b), c_(c), d_(d), k_(k), cons_(cons), fresh_(fresh), base_(g.n(), true)
    {
        if (cons.allowed)
            base_ &= *cons.allowed;
        if (cons.forbidden)
            base_ -= *cons.forbidden;
        if (fresh) {
            for (Vertex v : {a, b, c, d})
                base_.reset(v);
        } else {
            base_.reset(c);
            base_.reset(d);
        }
        if (b != c)
            last_cd_ = open_nbhd(g, cons.avoid, c, d);
    }

    // One randomized greedy attempt; returns 0 on success, else failed step.
    std::size_t attempt(Rng& rng, std::vector<Vertex>& out)
    {
        out.clear();
        const ThreeGraph* avoid = cons_.avoid;
        if (k_ == 0) {
            bool ok = a_ != c_ && b_ != c_ && b_ != d_ && open_edge(g_, avoid, a_, b_, c_) &&
                      open_edge(g_, avoid, b_, c_, d_) && Triple::of(a_, b_, c_) != Triple::of(b_, c_, d_);
            return ok ? 0 : 1;
        }
        VertexSet pool = base_;
        Vertex p2 = a_;
        Vertex p1 = b_;
        for (std::size_t j = 1; j <= k_; ++j) {
            VertexSet cand = open_nbhd(g_, avoid, p2, p1);
            cand &= pool;
            if (j == k_) {
                if (p1 == c_)
                    return j;
                cand &= open_nbhd(g_, avoid, p1, c_);
                cand &= last_cd_;
                if (cand.empty())
                    return j;
                out.push_back(cand.nth(static_cast<std::size_t>(rng.below(cand.count()))));
            } else if (j + 1 == k_) {
                std::vector<Vertex> order = cand.members();
                rng.shuffle(order);
                bool found = false;
                for (Vertex x : order) {
                    if (x == c_)
                        continue;
                    VertexSet last = open_nbhd(g_, avoid, p1, x);
                    last &= open_nbhd(g_, avoid, x, c_);
                    last &= last_cd_;
                    last &= pool;
                    last.reset(x);
                    if (!last.empty()) {
                        out.push_back(x);
                        found = true;
                        break;
                    }
                }
                if (!found)
                    return j;
            } else {
                if (cand.empty())
                    return j;
                out.push_back(cand.nth(static_cast<std::size_t>(rng.below(cand.count()))));
            }
            Vertex x = out.back();
            if (fresh_)
                pool.reset(x);
            p2 = p1;
            p1 = x;
        }
        std::vector<Vertex> seq{a_, b_};
        seq.insert(seq.end(), out.begin(), out.end());
        seq.push_back(c_);
        seq.push_back(d_);
        return windows_distinct(seq) ? 0 : k_;
    }

private:
    const ThreeGraph& g_;
    Vertex a_, b_, c_, d_;
    std::size_t k_;
    const PathConstraints& cons_;
    bool fresh_;
    VertexSet base_;
    VertexSet last_cd_;
};

} // namespace

ConnectResult connect(const ThreeGraph& g, Vertex a, Vertex b, Vertex c, Vertex d, std::size_t k,
                      const PathConstraints& cons, Rng& rng, unsigned restarts, bool fresh)
{
    ConnectResult res;
    if (a == b || c == d || b == c) {
        res.failed_step = 1;
        return res;
    }
    Connector conn(g, a, b, c, d, k, cons, fresh);
    unsigned tries = std::max(1U, restarts);
    for (unsigned t = 0; t < tries; ++t) {
        std::size_t step = conn.attempt(rng, res.internal);
        if (step == 0) {
            res.ok = true;
            res.failed_step = 0;
            return res;
        }
        res.failed_step = step;
        if (k == 0)
            break; // deterministic
    }
    res.internal.clear();
    return res;
}

WalkSeq find_path(const ThreeGraph& g, Vertex v1, Vertex v2, Vertex end1, Vertex end2, std::size_t length,
                  const PathConstraints& cons, const SearchOptions& opts)
{
    if (length < 4)
        fail(ErrorCode::PreconditionFailed, "a path with two prescribed end pairs needs at least 4 vertices");
    for (Vertex v : {v1, v2, end1, end2})
        if (v >= g.n())
            fail(ErrorCode::OutOfRange, "end vertex out of range");
    if (v1 == v2 || end1 == end2 || v1 == end1 || v1 == end2 || v2 == end1 || v2 == end2)
        fail(ErrorCode::PreconditionFailed, "end vertices must be distinct");
    if (cons.allowed_pairs && (!cons.allowed_pairs->contains(v1, v2) || !cons.allowed_pairs->contains(end1, end2)))
        fail(ErrorCode::PreconditionFailed, "end pairs must lie in the allowed pair set");
    Rng rng(opts.seed);
    ConnectResult r = connect(g, v1, v2, end1, end2, length - 4, cons, rng, opts.restarts, true);
    if (!r.ok)
        fail(ErrorCode::NoExtensionAvailable, "no path found", r.failed_step);
    std::vector<Vertex> seq{v1, v2};
    seq.insert(seq.end(), r.internal.begin(), r.internal.end());
    seq.push_back(end1);
    seq.push_back(end2);
    return validate(std::move(seq), WalkKind::Path, g);
}

WalkSeq extend_to_cycle(const ThreeGraph& g, const WalkSeq& p, std::size_t length, const PathConstraints& cons,
                        const SearchOptions& opts)
{
    if (p.kind() != WalkKind::Path)
        fail(ErrorCode::PreconditionFailed, "extend_to_cycle needs a path");
    const auto& v = p.vertices();
    if (v.size() + 1 > length)
        fail(ErrorCode::PreconditionFailed, "path already has " + std::to_string(v.size()) +
                                                " vertices; cycle length " + std::to_string(length));
    for (Vertex x : v)
        if (x >= g.n())
            fail(ErrorCode::OutOfRange, "path vertex out of range");
    PathConstraints local = cons;
    VertexSet forbid = cons.forbidden ? *cons.forbidden : VertexSet(g.n());
    for (Vertex x : v)
        forbid.set(x);
    local.forbidden = std::move(forbid);
    Rng rng(opts.seed);
    const std::size_t m = v.size();
    ConnectResult r = connect(g, v[m - 2], v[m - 1], v[0], v[1], length - m, local, rng, opts.restarts, true);
    if (!r.ok)
        fail(ErrorCode::NoExtensionAvailable, "no cycle extension found", r.failed_step);
    std::vector<Vertex> seq = v;
    seq.insert(seq.end(), r.internal.begin(), r.internal.end());
    return assemble(std::move(seq), WalkKind::Cycle);
}

WalkSeq close_to_tour(const ThreeGraph& g, const WalkSeq& trail, const ThreeGraph* avoid, const SearchOptions& opts)
{
    if (trail.closed())
        fail(ErrorCode::ClosedWalk, "trail is already closed");
    ThreeGraph blocked = avoid ? *avoid : ThreeGraph(g.n());
    for (const auto& t : trail.edges())
        blocked.add(t);
    PathConstraints cons;
    cons.avoid = &blocked;
    const auto& v = trail.vertices();
    const std::size_t m = v.size();
    Rng rng(opts.seed);
    for (std::size_t k = 0; k <= 3; ++k) {
        ConnectResult r = connect(g, v[m - 2], v[m - 1], v[0], v[1], k, cons, rng, opts.restarts, false);
        if (!r.ok)
            continue;
        std::vector<Vertex> seq = v;
        seq.insert(seq.end(), r.internal.begin(), r.internal.end());
        return validate(std::move(seq), WalkKind::Tour, g);
    }
    fail(ErrorCode::NoExtensionAvailable, "trail cannot be closed with at most three extra vertices");
}

std::uint64_t count_connector_walks(const ThreeGraph& g, OrderedTriple s, OrderedTriple t, std::size_t edges)
{
    if (!g.contains(s[0], s[1], s[2]))
        fail(ErrorCode::NotAnEdge, "start triple is not an edge");
    if (!g.contains(t[0], t[1], t[2]))
        fail(ErrorCode::NotAnEdge, "end triple is not an edge");
    if (edges <= 1)
        return s == t ? 1 : 0;
    const std::size_t n = g.n();
    // state (x,y) = last two vertices; after one edge the state is (s2,s3)
    std::vector<std::uint64_t> cur(n * n, 0);
    std::vector<std::uint64_t> next(n * n, 0);
    cur[s[1] * n + s[2]] = 1;
    // the final edge t is forced once the state is (t1,t2)
    for (std::size_t step = 2; step < edges; ++step) {
        std::fill(next.begin(), next.end(), 0);
        for (Vertex x = 0; x < n; ++x)
            for (Vertex y = 0; y < n; ++y) {
                std::uint64_t c = cur[x * n + y];
                if (c == 0)
                    continue;
                g.neighbourhood(x, y).for_each([&](Vertex z) {
                    std::uint64_t& slot = next[y * n + z];
                    if (__builtin_add_overflow(slot, c, &slot))
                        fail(ErrorCode::LimitExceeded, "walk count overflows 64 bits");
                });
            }
        std::swap(cur, next);
    }
    return cur[t[0] * n + t[1]];
}

bool is_alpha_connected(const ThreeGraph& g, double alpha)
{
    const std::size_t n = g.n();
    if (n < 5)
        fail(ErrorCode::PreconditionFailed, "alpha-connectivity needs at least 5 vertices");
    if (alpha <= 0.0)
        return true;
    const double need = alpha * static_cast<double>(n);
    for (Vertex v2 = 0; v2 < n; ++v2)
        for (Vertex v4 = 0; v4 < n; ++v4) {
            if (v4 == v2)
                continue;
            VertexSet mid = g.neighbourhood(v2, v4);
            for (Vertex v1 = 0; v1 < n; ++v1) {
                if (v1 == v2 || v1 == v4)
                    continue;
                VertexSet left = mid;
                left.and_words(g.row(v1, v2));
                for (Vertex v5 = 0; v5 < n; ++v5) {
                    if (v5 == v1 || v5 == v2 || v5 == v4)
                        continue;
                    std::size_t cnt = 0;
                    auto r = g.row(v4, v5);
                    auto l = left.words();
                    for (std::size_t w = 0; w < r.size(); ++w)
                        cnt += static_cast<std::size_t>(std::popcount(l[w] & r[w]));
                    if (static_cast<double>(cnt) < need)
                        return false;
                }
            }
        }
    return true;
}

} // namespace h3
