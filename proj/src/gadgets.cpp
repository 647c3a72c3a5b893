#include "h3/gadgets.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "h3/error.hpp"
#include "h3/pathfinder.hpp"
#include "h3/rng.hpp"
#include "workspace.hpp"

namespace h3 {

using detail::Workspace;

namespace {

constexpr std::uint64_t kSaltA = 0xA5;
constexpr std::uint64_t kSaltB = 0xB6;

void require_ell(std::size_t ell)
{
    if (ell < 7)
        fail(ErrorCode::BadParams, "gadgets need cycle length at least 7");
}

void require_distinct(std::initializer_list<Vertex> vs, std::size_t n)
{
    std::vector<Vertex> v(vs);
    for (Vertex x : v)
        if (x >= n)
            fail(ErrorCode::OutOfRange, "gadget vertex out of range");
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
        fail(ErrorCode::BadParams, "gadget vertices must be distinct");
}

void take_walk(Workspace& ws, const WalkSeq& w)
{
    for (const auto& e : w.edges())
        ws.take(e);
}

void append(Gadget& into, const Gadget& g)
{
    into.edges.insert(into.edges.end(), g.edges.begin(), g.edges.end());
    std::sort(into.edges.begin(), into.edges.end());
    into.cycles.insert(into.cycles.end(), g.cycles.begin(), g.cycles.end());
    into.ttd.absorb(g.ttd);
}

// Connects (a,b) to (c,d) with k new vertices avoiding ws.forbidden plus
// `extra`; nullopt on failure.
std::optional<std::vector<Vertex>> connect_in(Workspace& ws, Vertex a, Vertex b, Vertex c, Vertex d, std::size_t k,
                                              const VertexSet* extra, Rng& rng)
{
    PathConstraints cons;
    cons.avoid = &ws.used;
    VertexSet f = ws.forbidden;
    if (extra)
        f |= *extra;
    cons.forbidden = std::move(f);
    ConnectResult r = connect(ws.host, a, b, c, d, k, cons, rng, ws.restarts, true);
    if (!r.ok)
        return std::nullopt;
    return r.internal;
}

void check_delta(const Gadget& g, const ResidualDigraph& expect, const char* what)
{
    if (!(g.residual_delta() == expect))
        fail(ErrorCode::ConstructionFailed, std::string(what) + " gadget has the wrong residual arcs");
}

} // namespace

bool certifies(std::vector<Triple> edges, const std::vector<WalkSeq>& cycles, std::size_t ell)
{
    std::sort(edges.begin(), edges.end());
    std::vector<Triple> got;
    for (const auto& c : cycles) {
        if (c.kind() != WalkKind::Cycle || c.size() != ell)
            return false;
        got.insert(got.end(), c.edges().begin(), c.edges().end());
    }
    std::sort(got.begin(), got.end());
    return got == edges;
}

bool certifies(const ThreeGraph& g, const std::vector<WalkSeq>& cycles, std::size_t ell)
{
    return certifies(g.edges(), cycles, ell);
}

ResidualDigraph s3_arcs(std::size_t n, Vertex v1, Vertex v2, Vertex v3)
{
    ResidualDigraph d(n);
    d.add({v1, v3}, 2);
    d.add({v1, v2});
    d.add({v2, v3});
    return d;
}

ResidualDigraph c4_arcs(std::size_t n, std::array<Vertex, 4> v)
{
    ResidualDigraph d(n);
    for (std::size_t i = 0; i < 4; ++i)
        d.add({v[i], v[(i + 1) % 4]});
    return d;
}

ResidualDigraph p6_arcs(std::size_t n, std::array<Vertex, 6> v)
{
    ResidualDigraph d(n);
    for (std::size_t i = 0; i < 3; ++i) {
        d.add({v[i], v[(i + 1) % 3]});
        d.add({v[3 + i], v[3 + (i + 1) % 3]});
    }
    return d;
}

namespace detail {

Gadget s3(Workspace& ws, Vertex v1, Vertex v2, Vertex v3, std::uint64_t seed)
{
    const ThreeGraph& h = ws.host;
    const std::size_t ell = ws.ell;
    for (unsigned attempt = 0; attempt < ws.retries; ++attempt) {
        Rng rng(derive_seed(seed, attempt), kSaltA);
        const std::size_t mark = ws.mark();
        // hub x with v1v2x, v1v3x, v2v3x all free
        VertexSet cand = h.neighbourhood(v1, v2);
        cand.and_words(h.row(v1, v3));
        cand.and_words(h.row(v2, v3));
        cand.and_not_words(ws.used.row(v1, v2));
        cand.and_not_words(ws.used.row(v1, v3));
        cand.and_not_words(ws.used.row(v2, v3));
        cand -= ws.forbidden;
        for (Vertex v : {v1, v2, v3})
            cand.reset(v);
        if (cand.empty())
            break;
        Vertex x = cand.nth(static_cast<std::size_t>(rng.below(cand.count())));
        Triple e1 = Triple::of(v1, v3, x);
        Triple e2 = Triple::of(v3, x, v2);
        Triple e3 = Triple::of(x, v2, v1);
        ws.take(e1);
        ws.take(e2);
        ws.take(e3);
        PathConstraints cons;
        cons.avoid = &ws.used;
        cons.forbidden = ws.forbidden;
        try {
            WalkSeq c1 = extend_to_cycle(h, assemble({v1, v3, x}, WalkKind::Path), ell, cons,
                                         {rng.next(), ws.restarts});
            for (const auto& e : c1.edges())
                if (e != e1)
                    ws.take(e);
            WalkSeq c2 = extend_to_cycle(h, assemble({v3, x, v2, v1}, WalkKind::Path), ell, cons,
                                         {rng.next(), ws.restarts});
            for (const auto& e : c2.edges())
                if (e != e2 && e != e3)
                    ws.take(e);
            // C1 = v1 v3 x w4..wl, C2 = v3 x v2 v1 u5..ul
            const auto& cv1 = c1.vertices();
            const auto& cv2 = c2.vertices();
            std::vector<Vertex> t1(cv1.begin() + 1, cv1.end());
            t1.push_back(v1);
            t1.push_back(v3);
            std::vector<Vertex> t2(cv2.begin() + 2, cv2.end());
            t2.push_back(v3);
            t2.push_back(x);
            WalkSeq p1 = assemble({v3, v2, x, v1, v3}, WalkKind::Trail);
            WalkSeq p2 = merge_at(assemble(std::move(t2), WalkKind::Trail), assemble(std::move(t1), WalkKind::Trail),
                                  Arc{v3, x});
            Gadget g;
            g.edges = ws.taken_since(mark);
            g.cycles = {c1, c2};
            g.ttd.n = h.n();
            g.ttd.trails = {p1, p2};
            check_delta(g, s3_arcs(h.n(), v1, v2, v3), "S3");
            return g;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoExtensionAvailable)
                throw;
            ws.rollback(mark);
        }
    }
    fail(ErrorCode::GadgetConstructionFailed, "S3(" + std::to_string(v1) + "," + std::to_string(v2) + "," +
                                                  std::to_string(v3) + ") could not be built");
}

Gadget c4(Workspace& ws, std::array<Vertex, 4> v, std::uint64_t seed)
{
    const std::size_t mark = ws.mark();
    try {
        Gadget g = s3(ws, v[0], v[1], v[2], derive_seed(seed, 1));
        append(g, s3(ws, v[2], v[3], v[0], derive_seed(seed, 2)));
        for (int i = 0; i < 2; ++i)
            if (!cancel_arc(g.ttd, Arc{v[0], v[2]}))
                fail(ErrorCode::ConstructionFailed, "C4 cancellation failed");
        check_delta(g, c4_arcs(ws.host.n(), v), "C4");
        return g;
    } catch (const Error&) {
        ws.rollback(mark);
        throw;
    }
}

Gadget p6(Workspace& ws, std::array<Vertex, 6> v, std::uint64_t seed)
{
    const std::size_t mark = ws.mark();
    try {
        Gadget g = c4(ws, {v[0], v[1], v[4], v[5]}, derive_seed(seed, 1));
        append(g, c4(ws, {v[1], v[2], v[3], v[4]}, derive_seed(seed, 2)));
        append(g, c4(ws, {v[0], v[5], v[3], v[2]}, derive_seed(seed, 3)));
        for (Arc a : {Arc{v[1], v[4]}, Arc{v[0], v[5]}, Arc{v[2], v[3]}})
            if (!cancel_arc(g.ttd, a))
                fail(ErrorCode::ConstructionFailed, "prism cancellation failed");
        check_delta(g, p6_arcs(ws.host.n(), v), "P6");
        return g;
    } catch (const Error&) {
        ws.rollback(mark);
        throw;
    }
}

} // namespace detail

namespace {

Gadget b_gadget(Workspace& ws, std::size_t k, const VertexSet& extra, std::uint64_t seed)
{
    const ThreeGraph& h = ws.host;
    const std::size_t ell = ws.ell;
    Gadget g;
    g.ttd.n = h.n();
    if (k == 0)
        return g;
    for (unsigned attempt = 0; attempt < ws.retries; ++attempt) {
        Rng rng(derive_seed(seed, attempt), kSaltB);
        const std::size_t mark = ws.mark();
        VertexSet pool(h.n(), true);
        pool -= ws.forbidden;
        pool -= extra;
        if (pool.count() < 2 + k * (ell - 2))
            break;
        Vertex p = pool.nth(static_cast<std::size_t>(rng.below(pool.count())));
        pool.reset(p);
        Vertex q = pool.nth(static_cast<std::size_t>(rng.below(pool.count())));
        VertexSet blocked = extra;
        blocked.set(p);
        blocked.set(q);
        std::vector<Vertex> tour;
        std::vector<WalkSeq> cycles;
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j) {
            auto w = connect_in(ws, p, q, p, q, ell - 2, &blocked, rng);
            if (!w) {
                ok = false;
                break;
            }
            std::vector<Vertex> cyc{p, q};
            cyc.insert(cyc.end(), w->begin(), w->end());
            WalkSeq c = validate(cyc, WalkKind::Cycle, h);
            take_walk(ws, c);
            for (Vertex x : *w)
                blocked.set(x);
            tour.insert(tour.end(), cyc.begin(), cyc.end());
            cycles.push_back(std::move(c));
        }
        if (!ok) {
            ws.rollback(mark);
            continue;
        }
        g.edges = ws.taken_since(mark);
        g.cycles = std::move(cycles);
        g.ttd.tours = {validate(std::move(tour), WalkKind::Tour, h)};
        return g;
    }
    fail(ErrorCode::GadgetConstructionFailed, "B(" + std::to_string(k) + "," + std::to_string(ell) +
                                                  ") could not be built");
}

// Rotation of a closed walk starting at position i.
std::vector<Vertex> rotated(const WalkSeq& w, std::size_t i)
{
    const auto& v = w.vertices();
    std::vector<Vertex> out(v.begin() + static_cast<std::ptrdiff_t>(i), v.end());
    out.insert(out.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

MergedTours merge_in(Workspace& ws, const WalkSeq& t1, const WalkSeq& t2, std::uint64_t seed)
{
    const ThreeGraph& h = ws.host;
    const std::size_t ell = ws.ell;
    Rng rng(seed, kSaltA + 1);
    const std::size_t k1 = t1.size();
    const std::size_t k2 = t2.size();
    std::vector<std::pair<std::size_t, std::size_t>> combos;
    for (std::size_t i = 0; i < k1; ++i)
        for (std::size_t j = 0; j < k2; ++j) {
            Vertex a1 = t1[i], b1 = t1[(i + 1) % k1], a2 = t2[j], b2 = t2[(j + 1) % k2];
            if (a1 != a2 && a1 != b2 && b1 != a2 && b1 != b2)
                combos.emplace_back(i, j);
        }
    rng.shuffle(combos);
    const std::size_t tries = std::min<std::size_t>(combos.size(), 4 * ws.retries);
    for (std::size_t c = 0; c < tries; ++c) {
        auto [i, j] = combos[c];
        Vertex a1 = t1[i], b1 = t1[(i + 1) % k1], a2 = t2[j], b2 = t2[(j + 1) % k2];
        const std::size_t mark = ws.mark();
        auto p = connect_in(ws, a1, b1, a2, b2, 1, nullptr, rng);
        if (!p)
            continue;
        std::vector<Vertex> p1{a1, b1, (*p)[0], a2, b2};
        take_walk(ws, assemble(p1, WalkKind::Path));
        VertexSet extra(h.n());
        extra.set((*p)[0]);
        auto q = connect_in(ws, a2, b2, a1, b1, ell - 5, &extra, rng);
        if (!q) {
            ws.rollback(mark);
            continue;
        }
        std::vector<Vertex> cyc{a1, b1, (*p)[0], a2, b2};
        cyc.insert(cyc.end(), q->begin(), q->end());
        WalkSeq conn = validate(cyc, WalkKind::Cycle, h);
        for (const auto& e : conn.edges())
            ws.take(e);
        std::vector<Vertex> seq = rotated(t1, i);
        seq.insert(seq.end(), {a1, b1, (*p)[0]});
        std::vector<Vertex> r2 = rotated(t2, j);
        seq.insert(seq.end(), r2.begin(), r2.end());
        seq.insert(seq.end(), {a2, b2});
        seq.insert(seq.end(), q->begin(), q->end());
        MergedTours out;
        out.merged = validate(std::move(seq), WalkKind::Tour, h);
        out.connector.edges = ws.taken_since(mark);
        out.connector.cycles = {conn};
        out.connector.ttd.n = h.n();
        return out;
    }
    fail(ErrorCode::GadgetConstructionFailed, "tours could not be merged");
}

Transformer transformer_in(Workspace& ws, const WalkSeq& r, const WalkSeq& c, std::uint64_t seed)
{
    const ThreeGraph& h = ws.host;
    const std::size_t ell = ws.ell;
    const std::size_t m = r.size();
    auto R = [&](std::size_t i, long d) { return r[(i + 3 * m + static_cast<std::size_t>(d)) % m]; };
    auto C = [&](std::size_t i, long d) { return c[(i + 3 * m + static_cast<std::size_t>(d)) % m]; };
    for (std::size_t i = 0; i < m; ++i) {
        for (Vertex x : {R(i, -1), R(i, 0), R(i, 1)})
            if (x == C(i, -1) || x == C(i, 0))
                fail(ErrorCode::PreconditionFailed, "tour and cycle overlap near position " + std::to_string(i));
        for (Vertex x : {R(i, -1), R(i, 0)})
            if (x == C(i, -2))
                fail(ErrorCode::PreconditionFailed, "tour and cycle overlap near position " + std::to_string(i));
    }
    VertexSet global(h.n());
    for (Vertex v : r.vertices())
        global.set(v);
    for (Vertex v : c.vertices())
        global.set(v);
    VertexSet pool(h.n(), true);
    pool -= ws.forbidden;
    pool -= global;
    // Prefer internal vertices outside V(R) u V(C); fall back to local
    // distinctness when too few such vertices exist.
    std::vector<bool> modes;
    if (pool.count() >= ell)
        modes.push_back(true);
    modes.push_back(false);
    unsigned attempt = 0;
    for (bool global_mode : modes) {
        for (unsigned t = 0; t < ws.retries; ++t, ++attempt) {
            Rng rng(derive_seed(seed, attempt), kSaltB + 1);
            const std::size_t mark = ws.mark();
            std::vector<Vertex> p(m);
            std::vector<std::vector<Vertex>> q(m);
            bool ok = true;
            for (std::size_t i = 0; i < m && ok; ++i) {
                VertexSet extra = global_mode ? global : VertexSet(h.n(), {R(i, -1), R(i, 1), C(i, 1)});
                auto w = connect_in(ws, R(i, 0), R(i, 1), C(i, -1), C(i, 0), 1, &extra, rng);
                if (!w) {
                    ok = false;
                    break;
                }
                p[i] = (*w)[0];
                take_walk(ws, assemble({R(i, 0), R(i, 1), p[i], C(i, -1), C(i, 0)}, WalkKind::Path));
            }
            for (std::size_t i = 0; i < m && ok; ++i) {
                VertexSet extra = global_mode ? global : VertexSet(h.n(), {R(i, 1), C(i, -2)});
                extra.set(p[i]);
                extra.set(p[(i + m - 1) % m]);
                auto w = connect_in(ws, R(i, 0), R(i, -1), C(i, 0), C(i, -1), ell - 6, &extra, rng);
                if (!w) {
                    ok = false;
                    break;
                }
                q[i] = *w;
                std::vector<Vertex> path{R(i, 0), R(i, -1)};
                path.insert(path.end(), w->begin(), w->end());
                path.push_back(C(i, 0));
                path.push_back(C(i, -1));
                take_walk(ws, assemble(std::move(path), WalkKind::Path));
            }
            if (!ok) {
                ws.rollback(mark);
                continue;
            }
            Transformer out;
            for (std::size_t i = 0; i < m; ++i) {
                std::vector<Vertex> rs{R(i, 0), R(i, 1), p[i], C(i, -1), C(i, 0)};
                rs.insert(rs.end(), q[i].rbegin(), q[i].rend());
                rs.push_back(R(i, -1));
                out.r_side.push_back(validate(std::move(rs), WalkKind::Cycle, h));
                std::vector<Vertex> cs{R(i, -1), R(i, 0), p[(i + m - 1) % m], C(i, -2), C(i, -1), C(i, 0)};
                cs.insert(cs.end(), q[i].rbegin(), q[i].rend());
                out.c_side.push_back(validate(std::move(cs), WalkKind::Cycle, h));
            }
            out.edges = ws.taken_since(mark);
            return out;
        }
    }
    fail(ErrorCode::GadgetConstructionFailed, "transformer could not be built");
}

// Tight cycle on m vertices avoiding ws.forbidden and `extra`.
WalkSeq fresh_cycle(Workspace& ws, std::size_t m, const VertexSet& extra, std::uint64_t seed)
{
    const ThreeGraph& h = ws.host;
    for (unsigned attempt = 0; attempt < ws.retries; ++attempt) {
        Rng rng(derive_seed(seed, attempt), kSaltA + 2);
        VertexSet pool(h.n(), true);
        pool -= ws.forbidden;
        pool -= extra;
        if (pool.count() < m)
            break;
        Vertex a = pool.nth(static_cast<std::size_t>(rng.below(pool.count())));
        pool.reset(a);
        Vertex b = pool.nth(static_cast<std::size_t>(rng.below(pool.count())));
        auto w = connect_in(ws, a, b, a, b, m - 2, &extra, rng);
        if (!w)
            continue;
        std::vector<Vertex> cyc{a, b};
        cyc.insert(cyc.end(), w->begin(), w->end());
        WalkSeq c = validate(std::move(cyc), WalkKind::Cycle, h);
        take_walk(ws, c);
        return c;
    }
    fail(ErrorCode::GadgetConstructionFailed, "no tight cycle of length " + std::to_string(m) + " on new vertices");
}

struct AbsorberParts {
    std::vector<Triple> edges;
    std::vector<WalkSeq> alone;
    std::vector<WalkSeq> with_r;
    std::size_t c_edges = 0, b_edges = 0, l1_edges = 0, l2_edges = 0;
};

AbsorberParts absorber_from_tour_in(Workspace& ws, const WalkSeq& r, std::uint64_t seed)
{
    const ThreeGraph& h = ws.host;
    const std::size_t ell = ws.ell;
    const std::size_t m = r.edges().size();
    if (!r.closed())
        fail(ErrorCode::PreconditionFailed, "absorber input must be a tour");
    if (m % ell != 0)
        fail(ErrorCode::PreconditionFailed, "tour has " + std::to_string(m) + " edges, not divisible by " +
                                                std::to_string(ell));
    for (Vertex v = 0; v < h.n(); ++v) {
        std::size_t d = 0;
        for (const auto& e : r.edges())
            d += e.contains(v);
        if (d % 3 != 0)
            fail(ErrorCode::PreconditionFailed, "tour is not 3-vertex-divisible");
    }
    const std::size_t mark = ws.mark();
    try {
        VertexSet vr(h.n());
        for (Vertex v : r.vertices())
            vr.set(v);
        WalkSeq cyc = fresh_cycle(ws, m, vr, derive_seed(seed, 1));
        VertexSet vrc = vr;
        for (Vertex v : cyc.vertices())
            vrc.set(v);
        Gadget b = b_gadget(ws, m / ell, vrc, derive_seed(seed, 2));
        Transformer l1 = transformer_in(ws, r, cyc, derive_seed(seed, 3));
        Transformer l2 = transformer_in(ws, b.ttd.tours.front(), cyc, derive_seed(seed, 4));
        AbsorberParts out;
        out.edges = ws.taken_since(mark);
        out.alone = l1.c_side;
        out.alone.insert(out.alone.end(), l2.r_side.begin(), l2.r_side.end());
        out.with_r = l1.r_side;
        out.with_r.insert(out.with_r.end(), l2.c_side.begin(), l2.c_side.end());
        out.with_r.insert(out.with_r.end(), b.cycles.begin(), b.cycles.end());
        out.c_edges = m;
        out.b_edges = b.edges.size();
        out.l1_edges = l1.edges.size();
        out.l2_edges = l2.edges.size();
        return out;
    } catch (const Error&) {
        ws.rollback(mark);
        throw;
    }
}

ThreeGraph avoid_with(const ThreeGraph& avoid, std::initializer_list<const WalkSeq*> walks)
{
    ThreeGraph used = avoid;
    for (const auto* w : walks)
        for (const auto& e : w->edges())
            used.add(e);
    return used;
}

} // namespace

Gadget build_S3(const ThreeGraph& host, const ThreeGraph& avoid, Vertex v1, Vertex v2, Vertex v3, std::size_t ell,
                const GadgetOptions& opts)
{
    require_ell(ell);
    require_distinct({v1, v2, v3}, host.n());
    Workspace ws(host, avoid, ell, opts);
    return detail::s3(ws, v1, v2, v3, opts.seed);
}

Gadget build_C4(const ThreeGraph& host, const ThreeGraph& avoid, std::array<Vertex, 4> v, std::size_t ell,
                const GadgetOptions& opts)
{
    require_ell(ell);
    require_distinct({v[0], v[1], v[2], v[3]}, host.n());
    Workspace ws(host, avoid, ell, opts);
    return detail::c4(ws, v, opts.seed);
}

Gadget build_P6(const ThreeGraph& host, const ThreeGraph& avoid, std::array<Vertex, 6> v, std::size_t ell,
                const GadgetOptions& opts)
{
    require_ell(ell);
    require_distinct({v[0], v[1], v[2], v[3], v[4], v[5]}, host.n());
    Workspace ws(host, avoid, ell, opts);
    return detail::p6(ws, v, opts.seed);
}

Gadget build_B(const ThreeGraph& host, const ThreeGraph& avoid, std::size_t k, std::size_t ell,
               const GadgetOptions& opts)
{
    if (ell < 4)
        fail(ErrorCode::BadParams, "cycle length must be at least 4");
    Workspace ws(host, avoid, ell, opts);
    return b_gadget(ws, k, VertexSet(host.n()), opts.seed);
}

MergedTours merge_tours(const ThreeGraph& host, const ThreeGraph& avoid, const WalkSeq& t1, const WalkSeq& t2,
                        std::size_t ell, const GadgetOptions& opts)
{
    require_ell(ell);
    if (t1.size() == 0 || t2.size() == 0 || !t1.closed() || !t2.closed())
        fail(ErrorCode::PreconditionFailed, "merge_tours needs two non-empty tours");
    std::unordered_set<Triple, TripleHash> e1(t1.edges().begin(), t1.edges().end());
    for (const auto& e : t2.edges())
        if (e1.count(e))
            fail(ErrorCode::EdgeOverlap, "tours share an edge");
    Workspace ws(host, avoid_with(avoid, {&t1, &t2}), ell, opts);
    return merge_in(ws, t1, t2, opts.seed);
}

Transformer build_transformer(const ThreeGraph& host, const ThreeGraph& avoid, const WalkSeq& r, const WalkSeq& c,
                              std::size_t ell, const GadgetOptions& opts)
{
    require_ell(ell);
    if (!r.closed() || c.kind() != WalkKind::Cycle)
        fail(ErrorCode::PreconditionFailed, "transformer needs a tour and a cycle");
    if (r.edges().size() != c.edges().size())
        fail(ErrorCode::PreconditionFailed, "tour and cycle have different edge counts");
    std::unordered_set<Triple, TripleHash> er(r.edges().begin(), r.edges().end());
    for (const auto& e : c.edges())
        if (er.count(e))
            fail(ErrorCode::EdgeOverlap, "tour and cycle share an edge");
    Workspace ws(host, avoid_with(avoid, {&r, &c}), ell, opts);
    return transformer_in(ws, r, c, opts.seed);
}

Absorber build_absorber_from_tour(const ThreeGraph& host, const ThreeGraph& avoid, const WalkSeq& r,
                                  std::size_t ell, const GadgetOptions& opts)
{
    require_ell(ell);
    Workspace ws(host, avoid_with(avoid, {&r}), ell, opts);
    AbsorberParts parts = absorber_from_tour_in(ws, r, opts.seed);
    Absorber a;
    a.edges = std::move(parts.edges);
    a.cycles = std::move(parts.alone);
    a.cycles_with_r = std::move(parts.with_r);
    a.merged_tour_edges = r.edges().size();
    a.cycle_edges = parts.c_edges;
    a.b_edges = parts.b_edges;
    a.l1_edges = parts.l1_edges;
    a.l2_edges = parts.l2_edges;
    return a;
}

namespace {

// Backtracking search for a partition of g into tight cycles. Each level
// covers the least remaining edge with a cycle that has it as a window.
class CyclePartition {
public:
    CyclePartition(ThreeGraph g, std::uint64_t budget) : g_(std::move(g)), on_(g_.n(), 0), budget_(budget) {}

    bool run()
    {
        if (g_.empty())
            return true;
        if (nodes_ > budget_)
            return false;
        const Triple e = g_.edges().front();
        const std::array<std::array<Vertex, 3>, 3> starts{{{e.a, e.b, e.c}, {e.b, e.a, e.c}, {e.a, e.c, e.b}}};
        for (const auto& s : starts) {
            path_.assign(s.begin(), s.end());
            for (Vertex v : s)
                on_[v] = 1;
            bool ok = grow();
            for (Vertex v : path_)
                on_[v] = 0;
            if (ok)
                return true;
        }
        return false;
    }

    std::vector<std::vector<Vertex>> cycles;

private:
    // Extends path_; on closing, removes the cycle and recurses.
    bool grow()
    {
        if (++nodes_ > budget_)
            return false;
        const std::size_t k = path_.size();
        if (k >= 4 && g_.contains(path_[k - 2], path_[k - 1], path_[0]) &&
            g_.contains(path_[k - 1], path_[0], path_[1])) {
            WalkSeq c = assemble(path_, WalkKind::Cycle);
            for (const auto& t : c.edges())
                g_.remove(t);
            std::vector<Vertex> saved = path_;
            std::vector<char> saved_on = on_;
            std::fill(on_.begin(), on_.end(), 0);
            cycles.push_back(saved);
            if (run())
                return true;
            cycles.pop_back();
            on_ = std::move(saved_on);
            path_ = std::move(saved);
            for (const auto& t : c.edges())
                g_.add(t);
        }
        std::vector<Vertex> next = g_.neighbourhood(path_[k - 2], path_[k - 1]).members();
        for (Vertex z : next) {
            if (on_[z])
                continue;
            path_.push_back(z);
            on_[z] = 1;
            if (grow())
                return true;
            on_[z] = 0;
            path_.pop_back();
            if (nodes_ > budget_)
                return false;
        }
        return false;
    }

    ThreeGraph g_;
    std::vector<char> on_;
    std::vector<Vertex> path_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
};

} // namespace

TourTrailDecomposition initial_ttd(const ThreeGraph& r, std::uint64_t node_budget)
{
    TourTrailDecomposition out;
    out.n = r.n();
    CyclePartition exact(r, node_budget);
    if (exact.run()) {
        for (auto& c : exact.cycles)
            out.tours.push_back(assemble(std::move(c), WalkKind::Tour));
        return out;
    }
    // greedy peeling, then single-edge trails
    ThreeGraph g = r;
    std::uint64_t nodes = 0;
    std::vector<Vertex> path;
    std::vector<char> on(r.n(), 0);
    std::function<bool()> dfs = [&]() -> bool {
        if (++nodes > node_budget)
            return false;
        const std::size_t k = path.size();
        if (k >= 4 && g.contains(path[k - 2], path[k - 1], path[0]) && g.contains(path[k - 1], path[0], path[1]))
            return true;
        for (Vertex z : g.neighbourhood(path[k - 2], path[k - 1]).members()) {
            if (on[z])
                continue;
            path.push_back(z);
            on[z] = 1;
            if (dfs())
                return true;
            on[z] = 0;
            path.pop_back();
            if (nodes > node_budget)
                return false;
        }
        return false;
    };
    bool progress = true;
    while (progress && !g.empty() && nodes <= node_budget) {
        progress = false;
        for (const auto& e : g.edges()) {
            path = {e.a, e.b};
            std::fill(on.begin(), on.end(), 0);
            on[e.a] = on[e.b] = 1;
            if (dfs()) {
                WalkSeq c = assemble(path, WalkKind::Tour);
                for (const auto& t : c.edges())
                    g.remove(t);
                out.tours.push_back(std::move(c));
                progress = true;
                break;
            }
            if (nodes > node_budget)
                break;
        }
    }
    out.absorb(cancel_opposite(trivial_ttd(g)));
    return out;
}

Absorber build_absorber(const ThreeGraph& host, const ThreeGraph& r, std::size_t ell, const GadgetOptions& opts)
{
    require_ell(ell);
    if (r.n() != host.n())
        fail(ErrorCode::BadParams, "r and host have different vertex counts");
    Absorber a;
    if (r.empty())
        return a;
    r.for_each_edge([&](const Triple& e) {
        if (!host.contains(e))
            fail(ErrorCode::PreconditionFailed, "r is not a subgraph of the host");
    });
    auto div = check_divisibility(r, DivisibilityKind::cycle(ell));
    if (!div.ok)
        fail(ErrorCode::PreconditionFailed, "r is not C_l-divisible: " + div.violation->describe());

    TourTrailDecomposition t0 = initial_ttd(r);
    std::vector<WalkSeq> tours;
    std::vector<Triple> a1_edges;
    std::vector<WalkSeq> a1_cycles;
    if (!t0.all_tours()) {
        VertexSet used_v = r.support();
        if (opts.forbidden)
            used_v |= *opts.forbidden;
        std::vector<Vertex> pool;
        for (Vertex v = 0; v < host.n(); ++v)
            if (!used_v.test(v))
                pool.push_back(v);
        const std::size_t want = 4 * residual(t0).arc_count() + 4;
        pool.resize(std::min(pool.size(), std::min(want, pool.size() / 2)));
        SeaOptions so;
        so.seed = derive_seed(opts.seed, 11);
        so.retries = opts.retries;
        so.forbidden = opts.forbidden;
        SeaResult sea = reduce_to_sea(host, r, std::move(t0), std::move(pool), ell, so);
        TourResult tr = eliminate_triangles(host, r, std::move(sea), ell, so);
        a1_edges = tr.added.edges();
        a1_cycles = std::move(tr.cycles);
        tours = std::move(tr.ttd.tours);
    } else {
        tours = std::move(t0.tours);
    }

    ThreeGraph used = r;
    for (const auto& e : a1_edges)
        used.add(e);
    Workspace ws(host, std::move(used), ell, opts);
    const std::size_t mark = ws.mark();
    WalkSeq merged = tours.front();
    std::vector<WalkSeq> merge_cycles;
    for (std::size_t i = 1; i < tours.size(); ++i) {
        MergedTours mt = merge_in(ws, merged, tours[i], derive_seed(opts.seed, 100 + i));
        merged = std::move(mt.merged);
        merge_cycles.insert(merge_cycles.end(), mt.connector.cycles.begin(), mt.connector.cycles.end());
    }
    const std::size_t merge_edges = ws.mark() - mark;
    AbsorberParts parts = absorber_from_tour_in(ws, merged, derive_seed(opts.seed, 12));

    a.edges = a1_edges;
    a.edges.insert(a.edges.end(), ws.log.begin(), ws.log.end());
    std::sort(a.edges.begin(), a.edges.end());
    a.cycles = a1_cycles;
    a.cycles.insert(a.cycles.end(), merge_cycles.begin(), merge_cycles.end());
    a.cycles.insert(a.cycles.end(), parts.alone.begin(), parts.alone.end());
    a.cycles_with_r = std::move(parts.with_r);
    a.tour_gadget_edges = a1_edges.size();
    a.merge_edges = merge_edges;
    a.merged_tour_edges = merged.edges().size();
    a.cycle_edges = parts.c_edges;
    a.b_edges = parts.b_edges;
    a.l1_edges = parts.l1_edges;
    a.l2_edges = parts.l2_edges;
    return a;
}

} // namespace h3
