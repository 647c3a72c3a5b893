#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "h3/decomposer.hpp"
#include "h3/error.hpp"
#include "h3/extender.hpp"
#include "h3/gadgets.hpp"
#include "h3/log.hpp"
#include "h3/rng.hpp"

namespace h3 {

namespace {

ThreeGraph graph_of(std::size_t n, const std::vector<Triple>& edges)
{
    return build_graph(n, edges);
}


void add_cycles(std::vector<Cycle>& out, const std::vector<WalkSeq>& cycles)
{
    for (const auto& c : cycles)
        out.push_back(canonical_cycle(c.vertices()));
}

std::size_t count_in(const VertexSet& u, const Triple& t)
{
    return static_cast<std::size_t>(u.test(t.a)) + u.test(t.b) + u.test(t.c);
}

// Maximal family of edge-disjoint 3-edge paths in a 2-graph.
std::vector<P3Path> maximal_p3_packing(const Graph2& g)
{
    const auto adj = g.adjacency();
    std::unordered_set<std::uint64_t> used;
    auto key = [&](Vertex x, Vertex y) {
        Pair p = Pair::of(x, y);
        return (static_cast<std::uint64_t>(p.u) << 32) | p.v;
    };
    std::vector<P3Path> out;
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& e : g.edges()) {
            if (used.count(key(e.u, e.v)))
                continue;
            for (Vertex c : adj[e.u]) {
                if (c == e.v || used.count(key(c, e.u)))
                    continue;
                auto d = std::find_if(adj[e.v].begin(), adj[e.v].end(), [&](Vertex w) {
                    return w != e.u && w != c && !used.count(key(e.v, w));
                });
                if (d == adj[e.v].end())
                    continue;
                out.push_back({c, e.u, e.v, *d});
                used.insert(key(c, e.u));
                used.insert(key(e.u, e.v));
                used.insert(key(e.v, *d));
                grew = true;
                break;
            }
        }
    }
    return out;
}

StageLog stage(std::string name, std::size_t cycles, const ThreeGraph& left, std::string note = {})
{
    return {std::move(name), cycles, left.edge_count(), max_codegree(left), std::move(note)};
}

std::string failed_note(const ExtendResult& r, std::size_t total)
{
    return std::to_string(r.cycles.size()) + "/" + std::to_string(total) + " paths extended";
}

} // namespace

DecompositionReport well_behaved_pack(const ThreeGraph& g, std::size_t ell, std::uint64_t seed,
                                      const WellBehavedParams& params)
{
    if (params.gamma < 0.0 || params.bad_vertex_frac <= 0.0 || params.bad_pair_frac <= 0.0)
        fail(ErrorCode::BadParams, "well-behaved parameters must be positive");
    const std::size_t n = g.n();
    const double nd = static_cast<double>(n);
    DecompositionReport rep;
    rep.ell = ell;
    rep.stats.seed = seed;

    // step 1: reserve slice and greedy packing of the rest
    Rng rng(seed);
    const double p = std::min(1.0, params.gamma / 4.0);
    ThreeGraph hp(n);
    ThreeGraph h0(n);
    g.for_each_edge([&](const Triple& t) { (rng.bernoulli(p) ? hp : h0).add(t); });
    DecompositionReport r0 = greedy_pack(h0, ell, derive_seed(seed, 1), params.greedy);
    rep.cycles = r0.cycles;
    ThreeGraph l0 = graph_of(n, r0.leftover);
    rep.stages.push_back(stage("greedy", r0.cycles.size(), l0, "reserve " + std::to_string(hp.edge_count())));

    // step 2: bad vertices
    const double vthr = params.bad_vertex_frac * nd * nd;
    VertexSet bad(n);
    for (Vertex v = 0; v < n; ++v)
        if (static_cast<double>(l0.degree(v)) >= vthr)
            bad.set(v);
    std::vector<WalkSeq> paths;
    VertexSet good(n, true);
    good -= bad;
    bad.for_each([&](Vertex b) {
        for (const auto& q : maximal_p3_packing(link(l0, b, good)))
            paths.push_back(assemble({q[0], q[1], b, q[2], q[3]}, WalkKind::Path));
    });
    ThreeGraph l1 = l0;
    std::string note = std::to_string(bad.count()) + " bad vertices";
    if (!paths.empty() && ell >= 7) {
        ExtendOptions eo;
        eo.seed = derive_seed(seed, 2);
        eo.restarts = params.restarts;
        eo.lenient = true;
        ExtendResult er = extend_family(l0, hp, paths, ell, params.mu, eo);
        add_cycles(rep.cycles, er.cycles);
        l1 -= er.f;
        hp -= er.f;
        note += ", " + failed_note(er, paths.size());
        rep.stages.push_back(stage("bad-vertices", er.cycles.size(), l1, note));
    } else {
        rep.stages.push_back(stage("bad-vertices", 0, l1, note));
    }

    // step 3: bad pairs, paths z x y w with xy bad
    const double pthr = params.bad_pair_frac * nd;
    std::vector<WalkSeq> pair_paths;
    ThreeGraph taken(n);
    std::size_t bad_pairs = 0;
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y) {
            if (static_cast<double>(l1.codegree(x, y)) < pthr)
                continue;
            ++bad_pairs;
            std::vector<Vertex> free;
            l1.neighbourhood(x, y).for_each([&](Vertex z) {
                if (!taken.contains(x, y, z))
                    free.push_back(z);
            });
            for (std::size_t i = 0; i + 1 < free.size(); i += 2) {
                taken.add(x, y, free[i]);
                taken.add(x, y, free[i + 1]);
                pair_paths.push_back(assemble({free[i], x, y, free[i + 1]}, WalkKind::Path));
            }
        }
    ThreeGraph l2 = l1;
    note = std::to_string(bad_pairs) + " bad pairs";
    if (!pair_paths.empty() && ell >= 6) {
        ExtendOptions eo;
        eo.seed = derive_seed(seed, 3);
        eo.restarts = params.restarts;
        eo.lenient = true;
        ExtendResult er = extend_family(l1, hp, pair_paths, ell, params.mu, eo);
        add_cycles(rep.cycles, er.cycles);
        l2 -= er.f;
        hp -= er.f;
        note += ", " + failed_note(er, pair_paths.size());
        rep.stages.push_back(stage("bad-pairs", er.cycles.size(), l2, note));
    } else {
        rep.stages.push_back(stage("bad-pairs", 0, l2, note));
    }

    // unused reserve plus leftover, swept once more
    ThreeGraph rest = edge_union(l2, hp);
    DecompositionReport r3 = greedy_pack(rest, ell, derive_seed(seed, 4), params.greedy);
    rep.cycles.insert(rep.cycles.end(), r3.cycles.begin(), r3.cycles.end());
    rep.leftover = r3.leftover;
    rep.stages.push_back({"sweep", r3.cycles.size(), r3.leftover.size(), r3.stats.delta2, r3.stages.back().note});
    std::sort(rep.cycles.begin(), rep.cycles.end());
    rep.stats.covered = g.edge_count() - rep.leftover.size();
    rep.stats.delta2 = r3.stats.delta2;
    rep.stats.iterations = r0.stats.iterations + r3.stats.iterations;
    rep.stats.nodes = r0.stats.nodes + r3.stats.nodes;
    rep.status = rep.leftover.empty() ? DecompStatus::Complete : DecompStatus::Partial;
    return rep;
}

std::vector<std::size_t> vortex_sizes(std::size_t n, double xi, std::size_t m_prime)
{
    if (!(xi > 0.0 && xi < 1.0))
        fail(ErrorCode::BadParams, "xi must lie in (0,1)");
    if (m_prime == 0 || n < m_prime)
        fail(ErrorCode::BadParams, "need n >= m' >= 1");
    std::vector<std::size_t> sizes{n};
    while (sizes.back() >= m_prime)
        sizes.push_back(static_cast<std::size_t>(std::floor(xi * static_cast<double>(sizes.back()))));
    return sizes;
}

namespace {

// V4 and V5 for one level: prev = U_{i-1}, cur = U_i.
void check_level(const ThreeGraph& g, const VertexSet& prev, const VertexSet& cur, double density, std::size_t level,
                 std::vector<std::string>& failures, std::size_t cap)
{
    const double sz = static_cast<double>(cur.count());
    const double need_deg = density * sz * (sz - 1.0) / 2.0;
    const double need_codeg = density * sz;
    const auto members = prev.members();
    for (Vertex x : members) {
        if (failures.size() >= cap)
            return;
        if (static_cast<double>(g.degree(x, cur)) < need_deg)
            failures.push_back("V4 level " + std::to_string(level) + " vertex " + std::to_string(x));
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (failures.size() >= cap)
                return;
            if (static_cast<double>(g.codegree(members[i], members[j], cur)) < need_codeg)
                failures.push_back("V5 level " + std::to_string(level) + " pair " + std::to_string(members[i]) + "," +
                                   std::to_string(members[j]));
        }
}

} // namespace

Vortex build_vortex(const ThreeGraph& g, double delta, double xi, std::size_t m_prime, std::uint64_t seed,
                    unsigned retries)
{
    const auto sizes = vortex_sizes(g.n(), xi, m_prime);
    Vortex v;
    v.delta = delta - xi;
    v.xi = xi;
    v.m = sizes.back();
    v.levels.push_back(VertexSet(g.n(), true));
    Rng rng(seed);
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        const VertexSet& prev = v.levels.back();
        bool done = false;
        for (unsigned attempt = 0; attempt < std::max(1U, retries) && !done; ++attempt) {
            auto pool = prev.members();
            rng.shuffle(pool);
            pool.resize(sizes[i]);
            VertexSet cur = VertexSet::of(g.n(), pool);
            std::vector<std::string> failures;
            check_level(g, prev, cur, v.delta, i, failures, 1);
            if (failures.empty()) {
                v.levels.push_back(std::move(cur));
                done = true;
            }
        }
        if (!done)
            fail(ErrorCode::VortexFailed, "no sample of level " + std::to_string(i) + " meets V4/V5", i);
        log_debug("vortex level " + std::to_string(i) + " size " + std::to_string(sizes[i]));
    }
    return v;
}

VortexCheck check_vortex(const ThreeGraph& g, const Vortex& v, double density)
{
    VortexCheck out;
    auto bad = [&](std::string s) {
        out.failures.push_back(std::move(s));
    };
    if (v.levels.empty() || v.levels.front().count() != g.n())
        bad("V1");
    for (std::size_t i = 1; i < v.levels.size(); ++i) {
        const auto& prev = v.levels[i - 1];
        const auto& cur = v.levels[i];
        VertexSet outside = cur;
        outside -= prev;
        if (!outside.empty())
            bad("nested level " + std::to_string(i));
        auto want = static_cast<std::size_t>(std::floor(v.xi * static_cast<double>(prev.count())));
        if (cur.count() != want)
            bad("V2 level " + std::to_string(i));
        check_level(g, prev, cur, density, i, out.failures, 100);
    }
    if (v.levels.empty() || v.levels.back().count() != v.m)
        bad("V3");
    out.ok = out.failures.empty();
    return out;
}

CoverDownResult cover_down(const ThreeGraph& g, const VertexSet& u, std::size_t ell, std::uint64_t seed,
                           const CoverDownParams& params)
{
    const std::size_t n = g.n();
    if (ell < 7)
        fail(ErrorCode::BadParams, "cover-down needs l >= 7");
    if (u.universe() != n)
        fail(ErrorCode::BadParams, "U has the wrong universe size");
    for (Vertex x = 0; x < n; ++x)
        if (!u.test(x) && g.degree(x) % 3 != 0)
            fail(ErrorCode::PreconditionFailed,
                 "degree of vertex " + std::to_string(x) + " outside U is " + std::to_string(g.degree(x)), x);

    CoverDownResult res;
    res.f = ThreeGraph(n);
    DecompositionReport& rep = res.report;
    rep.ell = ell;
    rep.stats.seed = seed;

    // edge types and reserves
    Rng rng(seed);
    ThreeGraph hu(n), r1(n), r2(n), rest(n);
    const double q1 = std::min(1.0, 1.5 * params.p1);
    const double q2 = std::min(1.0, 1.5 * params.p2);
    g.for_each_edge([&](const Triple& t) {
        switch (count_in(u, t)) {
        case 3: hu.add(t); break;
        case 2: (rng.bernoulli(q2) ? r2 : rest).add(t); break;
        case 1: (rng.bernoulli(q1) ? r1 : rest).add(t); break;
        default: rest.add(t); break;
        }
    });

    // pack H' = H - H[U] - R1 - R2, lower types first
    WellBehavedParams wp = params.pack;
    wp.greedy.priority = [&u](const Triple& t) { return static_cast<int>(count_in(u, t)); };
    DecompositionReport packed = well_behaved_pack(rest, ell, derive_seed(seed, 1), wp);
    rep.cycles = packed.cycles;
    ThreeGraph j0(n), j1(n), j2(n);
    for (const auto& t : packed.leftover) {
        std::size_t c = count_in(u, t);
        (c == 0 ? j0 : c == 1 ? j1 : j2).add(t);
    }
    {
        ThreeGraph j = edge_union(j0, edge_union(j1, j2));
        rep.stages.push_back(stage("pack", packed.cycles.size(), j,
                                   "J0 " + std::to_string(j0.edge_count()) + ", J1 " +
                                       std::to_string(j1.edge_count()) + ", J2 " + std::to_string(j2.edge_count())));
    }
    ExtendOptions eo;
    eo.restarts = params.restarts;
    eo.lenient = true;
    eo.allowed = u;

    // J0: edges as 3-vertex paths, new vertices in U; reserves R_i plus J_i
    ThreeGraph f_ext(n);
    {
        std::vector<WalkSeq> paths;
        j0.for_each_edge([&](const Triple& t) { paths.push_back(assemble({t.a, t.b, t.c}, WalkKind::Path)); });
        ThreeGraph h2 = edge_union(edge_union(r1, r2), edge_union(hu, edge_union(j1, j2)));
        eo.seed = derive_seed(seed, 2);
        ExtendResult er = extend_family(j0, h2, paths, ell, params.mu, eo);
        add_cycles(rep.cycles, er.cycles);
        f_ext |= er.f;
        rep.stages.push_back(stage("J0", er.cycles.size(), edge_difference(j0, er.f), failed_note(er, paths.size())));
    }

    // J1' = (J1 u R1) - F0 as paths with the U-vertex in the middle
    {
        ThreeGraph j1p = edge_difference(edge_union(j1, r1), f_ext);
        std::vector<WalkSeq> paths;
        j1p.for_each_edge([&](const Triple& t) {
            std::array<Vertex, 3> s{t.a, t.b, t.c};
            auto mid = std::find_if(s.begin(), s.end(), [&](Vertex x) { return u.test(x); });
            std::iter_swap(s.begin() + 1, mid);
            paths.push_back(assemble({s.begin(), s.end()}, WalkKind::Path));
        });
        ThreeGraph h2 = edge_difference(edge_union(edge_union(r2, j2), hu), f_ext);
        eo.seed = derive_seed(seed, 3);
        ExtendResult er = extend_family(j1p, h2, paths, ell, params.mu, eo);
        add_cycles(rep.cycles, er.cycles);
        f_ext |= er.f;
        rep.stages.push_back(stage("J1", er.cycles.size(), edge_difference(j1p, er.f), failed_note(er, paths.size())));
    }

    // J2' = (J2 u R2) - F1; P3-decompose each link G_v inside U and lift
    {
        ThreeGraph j2p = edge_difference(edge_union(j2, r2), f_ext);
        std::vector<WalkSeq> paths;
        std::size_t stuck = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (u.test(v) || j2p.degree(v) == 0)
                continue;
            P3Result pr = p3_decompose(link(j2p, v, u), params.p3_budget);
            if (pr.status != DecompStatus::Complete) {
                ++stuck;
                continue;
            }
            for (const auto& q : pr.paths)
                paths.push_back(assemble({q[0], q[1], v, q[2], q[3]}, WalkKind::Path));
        }
        ThreeGraph h2 = edge_difference(hu, f_ext);
        eo.seed = derive_seed(seed, 4);
        ExtendResult er = extend_family(j2p, h2, paths, ell, params.mu, eo);
        add_cycles(rep.cycles, er.cycles);
        f_ext |= er.f;
        rep.stages.push_back(stage("J2", er.cycles.size(), edge_difference(j2p, er.f),
                                   failed_note(er, paths.size()) + ", " + std::to_string(stuck) +
                                       " links without P3-decomposition"));
    }

    for (const auto& c : rep.cycles)
        for (const auto& t : cycle_edges(c))
            res.f.add(t);
    ThreeGraph left = edge_difference(g, res.f);
    rep.leftover = left.edges();
    for (const auto& t : rep.leftover)
        if (count_in(u, t) < 3)
            ++res.uncovered_outside;
    res.delta2_inside = max_codegree(restrict_to(res.f, u));
    std::sort(rep.cycles.begin(), rep.cycles.end());
    rep.stats.covered = res.f.edge_count();
    rep.stats.delta2 = max_codegree(left);
    rep.status = res.uncovered_outside == 0 ? DecompStatus::Complete : DecompStatus::Partial;
    return res;
}

DecompositionReport full_pipeline(const ThreeGraph& g, std::size_t ell, std::uint64_t seed,
                                  const PipelineParams& params)
{
    const std::size_t n = g.n();
    auto div = check_divisibility(g, DivisibilityKind::cycle(ell));
    if (!div.ok)
        fail(ErrorCode::PreconditionFailed, "input is not C_l-divisible: " + div.violation->describe());
    DecompositionReport rep;
    rep.ell = ell;
    rep.stats.seed = seed;
    ThreeGraph leftover(n);

    // vortex
    std::vector<VertexSet> levels;
    if (n >= params.m_prime && n > 0) {
        const double delta = static_cast<double>(min_codegree(g)) / static_cast<double>(n);
        try {
            levels = build_vortex(g, delta, params.xi, params.m_prime, derive_seed(seed, 1), params.vortex_retries)
                         .levels;
            rep.stages.push_back({"vortex", 0, g.edge_count(), 0, "levels " + std::to_string(levels.size())});
        } catch (const Error& e) {
            if (e.code() != ErrorCode::VortexFailed)
                throw;
            // unchecked nested sets of the same sizes
            Rng rng(derive_seed(seed, 2));
            levels.push_back(VertexSet(n, true));
            for (std::size_t s : vortex_sizes(n, params.xi, params.m_prime)) {
                if (s == n)
                    continue;
                auto pool = levels.back().members();
                rng.shuffle(pool);
                pool.resize(s);
                levels.push_back(VertexSet::of(n, pool));
            }
            rep.stages.push_back({"vortex", 0, g.edge_count(), 0, std::string("unchecked levels: ") + e.what()});
        }
    } else {
        levels.push_back(VertexSet(n, true));
    }
    const std::size_t t = levels.size() - 1;
    const VertexSet& last = levels.back();

    // absorbers for every divisible subgraph of g[last], outside g[U_1]
    struct Absorbed {
        ThreeGraph r;
        Absorber a;
    };
    std::vector<Absorbed> absorbers;
    ThreeGraph absorbed(n);
    if (t >= 1 && last.count() <= params.absorber_max_m && ell >= 7) {
        const auto inner = restrict_to(g, last).edges();
        ThreeGraph base = edge_difference(g, restrict_to(g, levels[1]));
        std::size_t failed = 0;
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << inner.size()); ++mask) {
            std::vector<Triple> sub;
            for (std::size_t i = 0; i < inner.size(); ++i)
                if (mask >> i & 1U)
                    sub.push_back(inner[i]);
            ThreeGraph r = build_graph(n, sub);
            if (!check_divisibility(r, DivisibilityKind::cycle(ell)).ok)
                continue;
            ThreeGraph host = edge_union(edge_difference(base, absorbed), r);
            try {
                GadgetOptions go;
                go.seed = derive_seed(seed, 100 + mask);
                Absorber a = build_absorber(host, r, ell, go);
                for (const auto& e : a.edges)
                    absorbed.add(e);
                absorbers.push_back({std::move(r), std::move(a)});
            } catch (const Error& e) {
                ++failed;
                log_info(std::string("absorber failed: ") + e.what());
            }
        }
        rep.stages.push_back({"absorbers", 0, 0, 0,
                              std::to_string(absorbers.size()) + " built, " + std::to_string(failed) + " failed"});
    }

    // iterated cover-down through the levels
    ThreeGraph hi = edge_difference(g, absorbed);
    for (std::size_t i = 0; i < t; ++i) {
        ThreeGraph hpi = hi;
        if (i + 2 <= t)
            hpi -= restrict_to(hi, levels[i + 2]);
        ThreeGraph inner_keep = edge_difference(hi, hpi);
        try {
            CoverDownResult cd = cover_down(hpi, levels[i + 1], ell, derive_seed(seed, 10 + i), params.cover);
            rep.cycles.insert(rep.cycles.end(), cd.report.cycles.begin(), cd.report.cycles.end());
            ThreeGraph rest = edge_difference(hpi, cd.f);
            ThreeGraph next = restrict_to(rest, levels[i + 1]);
            leftover |= edge_difference(rest, next);
            next |= inner_keep;
            rep.stages.push_back({"cover-down " + std::to_string(i), cd.report.cycles.size(), next.edge_count(),
                                  cd.delta2_inside,
                                  std::to_string(cd.uncovered_outside) + " edges outside U uncovered"});
            hi = std::move(next);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::PreconditionFailed && e.code() != ErrorCode::BadParams)
                throw;
            rep.stages.push_back({"cover-down " + std::to_string(i), 0, hi.edge_count(), 0, e.what()});
            break;
        }
    }

    // finish: an absorber for the remainder, else the exact solver
    std::optional<std::size_t> used_absorber;
    for (std::size_t k = 0; k < absorbers.size(); ++k)
        if (absorbers[k].r == hi)
            used_absorber = k;
    for (std::size_t k = 0; k < absorbers.size(); ++k)
        add_cycles(rep.cycles, used_absorber == k ? absorbers[k].a.cycles_with_r : absorbers[k].a.cycles);
    if (used_absorber) {
        rep.stages.push_back({"finish", 0, 0, 0, "absorbed remainder"});
    } else if (!hi.empty()) {
        DecompositionReport ex = exact_decompose(hi, ell, params.exact_budget);
        rep.cycles.insert(rep.cycles.end(), ex.cycles.begin(), ex.cycles.end());
        for (const auto& e : ex.leftover)
            leftover.add(e);
        rep.stages.push_back({"finish", ex.cycles.size(), ex.leftover.size(), 0,
                              std::string("exact solver: ") + to_string(ex.status)});
    }
    std::sort(rep.cycles.begin(), rep.cycles.end());
    rep.leftover = leftover.edges();
    rep.stats.covered = g.edge_count() - rep.leftover.size();
    rep.stats.delta2 = max_codegree(leftover);
    rep.status = rep.leftover.empty() ? DecompStatus::Complete : DecompStatus::Partial;
    if (!check_accounting(g, rep))
        fail(ErrorCode::ConstructionFailed, "pipeline accounting does not add up");
    return rep;
}

} // namespace h3
