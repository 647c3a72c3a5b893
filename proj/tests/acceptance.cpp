// Acceptance checks, one per criterion: `acceptance <1..12>` prints a single
// PASS/FAIL line. Exit 0 on PASS, 1 on FAIL, 77 when the only failing
// sub-check is one recorded as unattainable (reported by ctest as skipped).

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "h3/core.hpp"
#include "h3/counterexample.hpp"
#include "h3/decomposer.hpp"
#include "h3/error.hpp"
#include "h3/euler.hpp"
#include "h3/gadgets.hpp"
#include "h3/rng.hpp"
#include "h3/tour_trail.hpp"
#include "h3/walks.hpp"

using namespace h3;

namespace {

// ---- pinned tolerances and limits ----------------------------------------

constexpr double c1_seconds = 10.0;
constexpr double c3_seconds = 300.0;
constexpr double c6_seconds = 60.0;
constexpr double c8_tolerance = 1e-9;
constexpr double c9_seconds = 60.0;
constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_unattainable = 77;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;
    bool unattainable_only = false;

    // Records a failed sub-check; returns ok.
    bool require(bool ok, const std::string& what)
    {
        if (!ok) {
            if (pass)
                detail << "failed: ";
            else
                detail << "; ";
            detail << what;
            pass = false;
        }
        return ok;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Vertex> range(Vertex lo, Vertex hi)
{
    std::vector<Vertex> v(hi - lo);
    std::iota(v.begin(), v.end(), lo);
    return v;
}

std::size_t choose3(std::size_t m)
{
    return m < 3 ? 0 : m * (m - 1) * (m - 2) / 6;
}

ThreeGraph random_graph(std::size_t n, double p, std::uint64_t seed)
{
    Rng rng(seed);
    ThreeGraph g(n);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c)
                if (rng.bernoulli(p))
                    g.add(a, b, c);
    return g;
}

// ---- oracles written against the definitions only --------------------------

// Windows of a cyclic sequence, as sorted triples.
std::vector<Triple> cyclic_windows(const std::vector<Vertex>& s)
{
    std::vector<Triple> out;
    const std::size_t k = s.size();
    for (std::size_t i = 0; i < k; ++i) {
        Vertex x = s[i], y = s[(i + 1) % k], z = s[(i + 2) % k];
        std::array<Vertex, 3> t{x, y, z};
        std::sort(t.begin(), t.end());
        out.push_back({t[0], t[1], t[2]});
    }
    return out;
}

bool distinct_triple(const Triple& t)
{
    return t.a != t.b && t.b != t.c && t.a != t.c;
}

// A tight cycle of length `len` (0 = any length >= 4) in g: distinct
// vertices and every cyclic window an edge of g.
bool is_tight_cycle(const std::vector<Vertex>& c, const ThreeGraph& g, std::size_t len)
{
    if (c.size() < 4 || (len != 0 && c.size() != len))
        return false;
    std::set<Vertex> vs(c.begin(), c.end());
    if (vs.size() != c.size())
        return false;
    for (const auto& t : cyclic_windows(c))
        if (!g.contains(t))
            return false;
    return true;
}

// cycles are tight cycles of g of length len, edge-disjoint, and together
// with `leftover` they use every edge of g exactly once.
bool accounts_for(const ThreeGraph& g, const std::vector<std::vector<Vertex>>& cycles,
                  const std::vector<Triple>& leftover, std::size_t len, std::string& why)
{
    std::multiset<Triple> used;
    for (const auto& c : cycles) {
        if (!is_tight_cycle(c, g, len)) {
            why = "invalid cycle";
            return false;
        }
        for (const auto& t : cyclic_windows(c))
            used.insert(t);
    }
    for (const auto& t : leftover)
        used.insert(t);
    std::vector<Triple> all(used.begin(), used.end());
    if (all != g.edges()) {
        why = "cycles plus leftover differ from the input edges";
        return false;
    }
    return true;
}

std::vector<std::vector<Vertex>> vertex_lists(const std::vector<WalkSeq>& ws)
{
    std::vector<std::vector<Vertex>> out;
    for (const auto& w : ws)
        out.push_back(w.vertices());
    return out;
}

// Ends (u2,u1) and (u_{k-1},u_k) of every trail, sorted.
std::vector<Arc> trail_ends(const TourTrailDecomposition& t)
{
    std::vector<Arc> out;
    for (const auto& tr : t.trails) {
        const auto& u = tr.vertices();
        const std::size_t k = u.size();
        out.push_back({u[1], u[0]});
        out.push_back({u[k - 2], u[k - 1]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Tours are closed tight trails in host and tours plus trails use the
// edges of `covered` exactly once.
bool tour_trail_partition(const TourTrailDecomposition& t, const ThreeGraph& covered, const ThreeGraph& host)
{
    std::vector<Triple> used;
    for (const auto& w : t.tours) {
        auto win = cyclic_windows(w.vertices());
        for (const auto& e : win)
            if (!distinct_triple(e) || !host.contains(e))
                return false;
        used.insert(used.end(), win.begin(), win.end());
    }
    for (const auto& w : t.trails) {
        const auto& u = w.vertices();
        for (std::size_t i = 0; i + 2 < u.size(); ++i) {
            std::array<Vertex, 3> s{u[i], u[i + 1], u[i + 2]};
            std::sort(s.begin(), s.end());
            Triple e{s[0], s[1], s[2]};
            if (!distinct_triple(e) || !host.contains(e))
                return false;
            used.push_back(e);
        }
    }
    std::sort(used.begin(), used.end());
    return used == covered.edges();
}

// True iff the arcs are vertex-disjoint oriented triangles and nothing else.
bool only_triangles(std::vector<Arc> arcs)
{
    std::map<Vertex, std::vector<Vertex>> out_arcs;
    std::map<Vertex, int> indeg;
    for (const auto& a : arcs) {
        out_arcs[a.from].push_back(a.to);
        ++indeg[a.to];
    }
    for (const auto& [v, outs] : out_arcs)
        if (outs.size() != 1 || indeg[v] != 1)
            return false;
    for (const auto& [v, d] : indeg)
        if (d != 1 || out_arcs[v].size() != 1)
            return false;
    for (const auto& [v, outs] : out_arcs) {
        Vertex b = outs[0];
        Vertex c = out_arcs[b][0];
        if (out_arcs[c][0] != v || v == b || b == c || c == v)
            return false;
    }
    return true;
}

// Does g contain a tight cycle on len vertices? Rotated so that v0 is its
// least vertex.
bool has_tight_cycle(const ThreeGraph& g, std::size_t len)
{
    std::vector<Vertex> seq;
    std::vector<char> on(g.n(), 0);
    std::function<bool()> rec = [&]() -> bool {
        const std::size_t k = seq.size();
        if (k == len)
            return g.contains(seq[k - 2], seq[k - 1], seq[0]) && g.contains(seq[k - 1], seq[0], seq[1]);
        for (Vertex z = seq[0] + 1; z < g.n(); ++z) {
            if (on[z])
                continue;
            if (k >= 2 && !g.contains(seq[k - 2], seq[k - 1], z))
                continue;
            on[z] = 1;
            seq.push_back(z);
            bool found = rec();
            seq.pop_back();
            on[z] = 0;
            if (found)
                return true;
        }
        return false;
    };
    for (Vertex v = 0; v < g.n(); ++v) {
        if (g.degree(v) == 0)
            continue;
        seq = {v};
        on[v] = 1;
        bool found = rec();
        on[v] = 0;
        if (found)
            return true;
    }
    return false;
}

// ---- criteria --------------------------------------------------------------

void criterion_1(Verdict& v)
{
    double worst = 0;
    for (std::size_t k : {2, 3, 4})
        for (std::size_t ell : {4, 7}) {
            const std::size_t n = 18 * k;
            const std::string tag = "n=" + std::to_string(n) + " l=" + std::to_string(ell);
            auto t0 = Clock::now();
            Counterexample cx = build_counterexample(n, ell);
            const ThreeGraph& g = cx.graph;
            std::size_t mc = n;
            for (Vertex x = 0; x < n; ++x)
                for (Vertex y = x + 1; y < n; ++y) {
                    std::size_t d = 0;
                    for (Vertex z = 0; z < n; ++z)
                        d += g.contains(x, y, z) ? 1 : 0;
                    mc = std::min(mc, d);
                }
            v.require(3 * mc >= 2 * n - 15, tag + " min codegree " + std::to_string(mc));
            v.require(mc == min_codegree(g), tag + " min_codegree disagrees with the direct count");
            v.require(check_divisibility(g, DivisibilityKind::cycle(ell)).ok, tag + " not C_l-divisible");
            CertifyOutcome o = certify_no_tour(g, cx.partition);
            if (!v.require(o.applicable(), tag + " certificate inapplicable: " + o.inapplicable))
                continue;
            const auto& c = *o.certificate;
            // recount from the labels
            std::size_t h112 = 0, h122 = 0, mixed = 0;
            for (const auto& e : g.edges()) {
                std::array<int, 3> cnt{};
                for (Vertex x : {e.a, e.b, e.c})
                    ++cnt[cx.partition.label(x)];
                h112 += cnt[1] == 2 && cnt[2] == 1;
                h122 += cnt[1] == 1 && cnt[2] == 2;
                mixed += cnt[0] == 1 && cnt[1] == 1 && cnt[2] == 1;
            }
            v.require(c.valid(), tag + " certificate invalid");
            v.require(h112 == c.h112 && h122 == c.h122 && mixed == c.mixed, tag + " counts disagree with recount");
            v.require(mixed == 0 && h112 % 3 == 0 && h122 % 3 == 1, tag + " residues not (0,1)");
            const double s = seconds_since(t0);
            worst = std::max(worst, s);
            v.require(s < c1_seconds, tag + " took " + std::to_string(s) + " s");
        }
    v.detail << (v.pass ? "" : "; ") << "6 instances, slowest " << worst << " s";
}

// Random closed trail of exactly len vertices in host, or empty.
std::vector<Vertex> random_tour(const ThreeGraph& host, std::size_t len, Rng& rng)
{
    const std::size_t n = host.n();
    std::vector<Vertex> seq;
    std::set<Triple> used;
    std::size_t budget = 20000;
    std::function<bool()> rec = [&]() -> bool {
        if (budget == 0)
            return false;
        --budget;
        const std::size_t k = seq.size();
        if (k == len) {
            std::array<Vertex, 3> a{seq[k - 2], seq[k - 1], seq[0]}, b{seq[k - 1], seq[0], seq[1]};
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            Triple ta{a[0], a[1], a[2]}, tb{b[0], b[1], b[2]};
            return distinct_triple(ta) && distinct_triple(tb) && !(ta == tb) && host.contains(ta) &&
                   host.contains(tb) && !used.count(ta) && !used.count(tb);
        }
        std::vector<Vertex> zs(n);
        std::iota(zs.begin(), zs.end(), 0);
        rng.shuffle(zs);
        for (Vertex z : zs) {
            if (k >= 2) {
                std::array<Vertex, 3> s{seq[k - 2], seq[k - 1], z};
                std::sort(s.begin(), s.end());
                Triple t{s[0], s[1], s[2]};
                if (!distinct_triple(t) || !host.contains(t) || used.count(t))
                    continue;
                used.insert(t);
                seq.push_back(z);
                if (rec())
                    return true;
                seq.pop_back();
                used.erase(t);
            } else {
                if (k == 1 && z == seq[0])
                    continue;
                seq.push_back(z);
                if (rec())
                    return true;
                seq.pop_back();
            }
        }
        return false;
    };
    if (rec())
        return seq;
    return {};
}

void criterion_2(Verdict& v)
{
    Rng rng(2024, 2);
    std::size_t tours = 0, violations = 0, phi_bad = 0, nontrivial = 0, library_bad = 0;
    while (tours < 1000) {
        const std::size_t n = 6 + rng.below(7);
        std::vector<std::uint8_t> labels(n);
        for (auto& l : labels)
            l = static_cast<std::uint8_t>(rng.below(3));
        labels[0] = 1;
        labels[1] = 2;
        ThreeGraph host(n);
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b)
                for (Vertex c = b + 1; c < n; ++c)
                    if (labels[a] + labels[b] + labels[c] != 3 || labels[a] == labels[b] || labels[b] == labels[c] ||
                        labels[a] == labels[c])
                        host.add(a, b, c);
        const std::size_t len = 4 + rng.below(27);
        auto seq = random_tour(host, len, rng);
        if (seq.empty())
            continue;
        ++tours;
        std::size_t w112 = 0, w122 = 0;
        std::uint64_t phi = 0;
        std::vector<std::uint8_t> word;
        for (Vertex x : seq)
            word.push_back(labels[x]);
        for (std::size_t i = 0; i < len; ++i) {
            std::array<int, 3> s{word[i], word[(i + 1) % len], word[(i + 2) % len]};
            int ones = 0, twos = 0;
            for (int x : s) {
                ones += x == 1;
                twos += x == 2;
            }
            if ((ones == 2 && twos == 1) || (ones == 1 && twos == 2))
                phi += static_cast<std::uint64_t>(s[0] + s[1] + s[2]);
            w112 += ones == 2 && twos == 1;
            w122 += ones == 1 && twos == 2;
        }
        nontrivial += (w112 + w122) > 0;
        violations += (w112 % 3) != (w122 % 3);
        phi_bad += phi % 3 != 0;
        WalkSeq w = validate(seq, WalkKind::Tour, host);
        Tripartition part = Tripartition::from_labels(labels);
        if (!check_tour_parity(w, part, host) || phi_cyclic_word(word).phi != phi)
            ++library_bad;
    }
    v.require(violations == 0, std::to_string(violations) + " parity violations");
    v.require(phi_bad == 0, std::to_string(phi_bad) + " words with Phi not 0 mod 3");
    v.require(library_bad == 0, std::to_string(library_bad) + " disagreements with the library");
    v.detail << (v.pass ? "" : "; ") << tours << " tours (" << nontrivial << " meet U1 and U2 in a window), "
             << violations << " violations";
}

// Exact cover of a 35-bit edge mask of K7 by tight 4-cycles.
struct K7Oracle {
    std::vector<Triple> edges;             // E(K7) in lex order
    std::vector<std::uint64_t> cycle_masks; // every tight 4-cycle of K7
    std::vector<std::vector<std::uint64_t>> by_edge;

    K7Oracle()
    {
        for (Vertex a = 0; a < 7; ++a)
            for (Vertex b = a + 1; b < 7; ++b)
                for (Vertex c = b + 1; c < 7; ++c)
                    edges.push_back({a, b, c});
        auto index = [&](const Triple& t) {
            return static_cast<std::size_t>(std::find(edges.begin(), edges.end(), t) - edges.begin());
        };
        std::set<std::uint64_t> seen;
        for (Vertex a = 0; a < 7; ++a)
            for (Vertex b = 0; b < 7; ++b)
                for (Vertex c = 0; c < 7; ++c)
                    for (Vertex d = 0; d < 7; ++d) {
                        std::set<Vertex> s{a, b, c, d};
                        if (s.size() != 4)
                            continue;
                        std::uint64_t m = 0;
                        for (const auto& t : cyclic_windows({a, b, c, d}))
                            m |= std::uint64_t{1} << index(t);
                        seen.insert(m);
                    }
        cycle_masks.assign(seen.begin(), seen.end());
        by_edge.resize(edges.size());
        for (auto m : cycle_masks)
            for (std::size_t i = 0; i < edges.size(); ++i)
                if (m >> i & 1)
                    by_edge[i].push_back(m);
    }

    bool decomposable(std::uint64_t rest) const
    {
        if (rest == 0)
            return true;
        const int e = std::countr_zero(rest);
        for (auto m : by_edge[e])
            if ((m & rest) == m && decomposable(rest & ~m))
                return true;
        return false;
    }
};

void criterion_3(Verdict& v)
{
    auto t0 = Clock::now();
    auto k4 = exact_decompose(complete_graph(4), 4);
    v.require(k4.status == DecompStatus::Complete && k4.cycles.size() == 1, "K4 l=4 not Complete with 1 cycle");
    ThreeGraph k5g = complete_graph(5);
    auto k5 = exact_decompose(k5g, 5);
    std::string why;
    v.require(k5.status == DecompStatus::Complete && k5.cycles.size() == 2 && accounts_for(k5g, k5.cycles, {}, 5, why),
              "K5 l=5 not Complete with 2 valid cycles");
    std::vector<std::vector<Vertex>> pair{{0, 1, 2, 3, 4}, {0, 2, 4, 1, 3}};
    v.require(accounts_for(k5g, pair, {}, 5, why) && validate_decomposition(k5g, pair),
              "explicit pair does not partition K5");
    ThreeGraph c8(8);
    for (const auto& t : cyclic_windows(range(0, 8)))
        c8.add(t);
    v.require(exact_decompose(c8, 4).status == DecompStatus::Infeasible, "C8 l=4 not Infeasible");

    // every edge set of K7 with at most 12 edges in which all degrees are
    // divisible by 3; the others have no decomposition since each 4-cycle
    // adds 3 to the degree of each of its vertices
    K7Oracle oracle;
    std::size_t divisible = 0, mismatches = 0, complete = 0;
    std::array<int, 7> deg{};
    std::array<int, 7> last{};
    for (std::size_t i = 0; i < oracle.edges.size(); ++i)
        for (Vertex x : {oracle.edges[i].a, oracle.edges[i].b, oracle.edges[i].c})
            last[x] = static_cast<int>(i);
    std::vector<Triple> chosen;
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t mask) {
        if (i == oracle.edges.size()) {
            ++divisible;
            const bool brute = chosen.size() % 4 == 0 && oracle.decomposable(mask);
            auto rep = exact_decompose(build_graph(7, chosen), 4);
            const bool solver = rep.status == DecompStatus::Complete;
            if (rep.status == DecompStatus::BudgetExceeded || brute != solver)
                ++mismatches;
            else if (solver) {
                ++complete;
                std::string w;
                if (!accounts_for(build_graph(7, chosen), rep.cycles, {}, 4, w))
                    ++mismatches;
            }
            return;
        }
        const Triple& e = oracle.edges[i];
        auto closes_ok = [&] {
            for (Vertex x : {e.a, e.b, e.c})
                if (last[x] == static_cast<int>(i) && deg[x] % 3 != 0)
                    return false;
            return true;
        };
        if (closes_ok())
            rec(i + 1, mask);
        if (chosen.size() < 12) {
            for (Vertex x : {e.a, e.b, e.c})
                ++deg[x];
            chosen.push_back(e);
            if (closes_ok())
                rec(i + 1, mask | std::uint64_t{1} << i);
            chosen.pop_back();
            for (Vertex x : {e.a, e.b, e.c})
                --deg[x];
        }
    };
    rec(0, 0);

    // the non-divisible remainder: a seeded sample through the solver
    Rng rng(3, 3);
    std::size_t sampled = 0;
    while (sampled < 200000) {
        const std::size_t m = 1 + rng.below(12);
        std::vector<std::size_t> idx(oracle.edges.size());
        std::iota(idx.begin(), idx.end(), 0);
        rng.shuffle(idx);
        std::vector<Triple> es;
        for (std::size_t j = 0; j < m; ++j)
            es.push_back(oracle.edges[idx[j]]);
        std::sort(es.begin(), es.end());
        ThreeGraph g = build_graph(7, es);
        if (check_divisibility(g, DivisibilityKind::vertex3()).ok)
            continue;
        ++sampled;
        if (exact_decompose(g, 4).status != DecompStatus::Infeasible)
            ++mismatches;
    }
    const double s = seconds_since(t0);
    v.require(mismatches == 0, std::to_string(mismatches) + " disagreements with brute force");
    v.require(s < c3_seconds, "took " + std::to_string(s) + " s");
    v.detail << (v.pass ? "" : "; ") << divisible << " degree-divisible graphs exhaustively (" << complete
             << " decomposable), " << sampled << " sampled others, " << mismatches << " mismatches, " << s << " s";
}

void criterion_4(Verdict& v)
{
    const std::size_t n = 40;
    const std::size_t ell = 7;
    ThreeGraph host = complete_graph(n);
    ThreeGraph none(n);
    Rng rng(4, 4);
    std::size_t built = 0;
    std::size_t max_edges[3] = {0, 0, 0};
    auto pick = [&](std::size_t k) {
        std::vector<Vertex> all = range(0, static_cast<Vertex>(n));
        rng.shuffle(all);
        all.resize(k);
        return all;
    };
    auto check = [&](int kind, const Gadget& g, std::vector<Arc> expect, const std::vector<Vertex>& vs, int i) {
        const std::string tag = std::string(kind == 0 ? "S3" : kind == 1 ? "C4" : "P6") + " #" + std::to_string(i);
        std::sort(expect.begin(), expect.end());
        ThreeGraph eg = build_graph(n, g.edges);
        v.require(trail_ends(g.ttd) == expect, tag + " residual differs from the defining multiset");
        v.require(tour_trail_partition(g.ttd, eg, host), tag + " trails do not partition the gadget");
        std::string why;
        v.require(accounts_for(eg, vertex_lists(g.cycles), {}, ell, why) && certifies(g.edges, g.cycles, ell),
                  tag + " certificate invalid");
        const std::size_t cap[3] = {2 * ell, 8 * ell, 12 * ell};
        v.require(g.edges.size() <= cap[kind], tag + " has " + std::to_string(g.edges.size()) + " edges");
        max_edges[kind] = std::max(max_edges[kind], g.edges.size());
        if (kind == 2) {
            std::set<Vertex> span;
            for (const auto& e : g.edges)
                span.insert({e.a, e.b, e.c});
            for (Vertex x : vs)
                span.erase(x);
            v.require(span.size() <= 12 * ell - 18, tag + " uses too many new vertices");
        }
        ++built;
    };
    for (int i = 0; i < 200; ++i) {
        GadgetOptions opts;
        opts.seed = static_cast<std::uint64_t>(i);
        try {
            auto a = pick(3);
            check(0, build_S3(host, none, a[0], a[1], a[2], ell, opts),
                  {{a[0], a[2]}, {a[0], a[2]}, {a[0], a[1]}, {a[1], a[2]}}, a, i);
            auto b = pick(4);
            check(1, build_C4(host, none, {b[0], b[1], b[2], b[3]}, ell, opts),
                  {{b[0], b[1]}, {b[1], b[2]}, {b[2], b[3]}, {b[3], b[0]}}, b, i);
            auto c = pick(6);
            check(2, build_P6(host, none, {c[0], c[1], c[2], c[3], c[4], c[5]}, ell, opts),
                  {{c[0], c[1]}, {c[1], c[2]}, {c[2], c[0]}, {c[3], c[4]}, {c[4], c[5]}, {c[5], c[3]}}, c, i);
        } catch (const Error& e) {
            v.require(false, "build " + std::to_string(i) + " threw " + e.what());
        }
    }
    v.require(built == 600, std::to_string(built) + " of 600 gadgets built");
    v.detail << (v.pass ? "" : "; ") << built << " gadgets, largest S3/C4/P6 " << max_edges[0] << "/" << max_edges[1]
             << "/" << max_edges[2] << " edges";
}

void check_sea_run(Verdict& v, const std::string& tag, const ThreeGraph& host, const ThreeGraph& r,
                   const std::vector<Vertex>& reservoir, std::size_t ell, std::uint64_t seed, std::size_t& steps_max)
{
    std::set<Vertex> vr;
    for (const auto& e : r.edges())
        vr.insert({e.a, e.b, e.c});
    const std::size_t m = vr.size();
    TourTrailDecomposition t0 = trivial_ttd(r);
    SeaOptions opts;
    opts.seed = seed;
    try {
        SeaResult s = reduce_to_sea(host, r, t0, reservoir, ell, opts);
        v.require(s.trace.size() <= 2 * choose3(m) + 1, tag + " took " + std::to_string(s.trace.size()) + " steps");
        steps_max = std::max(steps_max, s.trace.size());
        std::size_t phi = phi_potential(t0);
        for (const auto& st : s.trace) {
            v.require(st.phi_before == phi && st.phi_after < st.phi_before, tag + " potential did not decrease");
            phi = st.phi_after;
        }
        v.require(phi == phi_potential(s.ttd), tag + " trace does not end at the final potential");
        ThreeGraph covered = edge_union(r, s.added);
        v.require(covered.edge_count() == r.edge_count() + s.added.edge_count(), tag + " added edges meet r");
        v.require(tour_trail_partition(s.ttd, covered, host), tag + " not a tour-trail decomposition");
        v.require(only_triangles(trail_ends(s.ttd)) && is_sea(residual(s.ttd)), tag + " residual is not a sea");
        std::string why;
        v.require(accounts_for(s.added, vertex_lists(s.cycles), {}, ell, why), tag + " added edges not certified");
        TourResult done = eliminate_triangles(host, r, s, ell, opts);
        ThreeGraph all = edge_union(r, done.added);
        v.require(done.ttd.trails.empty() && tour_trail_partition(done.ttd, all, host),
                  tag + " final decomposition is not into tours");
        v.require(accounts_for(done.added, vertex_lists(done.cycles), {}, ell, why),
                  tag + " final added edges not certified");
    } catch (const Error& e) {
        v.require(false, tag + " threw " + e.what());
    }
}

void criterion_5(Verdict& v)
{
    const std::size_t n = 130;
    ThreeGraph host = complete_graph(n);
    std::size_t steps_max = 0;
    {
        ThreeGraph r = restrict_to(host, VertexSet(n, {0, 1, 2, 3, 4}));
        check_sea_run(v, "K5", host, r, range(5, 89), 10, 7, steps_max);
    }
    Rng rng(5, 5);
    std::size_t runs = 0;
    while (runs < 50) {
        const Vertex pool = 7 + static_cast<Vertex>(rng.below(8));
        auto c1 = range(0, pool), c2 = range(0, pool);
        rng.shuffle(c1);
        rng.shuffle(c2);
        c1.resize(7);
        c2.resize(7);
        auto e1 = cyclic_windows(c1), e2 = cyclic_windows(c2);
        ThreeGraph r(n);
        for (const auto& t : e1)
            r.add(t);
        std::size_t before = r.edge_count();
        for (const auto& t : e2)
            r.add(t);
        if (r.edge_count() != before + 7)
            continue; // the cycles share an edge
        if (!v.require(check_divisibility(r, DivisibilityKind::cycle(7)).ok, "union not C7-divisible"))
            break;
        std::vector<Vertex> reservoir;
        for (Vertex x = pool; x < pool + 84; ++x)
            reservoir.push_back(x);
        check_sea_run(v, "union #" + std::to_string(runs), host, r, reservoir, 7, 100 + runs, steps_max);
        ++runs;
    }
    v.detail << (v.pass ? "" : "; ") << "K5 (l=10) and " << runs << " C7 unions (l=7), at most " << steps_max
             << " reduction steps";
}

void criterion_6(Verdict& v)
{
    const std::size_t n = 300;
    const std::size_t ell = 7;
    auto t0 = Clock::now();
    ThreeGraph host = complete_graph(n);
    ThreeGraph r(n);
    for (const auto& t : cyclic_windows(range(0, 7)))
        r.add(t);
    for (const auto& t : cyclic_windows(range(7, 14)))
        r.add(t);
    try {
        GadgetOptions opts;
        opts.seed = 12;
        Absorber a = build_absorber(host, r, ell, opts);
        ThreeGraph ag = build_graph(n, a.edges);
        ThreeGraph ar = edge_union(ag, r);
        v.require(ar.edge_count() == ag.edge_count() + r.edge_count(), "absorber meets R");
        v.require(validate_decomposition(ag, a.cycles), "A not decomposed");
        v.require(validate_decomposition(ar, a.cycles_with_r), "A u R not decomposed");
        std::string why;
        v.require(accounts_for(ag, vertex_lists(a.cycles), {}, ell, why), "A: " + why);
        v.require(accounts_for(ar, vertex_lists(a.cycles_with_r), {}, ell, why), "A u R: " + why);
        const double s = seconds_since(t0);
        v.require(s < c6_seconds, "took " + std::to_string(s) + " s");
        v.detail << (v.pass ? "" : "; ") << "|A| = " << a.edges.size() << ", " << a.cycles.size() << " and "
                 << a.cycles_with_r.size() << " cycles, " << s << " s";
    } catch (const Error& e) {
        v.require(false, std::string("threw ") + e.what());
    }
}

void criterion_7(Verdict& v)
{
    const std::size_t n = 80;
    const std::size_t ell = 7;
    ThreeGraph host = complete_graph(n);
    WalkSeq r = validate(range(0, 9), WalkKind::Tour, host);
    WalkSeq c = validate(range(9, 18), WalkKind::Cycle, host);
    try {
        GadgetOptions opts;
        opts.seed = 6;
        Transformer l = build_transformer(host, ThreeGraph(n), r, c, ell, opts);
        ThreeGraph lg = build_graph(n, l.edges);
        ThreeGraph rl = edge_union(r.edge_graph(n), lg);
        ThreeGraph cl = edge_union(c.edge_graph(n), lg);
        v.require(rl.edge_count() == 9 + lg.edge_count() && cl.edge_count() == 9 + lg.edge_count(),
                  "L meets R or C");
        std::string why;
        v.require(accounts_for(rl, vertex_lists(l.r_side), {}, ell, why), "R u L: " + why);
        v.require(accounts_for(cl, vertex_lists(l.c_side), {}, ell, why), "C u L: " + why);
        v.require(l.edges.size() <= 9 * ell, "|E(L)| = " + std::to_string(l.edges.size()));
        v.detail << (v.pass ? "" : "; ") << "|E(L)| = " << l.edges.size() << " <= " << 9 * ell;
    } catch (const Error& e) {
        v.require(false, std::string("threw ") + e.what());
    }
}

void criterion_8(Verdict& v)
{
    ThreeGraph k5 = complete_graph(5);
    auto f = fractional_decompose(k5, 5);
    v.require(f.status == DecompStatus::Complete, "K5 l=5 reported infeasible");
    std::map<Triple, double> sum;
    for (const auto& e : k5.edges())
        sum[e] = 0.0;
    bool valid = f.cycles.size() == f.weights.size();
    for (std::size_t i = 0; valid && i < f.cycles.size(); ++i) {
        valid = is_tight_cycle(f.cycles[i], k5, 5) && f.weights[i] >= 0.0 && f.weights[i] <= 1.0;
        for (const auto& t : cyclic_windows(f.cycles[i]))
            sum[t] += f.weights[i];
    }
    double worst = 0;
    for (const auto& [e, s] : sum)
        worst = std::max(worst, std::abs(s - 1.0));
    v.require(valid, "weights or cycles invalid");
    v.require(worst <= c8_tolerance, "per-edge deviation " + std::to_string(worst));

    // all 5-cycles of K5: sequences starting at 0, one per reflection
    std::set<std::vector<Vertex>> cycles;
    std::vector<Vertex> p{1, 2, 3, 4};
    do {
        std::vector<Vertex> c{0, p[0], p[1], p[2], p[3]};
        std::vector<Vertex> r{0, p[3], p[2], p[1], p[0]};
        cycles.insert(std::min(c, r));
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<Triple, int> incidence;
    for (const auto& c : cycles)
        for (const auto& t : cyclic_windows(c))
            ++incidence[t];
    bool uniform = cycles.size() == 12 && incidence.size() == 10;
    for (const auto& [e, k] : incidence)
        uniform = uniform && k == 6;
    v.require(uniform, "uniform 1/6 is not a witness");
    v.detail << (v.pass ? "" : "; ") << f.cycles.size() << " cycles, max deviation " << worst
             << "; 12 cycles with every edge in 6";
}

// Closed, every window a distinct edge of g, all of E(g) used.
bool is_euler_tour(const std::vector<Vertex>& w, const ThreeGraph& g)
{
    auto win = cyclic_windows(w);
    std::set<Triple> s;
    for (const auto& t : win)
        if (!distinct_triple(t) || !g.contains(t) || !s.insert(t).second)
            return false;
    return s.size() == g.edge_count();
}

void criterion_9(Verdict& v)
{
    auto t0 = Clock::now();
    bool k5_ok = false;
    auto k5 = exact_euler(complete_graph(5));
    if (k5.tour)
        k5_ok = verify_euler(complete_graph(5), *k5.tour) && is_euler_tour(k5.tour->vertices(), complete_graph(5));
    const bool k5_exhausted = k5.status == DecompStatus::Infeasible;

    bool k7_ok = false;
    ThreeGraph k7 = complete_graph(7);
    try {
        EulerOptions trail_only;
        trail_only.exact_fallback = 0;
        WalkSeq t = assemble_euler(k7, 9, 1, trail_only);
        k7_ok = verify_euler(k7, t) && is_euler_tour(t.vertices(), k7);
    } catch (const Error& e) {
        v.require(false, std::string("K7 assemble threw ") + e.what());
    }
    const double s = seconds_since(t0);
    v.require(k7_ok, "K7 tour not verified");
    v.require(s < c9_seconds, "took " + std::to_string(s) + " s");
    const bool others_ok = v.pass;
    v.require(k5_ok, std::string("K5: exact_euler reports ") + to_string(k5.status) +
                         (k5_exhausted ? " after exhausting the search (no Euler tour exists)" : ""));
    v.unattainable_only = others_ok && !k5_ok && k5_exhausted;
    v.detail << "; K7 assembled and verified: " << (k7_ok ? "yes" : "no") << ", " << s << " s";
}

void criterion_10(Verdict& v)
{
    const std::size_t n = 1000;
    const double xi = 0.25;
    const double delta = 0.7;
    const std::size_t m_prime = 40;
    ThreeGraph g = random_graph(n, 0.8, 10);
    const std::size_t mc = min_codegree(g);
    if (!v.require(static_cast<double>(mc) >= delta * n, "host min codegree " + std::to_string(mc)))
        return;
    try {
        Vortex vx = build_vortex(g, delta, xi, m_prime, 10);
        std::vector<std::size_t> expect{n};
        while (expect.back() >= m_prime)
            expect.push_back(static_cast<std::size_t>(std::floor(xi * static_cast<double>(expect.back()))));
        std::vector<std::size_t> got;
        for (const auto& u : vx.levels)
            got.push_back(u.count());
        v.require(got == expect, "level sizes differ from the recurrence");
        v.require(vx.levels[0].count() == n, "V1");
        v.require(vx.m == got.back(), "V3");
        const double d = delta - xi;
        std::size_t v4 = 0, v5 = 0, nested = 0;
        for (std::size_t i = 1; i < vx.levels.size(); ++i) {
            auto prev = vx.levels[i - 1].members();
            auto cur = vx.levels[i].members();
            const double ui = static_cast<double>(cur.size());
            for (Vertex x : cur)
                nested += !vx.levels[i - 1].test(x);
            for (Vertex x : prev) {
                std::size_t deg = 0;
                for (std::size_t a = 0; a < cur.size(); ++a)
                    for (std::size_t b = a + 1; b < cur.size(); ++b)
                        deg += g.contains(x, cur[a], cur[b]);
                v4 += static_cast<double>(deg) < d * ui * (ui - 1) / 2;
            }
            for (std::size_t a = 0; a < prev.size(); ++a)
                for (std::size_t b = a + 1; b < prev.size(); ++b) {
                    std::size_t deg = 0;
                    for (Vertex z : cur)
                        deg += g.contains(prev[a], prev[b], z);
                    v5 += static_cast<double>(deg) < d * ui;
                }
        }
        v.require(nested == 0, "levels not nested");
        v.require(v4 == 0, std::to_string(v4) + " V4 failures");
        v.require(v5 == 0, std::to_string(v5) + " V5 failures");
        v.require(check_vortex(g, vx, d).ok, "check_vortex disagrees");
        v.detail << (v.pass ? "" : "; ") << "min codegree " << mc << ", sizes";
        for (auto s : got)
            v.detail << " " << s;
        v.detail << ", V1-V5 hold with density " << d;
    } catch (const Error& e) {
        v.require(false, std::string("threw ") + e.what());
    }
}

// Partitions of g's edges into 3-edge paths.
bool brute_p3(std::vector<Pair> rest)
{
    if (rest.empty())
        return true;
    if (rest.size() % 3 != 0)
        return false;
    const Pair e = rest.front();
    auto has = [&](Vertex a, Vertex b) {
        return std::find(rest.begin(), rest.end(), Pair::of(a, b)) != rest.end();
    };
    std::set<Vertex> vs;
    for (const auto& p : rest)
        vs.insert({p.u, p.v});
    auto try_path = [&](Vertex a, Vertex b, Vertex c, Vertex d) {
        std::set<Vertex> s{a, b, c, d};
        if (s.size() != 4 || !has(a, b) || !has(b, c) || !has(c, d))
            return false;
        std::vector<Pair> next;
        for (const auto& p : rest)
            if (!(p == Pair::of(a, b) || p == Pair::of(b, c) || p == Pair::of(c, d)))
                next.push_back(p);
        return brute_p3(next);
    };
    for (Vertex x : vs)
        for (Vertex y : vs) {
            // e as the middle edge, or as either end edge in either direction
            if (try_path(x, e.u, e.v, y) || try_path(e.u, e.v, x, y) || try_path(e.v, e.u, x, y))
                return true;
        }
    return false;
}

bool valid_p3(const Graph2& g, const std::vector<P3Path>& paths)
{
    std::vector<Pair> used;
    for (const auto& p : paths) {
        std::set<Vertex> s(p.begin(), p.end());
        if (s.size() != 4)
            return false;
        for (int i = 0; i < 3; ++i) {
            if (!g.contains(p[i], p[i + 1]))
                return false;
            used.push_back(Pair::of(p[i], p[i + 1]));
        }
    }
    std::sort(used.begin(), used.end());
    return used == g.edges();
}

void criterion_11(Verdict& v)
{
    std::vector<Pair> k4e;
    for (Vertex a = 0; a < 4; ++a)
        for (Vertex b = a + 1; b < 4; ++b)
            k4e.push_back({a, b});
    Graph2 k4(4, k4e);
    auto r = p3_decompose(k4);
    v.require(r.status == DecompStatus::Complete && r.paths.size() == 2 && valid_p3(k4, r.paths),
              "K4 not split into 2 paths");
    Rng rng(11, 11);
    std::size_t agree = 0, trivial = 0, decomposable = 0;
    auto random_edges = [&](std::size_t n, std::size_t m) {
        std::vector<Pair> all;
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b)
                all.push_back({a, b});
        rng.shuffle(all);
        all.resize(m);
        std::sort(all.begin(), all.end());
        return all;
    };
    // counting: |E| not divisible by 3
    for (std::size_t m : {1, 2, 4, 5, 7, 8, 10, 11, 13, 14, 16, 17, 19, 20}) {
        Graph2 g(10, random_edges(10, m));
        trivial += p3_decompose(g).status == DecompStatus::Infeasible;
    }
    v.require(trivial == 14, "a graph with |E| not 0 mod 3 was not Infeasible");
    // random 20-edge graphs, and 18- and 21-edge graphs where the answer is
    // not fixed by counting
    std::size_t total = 0;
    for (std::size_t m : {20, 18, 21})
        for (int i = 0; i < 40; ++i) {
            const std::size_t n = 7 + rng.below(4);
            auto es = random_edges(n, m);
            Graph2 g(n, es);
            auto res = p3_decompose(g);
            const bool brute = brute_p3(es);
            const bool solver = res.status == DecompStatus::Complete;
            ++total;
            if (res.status != DecompStatus::BudgetExceeded && brute == solver && (!solver || valid_p3(g, res.paths)))
                ++agree;
            decomposable += brute;
        }
    v.require(agree == total, std::to_string(total - agree) + " disagreements with brute force");
    v.detail << (v.pass ? "" : "; ") << "K4 -> 2 paths, " << trivial << " counting cases, " << agree << "/"
             << total << " random graphs agree (" << decomposable << " decomposable)";
}

// Union of the cycles a greedy packing finds in a random host: every degree
// divisible by 3 and |E| divisible by ell.
ThreeGraph divisible_host(std::size_t n, double p, std::size_t ell, std::uint64_t seed)
{
    ThreeGraph h = random_graph(n, p, seed);
    DecompositionReport r = greedy_pack(h, ell, seed);
    ThreeGraph g(n);
    for (const auto& c : r.cycles)
        for (const auto& t : cycle_edges(c))
            g.add(t);
    return g;
}

void criterion_12(Verdict& v)
{
    std::size_t runs = 0;
    auto account = [&](const std::string& tag, const ThreeGraph& g, const DecompositionReport& rep,
                       bool cycle_free_leftover) {
        ++runs;
        std::string why;
        v.require(accounts_for(g, rep.cycles, rep.leftover, rep.ell, why), tag + ": " + why);
        v.require(check_accounting(g, rep), tag + ": check_accounting disagrees");
        if (cycle_free_leftover)
            v.require(!has_tight_cycle(build_graph(g.n(), rep.leftover), rep.ell),
                      tag + ": leftover contains an l-cycle");
    };
    try {
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
            for (std::size_t n : {30, 45, 60})
                for (std::size_t ell : {5, 9}) {
                    ThreeGraph g = random_graph(n, 0.8, seed * 100 + n);
                    const std::string tag = "n=" + std::to_string(n) + " l=" + std::to_string(ell);
                    account("greedy " + tag, g, greedy_pack(g, ell, seed), true);
                    account("well-behaved " + tag, g, well_behaved_pack(g, ell, seed), true);
                }
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const std::size_t n = 60;
            ThreeGraph g = divisible_host(n, 0.85, 9, seed);
            VertexSet u(n);
            for (Vertex x = 0; x < 15; ++x)
                u.set(x);
            CoverDownResult cd = cover_down(g, u, 9, seed);
            account("cover-down seed " + std::to_string(seed), g, cd.report, false);
            std::string why;
            v.require(accounts_for(cd.f, cd.report.cycles, {}, 9, why), "cover-down F not decomposed");
        }
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            ThreeGraph g = divisible_host(48, 0.9, 9, seed);
            PipelineParams pp;
            pp.m_prime = 12;
            account("pipeline seed " + std::to_string(seed), g, full_pipeline(g, 9, seed, pp), false);
        }
    } catch (const Error& e) {
        v.require(false, std::string("threw ") + e.what());
    }
    v.detail << (v.pass ? "" : "; ") << runs << " reports with exact accounting";
}

} // namespace

int main(int argc, char** argv)
{
    static const std::map<int, std::pair<const char*, void (*)(Verdict&)>> criteria{
        {1, {"counterexample exactness", criterion_1}},
        {2, {"parity invariant", criterion_2}},
        {3, {"exact oracle", criterion_3}},
        {4, {"gadget residual algebra", criterion_4}},
        {5, {"sea-of-triangles engine", criterion_5}},
        {6, {"absorber end-to-end", criterion_6}},
        {7, {"transformer", criterion_7}},
        {8, {"fractional LP", criterion_8}},
        {9, {"Euler", criterion_9}},
        {10, {"vortex", criterion_10}},
        {11, {"P3 decomposition", criterion_11}},
        {12, {"pipeline accounting", criterion_12}},
    };
    std::vector<int> which;
    if (argc < 2 || std::string(argv[1]) == "all")
        for (const auto& [k, c] : criteria)
            which.push_back(k);
    else
        for (int i = 1; i < argc; ++i)
            which.push_back(std::atoi(argv[i]));
    bool hard_fail = false, soft_fail = false;
    for (int k : which) {
        auto it = criteria.find(k);
        if (it == criteria.end()) {
            std::fprintf(stderr, "unknown criterion %d\n", k);
            return exit_fail;
        }
        Verdict v;
        auto t0 = Clock::now();
        try {
            it->second.second(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("uncaught: ") + e.what());
        }
        std::printf("criterion %2d %s: %s (%s) [%.2f s]\n", k, v.pass ? "PASS" : "FAIL", it->second.first,
                    v.detail.str().c_str(), seconds_since(t0));
        std::fflush(stdout);
        if (!v.pass)
            (v.unattainable_only ? soft_fail : hard_fail) = true;
    }
    if (hard_fail || (soft_fail && which.size() > 1))
        return exit_fail;
    return soft_fail ? exit_unattainable : exit_pass;
}
