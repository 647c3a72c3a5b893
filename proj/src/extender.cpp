#include "h3/extender.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "h3/error.hpp"
#include "h3/pathfinder.hpp"
#include "h3/rng.hpp"

namespace h3 {

SparsityReport check_gamma_sparse(const std::vector<WalkSeq>& paths, std::size_t n, double gamma)
{
    SparsityReport rep;
    // counts of type 1 and type 2 for pairs touching some path end
    std::map<Pair, std::array<std::size_t, 3>> touched;
    for (const auto& p : paths) {
        const auto& v = p.vertices();
        const std::size_t k = v.size();
        std::vector<Vertex> ends{v[0], v[1], v[k - 2], v[k - 1]};
        std::sort(ends.begin(), ends.end());
        ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
        std::map<Pair, unsigned> type_of;
        for (Vertex x : ends)
            for (Vertex y = 0; y < n; ++y) {
                if (x == y)
                    continue;
                Pair e = Pair::of(x, y);
                if (type_of.count(e))
                    continue;
                type_of[e] = classify_type(p, e);
            }
        for (const auto& [e, t] : type_of)
            ++touched[e][t];
    }
    const double nn = static_cast<double>(n);
    auto ratio = [](std::size_t count, double bound) {
        if (count == 0)
            return 0.0;
        return bound > 0 ? static_cast<double>(count) / bound : INFINITY;
    };
    double worst = -1.0;
    auto consider = [&](Pair e, unsigned r, std::size_t count) {
        const double bound = gamma * std::pow(nn, 3.0 - r);
        if (static_cast<double>(count) > bound)
            rep.ok = false;
        const double q = ratio(count, bound);
        if (count > 0 && q > worst) {
            worst = q;
            rep.worst = SparsityOffender{e, r, count, bound};
        }
    };
    const std::size_t total = paths.size();
    for (const auto& [e, c] : touched) {
        consider(e, 1, c[1]);
        consider(e, 2, c[2]);
        consider(e, 0, total - c[1] - c[2]);
    }
    // a pair touching no end has every path of type 0
    const std::size_t all_pairs = n * (n - 1) / 2;
    if (touched.size() < all_pairs && total > 0) {
        Pair e{};
        bool found = false;
        for (Vertex x = 0; x < n && !found; ++x)
            for (Vertex y = x + 1; y < n && !found; ++y)
                if (!touched.count(Pair{x, y})) {
                    e = Pair{x, y};
                    found = true;
                }
        consider(e, 0, total);
    }
    return rep;
}

ExtendResult extend_family(const ThreeGraph& h1, const ThreeGraph& h2, const std::vector<WalkSeq>& paths,
                           std::size_t ell, double mu, const ExtendOptions& opts)
{
    const std::size_t n = h1.n();
    if (h2.n() != n)
        fail(ErrorCode::BadParams, "h1 and h2 have different vertex counts");
    ExtendResult out;
    out.f = ThreeGraph(n);
    if (paths.empty())
        return out;
    const std::size_t lp = paths.front().size();
    if (ell < lp + 2)
        fail(ErrorCode::BadParams, "cycle length must exceed the path length by at least 2");
    ThreeGraph seen(n);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto& p = paths[i];
        if (p.kind() != WalkKind::Path || p.size() != lp)
            fail(ErrorCode::PreconditionFailed, "family paths must be tight paths on the same number of vertices", i + 1);
        for (const auto& e : p.edges()) {
            if (!h1.contains(e))
                fail(ErrorCode::PreconditionFailed, "path edge outside h1", i + 1);
            if (h2.contains(e))
                fail(ErrorCode::PreconditionFailed, "h1 and h2 share an edge", i + 1);
            if (!seen.add(e))
                fail(ErrorCode::EdgeOverlap, "family paths share an edge", i + 1);
        }
    }

    std::vector<std::size_t> order(paths.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(opts.seed);
    if (opts.shuffle) {
        Rng shuf(opts.seed, 1);
        shuf.shuffle(order);
    }

    ThreeGraph used(n); // G_{i-1}: reserve edges taken so far
    std::vector<std::uint32_t> codeg(n * n, 0);
    std::size_t delta = 0;
    const double limit = mu * static_cast<double>(n);
    PathConstraints cons;
    cons.avoid = &used;
    cons.allowed = opts.allowed;
    for (std::size_t step = 0; step < order.size(); ++step) {
        const std::size_t i = order[step];
        if (static_cast<double>(delta) > limit) {
            if (opts.lenient) {
                out.failed.push_back(i);
                out.delta2.push_back(delta);
                continue;
            }
            fail(ErrorCode::CodegreeBudgetExceeded,
                 "reserve codegree " + std::to_string(delta) + " exceeds mu*n before path " + std::to_string(step + 1),
                 step + 1);
        }
        WalkSeq c;
        try {
            c = extend_to_cycle(h2, paths[i], ell, cons, {rng.next(), opts.restarts});
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoExtensionAvailable)
                throw;
            if (opts.lenient) {
                out.failed.push_back(i);
                out.delta2.push_back(delta);
                continue;
            }
            fail(ErrorCode::NoExtensionAvailable, "no extension for path " + std::to_string(step + 1), step + 1);
        }
        for (const auto& e : c.edges()) {
            out.f.add(e);
            if (h1.contains(e))
                continue;
            used.add(e);
            for (auto [x, y] : {std::pair{e.a, e.b}, std::pair{e.a, e.c}, std::pair{e.b, e.c}})
                delta = std::max<std::size_t>(delta, ++codeg[x * n + y]);
        }
        out.cycles.push_back(std::move(c));
        out.source.push_back(i);
        out.delta2.push_back(delta);
    }
    return out;
}

} // namespace h3
