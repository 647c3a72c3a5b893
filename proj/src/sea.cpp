#include <algorithm>

#include "h3/error.hpp"
#include "h3/gadgets.hpp"
#include "h3/rng.hpp"
#include "h3/tour_trail.hpp"
#include "workspace.hpp"

namespace h3 {

using detail::Workspace;

namespace {

std::size_t phi_of(const ResidualDigraph& d) { return d.arc_count() - sea_of_triangles(d).arc_count(); }

ThreeGraph used_graph(const ThreeGraph& host, const ThreeGraph& r, const ThreeGraph* avoid)
{
    if (r.n() != host.n() || (avoid && avoid->n() != host.n()))
        fail(ErrorCode::BadParams, "graphs have different vertex counts");
    ThreeGraph used = r;
    if (avoid)
        used |= *avoid;
    return used;
}

GadgetOptions gadget_options(const SeaOptions& opts, const VertexSet* forbidden)
{
    GadgetOptions g;
    g.seed = opts.seed;
    g.retries = opts.retries;
    g.forbidden = forbidden;
    return g;
}

void add_gadget(TourTrailDecomposition& t, std::vector<WalkSeq>& cycles, const Gadget& g)
{
    t.absorb(g.ttd);
    cycles.insert(cycles.end(), g.cycles.begin(), g.cycles.end());
}

void cancel_or_throw(TourTrailDecomposition& t, Arc a)
{
    if (!cancel_arc(t, a))
        fail(ErrorCode::ConstructionFailed,
             "no opposite trail ends at (" + std::to_string(a.from) + "," + std::to_string(a.to) + ")");
}

// Non-sea arcs, lexicographic, without repetition.
std::vector<Arc> loose_arcs(const ResidualDigraph& d)
{
    TriangleLake lake = sea_of_triangles(d);
    std::vector<Arc> in_sea;
    for (const auto& t : lake.triangles)
        for (int i = 0; i < 3; ++i)
            in_sea.push_back(Arc{t[i], t[(i + 1) % 3]});
    std::sort(in_sea.begin(), in_sea.end());
    std::vector<Arc> out;
    for (const auto& [a, m] : d.multiplicities())
        if (!std::binary_search(in_sea.begin(), in_sea.end(), a))
            out.push_back(a);
    return out;
}

} // namespace

SeaResult reduce_to_sea(const ThreeGraph& host, const ThreeGraph& r, TourTrailDecomposition t,
                        std::vector<Vertex> reservoir, std::size_t ell, const SeaOptions& opts)
{
    if (ell < 7)
        fail(ErrorCode::BadParams, "gadgets need cycle length at least 7");
    ThreeGraph used = used_graph(host, r, opts.avoid);
    r.for_each_edge([&](const Triple& e) {
        if (!host.contains(e))
            fail(ErrorCode::PreconditionFailed, "r is not a subgraph of the host");
    });
    require_decomposes(t, r);
    const VertexSet vr = r.support();
    VertexSet forbidden(host.n());
    if (opts.forbidden)
        forbidden |= *opts.forbidden;
    for (Vertex v : reservoir) {
        if (v >= host.n())
            fail(ErrorCode::OutOfRange, "reservoir vertex out of range");
        if (vr.test(v))
            fail(ErrorCode::PreconditionFailed, "reservoir meets V(r) at vertex " + std::to_string(v));
        forbidden.set(v);
    }
    // Internal gadget vertices stay off the reservoir so that the triangles
    // planted on reservoir vertices remain isolated in the residual.
    Workspace ws(host, std::move(used), ell, gadget_options(opts, &forbidden));

    SeaResult out;
    std::size_t next = 0;
    auto pop = [&](std::size_t k) {
        if (reservoir.size() - next < k)
            fail(ErrorCode::GadgetConstructionFailed, "vertex reservoir exhausted");
        std::vector<Vertex> v(reservoir.begin() + static_cast<std::ptrdiff_t>(next),
                              reservoir.begin() + static_cast<std::ptrdiff_t>(next + k));
        next += k;
        return v;
    };

    const std::size_t m = vr.count();
    const std::size_t budget = 2 * (m * (m - 1) * (m - 2) / 6) + 1;
    bool stuck = false;
    for (std::size_t iter = 0; iter < budget; ++iter) {
        ResidualDigraph d = residual(t);
        SeaStep step;
        step.arcs_before = d.arc_count();
        step.phi_before = phi_of(d);
        if (step.phi_before == 0)
            break;
        const std::uint64_t seed = derive_seed(opts.seed, iter);
        ResidualDigraph expect = d;
        std::vector<Arc> loose = loose_arcs(d);

        // I: an arc whose reverse is present
        std::optional<Arc> opp;
        for (Arc a : loose)
            if (d.contains(a.reversed())) {
                opp = a;
                break;
            }
        // II: a repeated arc
        std::optional<Arc> multi;
        for (Arc a : loose)
            if (d.multiplicity(a) >= 2) {
                multi = a;
                break;
            }
        if (opp) {
            step.rule = 1;
            step.vertices = {opp->from, opp->to};
            cancel_or_throw(t, *opp);
            expect.remove(*opp);
            expect.remove(opp->reversed());
        } else if (multi) {
            const Vertex a = multi->from, b = multi->to;
            auto f = pop(4);
            const Vertex x = f[0], y = f[1], z = f[2], w = f[3];
            step.rule = 2;
            step.vertices = {a, b, x, y, z, w};
            Gadget g1 = detail::s3(ws, b, x, a, derive_seed(seed, 1));
            Gadget g2 = detail::p6(ws, {a, x, b, y, z, w}, derive_seed(seed, 2));
            add_gadget(t, out.cycles, g1);
            add_gadget(t, out.cycles, g2);
            for (Arc c : {Arc{a, b}, Arc{a, b}, Arc{b, x}, Arc{x, a}})
                cancel_or_throw(t, c);
            expect.remove({a, b});
            expect.remove({a, b});
            expect.add({b, a});
            expect.add({y, z});
            expect.add({z, w});
            expect.add({w, y});
        } else {
            // III: a loose directed path a -> b -> c on three vertices
            std::optional<std::array<Vertex, 3>> path;
            for (Arc e : loose) {
                for (Arc f : loose)
                    if (f.from == e.to && f.to != e.from) {
                        path = std::array<Vertex, 3>{e.from, e.to, f.to};
                        break;
                    }
                if (path)
                    break;
            }
            // IV: three distinct out-neighbours
            std::optional<std::array<Vertex, 4>> star;
            if (!path) {
                for (Vertex a = 0; a < host.n() && !star; ++a) {
                    std::vector<Vertex> heads;
                    for (Arc e : loose)
                        if (e.from == a)
                            heads.push_back(e.to);
                    if (heads.size() >= 3)
                        star = std::array<Vertex, 4>{a, heads[0], heads[1], heads[2]};
                }
            }
            if (path) {
                auto [a, b, c] = *path;
                auto f = pop(3);
                step.rule = 3;
                step.vertices = {a, b, c, f[0], f[1], f[2]};
                Gadget g = detail::p6(ws, {c, b, a, f[0], f[1], f[2]}, derive_seed(seed, 3));
                add_gadget(t, out.cycles, g);
                cancel_or_throw(t, {a, b});
                cancel_or_throw(t, {b, c});
                expect.remove({a, b});
                expect.remove({b, c});
                expect.add({a, c});
                expect.add({f[0], f[1]});
                expect.add({f[1], f[2]});
                expect.add({f[2], f[0]});
            } else if (star) {
                auto [a, b, c, dd] = *star;
                auto f = pop(3);
                step.rule = 4;
                step.vertices = {a, b, c, dd, f[0], f[1], f[2]};
                Gadget g1 = detail::s3(ws, c, dd, a, derive_seed(seed, 4));
                Gadget g2 = detail::p6(ws, {a, c, b, f[0], f[1], f[2]}, derive_seed(seed, 5));
                add_gadget(t, out.cycles, g1);
                add_gadget(t, out.cycles, g2);
                for (Arc e : {Arc{a, b}, Arc{a, c}, Arc{a, c}, Arc{a, dd}})
                    cancel_or_throw(t, e);
                expect.remove({a, b});
                expect.remove({a, c});
                expect.remove({a, dd});
                expect.add({c, b});
                expect.add({c, dd});
                expect.add({f[0], f[1]});
                expect.add({f[1], f[2]});
                expect.add({f[2], f[0]});
            } else {
                step.rule = 5;
                step.arcs_after = step.arcs_before;
                step.phi_after = step.phi_before;
                out.trace.push_back(step);
                stuck = true;
                break;
            }
        }
        ResidualDigraph after = residual(t);
        if (!(after == expect))
            fail(ErrorCode::ConstructionFailed, "residual after step " + std::to_string(iter) +
                                                    " differs from the predicted arcs");
        step.arcs_after = after.arc_count();
        step.phi_after = phi_of(after);
        if (step.phi_after >= step.phi_before)
            fail(ErrorCode::ConstructionFailed, "potential did not decrease at step " + std::to_string(iter));
        out.trace.push_back(std::move(step));
    }
    if (!is_sea(residual(t))) {
        if (stuck)
            fail(ErrorCode::PreconditionFailed, "residual arcs outside the sea admit no reduction; r is not divisible");
        fail(ErrorCode::IterationBudgetExceeded, "sea reduction did not finish within the iteration budget");
    }
    out.added = ThreeGraph(host.n());
    for (const auto& e : ws.log)
        out.added.add(e);
    out.ttd = std::move(t);
    out.reservoir_left.assign(reservoir.begin() + static_cast<std::ptrdiff_t>(next), reservoir.end());
    return out;
}

TourResult eliminate_triangles(const ThreeGraph& host, const ThreeGraph& r, SeaResult state, std::size_t ell,
                               const SeaOptions& opts)
{
    if (ell < 7)
        fail(ErrorCode::BadParams, "gadgets need cycle length at least 7");
    ThreeGraph used = used_graph(host, r, opts.avoid);
    if (state.added.n() == host.n())
        used |= state.added;
    ResidualDigraph d = residual(state.ttd);
    if (!is_sea(d))
        fail(ErrorCode::PreconditionFailed, "residual is not a sea of triangles");
    TriangleLake lake = sea_of_triangles(d);
    if (lake.triangles.size() % 2 != 0)
        fail(ErrorCode::ConstructionFailed, "odd number of residual triangles");
    Workspace ws(host, std::move(used), ell, gadget_options(opts, opts.forbidden));
    TourResult out;
    out.cycles = std::move(state.cycles);
    TourTrailDecomposition t = std::move(state.ttd);
    for (std::size_t i = 0; i + 1 < lake.triangles.size(); i += 2) {
        auto [a1, b1, c1] = lake.triangles[i];
        auto [a2, b2, c2] = lake.triangles[i + 1];
        Gadget g = detail::p6(ws, {c1, b1, a1, c2, b2, a2}, derive_seed(opts.seed, 1000 + i));
        add_gadget(t, out.cycles, g);
        for (Arc e : {Arc{a1, b1}, Arc{b1, c1}, Arc{c1, a1}, Arc{a2, b2}, Arc{b2, c2}, Arc{c2, a2}})
            cancel_or_throw(t, e);
    }
    if (!t.all_tours())
        fail(ErrorCode::ConstructionFailed, "trails remain after triangle elimination");
    out.added = state.added.n() == host.n() ? std::move(state.added) : ThreeGraph(host.n());
    for (const auto& e : ws.log)
        out.added.add(e);
    out.ttd = std::move(t);
    return out;
}

} // namespace h3
