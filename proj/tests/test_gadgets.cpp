#include <doctest.h>

#include <set>

#include "h3/core.hpp"
#include "h3/gadgets.hpp"
#include "h3/tour_trail.hpp"
#include "test_util.hpp"

using namespace h3;
using h3::test::code_of;

namespace {

ThreeGraph tight_cycle(std::size_t n, const std::vector<Vertex>& v)
{
    ThreeGraph g(n);
    for (std::size_t i = 0; i < v.size(); ++i)
        g.add(v[i], v[(i + 1) % v.size()], v[(i + 2) % v.size()]);
    return g;
}

std::vector<Vertex> range(Vertex from, Vertex to)
{
    std::vector<Vertex> v;
    for (Vertex x = from; x < to; ++x)
        v.push_back(x);
    return v;
}

void check_cycles_in(const std::vector<WalkSeq>& cycles, const ThreeGraph& host, std::size_t ell)
{
    for (const auto& c : cycles) {
        CHECK(c.size() == ell);
        CHECK_NOTHROW(validate(c.vertices(), WalkKind::Cycle, host));
    }
}

std::set<Vertex> vertices_of(const std::vector<Triple>& edges)
{
    std::set<Vertex> s;
    for (const auto& e : edges)
        s.insert({e.a, e.b, e.c});
    return s;
}

bool disjoint(const std::vector<Triple>& a, const ThreeGraph& b)
{
    for (const auto& e : a)
        if (b.contains(e))
            return false;
    return true;
}

} // namespace

TEST_CASE("arc multisets of the basic gadgets")
{
    ResidualDigraph s = s3_arcs(10, 1, 2, 3);
    CHECK(s.arc_count() == 4);
    CHECK(s.multiplicity({1, 3}) == 2);
    CHECK(s.multiplicity({1, 2}) == 1);
    CHECK(s.multiplicity({2, 3}) == 1);
    // S3(1,2,3) + S3(3,4,1) minus the (1,3)/(3,1) pairs is the oriented 4-cycle
    ResidualDigraph t = s3_arcs(10, 3, 4, 1);
    ResidualDigraph sum = s;
    for (Arc a : t.arcs())
        sum.add(a);
    for (int i = 0; i < 2; ++i) {
        sum.remove({1, 3});
        sum.remove({3, 1});
    }
    CHECK(sum == c4_arcs(10, {1, 2, 3, 4}));
    ResidualDigraph p = p6_arcs(10, {0, 1, 2, 3, 4, 5});
    CHECK(p.arc_count() == 6);
    CHECK(sea_of_triangles(p).triangles.size() == 2);
}

TEST_CASE("S3 gadget")
{
    const std::size_t n = 40;
    const std::size_t ell = 7;
    ThreeGraph host = complete_graph(n);
    ThreeGraph none(n);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Gadget g = build_S3(host, none, 2, 5, 9, ell, {.seed = seed});
        CHECK(g.residual_delta() == s3_arcs(n, 2, 5, 9));
        CHECK(g.edges.size() <= 2 * ell);
        CHECK(g.cycles.size() == 2);
        CHECK(certifies(g.edges, g.cycles, ell));
        check_cycles_in(g.cycles, host, ell);
        CHECK(g.ttd.trails.size() == 2);
        require_decomposes(g.ttd, build_graph(n, g.edges));
        // the first trail is v3 v2 x v1 v3
        const auto& p1 = g.ttd.trails[0].vertices();
        REQUIRE(p1.size() == 5);
        CHECK(p1[0] == 9);
        CHECK(p1[1] == 5);
        CHECK(p1[3] == 2);
        CHECK(p1[4] == 9);
    }
    CHECK(code_of([&] { build_S3(host, host, 2, 5, 9, ell); }) == ErrorCode::GadgetConstructionFailed);
    CHECK(code_of([&] { build_S3(host, none, 2, 5, 9, 6); }) == ErrorCode::BadParams);
    CHECK(code_of([&] { build_S3(host, none, 2, 5, 5, ell); }) == ErrorCode::BadParams);
}

TEST_CASE("S3 respects avoid and forbidden vertices")
{
    const std::size_t n = 40;
    ThreeGraph host = complete_graph(n);
    ThreeGraph avoid = restrict_to(host, VertexSet(n, {0, 1, 2, 3, 4, 5, 6, 7}));
    VertexSet forbidden(n);
    for (Vertex v = 20; v < 40; ++v)
        forbidden.set(v);
    Gadget g = build_S3(host, avoid, 0, 1, 2, 7, {.seed = 11, .forbidden = &forbidden});
    CHECK(disjoint(g.edges, avoid));
    for (Vertex v : vertices_of(g.edges))
        CHECK(v < 20);
}

TEST_CASE("C4 gadget")
{
    const std::size_t n = 40;
    const std::size_t ell = 7;
    ThreeGraph host = complete_graph(n);
    Gadget g = build_C4(host, ThreeGraph(n), {3, 7, 1, 12}, ell, {.seed = 5});
    CHECK(g.residual_delta() == c4_arcs(n, {3, 7, 1, 12}));
    CHECK(g.edges.size() <= 8 * ell);
    CHECK(g.cycles.size() == 4);
    // certifies() requires the cycles to partition the edges, so the two
    // S3 parts are edge-disjoint
    CHECK(certifies(g.edges, g.cycles, ell));
    check_cycles_in(g.cycles, host, ell);
    require_decomposes(g.ttd, build_graph(n, g.edges));
}

TEST_CASE("P6 gadget")
{
    const std::size_t n = 60;
    const std::size_t ell = 7;
    ThreeGraph host = complete_graph(n);
    std::array<Vertex, 6> v{0, 1, 2, 3, 4, 5};
    Gadget g = build_P6(host, ThreeGraph(n), v, ell, {.seed = 9});
    CHECK(g.residual_delta() == p6_arcs(n, v));
    auto lake = sea_of_triangles(g.residual_delta());
    REQUIRE(lake.triangles.size() == 2);
    CHECK(lake.triangles[0] == OrientedTriangle{0, 1, 2});
    CHECK(lake.triangles[1] == OrientedTriangle{3, 4, 5});
    CHECK(g.edges.size() <= 12 * ell);
    CHECK(certifies(g.edges, g.cycles, ell));
    check_cycles_in(g.cycles, host, ell);
    std::set<Vertex> vs = vertices_of(g.edges);
    std::size_t fresh = 0;
    for (Vertex x : vs)
        fresh += x >= 6;
    CHECK(fresh <= 12 * ell - 18);

    // larger cycle length
    Gadget h = build_P6(host, ThreeGraph(n), {10, 11, 12, 13, 14, 15}, 9, {.seed = 1});
    CHECK(h.edges.size() <= 12 * 9);
    CHECK(certifies(h.edges, h.cycles, 9));
}

TEST_CASE("B(k,l)")
{
    const std::size_t n = 40;
    ThreeGraph host = complete_graph(n);
    Gadget one = build_B(host, ThreeGraph(n), 1, 7, {.seed = 2});
    REQUIRE(one.cycles.size() == 1);
    CHECK(one.edges.size() == 7);
    CHECK(one.cycles[0].size() == 7);

    Gadget b = build_B(host, ThreeGraph(n), 2, 7, {.seed = 3});
    CHECK(b.edges.size() == 14);
    CHECK(vertices_of(b.edges).size() == 12);
    REQUIRE(b.ttd.tours.size() == 1);
    const WalkSeq& tour = b.ttd.tours[0];
    CHECK_NOTHROW(validate(tour.vertices(), WalkKind::Tour, host));
    CHECK(tour.edges().size() == 14);
    ThreeGraph bg = build_graph(n, b.edges);
    CHECK(bg.codegree(tour[0], tour[1]) == 4);
    CHECK(certifies(b.edges, b.cycles, 7));
}

TEST_CASE("merging two tours")
{
    const std::size_t n = 60;
    const std::size_t ell = 7;
    ThreeGraph host = complete_graph(n);
    WalkSeq t1 = validate(range(0, 7), WalkKind::Tour, host);
    WalkSeq t2 = validate(range(7, 14), WalkKind::Tour, host);
    MergedTours m = merge_tours(host, ThreeGraph(n), t1, t2, ell, {.seed = 4});
    CHECK(m.merged.edges().size() == 21);
    CHECK_NOTHROW(validate(m.merged.vertices(), WalkKind::Tour, host));
    REQUIRE(m.connector.cycles.size() == 1);
    CHECK_NOTHROW(validate(m.connector.cycles[0].vertices(), WalkKind::Cycle, host));
    CHECK(m.connector.cycles[0].size() == ell);
    ThreeGraph both = edge_union(t1.edge_graph(n), t2.edge_graph(n));
    CHECK(disjoint(m.connector.edges, both));
    ThreeGraph all = edge_union(both, build_graph(n, m.connector.edges));
    CHECK(m.merged.edge_graph(n) == all);

    WalkSeq empty;
    CHECK(code_of([&] { merge_tours(host, ThreeGraph(n), t1, empty, ell); }) == ErrorCode::PreconditionFailed);
    CHECK(code_of([&] { merge_tours(host, ThreeGraph(n), t1, t1, ell); }) == ErrorCode::EdgeOverlap);
}

TEST_CASE("transformer between a tour and a cycle")
{
    const std::size_t n = 80;
    const std::size_t ell = 7;
    ThreeGraph host = complete_graph(n);
    WalkSeq r = validate(range(0, 9), WalkKind::Tour, host);
    WalkSeq c = validate(range(9, 18), WalkKind::Cycle, host);
    Transformer l = build_transformer(host, ThreeGraph(n), r, c, ell, {.seed = 6});
    CHECK(l.edges.size() <= 9 * ell);
    ThreeGraph lg = build_graph(n, l.edges);
    CHECK(disjoint(r.edges(), lg));
    CHECK(disjoint(c.edges(), lg));
    ThreeGraph rl = edge_union(r.edge_graph(n), lg);
    ThreeGraph cl = edge_union(c.edge_graph(n), lg);
    CHECK(certifies(rl, l.r_side, ell));
    CHECK(certifies(cl, l.c_side, ell));
    check_cycles_in(l.r_side, host, ell);
    check_cycles_in(l.c_side, host, ell);
    // internal vertices avoid both vertex sets
    for (const auto& e : l.edges)
        for (Vertex v : {e.a, e.b, e.c})
            if (v >= 18)
                CHECK(v < n);

    WalkSeq c8 = validate(range(9, 17), WalkKind::Cycle, host);
    CHECK(code_of([&] { build_transformer(host, ThreeGraph(n), r, c8, ell); }) == ErrorCode::PreconditionFailed);
}

TEST_CASE("absorber for a single tour")
{
    const std::size_t n = 120;
    const std::size_t ell = 7;
    ThreeGraph host = complete_graph(n);
    Gadget b = build_B(host, ThreeGraph(n), 2, ell, {.seed = 8});
    const WalkSeq& r = b.ttd.tours[0];
    REQUIRE(r.edges().size() == 14);
    ThreeGraph rg = r.edge_graph(n);
    Absorber a = build_absorber_from_tour(host, ThreeGraph(n), r, ell, {.seed = 9});
    ThreeGraph ag = build_graph(n, a.edges);
    CHECK(disjoint(r.edges(), ag));
    CHECK(certifies(ag, a.cycles, ell));
    CHECK(certifies(edge_union(ag, rg), a.cycles_with_r, ell));
    check_cycles_in(a.cycles, host, ell);
    check_cycles_in(a.cycles_with_r, host, ell);
    CHECK(a.cycle_edges == 14);
    CHECK(a.b_edges == 14);
    const std::size_t m = vertices_of(r.edges()).size();
    const std::size_t cap = 2 * (m * (m - 1) * (m - 2) / 6) * ell * ell;
    for (std::size_t part : {a.l1_edges, a.l2_edges, a.cycle_edges, a.b_edges})
        CHECK(part <= cap);
    CHECK(a.l1_edges + a.l2_edges + a.cycle_edges + a.b_edges == a.edges.size());

    WalkSeq c8 = validate(range(0, 8), WalkKind::Tour, host);
    CHECK(code_of([&] { build_absorber_from_tour(host, ThreeGraph(n), c8, ell); }) == ErrorCode::PreconditionFailed);
}

TEST_CASE("full absorber")
{
    const std::size_t n = 300;
    const std::size_t ell = 7;
    ThreeGraph host = complete_graph(n);
    ThreeGraph r = edge_union(tight_cycle(n, range(0, 7)), tight_cycle(n, range(7, 14)));
    Absorber a = build_absorber(host, r, ell, {.seed = 12});
    ThreeGraph ag = build_graph(n, a.edges);
    CHECK(disjoint(r.edges(), ag));
    CHECK(certifies(ag, a.cycles, ell));
    CHECK(certifies(edge_union(ag, r), a.cycles_with_r, ell));
    check_cycles_in(a.cycles, host, ell);
    check_cycles_in(a.cycles_with_r, host, ell);
    CHECK(a.merged_tour_edges == 21);

    Absorber none = build_absorber(host, ThreeGraph(n), ell);
    CHECK(none.edges.empty());
    CHECK(none.cycles.empty());

    ThreeGraph bad = tight_cycle(n, range(0, 8));
    CHECK(code_of([&] { build_absorber(host, bad, ell); }) == ErrorCode::PreconditionFailed);
}

TEST_CASE("initial tour decomposition")
{
    const std::size_t n = 12;
    ThreeGraph k5 = restrict_to(complete_graph(n), VertexSet(n, {0, 1, 2, 3, 4}));
    TourTrailDecomposition t = initial_ttd(k5);
    CHECK(t.all_tours());
    CHECK(t.tours.size() == 2);
    require_decomposes(t, k5);

    ThreeGraph one(n);
    one.add(0, 1, 2);
    TourTrailDecomposition u = initial_ttd(one);
    CHECK(u.tours.empty());
    CHECK(u.trails.size() == 1);

    // K4 plus a pendant edge: the pendant edge lies on no cycle
    ThreeGraph mixed = restrict_to(complete_graph(n), VertexSet(n, {0, 1, 2, 3}));
    mixed.add(0, 5, 6);
    TourTrailDecomposition v = initial_ttd(mixed);
    CHECK(v.tours.size() == 1);
    CHECK(v.trails.size() == 1);
    require_decomposes(v, mixed);
}

TEST_CASE("full absorber for complete inputs")
{
    const std::size_t n = 300;
    ThreeGraph host = complete_graph(n);
    ThreeGraph k5 = restrict_to(host, VertexSet(n, {0, 1, 2, 3, 4}));
    Absorber a = build_absorber(host, k5, 10, {.seed = 3});
    CHECK(a.tour_gadget_edges == 0);
    CHECK(a.merged_tour_edges == 20);
    ThreeGraph ag = build_graph(n, a.edges);
    CHECK(disjoint(k5.edges(), ag));
    CHECK(certifies(ag, a.cycles, 10));
    CHECK(certifies(edge_union(ag, k5), a.cycles_with_r, 10));

    ThreeGraph k8 = restrict_to(host, VertexSet(n, {0, 1, 2, 3, 4, 5, 6, 7}));
    Absorber b = build_absorber(host, k8, 7, {.seed = 4});
    ThreeGraph bg = build_graph(n, b.edges);
    CHECK(disjoint(k8.edges(), bg));
    CHECK(certifies(bg, b.cycles, 7));
    CHECK(certifies(edge_union(bg, k8), b.cycles_with_r, 7));
}
