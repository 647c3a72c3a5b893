#include <doctest.h>

#include <sstream>

#include "h3/core.hpp"
#include "h3/error.hpp"
#include "h3/rng.hpp"

using namespace h3;

namespace {

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

} // namespace

TEST_CASE("build_graph canonicalises and deduplicates")
{
    std::vector<Triple> k4{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    CHECK(build_graph(4, k4).edge_count() == 4);

    std::vector<OrderedTriple> c5{{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 0}, {4, 0, 1}};
    ThreeGraph g = build_graph_unordered(5, c5);
    CHECK(g.edge_count() == 5);
    std::vector<Triple> expect{{0, 1, 2}, {0, 1, 4}, {0, 3, 4}, {1, 2, 3}, {2, 3, 4}};
    CHECK(g.edges() == expect);

    std::vector<OrderedTriple> dup{{2, 1, 0}, {0, 1, 2}, {1, 0, 2}};
    CHECK(build_graph_unordered(3, dup).edge_count() == 1);

    std::vector<Triple> bad{{0, 1, 7}};
    CHECK_THROWS_AS(build_graph(5, bad), Error);
    std::vector<OrderedTriple> degenerate{{1, 1, 2}};
    try {
        build_graph_unordered(5, degenerate);
        FAIL("expected DegenerateTriple");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateTriple);
    }
}

TEST_CASE("codegree, degree and extremes")
{
    ThreeGraph k5 = complete_graph(5);
    CHECK(codegree(k5, 0, 1) == 3);
    CHECK(degree(k5, 2) == 6);
    CHECK(min_codegree(k5) == 3);
    CHECK(max_codegree(k5) == 3);
    CHECK(shadow(k5).edge_count() == 10);

    ThreeGraph empty(6);
    CHECK(codegree(empty, 2, 5) == 0);
    CHECK(degree(empty, 3) == 0);

    std::vector<Triple> one{{0, 1, 2}};
    ThreeGraph single = build_graph(5, one);
    CHECK(min_codegree(single) == 0);
    Graph2 sh = shadow(single);
    CHECK(sh.edges() == std::vector<Pair>{{0, 1}, {0, 2}, {1, 2}});

    CHECK_THROWS_AS(codegree(k5, 1, 1), Error);
    CHECK_THROWS_AS(codegree(k5, 1, 9), Error);

    VertexSet u(5, {0, 1, 2, 3});
    CHECK(codegree(k5, 0, 1, u) == 2);
    CHECK(degree(k5, 4, u) == 6);
    CHECK(degree(k5, 0, u) == 3);
}

TEST_CASE("joint neighbourhood")
{
    ThreeGraph k6 = complete_graph(6);
    VertexSet all(6, true);
    VertexSet j = joint_neighbourhood(k6, {0, 1}, {2, 3}, {0, 2}, all);
    // brute force: vertices z outside every pair
    VertexSet oracle(6);
    for (Vertex z = 0; z < 6; ++z)
        if (k6.contains(0, 1, z) && k6.contains(2, 3, z) && k6.contains(0, 2, z))
            oracle.set(z);
    CHECK(j == oracle);
    CHECK(j.members() == std::vector<Vertex>{4, 5});
    CHECK(joint_neighbourhood(k6, {0, 1}, {0, 1}, {0, 1}, all) == k6.neighbourhood(0, 1));
    CHECK(joint_neighbourhood(k6, {0, 1}, {2, 3}, {0, 2}, VertexSet(6)).empty());
}

TEST_CASE("divisibility predicates")
{
    ThreeGraph k5 = complete_graph(5);
    CHECK(check_divisibility(k5, DivisibilityKind::cycle(5)).ok);

    std::vector<OrderedTriple> c8;
    for (Vertex i = 0; i < 8; ++i)
        c8.push_back({i, (i + 1) % 8, (i + 2) % 8});
    CHECK(check_divisibility(build_graph_unordered(8, c8), DivisibilityKind::cycle(4)).ok);

    std::vector<Triple> one{{0, 1, 2}};
    auto r = check_divisibility(build_graph(3, one), DivisibilityKind::vertex3());
    CHECK_FALSE(r.ok);
    REQUIRE(r.violation);
    CHECK(r.violation->vertex == Vertex{0});
    CHECK(r.violation->value == 1);

    CHECK_FALSE(check_divisibility(complete_graph(5), DivisibilityKind::k43()).ok);
    CHECK_THROWS_AS(DivisibilityKind::cycle(3), Error);
}

TEST_CASE("K4 divisibility oracle by hand")
{
    // K_4^3: degrees 3, codegrees 2, |E| = 4 -> K43-divisible
    CHECK(check_divisibility(complete_graph(4), DivisibilityKind::k43()).ok);
}

TEST_CASE("index round trip and handshake identities on random graphs")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ThreeGraph g = random_graph(13 + seed % 70, 0.3, seed);
        ThreeGraph rebuilt = build_graph(g.n(), g.edges());
        CHECK(rebuilt == g);
        std::size_t deg_sum = 0;
        std::size_t codeg_sum = 0;
        for (Vertex x = 0; x < g.n(); ++x) {
            deg_sum += g.degree(x);
            for (Vertex y = x + 1; y < g.n(); ++y)
                codeg_sum += g.codegree(x, y);
        }
        CHECK(deg_sum == 3 * g.edge_count());
        CHECK(codeg_sum == 3 * g.edge_count());
        for (std::size_t ell : {4, 5, 7})
            if (check_divisibility(g, DivisibilityKind::cycle(ell)).ok)
                CHECK(check_divisibility(g, DivisibilityKind::vertex3()).ok);
    }
}

TEST_CASE("removal keeps indices consistent")
{
    ThreeGraph g = random_graph(20, 0.5, 7);
    auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); i += 2)
        g.remove(edges[i]);
    CHECK(build_graph(g.n(), g.edges()) == g);
}

TEST_CASE(".3g round trip is byte exact")
{
    ThreeGraph g = random_graph(9, 0.4, 3);
    std::ostringstream out;
    write_3g(out, g);
    std::istringstream in("# comment\n" + out.str());
    ThreeGraph back = read_3g(in);
    CHECK(back == g);
    std::ostringstream again;
    write_3g(again, back);
    CHECK(again.str() == out.str());

    std::istringstream wrong_count("3graph 4 2\n0 1 2\n");
    CHECK_THROWS_AS(read_3g(wrong_count), Error);
    std::istringstream unsorted("3graph 4 1\n2 1 0\n");
    CHECK_THROWS_AS(read_3g(unsorted), Error);
}

TEST_CASE("link graph")
{
    ThreeGraph k5 = complete_graph(5);
    Graph2 l = link(k5, 0);
    CHECK(l.edge_count() == 6);
    CHECK_FALSE(l.contains(0, 1));
    VertexSet u(5, {1, 2, 3});
    CHECK(link(k5, 0, u).edge_count() == 3);
}
