#include "h3/core.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "h3/error.hpp"

namespace h3 {

Pair Pair::of(Vertex a, Vertex b)
{
    if (a == b)
        fail(ErrorCode::DegenerateTriple, "pair with equal vertices " + std::to_string(a));
    return a < b ? Pair{a, b} : Pair{b, a};
}

Triple Triple::of(Vertex x, Vertex y, Vertex z)
{
    if (x == y || y == z || x == z)
        fail(ErrorCode::DegenerateTriple, "triple {" + std::to_string(x) + "," + std::to_string(y) +
                                              "," + std::to_string(z) + "} repeats a vertex");
    if (x > y)
        std::swap(x, y);
    if (y > z)
        std::swap(y, z);
    if (x > y)
        std::swap(x, y);
    return {x, y, z};
}

ThreeGraph::ThreeGraph(std::size_t n)
    : n_(n), words_(VertexSet::words_for(n)), bits_(n < 2 ? 0 : n * (n - 1) / 2 * words_, 0),
      degree_(n, 0)
{
}

void ThreeGraph::check_vertex(Vertex v) const
{
    if (v >= n_)
        fail(ErrorCode::OutOfRange, "vertex " + std::to_string(v) + " not below n=" + std::to_string(n_));
}

std::size_t ThreeGraph::pair_slot(Vertex x, Vertex y) const
{
    if (x > y)
        std::swap(x, y);
    return static_cast<std::size_t>(y) * (y - 1) / 2 + x;
}

bool ThreeGraph::contains(Vertex x, Vertex y, Vertex z) const
{
    if (x >= n_ || y >= n_ || z >= n_ || x == y || y == z || x == z)
        return false;
    const auto* r = row_ptr(pair_slot(x, y));
    return (r[z / VertexSet::word_bits] >> (z % VertexSet::word_bits)) & 1U;
}

void ThreeGraph::flip(Vertex x, Vertex y, Vertex z, bool on)
{
    auto touch = [&](Vertex p, Vertex q, Vertex r) {
        auto& w = row_ptr(pair_slot(p, q))[r / VertexSet::word_bits];
        auto bit = VertexSet::Word{1} << (r % VertexSet::word_bits);
        w = on ? (w | bit) : (w & ~bit);
    };
    touch(x, y, z);
    touch(x, z, y);
    touch(y, z, x);
    if (on) {
        ++edge_count_;
        ++degree_[x];
        ++degree_[y];
        ++degree_[z];
    } else {
        --edge_count_;
        --degree_[x];
        --degree_[y];
        --degree_[z];
    }
}

bool ThreeGraph::add(Vertex x, Vertex y, Vertex z)
{
    check_vertex(x);
    check_vertex(y);
    check_vertex(z);
    if (x == y || y == z || x == z)
        fail(ErrorCode::DegenerateTriple, "triple repeats a vertex");
    if (contains(x, y, z))
        return false;
    flip(x, y, z, true);
    return true;
}

bool ThreeGraph::remove(Vertex x, Vertex y, Vertex z)
{
    if (!contains(x, y, z))
        return false;
    flip(x, y, z, false);
    return true;
}

std::span<const VertexSet::Word> ThreeGraph::row(Vertex x, Vertex y) const
{
    check_vertex(x);
    check_vertex(y);
    if (x == y)
        fail(ErrorCode::DegenerateTriple, "codegree of a pair needs two distinct vertices");
    return {row_ptr(pair_slot(x, y)), words_};
}

VertexSet ThreeGraph::neighbourhood(Vertex x, Vertex y) const
{
    return VertexSet(n_, row(x, y));
}

std::size_t ThreeGraph::codegree(Vertex x, Vertex y) const
{
    std::size_t c = 0;
    for (auto w : row(x, y))
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t ThreeGraph::codegree(Vertex x, Vertex y, const VertexSet& within) const
{
    auto r = row(x, y);
    auto u = within.words();
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_; ++i)
        c += static_cast<std::size_t>(std::popcount(r[i] & u[i]));
    return c;
}

std::size_t ThreeGraph::degree(Vertex x) const
{
    check_vertex(x);
    return degree_[x];
}

std::size_t ThreeGraph::degree(Vertex x, const VertexSet& within) const
{
    check_vertex(x);
    // each edge xyz with y,z in U is seen from y and from z
    std::size_t twice = 0;
    within.for_each([&](Vertex y) {
        if (y != x)
            twice += codegree(x, y, within);
    });
    return twice / 2;
}

std::vector<Triple> ThreeGraph::edges() const
{
    std::vector<Triple> out;
    out.reserve(edge_count_);
    for_each_edge([&](const Triple& t) { out.push_back(t); });
    return out;
}

VertexSet ThreeGraph::support() const
{
    VertexSet s(n_);
    for (Vertex v = 0; v < n_; ++v)
        if (degree_[v] > 0)
            s.set(v);
    return s;
}

ThreeGraph ThreeGraph::induced(const VertexSet& within) const
{
    return restrict_to(*this, within);
}

ThreeGraph& ThreeGraph::operator|=(const ThreeGraph& o)
{
    if (o.n_ != n_)
        fail(ErrorCode::OutOfRange, "union of graphs with different vertex counts");
    o.for_each_edge([&](const Triple& t) { add(t); });
    return *this;
}

ThreeGraph& ThreeGraph::operator-=(const ThreeGraph& o)
{
    if (o.n_ != n_)
        fail(ErrorCode::OutOfRange, "difference of graphs with different vertex counts");
    o.for_each_edge([&](const Triple& t) { remove(t); });
    return *this;
}

bool ThreeGraph::operator==(const ThreeGraph& o) const
{
    return n_ == o.n_ && edge_count_ == o.edge_count_ && bits_ == o.bits_ && degree_ == o.degree_;
}

Graph2::Graph2(std::size_t n, std::vector<Pair> pairs) : n_(n), edges_(std::move(pairs))
{
    for (auto& p : edges_) {
        if (p.u >= n || p.v >= n)
            fail(ErrorCode::OutOfRange, "pair vertex out of range");
        p = Pair::of(p.u, p.v);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Graph2::contains(Vertex x, Vertex y) const
{
    if (x == y)
        return false;
    return std::binary_search(edges_.begin(), edges_.end(), Pair::of(x, y));
}

std::vector<std::vector<Vertex>> Graph2::adjacency() const
{
    std::vector<std::vector<Vertex>> adj(n_);
    for (const auto& p : edges_) {
        adj[p.u].push_back(p.v);
        adj[p.v].push_back(p.u);
    }
    for (auto& a : adj)
        std::sort(a.begin(), a.end());
    return adj;
}

DivisibilityKind DivisibilityKind::cycle(std::size_t ell)
{
    if (ell < 4)
        fail(ErrorCode::BadParams, "cycle divisibility needs ell >= 4");
    return {Kind::Cycle, ell};
}

std::string DivisibilityViolation::describe() const
{
    std::ostringstream os;
    switch (what) {
    case What::VertexDegree:
        os << "vertex " << *vertex << " has degree " << value << " not divisible by " << modulus;
        break;
    case What::EdgeCount:
        os << "edge count " << value << " not divisible by " << modulus;
        break;
    case What::Codegree:
        os << "pair " << pair->u << "," << pair->v << " has codegree " << value
           << " not divisible by " << modulus;
        break;
    }
    return os.str();
}

ThreeGraph build_graph(std::size_t n, std::span<const Triple> triples)
{
    ThreeGraph g(n);
    for (const auto& t : triples)
        g.add(t.a, t.b, t.c);
    return g;
}

ThreeGraph build_graph_unordered(std::size_t n, std::span<const OrderedTriple> triples)
{
    ThreeGraph g(n);
    for (const auto& t : triples)
        g.add(t[0], t[1], t[2]);
    return g;
}

ThreeGraph complete_graph(std::size_t n)
{
    ThreeGraph g(n);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c)
                g.add(a, b, c);
    return g;
}

std::size_t codegree(const ThreeGraph& g, Vertex x, Vertex y, const std::optional<VertexSet>& within)
{
    return within ? g.codegree(x, y, *within) : g.codegree(x, y);
}

std::size_t degree(const ThreeGraph& g, Vertex x, const std::optional<VertexSet>& within)
{
    return within ? g.degree(x, *within) : g.degree(x);
}

std::size_t min_codegree(const ThreeGraph& g)
{
    if (g.n() < 2)
        return 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (Vertex x = 0; x < g.n(); ++x)
        for (Vertex y = x + 1; y < g.n(); ++y)
            best = std::min(best, g.codegree(x, y));
    return best;
}

std::size_t max_codegree(const ThreeGraph& g)
{
    std::size_t best = 0;
    for (Vertex x = 0; x < g.n(); ++x)
        for (Vertex y = x + 1; y < g.n(); ++y)
            best = std::max(best, g.codegree(x, y));
    return best;
}

Graph2 shadow(const ThreeGraph& g)
{
    std::vector<Pair> pairs;
    for (Vertex x = 0; x < g.n(); ++x)
        for (Vertex y = x + 1; y < g.n(); ++y)
            if (g.codegree(x, y) > 0)
                pairs.push_back({x, y});
    return Graph2(g.n(), std::move(pairs));
}

Graph2 link(const ThreeGraph& g, Vertex x, const std::optional<VertexSet>& within)
{
    std::vector<Pair> pairs;
    for (Vertex y = 0; y < g.n(); ++y) {
        if (y == x || (within && !within->test(y)))
            continue;
        VertexSet nb = g.neighbourhood(x, y);
        if (within)
            nb &= *within;
        nb.for_each([&](Vertex z) {
            if (z > y)
                pairs.push_back({y, z});
        });
    }
    return Graph2(g.n(), std::move(pairs));
}

VertexSet joint_neighbourhood(const ThreeGraph& g, Pair e1, Pair e2, Pair e3, const VertexSet& within)
{
    VertexSet s = within;
    s.and_words(g.row(e1.u, e1.v));
    s.and_words(g.row(e2.u, e2.v));
    s.and_words(g.row(e3.u, e3.v));
    return s;
}

DivisibilityResult check_divisibility(const ThreeGraph& g, DivisibilityKind kind)
{
    using What = DivisibilityViolation::What;
    auto bad = [](DivisibilityViolation v) { return DivisibilityResult{false, v}; };
    if (kind.kind == DivisibilityKind::Kind::K43 && g.edge_count() % 4 != 0)
        return bad({What::EdgeCount, std::nullopt, std::nullopt, g.edge_count(), 4});
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) % 3 != 0)
            return bad({What::VertexDegree, v, std::nullopt, g.degree(v), 3});
    if (kind.kind == DivisibilityKind::Kind::Cycle && g.edge_count() % kind.ell != 0)
        return bad({What::EdgeCount, std::nullopt, std::nullopt, g.edge_count(), kind.ell});
    if (kind.kind == DivisibilityKind::Kind::K43) {
        for (Vertex x = 0; x < g.n(); ++x)
            for (Vertex y = x + 1; y < g.n(); ++y)
                if (g.codegree(x, y) % 2 != 0)
                    return bad({What::Codegree, std::nullopt, Pair{x, y}, g.codegree(x, y), 2});
    }
    return {};
}

ThreeGraph restrict_to(const ThreeGraph& g, const VertexSet& within)
{
    ThreeGraph out(g.n());
    g.for_each_edge([&](const Triple& t) {
        if (within.test(t.a) && within.test(t.b) && within.test(t.c))
            out.add(t);
    });
    return out;
}

ThreeGraph edge_union(const ThreeGraph& a, const ThreeGraph& b)
{
    ThreeGraph out = a;
    out |= b;
    return out;
}

ThreeGraph edge_difference(const ThreeGraph& a, const ThreeGraph& b)
{
    ThreeGraph out = a;
    out -= b;
    return out;
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno)
{
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        return true;
    }
    return false;
}

} // namespace

ThreeGraph read_3g(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    if (!next_content_line(in, line, lineno))
        fail(ErrorCode::ParseError, "missing header line");
    std::istringstream header(line);
    std::string magic;
    long long n = -1;
    long long m = -1;
    if (!(header >> magic >> n >> m) || magic != "3graph" || n < 0 || m < 0)
        fail(ErrorCode::ParseError, "bad header on line " + std::to_string(lineno));
    ThreeGraph g(static_cast<std::size_t>(n));
    long long seen = 0;
    while (next_content_line(in, line, lineno)) {
        std::istringstream row(line);
        long long a = -1;
        long long b = -1;
        long long c = -1;
        std::string extra;
        if (!(row >> a >> b >> c) || (row >> extra))
            fail(ErrorCode::ParseError, "bad edge on line " + std::to_string(lineno));
        if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n)
            fail(ErrorCode::OutOfRange, "vertex out of range on line " + std::to_string(lineno));
        if (!(a < b && b < c))
            fail(ErrorCode::ParseError, "edge not in increasing order on line " + std::to_string(lineno));
        if (!g.add(static_cast<Vertex>(a), static_cast<Vertex>(b), static_cast<Vertex>(c)))
            fail(ErrorCode::ParseError, "duplicate edge on line " + std::to_string(lineno));
        ++seen;
    }
    if (seen != m)
        fail(ErrorCode::ParseError, "header announces " + std::to_string(m) + " edges, found " +
                                        std::to_string(seen));
    return g;
}

void write_3g(std::ostream& out, const ThreeGraph& g)
{
    out << "3graph " << g.n() << ' ' << g.edge_count() << '\n';
    g.for_each_edge([&](const Triple& t) { out << t.a << ' ' << t.b << ' ' << t.c << '\n'; });
}

ThreeGraph load_3g(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::ParseError, "cannot open " + path);
    return read_3g(in);
}

void save_3g(const std::string& path, const ThreeGraph& g)
{
    std::ofstream out(path);
    if (!out)
        fail(ErrorCode::ParseError, "cannot write " + path);
    write_3g(out, g);
}

} // namespace h3
