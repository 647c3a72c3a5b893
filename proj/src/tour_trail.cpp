#include "h3/tour_trail.hpp"

#include <algorithm>
#include <numeric>

#include "h3/error.hpp"

namespace h3 {

std::size_t TourTrailDecomposition::edge_count() const
{
    std::size_t c = 0;
    for (const auto& w : tours)
        c += w.edges().size();
    for (const auto& w : trails)
        c += w.edges().size();
    return c;
}

ThreeGraph TourTrailDecomposition::edge_graph() const
{
    ThreeGraph g(n);
    for (const auto* list : {&tours, &trails})
        for (const auto& w : *list)
            for (const auto& e : w.edges())
                g.add(e);
    return g;
}

void TourTrailDecomposition::absorb(const TourTrailDecomposition& o)
{
    if (o.n != n)
        fail(ErrorCode::BadParams, "decompositions live on different vertex counts");
    tours.insert(tours.end(), o.tours.begin(), o.tours.end());
    trails.insert(trails.end(), o.trails.begin(), o.trails.end());
}

void ResidualDigraph::add(Arc a, std::size_t times)
{
    if (times == 0)
        return;
    mult_[a] += times;
    total_ += times;
}

bool ResidualDigraph::remove(Arc a)
{
    auto it = mult_.find(a);
    if (it == mult_.end())
        return false;
    if (--it->second == 0)
        mult_.erase(it);
    --total_;
    return true;
}

std::size_t ResidualDigraph::multiplicity(Arc a) const
{
    auto it = mult_.find(a);
    return it == mult_.end() ? 0 : it->second;
}

std::size_t ResidualDigraph::out_degree(Vertex v) const
{
    std::size_t d = 0;
    for (auto it = mult_.lower_bound(Arc{v, 0}); it != mult_.end() && it->first.from == v; ++it)
        d += it->second;
    return d;
}

std::size_t ResidualDigraph::in_degree(Vertex v) const
{
    std::size_t d = 0;
    for (const auto& [a, m] : mult_)
        if (a.to == v)
            d += m;
    return d;
}

std::vector<Arc> ResidualDigraph::arcs() const
{
    std::vector<Arc> out;
    out.reserve(total_);
    for (const auto& [a, m] : mult_)
        out.insert(out.end(), m, a);
    return out;
}

TourTrailDecomposition trivial_ttd(const ThreeGraph& r)
{
    TourTrailDecomposition t;
    t.n = r.n();
    r.for_each_edge([&](const Triple& e) { t.trails.push_back(assemble({e.a, e.b, e.c}, WalkKind::Trail)); });
    return t;
}

ResidualDigraph residual(const TourTrailDecomposition& t)
{
    ResidualDigraph d(t.n);
    for (const auto& p : t.trails) {
        auto [a, b] = ends(p);
        d.add(a);
        d.add(b);
    }
    return d;
}

void require_decomposes(const TourTrailDecomposition& t, const ThreeGraph& host)
{
    ThreeGraph seen(host.n());
    for (const auto* list : {&t.tours, &t.trails})
        for (const auto& w : *list)
            for (const auto& e : w.edges()) {
                if (!host.contains(e))
                    fail(ErrorCode::NotADecomposition, "decomposition uses an edge outside the host");
                if (!seen.add(e))
                    fail(ErrorCode::NotADecomposition, "decomposition covers an edge twice");
            }
    if (seen.edge_count() != host.edge_count())
        fail(ErrorCode::NotADecomposition, "decomposition misses " +
                                               std::to_string(host.edge_count() - seen.edge_count()) + " host edges");
}

bool check_mod3(const TourTrailDecomposition& t, const ThreeGraph& host)
{
    require_decomposes(t, host);
    ResidualDigraph d = residual(t);
    std::vector<std::size_t> out(host.n(), 0);
    std::vector<std::size_t> in(host.n(), 0);
    for (const auto& [a, m] : d.multiplicities()) {
        out[a.from] += m;
        in[a.to] += m;
    }
    for (Vertex v = 0; v < host.n(); ++v)
        if (out[v] % 3 != in[v] % 3)
            return false;
    return true;
}

namespace {

bool has_end(const WalkSeq& w, Arc a)
{
    auto [e1, e2] = ends(w);
    return e1 == a || e2 == a;
}

} // namespace

bool cancel_arc(TourTrailDecomposition& t, Arc a)
{
    auto& tr = t.trails;
    std::size_t i = tr.size();
    for (std::size_t k = 0; k < tr.size() && i == tr.size(); ++k)
        if (has_end(tr[k], a))
            i = k;
    if (i == tr.size())
        return false;
    std::size_t j = tr.size();
    for (std::size_t k = 0; k < tr.size() && j == tr.size(); ++k)
        if (k != i && has_end(tr[k], a.reversed()))
            j = k;
    if (j == tr.size()) {
        if (!has_end(tr[i], a.reversed()))
            return false;
        t.tours.push_back(close_trail(tr[i]));
        tr.erase(tr.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
    }
    tr[i] = merge_at(tr[i], tr[j], a);
    tr.erase(tr.begin() + static_cast<std::ptrdiff_t>(j));
    return true;
}

TourTrailDecomposition cancel_opposite(TourTrailDecomposition t)
{
    for (;;) {
        ResidualDigraph d = residual(t);
        std::optional<Arc> pick;
        for (const auto& [a, m] : d.multiplicities())
            if (d.contains(a.reversed())) {
                pick = a;
                break;
            }
        if (!pick)
            return t;
        if (!cancel_arc(t, *pick))
            fail(ErrorCode::ConstructionFailed, "opposite arcs could not be merged");
    }
}

TriangleLake sea_of_triangles(const ResidualDigraph& d)
{
    const std::size_t n = d.n();
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    std::vector<char> active(n, 0);
    for (const auto& [a, m] : d.multiplicities()) {
        active[a.from] = active[a.to] = 1;
        parent[find(a.from)] = find(a.to);
    }
    std::map<Vertex, std::vector<Arc>> comp_arcs;
    std::map<Vertex, std::size_t> comp_size;
    for (Vertex v = 0; v < n; ++v)
        if (active[v])
            ++comp_size[find(v)];
    std::map<Vertex, bool> comp_multi;
    for (const auto& [a, m] : d.multiplicities()) {
        Vertex r = find(a.from);
        comp_arcs[r].push_back(a);
        if (m > 1)
            comp_multi[r] = true;
    }
    TriangleLake lake;
    for (const auto& [root, arcs] : comp_arcs) {
        if (comp_size[root] != 3 || arcs.size() != 3 || comp_multi[root])
            continue;
        std::map<Vertex, Vertex> succ;
        for (const auto& a : arcs)
            succ[a.from] = a.to;
        if (succ.size() != 3)
            continue;
        Vertex a = succ.begin()->first;
        Vertex b = succ[a];
        Vertex c = succ[b];
        if (succ[c] != a)
            continue;
        lake.triangles.push_back({a, b, c});
    }
    std::sort(lake.triangles.begin(), lake.triangles.end());
    return lake;
}

bool is_sea(const ResidualDigraph& d) { return sea_of_triangles(d).arc_count() == d.arc_count(); }

std::size_t phi_potential(const TourTrailDecomposition& t)
{
    ResidualDigraph d = residual(t);
    return d.arc_count() - sea_of_triangles(d).arc_count();
}

} // namespace h3
