#include "h3/counterexample.hpp"

#include <algorithm>
#include <numeric>

#include "h3/error.hpp"
#include "h3/rng.hpp"

namespace h3 {

Tripartition Tripartition::from_labels(std::vector<std::uint8_t> labels)
{
    Tripartition p;
    for (auto l : labels) {
        if (l > 2)
            fail(ErrorCode::BadParams, "partition labels must be 0, 1 or 2");
        ++p.sizes[l];
    }
    p.labels = std::move(labels);
    return p;
}

namespace {

struct LabelCounts {
    std::size_t h112 = 0;
    std::size_t h122 = 0;
    std::size_t mixed = 0;
    std::optional<Triple> first_mixed;
};

// Classifies an edge by its label multiset.
enum class Kind { Other, H112, H122, Mixed };

Kind classify(const Tripartition& part, const Triple& t)
{
    std::array<int, 3> c{};
    ++c[part.label(t.a)];
    ++c[part.label(t.b)];
    ++c[part.label(t.c)];
    if (c[0] == 1 && c[1] == 1 && c[2] == 1)
        return Kind::Mixed;
    if (c[1] == 2 && c[2] == 1)
        return Kind::H112;
    if (c[1] == 1 && c[2] == 2)
        return Kind::H122;
    return Kind::Other;
}

LabelCounts count_labels(const ThreeGraph& h, const Tripartition& part)
{
    LabelCounts lc;
    h.for_each_edge([&](const Triple& t) {
        switch (classify(part, t)) {
        case Kind::H112: ++lc.h112; break;
        case Kind::H122: ++lc.h122; break;
        case Kind::Mixed:
            if (!lc.first_mixed)
                lc.first_mixed = t;
            ++lc.mixed;
            break;
        case Kind::Other: break;
        }
    });
    return lc;
}

void require_partition(const ThreeGraph& h, const Tripartition& part)
{
    if (part.n() != h.n())
        fail(ErrorCode::BadParams, "partition has " + std::to_string(part.n()) + " labels for " +
                                       std::to_string(h.n()) + " vertices");
}

NoTourCertificate make_certificate(const ThreeGraph& h, const Tripartition& part)
{
    LabelCounts lc = count_labels(h, part);
    NoTourCertificate c;
    c.partition = part;
    c.h112 = lc.h112;
    c.h122 = lc.h122;
    c.mixed = lc.mixed;
    return c;
}

// Tight cycle through `order` (cyclically).
void add_cycle(ThreeGraph& g, const std::vector<Vertex>& order)
{
    const std::size_t m = order.size();
    for (std::size_t i = 0; i < m; ++i)
        g.add(order[i], order[(i + 1) % m], order[(i + 2) % m]);
}

} // namespace

LabelledGraph build_Hn(std::size_t k)
{
    if (k < 1)
        fail(ErrorCode::BadParams, "k must be at least 1");
    const std::size_t n0 = 6 * k;
    const std::size_t n1 = 6 * k - 2;
    const std::size_t n = 18 * k;
    std::vector<std::uint8_t> labels(n, 2);
    std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n0), 0);
    std::fill(labels.begin() + static_cast<std::ptrdiff_t>(n0),
              labels.begin() + static_cast<std::ptrdiff_t>(n0 + n1), 1);
    LabelledGraph out{ThreeGraph(n), Tripartition::from_labels(std::move(labels))};
    const auto& l = out.partition.labels;
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y)
            for (Vertex z = y + 1; z < n; ++z)
                if ((l[x] + l[y] + l[z]) % 3 != 0)
                    out.graph.add(x, y, z);
    return out;
}

std::vector<Triple> build_matching_F(const ThreeGraph& hn, const Tripartition& part)
{
    require_partition(hn, part);
    std::array<std::vector<Vertex>, 3> cl;
    for (Vertex v = 0; v < part.n(); ++v)
        cl[part.label(v)].push_back(v);
    if (cl[2].size() < 2 || cl[0].size() % 2 != 0 || cl[1].size() + 2 != cl[0].size() ||
        cl[2].size() != cl[0].size() + 2)
        fail(ErrorCode::BadParams, "partition does not have the H_n cluster sizes");
    // y_1 = a, y_2 = b taken from V2; then V1 in order
    std::vector<Vertex> ys{cl[2][0], cl[2][1]};
    ys.insert(ys.end(), cl[1].begin(), cl[1].end());
    std::vector<Vertex> zs(cl[2].begin() + 2, cl[2].end());
    const auto& xs = cl[0];
    std::vector<Triple> f;
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
        f.push_back(Triple::of(ys[i], ys[i + 1], xs[i]));
        f.push_back(Triple::of(zs[i], zs[i + 1], xs[i + 1]));
    }
    for (const auto& t : f)
        if (!hn.contains(t))
            fail(ErrorCode::ConstructionFailed, "matching edge is not in the host");
    std::sort(f.begin(), f.end());
    return f;
}

Counterexample build_counterexample(std::size_t n, std::size_t ell)
{
    if (ell < 4)
        fail(ErrorCode::BadParams, "cycle length must be at least 4");
    if (n == 0 || n % 18 != 0)
        fail(ErrorCode::BadParams, "n must be a positive multiple of 18");
    if (n < 3 * (ell + 3))
        fail(ErrorCode::BadParams, "n must be at least 3(l+3) = " + std::to_string(3 * (ell + 3)));
    LabelledGraph hn = build_Hn(n / 18);
    for (const auto& t : build_matching_F(hn.graph, hn.partition))
        hn.graph.remove(t);
    std::size_t lp = 4;
    while ((hn.graph.edge_count() + lp) % ell != 0)
        ++lp;
    std::vector<Vertex> order(lp);
    std::iota(order.begin(), order.end(), Vertex{0});
    add_cycle(hn.graph, order);
    Counterexample out;
    out.certificate = make_certificate(hn.graph, hn.partition);
    out.graph = std::move(hn.graph);
    out.partition = std::move(hn.partition);
    out.cycle_length = lp;
    return out;
}

RegularVariant build_regular_variant(std::size_t k, std::uint64_t seed)
{
    LabelledGraph hn = build_Hn(k);
    for (const auto& t : build_matching_F(hn.graph, hn.partition))
        hn.graph.remove(t);
    RegularVariant out;
    for (Vertex v = 0; v < hn.graph.n(); ++v)
        out.degrees_before[hn.partition.label(v)] = hn.graph.degree(v);

    Rng rng(seed, 0x7265677576ULL);
    auto add_hamilton = [&](std::uint8_t label) {
        std::vector<Vertex> cl;
        for (Vertex v = 0; v < hn.graph.n(); ++v)
            if (hn.partition.label(v) == label)
                cl.push_back(v);
        const std::size_t m = cl.size();
        for (int attempt = 0; attempt < 4096; ++attempt) {
            rng.shuffle(cl);
            bool free = true;
            for (std::size_t i = 0; i < m && free; ++i)
                free = !hn.graph.contains(cl[i], cl[(i + 1) % m], cl[(i + 2) % m]);
            if (free) {
                add_cycle(hn.graph, cl);
                return;
            }
        }
        fail(ErrorCode::ConstructionFailed, "no edge-disjoint tight Hamilton cycle found in V" +
                                                std::to_string(label) + " (k too small?)");
    };
    for (int i = 0; i < 3; ++i)
        add_hamilton(1);
    add_hamilton(2);

    out.degree = hn.graph.degree(0);
    for (Vertex v = 0; v < hn.graph.n(); ++v)
        if (hn.graph.degree(v) != out.degree)
            fail(ErrorCode::ConstructionFailed, "variant is not vertex-regular");
    out.certificate = make_certificate(hn.graph, hn.partition);
    out.graph = std::move(hn.graph);
    out.partition = std::move(hn.partition);
    return out;
}

PhiResult phi_cyclic_word(const std::vector<std::uint8_t>& word)
{
    const std::size_t r = word.size();
    if (r < 3)
        fail(ErrorCode::TooShort, "cyclic word needs at least 3 symbols");
    PhiResult res;
    for (std::size_t i = 0; i < r; ++i) {
        std::uint8_t s[3] = {word[i], word[(i + 1) % r], word[(i + 2) % r]};
        if (s[0] == 0 || s[1] == 0 || s[2] == 0)
            continue;
        unsigned ones = (s[0] == 1) + (s[1] == 1) + (s[2] == 1);
        if (ones == 2)
            ++res.f1;
        else if (ones == 1)
            ++res.f2;
        else
            continue;
        res.phi += static_cast<std::uint64_t>(s[0] + s[1] + s[2]);
    }
    return res;
}

bool check_tour_parity(const WalkSeq& w, const Tripartition& part, const ThreeGraph& host)
{
    require_partition(host, part);
    if (!w.closed())
        fail(ErrorCode::PreconditionFailed, "parity check needs a tour");
    LabelCounts lc = count_labels(host, part);
    if (lc.mixed > 0)
        fail(ErrorCode::PartitionHasMixedEdge, "host has an edge meeting all three parts");
    std::size_t a = 0;
    std::size_t b = 0;
    for (const auto& t : w.edges()) {
        Kind kd = classify(part, t);
        a += kd == Kind::H112;
        b += kd == Kind::H122;
    }
    return a % 3 == b % 3;
}

CertifyOutcome certify_no_tour(const ThreeGraph& h, const Tripartition& part)
{
    require_partition(h, part);
    CertifyOutcome out;
    NoTourCertificate c = make_certificate(h, part);
    if (c.mixed > 0) {
        out.mixed_edge = count_labels(h, part).first_mixed;
        out.inapplicable = std::to_string(c.mixed) + " edges meet all three parts";
        return out;
    }
    if (c.h112_mod3() == c.h122_mod3()) {
        out.inapplicable = "|H112| and |H122| agree mod 3";
        return out;
    }
    out.certificate = std::move(c);
    return out;
}

K43Example build_K43_example(std::size_t k)
{
    if (k < 1)
        fail(ErrorCode::BadParams, "k must be at least 1");
    const std::size_t d = 6 * k + 2;
    const std::size_t n = 12 * k + 9;
    std::vector<Pair> g1;
    for (Vertex i = 0; i < n; ++i)
        for (std::size_t s = 1; s <= d / 2; ++s)
            g1.push_back(Pair::of(i, static_cast<Vertex>((i + s) % n)));
    K43Example out;
    out.g1 = Graph2(n, std::move(g1));
    const std::size_t zn = 2 * n;
    out.x1 = static_cast<Vertex>(zn);
    out.x2 = static_cast<Vertex>(zn + 1);
    out.graph = complete_graph(zn + 2);
    // drop everything through x1 or x2, then add back the prescribed edges
    ThreeGraph& h = out.graph;
    for (Vertex a = 0; a < zn; ++a) {
        h.remove(a, out.x1, out.x2);
        for (Vertex b = a + 1; b < zn; ++b) {
            h.remove(a, b, out.x1);
            h.remove(a, b, out.x2);
        }
    }
    for (Vertex z = 0; z < zn; ++z)
        h.add(out.x1, out.x2, z);
    auto add_g = [&](Vertex a, Vertex b) {
        h.add(a, b, out.x1);
        h.add(a, b, out.x2);
    };
    for (const auto& p : out.g1.edges()) {
        add_g(p.u, p.v);
        add_g(static_cast<Vertex>(p.u + n), static_cast<Vertex>(p.v + n));
    }
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b)
            add_g(a, static_cast<Vertex>(b + n));
    out.certificate = {n, d, d * n, n * (n - 1) / 2};
    return out;
}

} // namespace h3
