#include "h3/euler.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <unordered_set>

#include "h3/error.hpp"
#include "h3/log.hpp"
#include "h3/pathfinder.hpp"
#include "h3/rng.hpp"

namespace h3 {

namespace {

// Appends of one to three vertices to the trail end, scored by the number
// of target pairs they make consecutive per edge used.
struct Append {
    std::array<Vertex, 3> v{};
    unsigned len = 0;
    unsigned fresh = 0;
};

class TrailBuilder {
public:
    TrailBuilder(const ThreeGraph& g, std::uint64_t seed, std::uint64_t budget)
        : g_(g), n_(g.n()), used_(g.n()), cover_(g.n() * g.n(), 0), order_(g.n()), budget_(budget)
    {
        for (Vertex v = 0; v < n_; ++v)
            order_[v] = v;
        Rng rng(seed);
        rng.shuffle(order_);
        std::size_t s = 0;
        for (Vertex v = 0; v < n_; ++v)
            s += g.degree(v) > 0 ? 1 : 0;
        missing_ = s * (s - 1) / 2;
        std::vector<Triple> es = g.edges();
        start_ = es[static_cast<std::size_t>(rng.below(es.size()))];
    }

    enum class Verdict { Take, Skip, Stop };
    using Accept = std::function<Verdict(const std::vector<Vertex>&)>;

    // Depth-first over appends; a spanning trail ends the search only when
    // `accept` takes it.
    bool run(const Accept& accept)
    {
        accept_ = &accept;
        std::array<Vertex, 3> first{start_.a, start_.b, start_.c};
        for (Vertex v : first)
            push(v);
        used_.add(start_);
        return search();
    }

    const std::vector<Vertex>& seq() const { return seq_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    bool free(Vertex x, Vertex y, Vertex z) const { return g_.contains(x, y, z) && !used_.contains(x, y, z); }

    std::uint32_t& cov(Vertex x, Vertex y) { return cover_[std::min(x, y) * n_ + std::max(x, y)]; }

    void push(Vertex v)
    {
        if (!seq_.empty()) {
            Vertex p = seq_.back();
            if (cov(p, v)++ == 0)
                --missing_;
        }
        seq_.push_back(v);
    }

    void pop()
    {
        Vertex v = seq_.back();
        seq_.pop_back();
        if (--cov(seq_.back(), v) == 0)
            ++missing_;
    }

    unsigned gain(const Append& a)
    {
        // pairs counted once even if the append repeats one
        std::array<std::uint64_t, 3> seen{};
        unsigned k = 0;
        unsigned fresh = 0;
        Vertex prev = seq_.back();
        for (unsigned i = 0; i < a.len; ++i) {
            Vertex x = std::min(prev, a.v[i]);
            Vertex y = std::max(prev, a.v[i]);
            std::uint64_t key = static_cast<std::uint64_t>(x) * n_ + y;
            if (cover_[key] == 0 && std::find(seen.begin(), seen.begin() + k, key) == seen.begin() + k) {
                seen[k++] = key;
                ++fresh;
            }
            prev = a.v[i];
        }
        return fresh;
    }

    std::vector<Append> options()
    {
        std::vector<Append> out;
        const Vertex p2 = seq_[seq_.size() - 2];
        const Vertex p1 = seq_.back();
        for (Vertex z : order_) {
            if (!free(p2, p1, z))
                continue;
            Append a;
            a.v[0] = z;
            a.len = 1;
            if ((a.fresh = gain(a)) > 0)
                out.push_back(a);
            for (Vertex w : order_) {
                if (!free(p1, z, w) || Triple::of(p1, z, w) == Triple::of(p2, p1, z))
                    continue;
                Append b = a;
                b.v[1] = w;
                b.len = 2;
                if ((b.fresh = gain(b)) > 0)
                    out.push_back(b);
                for (Vertex u : order_) {
                    if (!free(z, w, u))
                        continue;
                    Triple t = Triple::of(z, w, u);
                    if (t == Triple::of(p2, p1, z) || t == Triple::of(p1, z, w))
                        continue;
                    Append c = b;
                    c.v[2] = u;
                    c.len = 3;
                    if ((c.fresh = gain(c)) > 0)
                        out.push_back(c);
                }
            }
        }
        // best ratio first; shorter appends win ties
        std::stable_sort(out.begin(), out.end(), [](const Append& x, const Append& y) {
            if (x.fresh * y.len != y.fresh * x.len)
                return x.fresh * y.len > y.fresh * x.len;
            return x.len < y.len;
        });
        return out;
    }

    bool search()
    {
        if (missing_ == 0) {
            Verdict v = (*accept_)(seq_);
            stopped_ = v == Verdict::Stop;
            return v == Verdict::Take;
        }
        auto opts = options();
        const std::size_t width = std::min<std::size_t>(opts.size(), 3);
        for (std::size_t i = 0; i < width; ++i) {
            if (++nodes_ > budget_)
                return false;
            const Append& a = opts[i];
            for (unsigned k = 0; k < a.len; ++k) {
                Vertex x = seq_[seq_.size() - 2];
                Vertex y = seq_.back();
                used_.add(x, y, a.v[k]);
                push(a.v[k]);
            }
            if (search())
                return true;
            if (stopped_)
                return false;
            for (unsigned k = 0; k < a.len; ++k) {
                const std::size_t e = seq_.size();
                used_.remove(seq_[e - 3], seq_[e - 2], seq_[e - 1]);
                pop();
            }
        }
        return false;
    }

    const ThreeGraph& g_;
    std::size_t n_;
    ThreeGraph used_;
    std::vector<std::uint32_t> cover_; // consecutive occurrences of x<y at x*n+y
    std::vector<Vertex> order_;
    std::vector<Vertex> seq_;
    std::size_t missing_ = 0;
    Triple start_;
    const Accept* accept_ = nullptr;
    bool stopped_ = false;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
};

class EulerSearch {
public:
    EulerSearch(const ThreeGraph& g, std::uint64_t budget) : g_(g), used_(g.n()), m_(g.edge_count()), budget_(budget) {}

    DecompStatus run()
    {
        Triple e = g_.edges().front();
        // the tour may be rotated to start at e and reflected so that the
        // outer vertices of e come in increasing order
        const std::array<std::array<Vertex, 3>, 3> starts{
            {{e.b, e.a, e.c}, {e.a, e.b, e.c}, {e.a, e.c, e.b}}};
        for (const auto& s : starts) {
            seq_.assign(s.begin(), s.end());
            used_.add(e);
            bool found = search();
            used_.remove(e);
            if (found)
                return DecompStatus::Complete;
            if (out_of_budget_)
                return DecompStatus::BudgetExceeded;
        }
        return DecompStatus::Infeasible;
    }

    const std::vector<Vertex>& seq() const { return seq_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    bool free(Vertex x, Vertex y, Vertex z) const { return g_.contains(x, y, z) && !used_.contains(x, y, z); }

    bool search()
    {
        const std::size_t k = seq_.size();
        if (k == m_) {
            Vertex x = seq_[k - 2], y = seq_[k - 1];
            return free(x, y, seq_[0]) && free(y, seq_[0], seq_[1]) &&
                   !(Triple::of(x, y, seq_[0]) == Triple::of(y, seq_[0], seq_[1]));
        }
        if (++nodes_ > budget_) {
            out_of_budget_ = true;
            return false;
        }
        Vertex x = seq_[k - 2], y = seq_[k - 1];
        for (Vertex z = 0; z < g_.n(); ++z) {
            if (!free(x, y, z))
                continue;
            used_.add(x, y, z);
            seq_.push_back(z);
            if (search())
                return true;
            seq_.pop_back();
            used_.remove(x, y, z);
            if (out_of_budget_)
                return false;
        }
        return false;
    }

    const ThreeGraph& g_;
    ThreeGraph used_;
    std::size_t m_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool out_of_budget_ = false;
    std::vector<Vertex> seq_;
};

ThreeGraph minus(const ThreeGraph& g, const std::vector<Triple>& es)
{
    ThreeGraph r = g;
    for (const auto& t : es)
        r.remove(t);
    return r;
}

constexpr std::size_t exact_rest_edges = 40; // every length up to max(l, 8) below this
constexpr double peel_density = 0.6;          // short-cycle covers start at this density

// Random l-cycles are removed until the edge density drops to peel_density.
std::vector<Cycle> peel(ThreeGraph& rest, std::size_t ell, Rng& rng)
{
    const double n = static_cast<double>(rest.n());
    const auto peel_target = static_cast<std::size_t>(peel_density * n * (n - 1) * (n - 2) / 6.0);
    std::vector<Cycle> out;
    std::vector<Triple> order = rest.edges();
    rng.shuffle(order);
    for (const auto& e : order) {
        if (rest.edge_count() <= peel_target)
            break;
        if (!rest.contains(e))
            continue;
        try {
            WalkSeq c = extend_to_cycle(rest, assemble({e.a, e.b, e.c}, WalkKind::Path), ell, {}, {rng.next(), 4});
            for (const auto& t : c.edges())
                rest.remove(t);
            out.push_back(canonical_cycle(c.vertices()));
        } catch (const Error& err) {
            if (err.code() != ErrorCode::NoExtensionAvailable)
                throw;
        }
    }
    return out;
}

struct RestCover {
    DecompStatus status = DecompStatus::Infeasible; // Complete, Infeasible or BudgetExceeded
    std::vector<Cycle> cycles;
};

// Cycles covering `rest`. Small remainders are covered exactly (l-cycles
// when possible, then mixed lengths); larger ones lose random l-cycles
// first and the rest is covered exactly by cycles of length 4 to 6.
RestCover cover_rest(const ThreeGraph& rest, std::size_t ell, std::uint64_t seed, std::uint64_t budget)
{
    if (rest.empty())
        return {DecompStatus::Complete, {}};
    if (rest.edge_count() <= exact_rest_edges) {
        if (ell >= 4 && ell <= rest.n() && rest.edge_count() % ell == 0) {
            auto r = exact_decompose(rest, ell, budget);
            if (r.status == DecompStatus::Complete)
                return {r.status, r.cycles};
        }
        auto mixed = mixed_cycle_cover(rest, 4, std::max<std::size_t>(ell, 8), budget);
        return {mixed.status, mixed.cycles};
    }
    Rng rng(seed, 7);
    ThreeGraph left = rest;
    std::vector<Cycle> cycles;
    if (ell >= 4 && ell <= rest.n())
        cycles = peel(left, ell, rng);
    auto r = mixed_cycle_cover(left, 4, 6, budget);
    log_debug("euler: " + std::to_string(cycles.size()) + " peeled cycles, short cover of " +
              std::to_string(left.edge_count()) + " edges: " + to_string(r.status));
    if (r.status == DecompStatus::Complete)
        cycles.insert(cycles.end(), r.cycles.begin(), r.cycles.end());
    return {r.status, cycles};
}

} // namespace

SpanningTrail spanning_trail(const ThreeGraph& g, std::uint64_t seed, std::uint64_t budget)
{
    if (g.empty())
        fail(ErrorCode::ConstructionFailed, "graph has no edges");
    TrailBuilder b(g, seed, budget);
    if (!b.run([](const std::vector<Vertex>&) { return TrailBuilder::Verdict::Take; }))
        fail(ErrorCode::ConstructionFailed, "no spanning trail found within " + std::to_string(budget) + " nodes");
    SpanningTrail out;
    out.trail = validate(b.seq(), WalkKind::Trail, g);
    out.delta2 = max_codegree(out.trail.edge_graph(g.n()));
    out.nodes = b.nodes();
    return out;
}

EulerResult exact_euler(const ThreeGraph& g, std::uint64_t budget)
{
    if (g.edge_count() > 60)
        fail(ErrorCode::BadParams, "exact Euler search needs at most 60 edges");
    EulerResult res;
    // a tour with m edges has m positions, and three of them cannot all
    // carry distinct edges
    if (g.edge_count() < 4 || !check_divisibility(g, DivisibilityKind::vertex3()).ok)
        return res;
    EulerSearch s(g, budget);
    res.status = s.run();
    res.nodes = s.nodes();
    if (res.status == DecompStatus::Complete)
        res.tour = validate(s.seq(), WalkKind::Tour, g);
    return res;
}

bool verify_euler(const ThreeGraph& g, const WalkSeq& w)
{
    if (!w.closed() || w.edges().size() != g.edge_count())
        return false;
    std::unordered_set<Triple, TripleHash> seen;
    for (const auto& t : w.edges())
        if (!g.contains(t) || !seen.insert(t).second)
            return false;
    return true;
}

WalkSeq assemble_euler(const ThreeGraph& g, std::size_t ell, std::uint64_t seed, const EulerOptions& opts)
{
    auto div = check_divisibility(g, DivisibilityKind::vertex3());
    if (!div.ok)
        fail(ErrorCode::PreconditionFailed, "not 3-vertex-divisible: " + div.violation->describe());
    std::string last = "no spanning trail";
    for (unsigned attempt = 0; attempt < opts.attempts; ++attempt) {
        const std::uint64_t s = derive_seed(seed, attempt);
        std::optional<WalkSeq> result;
        std::size_t trails = 0;
        // close the trail, cover the rest by cycles and splice them in;
        // a failure sends the trail search on to the next spanning trail
        using Verdict = TrailBuilder::Verdict;
        auto accept = [&](const std::vector<Vertex>& seq) {
            if (++trails > opts.trails_per_attempt)
                return Verdict::Stop;
            try {
                WalkSeq tour = close_to_tour(g, assemble(seq, WalkKind::Trail), nullptr, {s, 16});
                ThreeGraph rest = minus(g, tour.edges());
                auto cover = cover_rest(rest, ell, s, opts.cover_budget);
                if (cover.status != DecompStatus::Complete) {
                    last = "cycle cover of the remaining " + std::to_string(rest.edge_count()) + " edges: " +
                           to_string(cover.status);
                    // another trail leaves a remainder just as large
                    return cover.status == DecompStatus::BudgetExceeded ? Verdict::Stop : Verdict::Skip;
                }
                std::sort(cover.cycles.begin(), cover.cycles.end());
                for (const auto& c : cover.cycles)
                    tour = splice_cycle(tour, assemble(c, WalkKind::Cycle));
                result = tour;
                return Verdict::Take;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NoExtensionAvailable && e.code() != ErrorCode::NoSharedConsecutivePair)
                    throw;
                last = e.what();
                return Verdict::Skip;
            }
        };
        TrailBuilder b(g, s, opts.trail_budget);
        b.run(accept);
        log_debug("euler attempt " + std::to_string(attempt) + ": " + std::to_string(trails) + " spanning trails, " +
                  std::to_string(b.nodes()) + " nodes" + (result ? "" : ", last failure: " + last));
        if (result) {
            if (!verify_euler(g, *result))
                fail(ErrorCode::ConstructionFailed, "assembled tour does not cover every edge once");
            log_info("euler: tour of " + std::to_string(result->size()) + " vertices from attempt " +
                     std::to_string(attempt));
            return *result;
        }
    }
    if (g.edge_count() <= opts.exact_fallback) {
        EulerResult r = exact_euler(g, opts.cover_budget * 25);
        if (r.status == DecompStatus::Complete)
            return *r.tour;
        last = std::string("exact search: ") + to_string(r.status);
    }
    fail(ErrorCode::ConstructionFailed, "no Euler tour assembled (" + last + ")");
}

} // namespace h3
