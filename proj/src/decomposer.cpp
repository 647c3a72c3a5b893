#include "h3/decomposer.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "h3/error.hpp"
#include "h3/pathfinder.hpp"
#include "h3/rng.hpp"
#include "simplex.hpp"

namespace h3 {

const char* to_string(DecompStatus s)
{
    switch (s) {
    case DecompStatus::Complete: return "Complete";
    case DecompStatus::Partial: return "Partial";
    case DecompStatus::Infeasible: return "Infeasible";
    case DecompStatus::BudgetExceeded: return "BudgetExceeded";
    }
    return "Partial";
}

std::vector<Triple> cycle_edges(const Cycle& c)
{
    const std::size_t k = c.size();
    std::vector<Triple> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        out.push_back(Triple::of(c[i], c[(i + 1) % k], c[(i + 2) % k]));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void require_ell(std::size_t ell)
{
    if (ell < 4)
        fail(ErrorCode::BadParams, "cycle length must be at least 4");
}

// Cycles through a fixed start vertex s that is the least vertex of the
// cycle, with v1 < v_{l-1}; each cycle is found exactly once.
class CycleEnumerator {
public:
    CycleEnumerator(const ThreeGraph& g, std::size_t ell, std::size_t limit, std::vector<Cycle>& out)
        : g_(g), ell_(ell), limit_(limit), out_(out), used_(g.n())
    {
    }

    void from(Vertex s)
    {
        above_ = VertexSet(g_.n());
        for (Vertex v = s + 1; v < g_.n(); ++v)
            above_.set(v);
        path_.assign(1, s);
        used_.set(s);
        above_.for_each([&](Vertex v1) {
            if (g_.codegree(s, v1, above_) == 0)
                return;
            push(v1);
            extend();
            pop();
        });
        used_.reset(s);
    }

private:
    void push(Vertex v)
    {
        path_.push_back(v);
        used_.set(v);
    }
    void pop()
    {
        used_.reset(path_.back());
        path_.pop_back();
    }

    void extend()
    {
        const std::size_t k = path_.size();
        VertexSet cand = g_.neighbourhood(path_[k - 2], path_[k - 1]);
        cand &= above_;
        cand -= used_;
        if (k + 1 == ell_) {
            cand &= g_.neighbourhood(path_[k - 1], path_[0]);
            cand &= g_.neighbourhood(path_[0], path_[1]);
            cand.for_each([&](Vertex w) {
                if (path_[1] < w) {
                    if (out_.size() >= limit_)
                        fail(ErrorCode::LimitExceeded, "more than " + std::to_string(limit_) + " cycles");
                    Cycle c = path_;
                    c.push_back(w);
                    out_.push_back(std::move(c));
                }
            });
            return;
        }
        cand.for_each([&](Vertex w) {
            push(w);
            extend();
            pop();
        });
    }

    const ThreeGraph& g_;
    std::size_t ell_;
    std::size_t limit_;
    std::vector<Cycle>& out_;
    VertexSet used_;
    VertexSet above_;
    Cycle path_;
};

// Algorithm X over explicit set lists: choose the uncovered item with the
// fewest live sets (least index on ties), try its sets in order.
class ExactCover {
public:
    enum class Outcome { Found, Exhausted, Budget };

    ExactCover(std::size_t items, const std::vector<std::vector<std::uint32_t>>& sets, std::uint64_t budget)
        : sets_(sets), budget_(budget), by_item_(items), count_(items, 0), covered_(items, 0), live_(sets.size(), 1)
    {
        for (std::size_t s = 0; s < sets.size(); ++s)
            for (auto e : sets[s]) {
                by_item_[e].push_back(static_cast<std::uint32_t>(s));
                ++count_[e];
            }
    }

    Outcome solve()
    {
        remaining_ = count_.size();
        return search();
    }
    const std::vector<std::size_t>& solution() const { return chosen_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    Outcome search()
    {
        if (remaining_ == 0)
            return Outcome::Found;
        std::size_t best = count_.size();
        for (std::size_t e = 0; e < count_.size(); ++e)
            if (!covered_[e] && (best == count_.size() || count_[e] < count_[best]))
                best = e;
        if (count_[best] == 0)
            return Outcome::Exhausted;
        std::vector<std::uint32_t> options;
        for (auto s : by_item_[best])
            if (live_[s])
                options.push_back(s);
        for (auto s : options) {
            if (++nodes_ > budget_)
                return Outcome::Budget;
            std::vector<std::uint32_t> killed;
            for (auto e : sets_[s]) {
                covered_[e] = 1;
                --remaining_;
                for (auto t : by_item_[e])
                    if (live_[t]) {
                        live_[t] = 0;
                        killed.push_back(t);
                        for (auto f : sets_[t])
                            --count_[f];
                    }
            }
            chosen_.push_back(s);
            Outcome r = search();
            if (r != Outcome::Exhausted)
                return r;
            chosen_.pop_back();
            for (auto it = killed.rbegin(); it != killed.rend(); ++it) {
                live_[*it] = 1;
                for (auto f : sets_[*it])
                    ++count_[f];
            }
            for (auto e : sets_[s]) {
                covered_[e] = 0;
                ++remaining_;
            }
        }
        return Outcome::Exhausted;
    }

    const std::vector<std::vector<std::uint32_t>>& sets_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<std::vector<std::uint32_t>> by_item_;
    std::vector<std::size_t> count_;
    std::vector<char> covered_;
    std::vector<char> live_;
    std::vector<std::size_t> chosen_;
    std::size_t remaining_ = 0;
};

std::size_t edge_index(const std::vector<Triple>& edges, const Triple& t)
{
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), t) - edges.begin());
}

// Depth-first search for an l-cycle through a given edge.
class CycleSearch {
public:
    CycleSearch(const ThreeGraph& g, std::size_t ell, std::uint64_t budget)
        : g_(g), ell_(ell), budget_(budget), used_(g.n())
    {
    }

    // nullopt with exhausted() = no cycle; with !exhausted() = budget hit.
    std::optional<Cycle> through(const Triple& e)
    {
        nodes_ = 0;
        budget_hit_ = false;
        const std::array<std::array<Vertex, 3>, 3> starts{{{e.a, e.b, e.c}, {e.b, e.a, e.c}, {e.a, e.c, e.b}}};
        for (const auto& s : starts) {
            path_.assign(s.begin(), s.end());
            for (Vertex v : s)
                used_.set(v);
            bool found = ell_ == 3 ? false : extend();
            for (Vertex v : path_)
                used_.reset(v);
            if (found)
                return found_;
            if (budget_hit_)
                return std::nullopt;
        }
        return std::nullopt;
    }
    bool budget_hit() const { return budget_hit_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    bool extend()
    {
        if (++nodes_ > budget_) {
            budget_hit_ = true;
            return false;
        }
        const std::size_t k = path_.size();
        VertexSet cand = g_.neighbourhood(path_[k - 2], path_[k - 1]);
        cand -= used_;
        if (k + 1 == ell_) {
            cand &= g_.neighbourhood(path_[k - 1], path_[0]);
            cand &= g_.neighbourhood(path_[0], path_[1]);
            if (cand.empty())
                return false;
            found_ = path_;
            found_.push_back(cand.nth(0));
            return true;
        }
        for (Vertex w : cand.members()) {
            path_.push_back(w);
            used_.set(w);
            bool ok = extend();
            used_.reset(w);
            path_.pop_back();
            if (ok)
                return true;
            if (budget_hit_)
                return false;
        }
        return false;
    }

    const ThreeGraph& g_;
    std::size_t ell_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool budget_hit_ = false;
    VertexSet used_;
    Cycle path_;
    Cycle found_;
};

void remove_cycle(ThreeGraph& g, const std::vector<Triple>& edges)
{
    for (const auto& t : edges)
        g.remove(t);
}

// Exact cover of `edges` by `cycles`; fills status, cycles, leftover and
// stats of rep.
void exact_cover_cycles(const ThreeGraph& g, const std::vector<Triple>& edges, const std::vector<Cycle>& cycles,
                        std::uint64_t budget, DecompositionReport& rep)
{
    // cycles with the same edge set are interchangeable; keep the least
    std::vector<std::vector<std::uint32_t>> sets;
    std::vector<std::size_t> owner;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        std::vector<std::uint32_t> s;
        for (const auto& t : cycle_edges(cycles[i]))
            s.push_back(static_cast<std::uint32_t>(edge_index(edges, t)));
        std::string key(reinterpret_cast<const char*>(s.data()), s.size() * sizeof(std::uint32_t));
        if (!seen.insert(key).second)
            continue;
        sets.push_back(std::move(s));
        owner.push_back(i);
    }
    ExactCover xc(edges.size(), sets, budget);
    auto outcome = xc.solve();
    rep.stats.nodes = xc.nodes();
    rep.stats.iterations = xc.nodes();
    if (outcome == ExactCover::Outcome::Found) {
        for (auto s : xc.solution())
            rep.cycles.push_back(cycles[owner[s]]);
        std::sort(rep.cycles.begin(), rep.cycles.end());
        rep.leftover.clear();
        rep.stats.covered = edges.size();
        rep.status = DecompStatus::Complete;
    } else {
        rep.status = outcome == ExactCover::Outcome::Budget ? DecompStatus::BudgetExceeded : DecompStatus::Infeasible;
        rep.stats.delta2 = max_codegree(g);
    }
    rep.stages.push_back({"exact-cover", rep.cycles.size(), rep.leftover.size(), rep.stats.delta2,
                          std::to_string(cycles.size()) + " cycles, " + std::to_string(sets.size()) + " edge sets"});
}

} // namespace

std::vector<Cycle> enumerate_cycles(const ThreeGraph& g, std::size_t ell, std::size_t limit)
{
    require_ell(ell);
    std::vector<Cycle> out;
    CycleEnumerator en(g, ell, limit, out);
    for (Vertex s = 0; s < g.n(); ++s)
        en.from(s);
    std::sort(out.begin(), out.end());
    return out;
}

DecompositionReport exact_decompose(const ThreeGraph& g, std::size_t ell, std::uint64_t budget)
{
    require_ell(ell);
    DecompositionReport rep;
    rep.ell = ell;
    std::vector<Triple> edges = g.edges();
    rep.leftover = edges;
    if (edges.empty()) {
        rep.status = DecompStatus::Complete;
        return rep;
    }
    auto div = check_divisibility(g, DivisibilityKind::cycle(ell));
    if (!div.ok) {
        rep.status = DecompStatus::Infeasible;
        rep.stages.push_back({"divisibility", 0, edges.size(), max_codegree(g), div.violation->describe()});
        return rep;
    }
    std::vector<Cycle> cycles;
    try {
        cycles = enumerate_cycles(g, ell, static_cast<std::size_t>(std::min<std::uint64_t>(budget, 500000)));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::LimitExceeded)
            throw;
        rep.status = DecompStatus::BudgetExceeded;
        rep.stages.push_back({"enumerate", 0, edges.size(), 0, e.what()});
        return rep;
    }
    exact_cover_cycles(g, edges, cycles, budget, rep);
    return rep;
}

DecompositionReport mixed_cycle_cover(const ThreeGraph& g, std::size_t min_len, std::size_t max_len,
                                      std::uint64_t budget)
{
    require_ell(min_len);
    if (max_len < min_len)
        fail(ErrorCode::BadParams, "empty length range");
    DecompositionReport rep;
    std::vector<Triple> edges = g.edges();
    rep.leftover = edges;
    if (edges.empty()) {
        rep.status = DecompStatus::Complete;
        return rep;
    }
    auto div = check_divisibility(g, DivisibilityKind::vertex3());
    if (!div.ok) {
        rep.status = DecompStatus::Infeasible;
        rep.stages.push_back({"divisibility", 0, edges.size(), max_codegree(g), div.violation->describe()});
        return rep;
    }
    std::vector<Cycle> cycles;
    const auto cap = static_cast<std::size_t>(std::min<std::uint64_t>(budget, 500000));
    try {
        for (std::size_t len = min_len; len <= std::min<std::size_t>(max_len, g.n()); ++len) {
            auto part = enumerate_cycles(g, len, cap);
            cycles.insert(cycles.end(), part.begin(), part.end());
            if (cycles.size() > cap)
                fail(ErrorCode::LimitExceeded, "more than " + std::to_string(cap) + " cycles");
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::LimitExceeded)
            throw;
        rep.status = DecompStatus::BudgetExceeded;
        rep.stages.push_back({"enumerate", 0, edges.size(), 0, e.what()});
        return rep;
    }
    exact_cover_cycles(g, edges, cycles, budget, rep);
    return rep;
}

bool validate_decomposition(const ThreeGraph& g, const std::vector<Cycle>& cycles)
{
    std::unordered_set<Triple, TripleHash> seen;
    for (const auto& c : cycles) {
        try {
            WalkSeq w = validate(c, WalkKind::Cycle, g);
            for (const auto& t : w.edges())
                if (!seen.insert(t).second)
                    return false;
        } catch (const Error&) {
            return false;
        }
    }
    return seen.size() == g.edge_count();
}

bool validate_decomposition(const ThreeGraph& g, const std::vector<WalkSeq>& cycles)
{
    std::vector<Cycle> cs;
    cs.reserve(cycles.size());
    for (const auto& w : cycles) {
        if (w.kind() != WalkKind::Cycle)
            return false;
        cs.push_back(w.vertices());
    }
    return validate_decomposition(g, cs);
}

bool check_accounting(const ThreeGraph& g, const DecompositionReport& rep)
{
    std::unordered_set<Triple, TripleHash> seen;
    for (const auto& c : rep.cycles) {
        if (rep.ell != 0 ? c.size() != rep.ell : c.size() < 4)
            return false;
        try {
            WalkSeq w = validate(c, WalkKind::Cycle, g);
            for (const auto& t : w.edges())
                if (!seen.insert(t).second)
                    return false;
        } catch (const Error&) {
            return false;
        }
    }
    for (const auto& t : rep.leftover)
        if (!g.contains(t) || !seen.insert(t).second)
            return false;
    return seen.size() == g.edge_count();
}

int edge_in_cycle(const ThreeGraph& g, const Triple& e, std::size_t ell, std::uint64_t budget)
{
    require_ell(ell);
    if (!g.contains(e))
        return 0;
    CycleSearch cs(g, ell, budget);
    if (cs.through(e))
        return 1;
    return cs.budget_hit() ? -1 : 0;
}

bool is_cycle_free(const ThreeGraph& g, std::size_t ell, std::uint64_t budget_per_edge)
{
    require_ell(ell);
    CycleSearch cs(g, ell, budget_per_edge);
    bool free = true;
    g.for_each_edge([&](const Triple& t) {
        if (!free)
            return;
        if (cs.through(t) || cs.budget_hit())
            free = false;
    });
    return free;
}

DecompositionReport greedy_pack(const ThreeGraph& g, std::size_t ell, std::uint64_t seed, const GreedyOptions& opts)
{
    require_ell(ell);
    DecompositionReport rep;
    rep.ell = ell;
    rep.stats.seed = seed;
    ThreeGraph rest = g;
    std::vector<Triple> order = g.edges();
    Rng rng(seed);
    rng.shuffle(order);
    if (opts.priority)
        std::stable_sort(order.begin(), order.end(),
                         [&](const Triple& x, const Triple& y) { return opts.priority(x) < opts.priority(y); });

    auto take = [&](Cycle c) {
        auto es = cycle_edges(c);
        remove_cycle(rest, es);
        rep.cycles.push_back(canonical_cycle(c));
    };

    // randomized extension of each edge, one attempt batch per edge
    if (ell >= 4 && opts.restarts > 0) {
        for (const auto& e : order) {
            if (!rest.contains(e))
                continue;
            std::array<Vertex, 3> s{e.a, e.b, e.c};
            std::swap(s[1], s[static_cast<std::size_t>(rng.below(3))]);
            try {
                WalkSeq p = assemble({s.begin(), s.end()}, WalkKind::Path);
                WalkSeq c = extend_to_cycle(rest, p, ell, {}, {rng.next(), opts.restarts});
                take(c.vertices());
            } catch (const Error& err) {
                if (err.code() != ErrorCode::NoExtensionAvailable)
                    throw;
            }
        }
    }
    const std::size_t random_cycles = rep.cycles.size();
    rep.stages.push_back({"random-extension", random_cycles, rest.edge_count(), 0, ""});

    // exhaustive pass; an edge with no cycle stays cycle-free as rest shrinks
    CycleSearch cs(rest, ell, opts.dfs_budget);
    std::size_t unverified = 0;
    for (const auto& e : order) {
        while (rest.contains(e)) {
            auto c = cs.through(e);
            rep.stats.nodes += cs.nodes();
            ++rep.stats.iterations;
            if (c) {
                take(*c);
                continue;
            }
            if (cs.budget_hit())
                ++unverified;
            break;
        }
    }
    rep.leftover = rest.edges();
    rep.stats.covered = g.edge_count() - rep.leftover.size();
    rep.stats.delta2 = max_codegree(rest);
    rep.status = rep.leftover.empty() ? DecompStatus::Complete : DecompStatus::Partial;
    rep.stages.push_back({"exhaustive", rep.cycles.size() - random_cycles, rep.leftover.size(), rep.stats.delta2,
                          unverified ? std::to_string(unverified) + " edges unverified (budget)" : "cycle-free"});
    std::sort(rep.cycles.begin(), rep.cycles.end());
    return rep;
}

FractionalResult fractional_decompose(const ThreeGraph& g, std::size_t ell, std::size_t limit, std::size_t exact_limit)
{
    FractionalResult res;
    res.cycles = enumerate_cycles(g, ell, limit);
    const std::vector<Triple> edges = g.edges();
    if (edges.empty()) {
        res.status = DecompStatus::Complete;
        res.exact = true;
        return res;
    }
    const std::size_t m = edges.size();
    const std::size_t k = res.cycles.size();
    std::vector<std::vector<std::uint32_t>> incidence(k);
    for (std::size_t j = 0; j < k; ++j)
        for (const auto& t : cycle_edges(res.cycles[j]))
            incidence[j].push_back(static_cast<std::uint32_t>(edge_index(edges, t)));

    auto solve = [&]<class T>(const T& eps) {
        std::vector<std::vector<T>> a(m, std::vector<T>(k, T(0)));
        for (std::size_t j = 0; j < k; ++j)
            for (auto i : incidence[j])
                a[i][j] = T(1);
        auto r = detail::phase_one<T>(std::move(a), std::vector<T>(m, T(1)), eps);
        res.pivots = r.pivots;
        if (!r.feasible)
            return false;
        res.weights.resize(k);
        for (std::size_t j = 0; j < k; ++j)
            res.weights[j] = static_cast<double>(r.x[j]);
        return true;
    };
    bool ok;
    if (k <= exact_limit) {
        res.exact = true;
        ok = solve(boost::multiprecision::cpp_rational(0));
    } else {
        ok = solve(1e-9);
    }
    if (!ok) {
        res.status = DecompStatus::Infeasible;
        return res;
    }
    std::vector<double> sum(m, 0.0);
    for (std::size_t j = 0; j < k; ++j)
        for (auto i : incidence[j])
            sum[i] += res.weights[j];
    for (double s : sum)
        res.max_violation = std::max(res.max_violation, std::abs(s - 1.0));
    res.status = DecompStatus::Complete;
    return res;
}

namespace {

class P3Search {
public:
    P3Search(const Graph2& g, std::uint64_t budget) : g_(g), budget_(budget), used_(g.edge_count(), 0)
    {
        adj_.resize(g.n());
        const auto& es = g.edges();
        for (std::size_t i = 0; i < es.size(); ++i) {
            adj_[es[i].u].push_back({es[i].v, i});
            adj_[es[i].v].push_back({es[i].u, i});
        }
    }

    // 1 found, 0 exhausted, -1 budget
    int run()
    {
        first_free_ = 0;
        return search();
    }
    const std::vector<P3Path>& paths() const { return paths_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    struct Nb {
        Vertex w;
        std::size_t id;
    };

    int search()
    {
        std::size_t e = first_free_;
        while (e < used_.size() && used_[e])
            ++e;
        if (e == used_.size())
            return 1;
        const std::size_t saved = first_free_;
        first_free_ = e;
        const Vertex u = g_.edges()[e].u;
        const Vertex v = g_.edges()[e].v;
        std::vector<std::array<std::size_t, 3>> ids;
        std::vector<P3Path> cands;
        // e as an end edge: a-b-c-d with {a,b} = {u,v}
        for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}})
            for (const auto& bc : adj_[b]) {
                if (used_[bc.id] || bc.w == a)
                    continue;
                for (const auto& cd : adj_[bc.w]) {
                    if (used_[cd.id] || cd.w == a || cd.w == b)
                        continue;
                    cands.push_back({a, b, bc.w, cd.w});
                    ids.push_back({e, bc.id, cd.id});
                }
            }
        // e in the middle: c-u-v-d
        for (const auto& uc : adj_[u]) {
            if (used_[uc.id] || uc.w == v)
                continue;
            for (const auto& vd : adj_[v]) {
                if (used_[vd.id] || vd.w == u || vd.w == uc.w)
                    continue;
                cands.push_back({uc.w, u, v, vd.w});
                ids.push_back({uc.id, e, vd.id});
            }
        }
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (++nodes_ > budget_) {
                first_free_ = saved;
                return -1;
            }
            for (auto id : ids[i])
                used_[id] = 1;
            paths_.push_back(cands[i]);
            int r = search();
            if (r != 0)
                return r;
            paths_.pop_back();
            for (auto id : ids[i])
                used_[id] = 0;
        }
        first_free_ = saved;
        return 0;
    }

    const Graph2& g_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<char> used_;
    std::vector<std::vector<Nb>> adj_;
    std::vector<P3Path> paths_;
    std::size_t first_free_ = 0;
};

} // namespace

P3Result p3_decompose(const Graph2& g, std::uint64_t budget)
{
    P3Result res;
    if (g.edge_count() % 3 != 0) {
        res.status = DecompStatus::Infeasible;
        return res;
    }
    P3Search s(g, budget);
    int r = s.run();
    res.nodes = s.nodes();
    if (r == 1) {
        res.status = DecompStatus::Complete;
        res.paths = s.paths();
    } else {
        res.status = r == 0 ? DecompStatus::Infeasible : DecompStatus::BudgetExceeded;
    }
    return res;
}

} // namespace h3
