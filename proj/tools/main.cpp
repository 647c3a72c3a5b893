// h3: command-line front end. Exit codes: 0 success, 1 usage or input
// error, 2 infeasible / certified impossible / construction gave up,
// 3 budget exceeded.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "h3/core.hpp"
#include "h3/counterexample.hpp"
#include "h3/decomposer.hpp"
#include "h3/error.hpp"
#include "h3/euler.hpp"
#include "h3/gadgets.hpp"
#include "h3/rng.hpp"
#include "h3/tour_trail.hpp"
#include "json_out.hpp"

namespace fs = std::filesystem;
using namespace h3;
using h3::cli::Json;
using h3::cli::to_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_infeasible = 2;
constexpr int exit_budget = 3;

struct Config {
    std::string in;
    std::string out;
    std::string cert;
    std::string host;
    std::string partition;
    std::string divisibility = "vertex3";
    std::string u;
    std::size_t host_n = 0;
    std::size_t reservoir = 0; // 0 = two thirds of the vertices outside V(r)
    std::size_t ell = 0;
    std::size_t n = 0;
    std::size_t k = 1;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0; // 0 = the operation's default
    std::size_t runs = 1;
    unsigned jobs = 1;
    double gamma = 0.5;
    double xi = 0.25;
    double delta = -1.0;
    double p = 0.9;
    std::size_t m_prime = 20;
    unsigned retries = 50;
    bool regular = false;
    bool exact = false;
    bool eliminate = false;
};

int exit_for(DecompStatus s)
{
    switch (s) {
    case DecompStatus::Complete:
    case DecompStatus::Partial:
        return exit_ok;
    case DecompStatus::Infeasible:
        return exit_infeasible;
    case DecompStatus::BudgetExceeded:
        return exit_budget;
    }
    return exit_usage;
}

int exit_for(ErrorCode c)
{
    switch (c) {
    case ErrorCode::BadParams:
    case ErrorCode::ParseError:
    case ErrorCode::OutOfRange:
        return exit_usage;
    case ErrorCode::BudgetExceeded:
    case ErrorCode::LimitExceeded:
    case ErrorCode::IterationBudgetExceeded:
    case ErrorCode::CodegreeBudgetExceeded:
        return exit_budget;
    default:
        return exit_infeasible;
    }
}

void emit(const Config& cfg, const Json& j)
{
    const std::string text = j.dump() + "\n";
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f)
        fail(ErrorCode::ParseError, "cannot write " + cfg.out);
    f << text;
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        fail(ErrorCode::ParseError, "cannot write " + path);
    f << j.dump() << "\n";
}

// Certificate path next to a .3g output: x.3g -> x.json.
std::string sidecar(const Config& cfg)
{
    if (!cfg.cert.empty())
        return cfg.cert;
    return fs::path(cfg.out).replace_extension(".json").string();
}

ThreeGraph input_graph(const Config& cfg)
{
    if (cfg.in.empty())
        fail(ErrorCode::BadParams, "--in is required");
    return load_3g(cfg.in);
}

// Complete host on --host-n vertices or the graph in --host, with the
// input re-embedded on the host's vertex count.
std::pair<ThreeGraph, ThreeGraph> host_and_input(const Config& cfg)
{
    ThreeGraph r = input_graph(cfg);
    ThreeGraph host;
    if (!cfg.host.empty())
        host = load_3g(cfg.host);
    else if (cfg.host_n > 0)
        host = complete_graph(cfg.host_n);
    else
        fail(ErrorCode::BadParams, "--host or --host-n is required");
    if (r.n() > host.n())
        fail(ErrorCode::BadParams, "input has more vertices than the host");
    return {host, build_graph(host.n(), r.edges())};
}

std::size_t need_ell(const Config& cfg)
{
    if (cfg.ell == 0)
        fail(ErrorCode::BadParams, "--ell is required");
    return cfg.ell;
}

DivisibilityKind parse_divisibility(const std::string& s)
{
    if (s == "vertex3")
        return DivisibilityKind::vertex3();
    if (s == "k43")
        return DivisibilityKind::k43();
    if (s.rfind("cycle:", 0) == 0) {
        try {
            return DivisibilityKind::cycle(std::stoul(s.substr(6)));
        } catch (const std::logic_error&) {
        }
    }
    fail(ErrorCode::BadParams, "divisibility must be vertex3, k43 or cycle:<l>");
}

// "0-14,20,22" on n vertices.
VertexSet parse_vertex_set(const std::string& s, std::size_t n)
{
    VertexSet out(n);
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty())
            continue;
        try {
            auto dash = part.find('-');
            std::size_t lo = std::stoul(part.substr(0, dash));
            std::size_t hi = dash == std::string::npos ? lo : std::stoul(part.substr(dash + 1));
            if (hi >= n || lo > hi)
                fail(ErrorCode::BadParams, "vertex range " + part + " out of range");
            for (std::size_t v = lo; v <= hi; ++v)
                out.set(static_cast<Vertex>(v));
        } catch (const std::logic_error&) {
            fail(ErrorCode::BadParams, "bad vertex list " + s);
        }
    }
    return out;
}

using Run = std::pair<Json, int>;

Run report_run(const DecompositionReport& r)
{
    return {to_json(r), exit_for(r.status)};
}

// Runs f for seeds seed..seed+runs-1 on up to `jobs` threads; the results
// keep seed order. One run gives the object itself, several an array and
// the worst exit code.
Json sweep(const Config& cfg, const std::function<Run(std::uint64_t)>& f, int& code)
{
    if (cfg.runs == 1) {
        auto [j, c] = f(cfg.seed);
        code = c;
        return j;
    }
    std::vector<Json> results(cfg.runs);
    std::vector<int> codes(cfg.runs, exit_ok);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cfg.runs; i = next++) {
            try {
                std::tie(results[i], codes[i]) = f(cfg.seed + i);
            } catch (const Error& e) {
                codes[i] = exit_for(e.code());
                results[i] = Json{{"seed", cfg.seed + i}, {"error", to_string(e.code())}, {"message", e.what()}};
            }
        }
    };
    const unsigned threads = std::max(1U, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cfg.runs)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    code = *std::max_element(codes.begin(), codes.end());
    return Json(results);
}

// ---- subcommands ---------------------------------------------------------

int cmd_gen_hn(const Config& cfg)
{
    if (cfg.out.empty())
        fail(ErrorCode::BadParams, "--out is required");
    LabelledGraph h = build_Hn(cfg.k);
    save_3g(cfg.out, h.graph);
    write_json_file(sidecar(cfg),
                    Json{{"n", h.graph.n()}, {"k", cfg.k}, {"edges", h.graph.edge_count()},
                         {"min_codegree", min_codegree(h.graph)}, {"partition", to_json(h.partition)}});
    return exit_ok;
}

int cmd_gen_counterexample(const Config& cfg)
{
    if (cfg.out.empty())
        fail(ErrorCode::BadParams, "--out is required");
    if (cfg.regular) {
        if (cfg.n == 0 || cfg.n % 18 != 0)
            fail(ErrorCode::BadParams, "--n must be a positive multiple of 18");
        RegularVariant v = build_regular_variant(cfg.n / 18, cfg.seed);
        save_3g(cfg.out, v.graph);
        Json j = to_json(v.certificate);
        j["n"] = v.graph.n();
        j["regular_degree"] = v.degree;
        j["degrees_before"] = v.degrees_before;
        j["min_codegree"] = min_codegree(v.graph);
        write_json_file(sidecar(cfg), j);
        return exit_ok;
    }
    Counterexample c = build_counterexample(cfg.n, need_ell(cfg));
    save_3g(cfg.out, c.graph);
    Json j = to_json(c.certificate);
    j["n"] = c.graph.n();
    j["ell"] = cfg.ell;
    j["cycle_length"] = c.cycle_length;
    j["min_codegree"] = min_codegree(c.graph);
    j["divisibility"] = to_json(check_divisibility(c.graph, DivisibilityKind::cycle(cfg.ell)));
    write_json_file(sidecar(cfg), j);
    return exit_ok;
}

int cmd_gen_k43(const Config& cfg)
{
    if (cfg.out.empty())
        fail(ErrorCode::BadParams, "--out is required");
    K43Example e = build_K43_example(cfg.k);
    save_3g(cfg.out, e.graph);
    const auto& c = e.certificate;
    write_json_file(sidecar(cfg), Json{{"n", e.graph.n()},
                                       {"g1_order", c.n},
                                       {"g1_degree", c.d},
                                       {"copy_edges", c.copy_edges},
                                       {"needed_edges", c.needed_edges},
                                       {"holds", c.holds()},
                                       {"x1", e.x1},
                                       {"x2", e.x2},
                                       {"min_codegree", min_codegree(e.graph)},
                                       {"divisibility", to_json(check_divisibility(e.graph, DivisibilityKind::k43()))}});
    return exit_ok;
}

int cmd_check(const Config& cfg)
{
    ThreeGraph g = input_graph(cfg);
    auto d = check_divisibility(g, parse_divisibility(cfg.divisibility));
    emit(cfg, Json{{"n", g.n()},
                   {"edges", g.edge_count()},
                   {"min_codegree", min_codegree(g)},
                   {"max_codegree", max_codegree(g)},
                   {"kind", cfg.divisibility},
                   {"divisibility", to_json(d)}});
    return d.ok ? exit_ok : exit_infeasible;
}

int cmd_certify(const Config& cfg)
{
    ThreeGraph g = input_graph(cfg);
    if (cfg.partition.empty())
        fail(ErrorCode::BadParams, "--partition is required");
    std::ifstream f(cfg.partition);
    if (!f)
        fail(ErrorCode::ParseError, "cannot read " + cfg.partition);
    Json pj;
    try {
        pj = Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("partition: ") + e.what());
    }
    CertifyOutcome o = certify_no_tour(g, cli::partition_from_json(pj));
    Json j{{"applicable", o.applicable()}};
    if (o.certificate)
        j["certificate"] = to_json(*o.certificate);
    else {
        j["reason"] = o.inapplicable;
        if (o.mixed_edge)
            j["mixed_edge"] = to_json(*o.mixed_edge);
    }
    emit(cfg, j);
    return o.applicable() && o.certificate->valid() ? exit_infeasible : exit_ok;
}

int cmd_solve_exact(const Config& cfg)
{
    auto r = exact_decompose(input_graph(cfg), need_ell(cfg), cfg.budget ? cfg.budget : 10000000);
    emit(cfg, to_json(r));
    return exit_for(r.status);
}

int cmd_pack_greedy(const Config& cfg)
{
    ThreeGraph g = input_graph(cfg);
    const std::size_t ell = need_ell(cfg);
    int code = exit_ok;
    Json j = sweep(cfg, [&](std::uint64_t s) { return report_run(greedy_pack(g, ell, s)); }, code);
    emit(cfg, j);
    return code;
}

int cmd_pack_wellbehaved(const Config& cfg)
{
    ThreeGraph g = input_graph(cfg);
    const std::size_t ell = need_ell(cfg);
    WellBehavedParams params;
    params.gamma = cfg.gamma;
    int code = exit_ok;
    Json j = sweep(cfg, [&](std::uint64_t s) { return report_run(well_behaved_pack(g, ell, s, params)); }, code);
    emit(cfg, j);
    return code;
}

int cmd_fractional(const Config& cfg)
{
    auto r = fractional_decompose(input_graph(cfg), need_ell(cfg), cfg.budget ? cfg.budget : 100000);
    emit(cfg, to_json(r));
    return exit_for(r.status);
}

int cmd_absorber(const Config& cfg)
{
    auto [host, r] = host_and_input(cfg);
    const std::size_t ell = need_ell(cfg);
    GadgetOptions opts;
    opts.seed = cfg.seed;
    Absorber a = build_absorber(host, r, ell, opts);
    ThreeGraph ag = build_graph(host.n(), a.edges);
    const bool ok_a = certifies(ag, a.cycles, ell);
    const bool ok_ar = certifies(edge_union(ag, r), a.cycles_with_r, ell);
    if (!cfg.cert.empty())
        save_3g(cfg.cert, ag);
    emit(cfg, Json{{"ell", ell},
                   {"r_edges", r.edge_count()},
                   {"absorber_edges", a.edges.size()},
                   {"valid", {{"absorber", ok_a}, {"absorber_with_r", ok_ar}}},
                   {"parts",
                    {{"tour_gadgets", a.tour_gadget_edges},
                     {"merging", a.merge_edges},
                     {"merged_tour", a.merged_tour_edges},
                     {"cycle", a.cycle_edges},
                     {"b", a.b_edges},
                     {"l1", a.l1_edges},
                     {"l2", a.l2_edges}}},
                   {"cycles", to_json(a.cycles)},
                   {"cycles_with_r", to_json(a.cycles_with_r)}});
    return ok_a && ok_ar ? exit_ok : exit_infeasible;
}

ThreeGraph vortex_host(const Config& cfg)
{
    if (!cfg.in.empty())
        return load_3g(cfg.in);
    if (cfg.n == 0)
        fail(ErrorCode::BadParams, "--in or --n is required");
    // each triple independently with probability p, from its own stream
    Rng rng(derive_seed(cfg.seed, 0x686f7374));
    ThreeGraph g(cfg.n);
    for (Vertex a = 0; a < cfg.n; ++a)
        for (Vertex b = a + 1; b < cfg.n; ++b)
            for (Vertex c = b + 1; c < cfg.n; ++c)
                if (rng.bernoulli(cfg.p))
                    g.add(a, b, c);
    return g;
}

int cmd_vortex(const Config& cfg)
{
    ThreeGraph g = vortex_host(cfg);
    const double n = static_cast<double>(g.n());
    const double delta = cfg.delta >= 0 ? cfg.delta : static_cast<double>(min_codegree(g)) / n;
    Vortex v = build_vortex(g, delta, cfg.xi, cfg.m_prime, cfg.seed, cfg.retries);
    VortexCheck chk = check_vortex(g, v, delta - cfg.xi);
    Json sizes = Json::array();
    Json levels = Json::array();
    for (std::size_t i = 0; i < v.levels.size(); ++i) {
        sizes.push_back(v.levels[i].count());
        if (i > 0)
            levels.push_back(v.levels[i].members());
    }
    emit(cfg, Json{{"n", g.n()},
                   {"delta", delta},
                   {"xi", cfg.xi},
                   {"m_prime", cfg.m_prime},
                   {"m", v.m},
                   {"sizes", sizes},
                   {"expected_sizes", vortex_sizes(g.n(), cfg.xi, cfg.m_prime)},
                   {"levels", levels},
                   {"check", {{"ok", chk.ok}, {"failures", chk.failures}}}});
    return chk.ok ? exit_ok : exit_infeasible;
}

int cmd_cover_down(const Config& cfg)
{
    ThreeGraph g = input_graph(cfg);
    if (cfg.u.empty())
        fail(ErrorCode::BadParams, "--u is required");
    VertexSet u = parse_vertex_set(cfg.u, g.n());
    CoverDownParams params;
    params.pack.gamma = cfg.gamma;
    CoverDownResult r = cover_down(g, u, need_ell(cfg), cfg.seed, params);
    Json j = to_json(r.report);
    j["uncovered_outside"] = r.uncovered_outside;
    j["delta2_inside"] = r.delta2_inside;
    j["f_edges"] = r.f.edge_count();
    emit(cfg, j);
    return exit_for(r.report.status);
}

int cmd_pipeline(const Config& cfg)
{
    ThreeGraph g = input_graph(cfg);
    const std::size_t ell = need_ell(cfg);
    PipelineParams params;
    params.xi = cfg.xi;
    params.m_prime = cfg.m_prime;
    params.vortex_retries = cfg.retries;
    params.cover.pack.gamma = cfg.gamma;
    if (cfg.budget)
        params.exact_budget = cfg.budget;
    int code = exit_ok;
    Json j = sweep(cfg, [&](std::uint64_t s) { return report_run(full_pipeline(g, ell, s, params)); }, code);
    emit(cfg, j);
    return code;
}

int cmd_euler(const Config& cfg)
{
    ThreeGraph g = input_graph(cfg);
    if (cfg.exact) {
        EulerResult r = exact_euler(g, cfg.budget ? cfg.budget : 50000000);
        if (!r.tour) {
            std::cerr << "h3: no Euler tour (" << to_string(r.status) << ")\n";
            return exit_for(r.status);
        }
        emit(cfg, to_json(*r.tour));
        return exit_ok;
    }
    WalkSeq t = assemble_euler(g, cfg.ell ? cfg.ell : 9, cfg.seed);
    emit(cfg, to_json(t));
    return exit_ok;
}

int cmd_trace_sea(const Config& cfg)
{
    auto [host, r] = host_and_input(cfg);
    const std::size_t ell = need_ell(cfg);
    // the vertices outside V(r) not given to the reservoir host the gadgets
    std::vector<Vertex> reservoir;
    for (Vertex v = 0; v < host.n(); ++v)
        if (r.degree(v) == 0)
            reservoir.push_back(v);
    const std::size_t keep = cfg.reservoir ? cfg.reservoir : 2 * reservoir.size() / 3;
    if (keep > reservoir.size())
        fail(ErrorCode::BadParams, "--reservoir exceeds the vertices outside V(r)");
    reservoir.resize(keep);
    SeaOptions opts;
    opts.seed = cfg.seed;
    TourTrailDecomposition t = trivial_ttd(r);
    const std::size_t phi0 = phi_potential(t);
    SeaResult s = reduce_to_sea(host, r, t, reservoir, ell, opts);
    Json steps = Json::array();
    for (const auto& st : s.trace)
        steps.push_back(to_json(st));
    Json j{{"ell", ell},
           {"r_edges", r.edge_count()},
           {"phi_initial", phi0},
           {"steps", steps},
           {"sea", is_sea(residual(s.ttd))},
           {"triangles", sea_of_triangles(residual(s.ttd)).triangles.size()},
           {"added_edges", s.added.edge_count()},
           {"added_certified", certifies(s.added, s.cycles, ell)}};
    if (cfg.eliminate) {
        TourResult done = eliminate_triangles(host, r, s, ell, opts);
        j["tours"] = done.ttd.tours.size();
        j["all_tours"] = done.ttd.all_tours();
        j["final_added_edges"] = done.added.edge_count();
    }
    emit(cfg, j);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Tight-cycle decompositions of 3-graphs"};
    app.require_subcommand(1);
    Config cfg;

    auto add_in = [&](CLI::App* c) { c->add_option("--in", cfg.in, "input .3g file"); };
    auto add_out = [&](CLI::App* c) { c->add_option("--out", cfg.out, "output path (default stdout)"); };
    auto add_ell = [&](CLI::App* c) { c->add_option("--ell", cfg.ell, "cycle length"); };
    auto add_seed = [&](CLI::App* c) { c->add_option("--seed", cfg.seed, "64-bit seed (default 0)"); };
    auto add_budget = [&](CLI::App* c) { c->add_option("--budget", cfg.budget, "search node budget"); };
    auto add_sweep = [&](CLI::App* c) {
        c->add_option("--runs", cfg.runs, "seeds seed..seed+runs-1")->check(CLI::PositiveNumber);
        c->add_option("--jobs", cfg.jobs, "threads for --runs")->check(CLI::PositiveNumber);
    };
    auto add_host = [&](CLI::App* c) {
        c->add_option("--host", cfg.host, "host .3g file");
        c->add_option("--host-n", cfg.host_n, "complete host on this many vertices");
    };

    std::map<CLI::App*, std::function<int(const Config&)>> handlers;
    auto sub = [&](const char* name, const char* help, std::function<int(const Config&)> h) {
        CLI::App* c = app.add_subcommand(name, help);
        handlers[c] = std::move(h);
        return c;
    };

    auto* gen_hn = sub("gen-hn", "write H_n (n = 18k) and its partition", cmd_gen_hn);
    gen_hn->add_option("--k", cfg.k, "n = 18k")->check(CLI::PositiveNumber);
    add_out(gen_hn);
    gen_hn->add_option("--cert", cfg.cert, "partition JSON (default: --out with .json)");

    auto* gen_ce = sub("gen-counterexample", "write the counterexample and its certificate", cmd_gen_counterexample);
    gen_ce->add_option("--n", cfg.n, "number of vertices, a multiple of 18");
    add_ell(gen_ce);
    add_out(gen_ce);
    add_seed(gen_ce);
    gen_ce->add_flag("--regular", cfg.regular, "vertex-regular variant");
    gen_ce->add_option("--cert", cfg.cert, "certificate JSON (default: --out with .json)");

    auto* gen_k43 = sub("gen-k43", "write the K4^3-divisible example", cmd_gen_k43);
    gen_k43->add_option("--k", cfg.k, "size parameter")->check(CLI::PositiveNumber);
    add_out(gen_k43);
    gen_k43->add_option("--cert", cfg.cert, "certificate JSON (default: --out with .json)");

    auto* check = sub("check", "divisibility and codegree summary", cmd_check);
    add_in(check);
    add_out(check);
    check->add_option("--divisibility", cfg.divisibility, "vertex3, k43 or cycle:<l>");

    auto* certify = sub("certify-no-tour", "parity certificate against tour decompositions", cmd_certify);
    add_in(certify);
    add_out(certify);
    certify->add_option("--partition", cfg.partition, "JSON with a labels array");

    auto* solve = sub("solve-exact", "exact C_l-decomposition", cmd_solve_exact);
    add_in(solve);
    add_out(solve);
    add_ell(solve);
    add_budget(solve);

    auto* greedy = sub("pack-greedy", "greedy C_l-packing", cmd_pack_greedy);
    add_in(greedy);
    add_out(greedy);
    add_ell(greedy);
    add_seed(greedy);
    add_sweep(greedy);

    auto* wb = sub("pack-wellbehaved", "well-behaved approximate decomposition", cmd_pack_wellbehaved);
    add_in(wb);
    add_out(wb);
    add_ell(wb);
    add_seed(wb);
    add_sweep(wb);
    wb->add_option("--gamma", cfg.gamma, "reserve parameter");

    auto* frac = sub("fractional", "fractional C_l-decomposition", cmd_fractional);
    add_in(frac);
    add_out(frac);
    add_ell(frac);
    add_budget(frac);

    auto* absorber = sub("absorber", "C_l-absorber for the input graph", cmd_absorber);
    add_in(absorber);
    add_out(absorber);
    add_ell(absorber);
    add_seed(absorber);
    add_host(absorber);
    absorber->add_option("--cert", cfg.cert, "write the absorber edges as .3g");

    auto* vortex = sub("vortex", "build and check a vortex", cmd_vortex);
    add_in(vortex);
    add_out(vortex);
    add_seed(vortex);
    vortex->add_option("--n", cfg.n, "random host order when --in is absent");
    vortex->add_option("--p", cfg.p, "random host edge probability");
    vortex->add_option("--delta", cfg.delta, "density (default: min codegree / n)");
    vortex->add_option("--xi", cfg.xi, "level ratio");
    vortex->add_option("--m-prime", cfg.m_prime, "stop below this size");
    vortex->add_option("--retries", cfg.retries, "samples per level");

    auto* cd = sub("cover-down", "cover all edges outside U", cmd_cover_down);
    add_in(cd);
    add_out(cd);
    add_ell(cd);
    add_seed(cd);
    cd->add_option("--u", cfg.u, "vertex list such as 0-14,20");
    cd->add_option("--gamma", cfg.gamma, "reserve parameter of the packing");

    auto* pipe = sub("pipeline", "vortex, absorbers, cover-down and finisher", cmd_pipeline);
    add_in(pipe);
    add_out(pipe);
    add_ell(pipe);
    add_seed(pipe);
    add_budget(pipe);
    add_sweep(pipe);
    pipe->add_option("--xi", cfg.xi, "vortex level ratio");
    pipe->add_option("--m-prime", cfg.m_prime, "vortex stop size");
    pipe->add_option("--retries", cfg.retries, "vortex samples per level");
    pipe->add_option("--gamma", cfg.gamma, "reserve parameter of the packing");

    auto* euler = sub("euler", "Euler tour as a JSON vertex array", cmd_euler);
    add_in(euler);
    add_out(euler);
    add_ell(euler);
    add_seed(euler);
    add_budget(euler);
    euler->add_flag("--exact", cfg.exact, "exhaustive search (at most 60 edges)");

    auto* sea = sub("trace-sea", "sea-of-triangles reduction trace", cmd_trace_sea);
    add_in(sea);
    add_out(sea);
    add_ell(sea);
    add_seed(sea);
    add_host(sea);
    sea->add_option("--reservoir", cfg.reservoir, "fresh vertices for the reductions");
    sea->add_flag("--eliminate", cfg.eliminate, "also pair up the triangles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }
    try {
        for (auto& [c, h] : handlers)
            if (c->parsed())
                return h(cfg);
    } catch (const Error& e) {
        std::cerr << "h3: " << e.what() << "\n";
        return exit_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "h3: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
