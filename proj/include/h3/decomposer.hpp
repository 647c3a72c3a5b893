#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "h3/core.hpp"
#include "h3/walks.hpp"

namespace h3 {

using Cycle = std::vector<Vertex>;

enum class DecompStatus { Complete, Partial, Infeasible, BudgetExceeded };
const char* to_string(DecompStatus s);

struct StageLog {
    std::string name;
    std::size_t cycles = 0;   // cycles added by the stage
    std::size_t leftover = 0; // edges left after the stage
    std::size_t delta2 = 0;   // max codegree of that leftover
    std::string note;
};

struct DecompositionStats {
    std::size_t covered = 0;
    std::size_t delta2 = 0; // max codegree of the leftover
    std::size_t iterations = 0;
    std::uint64_t seed = 0;
    std::uint64_t nodes = 0; // search nodes (exact solvers)
};

// cycles (canonical form) and leftover partition the input edges.
struct DecompositionReport {
    std::size_t ell = 0; // 0 when cycle lengths are mixed
    DecompStatus status = DecompStatus::Partial;
    std::vector<Cycle> cycles;
    std::vector<Triple> leftover; // sorted
    DecompositionStats stats;
    std::vector<StageLog> stages;
};

// All l-cycles of g, each as its least rotation/reflection, sorted.
// Throws LimitExceeded when there are more than `limit`.
std::vector<Cycle> enumerate_cycles(const ThreeGraph& g, std::size_t ell, std::size_t limit = 1000000);

// Edge set of a cycle, sorted.
std::vector<Triple> cycle_edges(const Cycle& c);

// Exact cover by l-cycles. Infeasible means the search space was exhausted
// (or g is not C_l-divisible); `budget` bounds search nodes.
DecompositionReport exact_decompose(const ThreeGraph& g, std::size_t ell, std::uint64_t budget = 10000000);

// Exact cover by tight cycles with lengths in [min_len, max_len]; g must be
// 3-vertex-divisible (Infeasible otherwise). Reports ell = 0.
DecompositionReport mixed_cycle_cover(const ThreeGraph& g, std::size_t min_len, std::size_t max_len,
                                      std::uint64_t budget = 10000000);

// Cycles are valid tight cycles of g, pairwise edge-disjoint, covering E(g).
bool validate_decomposition(const ThreeGraph& g, const std::vector<Cycle>& cycles);
bool validate_decomposition(const ThreeGraph& g, const std::vector<WalkSeq>& cycles);

// Cycles are valid l-cycles of g (any length when ell is 0) and cycles plus
// leftover partition E(g).
bool check_accounting(const ThreeGraph& g, const DecompositionReport& rep);

// Some l-cycle of g contains e (exhaustive, node-bounded; -1 = budget hit).
int edge_in_cycle(const ThreeGraph& g, const Triple& e, std::size_t ell, std::uint64_t budget = 2000000);
// True when g has no l-cycle; checked edge by edge.
bool is_cycle_free(const ThreeGraph& g, std::size_t ell, std::uint64_t budget_per_edge = 2000000);

struct GreedyOptions {
    unsigned restarts = 16;          // randomized extension attempts per edge
    std::uint64_t dfs_budget = 2000000; // exhaustive search nodes per edge
    // Edges with a smaller key are tried first (seeded order within a key).
    std::function<int(const Triple&)> priority;
};

// Removes l-cycles until none is left. The leftover is l-cycle-free unless
// stats.iterations reports edges whose search hit the budget (stage note).
DecompositionReport greedy_pack(const ThreeGraph& g, std::size_t ell, std::uint64_t seed,
                                const GreedyOptions& opts = {});

struct FractionalResult {
    DecompStatus status = DecompStatus::Infeasible; // Complete = feasible
    std::vector<Cycle> cycles;
    std::vector<double> weights;
    bool exact = false;          // rational arithmetic was used
    double max_violation = 0.0;  // max |sum over cycles at an edge - 1|
    std::size_t pivots = 0;
};

// Nonnegative weights on l-cycles summing to 1 at every edge, by phase-one
// simplex; rational arithmetic up to `exact_limit` cycles.
FractionalResult fractional_decompose(const ThreeGraph& g, std::size_t ell, std::size_t limit = 100000,
                                      std::size_t exact_limit = 5000);

using P3Path = std::array<Vertex, 4>;

struct P3Result {
    DecompStatus status = DecompStatus::Infeasible;
    std::vector<P3Path> paths;
    std::uint64_t nodes = 0;
};

// Partition of a 2-graph into paths with three edges.
P3Result p3_decompose(const Graph2& g, std::uint64_t budget = 10000000);

struct WellBehavedParams {
    double gamma = 0.5;           // reserve probability is gamma/4
    double bad_vertex_frac = 0.25; // bad vertex: leftover degree >= frac * n^2
    double bad_pair_frac = 0.5;    // bad pair: leftover codegree >= frac * n
    double mu = 1.0;               // extender codegree budget
    unsigned restarts = 64;
    GreedyOptions greedy;
};

// Greedy packing corrected at bad vertices and bad pairs, then a final
// greedy sweep, so the leftover is l-cycle-free.
DecompositionReport well_behaved_pack(const ThreeGraph& g, std::size_t ell, std::uint64_t seed,
                                      const WellBehavedParams& params = {});

struct Vortex {
    std::vector<VertexSet> levels; // U_0 = V(H) first
    double delta = 0.0;            // density guaranteed by the checks
    double xi = 0.0;
    std::size_t m = 0; // size of the last level
};

struct VortexCheck {
    bool ok = true;
    std::vector<std::string> failures; // "V4 level 2 vertex 17", ...
};

// Level sizes n_i = floor(xi n_{i-1}) down to the first size below m'.
std::vector<std::size_t> vortex_sizes(std::size_t n, double xi, std::size_t m_prime);

// Random nested sets satisfying V1-V5 with density delta - xi. Throws
// VortexFailed(level) when `retries` samples of a level all fail.
Vortex build_vortex(const ThreeGraph& g, double delta, double xi, std::size_t m_prime, std::uint64_t seed,
                    unsigned retries = 50);
VortexCheck check_vortex(const ThreeGraph& g, const Vortex& v, double density);

struct CoverDownParams {
    double eps = 0.25;
    double mu = 1.0;
    double p1 = 0.02; // type-1 reserve probability is 3 p1 / 2
    double p2 = 0.04; // type-2 reserve probability is 3 p2 / 2
    WellBehavedParams pack;
    unsigned restarts = 256;
    std::uint64_t p3_budget = 2000000;
};

struct CoverDownResult {
    ThreeGraph f;              // union of the cycles
    DecompositionReport report; // cycles of F; leftover = g minus F
    std::size_t uncovered_outside = 0; // edges of g - g[U] not in F
    std::size_t delta2_inside = 0;     // max codegree of F[U]
};

// C_l-decomposable F covering g - g[U]. Throws PreconditionFailed if some
// vertex outside U has degree not divisible by 3.
CoverDownResult cover_down(const ThreeGraph& g, const VertexSet& u, std::size_t ell, std::uint64_t seed,
                           const CoverDownParams& params = {});

struct PipelineParams {
    double xi = 0.25;
    std::size_t m_prime = 20;
    unsigned vortex_retries = 50;
    std::size_t absorber_max_m = 5; // absorbers only when the last level is this small
    CoverDownParams cover;
    std::uint64_t exact_budget = 200000;
};

// Vortex, absorbers for the last level, iterated cover-down, and an exact
// finisher. Throws PreconditionFailed if g is not C_l-divisible.
DecompositionReport full_pipeline(const ThreeGraph& g, std::size_t ell, std::uint64_t seed,
                                  const PipelineParams& params = {});

} // namespace h3
