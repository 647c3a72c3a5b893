#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "h3/core.hpp"
#include "h3/walks.hpp"

namespace h3 {

// Edge-disjoint tight paths on a common number of vertices.
struct SparseFamily {
    std::vector<WalkSeq> paths;
    double gamma = 0.0;
};

struct SparsityOffender {
    Pair pair;
    unsigned type = 0;
    std::size_t count = 0;
    double bound = 0.0;
};

struct SparsityReport {
    bool ok = true;
    // Largest count/bound ratio over all pairs and types.
    std::optional<SparsityOffender> worst;
};

// For every pair e and r in {0,1,2}: at most gamma * n^(3-r) paths of
// type r for e.
SparsityReport check_gamma_sparse(const std::vector<WalkSeq>& paths, std::size_t n, double gamma);

struct ExtendOptions {
    std::uint64_t seed = 0;
    unsigned restarts = 64;
    bool shuffle = false; // process paths in a seeded random order
    bool lenient = false; // record failures instead of throwing
    std::optional<VertexSet> allowed; // new cycle vertices come from here
};

struct ExtendResult {
    ThreeGraph f;                // union of the cycles
    std::vector<WalkSeq> cycles; // cycles[j] extends paths[source[j]]
    std::vector<std::size_t> source;
    std::vector<std::size_t> failed; // path indices (lenient mode)
    std::vector<std::size_t> delta2; // max codegree of the used reserve after each step
};

// Extends every path of `paths` (all inside h1) to an l-cycle whose other
// edges come from the reserve h2 and avoid reserve edges used earlier.
// Throws CodegreeBudgetExceeded(i) when the used reserve exceeds mu*n before
// path i, NoExtensionAvailable(i) when no extension is found (1-based i).
ExtendResult extend_family(const ThreeGraph& h1, const ThreeGraph& h2, const std::vector<WalkSeq>& paths,
                           std::size_t ell, double mu, const ExtendOptions& opts = {});

} // namespace h3
