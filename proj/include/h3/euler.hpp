#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "h3/core.hpp"
#include "h3/decomposer.hpp"
#include "h3/walks.hpp"

namespace h3 {

struct SpanningTrail {
    WalkSeq trail;
    std::size_t delta2 = 0; // max codegree of the trail's edge set
    std::uint64_t nodes = 0;
};

// Trail in which every pair of non-isolated vertices occurs consecutively,
// threaded pair by pair through connectors of at most one middle vertex.
// Throws ConstructionFailed.
SpanningTrail spanning_trail(const ThreeGraph& g, std::uint64_t seed = 0, std::uint64_t budget = 200000);

struct EulerResult {
    DecompStatus status = DecompStatus::Infeasible; // Complete, Infeasible or BudgetExceeded
    std::optional<WalkSeq> tour;
    std::uint64_t nodes = 0;
};

// Backtracking search over tours that start with the least edge. Needs
// |E| <= 60 (BadParams otherwise).
EulerResult exact_euler(const ThreeGraph& g, std::uint64_t budget = 50000000);

// w is a tour of g using every edge exactly once.
bool verify_euler(const ThreeGraph& g, const WalkSeq& w);

struct EulerOptions {
    std::uint64_t trail_budget = 200000;
    std::uint64_t cover_budget = 2000000;
    unsigned attempts = 4;           // seeds tried for the spanning-trail route
    std::size_t trails_per_attempt = 4096; // spanning trails tried per seed
    std::size_t exact_fallback = 60; // exact search when |E| is at most this
};

// Spanning trail, closed to a tour with at most three extra vertices; the
// rest is decomposed into cycles (length ell preferred, other lengths when
// needed) which are spliced in one by one. Throws PreconditionFailed when g
// is not 3-vertex-divisible, ConstructionFailed otherwise.
WalkSeq assemble_euler(const ThreeGraph& g, std::size_t ell, std::uint64_t seed, const EulerOptions& opts = {});

} // namespace h3
