#pragma once

// Shared state for multi-gadget builds: a growing graph of used edges with
// rollback, the vertices that may not be used, and build parameters.

#include <algorithm>
#include <vector>

#include "h3/core.hpp"
#include "h3/error.hpp"
#include "h3/gadgets.hpp"
#include "h3/pathfinder.hpp"

namespace h3::detail {

struct Workspace {
    Workspace(const ThreeGraph& host_, ThreeGraph used_, std::size_t ell_, const GadgetOptions& opts)
        : host(host_), used(std::move(used_)), forbidden(host_.n()), ell(ell_), restarts(opts.restarts),
          retries(std::max(1U, opts.retries))
    {
        if (used.n() != host.n())
            fail(ErrorCode::BadParams, "avoid graph has a different vertex count");
        if (opts.forbidden)
            forbidden |= *opts.forbidden;
    }

    const ThreeGraph& host;
    ThreeGraph used;
    VertexSet forbidden;
    std::size_t ell;
    unsigned restarts;
    unsigned retries;
    std::vector<Triple> log;

    std::size_t mark() const { return log.size(); }
    void rollback(std::size_t m)
    {
        while (log.size() > m) {
            used.remove(log.back());
            log.pop_back();
        }
    }
    // Marks an edge used; returns false if it already was.
    bool take(const Triple& t)
    {
        if (!used.add(t))
            return false;
        log.push_back(t);
        return true;
    }
    bool free(const Triple& t) const { return host.contains(t) && !used.contains(t); }
    std::vector<Triple> taken_since(std::size_t m) const
    {
        std::vector<Triple> e(log.begin() + static_cast<std::ptrdiff_t>(m), log.end());
        std::sort(e.begin(), e.end());
        return e;
    }
};

// Builders on a shared workspace. On failure they roll back and throw
// GadgetConstructionFailed.
Gadget s3(Workspace& ws, Vertex v1, Vertex v2, Vertex v3, std::uint64_t seed);
Gadget c4(Workspace& ws, std::array<Vertex, 4> v, std::uint64_t seed);
Gadget p6(Workspace& ws, std::array<Vertex, 6> v, std::uint64_t seed);

} // namespace h3::detail
