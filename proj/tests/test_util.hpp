#pragma once

#include <doctest.h>

#include "h3/core.hpp"
#include "h3/error.hpp"
#include "h3/rng.hpp"

namespace h3::test {

// Runs f and returns the code of the h3::Error it throws.
inline ErrorCode code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::BadParams;
}

// Each triple independently with probability p.
inline ThreeGraph random_graph(std::size_t n, double p, std::uint64_t seed)
{
    Rng rng(seed);
    ThreeGraph g(n);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c)
                if (rng.bernoulli(p))
                    g.add(a, b, c);
    return g;
}

} // namespace h3::test
