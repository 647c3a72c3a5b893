#pragma once

// Phase-one simplex for {A x = b, x >= 0} with b >= 0, one artificial
// variable per row and Bland's rule. Artificial columns are not stored:
// once an artificial leaves the basis it never re-enters.

#include <cstddef>
#include <optional>
#include <vector>

namespace h3::detail {

template <class T>
struct PhaseOneResult {
    bool feasible = false;
    std::vector<T> x;
    std::size_t pivots = 0;
};

template <class T>
PhaseOneResult<T> phase_one(std::vector<std::vector<T>> a, std::vector<T> b, const T& eps)
{
    const std::size_t m = a.size();
    const std::size_t k = m == 0 ? 0 : a.front().size();
    PhaseOneResult<T> res;
    // basis[i] >= k marks the artificial of row i
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i)
        basis[i] = k + i;
    // reduced costs of sum(artificials); z = -sum b
    std::vector<T> cost(k, T(0));
    T z(0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            cost[j] -= a[i][j];
        z -= b[i];
    }
    for (;;) {
        std::optional<std::size_t> enter;
        for (std::size_t j = 0; j < k; ++j)
            if (cost[j] < -eps) {
                enter = j;
                break;
            }
        if (!enter)
            break;
        const std::size_t j = *enter;
        std::optional<std::size_t> leave;
        T best(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (!(a[i][j] > eps))
                continue;
            T ratio = b[i] / a[i][j];
            if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (!leave)
            break; // unbounded direction; cannot happen for a bounded phase one
        const std::size_t r = *leave;
        const T piv = a[r][j];
        for (std::size_t c = 0; c < k; ++c)
            a[r][c] /= piv;
        b[r] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r)
                continue;
            const T f = a[i][j];
            if (f == T(0))
                continue;
            for (std::size_t c = 0; c < k; ++c)
                if (a[r][c] != T(0))
                    a[i][c] -= f * a[r][c];
            b[i] -= f * b[r];
        }
        const T f = cost[j];
        for (std::size_t c = 0; c < k; ++c)
            if (a[r][c] != T(0))
                cost[c] -= f * a[r][c];
        z -= f * b[r];
        basis[r] = j;
        ++res.pivots;
    }
    res.feasible = !(z < -eps);
    res.x.assign(k, T(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < k)
            res.x[basis[i]] = b[i];
    return res;
}

} // namespace h3::detail
