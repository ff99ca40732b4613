// Independent test oracles. Everything here is deliberately brute force and
// must stay decoupled from the library's own computation paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "fbsplit/linear_map.hpp"
#include "fbsplit/problem.hpp"
#include "fbsplit/vector_ops.hpp"

namespace fbsplit::oracles {

/// Minimize f(y) = t|y| + (w/2)(y - x)^2 by coarse grid search followed by
/// ternary refinement of the bracketing interval down to 1e-8.
inline double scalar_prox_oracle(double x, double t, double w, double grid_step = 1e-4) {
    const double lo = std::min(x, 0.0) - 1.0;
    const double hi = std::max(x, 0.0) + 1.0;
    const auto f = [&](double y) { return t * std::abs(y) + 0.5 * w * (y - x) * (y - x); };

    double best_y = lo, best_f = f(lo);
    const long steps = static_cast<long>(std::ceil((hi - lo) / grid_step));
    for (long i = 1; i <= steps; ++i) {
        const double y = lo + static_cast<double>(i) * grid_step;
        const double v = f(y);
        if (v < best_f) { best_f = v; best_y = y; }
    }
    // ternary search on the convex objective around the grid winner
    double a = best_y - grid_step, b = best_y + grid_step;
    while (b - a > 1e-8) {
        const double m1 = a + (b - a) / 3.0;
        const double m2 = b - (b - a) / 3.0;
        if (f(m1) < f(m2)) b = m2; else a = m1;
    }
    return 0.5 * (a + b);
}

/// Materialize any LinearMap as an explicit dense matrix by probing with
/// basis vectors.
inline DenseMap materialize(const LinearMap& A) {
    const std::size_t n = A.dim_in(), m = A.dim_out();
    std::vector<double> entries(m * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        Vector e(n, 0.0);
        e[j] = 1.0;
        const Vector col = A.apply(e);
        for (std::size_t i = 0; i < m; ++i) entries[i * n + j] = col[i];
    }
    return DenseMap(m, n, std::move(entries));
}

/// Central finite differences of h(x) = 1/2 |Ax - b|^2.
inline Vector finite_difference_gradient(const SmoothTerm& h, const Vector& x,
                                         double step = 1e-6) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        Vector xp = x, xm = x;
        xp[i] += step;
        xm[i] -= step;
        g[i] = (h.value(xp) - h.value(xm)) / (2.0 * step);
    }
    return g;
}

}  // namespace fbsplit::oracles
