#pragma once

#include <stdexcept>

#include "fbsplit/preconditioner.hpp"
#include "fbsplit/vector_ops.hpp"

namespace fbsplit {

inline double soft_threshold(double x, double phi) {
    if (x > phi) return x - phi;
    if (x < -phi) return x + phi;
    return 0.0;
}

/// Proximal operator of phi * |.|_1, coordinate-wise shrinkage.
inline Vector soft_threshold(const Vector& x, double phi) {
    if (phi < 0.0) throw std::invalid_argument("soft_threshold: phi must be >= 0");
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = soft_threshold(x[i], phi);
    return r;
}

/// Resolvent (I + lambda M^-1 d(rho|.|_1))^-1 for diagonal M: coordinate-wise
/// soft threshold at lambda*rho/M_ii. Exact, since the per-coordinate problem
/// min_y rho|y| + (M_ii/2 lambda)(y - x_i)^2 separates.
inline Vector weighted_resolvent_l1(const Vector& x, double lambda, double rho,
                                    const Preconditioner& M) {
    if (!(lambda > 0.0)) throw std::invalid_argument("weighted_resolvent_l1: lambda must be > 0");
    if (rho < 0.0) throw std::invalid_argument("weighted_resolvent_l1: rho must be >= 0");
    require_same_dim(x, M.diag(), "weighted_resolvent_l1");
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = soft_threshold(x[i], lambda * rho / M.entry(i));
    return r;
}

}  // namespace fbsplit
