#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>

#include "fbsplit/linear_map.hpp"
#include "fbsplit/vector_ops.hpp"

namespace fbsplit {

/// h(x) = 1/2 |Ax - b|^2 with Lipschitz constant of the gradient.
struct SmoothTerm {
    std::shared_ptr<const LinearMap> observation_map;  // A
    Vector observation;                                // b
    double lipschitz = 1.0;                            // L_h >= |A|^2

    SmoothTerm(std::shared_ptr<const LinearMap> A, Vector b, double L)
        : observation_map(std::move(A)), observation(std::move(b)), lipschitz(L) {
        if (!observation_map) throw std::invalid_argument("SmoothTerm: null map");
        if (observation.size() != observation_map->dim_out())
            throw std::invalid_argument("SmoothTerm: observation dimension mismatch");
        if (!(lipschitz > 0.0) || !std::isfinite(lipschitz))
            throw std::invalid_argument("SmoothTerm: lipschitz must be positive and finite");
    }

    double value(const Vector& x) const {
        const Vector r = sub(observation_map->apply(x), observation);
        return 0.5 * dot(r, r);
    }
};

/// g(x) = rho |x|_1.
struct ProxTerm {
    double weight = 0.0;  // rho

    explicit ProxTerm(double rho) : weight(rho) {
        if (weight < 0.0 || !std::isfinite(weight))
            throw std::invalid_argument("ProxTerm: weight must be finite and >= 0");
    }

    double value(const Vector& x) const { return weight * norm1(x); }
};

struct Problem {
    SmoothTerm h;
    ProxTerm g;

    double objective(const Vector& x) const { return h.value(x) + g.value(x); }
};

/// grad h(x) = A^T (Ax - b)
inline Vector grad_least_squares(const SmoothTerm& h, const Vector& x) {
    if (x.size() != h.observation_map->dim_in())
        throw std::invalid_argument("grad_least_squares: dimension mismatch");
    return h.observation_map->apply_adjoint(sub(h.observation_map->apply(x), h.observation));
}

}  // namespace fbsplit
