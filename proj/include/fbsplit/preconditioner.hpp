#pragma once

#include <cmath>
#include <stdexcept>

#include "fbsplit/vector_ops.hpp"

namespace fbsplit {

/// Diagonal positive-definite operator M. Diagonal structure makes
/// self-adjointness automatic and keeps the l1 resolvent closed-form.
class Preconditioner {
public:
    explicit Preconditioner(Vector diag) : diag_(std::move(diag)) {
        if (diag_.empty())
            throw std::invalid_argument("Preconditioner: dimension must be >= 1");
        for (double d : diag_)
            if (!(d > 0.0) || !std::isfinite(d))
                throw std::invalid_argument(
                    "Preconditioner: diagonal entries must be strictly positive and finite");
    }

    static Preconditioner identity(std::size_t dim) {
        return Preconditioner(Vector(dim, 1.0));
    }

    /// M = c * I
    static Preconditioner scalar(std::size_t dim, double c) {
        return Preconditioner(Vector(dim, c));
    }

    std::size_t dim() const noexcept { return diag_.size(); }
    const Vector& diag() const noexcept { return diag_; }
    double entry(std::size_t i) const { return diag_[i]; }

    Vector apply(const Vector& x) const {
        require_same_dim(x, diag_, "Preconditioner::apply");
        Vector r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) r[i] = diag_[i] * x[i];
        return r;
    }

    Vector apply_inverse(const Vector& x) const {
        require_same_dim(x, diag_, "Preconditioner::apply_inverse");
        Vector r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] / diag_[i];
        return r;
    }

private:
    Vector diag_;
};

/// <x, My> = sum_i x_i M_ii y_i
inline double m_inner(const Vector& x, const Vector& y, const Preconditioner& M) {
    require_same_dim(x, y, "m_inner");
    require_same_dim(x, M.diag(), "m_inner");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * M.entry(i) * y[i];
    return s;
}

inline double m_norm(const Vector& x, const Preconditioner& M) {
    return std::sqrt(m_inner(x, x, M));
}

}  // namespace fbsplit
