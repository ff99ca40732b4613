#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fbsplit/vector_ops.hpp"

namespace fbsplit {

/// Behavioral interface for a linear operator A together with its adjoint.
class LinearMap {
public:
    virtual ~LinearMap() = default;
    virtual std::size_t dim_in() const = 0;
    virtual std::size_t dim_out() const = 0;
    virtual Vector apply(const Vector& x) const = 0;
    virtual Vector apply_adjoint(const Vector& y) const = 0;
};

/// Dense row-major matrix realization.
class DenseMap final : public LinearMap {
public:
    DenseMap(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMap identity(std::size_t dim);
    static DenseMap diagonal(const Vector& diag);

    std::size_t dim_in() const override { return cols_; }
    std::size_t dim_out() const override { return rows_; }
    Vector apply(const Vector& x) const override;
    Vector apply_adjoint(const Vector& y) const override;

    double at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    double& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

private:
    std::size_t rows_, cols_;
    std::vector<double> entries_;
};

/// Dense map with an independently supplied adjoint matrix. Exists so tests
/// can feed adjoint_defect a deliberately wrong transpose.
class DenseMapWithAdjoint final : public LinearMap {
public:
    DenseMapWithAdjoint(DenseMap forward, DenseMap adjoint)
        : forward_(std::move(forward)), adjoint_(std::move(adjoint)) {}

    std::size_t dim_in() const override { return forward_.dim_in(); }
    std::size_t dim_out() const override { return forward_.dim_out(); }
    Vector apply(const Vector& x) const override { return forward_.apply(x); }
    Vector apply_adjoint(const Vector& y) const override { return adjoint_.apply(y); }

private:
    DenseMap forward_, adjoint_;
};

/// Operator 2-norm estimate by power iteration on A^T A with a seeded start.
/// Deterministic for a fixed seed.
double estimate_operator_norm(const LinearMap& A, int max_iters = 1000,
                              double tol = 1e-8, std::uint64_t seed = 12345);

/// max over seeded random pairs (x, y) of
/// |<Ax, y> - <x, A^T y>| / (1 + |x||y|).
double adjoint_defect(const LinearMap& A, int trials, std::uint64_t seed = 12345);

}  // namespace fbsplit
