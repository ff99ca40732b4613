#include "fbsplit/linear_map.hpp"

#include <cmath>
#include <stdexcept>

#include "fbsplit/rng.hpp"

namespace fbsplit {

DenseMap::DenseMap(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0)
        throw std::invalid_argument("DenseMap: dimensions must be positive");
    if (entries_.size() != rows_ * cols_)
        throw std::invalid_argument("DenseMap: entry count does not match dimensions");
}

DenseMap DenseMap::identity(std::size_t dim) {
    std::vector<double> e(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
    return DenseMap(dim, dim, std::move(e));
}

DenseMap DenseMap::diagonal(const Vector& diag) {
    const std::size_t dim = diag.size();
    std::vector<double> e(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = diag[i];
    return DenseMap(dim, dim, std::move(e));
}

Vector DenseMap::apply(const Vector& x) const {
    if (x.size() != cols_)
        throw std::invalid_argument("DenseMap::apply: dimension mismatch");
    Vector r(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        const double* row = entries_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
        r[i] = s;
    }
    return r;
}

Vector DenseMap::apply_adjoint(const Vector& y) const {
    if (y.size() != rows_)
        throw std::invalid_argument("DenseMap::apply_adjoint: dimension mismatch");
    Vector r(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* row = entries_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) r[j] += row[j] * y[i];
    }
    return r;
}

namespace {

Vector random_unit_vector(std::size_t dim, Rng& rng) {
    Vector v(dim);
    for (auto& c : v) c = rng.next_uniform() - 0.5;
    double n = norm2(v);
    if (n == 0.0) {  // astronomically unlikely; one re-draw then give up
        for (auto& c : v) c = rng.next_uniform() - 0.5;
        n = norm2(v);
        if (n == 0.0)
            throw std::runtime_error("estimate_operator_norm: degenerate start vector");
    }
    return scale(1.0 / n, v);
}

}  // namespace

double estimate_operator_norm(const LinearMap& A, int max_iters, double tol,
                              std::uint64_t seed) {
    if (max_iters < 1) throw std::invalid_argument("estimate_operator_norm: max_iters >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("estimate_operator_norm: tol > 0");

    Rng rng(seed);
    Vector v = random_unit_vector(A.dim_in(), rng);
    double rayleigh = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        Vector w = A.apply_adjoint(A.apply(v));  // A^T A v
        const double next = dot(v, w);           // Rayleigh quotient, |v| = 1
        const double wn = norm2(w);
        if (wn == 0.0) return 0.0;  // v in the kernel of A
        v = scale(1.0 / wn, w);
        const double change = std::abs(next - rayleigh);
        rayleigh = next;
        if (it > 0 && change <= tol * std::max(1.0, std::abs(rayleigh))) break;
    }
    return std::sqrt(std::max(rayleigh, 0.0));
}

double adjoint_defect(const LinearMap& A, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("adjoint_defect: trials >= 1");
    Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Vector x(A.dim_in()), y(A.dim_out());
        for (auto& c : x) c = 2.0 * rng.next_uniform() - 1.0;
        for (auto& c : y) c = 2.0 * rng.next_uniform() - 1.0;
        const double lhs = dot(A.apply(x), y);
        const double rhs = dot(x, A.apply_adjoint(y));
        const double defect = std::abs(lhs - rhs) / (1.0 + norm2(x) * norm2(y));
        worst = std::max(worst, defect);
    }
    return worst;
}

}  // namespace fbsplit
