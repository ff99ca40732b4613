#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbsplit {

/// Dense real coordinate vector, the ambient space element.
using Vector = std::vector<double>;

inline void require_same_dim(const Vector& x, const Vector& y, const char* where) {
    if (x.size() != y.size())
        throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
}

inline bool all_finite(const Vector& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

inline double dot(const Vector& x, const Vector& y) {
    require_same_dim(x, y, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double norm2(const Vector& x) { return std::sqrt(dot(x, x)); }

inline Vector add(const Vector& x, const Vector& y) {
    require_same_dim(x, y, "add");
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

inline Vector sub(const Vector& x, const Vector& y) {
    require_same_dim(x, y, "sub");
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

inline Vector scale(double a, const Vector& x) {
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i];
    return r;
}

/// r = a*x + b*y
inline Vector lincomb(double a, const Vector& x, double b, const Vector& y) {
    require_same_dim(x, y, "lincomb");
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i] + b * y[i];
    return r;
}

inline double norm1(const Vector& x) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
}

inline double norm_inf(const Vector& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace fbsplit
