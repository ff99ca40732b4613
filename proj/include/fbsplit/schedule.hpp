#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbsplit {

/// Parameter sequence evaluated lazily by 1-based iteration index.
/// Custom lists clamp to their last value beyond the end.
class Schedule {
public:
    enum class Kind { Constant, Harmonic, ScaledHarmonic, CustomList };

    static Schedule constant(double c) { return Schedule(Kind::Constant, {c}); }

    /// c / n
    static Schedule harmonic(double c) { return Schedule(Kind::Harmonic, {c}); }

    /// c / (n + shift)
    static Schedule scaled_harmonic(double c, double shift) {
        return Schedule(Kind::ScaledHarmonic, {c, shift});
    }

    static Schedule custom(std::vector<double> values) {
        if (values.empty()) throw std::invalid_argument("Schedule: empty custom list");
        return Schedule(Kind::CustomList, std::move(values));
    }

    Kind kind() const noexcept { return kind_; }

    double value(long n) const {
        if (n < 1) throw std::invalid_argument("Schedule: index starts at 1");
        switch (kind_) {
            case Kind::Constant: return params_[0];
            case Kind::Harmonic: return params_[0] / static_cast<double>(n);
            case Kind::ScaledHarmonic:
                return params_[0] / (static_cast<double>(n) + params_[1]);
            case Kind::CustomList: {
                const std::size_t i = static_cast<std::size_t>(n - 1);
                return i < params_.size() ? params_[i] : params_.back();
            }
        }
        return 0.0;  // unreachable
    }

    /// True when the sequence provably tends to 0.
    bool limit_is_zero() const {
        switch (kind_) {
            case Kind::Constant: return params_[0] == 0.0;
            case Kind::Harmonic:
            case Kind::ScaledHarmonic: return true;
            case Kind::CustomList: return params_.back() == 0.0;
        }
        return false;
    }

    /// True when the partial sums provably diverge.
    bool sum_diverges() const {
        switch (kind_) {
            case Kind::Constant: return params_[0] > 0.0;
            case Kind::Harmonic:
            case Kind::ScaledHarmonic: return params_[0] > 0.0;
            case Kind::CustomList: return params_.back() > 0.0;
        }
        return false;
    }

    /// Conservative bounds over all emitted values.
    double min_value() const {
        switch (kind_) {
            case Kind::Constant: return params_[0];
            case Kind::Harmonic:
            case Kind::ScaledHarmonic: return params_[0] > 0.0 ? 0.0 : params_[0];
            case Kind::CustomList: {
                double m = params_[0];
                for (double v : params_) m = std::min(m, v);
                return m;
            }
        }
        return 0.0;
    }

    double max_value() const {
        switch (kind_) {
            case Kind::Constant: return params_[0];
            case Kind::Harmonic: return params_[0];
            case Kind::ScaledHarmonic: return params_[0] / (1.0 + params_[1]);
            case Kind::CustomList: {
                double m = params_[0];
                for (double v : params_) m = std::max(m, v);
                return m;
            }
        }
        return 0.0;
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::Constant: return "const:" + std::to_string(params_[0]);
            case Kind::Harmonic: return "harmonic:" + std::to_string(params_[0]);
            case Kind::ScaledHarmonic:
                return "scaled-harmonic:" + std::to_string(params_[0]) + "," +
                       std::to_string(params_[1]);
            case Kind::CustomList: return "list[" + std::to_string(params_.size()) + "]";
        }
        return "";
    }

private:
    Schedule(Kind kind, std::vector<double> params)
        : kind_(kind), params_(std::move(params)) {
        for (double v : params_)
            if (!std::isfinite(v))
                throw std::invalid_argument("Schedule: non-finite parameter");
    }

    Kind kind_;
    std::vector<double> params_;
};

}  // namespace fbsplit
