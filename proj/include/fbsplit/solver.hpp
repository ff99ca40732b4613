#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fbsplit/preconditioner.hpp"
#include "fbsplit/problem.hpp"
#include "fbsplit/prox.hpp"
#include "fbsplit/schedule.hpp"
#include "fbsplit/vector_ops.hpp"

namespace fbsplit {

enum class Algorithm { Fbs, ProxGrad, MoudafiOliny, LorenzPock, Apfbnsm, New };

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(const std::string& name);

/// Affine k-contraction toward an anchor: f(x) = k*x + (1-k)*anchor.
/// Satisfies |f(u)-f(v)|_M = k |u-v|_M exactly for every diagonal M.
struct Contraction {
    double coefficient;  // k in [0,1)
    Vector anchor;

    Contraction(double k, Vector anchor_point);

    Vector apply(const Vector& x) const {
        return lincomb(coefficient, x, 1.0 - coefficient, anchor);
    }
};

struct SolverConfig {
    Algorithm algorithm;
    double lambda;
    Schedule theta;
    Schedule alpha;
    Schedule beta;
    std::optional<Schedule> lambda_n;  // classical variants only; overrides lambda
    Contraction contraction;
    Preconditioner preconditioner;
    long max_iters;
    double stop_tol;
    // Adaptive inertia caps theta_n by scale/(n^2 * step norm) so the
    // inertial series is summable; off by default (constant theta is what
    // the reference experiments ran).
    bool adaptive_theta = false;
    double adaptive_theta_scale = 1.0;
};

/// Cameraman-experiment defaults: theta=1/10, alpha=1/2, beta=1/(10n),
/// lambda=0.99, f(x)=0.99x.
SolverConfig default_config(Algorithm algorithm, Preconditioner M);

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
    bool ok() const { return errors.empty(); }
    std::string joined_errors() const;
};

ValidationReport validate_config(const SolverConfig& cfg);

/// Forward-backward map J = (I + lambda M^-1 dg)^-1 (I - lambda M^-1 grad h).
Vector fb_map(const Vector& x, double lambda, const Preconditioner& M,
              const SmoothTerm& h, const ProxTerm& g);

/// One iteration of fbs / prox-grad / moudafi-oliny. The inertial variant
/// evaluates the gradient at x_curr, not at the extrapolated point.
Vector step_classical(const Vector& x_prev, const Vector& x_curr, long n,
                      const SolverConfig& cfg, const Problem& problem);

Vector step_lorenz_pock(const Vector& x_prev, const Vector& x_curr, long n,
                        const SolverConfig& cfg, const Problem& problem);

Vector step_apfbnsm(const Vector& x_prev, const Vector& x_curr, long n,
                    const SolverConfig& cfg, const Problem& problem);

Vector step_new(const Vector& x_prev, const Vector& x_curr, long n,
                const SolverConfig& cfg, const Problem& problem);

/// Dispatch on cfg.algorithm.
Vector step(const Vector& x_prev, const Vector& x_curr, long n,
            const SolverConfig& cfg, const Problem& problem);

/// |J(x) - x|_M; zero exactly at inclusion solutions.
double fixed_point_residual(const Vector& x, double lambda, const Preconditioner& M,
                            const SmoothTerm& h, const ProxTerm& g);

/// Max-norm distance of -grad h(x) from the l1 subdifferential at x.
double lasso_kkt_residual(const Vector& x, const SmoothTerm& h, double rho);

struct IterationRecord {
    long iter;
    double objective;
    double residual_m_norm;
    double step_m_norm;
    double snr_db;  // NaN when no reference was supplied
    double elapsed_s;
};

struct IterationTrace {
    std::string algorithm;
    double lambda = 0.0;
    double lipschitz_used = 0.0;
    std::uint64_t seed = 0;
    std::vector<IterationRecord> records;
};

struct SolverCallbacks {
    /// When set, its value is recorded as the snr_db column.
    std::function<double(long, const Vector&)> snr;
    std::function<void(long, const Vector&)> on_iterate;
};

struct SolveResult {
    Vector x_final;
    IterationTrace trace;
};

/// Iterates the configured step from (x0, x1) until the relative fixed-point
/// residual drops below stop_tol or max_iters is reached. Deterministic.
SolveResult run_solver(const Problem& problem, const SolverConfig& cfg,
                       const Vector& x0, const Vector& x1,
                       const SolverCallbacks& callbacks = {});

}  // namespace fbsplit
