#include "fbsplit/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fbsplit/errors.hpp"

namespace fbsplit {

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Fbs: return "fbs";
        case Algorithm::ProxGrad: return "prox-grad";
        case Algorithm::MoudafiOliny: return "moudafi-oliny";
        case Algorithm::LorenzPock: return "lorenz-pock";
        case Algorithm::Apfbnsm: return "apfbnsm";
        case Algorithm::New: return "new";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
    if (name == "fbs") return Algorithm::Fbs;
    if (name == "prox-grad") return Algorithm::ProxGrad;
    if (name == "moudafi-oliny") return Algorithm::MoudafiOliny;
    if (name == "lorenz-pock") return Algorithm::LorenzPock;
    if (name == "apfbnsm") return Algorithm::Apfbnsm;
    if (name == "new") return Algorithm::New;
    return std::nullopt;
}

Contraction::Contraction(double k, Vector anchor_point)
    : coefficient(k), anchor(std::move(anchor_point)) {
    if (!(k >= 0.0 && k < 1.0))
        throw std::invalid_argument("Contraction: coefficient must lie in [0,1)");
}

SolverConfig default_config(Algorithm algorithm, Preconditioner M) {
    const std::size_t dim = M.dim();
    return SolverConfig{
        .algorithm = algorithm,
        .lambda = 0.99,
        .theta = Schedule::constant(0.1),
        .alpha = Schedule::constant(0.5),
        .beta = Schedule::harmonic(0.1),
        .lambda_n = std::nullopt,
        .contraction = Contraction(0.99, Vector(dim, 0.0)),
        .preconditioner = std::move(M),
        .max_iters = 1000,
        .stop_tol = 1e-10,
    };
}

std::string ValidationReport::joined_errors() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (i) os << "; ";
        os << errors[i];
    }
    return os.str();
}

namespace {

bool uses_inertia(Algorithm a) { return a != Algorithm::Fbs && a != Algorithm::ProxGrad; }

double effective_theta(const SolverConfig& cfg, long n, double step_m) {
    double t = cfg.theta.value(n);
    if (cfg.adaptive_theta) {
        const double dn = static_cast<double>(n);
        t = std::min(t, cfg.adaptive_theta_scale /
                            (dn * dn * std::max(step_m, 1e-12)));
    }
    return t;
}

}  // namespace

ValidationReport validate_config(const SolverConfig& cfg) {
    ValidationReport rep;
    const bool strong = cfg.algorithm == Algorithm::New || cfg.algorithm == Algorithm::Apfbnsm;

    if (!(cfg.lambda > 0.0))
        rep.errors.push_back("lambda must be > 0");
    else if (strong && cfg.lambda > 1.0)
        rep.errors.push_back("lambda must lie in (0,1] for " +
                             std::string(algorithm_name(cfg.algorithm)));
    if (strong && cfg.lambda_n)
        rep.errors.push_back(std::string(algorithm_name(cfg.algorithm)) +
                             " takes a constant lambda, not a schedule");
    if (cfg.lambda_n && cfg.lambda_n->min_value() <= 0.0)
        rep.errors.push_back("lambda schedule emits non-positive values");

    // theta_n in [0, theta] with theta < 1
    if (cfg.theta.min_value() < 0.0 || cfg.theta.max_value() >= 1.0)
        rep.errors.push_back("theta values must lie in [0,1)");

    if (cfg.algorithm == Algorithm::New || cfg.algorithm == Algorithm::Apfbnsm) {
        // condition (i): 0 < a <= alpha_n <= b < 1
        if (cfg.alpha.min_value() <= 0.0 && cfg.alpha.kind() != Schedule::Kind::Constant)
            rep.warnings.push_back("alpha is not bounded away from 0 (condition on alpha)");
        if (cfg.alpha.kind() == Schedule::Kind::Constant) {
            const double a = cfg.alpha.value(1);
            if (!(a > 0.0 && a < 1.0))
                rep.errors.push_back("alpha must lie strictly inside (0,1)");
        } else if (cfg.alpha.max_value() >= 1.0 || cfg.alpha.min_value() < 0.0) {
            rep.errors.push_back("alpha values must lie in (0,1)");
        }
    }

    if (cfg.algorithm == Algorithm::New) {
        if (cfg.beta.max_value() >= 1.0 || cfg.beta.min_value() < 0.0)
            rep.errors.push_back("beta values must lie in (0,1)");
        // condition (iv): beta_n -> 0 and sum beta_n = infinity
        if (!cfg.beta.limit_is_zero())
            rep.warnings.push_back("beta does not tend to 0 (condition (iv))");
        if (!cfg.beta.sum_diverges())
            rep.warnings.push_back("sum of beta does not provably diverge (condition (iv))");
        // The companion bound 0 < c <= beta_n <= d < 1 cannot hold together
        // with beta_n -> 0; the experiments follow the vanishing schedule.
        rep.notes.push_back(
            "a vanishing beta schedule is used; a constant positive lower bound "
            "on beta is incompatible with it and is not enforced");
    }

    // condition (iii): summability of theta_n |x_n - x_{n-1}|_M is a runtime
    // property; only the adaptive cap guarantees it statically.
    if (uses_inertia(cfg.algorithm) && !cfg.adaptive_theta &&
        cfg.theta.max_value() > 0.0 && !cfg.theta.limit_is_zero())
        rep.warnings.push_back(
            "constant theta cannot statically guarantee the summability "
            "condition (iii); enable adaptive_theta to enforce it");

    if (cfg.max_iters < 0) rep.errors.push_back("max_iters must be >= 0");
    if (cfg.stop_tol < 0.0) rep.errors.push_back("stop_tol must be >= 0");
    return rep;
}

Vector fb_map(const Vector& x, double lambda, const Preconditioner& M,
              const SmoothTerm& h, const ProxTerm& g) {
    const Vector forward = sub(x, scale(lambda, M.apply_inverse(grad_least_squares(h, x))));
    return weighted_resolvent_l1(forward, lambda, g.weight, M);
}

Vector step_classical(const Vector& x_prev, const Vector& x_curr, long n,
                      const SolverConfig& cfg, const Problem& problem) {
    if (cfg.algorithm != Algorithm::Fbs && cfg.algorithm != Algorithm::ProxGrad &&
        cfg.algorithm != Algorithm::MoudafiOliny)
        throw std::invalid_argument("step_classical: wrong algorithm tag");
    const double lam = cfg.lambda_n ? cfg.lambda_n->value(n) : cfg.lambda;
    const Preconditioner& M = cfg.preconditioner;
    if (cfg.algorithm == Algorithm::MoudafiOliny) {
        const double th = effective_theta(cfg, n, m_norm(sub(x_curr, x_prev), M));
        const Vector y = add(x_curr, scale(th, sub(x_curr, x_prev)));
        // gradient at x_curr, extrapolation only in the resolvent argument
        const Vector arg =
            sub(y, scale(lam, M.apply_inverse(grad_least_squares(problem.h, x_curr))));
        return weighted_resolvent_l1(arg, lam, problem.g.weight, M);
    }
    return fb_map(x_curr, lam, M, problem.h, problem.g);
}

Vector step_lorenz_pock(const Vector& x_prev, const Vector& x_curr, long n,
                        const SolverConfig& cfg, const Problem& problem) {
    if (cfg.algorithm != Algorithm::LorenzPock)
        throw std::invalid_argument("step_lorenz_pock: wrong algorithm tag");
    const double lam = cfg.lambda_n ? cfg.lambda_n->value(n) : cfg.lambda;
    const Preconditioner& M = cfg.preconditioner;
    const double th = effective_theta(cfg, n, m_norm(sub(x_curr, x_prev), M));
    const Vector y = add(x_curr, scale(th, sub(x_curr, x_prev)));
    return fb_map(y, lam, M, problem.h, problem.g);
}

Vector step_apfbnsm(const Vector& x_prev, const Vector& x_curr, long n,
                    const SolverConfig& cfg, const Problem& problem) {
    if (cfg.algorithm != Algorithm::Apfbnsm)
        throw std::invalid_argument("step_apfbnsm: wrong algorithm tag");
    const Preconditioner& M = cfg.preconditioner;
    const double th = effective_theta(cfg, n, m_norm(sub(x_curr, x_prev), M));
    const double a = cfg.alpha.value(n);
    const Vector y = add(x_curr, scale(th, sub(x_curr, x_prev)));
    const Vector u = lincomb(1.0 - a, y, a, fb_map(y, cfg.lambda, M, problem.h, problem.g));
    return fb_map(u, cfg.lambda, M, problem.h, problem.g);
}

Vector step_new(const Vector& x_prev, const Vector& x_curr, long n,
                const SolverConfig& cfg, const Problem& problem) {
    if (cfg.algorithm != Algorithm::New)
        throw std::invalid_argument("step_new: wrong algorithm tag");
    const Preconditioner& M = cfg.preconditioner;
    const double th = effective_theta(cfg, n, m_norm(sub(x_curr, x_prev), M));
    const double a = cfg.alpha.value(n);
    const double b = cfg.beta.value(n);
    const Vector y = add(x_curr, scale(th, sub(x_curr, x_prev)));
    const Vector u = lincomb(1.0 - a, y, a, fb_map(y, cfg.lambda, M, problem.h, problem.g));
    const Vector z = fb_map(u, cfg.lambda, M, problem.h, problem.g);
    return lincomb(b, cfg.contraction.apply(z), 1.0 - b,
                   fb_map(z, cfg.lambda, M, problem.h, problem.g));
}

Vector step(const Vector& x_prev, const Vector& x_curr, long n,
            const SolverConfig& cfg, const Problem& problem) {
    switch (cfg.algorithm) {
        case Algorithm::Fbs:
        case Algorithm::ProxGrad:
        case Algorithm::MoudafiOliny:
            return step_classical(x_prev, x_curr, n, cfg, problem);
        case Algorithm::LorenzPock:
            return step_lorenz_pock(x_prev, x_curr, n, cfg, problem);
        case Algorithm::Apfbnsm:
            return step_apfbnsm(x_prev, x_curr, n, cfg, problem);
        case Algorithm::New:
            return step_new(x_prev, x_curr, n, cfg, problem);
    }
    throw std::invalid_argument("step: unknown algorithm");
}

double fixed_point_residual(const Vector& x, double lambda, const Preconditioner& M,
                            const SmoothTerm& h, const ProxTerm& g) {
    return m_norm(sub(fb_map(x, lambda, M, h, g), x), M);
}

double lasso_kkt_residual(const Vector& x, const SmoothTerm& h, double rho) {
    if (rho < 0.0) throw std::invalid_argument("lasso_kkt_residual: rho must be >= 0");
    const Vector grad = grad_least_squares(h, x);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r;
        if (x[i] != 0.0)
            r = std::abs(grad[i] + rho * (x[i] > 0.0 ? 1.0 : -1.0));
        else
            r = std::max(0.0, std::abs(grad[i]) - rho);
        worst = std::max(worst, r);
    }
    return worst;
}

SolveResult run_solver(const Problem& problem, const SolverConfig& cfg,
                       const Vector& x0, const Vector& x1,
                       const SolverCallbacks& callbacks) {
    const ValidationReport rep = validate_config(cfg);
    if (!rep.ok())
        throw std::invalid_argument("run_solver: invalid config: " + rep.joined_errors());
    require_same_dim(x0, x1, "run_solver");
    require_same_dim(x1, cfg.preconditioner.diag(), "run_solver");

    SolveResult result;
    result.trace.algorithm = algorithm_name(cfg.algorithm);
    result.trace.lambda = cfg.lambda;
    result.trace.lipschitz_used = problem.h.lipschitz;

    Vector x_prev = x0;
    Vector x_curr = x1;
    const auto t0 = std::chrono::steady_clock::now();
    for (long n = 1; n <= cfg.max_iters; ++n) {
        Vector x_next = step(x_prev, x_curr, n, cfg, problem);
        if (!all_finite(x_next))
            throw DivergenceError("run_solver: non-finite iterate at iteration " +
                                      std::to_string(n),
                                  n);
        const double lam = cfg.lambda_n ? cfg.lambda_n->value(n) : cfg.lambda;
        const double residual = fixed_point_residual(x_next, lam, cfg.preconditioner,
                                                     problem.h, problem.g);
        IterationRecord rec;
        rec.iter = n;
        rec.objective = problem.objective(x_next);
        rec.residual_m_norm = residual;
        rec.step_m_norm = m_norm(sub(x_next, x_curr), cfg.preconditioner);
        rec.snr_db = callbacks.snr ? callbacks.snr(n, x_next)
                                   : std::numeric_limits<double>::quiet_NaN();
        rec.elapsed_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.trace.records.push_back(rec);
        if (callbacks.on_iterate) callbacks.on_iterate(n, x_next);

        x_prev = std::move(x_curr);
        x_curr = std::move(x_next);
        if (residual <= cfg.stop_tol * (1.0 + m_norm(x_curr, cfg.preconditioner))) break;
    }
    result.x_final = std::move(x_curr);
    return result;
}

}  // namespace fbsplit
