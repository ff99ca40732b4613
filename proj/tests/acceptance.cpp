// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs the CLI binary for the end-to-end criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fbsplit/image.hpp"
#include "fbsplit/pgm.hpp"
#include "fbsplit/prox.hpp"
#include "fbsplit/rng.hpp"
#include "fbsplit/solver.hpp"
#include "oracles.hpp"

using namespace fbsplit;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const char* title, bool pass, double seconds) {
    std::printf("%s  criterion %2d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", criterion,
                title, seconds);
    if (!pass) ++g_failures;
}

void run_criterion(int criterion, const char* title, const std::function<bool()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    try {
        pass = body();
    } catch (const std::exception& e) {
        std::printf("      exception: %s\n", e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(criterion, title, pass, secs);
}

Problem random_lasso(std::size_t m, std::size_t d, double rho_fraction, Rng& rng) {
    std::vector<double> e(m * d);
    const double s = 1.0 / std::sqrt(static_cast<double>(m));
    for (auto& v : e) v = s * rng.next_gaussian();
    auto A = std::make_shared<DenseMap>(m, d, std::move(e));
    Vector b(m);
    for (auto& v : b) v = 2.0 * rng.next_uniform() - 1.0;
    const double nrm = estimate_operator_norm(*A, 2000, 1e-12);
    const double rho = rho_fraction * norm_inf(A->apply_adjoint(b));
    return Problem{SmoothTerm(A, std::move(b), nrm * nrm), ProxTerm(rho)};
}

/// Plain forward-backward iteration without trace bookkeeping; the
/// long-run reference used by the optimality criteria.
Vector prox_grad_reference(const Problem& p, const Preconditioner& M, double lambda,
                           long max_iters, double fp_tol) {
    Vector x(M.dim(), 0.0);
    for (long n = 1; n <= max_iters; ++n) {
        x = fb_map(x, lambda, M, p.h, p.g);
        if (n % 500 == 0 &&
            fixed_point_residual(x, lambda, M, p.h, p.g) <= fp_tol)
            break;
    }
    return x;
}

/// Deterministic 64x64 test scene: smooth ramp plus blocks and a disk.
Image synthetic_image(std::size_t n = 64) {
    Image img(n, n, 0.0);
    const double nn = static_cast<double>(n - 1);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            double v = 0.25 + 0.35 * (static_cast<double>(r) + static_cast<double>(c)) / (2 * nn);
            if (r >= n / 8 && r < n / 3 && c >= n / 8 && c < n / 3) v = 0.9;
            if (r >= n / 2 && r < 3 * n / 4 && c >= 5 * n / 8 && c < 7 * n / 8) v = 0.1;
            const double dr = static_cast<double>(r) - 0.7 * nn;
            const double dc = static_cast<double>(c) - 0.25 * nn;
            if (dr * dr + dc * dc < (0.12 * nn) * (0.12 * nn)) v = 0.75;
            img.at(r, c) = v;
        }
    return img;
}

bool files_identical(const fs::path& a, const fs::path& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FBSPLIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

// ---- criteria ----

bool criterion_prox_oracle() {
    Rng rng(1001);
    for (int t = 0; t < 1000; ++t) {
        const double x = 8.0 * rng.next_uniform() - 4.0;
        const double phi = 2.0 * rng.next_uniform();
        const double lambda = 0.05 + 0.95 * rng.next_uniform();
        const double rho = rng.next_uniform();
        const double mii = 0.5 + 3.5 * rng.next_uniform();

        const double st = soft_threshold(Vector{x}, phi)[0];
        if (std::abs(st - oracles::scalar_prox_oracle(x, phi, 1.0)) > 1e-6) return false;

        const double res =
            weighted_resolvent_l1({x}, lambda, rho, Preconditioner({mii}))[0];
        if (std::abs(res - oracles::scalar_prox_oracle(x, rho, mii / lambda)) > 1e-6)
            return false;
    }
    return true;
}

bool criterion_nonexpansive() {
    Rng rng(1002);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t d = 1 + rng.next_u64() % 6;
        Vector diag(d), u(d), v(d);
        for (auto& c : diag) c = 0.5 + 3.5 * rng.next_uniform();
        for (auto& c : u) c = 8.0 * rng.next_uniform() - 4.0;
        for (auto& c : v) c = 8.0 * rng.next_uniform() - 4.0;
        const double lambda = 0.05 + 0.95 * rng.next_uniform();
        const double rho = rng.next_uniform();
        const Preconditioner M(diag);
        const double duv = m_norm(sub(u, v), M);

        // (ii) resolvent alone, arbitrary diagonal M
        if (m_norm(sub(weighted_resolvent_l1(u, lambda, rho, M),
                       weighted_resolvent_l1(v, lambda, rho, M)),
                   M) > duv + 1e-10)
            return false;

        // (i) forward step and (iii) full map, M = L_h I scaling
        Problem p = random_lasso(d, d, rho, rng);
        const Preconditioner Mh = Preconditioner::scalar(d, p.h.lipschitz);
        const double duv_h = m_norm(sub(u, v), Mh);
        const Vector fu = sub(u, scale(lambda, Mh.apply_inverse(grad_least_squares(p.h, u))));
        const Vector fv = sub(v, scale(lambda, Mh.apply_inverse(grad_least_squares(p.h, v))));
        if (m_norm(sub(fu, fv), Mh) > duv_h + 1e-10) return false;
        if (m_norm(sub(fb_map(u, lambda, Mh, p.h, p.g), fb_map(v, lambda, Mh, p.h, p.g)),
                   Mh) > duv_h + 1e-10)
            return false;
    }
    return true;
}

bool criterion_fixed_point_optimality() {
    Rng rng(1003);
    for (int t = 0; t < 50; ++t) {
        const std::size_t d = 5 + rng.next_u64() % 46;  // up to 50
        const Problem p = random_lasso(d + 5, d, 0.3, rng);
        const Preconditioner M = Preconditioner::scalar(d, p.h.lipschitz);
        const Vector x = prox_grad_reference(p, M, 0.99, 300000, 1e-11);
        if (fixed_point_residual(x, 0.99, M, p.h, p.g) > 1e-8) return false;
        if (lasso_kkt_residual(x, p.h, p.g.weight) > 1e-6) return false;
    }
    return true;
}

bool criterion_solver_convergence() {
    return run_cli("lasso-demo --dimension 50 --sparsity 5 --seed 42 --iters 10000 "
                   "--kkt-tol 1e-3") == 0;
}

bool criterion_closed_form_1d() {
    auto A = std::make_shared<DenseMap>(DenseMap::identity(1));
    const Problem p{SmoothTerm(A, {2.0}, 1.0), ProxTerm(0.5)};
    SolverConfig cfg = default_config(Algorithm::New, Preconditioner::identity(1));
    cfg.max_iters = 5000;
    cfg.stop_tol = 0.0;
    const SolveResult res = run_solver(p, cfg, {0.0}, {0.0});
    return std::abs(res.x_final[0] - 1.5) <= 1e-3;
}

bool criterion_snr_ordering() {
    const Image original = synthetic_image(64);
    const auto A = make_blur_map(gaussian_kernel(9, 4.0), 64, 64);
    const Image blurred(64, 64, A->apply(original.pixels));
    const Image degraded = add_noise(blurred, NoiseSpec{1e-3, 42});

    const double nrm = estimate_operator_norm(*A);
    const double lipschitz = nrm * nrm;
    const Problem p{SmoothTerm(A, degraded.pixels, lipschitz), ProxTerm(0.0001)};
    const Preconditioner M = Preconditioner::scalar(64 * 64, lipschitz);

    const std::vector<long> checkpoints{1, 100, 250, 500, 1000};
    std::map<Algorithm, std::map<long, double>> snr;
    for (Algorithm alg : {Algorithm::LorenzPock, Algorithm::Apfbnsm, Algorithm::New}) {
        SolverConfig cfg = default_config(alg, M);
        cfg.max_iters = 1000;
        cfg.stop_tol = 0.0;
        SolverCallbacks cb;
        cb.snr = [&](long n, const Vector& x) {
            const bool want = std::find(checkpoints.begin(), checkpoints.end(), n) !=
                              checkpoints.end();
            if (!want) return std::numeric_limits<double>::quiet_NaN();
            const double s = snr_db(original.pixels, x);
            snr[alg][n] = s;
            return s;
        };
        run_solver(p, cfg, degraded.pixels, degraded.pixels, cb);
    }

    for (long cp : {100L, 250L, 500L, 1000L}) {
        if (!(snr[Algorithm::New][cp] >= snr[Algorithm::Apfbnsm][cp])) return false;
        if (!(snr[Algorithm::Apfbnsm][cp] >= snr[Algorithm::LorenzPock][cp])) return false;
    }
    for (Algorithm alg : {Algorithm::LorenzPock, Algorithm::Apfbnsm, Algorithm::New})
        if (!(snr[alg][1000] > snr[alg][1])) return false;
    return true;
}

bool criterion_gradient_fd() {
    Rng rng(1007);
    for (int t = 0; t < 20; ++t) {
        const std::size_t d = 2 + rng.next_u64() % 19;
        const Problem p = random_lasso(d, d, 0.0, rng);
        Vector x(d);
        for (auto& v : x) v = 2.0 * rng.next_uniform() - 1.0;
        const Vector g = grad_least_squares(p.h, x);
        const Vector fd = oracles::finite_difference_gradient(p.h, x);
        if (norm2(sub(g, fd)) > 1e-5 * (1.0 + norm2(g))) return false;
    }
    return true;
}

bool criterion_adjoint_and_norm() {
    Rng rng(1008);
    std::vector<double> e(7 * 9);
    for (auto& v : e) v = 2.0 * rng.next_uniform() - 1.0;
    if (adjoint_defect(DenseMap(7, 9, e), 100) > 1e-10) return false;

    for (const Kernel& k : {gaussian_kernel(9, 4.0), gaussian_kernel(3, 0.8),
                            motion_kernel(15, 45.0)}) {
        const auto A = make_blur_map(k, 32, 32);
        if (adjoint_defect(*A, 100) > 1e-10) return false;
        if (estimate_operator_norm(*A) > 1.0 + 1e-6) return false;
    }

    const auto A8 = make_blur_map(gaussian_kernel(3, 0.8), 8, 8);
    const DenseMap dense = oracles::materialize(*A8);
    const double a = estimate_operator_norm(*A8, 20000, 1e-14, 7);
    const double b = estimate_operator_norm(dense, 20000, 1e-14, 8);
    return std::abs(a - b) <= 1e-6;
}

bool criterion_degenerations() {
    Rng rng(1009);
    for (int t = 0; t < 100; ++t) {
        const std::size_t d = 1 + rng.next_u64() % 6;
        Problem p = random_lasso(d, d, 0.3 * rng.next_uniform(), rng);
        const Preconditioner I = Preconditioner::identity(d);
        Vector xp(d), xc(d);
        for (auto& v : xp) v = 2.0 * rng.next_uniform() - 1.0;
        for (auto& v : xc) v = 2.0 * rng.next_uniform() - 1.0;
        const double lambda = 0.05 + 0.9 * rng.next_uniform();
        const double alpha = 0.1 + 0.8 * rng.next_uniform();

        SolverConfig lp = default_config(Algorithm::LorenzPock, I);
        lp.lambda = lambda;
        lp.theta = Schedule::constant(0.0);
        SolverConfig fbs = lp;
        fbs.algorithm = Algorithm::Fbs;
        if (step_lorenz_pock(xp, xc, 1, lp, p) != step_classical(xp, xc, 1, fbs, p))
            return false;

        SolverConfig ap = default_config(Algorithm::Apfbnsm, I);
        ap.lambda = lambda;
        ap.theta = Schedule::constant(0.0);
        ap.alpha = Schedule::constant(alpha);
        const Vector u =
            lincomb(1.0 - alpha, xc, alpha, fb_map(xc, lambda, I, p.h, p.g));
        if (step_apfbnsm(xp, xc, 1, ap, p) != fb_map(u, lambda, I, p.h, p.g)) return false;

        SolverConfig nw = ap;
        nw.algorithm = Algorithm::New;
        nw.beta = Schedule::constant(0.0);
        nw.contraction = Contraction(0.99, Vector(d, 0.0));
        const Vector z = step_apfbnsm(xp, xc, 1, ap, p);
        if (step_new(xp, xc, 1, nw, p) != fb_map(z, lambda, I, p.h, p.g)) return false;
    }
    return true;
}

bool criterion_determinism() {
    const fs::path dir = fs::temp_directory_path() / "fbsplit_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path orig = dir / "original.pgm";
    save_pgm(synthetic_image(64), orig);

    for (int run = 0; run < 2; ++run) {
        const std::string tag = std::to_string(run);
        if (run_cli("degrade --input " + orig.string() + " --output " +
                    (dir / ("deg" + tag + ".pgm")).string() +
                    " --kernel gaussian:9,4 --noise-sigma 0.001 --seed 42") != 0)
            return false;
        if (run_cli("compare --input " + (dir / ("deg" + tag + ".pgm")).string() +
                    " --original " + orig.string() +
                    " --kernel gaussian:9,4 --rho 0.0001 --iters 100 "
                    "--checkpoints 1,5,10,25,50,100 "
                    "--algorithms lorenz-pock,apfbnsm,new --table " +
                    (dir / ("table" + tag + ".csv")).string() + " --trace-prefix " +
                    (dir / ("trace" + tag + "_")).string()) != 0)
            return false;
    }
    if (!files_identical(dir / "deg0.pgm", dir / "deg1.pgm")) return false;
    if (!files_identical(dir / "deg0.pgm.json", dir / "deg1.pgm.json")) return false;
    if (!files_identical(dir / "table0.csv", dir / "table1.csv")) return false;
    for (const char* alg : {"lorenz-pock", "apfbnsm", "new"})
        if (!files_identical(dir / ("trace0_" + std::string(alg) + ".csv"),
                             dir / ("trace1_" + std::string(alg) + ".csv")))
            return false;
    fs::remove_all(dir);
    return true;
}

}  // namespace

int main() {
    run_criterion(1, "prox operators match the grid-search oracle", criterion_prox_oracle);
    run_criterion(2, "nonexpansiveness of forward, backward, and composed maps",
                  criterion_nonexpansive);
    run_criterion(3, "fixed-point residual and KKT residual vanish together",
                  criterion_fixed_point_optimality);
    run_criterion(4, "all algorithms solve the d=50 lasso demo", criterion_solver_convergence);
    run_criterion(5, "1-D closed-form lasso solution", criterion_closed_form_1d);
    run_criterion(6, "SNR ordering on the synthetic deblurring benchmark",
                  criterion_snr_ordering);
    run_criterion(7, "gradient matches finite differences", criterion_gradient_fd);
    run_criterion(8, "adjoint and operator norm checks", criterion_adjoint_and_norm);
    run_criterion(9, "degeneration identities are bitwise", criterion_degenerations);
    run_criterion(10, "degrade/compare pipeline is byte-reproducible",
                  criterion_determinism);

    if (g_failures) std::printf("%d criterion(s) FAILED\n", g_failures);
    else std::printf("all criteria passed\n");
    return g_failures;
}
