// fbsplit command-line front end: degrade / restore / compare / lasso-demo.
//
// Exit codes: 0 success, 1 quality targets unmet (lasso-demo), 2 argument or
// config error, 3 I/O error, 4 numerical divergence.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fbsplit/errors.hpp"
#include "fbsplit/image.hpp"
#include "fbsplit/pgm.hpp"
#include "fbsplit/prox.hpp"
#include "fbsplit/rng.hpp"
#include "fbsplit/solver.hpp"
#include "fbsplit/trace_csv.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fbsplit;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

Kernel parse_kernel_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("kernel spec must look like gaussian:9,4 or motion:15,45");
    const std::string kind = spec.substr(0, colon);
    const auto params = split(spec.substr(colon + 1), ',');
    if (params.size() != 2)
        throw std::invalid_argument("kernel spec needs exactly two parameters: " + spec);
    if (kind == "gaussian")
        return gaussian_kernel(std::stoi(params[0]), std::stod(params[1]));
    if (kind == "motion")
        return motion_kernel(std::stoi(params[0]), std::stod(params[1]));
    throw std::invalid_argument("unknown kernel kind '" + kind + "'");
}

Schedule parse_schedule_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return Schedule::constant(std::stod(spec));
    const std::string kind = spec.substr(0, colon);
    const auto params = split(spec.substr(colon + 1), ',');
    if (kind == "const" && params.size() == 1)
        return Schedule::constant(std::stod(params[0]));
    if (kind == "harmonic" && params.size() == 1)
        return Schedule::harmonic(std::stod(params[0]));
    if (kind == "scaled-harmonic" && params.size() == 2)
        return Schedule::scaled_harmonic(std::stod(params[0]), std::stod(params[1]));
    if (kind == "list" && !params.empty()) {
        std::vector<double> vals;
        for (const auto& p : params) vals.push_back(std::stod(p));
        return Schedule::custom(std::move(vals));
    }
    throw std::invalid_argument("bad schedule spec '" + spec + "'");
}

std::vector<long> parse_checkpoints(const std::string& spec) {
    std::vector<long> out;
    for (const auto& p : split(spec, ',')) out.push_back(std::stol(p));
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1])
            throw std::invalid_argument("checkpoints must be strictly increasing");
    if (out.empty()) throw std::invalid_argument("empty checkpoint list");
    return out;
}

// Write-to-temp-then-rename so failures never leave partial outputs.
template <typename WriteFn>
void atomic_write(const fs::path& path, WriteFn&& write) {
    const fs::path tmp = path.string() + ".tmp";
    write(tmp);
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() +
                          ": " + ec.message());
}

struct RestoreOptions {
    std::string input, original, kernel_spec, output, trace_path;
    std::string alpha = "const:0.5", theta = "const:0.1", beta = "harmonic:0.1";
    double rho = 0.0001;
    double lambda = 0.99;
    double contraction = 0.99;
    long iters = 1000;
    double stop_tol = 0.0;
    std::string checkpoints;
    std::uint64_t norm_seed = 12345;
    bool timings = false;
};

void add_restore_options(CLI::App* cmd, RestoreOptions& opt) {
    cmd->add_option("--input", opt.input, "degraded PGM image")->required();
    cmd->add_option("--original", opt.original, "pristine PGM image for SNR")->required();
    cmd->add_option("--kernel", opt.kernel_spec, "blur kernel, e.g. gaussian:9,4")->required();
    cmd->add_option("--rho", opt.rho, "l1 regularization weight");
    cmd->add_option("--lambda", opt.lambda, "relaxation parameter");
    cmd->add_option("--alpha", opt.alpha, "alpha schedule, e.g. const:0.5");
    cmd->add_option("--theta", opt.theta, "inertia schedule, e.g. const:0.1");
    cmd->add_option("--beta", opt.beta, "anchor schedule, e.g. harmonic:0.1");
    cmd->add_option("--contraction", opt.contraction, "contraction coefficient k");
    cmd->add_option("--iters", opt.iters, "iteration count");
    cmd->add_option("--stop-tol", opt.stop_tol, "relative residual stopping tolerance");
    cmd->add_option("--checkpoints", opt.checkpoints,
                    "comma-separated iterations to keep in the trace");
    cmd->add_option("--norm-seed", opt.norm_seed, "seed for the operator norm estimate");
    cmd->add_flag("--timings", opt.timings,
                  "record wall-clock in trace CSVs (breaks byte-reproducibility)");
}

struct PreparedProblem {
    Image degraded, original;
    Problem problem;
    double lipschitz;
};

PreparedProblem prepare_imaging_problem(const RestoreOptions& opt) {
    Image degraded = load_pgm(opt.input);
    Image original = load_pgm(opt.original);
    if (degraded.width != original.width || degraded.height != original.height)
        throw std::invalid_argument("degraded and original image dimensions differ");
    Kernel k = parse_kernel_spec(opt.kernel_spec);
    auto A = make_blur_map(std::move(k), degraded.width, degraded.height);
    const double norm = estimate_operator_norm(*A, 1000, 1e-8, opt.norm_seed);
    const double lipschitz = std::max(norm * norm, 1e-12);
    SmoothTerm h(A, degraded.pixels, lipschitz);
    return PreparedProblem{std::move(degraded), std::move(original),
                           Problem{std::move(h), ProxTerm(opt.rho)}, lipschitz};
}

SolverConfig build_config(const RestoreOptions& opt, Algorithm alg, std::size_t dim,
                          double lipschitz) {
    SolverConfig cfg = default_config(alg, Preconditioner::scalar(dim, lipschitz));
    cfg.lambda = opt.lambda;
    cfg.theta = parse_schedule_spec(opt.theta);
    cfg.alpha = parse_schedule_spec(opt.alpha);
    cfg.beta = parse_schedule_spec(opt.beta);
    cfg.contraction = Contraction(opt.contraction, Vector(dim, 0.0));
    cfg.max_iters = opt.iters;
    cfg.stop_tol = opt.stop_tol;
    return cfg;
}

void report_validation(const ValidationReport& rep) {
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    if (!rep.ok()) throw std::invalid_argument("invalid config: " + rep.joined_errors());
}

// Default artifacts are byte-reproducible; real timings are opt-in.
void apply_timing_policy(std::vector<TraceRow>& rows, bool timings) {
    if (!timings)
        for (auto& r : rows) r.elapsed_s = 0.0;
}

std::vector<TraceRow> filter_checkpoints(const std::vector<TraceRow>& rows,
                                         const std::vector<long>& checkpoints) {
    std::vector<TraceRow> out;
    for (const auto& r : rows)
        if (std::binary_search(checkpoints.begin(), checkpoints.end(), r.iter))
            out.push_back(r);
    return out;
}

int cmd_degrade(const std::string& input, const std::string& output,
                const std::string& kernel_spec, double sigma, std::uint64_t seed,
                const std::string& meta_path) {
    Image img = load_pgm(input);
    Kernel k = parse_kernel_spec(kernel_spec);
    auto A = make_blur_map(k, img.width, img.height);
    Image blurred(img.width, img.height, A->apply(img.pixels));
    Image noisy = add_noise(blurred, NoiseSpec{sigma, seed});
    const double norm = estimate_operator_norm(*A);

    atomic_write(output, [&](const fs::path& p) { save_pgm(noisy, p); });
    json meta{{"kernel", kernel_spec},
              {"noise_sigma", sigma},
              {"seed", seed},
              {"operator_norm", norm},
              {"lipschitz", norm * norm},
              {"width", img.width},
              {"height", img.height}};
    atomic_write(meta_path.empty() ? output + ".json" : meta_path, [&](const fs::path& p) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw IoError("cannot open " + p.string());
        out << meta.dump(2) << "\n";
    });
    return 0;
}

int cmd_restore(const RestoreOptions& opt, const std::string& algorithm) {
    const auto alg = parse_algorithm(algorithm);
    if (!alg) throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
    PreparedProblem prep = prepare_imaging_problem(opt);
    const std::size_t dim = prep.degraded.pixels.size();
    SolverConfig cfg = build_config(opt, *alg, dim, prep.lipschitz);
    report_validation(validate_config(cfg));

    SolverCallbacks cb;
    cb.snr = [&](long, const Vector& x) { return snr_db(prep.original.pixels, x); };
    SolveResult res =
        run_solver(prep.problem, cfg, prep.degraded.pixels, prep.degraded.pixels, cb);

    if (!opt.output.empty())
        atomic_write(opt.output, [&](const fs::path& p) {
            save_pgm(Image(prep.degraded.width, prep.degraded.height, res.x_final), p);
        });
    if (!opt.trace_path.empty()) {
        std::vector<TraceRow> rows = trace_rows(res.trace);
        apply_timing_policy(rows, opt.timings);
        if (!opt.checkpoints.empty())
            rows = filter_checkpoints(rows, parse_checkpoints(opt.checkpoints));
        if (rows.empty())
            throw std::invalid_argument("no trace rows at the requested checkpoints");
        atomic_write(opt.trace_path,
                     [&](const fs::path& p) { write_trace_csv(rows, p); });
    }
    return 0;
}

int cmd_compare(const RestoreOptions& opt, const std::vector<std::string>& algorithms,
                const std::string& table_path, const std::string& trace_prefix) {
    if (algorithms.size() < 2)
        throw std::invalid_argument("compare needs at least two algorithms");
    PreparedProblem prep = prepare_imaging_problem(opt);
    const std::size_t dim = prep.degraded.pixels.size();
    const std::vector<long> checkpoints = parse_checkpoints(
        opt.checkpoints.empty() ? "1,5,10,25,50,100,250,500,1000" : opt.checkpoints);

    std::vector<std::vector<TraceRow>> all_rows;
    for (const auto& name : algorithms) {
        const auto alg = parse_algorithm(name);
        if (!alg) throw std::invalid_argument("unknown algorithm '" + name + "'");
        SolverConfig cfg = build_config(opt, *alg, dim, prep.lipschitz);
        report_validation(validate_config(cfg));
        SolverCallbacks cb;
        cb.snr = [&](long, const Vector& x) { return snr_db(prep.original.pixels, x); };
        SolveResult res =
            run_solver(prep.problem, cfg, prep.degraded.pixels, prep.degraded.pixels, cb);
        std::vector<TraceRow> rows = trace_rows(res.trace);
        apply_timing_policy(rows, opt.timings);
        if (!trace_prefix.empty())
            atomic_write(trace_prefix + name + ".csv",
                         [&](const fs::path& p) { write_trace_csv(rows, p); });
        all_rows.push_back(std::move(rows));
    }

    atomic_write(table_path, [&](const fs::path& p) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw IoError("cannot open " + p.string());
        out << "iter";
        for (const auto& name : algorithms) out << ',' << name;
        out << '\n';
        for (long cp : checkpoints) {
            if (cp > opt.iters) continue;
            out << cp;
            for (const auto& rows : all_rows) {
                const auto it = std::find_if(rows.begin(), rows.end(),
                                             [&](const TraceRow& r) { return r.iter == cp; });
                if (it == rows.end())
                    throw std::invalid_argument("checkpoint " + std::to_string(cp) +
                                                " missing from trace");
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.9g", it->snr_db);
                out << ',' << buf;
            }
            out << '\n';
        }
        if (!out) throw IoError("write failed for " + p.string());
    });
    return 0;
}

int cmd_lasso_demo(long dimension, long sparsity, std::uint64_t seed,
                   const std::vector<std::string>& algorithms, double rho_flag,
                   long iters, double kkt_tol, double noise_sigma) {
    if (dimension < 2) throw std::invalid_argument("dimension must be >= 2");
    if (sparsity < 0 || sparsity > dimension)
        throw std::invalid_argument("sparsity must lie in [0, dimension]");
    const std::size_t d = static_cast<std::size_t>(dimension);
    const std::size_t m = static_cast<std::size_t>(std::ceil(0.8 * dimension));

    Rng rng(seed);
    std::vector<double> entries(m * d);
    const double s = 1.0 / std::sqrt(static_cast<double>(m));
    for (auto& e : entries) e = s * rng.next_gaussian();
    auto A = std::make_shared<DenseMap>(m, d, std::move(entries));

    Vector x_star(d, 0.0);
    for (long k = 0; k < sparsity; ++k) {
        const std::size_t i = rng.next_u64() % d;
        x_star[i] = rng.next_gaussian();
    }
    Vector b = A->apply(x_star);
    if (norm2(x_star) > 0.0)
        for (auto& v : b) v += noise_sigma * rng.next_gaussian();

    const double opnorm = estimate_operator_norm(*A);
    const double lipschitz = std::max(opnorm * opnorm, 1e-12);
    const double rho =
        rho_flag > 0.0 ? rho_flag : 0.1 * norm_inf(A->apply_adjoint(b));
    Problem problem{SmoothTerm(A, b, lipschitz), ProxTerm(rho)};
    const Preconditioner M = Preconditioner::scalar(d, lipschitz);

    // consensus reference from a long plain prox-grad run
    SolverConfig ref_cfg = default_config(Algorithm::ProxGrad, M);
    ref_cfg.theta = Schedule::constant(0.0);
    ref_cfg.max_iters = 200000;
    ref_cfg.stop_tol = 1e-14;
    const Vector x0(d, 0.0);
    const Vector consensus = run_solver(problem, ref_cfg, x0, x0).x_final;

    std::printf("lasso-demo: d=%ld m=%zu sparsity=%ld rho=%.6g L_h=%.6g\n", dimension, m,
                sparsity, rho, lipschitz);
    std::printf("%-14s %14s %14s %14s\n", "algorithm", "kkt_residual", "fp_residual",
                "dist_consensus");
    bool all_ok = true;
    for (const auto& name : algorithms) {
        const auto alg = parse_algorithm(name);
        if (!alg) throw std::invalid_argument("unknown algorithm '" + name + "'");
        SolverConfig cfg = default_config(*alg, M);
        cfg.max_iters = iters;
        cfg.stop_tol = 0.0;
        const Vector x = run_solver(problem, cfg, x0, x0).x_final;
        const double kkt = lasso_kkt_residual(x, problem.h, rho);
        const double fp = fixed_point_residual(x, cfg.lambda, M, problem.h, problem.g);
        const double dist = norm2(sub(x, consensus));
        std::printf("%-14s %14.6e %14.6e %14.6e\n", name.c_str(), kkt, fp, dist);
        if (kkt > kkt_tol) all_ok = false;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forward-backward splitting benchmark front end"};
    app.require_subcommand(1);
    app.set_config("--config", "", "plain key = value config file; flags override");

    // degrade
    auto* degrade = app.add_subcommand("degrade", "blur and add noise to a PGM image");
    std::string d_input, d_output, d_kernel, d_meta;
    double d_sigma = 0.001;
    std::uint64_t d_seed = 42;
    degrade->add_option("--input", d_input)->required();
    degrade->add_option("--output", d_output)->required();
    degrade->add_option("--kernel", d_kernel, "e.g. gaussian:9,4 or motion:15,45")->required();
    degrade->add_option("--noise-sigma", d_sigma);
    degrade->add_option("--seed", d_seed);
    degrade->add_option("--meta", d_meta, "sidecar metadata path (default <output>.json)");

    // restore
    auto* restore = app.add_subcommand("restore", "run one algorithm on a degraded image");
    RestoreOptions r_opt;
    std::string r_algorithm = "new";
    add_restore_options(restore, r_opt);
    restore->add_option("--algorithm", r_algorithm);
    restore->add_option("--output", r_opt.output, "restored PGM path");
    restore->add_option("--trace", r_opt.trace_path, "per-iteration CSV path");

    // compare
    auto* compare = app.add_subcommand("compare", "run several algorithms, emit an SNR table");
    RestoreOptions c_opt;
    std::string c_table = "compare.csv", c_prefix, c_algorithms = "lorenz-pock,apfbnsm,new";
    add_restore_options(compare, c_opt);
    compare->add_option("--algorithms", c_algorithms, "comma-separated list, >= 2 entries");
    compare->add_option("--table", c_table, "SNR table CSV path");
    compare->add_option("--trace-prefix", c_prefix, "write <prefix><alg>.csv full traces");

    // lasso-demo
    auto* lasso = app.add_subcommand("lasso-demo", "random dense lasso self-check");
    long l_dim = 50, l_sparsity = 5, l_iters = 10000;
    std::uint64_t l_seed = 42;
    double l_rho = 0.0, l_kkt_tol = 1e-3, l_sigma = 1e-3;
    std::string l_algorithms = "fbs,moudafi-oliny,lorenz-pock,apfbnsm,new";
    lasso->add_option("--dimension", l_dim);
    lasso->add_option("--sparsity", l_sparsity);
    lasso->add_option("--seed", l_seed);
    lasso->add_option("--algorithms", l_algorithms);
    lasso->add_option("--rho", l_rho, "0 means 0.1 * |A^T b|_inf");
    lasso->add_option("--iters", l_iters);
    lasso->add_option("--kkt-tol", l_kkt_tol);
    lasso->add_option("--noise-sigma", l_sigma);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*degrade) return cmd_degrade(d_input, d_output, d_kernel, d_sigma, d_seed, d_meta);
        if (*restore) return cmd_restore(r_opt, r_algorithm);
        if (*compare)
            return cmd_compare(c_opt, split(c_algorithms, ','), c_table, c_prefix);
        if (*lasso)
            return cmd_lasso_demo(l_dim, l_sparsity, l_seed, split(l_algorithms, ','), l_rho,
                                  l_iters, l_kkt_tol, l_sigma);
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
