#include "app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qpscatter/chebyshev.hpp"
#include "qpscatter/collocation.hpp"
#include "qpscatter/errors.hpp"
#include "qpscatter/fourier.hpp"
#include "qpscatter/presets.hpp"

namespace qps::app {

namespace {

using clock_type = std::chrono::steady_clock;
using nlohmann::ordered_json;

double seconds_since(clock_type::time_point t) {
    return std::chrono::duration<double>(clock_type::now() - t).count();
}

int round_up(int n, int step) { return ((std::max(n, 1) + step - 1) / step) * step; }

struct OutputGrid {
    std::vector<double> xs;
    std::vector<double> ys;
};

OutputGrid output_grid(const RunConfig& c) {
    return {uniform_points(0.0, 2.0 * kPi, c.grid_nx), uniform_points(-1.0, 1.0, c.grid_ny)};
}

ordered_json complex_pair(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

void write_field(const std::filesystem::path& file, const OutputGrid& g, const CMatrix& u) {
    std::FILE* f = std::fopen(file.string().c_str(), "w");
    if (!f) throw Error("cannot write " + file.string());
    std::fprintf(f, "x,y,re_u,im_u\n");
    for (std::size_t r = 0; r < g.ys.size(); ++r)
        for (std::size_t c = 0; c < g.xs.size(); ++c) {
            const Complex z = u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            std::fprintf(f, "%.17g,%.17g,%.17g,%.17g\n", g.xs[c], g.ys[r], z.real(), z.imag());
        }
    std::fclose(f);
}

void write_history(const std::filesystem::path& file, const KrylovLog& log) {
    std::ofstream out(file);
    if (!out) throw Error("cannot write " + file.string());
    out << "iteration,relative_residual\n";
    out.precision(17);
    for (std::size_t k = 0; k < log.residuals.size(); ++k) out << k << ',' << log.residuals[k] << '\n';
}

// largest degree of eps along 33 sample lines in x (trig) or y (Chebyshev)
int medium_degrees(const MediumSpec& medium, double tol, bool trig) {
    int degree = 0;
    constexpr int lines = 33;
    for (int i = 0; i < lines; ++i) {
        const double y = -1.0 + 2.0 * i / (lines - 1);
        const double x = 2.0 * kPi * i / lines;
        if (trig)
            degree = std::max(degree, trig_resolve([&](double s) { return medium(s, y); }, tol).degree());
        else
            degree = std::max(degree, cheb_resolve([&](double s) { return medium(x, s); }, tol).degree());
    }
    return degree;
}

}  // namespace

std::optional<int> window_offset(const RunConfig& config, int N) {
    if (config.window == "auto") return std::nullopt;
    if (config.window == "centred") return centred_offset(config.wave, N);
    return std::stoi(config.window);
}

SolveSettings fixed_settings(const RunConfig& config) {
    return {config.gmres_tol.value_or(1e-8), config.maxit.value_or(200)};
}

SolveSettings adaptive_settings(const RunConfig& config) {
    // the field error runs a few orders above the preconditioned residual
    return {config.gmres_tol.value_or(std::max(1e-4 * config.tol, 1e-13)), config.maxit.value_or(1500)};
}

MethodRun solve_once(const RunConfig& config, const ProblemSpec& problem, Method method, int N, int M,
                     const SolveSettings& settings, const std::optional<SeparableMedium>& medium) {
    const auto start = clock_type::now();
    MethodRun out;
    const auto q = window_offset(config, N);
    if (method == Method::Collocation) {
        CollocationOptions opts{q};
        if (problem.medium.is_layered() && config.strategy != TensorStrategy::Dense) {
            out.solution = solve_layered_collocation(problem, N, M, opts);
            out.path = "layered";
        } else {
            out.solution = solve_collocation(assemble_collocation(problem, N, M, opts));
            out.path = "dense";
        }
    } else {
        TensorSolveOptions opts;
        opts.system.q = q;
        opts.strategy = config.strategy;
        opts.dense_cap = config.dense_cap;
        opts.gmres_tol = settings.gmres_tol;
        opts.maxit = settings.maxit;
        if (config.preconditioner == "none") {
            opts.preconditioner = PreconditionerKind::None;
        } else if (config.preconditioner != "average") {
            opts.preconditioner = PreconditionerKind::Custom;
            opts.precond_profile = medium_by_name(config.preconditioner).layered_profile();
        }
        auto r = medium ? solve_tensor(problem, M, N, *medium, opts) : solve_tensor(problem, M, N, opts);
        out.solution = std::move(r.solution);
        out.krylov = std::move(r.krylov);
        out.path = r.path;
    }
    out.seconds = seconds_since(start);
    return out;
}

std::pair<int, int> adaptive_start(const ProblemSpec& problem, double tol) {
    const double level = std::max(tol, 1e-13);
    const int trig = medium_degrees(problem.medium, level, true);
    const int cheb = medium_degrees(problem.medium, level, false);
    const int N = round_up(2 * trig + 2 * propagating_count(problem.wave), 32);
    const int M = round_up(cheb + 16, 16);
    return {N, M};
}

AdaptiveResult adaptive_loop(const RunConfig& config, const ProblemSpec& problem, Method method) {
    const auto settings = adaptive_settings(config);
    const auto grid = output_grid(config);
    std::optional<SeparableMedium> medium;
    if (method == Method::Tensor) medium = resolve_medium(problem.medium, {});

    auto [N, M] = adaptive_start(problem, config.tol);
    AdaptiveResult result;
    MethodRun previous;
    CMatrix previous_u;
    double previous_tail = 0.0;
    for (;;) {
        if (N > kAdaptiveCap || M > kAdaptiveCap) {
            std::ostringstream msg;
            msg << "adaptive: no convergence to tol " << config.tol << " within N, M <= " << kAdaptiveCap;
            throw ResolutionError(msg.str());
        }
        const bool dense_colloc = method == Method::Collocation && !problem.medium.is_layered();
        if (dense_colloc && static_cast<Eigen::Index>(N) * (M + 1) > kCollocationCap)
            throw ResolutionError("adaptive: collocation at N=" + std::to_string(N) + ", M=" + std::to_string(M) +
                                  " exceeds the dense cap");
        MethodRun current = solve_once(config, problem, method, N, M, settings, medium);
        const CMatrix u = evaluate_field(current.solution, grid.xs, grid.ys);
        AdaptiveStep step{N, M, std::nullopt, coefficient_tail(current.solution), current.seconds};
        if (previous_u.size() > 0) step.difference = (u - previous_u).cwiseAbs().maxCoeff();
        result.trajectory.push_back(step);

        if (current.krylov && !current.krylov->converged) {
            // stalled: report this step as is
            result.N = N;
            result.M = M;
            result.run = std::move(current);
            return result;
        }
        // a difference below roundoff in |u| certifies nothing
        const double floor = std::numeric_limits<double>::epsilon() * u.cwiseAbs().maxCoeff();
        if (step.difference && std::max(*step.difference, floor) <= config.tol && previous_tail <= config.tol) {
            result.N = N / 2;
            result.M = M / 2;
            result.run = std::move(previous);
            result.refined = std::move(current);
            return result;
        }
        previous = std::move(current);
        previous_u = u;
        previous_tail = step.tail;
        N *= 2;
        M *= 2;
    }
}

ordered_json report_json(const DiagnosticsReport& report, const std::string& path, double seconds) {
    ordered_json j;
    j["method"] = report.method;
    j["path"] = path;
    j["N"] = report.N;
    j["M"] = report.M;
    j["q"] = report.q;
    if (report.energy_defect)
        j["energy_defect"] = *report.energy_defect;
    else
        j["energy_defect"] = nullptr;
    j["propagating_up"] = report.propagating_up;
    j["propagating_down"] = report.propagating_down;
    if (report.krylov) {
        j["gmres"] = {{"iterations", report.krylov->iterations},
                      {"converged", report.krylov->converged},
                      {"final_residual", report.krylov->final_residual()}};
    }
    auto modes = ordered_json::array();
    const auto& rt = report.coefficients;
    for (std::size_t k = 0; k < rt.r.size(); ++k) {
        ordered_json m;
        m["j"] = static_cast<int>(k) + 1 - rt.q;
        m["r"] = complex_pair(rt.r[k]);
        m["t"] = complex_pair(rt.t[k]);
        if (rt.r_guarded[k]) m["r_guarded"] = true;
        if (rt.t_guarded[k]) m["t_guarded"] = true;
        modes.push_back(std::move(m));
    }
    j["coefficients"] = std::move(modes);
    j["seconds"] = seconds;
    return j;
}

int run(const RunConfig& config, std::ostream& log) {
    const auto start = clock_type::now();
    check_config(config);
    const ProblemSpec problem = build_problem(config);
    std::filesystem::create_directories(config.out);
    const auto grid = output_grid(config);
    const Method primary = config.method == Method::Collocation ? Method::Collocation : Method::Tensor;

    ordered_json doc;
    doc["config"] = config_to_json(config);
    std::vector<std::pair<Method, MethodRun>> runs;
    ordered_json resolution;
    int N = 0;
    int M = 0;
    if (config.adaptive()) {
        log << "adaptive " << method_name(primary) << " to tol " << config.tol << "\n";
        auto a = adaptive_loop(config, problem, primary);
        auto steps = ordered_json::array();
        for (const auto& s : a.trajectory) {
            log << "  N=" << s.N << " M=" << s.M;
            if (s.difference) log << " diff=" << *s.difference;
            log << " tail=" << s.tail << " (" << s.seconds << " s)\n";
            ordered_json js{{"N", s.N}, {"M", s.M}};
            js["difference"] = s.difference ? ordered_json(*s.difference) : ordered_json(nullptr);
            js["tail"] = s.tail;
            js["seconds"] = s.seconds;
            steps.push_back(std::move(js));
        }
        N = a.N;
        M = a.M;
        resolution["adaptive"] = true;
        resolution["trajectory"] = std::move(steps);
        runs.emplace_back(primary, std::move(a.run));
    } else {
        N = *config.N;
        M = *config.M;
        resolution["adaptive"] = false;
        runs.emplace_back(primary, solve_once(config, problem, primary, N, M, fixed_settings(config)));
    }
    if (config.method == Method::Both) {
        const auto settings = config.adaptive() ? adaptive_settings(config) : fixed_settings(config);
        runs.emplace_back(Method::Collocation, solve_once(config, problem, Method::Collocation, N, M, settings));
    }
    resolution["N"] = N;
    resolution["M"] = M;
    resolution["q"] = runs.front().second.solution.modes.q;
    doc["resolution"] = std::move(resolution);

    int code = kOk;
    ordered_json methods;
    std::vector<CMatrix> fields;
    std::filesystem::remove(config.out / "gmres_history.csv");
    for (const auto& [method, r] : runs) {
        const auto report = diagnose(r.solution, problem, r.krylov);
        methods[method_name(method)] = report_json(report, r.path, r.seconds);
        log << method_name(method) << " (" << r.path << ") N=" << N << " M=" << M << " in " << r.seconds << " s";
        if (report.energy_defect) log << ", energy defect " << *report.energy_defect;
        log << "\n";
        if (r.krylov) {
            write_history(config.out / "gmres_history.csv", *r.krylov);
            log << "gmres: " << r.krylov->iterations << " iterations, residual " << r.krylov->final_residual()
                << (r.krylov->converged ? "" : " (not converged)") << "\n";
            if (!r.krylov->converged) code = kNotConverged;
        }
        fields.push_back(evaluate_field(r.solution, grid.xs, grid.ys));
    }
    doc["methods"] = std::move(methods);
    write_field(config.out / "field.csv", grid, fields.front());
    if (fields.size() == 2) {
        write_field(config.out / "field_collocation.csv", grid, fields.back());
        const double diff = (fields.front() - fields.back()).cwiseAbs().maxCoeff();
        doc["method_difference"] = diff;
        log << "max |u_tensor - u_collocation| = " << diff << "\n";
    }
    doc["timings"] = {{"total_seconds", seconds_since(start)}};

    std::ofstream out(config.out / "diagnostics.json");
    if (!out) throw Error("cannot write diagnostics.json");
    out << doc.dump(2) << "\n";
    return code;
}

}  // namespace qps::app
