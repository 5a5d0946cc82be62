#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "app.hpp"
#include "qpscatter/errors.hpp"

int main(int argc, char** argv) {
    using namespace qps::app;
    CLI::App cli{"Quasi-periodic Helmholtz scattering through a layer (collocation / tensor spectral solvers)"};
    std::string config_path, method, preset, out;
    std::optional<double> tol;
    std::optional<int> N, M, maxit;
    bool no_precond = false;
    cli.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    cli.add_option("--method", method, "collocation, tensor or both");
    cli.add_option("--preset", preset, "registry medium: homogeneous, eps1, eps2, eps3");
    cli.add_option("--out", out, "output directory");
    cli.add_option("--tol", tol, "adaptive tolerance (used when N and M are not given)");
    cli.add_option("--N", N, "Fourier modes");
    cli.add_option("--M", M, "Chebyshev degree / coefficient count");
    cli.add_option("--maxit", maxit, "GMRES iteration limit");
    cli.add_flag("--no-precond", no_precond, "unpreconditioned GMRES");
    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!method.empty()) config.method = parse_method(method);
        if (!preset.empty()) {
            config.medium = preset;
            config.medium_table.clear();
            config.medium_grid.clear();
        }
        if (!out.empty()) config.out = out;
        if (tol) config.tol = *tol;
        if (N) config.N = N;
        if (M) config.M = M;
        if (maxit) config.maxit = maxit;
        if (no_precond) config.preconditioner = "none";
        return run(config, std::cout);
    } catch (const qps::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
