#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "qpscatter/diagnostics.hpp"
#include "qpscatter/solution.hpp"
#include "qpscatter/tensor.hpp"

namespace qps::app {

enum ExitCode { kOk = 0, kFailure = 1, kNotConverged = 2, kInvalid = 3 };

/// Window offset for size N under the config's window choice.
std::optional<int> window_offset(const RunConfig& config, int N);

struct MethodRun {
    SolutionField solution;
    std::optional<KrylovLog> krylov;
    std::string path;  ///< "layered", "dense" or "gmres"
    double seconds = 0.0;
};

/// Solver knobs for one solve; the adaptive loop tightens the GMRES ones.
struct SolveSettings {
    double gmres_tol = 1e-8;
    int maxit = 200;
};

SolveSettings fixed_settings(const RunConfig& config);
SolveSettings adaptive_settings(const RunConfig& config);

/// One solve at (N, M). `medium` is the resolved separable form used by the
/// tensor method (resolved here when absent).
MethodRun solve_once(const RunConfig& config, const ProblemSpec& problem, Method method, int N, int M,
                     const SolveSettings& settings, const std::optional<SeparableMedium>& medium = std::nullopt);

struct AdaptiveStep {
    int N = 0;
    int M = 0;
    std::optional<double> difference;  ///< max |u| change from the previous step
    double tail = 0.0;
    double seconds = 0.0;
};

struct AdaptiveResult {
    int N = 0;
    int M = 0;
    MethodRun run;         ///< solution at the chosen (N, M)
    MethodRun refined;     ///< the doubled solve that confirmed it
    std::vector<AdaptiveStep> trajectory;
};

inline constexpr int kAdaptiveCap = 1024;

/// Starting sizes: N = 2 (trig degree) + 2 (propagating count) and
/// M = (Chebyshev degree) + 16, degrees of eps at tol; N rounded up to a
/// multiple of 32, M to a multiple of 16.
std::pair<int, int> adaptive_start(const ProblemSpec& problem, double tol);

/// Doubles N and M until successive fields differ by <= tol on the output
/// grid (differences count as at least machine epsilon times max |u|) and
/// the coarser solution's coefficient tail is <= tol; returns the
/// coarser pair. ResolutionError when a size would pass kAdaptiveCap or the
/// method's dense cap.
AdaptiveResult adaptive_loop(const RunConfig& config, const ProblemSpec& problem, Method method);

nlohmann::ordered_json report_json(const DiagnosticsReport& report, const std::string& path, double seconds);

/// Full run: solve, write diagnostics.json, field.csv and gmres_history.csv
/// into config.out. Progress goes to `log`. Returns the exit code.
int run(const RunConfig& config, std::ostream& log);

}  // namespace qps::app
