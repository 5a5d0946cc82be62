#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "qpscatter/problem.hpp"
#include "qpscatter/tensor.hpp"

namespace qps::app {

enum class Method { Collocation, Tensor, Both };

/// One run of the driver. Keys of the JSON form match the field names.
struct RunConfig {
    Method method = Method::Tensor;
    IncidentWave wave;

    // exactly one medium source
    std::string medium = "eps1";
    std::string medium_table;  ///< CSV: y, Re eps [, Im eps]
    std::string medium_grid;   ///< CSV: row m at y = cos(m pi / (ny-1)), column i at x = 2 pi i / nx

    // explicit resolution, or adaptive with tol
    std::optional<int> N;
    std::optional<int> M;
    double tol = 1e-8;

    /// "centred", "auto" or a positive integer offset.
    std::string window = "centred";

    TensorStrategy strategy = TensorStrategy::Auto;
    Eigen::Index dense_cap = kDefaultDenseCap;
    std::optional<double> gmres_tol;
    std::optional<int> maxit;
    /// "average" (x-average of eps), "none", or a layered registry medium.
    std::string preconditioner = "average";

    int grid_nx = 256;
    int grid_ny = 128;
    std::filesystem::path out = "out";

    bool adaptive() const { return !N && !M; }
};

std::string method_name(Method m);
Method parse_method(const std::string& name);

/// Throws ValidationError on unknown keys, wrong types or bad values.
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::ordered_json config_to_json(const RunConfig& config);

/// Checks ranges and mutually exclusive fields.
void check_config(const RunConfig& config);

/// Medium named by the config; a sampled grid is compressed by gecp_lowrank
/// into a separable sum on ingest.
MediumSpec build_medium(const RunConfig& config);

ProblemSpec build_problem(const RunConfig& config);

}  // namespace qps::app
