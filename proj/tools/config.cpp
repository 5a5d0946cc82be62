#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qpscatter/errors.hpp"
#include "qpscatter/lowrank.hpp"
#include "qpscatter/presets.hpp"

namespace qps::app {

namespace {

using nlohmann::json;

Complex complex_value(const json& v, const std::string& key) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) return {v[0].get<double>(), v[1].get<double>()};
    throw ValidationError("config: '" + key + "' must be a number or [re, im]");
}

json complex_json(Complex z) {
    if (z.imag() == 0.0) return z.real();
    return json::array({z.real(), z.imag()});
}

template <typename T>
T typed(const json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw ValidationError("config: '" + key + "' has the wrong type");
    }
}

TensorStrategy parse_strategy(const std::string& s) {
    if (s == "auto") return TensorStrategy::Auto;
    if (s == "dense") return TensorStrategy::Dense;
    if (s == "iterative") return TensorStrategy::Iterative;
    throw ValidationError("config: strategy must be auto, dense or iterative");
}

std::string strategy_name(TensorStrategy s) {
    switch (s) {
        case TensorStrategy::Dense: return "dense";
        case TensorStrategy::Iterative: return "iterative";
        default: return "auto";
    }
}

// Numeric CSV rows; lines that do not start with a number (headers, blanks) are skipped.
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (numeric && !row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ValidationError(path.string() + ": no numeric rows");
    return rows;
}

MediumSpec medium_from_table(const std::filesystem::path& path) {
    std::vector<double> ys;
    std::vector<Complex> values;
    for (const auto& row : read_csv(path)) {
        if (row.size() < 2 || row.size() > 3) throw ValidationError(path.string() + ": rows must be y, Re eps [, Im eps]");
        ys.push_back(row[0]);
        values.emplace_back(row[1], row.size() == 3 ? row[2] : 0.0);
    }
    if (ys.size() < 2) throw ValidationError(path.string() + ": need at least two samples");
    return layered_from_table(ys, values);
}

MediumSpec medium_from_grid(const std::filesystem::path& path) {
    const auto rows = read_csv(path);
    const auto nx = rows.front().size();
    CMatrix values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(nx));
    for (std::size_t m = 0; m < rows.size(); ++m) {
        if (rows[m].size() != nx) throw ValidationError(path.string() + ": ragged grid");
        for (std::size_t i = 0; i < nx; ++i) values(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(i)) = rows[m][i];
    }
    const MediumSpec grid(SampledGrid{values}, "grid");
    const auto lr = gecp_lowrank([&grid](double x, double y) { return grid(x, y); }, 1e-13, 64);
    SeparableSum sum;
    for (const auto& t : lr.terms) {
        const Complex w = t.weight;
        sum.terms.push_back({[phi = t.phi](double x) { return phi(x); }, [psi = t.psi, w](double y) { return w * psi(y); }});
    }
    return MediumSpec(std::move(sum), "grid");
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::Collocation: return "collocation";
        case Method::Both: return "both";
        default: return "tensor";
    }
}

Method parse_method(const std::string& name) {
    if (name == "collocation") return Method::Collocation;
    if (name == "tensor") return Method::Tensor;
    if (name == "both") return Method::Both;
    throw ValidationError("method must be collocation, tensor or both");
}

RunConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("config: top level must be an object");
    static const std::set<std::string> known = {"method", "omega", "theta", "eps_plus", "eps_minus", "mu", "medium",
                                                "medium_table", "medium_grid", "N", "M", "tol", "window", "strategy",
                                                "dense_cap", "gmres_tol", "maxit", "preconditioner", "grid_nx",
                                                "grid_ny", "out"};
    for (const auto& [key, value] : doc.items())
        if (!known.count(key)) throw ValidationError("config: unknown key '" + key + "'");

    RunConfig c;
    if (doc.contains("method")) c.method = parse_method(typed<std::string>(doc["method"], "method"));
    if (doc.contains("omega")) c.wave.omega = typed<double>(doc["omega"], "omega");
    if (doc.contains("theta")) c.wave.theta = typed<double>(doc["theta"], "theta");
    if (doc.contains("eps_plus")) c.wave.eps_plus = complex_value(doc["eps_plus"], "eps_plus");
    if (doc.contains("eps_minus")) c.wave.eps_minus = complex_value(doc["eps_minus"], "eps_minus");
    if (doc.contains("mu")) c.wave.mu = typed<double>(doc["mu"], "mu");
    if (doc.contains("medium")) c.medium = typed<std::string>(doc["medium"], "medium");
    if (doc.contains("medium_table")) c.medium_table = typed<std::string>(doc["medium_table"], "medium_table");
    if (doc.contains("medium_grid")) c.medium_grid = typed<std::string>(doc["medium_grid"], "medium_grid");
    if (doc.contains("N")) c.N = typed<int>(doc["N"], "N");
    if (doc.contains("M")) c.M = typed<int>(doc["M"], "M");
    if (doc.contains("tol")) c.tol = typed<double>(doc["tol"], "tol");
    if (doc.contains("window")) {
        const auto& w = doc["window"];
        c.window = w.is_number_integer() ? std::to_string(w.get<int>()) : typed<std::string>(w, "window");
    }
    if (doc.contains("strategy")) c.strategy = parse_strategy(typed<std::string>(doc["strategy"], "strategy"));
    if (doc.contains("dense_cap")) c.dense_cap = typed<Eigen::Index>(doc["dense_cap"], "dense_cap");
    if (doc.contains("gmres_tol")) c.gmres_tol = typed<double>(doc["gmres_tol"], "gmres_tol");
    if (doc.contains("maxit")) c.maxit = typed<int>(doc["maxit"], "maxit");
    if (doc.contains("preconditioner")) c.preconditioner = typed<std::string>(doc["preconditioner"], "preconditioner");
    if (doc.contains("grid_nx")) c.grid_nx = typed<int>(doc["grid_nx"], "grid_nx");
    if (doc.contains("grid_ny")) c.grid_ny = typed<int>(doc["grid_ny"], "grid_ny");
    if (doc.contains("out")) c.out = typed<std::string>(doc["out"], "out");
    // a file-based medium replaces the default registry name
    if (!doc.contains("medium") && (!c.medium_table.empty() || !c.medium_grid.empty())) c.medium.clear();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ValidationError("config " + path.string() + ": " + e.what());
    }
    RunConfig c = config_from_json(doc);
    // relative medium files are taken relative to the config
    const auto base = path.parent_path();
    if (!c.medium_table.empty() && std::filesystem::path(c.medium_table).is_relative()) c.medium_table = (base / c.medium_table).string();
    if (!c.medium_grid.empty() && std::filesystem::path(c.medium_grid).is_relative()) c.medium_grid = (base / c.medium_grid).string();
    return c;
}

nlohmann::ordered_json config_to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["method"] = method_name(c.method);
    j["omega"] = c.wave.omega;
    j["theta"] = c.wave.theta;
    j["eps_plus"] = complex_json(c.wave.eps_plus);
    j["eps_minus"] = complex_json(c.wave.eps_minus);
    j["mu"] = c.wave.mu;
    if (!c.medium.empty()) j["medium"] = c.medium;
    if (!c.medium_table.empty()) j["medium_table"] = c.medium_table;
    if (!c.medium_grid.empty()) j["medium_grid"] = c.medium_grid;
    if (c.N) j["N"] = *c.N;
    if (c.M) j["M"] = *c.M;
    if (c.adaptive()) j["tol"] = c.tol;
    j["window"] = c.window;
    j["strategy"] = strategy_name(c.strategy);
    j["dense_cap"] = c.dense_cap;
    if (c.gmres_tol) j["gmres_tol"] = *c.gmres_tol;
    if (c.maxit) j["maxit"] = *c.maxit;
    j["preconditioner"] = c.preconditioner;
    j["grid_nx"] = c.grid_nx;
    j["grid_ny"] = c.grid_ny;
    return j;
}

void check_config(const RunConfig& c) {
    c.wave.validate();
    const int sources = !c.medium.empty() + !c.medium_table.empty() + !c.medium_grid.empty();
    if (sources != 1) throw ValidationError("config: give exactly one of medium, medium_table, medium_grid");
    if (c.N.has_value() != c.M.has_value()) throw ValidationError("config: N and M go together (omit both for adaptive)");
    if (c.N && (*c.N < 2 || *c.M < 4)) throw ValidationError("config: need N >= 2 and M >= 4");
    if (c.adaptive() && !(c.tol > 0.0)) throw ValidationError("config: tol must be positive");
    if (c.window != "centred" && c.window != "auto") {
        std::size_t used = 0;
        int q = 0;
        try {
            q = std::stoi(c.window, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != c.window.size() || q < 1) throw ValidationError("config: window must be centred, auto or a positive offset");
        if (c.adaptive()) throw ValidationError("config: a fixed window offset needs explicit N and M");
    }
    if (c.dense_cap < 1) throw ValidationError("config: dense_cap must be positive");
    if (c.gmres_tol && !(*c.gmres_tol > 0.0)) throw ValidationError("config: gmres_tol must be positive");
    if (c.maxit && *c.maxit < 1) throw ValidationError("config: maxit must be positive");
    if (c.grid_nx < 1 || c.grid_ny < 2) throw ValidationError("config: output grid needs grid_nx >= 1, grid_ny >= 2");
    if (c.preconditioner != "average" && c.preconditioner != "none" && !medium_by_name(c.preconditioner).is_layered())
        throw ValidationError("config: preconditioner medium '" + c.preconditioner + "' is not layered");
}

MediumSpec build_medium(const RunConfig& c) {
    if (!c.medium_table.empty()) return medium_from_table(c.medium_table);
    if (!c.medium_grid.empty()) return medium_from_grid(c.medium_grid);
    return medium_by_name(c.medium);
}

ProblemSpec build_problem(const RunConfig& c) { return ProblemSpec{c.wave, build_medium(c)}; }

}  // namespace qps::app
