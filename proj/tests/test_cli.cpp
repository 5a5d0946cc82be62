#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using Complex = std::complex<double>;

namespace {

const double kPi = 3.14159265358979323846;
const double kTheta = 3.0 * kPi / 7.0;

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "qpscatter_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// exit status of the CLI; stdout/stderr go to dir/log.txt
int cli(const std::string& args, const fs::path& dir) {
    const char* exe = std::getenv("QPS_CLI");
    REQUIRE(exe != nullptr);
    const std::string cmd = std::string("\"") + exe + "\" " + args + " > \"" + (dir / "log.txt").string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json diagnostics(const fs::path& dir) { return json::parse(slurp(dir / "diagnostics.json")); }

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct Row {
    double x, y;
    Complex u;
};

std::vector<Row> field(const fs::path& file) {
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,y,re_u,im_u");
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        Row r{};
        double re = 0, im = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &r.x, &r.y, &re, &im) == 4);
        r.u = {re, im};
        rows.push_back(r);
    }
    return rows;
}

std::vector<double> history(const fs::path& file) {
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);
    CHECK(line == "iteration,relative_residual");
    std::vector<double> h;
    while (std::getline(in, line)) h.push_back(std::stod(line.substr(line.find(',') + 1)));
    return h;
}

void strip_timings(json& j) {
    if (j.is_object()) {
        j.erase("seconds");
        j.erase("timings");
        for (auto& [k, v] : j.items()) strip_timings(v);
    } else if (j.is_array()) {
        for (auto& v : j) strip_timings(v);
    }
}

}  // namespace

TEST_CASE("homogeneous fixed run writes all outputs") {
    const auto dir = scratch("homogeneous");
    REQUIRE(cli("--preset homogeneous --N 32 --M 32 --out \"" + dir.string() + "\"", dir) == 0);
    CHECK(fs::exists(dir / "diagnostics.json"));
    CHECK(fs::exists(dir / "field.csv"));
    const auto rows = field(dir / "field.csv");
    CHECK(rows.size() == 256u * 128u);
    // homogeneous u is the incident wave
    const double a0 = 10.0 * std::sin(kTheta), b0 = 10.0 * std::cos(kTheta);
    double err = 0.0;
    for (const auto& r : rows) err = std::max(err, std::abs(r.u - std::exp(Complex(0, a0 * r.x - b0 * r.y))));
    CHECK(err <= 1e-8);
    const auto d = diagnostics(dir);
    CHECK(d["resolution"]["adaptive"] == false);
    CHECK(d["methods"]["tensor"]["energy_defect"].get<double>() <= 1e-10);
}

TEST_CASE("eps1 with both methods") {
    const auto dir = scratch("both");
    REQUIRE(cli("--preset eps1 --method both --N 64 --M 80 --out \"" + dir.string() + "\"", dir) == 0);
    const auto d = diagnostics(dir);
    CHECK(d["method_difference"].get<double>() <= 1e-6);
    CHECK(d["methods"]["tensor"]["energy_defect"].get<double>() <= 1e-6);
    CHECK(d["methods"]["collocation"]["energy_defect"].get<double>() <= 1e-6);
    CHECK(fs::exists(dir / "field_collocation.csv"));
}

TEST_CASE("eps3 with the eps1 preconditioner") {
    const auto dir = scratch("precond");
    write(dir / "run.json", R"({"medium": "eps3", "N": 64, "M": 64, "strategy": "iterative",
                                "preconditioner": "eps1", "gmres_tol": 1e-10, "maxit": 200})");
    REQUIRE(cli("--config \"" + (dir / "run.json").string() + "\" --out \"" + dir.string() + "\"", dir) == 0);
    const auto h = history(dir / "gmres_history.csv");
    REQUIRE(h.size() >= 2);
    for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k] <= h[k - 1] * (1 + 1e-12));
    CHECK(h.back() < 1e-8);
}

TEST_CASE("unpreconditioned GMRES stalls with exit 2") {
    const auto dir = scratch("noprecond");
    write(dir / "run.json", R"({"medium": "eps3", "N": 64, "M": 64, "strategy": "iterative"})");
    CHECK(cli("--config \"" + (dir / "run.json").string() + "\" --no-precond --maxit 100 --out \"" + dir.string() + "\"",
              dir) == 2);
    const auto h = history(dir / "gmres_history.csv");
    REQUIRE(h.size() == 101);
    CHECK(h.back() > 1e-2);
    CHECK(diagnostics(dir)["methods"]["tensor"]["gmres"]["converged"] == false);
}

TEST_CASE("validation errors exit 3") {
    const auto dir = scratch("invalid");
    CHECK(cli("--method spectral --out \"" + dir.string() + "\"", dir) == 3);
    write(dir / "bad.json", R"({"medium": "eps1", "colour": "red"})");
    CHECK(cli("--config \"" + (dir / "bad.json").string() + "\"", dir) == 3);
    CHECK(slurp(dir / "log.txt").find("colour") != std::string::npos);
    CHECK(cli("--preset eps1 --N 32 --out \"" + dir.string() + "\"", dir) == 3);
    CHECK(cli("--preset eps7 --out \"" + dir.string() + "\"", dir) == 3);
    CHECK(cli("--preset eps1 --N 32 --M 32 --bogus", dir) == 3);
}

TEST_CASE("adaptive runs") {
    const auto dir = scratch("adaptive_h");
    REQUIRE(cli("--preset homogeneous --out \"" + dir.string() + "\"", dir) == 0);
    const auto d = diagnostics(dir);
    CHECK(d["resolution"]["adaptive"] == true);
    CHECK(d["resolution"]["trajectory"].size() == 2);

    const auto dir1 = scratch("adaptive_eps1");
    REQUIRE(cli("--preset eps1 --tol 1e-8 --out \"" + dir1.string() + "\"", dir1) == 0);
    const auto d1 = diagnostics(dir1);
    CHECK(d1["resolution"]["N"].get<int>() <= 256);
    CHECK(d1["resolution"]["M"].get<int>() <= 256);
    CHECK(d1["methods"]["tensor"]["energy_defect"].get<double>() <= 1e-8);

    const auto dir2 = scratch("adaptive_unreachable");
    CHECK(cli("--preset eps1 --tol 1e-30 --out \"" + dir2.string() + "\"", dir2) == 1);
    CHECK(slurp(dir2 / "log.txt").find("adaptive") != std::string::npos);
}

TEST_CASE("determinism") {
    const auto a = scratch("det_a"), b = scratch("det_b");
    REQUIRE(cli("--preset eps2 --N 32 --M 32 --out \"" + a.string() + "\"", a) == 0);
    REQUIRE(cli("--preset eps2 --N 32 --M 32 --out \"" + b.string() + "\"", b) == 0);
    CHECK(slurp(a / "field.csv") == slurp(b / "field.csv"));
    json da = diagnostics(a), db = diagnostics(b);
    strip_timings(da);
    strip_timings(db);
    da["config"].erase("out");
    db["config"].erase("out");
    CHECK(da == db);
}

TEST_CASE("quasi-periodic seam") {
    const auto dir = scratch("seam");
    REQUIRE(cli("--preset eps2 --N 48 --M 48 --out \"" + dir.string() + "\"", dir) == 0);
    const auto rows = field(dir / "field.csv");
    const Complex shift = std::exp(Complex(0, 2.0 * kPi * 10.0 * std::sin(kTheta)));
    double err = 0.0;
    for (std::size_t r = 0; r < 128; ++r) {
        const auto& left = rows[r * 256];
        const auto& right = rows[r * 256 + 255];
        CHECK(left.x == 0.0);
        CHECK(right.x == doctest::Approx(2.0 * kPi));
        err = std::max(err, std::abs(right.u - shift * left.u));
    }
    CHECK(err <= 1e-8);
}

TEST_CASE("tabulated layered medium") {
    // flat to high order at y = +-1 so the fit still matches eps+- = 1
    const auto dir = scratch("table");
    std::ofstream t(dir / "profile.csv");
    t << "y,eps\n";
    t.precision(17);
    for (int i = 0; i <= 200; ++i) {
        const double y = -1.0 + 2.0 * i / 200.0;
        t << y << ',' << 1.0 + 0.5 * std::cos(2.0 * y) * std::pow(1 - y * y, 8) << '\n';
    }
    t.close();
    write(dir / "run.json", R"({"medium_table": "profile.csv", "N": 48, "M": 48})");
    REQUIRE(cli("--config \"" + (dir / "run.json").string() + "\" --out \"" + dir.string() + "\"", dir) == 0);
    const auto d = diagnostics(dir);
    CHECK(d["methods"]["tensor"]["path"] == "layered");
    CHECK(d["methods"]["tensor"]["energy_defect"].get<double>() <= 1e-8);
}

TEST_CASE("gridded medium, constant") {
    // eps = eps+ = eps- = 1.5: the field is the plane wave with k = omega sqrt(1.5)
    const auto dir = scratch("grid");
    std::ofstream g(dir / "eps.csv");
    for (int m = 0; m < 9; ++m) {
        for (int i = 0; i < 12; ++i) g << (i ? "," : "") << 1.5;
        g << '\n';
    }
    g.close();
    write(dir / "run.json", R"({"medium_grid": "eps.csv", "eps_plus": 1.5, "eps_minus": 1.5, "N": 32, "M": 40})");
    REQUIRE(cli("--config \"" + (dir / "run.json").string() + "\" --out \"" + dir.string() + "\"", dir) == 0);
    const double k = 10.0 * std::sqrt(1.5);
    const double a0 = k * std::sin(kTheta), b0 = k * std::cos(kTheta);
    double err = 0.0;
    for (const auto& r : field(dir / "field.csv")) err = std::max(err, std::abs(r.u - std::exp(Complex(0, a0 * r.x - b0 * r.y))));
    CHECK(err <= 1e-8);
}
