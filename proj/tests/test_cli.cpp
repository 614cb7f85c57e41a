#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int status = -1;
    std::string out, err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("strip_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Run run(const std::string& args) {
    const fs::path out = scratch() / "stdout", err = scratch() / "stderr";
    const std::string cmd = std::string(STRIP_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    Run r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write(const std::string& name, const std::string& body) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << body;
    return p;
}

const char* kReference = R"({"seeds": [[1.4142135623730951, 1.4142135623730951]]})";

}  // namespace

TEST_CASE("cli: reference curve validates") {
    const Run r = run("curve validate --curve " + write("ref.json", kReference).string());
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["report"]["failures"].empty());
    CHECK(j.contains("tolerances"));
}

TEST_CASE("cli: a curve with real roots fails numerically") {
    // (1/16)(λ-2)(λ-1/2)(λ-3)(λ-1/3)
    const Run r = run("curve validate --curve " +
                      write("real.json", R"({"genus": 2, "coeffs": [0.0625, -0.3645833333333333, 0.6458333333333334, -0.3645833333333333, 0.0625]})")
                          .string());
    CHECK(r.status == 1);
    CHECK(r.err.find("root on ℝ") != std::string::npos);
    CHECK(json::parse(r.err)["error"] == "root on ℝ");
}

TEST_CASE("cli: malformed input exits with 2 and a JSON error") {
    Run r = run("curve validate --curve " + write("bad.json", R"({"seeds": [[2, 1]], "colour": 3})").string());
    CHECK(r.status == 2);
    CHECK(json::parse(r.err)["error"] == "invalid input");
    r = run("curve validate --curve " + (scratch() / "missing.json").string());
    CHECK(r.status == 2);
    r = run("curve random --genus 2");
    CHECK(r.status == 2);
    r = run("curve validate --curve " + write("seed.json", R"({"seeds": [[2, 0]]})").string());
    CHECK(r.status == 2);
    CHECK(json::parse(r.err)["error"] == "invalid seed");
    r = run("cmc ab --R 1 --theta 1.5707963267948966 --eps 1");
    CHECK(r.status == 2);
    CHECK(json::parse(r.err)["error"] == "degenerate contact angle");
    r = run("algebra selftest --seed 1 --tol-axis 3");
    CHECK(r.status == 2);
}

TEST_CASE("cli: random curves are reproducible and admissible") {
    const Run a = run("curve random --genus 4 --seed 7"), b = run("curve random --genus 4 --seed 7");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    const Run v = run("curve validate --curve " + write("rand.json", a.out).string());
    CHECK(v.status == 0);
}

TEST_CASE("cli: tolerance overrides are echoed") {
    const Run r = run("periods --tol-lattice 1e-6 --curve " + write("ref.json", kReference).string());
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["tolerances"]["lattice"].get<double>() == 1e-6);
    CHECK(j["Pi"].size() == 2);
}

TEST_CASE("cli: solve writes CSV with full precision") {
    const fs::path csv = scratch() / "u.csv", plot = scratch() / "u.dat";
    const Run r = run("solve --seed 3 --nx 4 --ny 3 --curve " + write("ref.json", kReference).string() + " --csv " +
                      csv.string() + " --emit-plot-data " + plot.string());
    CHECK(r.status == 0);
    std::ifstream f(csv);
    std::string header, row;
    std::getline(f, header);
    CHECK(header == "x,y,u,residual");
    int rows = 0;
    while (std::getline(f, row)) ++rows;
    CHECK(rows == 12);
    const json j = json::parse(r.out);
    CHECK(j["pde"]["max"].get<double>() < 1e-5);
    CHECK(j["real_locus"].get<double>() < 1e-9);
    // u values carry 17 significant digits
    std::ifstream g(csv);
    std::getline(g, header);
    std::getline(g, row);
    const std::string u = row.substr(row.find(',', row.find(',') + 1) + 1);
    CHECK(u.substr(0, u.find(',')).size() >= 15);
}

TEST_CASE("cli: Durham sample, check and scan") {
    const fs::path c = scratch() / "dc.json", p = scratch() / "dp.json";
    REQUIRE(run("durham sample --A 0.4 --B -0.4 --seed 2 --curve-out " + c.string() + " --potential-out " + p.string()).status == 0);
    const std::string io = " --curve " + c.string() + " --A 0.4 --B -0.4";
    Run r = run("durham check --potential " + p.string() + io);
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["boundary_y0"].get<double>() < 1e-4);
    CHECK(j["special_subsets"] == 2);
    r = run("durham scan-L --Lmax 6 --potential " + p.string() + io);
    CHECK(r.status == 0);
    j = json::parse(r.out);
    REQUIRE_FALSE(j["candidates"].empty());
    CHECK(j["candidates"][0]["residual"].get<double>() < 1e-6);
    CHECK(j["candidates"][0]["complementary_boundary"].get<double>() < 1e-3);
}

TEST_CASE("cli: flow run keeps the determinant") {
    const fs::path c = scratch() / "fc.json", p = scratch() / "fp.json";
    REQUIRE(run("durham sample --A 0.4 --B -0.4 --seed 5 --curve-out " + c.string() + " --potential-out " + p.string()).status == 0);
    const Run r = run("flow run --potential " + p.string() + " --P '[1, [0,1]]' --Q '[1]' --t 0.1 --samples 3");
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["trajectory"].size() >= 4);
    for (const auto& st : j["trajectory"]) CHECK(st["det_drift"].get<double>() < 1e-9);
    CHECK(run("flow run --potential " + p.string() + " --P 'nonsense'").status == 2);
}

TEST_CASE("cli: algebra self-test ledger") {
    const Run r = run("algebra selftest --q 1 --window 3 --seed 4 --trials 5");
    CHECK(r.status == 0);
    for (const auto& c : json::parse(r.out)["checks"]) CHECK(c["pass"].get<bool>());
}

TEST_CASE("cli: acceptance reports are byte-identical across runs") {
    const fs::path a = scratch() / "a.json", b = scratch() / "b.json";
    const Run ra = run("accept --quiet --seed 42 --out " + a.string());
    const Run rb = run("accept --quiet --seed 42 --out " + b.string());
    CHECK(ra.status == rb.status);
    CHECK(slurp(a) == slurp(b));
    CHECK(json::parse(slurp(a))["criteria"].size() == 12);
}
