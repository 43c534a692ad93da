#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "willmore/cli.hpp"
#include "willmore/errors.hpp"
#include "willmore/profile_io.hpp"

using namespace willmore;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    const int code = run_cli(args, o, e);
    return {code, o.str(), e.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("willmore_cli_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("grid specs") {
    CHECK(parse_grid("").empty());
    CHECK(parse_grid("1,2.5, 4") == std::vector<double>{1, 2.5, 4});
    const auto g = parse_grid("20:200:10");
    CHECK(g.size() == 19);
    CHECK(g.back() == 200);
    CHECK_THROWS_AS(parse_grid("1:2"), ParameterError);
    CHECK_THROWS_AS(parse_grid("1:2:0"), ParameterError);
    CHECK_THROWS_AS(parse_grid("3:2:1"), ParameterError);
    CHECK_THROWS_AS(parse_grid("1,x"), ParameterError);
}

TEST_CASE("energy of the bundled curves") {
    const double pi = std::numbers::pi;
    auto W = [](const std::string& name) {
        const auto r = cli({"energy", (fs::path(data_dir()) / (name + ".csv")).string()});
        REQUIRE(r.code == 0);
        return nlohmann::json::parse(r.out)["W"].get<double>();
    };
    CHECK(W("sphere") == doctest::Approx(4 * pi).epsilon(1e-8));
    CHECK(std::abs(W("catenary")) < 1e-8);
    CHECK(W("j_model") > 8 * pi);

    const auto csv = cli({"energy", "--format", "csv", (fs::path(data_dir()) / "sphere.csv").string()});
    CHECK(csv.out.rfind("quantity,value\nW,12.566", 0) == 0);
}

TEST_CASE("parse errors carry the line number") {
    const auto dir = scratch("bad");
    fs::create_directories(dir);
    std::ofstream(dir / "bad.csv") << "s,r,h\n0,0,0\n1,zz,1\n";
    const auto r = cli({"energy", (dir / "bad.csv").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(cli({"energy", (dir / "missing.csv").string()}).code == 2);
    fs::remove_all(dir);
}

TEST_CASE("sweep") {
    const auto empty = cli({"sweep"});
    CHECK(empty.code == 0);
    CHECK(empty.out == "lambda,R,delta,kind,W_cap,W_glue,W_neck,W_total,err,status\n");
    const auto a = cli({"sweep", "--kind", "alpha", "--grid", "10,100"});
    CHECK(a.code == 0);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 3);
    // lambda = 1 is outside the domain: the row is kept with its status
    const auto bad = cli({"sweep", "--grid", "1,20"});
    CHECK(bad.code == 1);
    CHECK(std::count(bad.out.begin(), bad.out.end(), '\n') == 3);
}

TEST_CASE("usage errors") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"verify", "nonsense"}).code == 2);
    CHECK(cli({"sweep", "--format", "xml"}).code == 2);
    CHECK(cli({"sweep", "--tol", "-1"}).code == 2);
    CHECK(cli({"homotopy", "--delta", "0.9", "--out", scratch("hom_bad").string()}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("verify suites") {
    for (const std::string s : {"derivatives", "lemma24", "lemmaA3", "liyau", "turning"}) {
        CAPTURE(s);
        const auto r = cli({"verify", s});
        CHECK(r.code == 0);
        CHECK(nlohmann::json::parse(r.out)["passed"] == true);
    }
    const auto liyau = nlohmann::json::parse(cli({"verify", "liyau"}).out);
    CHECK(liyau["violations"] == 0);
    bool catenary_skipped = false;
    for (const auto& c : liyau["curves"]) catenary_skipped |= c["file"] == "catenary.csv" && c["skipped"] == true;
    CHECK(catenary_skipped);
}

TEST_CASE("verify gluing skips a pair outside the hypothesis") {
    const auto r = cli({"verify", "gluing"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    int skipped = 0;
    for (const auto& row : j["pairs"]) skipped += row["skipped"].get<bool>();
    CHECK(skipped == 1);
    // same seed, same bytes; another seed, another corpus
    CHECK(cli({"verify", "gluing"}).out == r.out);
    CHECK(cli({"verify", "gluing", "--pairs", "8", "--seed", "7"}).out != cli({"verify", "gluing", "--pairs", "8"}).out);
}

TEST_CASE("precedence of flags, config file and environment") {
    const auto dir = scratch("cfg");
    fs::create_directories(dir);
    const std::string cfg = (dir / "run.toml").string();
    std::ofstream(cfg) << "grid = \"20,30\"\n[sweep]\nkind = \"alpha\"\n";
    auto rows = [](const Run& r) { return std::count(r.out.begin(), r.out.end(), '\n') - 1; };

    const auto from_file = cli({"sweep", "--config", cfg});
    CHECK(rows(from_file) == 2);
    CHECK(from_file.out.find(",alpha,") != std::string::npos);
    CHECK(rows(cli({"sweep", "--config", cfg, "--grid", "20"})) == 1);

    setenv("WILLMORE_GRID", "20,30,40", 1);
    CHECK(rows(cli({"sweep"})) == 3);
    CHECK(rows(cli({"sweep", "--config", cfg})) == 2);
    CHECK(rows(cli({"sweep", "--grid", "50"})) == 1);
    unsetenv("WILLMORE_GRID");
    fs::remove_all(dir);
}

TEST_CASE("bundled data regenerates byte for byte") {
    const auto dir = scratch("gen");
    REQUIRE(cli({"generate", "all", "--out", dir.string()}).code == 0);
    for (const auto& name : builtin_curve_names()) {
        CAPTURE(name);
        const auto fresh = slurp(dir / (name + ".csv"));
        CHECK(!fresh.empty());
        CHECK(fresh == slurp(fs::path(data_dir()) / (name + ".csv")));
        CHECK_FALSE(fs::exists(dir / (name + ".csv.tmp")));
    }
    CHECK(cli({"generate", "torus"}).code == 2);
    fs::remove_all(dir);
}

TEST_CASE("flow and homotopy write their files") {
    const auto dir = scratch("flow");
    const auto f = cli({"flow", (fs::path(data_dir()) / "sphere.csv").string(), "--nodes", "101", "--steps", "5",
                        "--out", dir.string()});
    CHECK(f.code == 0);
    for (const char* name : {"trajectory.csv", "final.json", "energy.svg", "neck.svg", "profile.svg"})
        CHECK(fs::exists(dir / name));
    CHECK(nlohmann::json::parse(slurp(dir / "final.json"))["termination"] == "converged");

    const auto hd = scratch("hom");
    const auto h = cli({"homotopy", "--out", hd.string()});
    CHECK(h.code == 0);
    const auto sum = nlohmann::json::parse(slurp(hd / "summary.json"));
    CHECK(sum["monotone"] == true);
    CHECK(sum["frames"].size() == 3);
    CHECK(slurp(hd / "profiles.svg").rfind("<svg", 0) == 0);
    CHECK(slurp(hd / "trace.csv").find('\n') != std::string::npos);

    const auto single = cli({"homotopy", "--lambda-start", "5", "--lambda-end", "5", "--out", hd.string()});
    CHECK(single.code == 0);
    CHECK(nlohmann::json::parse(single.out)["frames"].size() == 1);

    const auto bb = cli({"homotopy", "--lambda-start", "200", "--lambda-end", "20", "--delta", "0.1", "--steps", "20",
                         "--composite", "beta,beta", "--out", hd.string()});
    CHECK(bb.code == 0);
    CHECK(nlohmann::json::parse(bb.out)["composite"]["below_8pi"] == true);
    fs::remove_all(dir);
    fs::remove_all(hd);
}
