#include "cfeas/cli/cli.hpp"
#include "cfeas/lab/report_io.hpp"

#include "doctest.h"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace cfeas;
namespace fs = std::filesystem;

namespace
{

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "cfeas");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cfeas::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "cfeas_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string read(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kQuadrant = R"({"schemaVersion": 1,
 "family": {"schemaVersion": 1, "sets": [
   {"kind": "halfspace", "normal": [1, 0], "offset": 0},
   {"kind": "halfspace", "normal": [0, 1], "offset": 0}]},
 "strategy": "cyclic", "schedule": 1.0, "x0": [1, 1]})";

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("angles")
    {
        CHECK(cli::parse_angle("30deg") == doctest::Approx(std::numbers::pi / 6));
        CHECK(cli::parse_angle("30") == doctest::Approx(std::numbers::pi / 6));
        CHECK(cli::parse_angle("0.5rad") == 0.5);
        CHECK_THROWS_AS(cli::parse_angle("deg"), PreconditionError);
        CHECK_THROWS_AS(cli::parse_angle("30 deg"), PreconditionError);
        CHECK_THROWS_AS(cli::parse_angle("thirty"), PreconditionError);
    }

    TEST_CASE("solve two halfspaces")
    {
        const fs::path dir = scratch("quadrant");
        write(dir / "cfg.json", kQuadrant);
        const Run r = invoke({"solve", "--input", (dir / "cfg.json").string(), "--out", (dir / "out").string()});
        CHECK(r.code == cli::kOk);
        const auto summary = nlohmann::json::parse(read(dir / "out" / "summary.json"));
        CHECK(summary["iterations"] == 2);
        CHECK(summary["verdict"] == "converged");
        CHECK(read(dir / "out" / "trace.csv").rfind("k,chosenSet,residual,d_1,d_2,d_intersection\r\n", 0) == 0);
    }

    TEST_CASE("solve two balls with remotest over-relaxation")
    {
        const fs::path dir = scratch("balls");
        write(dir / "family.json", R"({"schemaVersion": 1, "sets": [
            {"kind": "ball", "center": [0, 0], "radius": 1},
            {"kind": "ball", "center": [1.5, 0], "radius": 1}]})");
        write(dir / "cfg.json", R"({"schemaVersion": 1, "family": "family.json", "strategy": "remotest",
            "schedule": {"kind": "constant", "t": 1.5}, "x0": [0.75, 4], "stopResidual": 1e-9})");
        const Run r = invoke({"solve", "--input", (dir / "cfg.json").string(), "--out", (dir / "out").string()});
        CHECK(r.code == cli::kOk);
        const auto summary = nlohmann::json::parse(read(dir / "out" / "summary.json"));
        CHECK(summary["finalResidual"].get<double>() <= 1e-8);
    }

    TEST_CASE("solve hitting the iteration cap")
    {
        const fs::path dir = scratch("cap");
        write(dir / "cfg.json", R"({"schemaVersion": 1,
            "family": {"schemaVersion": 1, "sets": [
              {"kind": "ball", "center": [0, 0], "radius": 1},
              {"kind": "ball", "center": [2, 0], "radius": 1}]},
            "schedule": 0.5, "x0": [1, 3], "maxIters": 5})");
        const Run r = invoke({"solve", "--input", (dir / "cfg.json").string(), "--out", (dir / "out").string()});
        CHECK(r.code == cli::kNotConverged);
        CHECK(nlohmann::json::parse(read(dir / "out" / "summary.json"))["verdict"] == "maxIters");
    }

    TEST_CASE("solve input errors")
    {
        const fs::path dir = scratch("errors");
        write(dir / "nokind.json", R"({"schemaVersion": 1,
            "family": {"schemaVersion": 1, "sets": [{"kind": "ball", "center": [0], "radius": 1}, {"radius": 1}]},
            "x0": [1]})");
        Run r = invoke({"solve", "--input", (dir / "nokind.json").string(), "--out", (dir / "out").string()});
        CHECK(r.code == cli::kInputError);
        CHECK(r.err.find("config.family.sets[1].kind") != std::string::npos);

        write(dir / "broken.json", "{\"schemaVersion\": 1,\n  \"x0\": [1,\n}");
        r = invoke({"solve", "--input", (dir / "broken.json").string(), "--out", (dir / "out").string()});
        CHECK(r.code == cli::kInputError);
        CHECK(r.err.find("broken.json:3:") != std::string::npos);

        write(dir / "extra.json", std::string(kQuadrant).insert(1, "\"colour\": 1, "));
        r = invoke({"solve", "--input", (dir / "extra.json").string(), "--out", (dir / "out").string()});
        CHECK(r.code == cli::kInputError);
        CHECK(r.err.find("colour") != std::string::npos);

        r = invoke({"solve", "--input", (dir / "missing.json").string()});
        CHECK(r.code == cli::kInputError);
        r = invoke({"solve", "--bogus"});
        CHECK(r.code == cli::kInputError);
    }

    TEST_CASE("scenario runs")
    {
        const fs::path dir = scratch("scenario");
        Run r = invoke({"scenario", "case2", "--half-angle", "30deg", "--delta", "0.5", "--out", (dir / "c2").string()});
        CHECK(r.code == cli::kOk);
        const auto report = nlohmann::json::parse(read(dir / "c2" / "report.json"));
        CHECK(report["verdict"] == "gprFails");
        CHECK(read(dir / "c2" / "gpr_table.csv").rfind("k,d_set_1,d_set_2,d_intersection\r\n", 0) == 0);

        r = invoke({"scenario", "case1", "--out", (dir / "c1").string()});
        CHECK(r.code == cli::kOk);

        // A threshold far below what the sequence reaches leaves the verdict open.
        r = invoke({"scenario", "case1", "--threshold", "1e-9", "--out", (dir / "c1b").string()});
        CHECK(r.code == cli::kVerdictMismatch);

        r = invoke({"scenario", "case2", "--delta", "-1", "--out", (dir / "bad").string()});
        CHECK(r.code == cli::kInputError);
        r = invoke({"scenario", "case4", "--instance", "cube", "--out", (dir / "bad").string()});
        CHECK(r.code == cli::kInputError);
        r = invoke({"scenario", "case9"});
        CHECK(r.code == cli::kInputError);
    }

    TEST_CASE("scenario from a config file")
    {
        const fs::path dir = scratch("scenario_json");
        write(dir / "c3.json", R"({"schemaVersion": 1, "case": "case3", "p": 1, "d": 1, "horizon": 27})");
        Run r = invoke({"scenario", "case3", "--input", (dir / "c3.json").string(), "--out", (dir / "a").string()});
        CHECK(r.code == cli::kOk);
        write(dir / "angle.json", R"({"schemaVersion": 1, "halfAngle": 30})");
        r = invoke({"scenario", "case2", "--input", (dir / "angle.json").string(), "--out", (dir / "b").string()});
        CHECK(r.code == cli::kInputError);
        CHECK(r.err.find("scenario.halfAngle") != std::string::npos);
    }

    TEST_CASE("check")
    {
        const fs::path dir = scratch("check");
        Run r = invoke({"check", "identity", "--out", dir.string()});
        CHECK(r.code == cli::kOk);
        const auto report = nlohmann::json::parse(read(dir / "check_report.json"));
        CHECK(report["suites"][0]["cases"] == 10000);
        CHECK(report["suites"][0]["failures"] == 0);
        r = invoke({"check", "lemma2", "--out", dir.string()});
        CHECK(r.code == cli::kOk);
        r = invoke({"check", "nosuch", "--out", dir.string()});
        CHECK(r.code == cli::kInputError);
        CHECK(r.err.find("projections, fejer, identity, lemma2, lemma3, lemma4, modulus, all") != std::string::npos);
    }

    TEST_CASE("same seed, same bytes")
    {
        const fs::path dir = scratch("determinism");
        for (const char* sub : {"a", "b"}) {
            REQUIRE(invoke({"scenario", "case4", "--eps", "0.1", "--seed", "7", "--out", (dir / sub).string()}).code == 0);
        }
        CHECK(read(dir / "a" / "gpr_table.csv") == read(dir / "b" / "gpr_table.csv"));
        CHECK(read(dir / "a" / "report.json") == read(dir / "b" / "report.json"));
        CHECK(read(dir / "a" / "certificate.json") == read(dir / "b" / "certificate.json"));
    }
}
