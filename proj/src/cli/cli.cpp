#include "cfeas/cli/cli.hpp"

#include "cfeas/iteration.hpp"
#include "cfeas/lab/experiments.hpp"
#include "cfeas/lab/report_io.hpp"
#include "cfeas/lab/suites.hpp"
#include "cfeas/set_json.hpp"
#include "cfeas/trace_io.hpp"

#include "CLI11.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace cfeas::cli
{
namespace
{

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

/// Bad command line values; exit code 1 like schema errors.
class UsageError : public Error
{
public:
    using Error::Error;
};

/// Reads and parses a JSON file. Parse errors carry file:line:column.
nlohmann::json read_json(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError(fmt::format("{}: cannot open file", path.string()));
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw SchemaError(fmt::format("{}:{}:{}: malformed JSON ({})", path.string(), line, col, e.what()));
    }
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw UsageError(fmt::format("{}: cannot write file", path.string()));
    }
    out << text;
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

void prepare_output(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw UsageError(fmt::format("{}: cannot create output directory ({})", dir.string(), ec.message()));
    }
}

// ---------------------------------------------------------------- solve

ControlSchedule schedule_from_json(const nlohmann::json& j, const std::string& path)
{
    if (j.is_number()) {
        return ControlSchedule::constant(j.get<double>());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw SchemaError(fmt::format("{}: expected a number or an object with a string \"kind\"", path));
    }
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "constant") {
        require_known_fields(j, {"kind", "t"}, path);
        return ControlSchedule::constant(number_field(j, "t", path));
    }
    if (kind == "krasnoselskii") {
        require_known_fields(j, {"kind"}, path);
        return ControlSchedule::krasnoselskii();
    }
    if (kind == "sequence") {
        require_known_fields(j, {"kind", "values", "lower", "upper"}, path);
        if (!j.contains("values") || !j["values"].is_array()) {
            throw SchemaError(fmt::format("{}.values: expected an array of numbers", path));
        }
        std::vector<double> values;
        for (std::size_t i = 0; i < j["values"].size(); ++i) {
            if (!j["values"][i].is_number()) {
                throw SchemaError(fmt::format("{}.values[{}]: expected a number", path, i));
            }
            values.push_back(j["values"][i].get<double>());
        }
        return ControlSchedule::sequence(std::move(values), number_field(j, "lower", path),
                                         number_field(j, "upper", path));
    }
    throw SchemaError(fmt::format("{}.kind: unknown schedule '{}' (constant, krasnoselskii, sequence)", path, kind));
}

Json schedule_to_json(const ControlSchedule& s)
{
    switch (s.kind()) {
        case ControlSchedule::Kind::Constant: return Json{{"kind", "constant"}, {"t", s.at(0)}};
        case ControlSchedule::Kind::Krasnoselskii: return Json{{"kind", "krasnoselskii"}};
        case ControlSchedule::Kind::Sequence:
            return Json{{"kind", "sequence"}, {"values", s.values()}, {"lower", s.lower()}, {"upper", s.upper()}};
    }
    return Json::object();
}

Strategy strategy_from_json(const nlohmann::json& j, const std::string& path)
{
    if (j.is_string()) {
        if (j == "cyclic") {
            return Strategy::Cyclic;
        }
        if (j == "remotest") {
            return Strategy::Remotest;
        }
    }
    throw SchemaError(fmt::format("{}: expected \"cyclic\" or \"remotest\"", path));
}

int int_field(const nlohmann::json& j, const char* key, const std::string& path)
{
    const auto& v = j.at(key);
    if (!v.is_number_integer()) {
        throw SchemaError(fmt::format("{}.{}: expected an integer", path, key));
    }
    return v.get<int>();
}

TolerancePolicy tolerance_from_json(const nlohmann::json& j, const std::string& path, TolerancePolicy tol)
{
    require_known_fields(j, {"projTol", "geomTol", "maxInnerIters"}, path);
    if (j.contains("projTol")) {
        tol.projTol = number_field(j, "projTol", path);
    }
    if (j.contains("geomTol")) {
        tol.geomTol = number_field(j, "geomTol", path);
    }
    if (j.contains("maxInnerIters")) {
        tol.maxInnerIters = int_field(j, "maxInnerIters", path);
    }
    return tol;
}

struct SolveOptions
{
    std::optional<double> projTol;
};

int cmd_solve(RunConfig cfg, const SolveOptions& opt, std::ostream& out)
{
    if (cfg.inputPath.empty()) {
        throw UsageError("solve: --input is required");
    }
    const nlohmann::json j = read_json(cfg.inputPath);
    const std::string path = "config";
    require_known_fields(j,
                         {"schemaVersion", "family", "strategy", "schedule", "x0", "maxIters", "stopResidual",
                          "witnesses", "tolerance"},
                         path);
    require_schema_version(j, path);

    if (!j.contains("family")) {
        throw SchemaError("config.family: missing field");
    }
    Family family;
    if (j["family"].is_string()) {
        const fs::path familyPath = cfg.inputPath.parent_path() / j["family"].get<std::string>();
        family = family_from_json(read_json(familyPath), familyPath.string());
    } else {
        family = family_from_json(j["family"], "config.family");
    }
    const Eigen::Index n = dimension(family.sets.front());

    const Strategy strategy = j.contains("strategy") ? strategy_from_json(j["strategy"], "config.strategy")
                                                     : Strategy::Cyclic;
    const ControlSchedule schedule = j.contains("schedule") ? schedule_from_json(j["schedule"], "config.schedule")
                                                            : ControlSchedule::constant(1.0);
    if (!j.contains("x0")) {
        throw SchemaError("config.x0: missing field");
    }
    const Point x0 = point_from_json(j["x0"], "config.x0");
    if (x0.size() != n) {
        throw SchemaError(fmt::format("config.x0: dimension {} does not match the family dimension {}", x0.size(), n));
    }
    std::vector<Point> witnesses;
    if (j.contains("witnesses")) {
        if (!j["witnesses"].is_array()) {
            throw SchemaError("config.witnesses: expected an array of points");
        }
        for (std::size_t i = 0; i < j["witnesses"].size(); ++i) {
            witnesses.push_back(point_from_json(j["witnesses"][i], fmt::format("config.witnesses[{}]", i)));
        }
    }
    int maxIters = j.contains("maxIters") ? int_field(j, "maxIters", path) : 10'000;
    if (cfg.horizon) {
        maxIters = *cfg.horizon;
    }
    const double stopResidual = j.contains("stopResidual") ? number_field(j, "stopResidual", path) : 1e-10;
    TolerancePolicy tol = j.contains("tolerance") ? tolerance_from_json(j["tolerance"], "config.tolerance", cfg.tol)
                                                  : cfg.tol;
    if (opt.projTol) {
        tol.projTol = *opt.projTol;
    }
    tol.validate();

    const IterationTrace trace =
        projection_algorithm(family, strategy, schedule, x0, maxIters, stopResidual, witnesses, tol);
    std::string regularity = "inconclusive";
    try {
        regularity = std::string(verdict_name(regularity_monitor(trace, family, 0.0, tol).verdict));
    } catch (const ConvergenceError&) {
        // Dykstra could not resolve the intersection distance; stay inconclusive.
    }

    const TraceStep& last = trace.steps.back();
    Json summary;
    summary["schemaVersion"] = kSchemaVersion;
    summary["command"] = "solve";
    summary["strategy"] = strategy_name(strategy);
    summary["schedule"] = schedule_to_json(schedule);
    summary["verdict"] = trace.converged ? "converged" : "maxIters";
    summary["converged"] = trace.converged;
    summary["iterations"] = trace.iterations;
    summary["maxIters"] = maxIters;
    summary["finalResidual"] = last.max_set_distance();
    summary["stopResidual"] = stopResidual;
    summary["finalPoint"] = point_to_json(last.x);
    summary["regularity"] = regularity;

    prepare_output(cfg.outputDir);
    write_text(cfg.outputDir / "trace.csv", trace_to_csv(trace));
    write_json(cfg.outputDir / "summary.json", summary);
    if (trace.converged) {
        out << fmt::format("converged after {} iterations, residual {:.3e}\n", trace.iterations,
                           last.max_set_distance());
    } else {
        out << fmt::format("not converged after {} iterations, residual {:.3e}\n", trace.iterations,
                           last.max_set_distance());
    }
    out << fmt::format("wrote {} and {}\n", (cfg.outputDir / "trace.csv").string(),
                       (cfg.outputDir / "summary.json").string());
    return trace.converged ? kOk : kNotConverged;
}

// ---------------------------------------------------------------- scenario

struct ScenarioOptions
{
    std::string caseName;
    std::optional<std::string> halfAngle;
    std::optional<double> delta;
    std::optional<double> p;
    std::optional<double> d;
    std::optional<double> eps;
    std::optional<double> radiusA;
    std::optional<double> radiusB;
    std::optional<double> centerGap;
    std::optional<double> threshold;
    std::optional<std::string> instance;
    std::optional<double> projTol;
};

template <class T>
void fill(std::optional<T>& target, const nlohmann::json& j, const char* key, const std::string& path)
{
    if (target || !j.contains(key)) {
        return;  // command line flags win
    }
    if constexpr (std::is_same_v<T, std::string>) {
        if (!j[key].is_string()) {
            throw SchemaError(fmt::format("{}.{}: expected a string", path, key));
        }
        target = j[key].template get<std::string>();
    } else {
        target = number_field(j, key, path);
    }
}

/// r_k = r0 * 2^k for k < count.
std::vector<double> doubling_schedule(double r0, int count)
{
    if (count < 1 || count > 60) {
        throw PreconditionError(fmt::format("horizon {} out of range for a doubling schedule (1..60)", count));
    }
    std::vector<double> r;
    for (int k = 0; k < count; ++k) {
        r.push_back(std::ldexp(r0, k));
    }
    return r;
}

int cmd_scenario(RunConfig cfg, ScenarioOptions opt, std::ostream& out, std::ostream& err)
{
    std::optional<lab::Scenario> custom4;
    if (!cfg.inputPath.empty()) {
        const nlohmann::json j = read_json(cfg.inputPath);
        const std::string path = "scenario";
        require_known_fields(j,
                             {"schemaVersion", "case", "halfAngle", "delta", "p", "d", "eps", "radiusA", "radiusB",
                              "centerGap", "threshold", "horizon", "instance", "a", "b", "plane", "tolerance"},
                             path);
        require_schema_version(j, path);
        if (j.contains("case") && (!j["case"].is_string() || j["case"].get<std::string>() != opt.caseName)) {
            throw SchemaError(fmt::format("scenario.case: does not match the command line case '{}'", opt.caseName));
        }
        fill(opt.halfAngle, j, "halfAngle", path);
        fill(opt.delta, j, "delta", path);
        fill(opt.p, j, "p", path);
        fill(opt.d, j, "d", path);
        fill(opt.eps, j, "eps", path);
        fill(opt.radiusA, j, "radiusA", path);
        fill(opt.radiusB, j, "radiusB", path);
        fill(opt.centerGap, j, "centerGap", path);
        fill(opt.threshold, j, "threshold", path);
        fill(opt.instance, j, "instance", path);
        if (!cfg.horizon && j.contains("horizon")) {
            cfg.horizon = int_field(j, "horizon", path);
        }
        if (j.contains("tolerance")) {
            cfg.tol = tolerance_from_json(j["tolerance"], "scenario.tolerance", cfg.tol);
        }
        if (j.contains("a") || j.contains("b") || j.contains("plane")) {
            if (!(j.contains("a") && j.contains("b") && j.contains("plane"))) {
                throw SchemaError("scenario: custom case4 bodies need all of \"a\", \"b\" and \"plane\"");
            }
            const ConvexSet a = set_from_json(j["a"], "scenario.a");
            const ConvexSet b = set_from_json(j["b"], "scenario.b");
            const ConvexSet plane = set_from_json(j["plane"], "scenario.plane");
            if (!std::holds_alternative<Polytope>(a) || !std::holds_alternative<Polytope>(b) ||
                !std::holds_alternative<AffineFlat>(plane)) {
                throw SchemaError("scenario: \"a\" and \"b\" must be polytopes and \"plane\" a flat");
            }
            custom4 = lab::scenario_case4(std::get<Polytope>(a), std::get<Polytope>(b), std::get<AffineFlat>(plane),
                                          cfg.tol);
        }
    }
    if (opt.projTol) {
        cfg.tol.projTol = *opt.projTol;
    }
    cfg.tol.validate();

    lab::Scenario scenario;
    lab::GprVerdict expected = lab::GprVerdict::Holds;
    int horizon = 0;
    double threshold = 0.0;
    if (opt.caseName == "case1") {
        scenario = lab::scenario_case1(opt.radiusA.value_or(1.0), opt.radiusB.value_or(1.0),
                                       opt.centerGap.value_or(1.0));
        horizon = cfg.horizon.value_or(300);
        threshold = opt.threshold.value_or(1e-2);
    } else if (opt.caseName == "case2") {
        const double angle = parse_angle(opt.halfAngle.value_or("30deg"));
        horizon = cfg.horizon.value_or(21);
        scenario = lab::scenario_case2(angle, opt.delta.value_or(0.5), doubling_schedule(1.0, horizon));
        threshold = opt.threshold.value_or(1e-4);
        expected = lab::GprVerdict::Fails;
    } else if (opt.caseName == "case3") {
        lab::Case3Params q;
        q.p = opt.p.value_or(1.0);
        q.d = opt.d.value_or(1.0);
        if (opt.halfAngle) {
            q.halfAngle = parse_angle(*opt.halfAngle);
        }
        horizon = cfg.horizon.value_or(27);
        q.rSchedule = doubling_schedule(std::max(1.0, q.p / 2.0), horizon);
        scenario = lab::scenario_case3(q);
        threshold = opt.threshold.value_or(5e-3);
        expected = lab::GprVerdict::Fails;
    } else if (opt.caseName == "case4") {
        const std::string instance = opt.instance.value_or("twin");
        if (custom4) {
            scenario = *custom4;
        } else if (instance == "twin") {
            scenario = lab::twin_square_pyramids();
        } else if (instance == "triangle-square") {
            scenario = lab::triangle_square_pyramids();
        } else {
            throw UsageError(fmt::format("--instance: unknown instance '{}' (twin, triangle-square)", instance));
        }
        horizon = cfg.horizon.value_or(400);
        threshold = opt.threshold.value_or(1e-2);
    } else {
        throw UsageError(fmt::format("scenario: unknown case '{}' (case1, case2, case3, case4)", opt.caseName));
    }
    if (!(threshold > 0.0)) {
        throw PreconditionError("--threshold must be positive");
    }

    const lab::GprReport report = lab::gpr_experiment(scenario, horizon, threshold, cfg.tol);
    lab::GprVerdict verdict = report.verdict;

    Json reportJson;
    reportJson["schemaVersion"] = kSchemaVersion;
    reportJson["command"] = "scenario";
    reportJson["case"] = opt.caseName;
    reportJson["seed"] = cfg.seed;
    reportJson["horizon"] = horizon;
    reportJson["threshold"] = threshold;

    prepare_output(cfg.outputDir);
    if (scenario.kind == lab::CaseKind::Case4) {
        const double eps = opt.eps.value_or(0.1);
        reportJson["tableVerdict"] = lab::gpr_verdict_name(report.verdict);
        try {
            const lab::GprCertificate cert = lab::lemma4_certificate(scenario, eps, horizon, cfg.tol);
            write_json(cfg.outputDir / "certificate.json", lab::certificate_to_json(cert));
            verdict = cert.certified ? lab::GprVerdict::Holds : lab::GprVerdict::Inconclusive;
            reportJson["certificate"] = Json{{"file", "certificate.json"},
                                             {"epsilon", eps},
                                             {"tailIndex", cert.tailIndex},
                                             {"baseDistanceBound", cert.baseDistanceBound},
                                             {"certified", cert.certified}};
            out << fmt::format("certificate: eps {} tail index {} bound {:.3e} ({})\n", eps, cert.tailIndex,
                               cert.baseDistanceBound, cert.certified ? "certified" : "not certified");
        } catch (const CertificationError& e) {
            verdict = lab::GprVerdict::Inconclusive;
            reportJson["certificate"] = Json{{"epsilon", eps}, {"error", e.what()}};
            err << "certificate failed: " << e.what() << "\n";
        }
    }
    const bool matches = verdict == expected;
    reportJson["verdict"] = lab::gpr_verdict_name(verdict);
    reportJson["expectedVerdict"] = lab::gpr_verdict_name(expected);
    reportJson["matchesExpectation"] = matches;
    reportJson["gpr"] = lab::gpr_report_to_json(report);
    reportJson["scenario"] = lab::scenario_to_json(scenario);

    write_text(cfg.outputDir / "gpr_table.csv", lab::gpr_table_to_csv(report, scenario.family.size()));
    write_json(cfg.outputDir / "report.json", reportJson);
    out << fmt::format("{}: verdict {} (expected {}), intersection tail {:.6g}\n", opt.caseName,
                       lab::gpr_verdict_name(verdict), lab::gpr_verdict_name(expected),
                       report.intersectionDistanceTail);
    out << fmt::format("wrote {} and {}\n", (cfg.outputDir / "gpr_table.csv").string(),
                       (cfg.outputDir / "report.json").string());
    return matches ? kOk : kVerdictMismatch;
}

// ---------------------------------------------------------------- check

int cmd_check(RunConfig cfg, const std::string& suite, std::optional<double> projTol, std::ostream& out)
{
    const auto& names = lab::suite_names();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
        throw UsageError(fmt::format("unknown suite '{}'; valid suites: {}, all", suite, fmt::join(names, ", ")));
    }
    if (projTol) {
        cfg.tol.projTol = *projTol;
    }
    cfg.tol.validate();
    const std::vector<lab::SuiteReport> reports = lab::run_suites(suite, cfg.seed, cfg.tol);

    bool allPassed = true;
    Json suites = Json::array();
    for (const auto& r : reports) {
        allPassed = allPassed && r.passed();
        suites.push_back(lab::suite_report_to_json(r));
        out << fmt::format("{:<12} {:>6} cases {:>4} failures  worst {} = {:.6g}  [{}]\n", r.name, r.cases,
                           r.failures, r.worstMeasure, r.worstValue, r.passed() ? "pass" : "FAIL");
    }
    Json report;
    report["schemaVersion"] = kSchemaVersion;
    report["command"] = "check";
    report["suite"] = suite;
    report["seed"] = cfg.seed;
    report["passed"] = allPassed;
    report["suites"] = std::move(suites);
    prepare_output(cfg.outputDir);
    write_json(cfg.outputDir / "check_report.json", report);
    out << fmt::format("wrote {}\n", (cfg.outputDir / "check_report.json").string());
    return allPassed ? kOk : kVerdictMismatch;
}

void add_common(CLI::App* sub, RunConfig& cfg, std::string& outDir, std::string& input)
{
    sub->add_option("--input", input, "JSON configuration file");
    sub->add_option("--out", outDir, "output directory")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--horizon", cfg.horizon, "iteration or sequence horizon");
}

}  // namespace

double parse_angle(std::string_view text)
{
    double factor = std::numbers::pi / 180.0;
    std::string_view number = text;
    if (text.ends_with("deg")) {
        number = text.substr(0, text.size() - 3);
    } else if (text.ends_with("rad")) {
        number = text.substr(0, text.size() - 3);
        factor = 1.0;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (number.empty() || ec != std::errc{} || ptr != number.data() + number.size() || !std::isfinite(value)) {
        throw PreconditionError(fmt::format("cannot read angle '{}' (examples: 30deg, 0.5rad, 30)", text));
    }
    return value * factor;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Convex feasibility toolkit: projection solves, regularity scenarios and property checks"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string outDir = cfg.outputDir.string();
    std::string input;

    auto* solve = app.add_subcommand("solve", "run the projection algorithm on a family");
    add_common(solve, cfg, outDir, input);
    SolveOptions solveOpt;
    solve->add_option("--tol", solveOpt.projTol, "projection tolerance (projTol)");

    auto* scenario = app.add_subcommand("scenario", "run a regularity scenario (case1..case4)");
    add_common(scenario, cfg, outDir, input);
    ScenarioOptions scen;
    scenario->add_option("case", scen.caseName, "case1, case2, case3 or case4")->required();
    scenario->add_option("--tol", scen.projTol, "projection tolerance (projTol)");
    scenario->add_option("--half-angle", scen.halfAngle, "cone half-angle: 30deg, 0.5rad or bare degrees");
    scenario->add_option("--delta", scen.delta, "case2 distance to the contact line");
    scenario->add_option("--p", scen.p, "case3 parabola parameter");
    scenario->add_option("--d", scen.d, "case3 offset from the parabola");
    scenario->add_option("--eps", scen.eps, "case4 certificate accuracy");
    scenario->add_option("--radius-a", scen.radiusA, "case1 radius of the first ball");
    scenario->add_option("--radius-b", scen.radiusB, "case1 radius of the second ball");
    scenario->add_option("--gap", scen.centerGap, "case1 distance between the centers");
    scenario->add_option("--threshold", scen.threshold, "distance threshold of the verdict");
    scenario->add_option("--instance", scen.instance, "case4 bodies: twin or triangle-square");

    auto* check = app.add_subcommand("check", "run a randomized property suite");
    add_common(check, cfg, outDir, input);
    std::string suite;
    std::optional<double> checkTol;
    check->add_option("suite", suite, "projections, fejer, identity, lemma2, lemma3, lemma4, modulus or all")
        ->required();
    check->add_option("--tol", checkTol, "projection tolerance (projTol)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }
    cfg.outputDir = outDir;
    cfg.inputPath = input;

    try {
        if (solve->parsed()) {
            cfg.command = "solve";
            return cmd_solve(cfg, solveOpt, out);
        }
        if (scenario->parsed()) {
            cfg.command = "scenario";
            return cmd_scenario(cfg, scen, out, err);
        }
        cfg.command = "check";
        return cmd_check(cfg, suite, checkTol, out);
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << fmt::format(" (achieved {:.3e})\n", e.achieved());
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace cfeas::cli
