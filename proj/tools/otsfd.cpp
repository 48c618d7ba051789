// Command-line front end: list, run and reproduce-all.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "otsfd/errors.hpp"
#include "otsfd/experiments.hpp"
#include "otsfd/harness.hpp"

namespace fs = std::filesystem;
using namespace otsfd;

namespace {

enum Exit { kOk = 0, kUsage = 1, kAcceptance = 2, kNumerical = 3 };

std::string order_text(double v) {
    if (std::isinf(v)) return "exact";
    std::ostringstream os;
    os << std::setprecision(3) << v;
    return os.str();
}

fs::path out_root(const std::string& fallback) {
    if (const char* env = std::getenv("OTSFD_OUT_DIR"); env && *env) return fs::path(env);
    return fs::path(fallback);
}

std::optional<bool> parse_switch(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s == "on") return true;
    if (s == "off") return false;
    throw ConfigError("--correction expects on or off, got '" + s + "'");
}

int cmd_list() {
    std::cout << std::left << std::setw(24) << "experiment" << std::setw(30) << "scheme" << std::setw(34)
              << "dt_opt" << std::setw(10) << "ots+nidc" << std::setw(10) << "without"
              << "fixture\n";
    for (const auto& e : experiments()) {
        const auto& fx = fixture(e.fixture);
        const auto sd = e.descriptor(fx);
        std::string formula = sd.dt_opt_formula;
        if (!e.grid_rule.empty() && formula.find(e.grid_rule) == std::string::npos) formula += " with " + e.grid_rule;
        const std::string with = sd.ots_capable ? order_text(predicted_order(sd, true)) : "-";
        const auto& plain = sd.ots_capable ? e.subopt_policy : e.default_policy;
        const std::string without = order_text(predicted_order(sd, plain, false));
        std::cout << std::setw(24) << e.name << std::setw(30) << sd.name << std::setw(34) << formula << std::setw(10)
                  << with << std::setw(10) << without << e.fixture << '\n';
    }
    return kOk;
}

void print_summary(const ConvergenceReport& r, std::ostream& os) {
    os << r.experiment << " [" << r.variant << "]";
    for (const auto& row : r.rows) {
        os << "\n  N=" << row.n << " dx=" << format_double(row.dx) << " dt=" << format_double(row.dt)
           << " error=" << format_double(row.error);
        if (!row.ok()) os << " FAILED: " << row.failure;
    }
    os << "\n  max error " << format_double(r.max_error()) << ", fitted order ";
    if (std::isnan(r.order)) {
        os << "n/a";
    } else {
        os << std::fixed << std::setprecision(3) << r.order << std::defaultfloat << " (residual "
           << std::setprecision(3) << r.fit_residual << ")";
    }
    os << '\n';
}

struct RunOptions {
    std::string experiment;
    int n_min = 0;
    int refinements = 0;
    std::string policy = "ots";
    std::string correction;
    double final_time = 0;
    std::string out;
    std::string fixture;
};

int cmd_run(const RunOptions& o) {
    const Experiment& e = experiment(o.experiment);
    StudyConfig c;
    c.experiment = e.name;
    const int n_min = o.n_min > 0 ? o.n_min : e.n_min;
    const int count = o.refinements > 0 ? o.refinements : e.refinements;
    c.resolutions = dyadic_resolutions(n_min, count);
    if (o.final_time > 0) c.final_time = o.final_time;
    c.policy = o.policy;
    c.correction = parse_switch(o.correction);
    if (!o.fixture.empty()) c.fixture = o.fixture;
    const auto report = run_study(c);
    fs::path out = o.out.empty() ? out_root(".") / (e.name + ".csv") : fs::path(o.out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    write_csv(out.string(), report);
    print_summary(report, std::cout);
    std::cout << "  wrote " << out.string() << '\n';
    return report.all_ok() ? kOk : kNumerical;
}

int cmd_reproduce_all(const std::string& out_dir, bool with_timing, bool include_runtime) {
    const fs::path root = out_root(out_dir);
    fs::create_directories(root);
    nlohmann::json manifest;
    manifest["header"] = kCsvHeader;
    manifest["studies"] = nlohmann::json::array();
    bool accepted = true;
    bool numerical = false;
    for (const auto& s : reproduction_studies()) {
        StudyConfig c;
        c.experiment = s.experiment;
        c.resolutions = s.resolutions;
        c.policy = s.policy;
        c.correction = s.correction;
        c.fixture = s.fixture;
        const auto report = run_study(c);
        const std::string file = s.id + ".csv";
        write_csv((root / file).string(), report, include_runtime);
        const double measured = s.band.kind == AcceptanceBand::Kind::order ? report.order : report.max_error();
        const bool pass = report.all_ok() && s.band.contains(measured);
        accepted = accepted && pass;
        numerical = numerical || !report.all_ok();
        std::cout << (pass ? "PASS " : "FAIL ") << s.id << ": " << s.band.describe() << ", measured "
                  << format_double(measured) << '\n';
        manifest["studies"].push_back({{"id", s.id},
                                       {"experiment", s.experiment},
                                       {"variant", report.variant},
                                       {"csv", file},
                                       {"fitted_order", std::isnan(report.order) ? nlohmann::json(nullptr)
                                                                                 : nlohmann::json(report.order)},
                                       {"max_error", report.max_error()},
                                       {"acceptance", s.band.describe()},
                                       {"pass", pass}});
    }
    if (with_timing) {
        for (const auto& t : timing_study()) {
            const std::string file = t.id + ".csv";
            write_csv((root / file).string(), t.report, include_runtime);
            const bool pass = t.slope < 0;
            accepted = accepted && pass;
            std::cout << (pass ? "PASS " : "FAIL ") << t.id << ": runtime-error slope " << format_double(t.slope)
                      << " (operation count predicts " << format_double(t.expected_slope) << ")\n";
            manifest["studies"].push_back({{"id", t.id},
                                           {"experiment", t.report.experiment},
                                           {"variant", t.report.variant},
                                           {"csv", file},
                                           {"timing_slope", t.slope},
                                           {"expected_slope", t.expected_slope},
                                           {"pass", pass}});
        }
    }
    std::ofstream m(root / "manifest.json", std::ios::binary);
    m << manifest.dump(2) << '\n';
    std::cout << "wrote " << manifest["studies"].size() << " studies to " << root.string() << '\n';
    if (numerical) return kNumerical;
    return accepted ? kOk : kAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal time step and defect correction finite-difference studies"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List registered experiments");

    RunOptions ro;
    auto* run = app.add_subcommand("run", "Run a convergence study and write its CSV");
    run->add_option("experiment", ro.experiment, "Experiment name")->required();
    run->add_option("--n-min", ro.n_min, "Coarsest resolution")->check(CLI::Range(3, 1 << 20));
    run->add_option("--refinements", ro.refinements, "Number of resolutions (dyadic)")->check(CLI::Range(1, 12));
    run->add_option("--policy", ro.policy, "ots | subopt | ratio=<c>:<p>");
    run->add_option("--correction", ro.correction, "on | off")->check(CLI::IsMember({"on", "off"}));
    run->add_option("--final-time", ro.final_time, "Final time")->check(CLI::PositiveNumber);
    run->add_option("--out", ro.out, "CSV output path");
    run->add_option("--seed-fixture", ro.fixture, "Fixture name overriding the registered one");

    std::string out_dir = "otsfd-out";
    bool no_timing = false;
    bool no_runtime = false;
    auto* all = app.add_subcommand("reproduce-all", "Run every registered study into a directory");
    all->add_option("--out", out_dir, "Output directory");
    all->add_flag("--no-timing", no_timing, "Skip the timing series");
    all->add_flag("--no-runtime-column", no_runtime, "Write 0 in the runtime column for byte-stable reruns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*list) return cmd_list();
        if (*run) return cmd_run(ro);
        if (*all) return cmd_reproduce_all(out_dir, !no_timing, !no_runtime);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kUsage;
    } catch (const MissingDerivativeError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kUsage;
    } catch (const RatioMismatchError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}
