// Acceptance report: one PASS/FAIL line per headline criterion.
// Usage: otsfd_acceptance [--unit-tests <path>] [--known-failure <id>]...
// Exit status is the number of failed criteria not listed with --known-failure (capped at 125).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "otsfd/experiments.hpp"
#include "otsfd/harness.hpp"
#include "otsfd/solvers_2d.hpp"

using namespace otsfd;

namespace {

struct Check {
    std::string what;
    bool pass = false;
    std::string detail;
    /// Printed but not counted.
    bool informative = false;
};

std::string num(double v, int digits = 3) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

class Report {
   public:
    explicit Report(std::vector<std::string> known) : known_(std::move(known)) {}

    void criterion(const std::string& id, const std::string& name, const std::vector<Check>& checks) {
        const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || c.informative; });
        const bool known = std::find(known_.begin(), known_.end(), id) != known_.end();
        std::cout << (ok ? "PASS " : "FAIL ") << name << " [" << id << "]" << (!ok && known ? " (known failure)" : "")
                  << '\n';
        for (const auto& c : checks) {
            const char* tag = c.informative ? "info " : (c.pass ? "ok   " : "MISS ");
            std::cout << "       " << tag << c.what << ": " << c.detail << '\n';
        }
        std::cout.flush();
        if (!ok) (known ? known_failures_ : failures_) += 1;
    }
    int failures() const { return failures_; }
    int known_failures() const { return known_failures_; }

   private:
    std::vector<std::string> known_;
    int failures_ = 0;
    int known_failures_ = 0;
};

// Runs each registered study once and keeps the reports by id.
class Studies {
   public:
    const ConvergenceReport& get(const std::string& id) {
        auto it = cache_.find(id);
        if (it != cache_.end()) return it->second;
        for (const auto& s : reproduction_studies()) {
            if (s.id != id) continue;
            StudyConfig c;
            c.experiment = s.experiment;
            c.resolutions = s.resolutions;
            c.policy = s.policy;
            c.correction = s.correction;
            c.fixture = s.fixture;
            return cache_.emplace(id, run_study(c)).first->second;
        }
        throw std::runtime_error("unregistered study " + id);
    }

    Check band(const std::string& id) {
        const auto& r = get(id);
        const auto& spec = *std::find_if(reproduction_studies().begin(), reproduction_studies().end(),
                                         [&](const StudySpec& s) { return s.id == id; });
        const bool order = spec.band.kind == AcceptanceBand::Kind::order;
        const double measured = order ? r.order : r.max_error();
        Check c{id, r.all_ok() && spec.band.contains(measured), ""};
        c.detail = (order ? "fitted order " + num(measured) : "max error " + num(measured)) + ", required " +
                   spec.band.describe();
        if (!r.all_ok()) c.detail += " (a row failed)";
        return c;
    }

    double runtime(const std::string& id) {
        double s = 0;
        for (const auto& row : get(id).rows) s += row.runtime_seconds;
        return s;
    }

   private:
    std::map<std::string, ConvergenceReport> cache_;
};

Check at_most(const std::string& what, double v, double limit, const std::string& unit = "") {
    return {what, v <= limit, num(v) + unit + " (limit " + num(limit) + unit + ")"};
}

Check at_least(const std::string& what, double v, double limit) {
    return {what, v >= limit, num(v) + " (at least " + num(limit) + ")"};
}

// Square pulse on the 100 x 100 grid at the optimal step: after k steps every node must equal
// the initial value k nodes up and to the right, which keeps the diamond's corners intact.
Check pulse_corners() {
    const auto& e = experiment("advection-2d");
    const auto& fx = fixture(e.fixture);
    const auto grid = UniformGrid2D::with_ratio(-10, 10, 100, -20, 100, 2.0, 1);
    const auto variant = make_variant(e, "ots", true);
    const double dt = resolve_dt(schemes::advection_2d(-1.0, -2.0), variant.policy, grid.dx());
    const int k = static_cast<int>(std::lround(e.final_time / dt));
    State2D s{sample_field(grid, fx.exact.u(), 0.0), 0};
    const auto initial = s.u;
    Advection2D stepper(grid, -1.0, -2.0, variant, fx.exact.u());
    advance_steps(stepper, s, dt, k);
    long mismatches = 0;
    long ones = 0;
    for (int j = 0; j + k < grid.ny(); ++j) {
        for (int i = 0; i + k < grid.nx(); ++i) {
            if (s.u(i, j) != initial(i + k, j + k)) ++mismatches;
            if (initial(i + k, j + k) == 1.0) ++ones;
        }
    }
    long ones_initial = 0;
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) ones_initial += initial(i, j) == 1.0;
    }
    return {"pulse shifted node for node (" + std::to_string(k) + " steps)", mismatches == 0 && ones == ones_initial,
            std::to_string(mismatches) + " mismatched nodes, " + std::to_string(ones) + " of " +
                std::to_string(ones_initial) + " pulse nodes carried intact"};
}

int run_unit_tests(const std::string& path) {
    const std::string cmd = "\"" + path + "\" --no-intro --minimal";
    return std::system(cmd.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    std::string unit_tests;
    std::vector<std::string> known;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--unit-tests" && i + 1 < argc) {
            unit_tests = argv[++i];
        } else if (a == "--known-failure" && i + 1 < argc) {
            known.emplace_back(argv[++i]);
        } else {
            std::cerr << "usage: otsfd_acceptance [--unit-tests <path>] [--known-failure <id>]...\n";
            return 125;
        }
    }
    const auto t0 = std::chrono::steady_clock::now();
    Report report(known);
    Studies st;

    report.criterion("advection-1d-exact", "Unit CFL exactness (1D advection, smooth and step data)",
                     {st.band("advection-1d-smooth-ots"), st.band("advection-1d-step-ots"),
                      at_most("runtime", st.runtime("advection-1d-smooth-ots") + st.runtime("advection-1d-step-ots"),
                              1.0, " s")});

    report.criterion("advection-2d-exact", "2D advection exact shift (square pulse, 100 x 100, t = 3)",
                     {st.band("advection-2d-ots"), pulse_corners(), st.band("advection-2d-subopt"),
                      at_most("runtime", st.runtime("advection-2d-ots"), 5.0, " s")});

    report.criterion("wave-kpy", "KPY wave", {st.band("wave-kpy-ots-nidc"), st.band("wave-kpy-subopt")});

    {
        const auto& e = experiment("wave-kpy");
        const auto probe = first_step_probe(dyadic_resolutions(e.n_min, e.refinements));
        const double gap = std::abs(probe.exact.order - probe.fifth.order);
        report.criterion(
            "first-step", "First-step degradation",
            {at_least("fifth-order start minus third-order start", probe.degradation(), 0.7),
             {"third-order start order", true,
              num(probe.third.order) + " (fourth-order start " + num(probe.fourth.order) + ", fifth " +
                  num(probe.fifth.order) + ")",
              true},
             {"exact start", true,
              "order " + num(probe.exact.order) + " (differs from the fifth-order start by " + num(gap) + ")", true}});
    }

    report.criterion("diffusion-1d-fe", "1D diffusion forward Euler",
                     {st.band("diffusion-1d-fe-ots-nidc"), st.band("diffusion-1d-fe-ots")});
    report.criterion("dufort-frankel", "DuFort-Frankel", {st.band("dufort-frankel-ots-nidc"), st.band("dufort-frankel-subopt")});
    report.criterion("burgers", "Burgers (Re = 10)", {st.band("burgers-ots-nidc"), st.band("burgers-subopt")});
    report.criterion("parabolic4", "Fourth-order parabolic", {st.band("parabolic4-fe-ots-nidc"), st.band("parabolic4-fe-subopt"),
                                                st.band("parabolic4-cn2")});
    report.criterion("diffusion-2d", "2D diffusion, regular grid", {st.band("diffusion-2d-9pt-ots-nidc"),
                                                    st.band("diffusion-2d-9pt-subopt"), st.band("diffusion-2d-cn5")});

    {
        const auto& e = experiment("diffusion-2d-starfish");
        std::vector<Check> checks{st.band("diffusion-2d-starfish-ots-nidc"), st.band("diffusion-2d-starfish-subopt")};
        for (int n : {50, 100, 200}) {
            const auto c = starfish_error_concentration(n, make_variant(e, "ots", true), 0.25, 3.0);
            checks.push_back({"N = " + std::to_string(n) + ": nodes with error > 25% of L-inf within 3 dx of boundary",
                              c.fraction() >= 0.9,
                              std::to_string(c.near_boundary) + " of " + std::to_string(c.large_nodes) + " (" +
                                  num(100 * c.fraction()) + "%, at least 90%)"});
        }
        report.criterion("starfish", "2D diffusion, starfish domain", checks);
    }

    {
        const auto series = timing_study();
        std::vector<Check> checks;
        const TimingSeries* fe2d = nullptr;
        const TimingSeries* cn2d = nullptr;
        for (const auto& s : series) {
            const bool near = std::abs(s.slope - s.expected_slope) <= 0.25;
            checks.push_back({s.id + " runtime-error slope", s.slope < 0,
                              num(s.slope) + ", operation count predicts " + num(s.expected_slope) +
                                  (near ? " (within 0.25)" : " (outside 0.25; only a negative slope is required)")});
            if (s.id == "timing-diffusion-2d-9pt") fe2d = &s;
            if (s.id == "timing-diffusion-2d-cn5") cn2d = &s;
        }
        if (fe2d && cn2d) {
            const auto& last = cn2d->report.rows.back();
            const double fe_time = predicted_runtime(*fe2d, last.error);
            checks.push_back({"2D ordering at CN's finest error " + num(last.error), fe_time < last.runtime_seconds,
                              "forward Euler OTS-NIDC " + num(fe_time) + " s vs Crank-Nicolson " +
                                  num(last.runtime_seconds) + " s"});
        }
        report.criterion("timing", "Timing trends", checks);
    }

    if (unit_tests.empty()) {
        report.criterion("oracles", "Stencil and oracle suites", {{"unit test binary", false, "not given"}});
    } else {
        const int rc = run_unit_tests(unit_tests);
        report.criterion("oracles", "Stencil and oracle suites", {{"unit test binary", rc == 0, "exit status " + std::to_string(rc)}});
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << report.failures() << " criteria failed, " << report.known_failures() << " known failures, in "
              << num(secs) << " s\n";
    return std::min(report.failures(), 125);
}
