#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "otsfd/ots.hpp"
#include "otsfd/solvers_1d.hpp"
#include "otsfd/sources.hpp"

namespace otsfd {

/// One solver run at a single resolution.
struct RunRequest {
    int n = 0;
    double final_time = 0;
    SchemeVariant variant;
    const Fixture* fixture = nullptr;
};

struct RunResult {
    double dx = 0;
    double dt = 0;
    /// NaN when the scheme has no optimal step.
    double dt_opt = std::numeric_limits<double>::quiet_NaN();
    double error = 0;
    int steps = 0;
    /// Time actually reached; differs from the request when the step count is rounded.
    double final_time = 0;
};

/// A registered solver configuration. Every run derives dt from dx through the policy.
struct Experiment {
    std::string name;
    std::string description;
    std::string fixture;
    double final_time = 1;
    int n_min = 25;
    int refinements = 4;
    /// Whether the scheme has an optional correction term.
    bool has_correction = true;
    /// Policy used when the caller asks for the optimal step.
    TimeStepPolicy default_policy = TimeStepPolicy::optimal();
    /// Policy used for "subopt".
    TimeStepPolicy subopt_policy = TimeStepPolicy::fraction_of_stability(0.5);
    /// Extra grid rule printed by `list` (empty when none).
    std::string grid_rule;
    std::function<SchemeDescriptor(const Fixture&)> descriptor;
    std::function<RunResult(const RunRequest&)> run;
};

const std::vector<Experiment>& experiments();
/// Throws ConfigError for unknown names.
const Experiment& experiment(const std::string& name);

/// Variant for an experiment from the CLI vocabulary: policy "ots", "subopt" or
/// "ratio=<c>:<p>"; correction on/off, defaulting to on only for "ots" on schemes that have one.
SchemeVariant make_variant(const Experiment& e, const std::string& policy, std::optional<bool> correction);

/// Short label for CSV rows, e.g. "ots+nidc" or "fraction=0.5".
std::string variant_label(const SchemeVariant& v, bool has_correction);

/// Acceptance on a study: fitted order within [order_min, order_max] or, for exactness
/// studies, max error within [error_min, error_max].
struct AcceptanceBand {
    enum class Kind { order, max_error };
    Kind kind = Kind::order;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    static AcceptanceBand order_at_least(double v) { return {Kind::order, v, std::numeric_limits<double>::infinity()}; }
    static AcceptanceBand order_at_most(double v) { return {Kind::order, -std::numeric_limits<double>::infinity(), v}; }
    static AcceptanceBand order_between(double a, double b) { return {Kind::order, a, b}; }
    static AcceptanceBand error_at_most(double v) { return {Kind::max_error, 0, v}; }
    static AcceptanceBand error_at_least(double v) {
        return {Kind::max_error, v, std::numeric_limits<double>::infinity()};
    }
    bool contains(double v) const { return v >= lo && v <= hi; }
    std::string describe() const;
};

/// A study in the reproduction set: experiment, variant, resolutions and acceptance band.
struct StudySpec {
    std::string id;  ///< CSV file stem
    std::string experiment;
    std::string policy = "ots";
    std::optional<bool> correction;
    std::vector<int> resolutions;
    std::optional<std::string> fixture;
    AcceptanceBand band;
};

const std::vector<StudySpec>& reproduction_studies();

/// Timing series: runtime-versus-error slope expected from operation counts.
struct TimingSpec {
    std::string id;
    std::string experiment;
    std::string policy = "ots";
    std::vector<int> resolutions;
    double expected_slope = 0;
};

const std::vector<TimingSpec>& timing_studies();

/// Level set of the five-lobed star r = 0.6 + 0.12 cos(5 theta), negative inside.
double starfish_phi(double x, double y);

/// Distance from (x, y) to the starfish boundary, from a dense polyline of the curve.
double starfish_distance(double x, double y);

/// Share of interior nodes with error above `threshold` times the L-infinity error that lie
/// within `band` grid spacings of the boundary, for the starfish run at resolution n.
struct ErrorConcentration {
    double linf = 0;
    std::size_t large_nodes = 0;
    std::size_t near_boundary = 0;
    double fraction() const { return large_nodes ? static_cast<double>(near_boundary) / large_nodes : 1.0; }
};
ErrorConcentration starfish_error_concentration(int n, const SchemeVariant& variant, double threshold = 0.25,
                                                double band = 3.0);

}  // namespace otsfd
