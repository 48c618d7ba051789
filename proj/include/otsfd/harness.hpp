#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "otsfd/field.hpp"
#include "otsfd/grid.hpp"
#include "otsfd/solvers_1d.hpp"
#include "otsfd/sources.hpp"

namespace otsfd {

/// max |a_i - b_i|. Throws ConfigError on length mismatch.
double linf_error(std::span<const double> numeric, std::span<const double> exact);
/// Over the grid nodes (ghosts excluded) against the exact solution at the field's time.
double linf_error(const ScalarField1D& u, const SpaceTimeFunction& exact);
double linf_error(const ScalarField2D& u, const SpaceTimeFunction& exact);
/// Over the interior nodes of an irregular domain only.
double linf_error(const ScalarField2D& u, const CellClassification& cls, const SpaceTimeFunction& exact);

struct StudyRow {
    int n = 0;
    double dx = 0;
    double dt = 0;
    /// dt / dt_opt; NaN when the scheme has no optimal step.
    double dt_ratio = 0;
    double error = 0;
    double runtime_seconds = 0;
    int steps = 0;
    /// Empty on success; otherwise the solver error that aborted the row.
    std::string failure;

    bool ok() const { return failure.empty(); }
};

struct LineFit {
    double slope = 0;
    double intercept = 0;
    /// Root-mean-square residual of the fit in natural-log units.
    double residual = 0;
};

/// Least-squares line through (log x, log y). Throws ConfigError with fewer than two points
/// or non-positive values.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log error against log dx over the successful rows.
/// Throws ConfigError with fewer than three usable rows.
double fit_order(const std::vector<StudyRow>& rows);
LineFit fit_order_detail(const std::vector<StudyRow>& rows);

/// log(e_k / e_{k+1}) / log(dx_k / dx_{k+1}) for consecutive successful rows.
std::vector<double> pairwise_orders(const std::vector<StudyRow>& rows);

/// Dyadic resolutions n_min, 2 n_min, ... (count entries).
std::vector<int> dyadic_resolutions(int n_min, int count);

struct StudyConfig {
    std::string experiment;
    std::vector<int> resolutions;
    /// Defaults to the experiment's registered final time.
    std::optional<double> final_time;
    std::string policy = "ots";
    std::optional<bool> correction;
    /// Defaults to the experiment's registered fixture.
    std::optional<std::string> fixture;
    /// Wall-clock repetitions per row; the minimum is reported.
    int repetitions = 1;
};

struct ConvergenceReport {
    std::string experiment;
    std::string scheme;
    std::string variant;
    std::vector<StudyRow> rows;
    /// NaN when fewer than three rows succeeded.
    double order = 0;
    double fit_residual = 0;
    std::vector<double> pairwise;

    bool all_ok() const;
    double max_error() const;
};

/// Runs the configured experiment at every resolution, in order. Solver errors abort only
/// their row, which is marked with the error text.
ConvergenceReport run_study(const StudyConfig& config);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

inline constexpr const char* kCsvHeader = "experiment,scheme,variant,N,dx,dt,error_linf,runtime_seconds";

/// CSV with the fixed header and one line per row. When `include_runtime` is false the
/// runtime column is written as 0 so reruns are byte-identical.
void write_csv(std::ostream& os, const ConvergenceReport& report, bool include_runtime = true);
void write_csv(const std::string& path, const ConvergenceReport& report, bool include_runtime = true);

/// Fitted KPY orders with third-, fourth- and fifth-order first steps and with the exact u(dt).
/// A start of order m has local error O(dt^m).
struct FirstStepProbe {
    ConvergenceReport third;
    ConvergenceReport fourth;
    ConvergenceReport fifth;
    ConvergenceReport exact;
    double degradation() const { return fifth.order - third.order; }
};
FirstStepProbe first_step_probe(const std::vector<int>& resolutions);

struct TimingSeries {
    std::string id;
    ConvergenceReport report;
    double expected_slope = 0;
    /// Slope of log runtime against log error over the last `tail` rows.
    double slope = 0;
    LineFit fit;
};

/// Slope of log runtime against log error over the last `tail` successful rows.
LineFit runtime_error_slope(const std::vector<StudyRow>& rows, std::size_t tail = 3);

/// Runs each registered timing series serially with three repetitions per row.
std::vector<TimingSeries> timing_study(const std::vector<std::string>& ids = {}, int repetitions = 3);

/// Runtime at error e predicted from a series' tail fit.
double predicted_runtime(const TimingSeries& s, double error);

}  // namespace otsfd
