#include "otsfd/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "otsfd/errors.hpp"
#include "otsfd/experiments.hpp"

namespace otsfd {

double linf_error(std::span<const double> numeric, std::span<const double> exact) {
    if (numeric.size() != exact.size()) throw ConfigError("linf_error: length mismatch");
    double m = 0;
    for (std::size_t k = 0; k < numeric.size(); ++k) {
        const double d = std::abs(numeric[k] - exact[k]);
        if (std::isnan(d)) return std::numeric_limits<double>::quiet_NaN();
        m = std::max(m, d);
    }
    return m;
}

double linf_error(const ScalarField1D& u, const SpaceTimeFunction& exact) {
    const auto& g = u.grid();
    std::vector<double> e(g.n());
    for (int j = 0; j < g.n(); ++j) e[static_cast<std::size_t>(j)] = exact.eval(g.x(j), 0.0, u.time());
    return linf_error(u.nodes(), e);
}

double linf_error(const ScalarField2D& u, const SpaceTimeFunction& exact) {
    const auto& g = u.grid();
    double m = 0;
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const double d = std::abs(u(i, j) - exact.eval(g.x(i), g.y(j), u.time()));
            if (std::isnan(d)) return std::numeric_limits<double>::quiet_NaN();
            m = std::max(m, d);
        }
    }
    return m;
}

double linf_error(const ScalarField2D& u, const CellClassification& cls, const SpaceTimeFunction& exact) {
    const auto& g = u.grid();
    if (g != cls.grid()) throw ConfigError("linf_error: field and classification grids differ");
    double m = 0;
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            if (!cls.is_interior(i, j)) continue;
            const double d = std::abs(u(i, j) - exact.eval(g.x(i), g.y(j), u.time()));
            if (std::isnan(d)) return std::numeric_limits<double>::quiet_NaN();
            m = std::max(m, d);
        }
    }
    return m;
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ConfigError("fit_loglog: length mismatch");
    if (x.size() < 2) throw ConfigError("fit_loglog: need at least two points");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (!(x[k] > 0) || !(y[k] > 0)) throw ConfigError("fit_loglog: values must be positive");
        lx[k] = std::log(x[k]);
        ly[k] = std::log(y[k]);
    }
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < n; ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
    }
    if (sxx == 0) throw ConfigError("fit_loglog: abscissae coincide");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = ly[k] - (f.intercept + f.slope * lx[k]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / static_cast<double>(n));
    return f;
}

namespace {

std::vector<const StudyRow*> usable(const std::vector<StudyRow>& rows) {
    std::vector<const StudyRow*> out;
    for (const auto& r : rows) {
        if (r.ok() && r.error > 0 && std::isfinite(r.error)) out.push_back(&r);
    }
    return out;
}

}  // namespace

LineFit fit_order_detail(const std::vector<StudyRow>& rows) {
    const auto u = usable(rows);
    if (u.size() < 3) throw ConfigError("fit_order: need at least three rows with positive errors");
    std::vector<double> dx, e;
    for (const auto* r : u) {
        dx.push_back(r->dx);
        e.push_back(r->error);
    }
    return fit_loglog(dx, e);
}

double fit_order(const std::vector<StudyRow>& rows) { return fit_order_detail(rows).slope; }

std::vector<double> pairwise_orders(const std::vector<StudyRow>& rows) {
    const auto u = usable(rows);
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
        out.push_back(std::log(u[k]->error / u[k + 1]->error) / std::log(u[k]->dx / u[k + 1]->dx));
    }
    return out;
}

std::vector<int> dyadic_resolutions(int n_min, int count) {
    if (n_min < 2 || count < 1) throw ConfigError("dyadic_resolutions: need n_min >= 2 and count >= 1");
    std::vector<int> v;
    for (int k = 0; k < count; ++k) v.push_back(n_min << k);
    return v;
}

bool ConvergenceReport::all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const StudyRow& r) { return r.ok(); });
}

double ConvergenceReport::max_error() const {
    double m = 0;
    for (const auto& r : rows) {
        if (!r.ok() || std::isnan(r.error)) return std::numeric_limits<double>::quiet_NaN();
        m = std::max(m, r.error);
    }
    return m;
}

ConvergenceReport run_study(const StudyConfig& config) {
    const Experiment& e = experiment(config.experiment);
    const Fixture& fx = fixture(config.fixture.value_or(e.fixture));
    const SchemeVariant variant = make_variant(e, config.policy, config.correction);
    if (config.resolutions.empty()) throw ConfigError("run_study: empty resolution list");
    if (config.repetitions < 1) throw ConfigError("run_study: repetitions must be positive");
    const double t_final = config.final_time.value_or(e.final_time);
    if (!(t_final > 0)) throw ConfigError("run_study: final time must be positive");

    ConvergenceReport rep;
    rep.experiment = e.name;
    rep.scheme = e.descriptor(fx).name;
    rep.variant = variant_label(variant, e.has_correction);
    for (int n : config.resolutions) {
        StudyRow row;
        row.n = n;
        double best = std::numeric_limits<double>::infinity();
        for (int rep_i = 0; rep_i < config.repetitions && row.ok(); ++rep_i) {
            try {
                const auto t0 = std::chrono::steady_clock::now();
                const RunResult r = e.run(RunRequest{n, t_final, variant, &fx});
                const auto t1 = std::chrono::steady_clock::now();
                best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
                row.dx = r.dx;
                row.dt = r.dt;
                row.dt_ratio = r.dt / r.dt_opt;
                row.error = r.error;
                row.steps = r.steps;
                if (!std::isfinite(r.error)) row.failure = "non-finite error";
            } catch (const ConfigError&) {
                throw;
            } catch (const MissingDerivativeError&) {
                throw;
            } catch (const RatioMismatchError&) {
                throw;
            } catch (const AnisotropicGridError&) {
                throw;
            } catch (const InsufficientGhostError&) {
                throw;
            } catch (const Error& err) {
                row.failure = err.what();
                row.error = std::numeric_limits<double>::quiet_NaN();
            }
        }
        row.runtime_seconds = std::isfinite(best) ? best : 0.0;
        rep.rows.push_back(std::move(row));
    }
    const auto u = usable(rep.rows);
    if (u.size() >= 3) {
        const auto f = fit_order_detail(rep.rows);
        rep.order = f.slope;
        rep.fit_residual = f.residual;
    } else {
        rep.order = std::numeric_limits<double>::quiet_NaN();
        rep.fit_residual = std::numeric_limits<double>::quiet_NaN();
    }
    rep.pairwise = pairwise_orders(rep.rows);
    return rep;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const ConvergenceReport& report, bool include_runtime) {
    os << kCsvHeader << '\n';
    for (const auto& r : report.rows) {
        os << report.experiment << ',' << report.scheme << ',' << report.variant << ',' << r.n << ','
           << format_double(r.dx) << ',' << format_double(r.dt) << ',' << format_double(r.error) << ','
           << format_double(include_runtime ? r.runtime_seconds : 0.0) << '\n';
    }
}

void write_csv(const std::string& path, const ConvergenceReport& report, bool include_runtime) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + path + "' for writing");
    write_csv(f, report, include_runtime);
    if (!f) throw ConfigError("write to '" + path + "' failed");
}

FirstStepProbe first_step_probe(const std::vector<int>& resolutions) {
    auto study = [&](const char* name) {
        StudyConfig c;
        c.experiment = name;
        c.resolutions = resolutions;
        c.policy = "ots";
        c.correction = true;
        return run_study(c);
    };
    return {study("wave-kpy-start3"), study("wave-kpy-start4"), study("wave-kpy"), study("wave-kpy-exact-start")};
}

LineFit runtime_error_slope(const std::vector<StudyRow>& rows, std::size_t tail) {
    std::vector<double> e, t;
    for (const auto& r : rows) {
        if (r.ok() && r.error > 0 && r.runtime_seconds > 0) {
            e.push_back(r.error);
            t.push_back(r.runtime_seconds);
        }
    }
    if (e.size() < 2) throw ConfigError("runtime_error_slope: need two timed rows");
    const std::size_t k = std::min(tail, e.size());
    return fit_loglog(std::span<const double>(e).last(k), std::span<const double>(t).last(k));
}

std::vector<TimingSeries> timing_study(const std::vector<std::string>& ids, int repetitions) {
    std::vector<TimingSeries> out;
    for (const auto& spec : timing_studies()) {
        if (!ids.empty() && std::find(ids.begin(), ids.end(), spec.id) == ids.end()) continue;
        StudyConfig c;
        c.experiment = spec.experiment;
        c.resolutions = spec.resolutions;
        c.policy = spec.policy;
        c.repetitions = repetitions;
        TimingSeries s;
        s.id = spec.id;
        s.report = run_study(c);
        s.expected_slope = spec.expected_slope;
        s.fit = runtime_error_slope(s.report.rows);
        s.slope = s.fit.slope;
        out.push_back(std::move(s));
    }
    return out;
}

double predicted_runtime(const TimingSeries& s, double error) {
    return std::exp(s.fit.intercept + s.fit.slope * std::log(error));
}

}  // namespace otsfd
