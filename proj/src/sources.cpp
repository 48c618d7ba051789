#include "otsfd/sources.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "otsfd/errors.hpp"

namespace otsfd {

void SpaceTimeFunction::sample(const UniformGrid1D& grid, double t, std::span<double> out) const {
    const int g = grid.ghost_width();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = eval(grid.x(static_cast<int>(k) - g), 0.0, t);
}

void SpaceTimeFunction::sample(const UniformGrid2D& grid, double t, std::span<double> out) const {
    const int g = grid.ghost_width();
    for (int j = -g; j < grid.ny() + g; ++j) {
        const double y = grid.y(j);
        for (int i = -g; i < grid.nx() + g; ++i) out[grid.offset(i, j)] = eval(grid.x(i), y, t);
    }
}

namespace {

class EvalSampler1D final : public GridSampler {
   public:
    EvalSampler1D(const SpaceTimeFunction& fn, UniformGrid1D grid) : fn_(fn), grid_(std::move(grid)) {}
    void sample(double t, std::span<double> out) const override { fn_.sample(grid_, t, out); }

   private:
    const SpaceTimeFunction& fn_;
    UniformGrid1D grid_;
};

class EvalSampler2D final : public GridSampler {
   public:
    EvalSampler2D(const SpaceTimeFunction& fn, UniformGrid2D grid) : fn_(fn), grid_(std::move(grid)) {}
    void sample(double t, std::span<double> out) const override { fn_.sample(grid_, t, out); }

   private:
    const SpaceTimeFunction& fn_;
    UniformGrid2D grid_;
};

}  // namespace

std::unique_ptr<GridSampler> SpaceTimeFunction::sampler(const UniformGrid1D& grid) const {
    return std::make_unique<EvalSampler1D>(*this, grid);
}

std::unique_ptr<GridSampler> SpaceTimeFunction::sampler(const UniformGrid2D& grid) const {
    return std::make_unique<EvalSampler2D>(*this, grid);
}

FunctionPtr make_function(CallableFunction::Fn fn) { return std::make_shared<CallableFunction>(std::move(fn)); }

FunctionPtr make_function_1d(std::function<double(double, double)> fn) {
    return make_function([fn = std::move(fn)](double x, double, double t) { return fn(x, t); });
}

namespace {

double time_factor(const TrigTerm& m, double t) { return m.a * std::exp(m.lambda * t) * std::sin(m.omega * t + m.phi); }

}  // namespace

double TrigSeries::eval(double x, double y, double t) const {
    double sum = 0;
    for (const auto& m : terms_) sum += time_factor(m, t) * std::sin(m.kx * x + m.px) * std::sin(m.ky * y + m.py);
    return sum;
}

void TrigSeries::sample(const UniformGrid1D& grid, double t, std::span<double> out) const {
    std::ranges::fill(out, 0.0);
    const int g = grid.ghost_width();
    for (const auto& m : terms_) {
        const double tf = time_factor(m, t) * std::sin(m.py);
        if (tf == 0) continue;
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] += tf * std::sin(m.kx * grid.x(static_cast<int>(k) - g) + m.px);
        }
    }
}

void TrigSeries::sample(const UniformGrid2D& grid, double t, std::span<double> out) const {
    std::ranges::fill(out, 0.0);
    const int g = grid.ghost_width();
    const int sx = grid.nx() + 2 * g;
    const int sy = grid.ny() + 2 * g;
    std::vector<double> xs(static_cast<std::size_t>(sx));
    std::vector<double> ys(static_cast<std::size_t>(sy));
    for (const auto& m : terms_) {
        const double tf = time_factor(m, t);
        if (tf == 0) continue;
        for (int i = 0; i < sx; ++i) xs[static_cast<std::size_t>(i)] = std::sin(m.kx * grid.x(i - g) + m.px);
        for (int j = 0; j < sy; ++j) ys[static_cast<std::size_t>(j)] = tf * std::sin(m.ky * grid.y(j - g) + m.py);
        for (int j = 0; j < sy; ++j) {
            double* row = out.data() + static_cast<std::size_t>(j) * sx;
            const double yj = ys[static_cast<std::size_t>(j)];
            for (int i = 0; i < sx; ++i) row[i] += yj * xs[static_cast<std::size_t>(i)];
        }
    }
}

namespace {

// Spatial profiles are fixed per grid; only the scalar time factors change.
class TrigSampler1D final : public GridSampler {
   public:
    TrigSampler1D(const std::vector<TrigTerm>& terms, const UniformGrid1D& grid) : terms_(terms) {
        const int g = grid.ghost_width();
        const std::size_t n = grid.storage_size();
        for (const auto& m : terms_) {
            std::vector<double> prof(n);
            const double sy = std::sin(m.py);
            for (std::size_t k = 0; k < n; ++k) prof[k] = sy * std::sin(m.kx * grid.x(static_cast<int>(k) - g) + m.px);
            profiles_.push_back(std::move(prof));
        }
    }
    void sample(double t, std::span<double> out) const override {
        std::ranges::fill(out, 0.0);
        for (std::size_t m = 0; m < terms_.size(); ++m) {
            const double tf = time_factor(terms_[m], t);
            const auto& prof = profiles_[m];
            for (std::size_t k = 0; k < out.size(); ++k) out[k] += tf * prof[k];
        }
    }

   private:
    std::vector<TrigTerm> terms_;
    std::vector<std::vector<double>> profiles_;
};

class TrigSampler2D final : public GridSampler {
   public:
    TrigSampler2D(const std::vector<TrigTerm>& terms, const UniformGrid2D& grid) : terms_(terms) {
        const int g = grid.ghost_width();
        sx_ = grid.nx() + 2 * g;
        sy_ = grid.ny() + 2 * g;
        for (const auto& m : terms_) {
            std::vector<double> xs(static_cast<std::size_t>(sx_));
            std::vector<double> ys(static_cast<std::size_t>(sy_));
            for (int i = 0; i < sx_; ++i) xs[static_cast<std::size_t>(i)] = std::sin(m.kx * grid.x(i - g) + m.px);
            for (int j = 0; j < sy_; ++j) ys[static_cast<std::size_t>(j)] = std::sin(m.ky * grid.y(j - g) + m.py);
            xs_.push_back(std::move(xs));
            ys_.push_back(std::move(ys));
        }
    }
    void sample(double t, std::span<double> out) const override {
        std::ranges::fill(out, 0.0);
        for (std::size_t m = 0; m < terms_.size(); ++m) {
            const double tf = time_factor(terms_[m], t);
            const double* xs = xs_[m].data();
            for (int j = 0; j < sy_; ++j) {
                const double c = tf * ys_[m][static_cast<std::size_t>(j)];
                double* row = out.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(sx_);
                for (int i = 0; i < sx_; ++i) row[i] += c * xs[i];
            }
        }
    }

    void sample_runs(double t, std::span<const Run> runs, std::span<double> out) const override {
        const auto stride = static_cast<std::size_t>(sx_);
        for (const auto& r : runs) std::fill_n(out.data() + r.begin, r.length, 0.0);
        for (std::size_t m = 0; m < terms_.size(); ++m) {
            const double tf = time_factor(terms_[m], t);
            for (const auto& r : runs) {
                const double c = tf * ys_[m][r.begin / stride];
                const double* xs = xs_[m].data() + r.begin % stride;
                double* o = out.data() + r.begin;
                for (std::size_t i = 0; i < r.length; ++i) o[i] += c * xs[i];
            }
        }
    }

   private:
    std::vector<TrigTerm> terms_;
    int sx_ = 0;
    int sy_ = 0;
    std::vector<std::vector<double>> xs_;
    std::vector<std::vector<double>> ys_;
};

}  // namespace

std::unique_ptr<GridSampler> TrigSeries::sampler(const UniformGrid1D& grid) const {
    return std::make_unique<TrigSampler1D>(terms_, grid);
}

std::unique_ptr<GridSampler> TrigSeries::sampler(const UniformGrid2D& grid) const {
    return std::make_unique<TrigSampler2D>(terms_, grid);
}

TrigSeries TrigSeries::derivative(int nt, int nx, int ny) const {
    if (nt < 0 || nx < 0 || ny < 0) throw ConfigError("TrigSeries::derivative: negative order");
    constexpr double half_pi = std::numbers::pi / 2;
    std::vector<TrigTerm> out;
    out.reserve(terms_.size());
    for (const auto& m : terms_) {
        // d/dt e^{lt} sin(wt + p) = |l + iw| e^{lt} sin(wt + p + arg(l + iw))
        const double rho = std::hypot(m.lambda, m.omega);
        const double psi = std::atan2(m.omega, m.lambda);
        TrigTerm d = m;
        d.a = m.a * std::pow(rho, nt) * std::pow(m.kx, nx) * std::pow(m.ky, ny);
        if (d.a == 0) continue;
        d.phi = m.phi + nt * psi;
        d.px = m.px + nx * half_pi;
        d.py = m.py + ny * half_pi;
        out.push_back(d);
    }
    return TrigSeries(std::move(out));
}

TrigSeries TrigSeries::scaled(double c) const {
    std::vector<TrigTerm> out;
    if (c == 0) return TrigSeries();
    for (auto m : terms_) {
        m.a *= c;
        out.push_back(m);
    }
    return TrigSeries(std::move(out));
}

TrigSeries TrigSeries::operator+(const TrigSeries& o) const {
    std::vector<TrigTerm> out = terms_;
    out.insert(out.end(), o.terms_.begin(), o.terms_.end());
    return TrigSeries(std::move(out));
}

TrigSeries TrigSeries::operator-(const TrigSeries& o) const { return *this + o.scaled(-1.0); }

std::string to_string(const DerivativeOrder& d) {
    if (d == DerivativeOrder{}) return "base";
    std::string s;
    s.append(static_cast<std::size_t>(d.t), 't');
    s.append(static_cast<std::size_t>(d.x), 'x');
    s.append(static_cast<std::size_t>(d.y), 'y');
    return s;
}

void DerivativeBundle::set(DerivativeOrder d, FunctionPtr fn) {
    if (!fn) throw ConfigError("DerivativeBundle: null function for order " + to_string(d));
    entries_[d] = std::move(fn);
}

bool DerivativeBundle::has(DerivativeOrder d) const { return all_zero_ || entries_.contains(d); }

const SpaceTimeFunction& DerivativeBundle::get(DerivativeOrder d) const {
    if (all_zero_) {
        static const TrigSeries zero;
        return zero;
    }
    auto it = entries_.find(d);
    if (it == entries_.end()) {
        throw MissingDerivativeError("'" + (name_.empty() ? std::string("bundle") : name_) +
                                     "' does not supply derivative " + to_string(d));
    }
    return *it->second;
}

void DerivativeBundle::require(std::span<const DerivativeOrder> orders, const std::string& consumer) const {
    for (const auto& d : orders) {
        if (!has(d)) {
            throw MissingDerivativeError(consumer + " needs derivative " + to_string(d) + " of '" +
                                         (name_.empty() ? std::string("bundle") : name_) + "', which is not supplied");
        }
    }
}

std::vector<DerivativeOrder> DerivativeBundle::present() const {
    std::vector<DerivativeOrder> out;
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
}

DerivativeBundle DerivativeBundle::from_series(std::string name, const TrigSeries& base, int max_t, int max_x,
                                               int max_y) {
    DerivativeBundle b(std::move(name));
    for (int t = 0; t <= max_t; ++t) {
        for (int x = 0; x <= max_x; ++x) {
            for (int y = 0; y <= max_y; ++y) {
                b.set({t, x, y}, std::make_shared<TrigSeries>(base.derivative(t, x, y)));
            }
        }
    }
    return b;
}

SourceModel SourceModel::zero() {
    SourceModel s("zero");
    s.all_zero_ = true;
    return s;
}

double burgers_gamma_for_reynolds(double re) { return std::expm1(re); }

ExactSolution burgers_exact(double nu, double gamma) {
    if (!(nu > 0)) throw ConfigError("burgers_exact: nu must be positive");
    // u = 1 - 2 nu q, q = den_x / den, den = 1 + (gamma/2) erfc(z), z = (x - T)/sqrt(4 nu T)
    struct Parts {
        double u, ux, uxx;
    };
    auto parts = [nu, gamma](double x, double t) {
        const double tt = t + 1.0;
        const double s = std::sqrt(4.0 * nu * tt);
        const double z = (x - tt) / s;
        const double zx = 1.0 / s;
        const double e = std::exp(-z * z);
        const double c = gamma / std::sqrt(4.0 * std::numbers::pi * nu * tt);
        const double den = 1.0 + 0.5 * gamma * std::erfc(z);
        const double d1 = -c * e;
        const double d2 = c * e * 2.0 * z * zx;
        const double d3 = c * 2.0 * zx * zx * e * (1.0 - 2.0 * z * z);
        const double q = d1 / den;
        const double qx = d2 / den - q * q;
        const double qxx = d3 / den - d2 * d1 / (den * den) - 2.0 * q * qx;
        return Parts{1.0 - 2.0 * nu * q, -2.0 * nu * qx, -2.0 * nu * qxx};
    };
    ExactSolution ex("burgers");
    ex.set(d_base, make_function_1d([parts](double x, double t) { return parts(x, t).u; }));
    ex.set(d_x, make_function_1d([parts](double x, double t) { return parts(x, t).ux; }));
    ex.set(d_xx, make_function_1d([parts](double x, double t) { return parts(x, t).uxx; }));
    ex.set(d_t, make_function_1d([parts, nu](double x, double t) {
               const auto p = parts(x, t);
               return nu * p.uxx - p.u * p.ux;
           }));
    return ex;
}

namespace {

constexpr int kMaxT = 3;
constexpr int kMaxX = 6;
constexpr int kMaxY = 4;

}  // namespace

ManufacturedProblem manufactured(const TrigSeries& target, PdeTag tag, const PdeParams& p) {
    TrigSeries f;
    switch (tag) {
        case PdeTag::advection1d:
            f = target.derivative(1, 0, 0) + target.derivative(0, 1, 0).scaled(p.a);
            break;
        case PdeTag::diffusion1d:
            f = target.derivative(1, 0, 0) - target.derivative(0, 2, 0).scaled(p.d);
            break;
        case PdeTag::diffusion2d:
            f = target.derivative(1, 0, 0) - (target.derivative(0, 2, 0) + target.derivative(0, 0, 2)).scaled(p.d);
            break;
        case PdeTag::wave1d:
            f = target.derivative(2, 0, 0) - target.derivative(0, 2, 0).scaled(p.c * p.c);
            break;
        case PdeTag::parabolic4:
            f = target.derivative(1, 0, 0) + target.derivative(0, 4, 0).scaled(p.kappa);
            break;
    }
    return {ExactSolution(DerivativeBundle::from_series("manufactured-u", target, kMaxT, kMaxX, kMaxY)),
            SourceModel(DerivativeBundle::from_series("manufactured-f", f, kMaxT, kMaxX, kMaxY))};
}

ManufacturedProblem manufactured(const ExactSolution& target, PdeTag tag, const PdeParams& p) {
    std::vector<DerivativeOrder> needed;
    switch (tag) {
        case PdeTag::advection1d:
            needed = {d_base, d_t, d_x};
            break;
        case PdeTag::diffusion1d:
            needed = {d_base, d_t, d_xx};
            break;
        case PdeTag::diffusion2d:
            needed = {d_base, d_t, d_xx, d_yy};
            break;
        case PdeTag::wave1d:
            needed = {d_base, d_tt, d_xx};
            break;
        case PdeTag::parabolic4:
            needed = {d_base, d_t, d_xxxx};
            break;
    }
    target.require(needed, "manufactured");
    ExactSolution u = target;
    auto keep = std::make_shared<ExactSolution>(u);
    std::function<double(double, double, double)> fn;
    switch (tag) {
        case PdeTag::advection1d:
            fn = [keep, a = p.a](double x, double y, double t) {
                return keep->get(d_t).eval(x, y, t) + a * keep->get(d_x).eval(x, y, t);
            };
            break;
        case PdeTag::diffusion1d:
            fn = [keep, d = p.d](double x, double y, double t) {
                return keep->get(d_t).eval(x, y, t) - d * keep->get(d_xx).eval(x, y, t);
            };
            break;
        case PdeTag::diffusion2d:
            fn = [keep, d = p.d](double x, double y, double t) {
                return keep->get(d_t).eval(x, y, t) -
                       d * (keep->get(d_xx).eval(x, y, t) + keep->get(d_yy).eval(x, y, t));
            };
            break;
        case PdeTag::wave1d:
            fn = [keep, c2 = p.c * p.c](double x, double y, double t) {
                return keep->get(d_tt).eval(x, y, t) - c2 * keep->get(d_xx).eval(x, y, t);
            };
            break;
        case PdeTag::parabolic4:
            fn = [keep, k = p.kappa](double x, double y, double t) {
                return keep->get(d_t).eval(x, y, t) + k * keep->get(d_xxxx).eval(x, y, t);
            };
            break;
    }
    SourceModel f("manufactured-f");
    f.set(d_base, make_function(std::move(fn)));
    return {std::move(u), std::move(f)};
}

double square_pulse_2d(double x, double y) { return std::abs(x) + std::abs(y) <= 2.0 ? 1.0 : 0.0; }

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

TrigTerm term1d(double a, double lambda, double omega, double phi, double k, double p) {
    return TrigTerm{a, lambda, omega, phi, k, p, 0.0, kHalfPi};
}

Fixture make_manufactured(std::string name, std::string description, const TrigSeries& u, PdeTag tag,
                          PdeParams params) {
    auto mp = manufactured(u, tag, params);
    return Fixture{std::move(name), std::move(description), std::move(mp.exact), std::move(mp.source), params};
}

std::vector<Fixture> build_fixtures() {
    std::vector<Fixture> out;
    const TrigSeries u_diff({term1d(1.0, -0.5, 2.0, 0.4, 1.0, 0.3), term1d(0.5, 0.0, 1.0, 1.0, 2.0, 0.7)});
    out.push_back(make_manufactured("diffusion-1d", "manufactured trig series, u_t = u_xx + f", u_diff,
                                    PdeTag::diffusion1d, PdeParams{}));
    out.push_back(make_manufactured("wave-1d", "manufactured trig series, u_tt = u_xx + f",
                                    TrigSeries({term1d(1.0, 0.0, 1.3, 0.2, 1.0, 0.3),
                                                term1d(0.4, -0.3, 2.1, 0.5, 2.0, 1.1)}),
                                    PdeTag::wave1d, PdeParams{}));
    out.push_back(make_manufactured("parabolic4-1d", "manufactured trig series, u_t = -u_xxxx + f",
                                    TrigSeries({term1d(1.0, -0.2, 3.0, 0.3, 1.0, 0.4),
                                                term1d(0.3, 0.0, 5.0, 0.1, 2.0, 0.9)}),
                                    PdeTag::parabolic4, PdeParams{}));
    out.push_back(make_manufactured("diffusion-2d", "manufactured trig series on the unit square, u_t = lap u + f",
                                    TrigSeries({TrigTerm{1.0, -0.5, 2.0, 0.4, std::numbers::pi, 0.3,
                                                         std::numbers::pi, 0.2},
                                                TrigTerm{0.5, 0.0, 3.0, 1.0, 2.0, 0.5, 3.0, 0.9}}),
                                    PdeTag::diffusion2d, PdeParams{}));
    out.push_back(make_manufactured("diffusion-2d-star", "manufactured trig series on [-1,1]^2, u_t = lap u + f",
                                    TrigSeries({TrigTerm{1.0, -0.5, 2.0, 0.4, 2.0, 0.3, 1.5, 0.2},
                                                TrigTerm{0.5, 0.0, 3.0, 1.0, 1.0, 0.5, 2.5, 0.9}}),
                                    PdeTag::diffusion2d, PdeParams{}));
    {
        // eigenmodes with zero source
        Fixture heat{"heat-eigenmode", "sin(x) e^{-t}, zero source", ExactSolution(), SourceModel::zero(), {}};
        heat.exact = ExactSolution(DerivativeBundle::from_series(
            "heat-eigenmode", TrigSeries({term1d(1.0, -1.0, 0.0, kHalfPi, 1.0, 0.0)}), kMaxT, kMaxX, 0));
        out.push_back(std::move(heat));
    }
    {
        auto u0 = [](double x) { return std::sin(2.0 * x) + 0.5 * std::cos(5.0 * x); };
        Fixture f{"advection-1d-smooth", "sin(2x) + cos(5x)/2 translated at unit speed", ExactSolution("advection"),
                  SourceModel::zero(), PdeParams{}};
        f.exact.set(d_base, make_function_1d([u0](double x, double t) { return u0(x - t); }));
        out.push_back(std::move(f));
    }
    {
        auto u0 = [](double x) { return (x > 0.7123 && x < 2.4321) ? 1.0 : 0.2; };
        Fixture f{"advection-1d-step", "box of height 1 on a 0.2 floor translated at unit speed",
                  ExactSolution("advection"), SourceModel::zero(), PdeParams{}};
        f.exact.set(d_base, make_function_1d([u0](double x, double t) { return u0(x - t); }));
        out.push_back(std::move(f));
    }
    {
        PdeParams p;
        p.d = 0.2;
        Fixture f{"burgers-re10", "travelling front, nu = 0.2, ln(1 + gamma) = 10",
                  burgers_exact(p.d, burgers_gamma_for_reynolds(10.0)), SourceModel::zero(), p};
        out.push_back(std::move(f));
    }
    {
        Fixture f{"square-pulse-2d", "indicator of |x| + |y| <= 2 translated with velocity (-1, -2)",
                  ExactSolution("square-pulse"), SourceModel::zero(), PdeParams{}};
        f.exact.set(d_base, make_function([](double x, double y, double t) {
                        // tolerance keeps nodes that sit on the diamond edge inside after translation
                        return std::abs(x + t) + std::abs(y + 2.0 * t) <= 2.0 + 1e-9 ? 1.0 : 0.0;
                    }));
        out.push_back(std::move(f));
    }
    return out;
}

const std::vector<Fixture>& registry() {
    static const std::vector<Fixture> fixtures = build_fixtures();
    return fixtures;
}

}  // namespace

const Fixture& fixture(const std::string& name) {
    for (const auto& f : registry()) {
        if (f.name == name) return f;
    }
    throw ConfigError("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto& f : registry()) out.push_back(f.name);
    return out;
}

}  // namespace otsfd
