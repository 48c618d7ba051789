#include "otsfd/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "otsfd/errors.hpp"
#include "otsfd/harness.hpp"
#include "otsfd/solvers_2d.hpp"

namespace otsfd {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Advection-2d velocity; the grid ratio dy/dx = |Ay/Ax| = 2.
constexpr double kAx = -1.0;
constexpr double kAy = -2.0;

int rounded_steps(double final_time, double dt) {
    return std::max(1, static_cast<int>(std::lround(final_time / dt)));
}

double dt_opt_or_nan(const SchemeDescriptor& sd, double dx) {
    if (!sd.ots_capable) return std::numeric_limits<double>::quiet_NaN();
    return optimal_dt(sd.leading_error, dx);
}

struct Resolved {
    SchemeDescriptor sd;
    double dx;
    double dt;
    double dt_opt;
};

Resolved resolve(const SchemeDescriptor& sd, const SchemeVariant& v, double dx) {
    return {sd, dx, resolve_dt(sd, v.policy, dx), dt_opt_or_nan(sd, dx)};
}

RunResult finish(const Resolved& r, double error, int steps, double t) {
    RunResult out;
    out.dx = r.dx;
    out.dt = r.dt;
    out.dt_opt = r.dt_opt;
    out.error = error;
    out.steps = steps;
    out.final_time = t;
    return out;
}

// Two-level 1D driver: exact initial data, shortened last step.
RunResult run_two_level(const UniformGrid1D& grid, const RunRequest& q, const Resolved& r, Stepper1D& stepper) {
    const auto& exact = q.fixture->exact.u();
    TwoLevelState s{sample_field(grid, exact, 0.0), 0};
    advance_to(stepper, s, r.dt, q.final_time);
    return finish(r, linf_error(s.u, exact), s.steps, s.time());
}

// ---------------------------------------------------------------- runners

RunResult run_advection_1d(const RunRequest& q) {
    const auto& fx = *q.fixture;
    const UniformGrid1D grid(0.0, 4.0, q.n, 1);
    const auto r = resolve(schemes::advection_upwind_1d(fx.params.a), q.variant, grid.dx());
    AdvectionUpwindFE st(grid, fx.params.a, fx.exact.u());
    TwoLevelState s{sample_field(grid, fx.exact.u(), 0.0), 0};
    if (q.variant.ots()) {
        // whole steps so that every step is the exact shift
        const int k = rounded_steps(q.final_time, r.dt);
        for (int i = 0; i < k; ++i) st.step(s, r.dt);
    } else {
        advance_to(st, s, r.dt, q.final_time);
    }
    return finish(r, linf_error(s.u, fx.exact.u()), s.steps, s.time());
}

RunResult run_wave(const RunRequest& q, int start_order) {
    const auto& fx = *q.fixture;
    const double c = fx.params.c;
    const UniformGrid1D grid(0.0, kTwoPi, q.n, 1);
    const auto r = resolve(schemes::wave_kpy(c), q.variant, grid.dx());
    const int k = rounded_steps(q.final_time, r.dt);
    ScalarField1D u1 = start_order > 0 ? kpy_first_step(grid, fx.exact, c, r.dt, fx.source, start_order)
                                       : sample_field(grid, fx.exact.u(), r.dt);
    ThreeLevelState s{sample_field(grid, fx.exact.u(), 0.0), std::move(u1), 1};
    WaveKPY st(grid, c, fx.source, q.variant, fx.exact.u());
    advance_steps(st, s, r.dt, k - 1);
    return finish(r, linf_error(s.curr, fx.exact.u()), s.steps, s.time());
}

RunResult run_diffusion_fe(const RunRequest& q) {
    const auto& fx = *q.fixture;
    const UniformGrid1D grid(0.0, kTwoPi, q.n, 1);
    const auto r = resolve(schemes::diffusion_fe_1d(fx.params.d), q.variant, grid.dx());
    DiffusionFE st(grid, fx.params.d, fx.source, q.variant, fx.exact.u());
    return run_two_level(grid, q, r, st);
}

RunResult run_theta_diffusion(const RunRequest& q, double theta) {
    const auto& fx = *q.fixture;
    const UniformGrid1D grid(0.0, kTwoPi, q.n, 1);
    const auto sd = theta == 1.0 ? schemes::backward_euler_diffusion(fx.params.d)
                                 : schemes::crank_nicolson_diffusion(fx.params.d);
    const auto r = resolve(sd, q.variant, grid.dx());
    ThetaDiffusion st(grid, fx.params.d, theta, fx.source, fx.exact.u());
    return run_two_level(grid, q, r, st);
}

RunResult run_dufort_frankel(const RunRequest& q) {
    const auto& fx = *q.fixture;
    const UniformGrid1D grid(0.0, kTwoPi, q.n, 1);
    const auto r = resolve(schemes::dufort_frankel(fx.params.d), q.variant, grid.dx());
    const int k = rounded_steps(q.final_time, r.dt);
    ThreeLevelState s{sample_field(grid, fx.exact.u(), 0.0), dufort_frankel_start(grid, fx.exact, r.dt), 1};
    DuFortFrankel st(grid, fx.params.d, fx.source, q.variant, fx.exact.u());
    advance_steps(st, s, r.dt, k - 1);
    return finish(r, linf_error(s.curr, fx.exact.u()), s.steps, s.time());
}

RunResult run_burgers(const RunRequest& q) {
    const auto& fx = *q.fixture;
    const double nu = fx.params.d;
    const UniformGrid1D grid(-1.0, 6.0, q.n, 1);
    const auto r = resolve(schemes::burgers_fe(nu), q.variant, grid.dx());
    BurgersFE st(grid, nu, q.variant, fx.exact.u());
    return run_two_level(grid, q, r, st);
}

RunResult run_parabolic4_fe(const RunRequest& q) {
    const auto& fx = *q.fixture;
    const UniformGrid1D grid(0.0, kTwoPi, q.n, 3);
    const auto r = resolve(schemes::parabolic4_fe(fx.params.kappa), q.variant, grid.dx());
    Parabolic4FE st(grid, fx.params.kappa, fx.source, q.variant, fx.exact.u());
    return run_two_level(grid, q, r, st);
}

RunResult run_parabolic4_cn(const RunRequest& q, int order) {
    const auto& fx = *q.fixture;
    const UniformGrid1D grid(0.0, kTwoPi, q.n, 3);
    const auto r = resolve(schemes::crank_nicolson_parabolic4(fx.params.kappa, order), q.variant, grid.dx());
    CrankNicolsonParabolic4 st(grid, fx.params.kappa, order, fx.source, fx.exact.u());
    return run_two_level(grid, q, r, st);
}

RunResult run_advection_2d(const RunRequest& q) {
    const auto& fx = *q.fixture;
    const auto grid = UniformGrid2D::with_ratio(-10.0, 10.0, q.n, -20.0, q.n, std::abs(kAy / kAx), 1);
    const auto r = resolve(schemes::advection_2d(kAx, kAy), q.variant, grid.dx());
    Advection2D st(grid, kAx, kAy, q.variant, fx.exact.u());
    State2D s{sample_field(grid, fx.exact.u(), 0.0), 0};
    if (q.variant.ots()) {
        const int k = rounded_steps(q.final_time, r.dt);
        advance_steps(st, s, r.dt, k);
    } else {
        advance_to(st, s, r.dt, q.final_time);
    }
    return finish(r, linf_error(s.u, fx.exact.u()), s.steps, s.time());
}

RunResult run_diffusion_2d(const RunRequest& q) {
    const auto& fx = *q.fixture;
    const auto grid = UniformGrid2D::square(0.0, 1.0, q.n, 1);
    const auto r = resolve(schemes::diffusion_2d_9pt(fx.params.d), q.variant, grid.dx());
    Diffusion2D9pt st(grid, fx.params.d, fx.source, q.variant, fx.exact.u());
    State2D s{sample_field(grid, fx.exact.u(), 0.0), 0};
    advance_to(st, s, r.dt, q.final_time);
    return finish(r, linf_error(s.u, fx.exact.u()), s.steps, s.time());
}

RunResult run_cn_2d(const RunRequest& q) {
    const auto& fx = *q.fixture;
    const auto grid = UniformGrid2D::square(0.0, 1.0, q.n, 1);
    const auto r = resolve(schemes::crank_nicolson_2d_5pt(fx.params.d), q.variant, grid.dx());
    CrankNicolson2D5pt st(grid, fx.params.d, fx.source, fx.exact.u());
    State2D s{sample_field(grid, fx.exact.u(), 0.0), 0};
    advance_to(st, s, r.dt, q.final_time);
    return finish(r, linf_error(s.u, fx.exact.u()), s.steps, s.time());
}

struct StarfishRun {
    CellClassification cls;
    State2D state;
    RunResult result;
};

StarfishRun run_starfish_full(const RunRequest& q) {
    const auto& fx = *q.fixture;
    const auto grid = UniformGrid2D::square(-1.0, 1.0, q.n, 1);
    auto cls = classify_cells(ImplicitDomain{starfish_phi, grid});
    const auto r = resolve(schemes::diffusion_2d_9pt(fx.params.d), q.variant, grid.dx());
    State2D s{sample_interior(cls, fx.exact.u(), 0.0), 0};
    Diffusion2DIrregular st(cls, fx.params.d, fx.source, q.variant, fx.exact.u());
    advance_to(st, s, r.dt, q.final_time);
    const double err = linf_error(s.u, cls, fx.exact.u());
    auto res = finish(r, err, s.steps, s.time());
    return {std::move(cls), std::move(s), res};
}

RunResult run_starfish(const RunRequest& q) { return run_starfish_full(q).result; }

// ---------------------------------------------------------------- registry

Experiment make(std::string name, std::string description, std::string fixture, double final_time, int n_min,
                std::function<SchemeDescriptor(const Fixture&)> descriptor,
                std::function<RunResult(const RunRequest&)> run) {
    Experiment e;
    e.name = std::move(name);
    e.description = std::move(description);
    e.fixture = std::move(fixture);
    e.final_time = final_time;
    e.n_min = n_min;
    e.descriptor = std::move(descriptor);
    e.run = std::move(run);
    return e;
}

Experiment baseline(Experiment e, TimeStepPolicy policy) {
    e.has_correction = false;
    e.default_policy = policy;
    e.subopt_policy = policy;
    return e;
}

std::vector<Experiment> build_experiments() {
    std::vector<Experiment> v;
    {
        auto e = make("advection-1d", "upwind forward Euler, u_t + A u_x = 0", "advection-1d-smooth", 1.0, 50,
                      [](const Fixture& f) { return schemes::advection_upwind_1d(f.params.a); }, run_advection_1d);
        e.has_correction = false;
        v.push_back(std::move(e));
    }
    {
        auto e = make("advection-2d", "upwind forward Euler with mixed-derivative correction, A = (-1, -2)",
                      "square-pulse-2d", 3.0, 100, [](const Fixture&) { return schemes::advection_2d(kAx, kAy); },
                      run_advection_2d);
        e.refinements = 1;
        e.subopt_policy = TimeStepPolicy::explicit_ratio(1.0 / (2 * (std::abs(kAx) + std::abs(kAy))), 1.0);
        e.grid_rule = "dy = (Ay/Ax) dx";
        v.push_back(std::move(e));
    }
    v.push_back(make("wave-kpy", "KPY leapfrog for u_tt = c^2 u_xx + f, fifth-order start", "wave-1d", 1.0, 25,
                     [](const Fixture& f) { return schemes::wave_kpy(f.params.c); },
                     [](const RunRequest& q) { return run_wave(q, 5); }));
    v.push_back(make("wave-kpy-start3", "KPY with a third-order first step", "wave-1d", 1.0, 25,
                     [](const Fixture& f) { return schemes::wave_kpy(f.params.c); },
                     [](const RunRequest& q) { return run_wave(q, 3); }));
    v.push_back(make("wave-kpy-start4", "KPY with a fourth-order first step", "wave-1d", 1.0, 25,
                     [](const Fixture& f) { return schemes::wave_kpy(f.params.c); },
                     [](const RunRequest& q) { return run_wave(q, 4); }));
    v.push_back(make("wave-kpy-exact-start", "KPY with the exact solution as first step", "wave-1d", 1.0, 25,
                     [](const Fixture& f) { return schemes::wave_kpy(f.params.c); },
                     [](const RunRequest& q) { return run_wave(q, 0); }));
    v.push_back(make("diffusion-1d-fe", "forward Euler, u_t = D u_xx + f", "diffusion-1d", 1.0, 25,
                     [](const Fixture& f) { return schemes::diffusion_fe_1d(f.params.d); }, run_diffusion_fe));
    v.push_back(baseline(make("diffusion-1d-be", "backward Euler baseline", "diffusion-1d", 1.0, 25,
                              [](const Fixture& f) { return schemes::backward_euler_diffusion(f.params.d); },
                              [](const RunRequest& q) { return run_theta_diffusion(q, 1.0); }),
                         TimeStepPolicy::explicit_ratio(0.25, 2.0)));
    v.push_back(baseline(make("diffusion-1d-cn", "Crank-Nicolson baseline", "diffusion-1d", 1.0, 25,
                              [](const Fixture& f) { return schemes::crank_nicolson_diffusion(f.params.d); },
                              [](const RunRequest& q) { return run_theta_diffusion(q, 0.5); }),
                         TimeStepPolicy::explicit_ratio(0.5, 1.0)));
    {
        auto e = make("dufort-frankel", "DuFort-Frankel, u_t = D u_xx + f", "diffusion-1d", 1.0, 25,
                      [](const Fixture& f) { return schemes::dufort_frankel(f.params.d); }, run_dufort_frankel);
        e.subopt_policy = TimeStepPolicy::explicit_ratio(0.25, 2.0);
        v.push_back(std::move(e));
    }
    v.push_back(make("burgers", "forward Euler, u_t + u u_x = nu u_xx", "burgers-re10", 0.5, 50,
                     [](const Fixture& f) { return schemes::burgers_fe(f.params.d); }, run_burgers));
    v.push_back(make("parabolic4-fe", "forward Euler, u_t = -kappa u_xxxx + f, fourth-order bilaplacian",
                     "parabolic4-1d", 0.1, 20,
                     [](const Fixture& f) { return schemes::parabolic4_fe(f.params.kappa); }, run_parabolic4_fe));
    v.push_back(baseline(make("parabolic4-cn2", "Crank-Nicolson, second-order bilaplacian", "parabolic4-1d", 0.1, 20,
                              [](const Fixture& f) { return schemes::crank_nicolson_parabolic4(f.params.kappa, 2); },
                              [](const RunRequest& q) { return run_parabolic4_cn(q, 2); }),
                         TimeStepPolicy::explicit_ratio(0.5, 1.0)));
    v.push_back(baseline(make("parabolic4-cn4", "Crank-Nicolson, fourth-order bilaplacian", "parabolic4-1d", 0.1, 20,
                              [](const Fixture& f) { return schemes::crank_nicolson_parabolic4(f.params.kappa, 4); },
                              [](const RunRequest& q) { return run_parabolic4_cn(q, 4); }),
                         TimeStepPolicy::explicit_ratio(0.5, 2.0)));
    v.push_back(make("diffusion-2d-9pt", "forward Euler, nine-point Laplacian, unit square", "diffusion-2d", 0.1,
                     16, [](const Fixture& f) { return schemes::diffusion_2d_9pt(f.params.d); }, run_diffusion_2d));
    v.push_back(baseline(make("diffusion-2d-cn5", "Crank-Nicolson, five-point Laplacian, conjugate gradients",
                              "diffusion-2d", 0.1, 16,
                              [](const Fixture& f) { return schemes::crank_nicolson_2d_5pt(f.params.d); },
                              run_cn_2d),
                         TimeStepPolicy::explicit_ratio(0.5, 1.0)));
    v.push_back(make("diffusion-2d-starfish", "forward Euler, nine-point Laplacian, star-shaped domain",
                     "diffusion-2d-star", 0.02, 50,
                     [](const Fixture& f) { return schemes::diffusion_2d_9pt(f.params.d); }, run_starfish));
    return v;
}

std::vector<StudySpec> build_studies() {
    const auto dy = [](int n) { return dyadic_resolutions(n, 4); };
    using B = AcceptanceBand;
    std::vector<StudySpec> s;
    s.push_back({"advection-1d-smooth-ots", "advection-1d", "ots", std::nullopt, dy(50), "advection-1d-smooth",
                 B::error_at_most(1e-12)});
    s.push_back({"advection-1d-step-ots", "advection-1d", "ots", std::nullopt, dy(50), "advection-1d-step",
                 B::error_at_most(1e-12)});
    s.push_back({"advection-2d-ots", "advection-2d", "ots", true, {100}, std::nullopt, B::error_at_most(1e-12)});
    s.push_back({"advection-2d-subopt", "advection-2d", "subopt", false, {100}, std::nullopt, B::error_at_least(0.1)});
    s.push_back({"wave-kpy-ots-nidc", "wave-kpy", "ots", true, dy(25), std::nullopt, B::order_at_least(3.7)});
    s.push_back({"wave-kpy-subopt", "wave-kpy", "subopt", false, dy(25), std::nullopt, B::order_at_most(2.3)});
    s.push_back({"wave-kpy-start3-ots-nidc", "wave-kpy-start3", "ots", true, dy(25), std::nullopt,
                 B::order_at_most(3.3)});
    s.push_back({"diffusion-1d-fe-ots-nidc", "diffusion-1d-fe", "ots", true, dy(25), std::nullopt,
                 B::order_at_least(3.7)});
    s.push_back({"diffusion-1d-fe-ots", "diffusion-1d-fe", "ots", false, dy(25), std::nullopt, B::order_at_most(2.3)});
    s.push_back({"dufort-frankel-ots-nidc", "dufort-frankel", "ots", true, dy(25), std::nullopt,
                 B::order_at_least(3.7)});
    s.push_back({"dufort-frankel-subopt", "dufort-frankel", "subopt", false, dy(25), std::nullopt,
                 B::order_at_most(2.3)});
    s.push_back({"burgers-ots-nidc", "burgers", "ots", true, dy(50), std::nullopt, B::order_at_least(3.6)});
    s.push_back({"burgers-subopt", "burgers", "subopt", false, dy(50), std::nullopt, B::order_at_most(2.3)});
    s.push_back({"parabolic4-fe-ots-nidc", "parabolic4-fe", "ots", true, dy(20), std::nullopt,
                 B::order_at_least(5.5)});
    s.push_back({"parabolic4-fe-subopt", "parabolic4-fe", "subopt", false, dy(20), std::nullopt,
                 B::order_between(3.6, 4.4)});
    s.push_back({"parabolic4-cn2", "parabolic4-cn2", "ots", std::nullopt, dy(20), std::nullopt,
                 B::order_at_most(2.4)});
    s.push_back({"diffusion-2d-9pt-ots-nidc", "diffusion-2d-9pt", "ots", true, dy(16), std::nullopt,
                 B::order_at_least(3.7)});
    s.push_back({"diffusion-2d-9pt-subopt", "diffusion-2d-9pt", "subopt", false, dy(16), std::nullopt,
                 B::order_at_most(2.3)});
    s.push_back({"diffusion-2d-cn5", "diffusion-2d-cn5", "ots", std::nullopt, dy(16), std::nullopt,
                 B::order_at_most(2.3)});
    s.push_back({"diffusion-2d-starfish-ots-nidc", "diffusion-2d-starfish", "ots", true, dy(50), std::nullopt,
                 B::order_at_least(3.5)});
    s.push_back({"diffusion-2d-starfish-subopt", "diffusion-2d-starfish", "subopt", false, dy(50), std::nullopt,
                 B::order_at_most(2.4)});
    return s;
}

std::vector<TimingSpec> build_timing() {
    return {
        {"timing-diffusion-1d-fe", "diffusion-1d-fe", "ots", {100, 200, 400, 800}, -0.75},
        {"timing-diffusion-1d-cn", "diffusion-1d-cn", "ots", {400, 800, 1600, 3200}, -1.0},
        {"timing-diffusion-2d-9pt", "diffusion-2d-9pt", "ots", {16, 32, 64, 128}, -1.0},
        {"timing-diffusion-2d-cn5", "diffusion-2d-cn5", "ots", {16, 32, 64, 128}, -1.0},
        {"timing-parabolic4-fe", "parabolic4-fe", "ots", {20, 40, 80, 160}, -5.0 / 6.0},
    };
}

struct Polyline {
    std::vector<double> x, y;
};

const Polyline& starfish_polyline() {
    static const Polyline p = [] {
        constexpr int m = 8192;
        Polyline out;
        out.x.resize(m + 1);
        out.y.resize(m + 1);
        for (int k = 0; k <= m; ++k) {
            const double th = kTwoPi * k / m;
            const double r = 0.6 + 0.12 * std::cos(5 * th);
            out.x[static_cast<std::size_t>(k)] = r * std::cos(th);
            out.y[static_cast<std::size_t>(k)] = r * std::sin(th);
        }
        return out;
    }();
    return p;
}

}  // namespace

const std::vector<Experiment>& experiments() {
    static const std::vector<Experiment> v = build_experiments();
    return v;
}

const Experiment& experiment(const std::string& name) {
    for (const auto& e : experiments()) {
        if (e.name == name) return e;
    }
    throw ConfigError("unknown experiment '" + name + "'");
}

SchemeVariant make_variant(const Experiment& e, const std::string& policy, std::optional<bool> correction) {
    SchemeVariant v;
    if (policy == "ots") {
        v.policy = e.default_policy;
    } else if (policy == "subopt") {
        v.policy = e.subopt_policy;
    } else if (policy.starts_with("ratio=")) {
        const auto body = policy.substr(6);
        const auto colon = body.find(':');
        if (colon == std::string::npos) throw ConfigError("policy '" + policy + "': expected ratio=<c>:<p>");
        double c = 0;
        double p = 0;
        const auto a = body.substr(0, colon);
        const auto b = body.substr(colon + 1);
        const auto ra = std::from_chars(a.data(), a.data() + a.size(), c);
        const auto rb = std::from_chars(b.data(), b.data() + b.size(), p);
        if (ra.ec != std::errc() || ra.ptr != a.data() + a.size() || rb.ec != std::errc() ||
            rb.ptr != b.data() + b.size()) {
            throw ConfigError("policy '" + policy + "': malformed number");
        }
        if (!(c > 0)) throw ConfigError("policy '" + policy + "': coefficient must be positive");
        v.policy = TimeStepPolicy::explicit_ratio(c, p);
    } else {
        throw ConfigError("unknown policy '" + policy + "' (expected ots, subopt or ratio=<c>:<p>)");
    }
    if (!e.has_correction) {
        if (correction.value_or(false)) throw ConfigError(e.name + ": scheme has no correction term");
        v.nidc = false;
    } else {
        v.nidc = correction.value_or(policy == "ots");
    }
    return v;
}

std::string variant_label(const SchemeVariant& v, bool has_correction) {
    std::string s = v.ots() ? "ots" : v.policy.describe();
    if (has_correction && v.nidc) s += "+nidc";
    return s;
}

std::string AcceptanceBand::describe() const {
    std::ostringstream os;
    const char* what = kind == Kind::order ? "order" : "max error";
    if (std::isinf(lo) && std::isinf(hi)) {
        os << what << " unconstrained";
    } else if (std::isinf(hi)) {
        os << what << " >= " << lo;
    } else if (std::isinf(lo) || (kind == Kind::max_error && lo == 0)) {
        os << what << " <= " << hi;
    } else {
        os << what << " in [" << lo << ", " << hi << "]";
    }
    return os.str();
}

const std::vector<StudySpec>& reproduction_studies() {
    static const std::vector<StudySpec> v = build_studies();
    return v;
}

const std::vector<TimingSpec>& timing_studies() {
    static const std::vector<TimingSpec> v = build_timing();
    return v;
}

double starfish_phi(double x, double y) {
    const double r = std::hypot(x, y);
    const double th = std::atan2(y, x);
    return r - (0.6 + 0.12 * std::cos(5 * th));
}

double starfish_distance(double x, double y) {
    const auto& p = starfish_polyline();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < p.x.size(); ++k) {
        const double ex = p.x[k + 1] - p.x[k];
        const double ey = p.y[k + 1] - p.y[k];
        const double wx = x - p.x[k];
        const double wy = y - p.y[k];
        const double t = std::clamp((wx * ex + wy * ey) / (ex * ex + ey * ey), 0.0, 1.0);
        best = std::min(best, std::hypot(wx - t * ex, wy - t * ey));
    }
    return best;
}

ErrorConcentration starfish_error_concentration(int n, const SchemeVariant& variant, double threshold, double band) {
    const auto& e = experiment("diffusion-2d-starfish");
    RunRequest q{n, e.final_time, variant, &fixture(e.fixture)};
    const auto run = run_starfish_full(q);
    const auto& g = run.cls.grid();
    const auto& exact = q.fixture->exact.u();
    ErrorConcentration out;
    out.linf = run.result.error;
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            if (!run.cls.is_interior(i, j)) continue;
            const double err = std::abs(run.state.u(i, j) - exact.eval(g.x(i), g.y(j), run.state.time()));
            if (err <= threshold * out.linf) continue;
            ++out.large_nodes;
            if (starfish_distance(g.x(i), g.y(j)) <= band * g.dx()) ++out.near_boundary;
        }
    }
    return out;
}

}  // namespace otsfd
