#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "helpers.hpp"
#include "otsfd/errors.hpp"
#include "otsfd/harness.hpp"
#include "otsfd/ots.hpp"
#include "otsfd/solvers_1d.hpp"

using namespace otsfd;
using testing::field_1d;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

SchemeVariant variant(bool nidc, TimeStepPolicy p = TimeStepPolicy::optimal()) {
    SchemeVariant v;
    v.nidc = nidc;
    v.policy = p;
    return v;
}

double interior_error(const ScalarField1D& u, const std::function<double(double)>& exact) {
    double m = 0;
    for (int j = 1; j < u.grid().n() - 1; ++j) m = std::max(m, std::abs(u[j] - exact(u.grid().x(j))));
    return m;
}

// Slope of log(error) against log(dx) for one step from exact data at each resolution.
double local_slope(const std::vector<int>& ns, const std::function<double(int)>& one_step_error) {
    std::vector<double> dx, e;
    for (int n : ns) {
        dx.push_back(kTwoPi / (n - 1));
        e.push_back(one_step_error(n));
    }
    return fit_loglog(dx, e).slope;
}

const std::vector<int> kLevels{25, 50, 100, 200};

}  // namespace

TEST_SUITE("solvers_1d") {
    TEST_CASE("upwind advection") {
        auto zero = make_function_1d([](double, double) { return 0.0; });
        SUBCASE("unit CFL shifts the data by one node") {
            auto g = UniformGrid1D(0, 1, 21, 1);
            auto data = [](double x) { return std::sin(9 * x) + (x > 0.33 ? 1.0 : 0.0); };
            TwoLevelState s{field_1d(g, data)};
            const auto before = s.u;
            advection_upwind_fe_step(s, 1.0, g.dx(), *zero);
            for (int j = 1; j < g.n() - 1; ++j) CHECK(s.u[j] == before[j - 1]);
            TwoLevelState r{field_1d(g, data)};
            advection_upwind_fe_step(r, -2.0, g.dx() / 2, *zero);
            for (int j = 1; j < g.n() - 1; ++j) CHECK(r.u[j] == before[j + 1]);
        }
        SUBCASE("constants are preserved and linear data is exact") {
            auto g = UniformGrid1D(0, 1, 21, 1);
            auto lin = make_function_1d([](double x, double t) { return x - t; });
            TwoLevelState c{field_1d(g, [](double) { return 3.5; })};
            auto three = make_function_1d([](double, double) { return 3.5; });
            advection_upwind_fe_step(c, 1.0, g.dx() * 0.7, *three);
            for (double v : c.u.nodes()) CHECK(v == 3.5);
            TwoLevelState s{field_1d(g, [](double x) { return x; })};
            advection_upwind_fe_step(s, 1.0, g.dx() / 2, *lin);
            for (int j = 0; j < g.n(); ++j) CHECK(s.u[j] == doctest::Approx(g.x(j) - g.dx() / 2).epsilon(1e-14));
        }
        SUBCASE("CFL violation") {
            auto g = UniformGrid1D(0, 1, 21, 1);
            TwoLevelState s{ScalarField1D(g)};
            CHECK_THROWS_AS(advection_upwind_fe_step(s, 1.0, 1.01 * g.dx(), *zero), StabilityError);
        }
    }

    TEST_CASE("forward Euler diffusion eigenmode amplification") {
        const auto& fx = fixture("heat-eigenmode");
        std::vector<double> dxs, gaps;
        for (int n : {16, 32, 64, 128}) {
            auto g = UniformGrid1D(0, kTwoPi, n, 1);
            const double dt = g.dx() * g.dx() / 6.0;
            TwoLevelState s{sample_field(g, fx.exact.u(), 0.0)};
            diffusion_fe_step(s, 1.0, dt, SourceModel::zero(), variant(true), fx.exact.u());
            const double symbol = 1 - dt * (2 - 2 * std::cos(g.dx())) / (g.dx() * g.dx());
            for (int j = 1; j < n - 1; ++j) {
                CHECK(s.u[j] == doctest::Approx(symbol * std::sin(g.x(j))).scale(1.0).epsilon(1e-14));
            }
            dxs.push_back(g.dx());
            gaps.push_back(std::abs(symbol - std::exp(-dt)));
        }
        CHECK(fit_loglog(dxs, gaps).slope == doctest::Approx(6.0).epsilon(0.05));
        CHECK(gaps.back() < std::pow(dxs.back(), 6));
    }

    TEST_CASE("forward Euler diffusion keeps constants and checks stability") {
        auto g = UniformGrid1D(0, 1, 11, 1);
        auto c = make_function_1d([](double, double) { return -2.0; });
        TwoLevelState s{sample_field(g, *c, 0.0)};
        diffusion_fe_step(s, 1.0, g.dx() * g.dx() / 6, SourceModel::zero(), variant(true), *c);
        for (double v : s.u.nodes()) CHECK(v == -2.0);
        CHECK_THROWS_AS(diffusion_fe_step(s, 1.0, g.dx() * g.dx(), SourceModel::zero(), variant(true), *c),
                        StabilityError);
        SourceModel bare("bare");
        bare.set(d_base, make_function_1d([](double, double) { return 0.0; }));
        CHECK_THROWS_AS(diffusion_fe_step(s, 1.0, 1e-3, bare, variant(true), *c), MissingDerivativeError);
        CHECK_NOTHROW(diffusion_fe_step(s, 1.0, 1e-3, bare, variant(false), *c));
    }

    TEST_CASE("one-step truncation of the 1D diffusion correction") {
        const auto& fx = fixture("diffusion-1d");
        auto one_step = [&](bool nidc) {
            return [&fx, nidc](int n) {
                auto g = UniformGrid1D(0, kTwoPi, n, 1);
                const double dt = g.dx() * g.dx() / 6.0;
                TwoLevelState s{sample_field(g, fx.exact.u(), 0.3)};
                diffusion_fe_step(s, 1.0, dt, fx.source, variant(nidc), fx.exact.u());
                return linf_error(s.u, fx.exact.u());
            };
        };
        CHECK(local_slope(kLevels, one_step(true)) == doctest::Approx(6.0).epsilon(0.3 / 6));
        CHECK(local_slope(kLevels, one_step(false)) == doctest::Approx(4.0).epsilon(0.3 / 4));
    }

    TEST_CASE("KPY first step") {
        const double c = 1.3;
        // u = sin(x) cos(c t): u_t(0) = 0
        TrigSeries series({TrigTerm{1, 0, c, std::numbers::pi / 2, 1, 0, 0, std::numbers::pi / 2}});
        ExactSolution ex(DerivativeBundle::from_series("standing", series, 4, 4, 0));
        auto g = UniformGrid1D(0, kTwoPi, 33, 1);
        const double dt = 0.8 * g.dx() / c;
        auto u1 = kpy_first_step(g, ex, c, dt, SourceModel::zero(), 5);
        const double cdt = c * dt;
        const double factor = 1 - cdt * cdt / 2 + std::pow(cdt, 4) / 24;
        for (int j = 1; j < g.n() - 1; ++j) CHECK(u1[j] == doctest::Approx(factor * std::sin(g.x(j))).scale(1.0));
        CHECK(u1.time() == dt);
        auto u3 = kpy_first_step(g, ex, c, dt, SourceModel::zero(), 3);
        for (int j = 1; j < g.n() - 1; ++j) {
            CHECK(u3[j] == doctest::Approx((1 - cdt * cdt / 2) * std::sin(g.x(j))).scale(1.0));
        }
        // constant data
        ExactSolution k(DerivativeBundle::from_series("const", TrigSeries({TrigTerm{2.0, 0, 0, std::numbers::pi / 2,
                                                                                     0, std::numbers::pi / 2, 0,
                                                                                     std::numbers::pi / 2}}),
                                                      4, 4, 0));
        auto uk = kpy_first_step(g, k, c, dt, SourceModel::zero(), 5);
        for (double v : uk.nodes()) CHECK(v == doctest::Approx(2.0));
        ExactSolution bare("bare");
        bare.set(d_base, make_function_1d([](double, double) { return 0.0; }));
        CHECK_THROWS_AS(kpy_first_step(g, bare, c, dt, SourceModel::zero(), 5), MissingDerivativeError);
        CHECK_THROWS_AS(kpy_first_step(g, ex, c, dt, SourceModel::zero(), 6), ConfigError);
    }

    TEST_CASE("KPY at unit Courant number translates a travelling wave") {
        const double c = 1.0;
        auto wave = make_function_1d([c](double x, double t) { return std::sin(x - c * t); });
        for (int n : {32, 64}) {
            auto g = UniformGrid1D(0, kTwoPi, n, 1);
            const double dt = g.dx() / c;
            ThreeLevelState s{sample_field(g, *wave, 0.0), sample_field(g, *wave, dt)};
            wave_kpy_step(s, c, dt, SourceModel::zero(), variant(true), *wave);
            const double e = interior_error(s.curr, [&](double x) { return std::sin(x - 2 * c * dt); });
            CHECK(e <= std::pow(g.dx(), 6));
            CHECK(s.time() == doctest::Approx(2 * dt));
        }
    }

    TEST_CASE("KPY keeps constants; level mismatch and CFL are rejected") {
        auto g = UniformGrid1D(0, 1, 11, 1);
        auto k = make_function_1d([](double, double) { return 0.25; });
        ThreeLevelState s{sample_field(g, *k, 0.0), sample_field(g, *k, 0.05)};
        for (int i = 0; i < 5; ++i) wave_kpy_step(s, 1.0, 0.05, SourceModel::zero(), variant(true), *k);
        for (double v : s.curr.nodes()) CHECK(v == doctest::Approx(0.25));
        CHECK_THROWS_AS(wave_kpy_step(s, 1.0, 0.2, SourceModel::zero(), variant(true), *k), StabilityError);
        CHECK_THROWS_AS(wave_kpy_step(s, 1.0, 0.04, SourceModel::zero(), variant(true), *k), ConfigError);
    }

    TEST_CASE("one-step truncation of the KPY correction") {
        const auto& fx = fixture("wave-1d");
        auto one_step = [&](bool nidc) {
            return [&fx, nidc](int n) {
                auto g = UniformGrid1D(0, kTwoPi, n, 1);
                const double dt = g.dx();
                ThreeLevelState s{sample_field(g, fx.exact.u(), 0.2), sample_field(g, fx.exact.u(), 0.2 + dt)};
                wave_kpy_step(s, 1.0, dt, fx.source, variant(nidc), fx.exact.u());
                return linf_error(s.curr, fx.exact.u());
            };
        };
        const std::vector<int> levels{50, 100, 200, 400};
        CHECK(local_slope(levels, one_step(true)) == doctest::Approx(6.0).epsilon(0.3 / 6));
        CHECK(local_slope(levels, one_step(false)) == doctest::Approx(4.0).epsilon(0.3 / 4));
    }

    TEST_CASE("DuFort-Frankel") {
        auto g = UniformGrid1D(0, 1, 11, 1);
        auto k = make_function_1d([](double, double) { return 1.5; });
        const double dt = g.dx() * g.dx() / std::sqrt(12.0);
        ThreeLevelState s{sample_field(g, *k, 0.0), sample_field(g, *k, dt)};
        for (int i = 0; i < 4; ++i) dufort_frankel_step(s, 1.0, dt, SourceModel::zero(), variant(true), *k);
        for (double v : s.curr.nodes()) CHECK(v == doctest::Approx(1.5));
        // the bracket (dx^2/12 - D^2 dt^2/dx^2) vanishes at the optimal step
        CHECK(g.dx() * g.dx() / 12 - dt * dt / (g.dx() * g.dx()) == doctest::Approx(0.0).scale(1e-3));

        const auto& fx = fixture("diffusion-1d");
        // truncated Taylor start: local error dt^4 u_tttt / 24
        std::vector<double> hs, es;
        for (int n : {32, 64, 128}) {
            auto gg = UniformGrid1D(0, kTwoPi, n, 1);
            const double h = gg.dx() * gg.dx() / std::sqrt(12.0);
            auto start = dufort_frankel_start(gg, fx.exact, h);
            auto exact = sample_field(gg, fx.exact.u(), h);
            double e = 0;
            for (int j = 0; j < n; ++j) e = std::max(e, std::abs(start[j] - exact[j]));
            hs.push_back(h);
            es.push_back(e);
        }
        CHECK(fit_loglog(hs, es).slope == doctest::Approx(4.0).epsilon(0.05));
    }

    TEST_CASE("Burgers correction bracket") {
        auto g = UniformGrid1D(0, 2, 5, 1);  // node 2 at x = 1
        auto lin = make_function_1d([](double x, double) { return x; });
        const double dt = 0.1;
        TwoLevelState s{sample_field(g, *lin, 0.0)};
        burgers_fe_step(s, 1.0, dt, variant(true), *lin);
        // bracket 4 nu u_x u_xx - 2 u u_x^2 - u^2 u_xx = -2, correction -(dt^2/2)(-2) = +dt^2
        CHECK(s.u[2] == doctest::Approx(1 - dt + dt * dt).epsilon(1e-14));
        TwoLevelState plain{sample_field(g, *lin, 0.0)};
        burgers_fe_step(plain, 1.0, dt, variant(false), *lin);
        CHECK(plain.u[2] == doctest::Approx(1 - dt).epsilon(1e-14));
        TwoLevelState printed{sample_field(g, *lin, 0.0)};
        auto v = variant(true);
        v.burgers_bracket = BurgersBracket::printed;
        burgers_fe_step(printed, 1.0, dt, v, *lin);
        CHECK(printed.u[2] == doctest::Approx(1 - dt).epsilon(1e-14));

        auto k = make_function_1d([](double, double) { return 0.7; });
        TwoLevelState c{sample_field(g, *k, 0.0)};
        burgers_fe_step(c, 1.0, dt, variant(true), *k);
        for (double x : c.u.nodes()) CHECK(x == doctest::Approx(0.7));
        CHECK_THROWS_AS(burgers_fe_step(c, 1.0, 0.2, variant(true), *k), StabilityError);
    }

    TEST_CASE("Burgers growth guard") {
        // forward Euler with central advection is unstable once the cell Peclet number is large
        auto g = UniformGrid1D(0, 1, 41, 1);
        auto u0 = make_function_1d([](double x, double) { return 1 + 0.5 * std::sin(2 * std::numbers::pi * x); });
        auto zero = make_function_1d([](double, double) { return 0.0; });
        TwoLevelState s{sample_field(g, *u0, 0.0)};
        auto run = [&] {
            for (int i = 0; i < 2000; ++i) burgers_fe_step(s, 1e-4, 0.01, variant(false), *zero);
        };
        CHECK_THROWS_AS(run(), StabilityError);
    }

    TEST_CASE("fourth-order parabolic forward Euler") {
        auto g = UniformGrid1D(-1, 1, 21, 3);
        auto cubic = make_function_1d([](double x, double) { return 1 - x + 0.5 * x * x * x; });
        TwoLevelState s{sample_field(g, *cubic, 0.0)};
        const double dt = 7 * std::pow(g.dx(), 4) / 120;
        for (int i = 0; i < 3; ++i) parabolic4_fe_step(s, 1.0, dt, SourceModel::zero(), variant(true), *cubic);
        for (int j = 0; j < g.n(); ++j) CHECK(s.u[j] == doctest::Approx(1 - g.x(j) + 0.5 * std::pow(g.x(j), 3)));
        CHECK_THROWS_AS(parabolic4_fe_step(s, 1.0, 0.1 * std::pow(g.dx(), 4), SourceModel::zero(), variant(true), *cubic),
                        StabilityError);
        TwoLevelState narrow{ScalarField1D(UniformGrid1D(-1, 1, 21, 2))};
        CHECK_THROWS_AS(parabolic4_fe_step(narrow, 1.0, dt, SourceModel::zero(), variant(true), *cubic),
                        InsufficientGhostError);
    }

    TEST_CASE("Crank-Nicolson and backward Euler eigenmodes") {
        const auto& fx = fixture("heat-eigenmode");
        auto g = UniformGrid1D(0, kTwoPi, 41, 1);
        const double dt = 0.37 * g.dx();
        const double z = dt * (2 - 2 * std::cos(g.dx())) / (g.dx() * g.dx());
        TwoLevelState cn{sample_field(g, fx.exact.u(), 0.0)};
        crank_nicolson_diffusion_step(cn, 1.0, dt, SourceModel::zero(), fx.exact.u());
        TwoLevelState be{sample_field(g, fx.exact.u(), 0.0)};
        backward_euler_diffusion_step(be, 1.0, dt, SourceModel::zero(), fx.exact.u());
        for (int j = 1; j < g.n() - 1; ++j) {
            CHECK(cn.u[j] == doctest::Approx((1 - z / 2) / (1 + z / 2) * std::sin(g.x(j))).scale(1.0).epsilon(1e-13));
            CHECK(be.u[j] == doctest::Approx(std::sin(g.x(j)) / (1 + z)).scale(1.0).epsilon(1e-13));
        }
        auto k = make_function_1d([](double, double) { return 4.0; });
        TwoLevelState c{sample_field(g, *k, 0.0)};
        backward_euler_diffusion_step(c, 1.0, 0.5, SourceModel::zero(), *k);
        for (double v : c.u.nodes()) CHECK(v == doctest::Approx(4.0));
    }

    TEST_CASE("Crank-Nicolson parabolic keeps cubics and matches its eigenmode symbol") {
        auto cubic = make_function_1d([](double x, double) { return 2 + x * x * x; });
        for (int order : {2, 4}) {
            auto g = UniformGrid1D(-1, 1, 21, order == 2 ? 2 : 3);
            TwoLevelState s{sample_field(g, *cubic, 0.0)};
            crank_nicolson_parabolic4_step(s, 1.0, order, 0.01, SourceModel::zero(), *cubic);
            for (int j = 0; j < g.n(); ++j) CHECK(s.u[j] == doctest::Approx(2 + std::pow(g.x(j), 3)));
        }
        // sin(x) amp^(t/dt) with boundary data following the discrete mode
        auto g = UniformGrid1D(0, kTwoPi, 41, 2);
        const double dt = 0.01;
        const double lam = std::pow(2 - 2 * std::cos(g.dx()), 2) / std::pow(g.dx(), 4);
        const double amp = (1 - dt * lam / 2) / (1 + dt * lam / 2);
        auto mode = make_function_1d([=](double x, double t) { return std::sin(x) * std::pow(amp, t / dt); });
        TwoLevelState s{sample_field(g, *mode, 0.0)};
        crank_nicolson_parabolic4_step(s, 1.0, 2, dt, SourceModel::zero(), *mode);
        for (int j = 0; j < g.n(); ++j) {
            CHECK(s.u[j] == doctest::Approx(amp * std::sin(g.x(j))).scale(1.0).epsilon(1e-13));
        }
    }

    TEST_CASE("advance_to shortens the last step to land on the final time") {
        const auto& fx = fixture("heat-eigenmode");
        auto g = UniformGrid1D(0, kTwoPi, 21, 1);
        DiffusionFE stepper(g, 1.0, SourceModel::zero(), variant(false), fx.exact.u());
        TwoLevelState s{sample_field(g, fx.exact.u(), 0.0)};
        const int steps = advance_to(stepper, s, 0.03, 0.1);
        CHECK(steps == 4);
        CHECK(s.time() == doctest::Approx(0.1).epsilon(1e-15));
        CHECK_THROWS_AS(advance_to(stepper, s, 0.03, 0.05), ConfigError);
    }
}
