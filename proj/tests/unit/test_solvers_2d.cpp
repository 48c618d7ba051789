#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "otsfd/errors.hpp"
#include "otsfd/experiments.hpp"
#include "otsfd/harness.hpp"
#include "otsfd/solvers_2d.hpp"

using namespace otsfd;
using testing::field_2d;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

SchemeVariant variant(bool nidc, TimeStepPolicy p = TimeStepPolicy::optimal()) {
    SchemeVariant v;
    v.nidc = nidc;
    v.policy = p;
    return v;
}

FunctionPtr sin_sin_mode(double amp_per_unit_time) {
    return make_function([amp_per_unit_time](double x, double y, double t) {
        return std::sin(x) * std::sin(y) * std::pow(amp_per_unit_time, t);
    });
}

}  // namespace

TEST_SUITE("solvers_2d") {
    TEST_CASE("optimal advection is an exact diagonal shift") {
        auto g = UniformGrid2D::with_ratio(-10, 10, 41, -20, 41, 2.0, 1);
        const auto& fx = fixture("square-pulse-2d");
        State2D s{sample_field(g, fx.exact.u(), 0.0)};
        const auto before = s.u;
        advection2d_step(s, -1.0, -2.0, g.dx(), variant(true), fx.exact.u());
        for (int j = 1; j < g.ny() - 1; ++j) {
            for (int i = 1; i < g.nx() - 1; ++i) REQUIRE(s.u(i, j) == before(i + 1, j + 1));
        }
        // positive velocities shift the other way
        auto h = UniformGrid2D::with_ratio(0, 1, 11, 0, 11, 0.5, 1);
        auto data = field_2d(h, [](double x, double y) { return std::sin(7 * x) * std::cos(3 * y) + x; });
        State2D p{data};
        auto zero = make_function([](double, double, double) { return 0.0; });
        advection2d_step(p, 2.0, 1.0, h.dx() / 2, variant(true), *zero);
        for (int j = 1; j < h.ny() - 1; ++j) {
            for (int i = 1; i < h.nx() - 1; ++i) CHECK(p.u(i, j) == data(i - 1, j - 1));
        }
    }

    TEST_CASE("advection keeps constants and guards ratio and CFL") {
        auto g = UniformGrid2D::with_ratio(0, 1, 11, 0, 11, 2.0, 1);
        auto k = make_function([](double, double, double) { return 0.3; });
        State2D s{sample_field(g, *k, 0.0)};
        const auto sub = variant(false, TimeStepPolicy::fraction_of_stability(0.5));
        advection2d_step(s, -1.0, -2.0, 0.25 * g.dx(), sub, *k);
        for (double v : s.u.storage()) CHECK(v == doctest::Approx(0.3));
        CHECK_THROWS_AS(advection2d_step(s, -1.0, -2.0, 0.9 * g.dx(), variant(true), *k), RatioMismatchError);
        CHECK_THROWS_AS(advection2d_step(s, -1.0, -3.0, g.dx(), variant(true), *k), RatioMismatchError);
        CHECK_THROWS_AS(advection2d_step(s, -1.0, -2.0, 0.6 * g.dx(), sub, *k), StabilityError);
    }

    TEST_CASE("nine-point diffusion eigenmode amplification") {
        std::vector<double> dxs, gaps;
        for (int n : {17, 33, 65}) {
            auto g = UniformGrid2D::square(0, kTwoPi, n, 1);
            const double h = g.dx();
            const double dt = h * h / 6;
            const double lambda9 = (4 * std::cos(h) * std::cos(h) + 16 * std::cos(h) - 20) / (6 * h * h);
            const double amp = 1 + dt * lambda9;
            auto mode = sin_sin_mode(std::pow(amp, 1 / dt));
            State2D s{sample_field(g, *mode, 0.0)};
            diffusion2d_9pt_step(s, 1.0, dt, SourceModel::zero(), variant(true), *mode);
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < n; ++i) {
                    CHECK(s.u(i, j) ==
                          doctest::Approx(amp * std::sin(g.x(i)) * std::sin(g.y(j))).scale(1.0).epsilon(1e-13));
                }
            }
            dxs.push_back(h);
            gaps.push_back(std::abs(amp - std::exp(-2 * dt)));
        }
        CHECK(fit_loglog(dxs, gaps).slope == doctest::Approx(6.0).epsilon(0.05));
    }

    TEST_CASE("nine-point diffusion guards") {
        auto k = make_function([](double, double, double) { return 1.0; });
        auto g = UniformGrid2D::square(0, 1, 11, 1);
        State2D s{sample_field(g, *k, 0.0)};
        diffusion2d_9pt_step(s, 1.0, g.dx() * g.dx() / 6, SourceModel::zero(), variant(true), *k);
        for (double v : s.u.storage()) CHECK(v == 1.0);
        CHECK_THROWS_AS(diffusion2d_9pt_step(s, 1.0, g.dx() * g.dx() / 2, SourceModel::zero(), variant(true), *k),
                        StabilityError);
        State2D a{ScalarField2D(UniformGrid2D(0, 1, 11, 0, 2, 11, 1))};
        CHECK_THROWS_AS(diffusion2d_9pt_step(a, 1.0, 1e-4, SourceModel::zero(), variant(true), *k),
                        AnisotropicGridError);
    }

    TEST_CASE("one-step truncation of the 2D correction") {
        const auto& fx = fixture("diffusion-2d");
        auto err = [&](int n, bool nidc) {
            auto g = UniformGrid2D::square(0, 1, n, 1);
            State2D s{sample_field(g, fx.exact.u(), 0.05)};
            diffusion2d_9pt_step(s, 1.0, g.dx() * g.dx() / 6, fx.source, variant(nidc), fx.exact.u());
            return linf_error(s.u, fx.exact.u());
        };
        for (bool nidc : {true, false}) {
            std::vector<double> dxs, es;
            for (int n : {17, 33, 65, 129}) {
                dxs.push_back(1.0 / (n - 1));
                es.push_back(err(n, nidc));
            }
            CHECK(fit_loglog(dxs, es).slope == doctest::Approx(nidc ? 6.0 : 4.0).epsilon(0.3 / (nidc ? 6.0 : 4.0)));
        }
    }

    TEST_CASE("edge ghost weights reproduce cubics and extrapolate x^4 at fourth order") {
        for (double offset : {0.1, 0.37, 0.5, 0.9}) {
            for (bool shifted : {false, true}) {
                EdgeGhost e;
                e.boundary_offset = offset;
                e.shifted = shifted;
                const auto w = edge_ghost_weights(e);
                CHECK(w[0] + w[1] + w[2] + w[3] == doctest::Approx(1.0).epsilon(1e-14));
                const double first = shifted ? 2 : 1;
                auto cubic = [](double s) { return 2 - s + 3 * s * s - 0.5 * s * s * s; };
                const double v = w[0] * cubic(offset) + w[1] * cubic(first) + w[2] * cubic(first + 1) +
                                 w[3] * cubic(first + 2);
                CHECK(std::abs(v - cubic(0.0)) < 1e-13);
            }
        }
        EdgeGhost e;
        e.boundary_offset = 0.4;
        const auto w = edge_ghost_weights(e);
        std::vector<double> hs, errs;
        for (double h : {0.1, 0.05, 0.025, 0.0125}) {
            auto u = [h](double s) { return std::pow(1 + s * h, 4); };
            const double v = w[0] * u(0.4) + w[1] * u(1) + w[2] * u(2) + w[3] * u(3);
            hs.push_back(h);
            errs.push_back(std::abs(v - u(0)));
        }
        CHECK(fit_loglog(hs, errs).slope == doctest::Approx(4.0).epsilon(0.3 / 4));
    }

    TEST_CASE("corner ghost stencil weights") {
        // 5x5 unit grid; anchor (2, 2), ghost at (2 + sx, 2 + sy)
        auto g = UniformGrid2D::square(-2, 2, 5, 1);
        for (int sx : {-1, 1}) {
            for (int sy : {-1, 1}) {
                std::vector<NodeKind> kinds(25, NodeKind::interior);
                kinds[static_cast<std::size_t>(2 + sy) * 5 + (2 + sx)] = NodeKind::corner_ghost;
                CellClassification cls(g, kinds, {}, {CornerGhost{2 + sx, 2 + sy, 2, 2, sx, sy}}, {});
                auto check = [&](const std::function<double(double, double)>& f) {
                    auto u = field_2d(g, f);
                    u(2 + sx, 2 + sy) = -99;
                    fill_corner_ghosts(u, cls);
                    return u(2 + sx, 2 + sy);
                };
                CHECK(check([](double x, double) { return x; }) == doctest::Approx(sx));
                CHECK(check([](double x, double y) { return x * y; }) == doctest::Approx(sx * sy));
                CHECK(check([](double, double) { return 7.0; }) == doctest::Approx(7.0));
                CHECK(check([](double x, double y) { return 1 + 2 * x - y + 3 * x * y; }) ==
                      doctest::Approx(1 + 2 * sx - sy + 3 * sx * sy));
            }
        }
    }

    TEST_CASE("starfish ghosts are exact for bilinear data and edge ghosts for axis cubics") {
        auto grid = UniformGrid2D::square(-1, 1, 60, 1);
        auto cls = classify_cells(ImplicitDomain{starfish_phi, grid});
        auto bilinear = make_function([](double x, double y, double) { return 1 + 2 * x - y + 3 * x * y; });
        auto u = sample_interior(cls, *bilinear, 0.0);
        fill_edge_ghosts(u, cls, *bilinear, 0.0);
        fill_corner_ghosts(u, cls);
        for (const auto& e : cls.edge_ghosts()) CHECK(u(e.i, e.j) == doctest::Approx(bilinear->eval(grid.x(e.i), grid.y(e.j), 0)));
        for (const auto& c : cls.corner_ghosts()) CHECK(u(c.i, c.j) == doctest::Approx(bilinear->eval(grid.x(c.i), grid.y(c.j), 0)));

        auto cubic = make_function([](double x, double y, double) {
            return x * x * x - 2 * y * y * y + x * x * y + 0.5 * x * y * y + 1;
        });
        auto v = sample_interior(cls, *cubic, 0.0);
        fill_edge_ghosts(v, cls, *cubic, 0.0);
        for (const auto& e : cls.edge_ghosts()) {
            CHECK(std::abs(v(e.i, e.j) - cubic->eval(grid.x(e.i), grid.y(e.j), 0)) < 1e-13);
        }
    }

    TEST_CASE("corner ghosts before edge ghosts is an ordering error") {
        auto grid = UniformGrid2D::square(-1, 1, 60, 1);
        auto cls = classify_cells(ImplicitDomain{starfish_phi, grid});
        auto one = make_function([](double, double, double) { return 1.0; });
        auto u = sample_interior(cls, *one, 0.0);
        CHECK_THROWS_AS(fill_corner_ghosts(u, cls), GhostOrderError);
    }

    TEST_CASE("pruned nodes take the boundary value at their own position") {
        auto phi = [](double x, double y) {
            const double rect = std::max(std::abs(x) - 0.55, std::abs(y) - 0.55);
            const double spike = std::max(std::abs(x) - 0.01, std::abs(y - 0.585) - 0.035);
            return std::min(rect, spike);
        };
        auto grid = UniformGrid2D::square(-1, 1, 21, 1);
        auto cls = classify_cells(ImplicitDomain{phi, grid});
        auto f = make_function([](double x, double y, double t) { return x + 10 * y + t; });
        auto u = sample_interior(cls, *f, 0.5);
        fill_edge_ghosts(u, cls, *f, 0.5);
        CHECK(u(10, 16) == doctest::Approx(0.0 + 6.0 + 0.5));
    }

    TEST_CASE("irregular stepper on the full rectangle equals the regular stepper") {
        const auto& fx = fixture("diffusion-2d");
        auto grid = UniformGrid2D::square(0, 1, 21, 1);
        auto cls = classify_cells(ImplicitDomain{[](double, double) { return -1.0; }, grid});
        const double dt = grid.dx() * grid.dx() / 6;
        State2D a{sample_field(grid, fx.exact.u(), 0.0)};
        State2D b{sample_field(grid, fx.exact.u(), 0.0)};
        Diffusion2D9pt regular(grid, 1.0, fx.source, variant(true), fx.exact.u());
        Diffusion2DIrregular irregular(cls, 1.0, fx.source, variant(true), fx.exact.u());
        advance_steps(regular, a, dt, 10);
        advance_steps(irregular, b, dt, 10);
        for (int j = 0; j < 21; ++j) {
            for (int i = 0; i < 21; ++i) REQUIRE(a.u(i, j) == b.u(i, j));
        }
    }

    TEST_CASE("irregular stepper keeps constants on the starfish") {
        auto grid = UniformGrid2D::square(-1, 1, 50, 1);
        auto cls = classify_cells(ImplicitDomain{starfish_phi, grid});
        auto k = make_function([](double, double, double) { return 2.5; });
        State2D s{sample_interior(cls, *k, 0.0)};
        Diffusion2DIrregular stepper(cls, 1.0, SourceModel::zero(), variant(true), *k);
        advance_steps(stepper, s, grid.dx() * grid.dx() / 6, 20);
        for (const auto& [i, j] : cls.active_nodes()) CHECK(s.u(i, j) == doctest::Approx(2.5));
    }

    TEST_CASE("Crank-Nicolson 2D eigenmode and constants") {
        auto g = UniformGrid2D::square(0, kTwoPi, 33, 1);
        const double h = g.dx();
        const double dt = 0.3 * h;
        const double z = dt * 2 * (2 - 2 * std::cos(h)) / (h * h);
        const double amp = (1 - z / 2) / (1 + z / 2);
        auto mode = sin_sin_mode(std::pow(amp, 1 / dt));
        State2D s{sample_field(g, *mode, 0.0)};
        CrankNicolson2D5pt cn(g, 1.0, SourceModel::zero(), *mode, 1e-14);
        cn.step(s, dt);
        CHECK(cn.last_iterations() > 0);
        for (int j = 0; j < 33; ++j) {
            for (int i = 0; i < 33; ++i) {
                CHECK(s.u(i, j) == doctest::Approx(amp * std::sin(g.x(i)) * std::sin(g.y(j))).scale(1.0).epsilon(1e-11));
            }
        }
        auto k = make_function([](double, double, double) { return -1.25; });
        State2D c{sample_field(g, *k, 0.0)};
        crank_nicolson_2d_5pt_step(c, 1.0, 0.1, SourceModel::zero(), *k);
        for (double v : c.u.storage()) CHECK(v == doctest::Approx(-1.25));
    }

    TEST_CASE("2D advance_to lands on the final time") {
        auto k = make_function([](double, double, double) { return 1.0; });
        auto g = UniformGrid2D::square(0, 1, 11, 1);
        Diffusion2D9pt stepper(g, 1.0, SourceModel::zero(), variant(false), *k);
        State2D s{sample_field(g, *k, 0.0)};
        CHECK(advance_to(stepper, s, 1e-3, 0.0105) == 11);
        CHECK(s.time() == doctest::Approx(0.0105).epsilon(1e-15));
    }
}
