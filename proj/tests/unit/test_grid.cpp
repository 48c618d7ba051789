#include <doctest.h>

#include <cmath>

#include "otsfd/errors.hpp"
#include "otsfd/experiments.hpp"
#include "otsfd/grid.hpp"

using namespace otsfd;

namespace {

// Classification from phi alone: interior iff phi <= 0, then ghosts by neighbourhood.
NodeKind brute_force_kind(const ImplicitDomain& d, int i, int j) {
    const auto& g = d.grid;
    auto in = [&](int a, int b) {
        return a >= 0 && b >= 0 && a < g.nx() && b < g.ny() && d.phi(g.x(a), g.y(b)) <= 0;
    };
    if (in(i, j)) return NodeKind::interior;
    for (auto [a, b] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        if (in(i + a, j + b)) return NodeKind::edge_ghost;
    }
    for (auto [a, b] : {std::pair{1, 1}, {-1, 1}, {1, -1}, {-1, -1}}) {
        if (in(i + a, j + b)) return NodeKind::corner_ghost;
    }
    return NodeKind::far_exterior;
}

}  // namespace

TEST_SUITE("grid") {
    TEST_CASE("uniform grids place end nodes on the interval ends") {
        UniformGrid1D g(0.0, 2.0, 21, 2);
        CHECK(g.dx() == doctest::Approx(0.1));
        CHECK(g.x(0) == 0.0);
        CHECK(g.x(20) == doctest::Approx(2.0));
        CHECK(g.storage_size() == 25u);
        CHECK_THROWS_AS(UniformGrid1D(0.0, 1.0, 1, 1), ConfigError);
        CHECK_THROWS_AS(UniformGrid1D(1.0, 0.0, 10, 1), ConfigError);

        auto r = UniformGrid2D::with_ratio(-10, 10, 101, -20, 201, 2.0, 1);
        CHECK(r.dy() == doctest::Approx(2.0 * r.dx()));
        CHECK(r.spacing_ratio() == 2.0);
        CHECK_FALSE(r.is_isotropic());
        CHECK(UniformGrid2D::square(0, 1, 11, 1).is_isotropic());
    }

    TEST_CASE("phi < 0 everywhere gives an all-interior grid") {
        ImplicitDomain d{[](double, double) { return -1.0; }, UniformGrid2D::square(-1, 1, 11, 1)};
        auto c = classify_cells(d);
        CHECK(c.count(NodeKind::interior) == 121u);
        CHECK(c.edge_ghosts().empty());
        CHECK(c.corner_ghosts().empty());
        CHECK(c.ring_nodes().size() == 40u);
        CHECK(c.active_nodes().size() == 81u);
    }

    TEST_CASE("half plane has one column of edge ghosts and no corners") {
        ImplicitDomain d{[](double x, double) { return x - 0.05; }, UniformGrid2D::square(-1, 1, 21, 1)};
        auto c = classify_cells(d);
        CHECK(c.corner_ghosts().empty());
        CHECK(c.edge_ghosts().size() == 21u);
        for (const auto& e : c.edge_ghosts()) {
            CHECK(e.i == 11);
            CHECK(e.axis == 0);
            CHECK(e.direction == -1);
            CHECK(e.boundary_x == doctest::Approx(0.05));
            CHECK(e.boundary_offset == doctest::Approx(0.5));
        }
    }

    TEST_CASE("starfish at 100x100 matches a brute-force classification") {
        ImplicitDomain d{starfish_phi, UniformGrid2D::square(-1, 1, 100, 1)};
        auto c = classify_cells(d);
        REQUIRE(c.pruned_nodes() == 0);
        CHECK(c.edge_ghosts().size() > 0);
        CHECK(c.corner_ghosts().size() > 0);
        for (int j = 0; j < 100; ++j) {
            for (int i = 0; i < 100; ++i) {
                REQUIRE(c.kind(i, j) == brute_force_kind(d, i, j));
            }
        }
        for (const auto& cg : c.corner_ghosts()) {
            CHECK(std::abs(cg.anchor_i - cg.i) == 1);
            CHECK(std::abs(cg.anchor_j - cg.j) == 1);
            CHECK(c.is_interior(cg.anchor_i, cg.anchor_j));
            CHECK_FALSE(c.is_interior(cg.i + 1, cg.j));
            CHECK_FALSE(c.is_interior(cg.i - 1, cg.j));
            CHECK_FALSE(c.is_interior(cg.i, cg.j + 1));
            CHECK_FALSE(c.is_interior(cg.i, cg.j - 1));
        }
        for (const auto& e : c.edge_ghosts()) {
            CHECK(std::abs(starfish_phi(e.boundary_x, e.boundary_y)) < 0.02);
            CHECK(e.boundary_offset >= 0.0);
            CHECK(e.boundary_offset <= 1.0);
        }
    }

    TEST_CASE("phi == 0 on a node counts as interior") {
        ImplicitDomain d{[](double x, double) { return x; }, UniformGrid2D::square(-1, 1, 21, 1)};
        auto c = classify_cells(d);
        CHECK(c.zero_level_nodes() == 21u);
        CHECK(c.is_interior(10, 5));
        CHECK(c.kind(11, 5) == NodeKind::edge_ghost);
    }

    TEST_CASE("a one-node protrusion is pruned into an edge ghost on its own boundary point") {
        auto phi = [](double x, double y) {
            const double rect = std::max(std::abs(x) - 0.55, std::abs(y) - 0.55);
            const double spike = std::max(std::abs(x) - 0.01, std::abs(y - 0.585) - 0.035);
            return std::min(rect, spike);
        };
        ImplicitDomain d{phi, UniformGrid2D::square(-1, 1, 21, 1)};
        auto c = classify_cells(d);
        CHECK(c.pruned_nodes() == 1u);
        CHECK(c.kind(10, 16) == NodeKind::edge_ghost);
        bool found = false;
        for (const auto& e : c.edge_ghosts()) {
            if (e.i == 10 && e.j == 16) {
                found = true;
                CHECK(e.boundary_offset == 0.0);
                CHECK(e.boundary_x == doctest::Approx(0.0));
                CHECK(e.boundary_y == doctest::Approx(0.6));
            }
        }
        CHECK(found);
    }

    TEST_CASE("classification errors") {
        ImplicitDomain empty{[](double, double) { return 1.0; }, UniformGrid2D::square(-1, 1, 11, 1)};
        CHECK_THROWS_AS(classify_cells(empty), DegenerateDomainError);
        ImplicitDomain wiggly{[](double x, double) { return std::cos(40.0 * x); }, UniformGrid2D::square(-1, 1, 11, 1)};
        CHECK_THROWS_AS(classify_cells(wiggly), UnresolvedBoundaryError);
    }

    TEST_CASE("boundary point is the root of the linear interpolant") {
        CHECK(boundary_point(0.4, 0.6, -0.1, 0.1) == doctest::Approx(0.5));
        CHECK(boundary_point(0.4, 0.6, 2 * 0.4 - 1, 2 * 0.6 - 1) == doctest::Approx(0.5));
        // phi = x^2 - 0.25 sampled at 0.4 and 0.6
        const double pa = 0.4 * 0.4 - 0.25;
        const double pb = 0.6 * 0.6 - 0.25;
        CHECK(pa == doctest::Approx(-0.09));
        CHECK(pb == doctest::Approx(0.11));
        CHECK(boundary_point(0.4, 0.6, pa, pb) == doctest::Approx(0.49).epsilon(1e-14));
        CHECK_THROWS_AS(boundary_point(0.4, 0.6, 0.1, 0.2), NoSignChangeError);
        CHECK_THROWS_AS(boundary_point(0.4, 0.6, -0.1, -0.2), NoSignChangeError);

        ImplicitDomain d{[](double x, double y) { return x * x + y * y - 0.25; }, UniformGrid2D::square(-1, 1, 11, 1)};
        auto [bx, by] = boundary_point(d, 7, 5, 8, 5);
        CHECK(bx == doctest::Approx(0.49));
        CHECK(by == doctest::Approx(0.0));
    }
}
