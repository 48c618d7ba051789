#include "otsfd/stencil.hpp"

#include <string>

#include "otsfd/errors.hpp"

namespace otsfd {

void require_ghost_width(int have, int need, const char* who) {
    if (have < need) {
        throw InsufficientGhostError(std::string(who) + ": needs " + std::to_string(need) + " ghost layer(s), field has " +
                                     std::to_string(have));
    }
}

namespace {

template <class Kernel>
std::vector<double> apply_1d(const ScalarField1D& u, int width, const char* who, Kernel&& k) {
    require_ghost_width(u.grid().ghost_width(), width, who);
    std::vector<double> out(static_cast<std::size_t>(u.grid().n()));
    for (int j = 0; j < u.grid().n(); ++j) out[static_cast<std::size_t>(j)] = k(j);
    return out;
}

template <class Kernel>
NodeArray2D apply_2d(const ScalarField2D& u, int width, const char* who, Kernel&& k) {
    require_ghost_width(u.grid().ghost_width(), width, who);
    NodeArray2D out(u.grid().nx(), u.grid().ny());
    for (int j = 0; j < u.grid().ny(); ++j) {
        for (int i = 0; i < u.grid().nx(); ++i) out(i, j) = k(i, j);
    }
    return out;
}

void require_isotropic(const UniformGrid2D& g, const char* who) {
    if (!g.is_isotropic()) throw AnisotropicGridError(std::string(who) + ": requires dx == dy");
}

}  // namespace

std::vector<double> laplacian_1d_c2(const ScalarField1D& u) {
    const double inv = 1.0 / (u.grid().dx() * u.grid().dx());
    return apply_1d(u, 1, "laplacian_1d_c2", [&](int j) { return kernel::laplacian_c2(u, j, inv); });
}

std::vector<double> gradient_upwind_1d(const ScalarField1D& u, int wind_sign) {
    const double inv = 1.0 / u.grid().dx();
    return apply_1d(u, 1, "gradient_upwind_1d", [&](int j) { return kernel::gradient_upwind(u, j, wind_sign, inv); });
}

std::vector<double> gradient_central_1d(const ScalarField1D& u) {
    const double inv = 0.5 / u.grid().dx();
    return apply_1d(u, 1, "gradient_central_1d", [&](int j) { return kernel::gradient_central(u, j, inv); });
}

std::vector<double> bilaplacian_1d_o4(const ScalarField1D& u) {
    const double dx = u.grid().dx();
    const double inv = 1.0 / (6.0 * dx * dx * dx * dx);
    return apply_1d(u, 3, "bilaplacian_1d_o4", [&](int j) { return kernel::bilaplacian_o4_sum(u, j) * inv; });
}

std::vector<double> bilaplacian_1d_o2(const ScalarField1D& u) {
    const double dx = u.grid().dx();
    const double inv = 1.0 / (dx * dx * dx * dx);
    return apply_1d(u, 2, "bilaplacian_1d_o2", [&](int j) { return kernel::bilaplacian_o2_sum(u, j) * inv; });
}

NodeArray2D laplacian_2d_5pt(const ScalarField2D& u) {
    require_isotropic(u.grid(), "laplacian_2d_5pt");
    const double inv = 1.0 / (u.grid().dx() * u.grid().dx());
    return apply_2d(u, 1, "laplacian_2d_5pt", [&](int i, int j) { return kernel::laplacian_5pt_sum(u, i, j) * inv; });
}

NodeArray2D laplacian_2d_9pt(const ScalarField2D& u) {
    require_isotropic(u.grid(), "laplacian_2d_9pt");
    const double inv = 1.0 / (6.0 * u.grid().dx() * u.grid().dx());
    return apply_2d(u, 1, "laplacian_2d_9pt", [&](int i, int j) { return kernel::laplacian_9pt_sum(u, i, j) * inv; });
}

NodeArray2D mixed_xxyy_central(const ScalarField2D& u) {
    const double dx = u.grid().dx();
    const double dy = u.grid().dy();
    const double inv = 1.0 / (dx * dx * dy * dy);
    return apply_2d(u, 1, "mixed_xxyy_central", [&](int i, int j) { return kernel::mixed_xxyy_sum(u, i, j) * inv; });
}

NodeArray2D mixed_xy_upwind(const ScalarField2D& u, int sx, int sy) {
    const int wx = sx >= 0 ? 1 : -1;
    const int wy = sy >= 0 ? 1 : -1;
    const double inv = 1.0 / (u.grid().dx() * u.grid().dy());
    return apply_2d(u, 1, "mixed_xy_upwind",
                    [&](int i, int j) { return kernel::mixed_xy_upwind_sum(u, i, j, wx, wy) * inv; });
}

}  // namespace otsfd
