#pragma once

#include <vector>

#include "otsfd/field.hpp"

namespace otsfd {

// Per-node kernels. They assume the caller has checked the ghost width; the
// array-returning operations below do the checking and are what tests and
// multi-term schemes use.
namespace kernel {

inline double laplacian_c2(const ScalarField1D& u, int j, double inv_dx2) {
    return (u[j + 1] - 2.0 * u[j] + u[j - 1]) * inv_dx2;
}

inline double gradient_central(const ScalarField1D& u, int j, double inv_2dx) { return (u[j + 1] - u[j - 1]) * inv_2dx; }

inline double gradient_upwind(const ScalarField1D& u, int j, int wind_sign, double inv_dx) {
    return wind_sign >= 0 ? (u[j] - u[j - 1]) * inv_dx : (u[j + 1] - u[j]) * inv_dx;
}

/// Fourth-order seven-point bilaplacian, without the 1/(6 dx^4) factor.
inline double bilaplacian_o4_sum(const ScalarField1D& u, int j) {
    return -u[j + 3] + 12.0 * u[j + 2] - 39.0 * u[j + 1] + 56.0 * u[j] - 39.0 * u[j - 1] + 12.0 * u[j - 2] - u[j - 3];
}

/// Second-order five-point bilaplacian, without the 1/dx^4 factor.
inline double bilaplacian_o2_sum(const ScalarField1D& u, int j) {
    return u[j + 2] - 4.0 * u[j + 1] + 6.0 * u[j] - 4.0 * u[j - 1] + u[j - 2];
}

/// Five-point Laplacian sum, without the 1/dx^2 factor.
inline double laplacian_5pt_sum(const ScalarField2D& u, int i, int j) {
    return u(i + 1, j) + u(i - 1, j) + u(i, j + 1) + u(i, j - 1) - 4.0 * u(i, j);
}

/// Nine-point isotropic Laplacian sum, without the 1/(6 dx^2) factor.
inline double laplacian_9pt_sum(const ScalarField2D& u, int i, int j) {
    return u(i + 1, j + 1) + u(i + 1, j - 1) + u(i - 1, j + 1) + u(i - 1, j - 1) +
           4.0 * (u(i + 1, j) + u(i - 1, j) + u(i, j + 1) + u(i, j - 1)) - 20.0 * u(i, j);
}

/// Central second-order u_xxyy sum, without the 1/(dx^2 dy^2) factor.
inline double mixed_xxyy_sum(const ScalarField2D& u, int i, int j) {
    return u(i + 1, j + 1) + u(i + 1, j - 1) + u(i - 1, j + 1) + u(i - 1, j - 1) -
           2.0 * (u(i + 1, j) + u(i - 1, j) + u(i, j + 1) + u(i, j - 1)) + 4.0 * u(i, j);
}

/// Upwind u_xy difference for wind signs (sx, sy), without the 1/(dx dy) factor.
inline double mixed_xy_upwind_sum(const ScalarField2D& u, int i, int j, int sx, int sy) {
    return sx * sy * (u(i, j) - u(i - sx, j) - u(i, j - sy) + u(i - sx, j - sy));
}

}  // namespace kernel

/// (u_{j+1} - 2u_j + u_{j-1}) / dx^2 at every node.
std::vector<double> laplacian_1d_c2(const ScalarField1D& u);

/// First-order upwind gradient. wind_sign >= 0 looks left, < 0 looks right.
std::vector<double> gradient_upwind_1d(const ScalarField1D& u, int wind_sign);

/// (u_{j+1} - u_{j-1}) / (2 dx) at every node.
std::vector<double> gradient_central_1d(const ScalarField1D& u);

/// Fourth-order seven-point bilaplacian; needs three ghost layers.
std::vector<double> bilaplacian_1d_o4(const ScalarField1D& u);

/// Second-order five-point bilaplacian; needs two ghost layers.
std::vector<double> bilaplacian_1d_o2(const ScalarField1D& u);

/// Standard five-point Laplacian; requires dx == dy.
NodeArray2D laplacian_2d_5pt(const ScalarField2D& u);

/// Nine-point Laplacian with isotropic leading error (dx^2/12) bilap(u); requires dx == dy.
NodeArray2D laplacian_2d_9pt(const ScalarField2D& u);

/// Central second-order approximation of u_xxyy.
NodeArray2D mixed_xxyy_central(const ScalarField2D& u);

/// First-order upwind u_xy for the given wind signs; anisotropic spacing allowed.
NodeArray2D mixed_xy_upwind(const ScalarField2D& u, int sx, int sy);

void require_ghost_width(int have, int need, const char* who);

}  // namespace otsfd
