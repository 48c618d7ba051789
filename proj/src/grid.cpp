#include "otsfd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "otsfd/errors.hpp"

namespace otsfd {

UniformGrid1D::UniformGrid1D(double x_lo, double x_hi, int n, int ghost_width)
    : x_lo_(x_lo), x_hi_(x_hi), n_(n), dx_(0), ghost_width_(ghost_width) {
    if (n < 2) throw ConfigError("UniformGrid1D: need at least 2 nodes, got " + std::to_string(n));
    if (ghost_width < 0) throw ConfigError("UniformGrid1D: negative ghost width");
    if (!(x_hi > x_lo)) throw ConfigError("UniformGrid1D: x_hi must exceed x_lo");
    dx_ = (x_hi - x_lo) / (n - 1);
}

UniformGrid1D UniformGrid1D::with_ghost_width(int ghost_width) const {
    return UniformGrid1D(x_lo_, x_hi_, n_, ghost_width);
}

UniformGrid2D::UniformGrid2D(double x_lo, double x_hi, int nx, double y_lo, double y_hi, int ny, int ghost_width)
    : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi), nx_(nx), ny_(ny), ghost_width_(ghost_width) {
    if (nx < 2 || ny < 2) throw ConfigError("UniformGrid2D: need at least 2 nodes per direction");
    if (ghost_width < 0) throw ConfigError("UniformGrid2D: negative ghost width");
    if (!(x_hi > x_lo) || !(y_hi > y_lo)) throw ConfigError("UniformGrid2D: empty extent");
    dx_ = (x_hi - x_lo) / (nx - 1);
    dy_ = (y_hi - y_lo) / (ny - 1);
    ratio_ = dy_ / dx_;
}

UniformGrid2D UniformGrid2D::with_ratio(double x_lo, double x_hi, int nx, double y_lo, int ny, double ratio,
                                        int ghost_width) {
    if (!(ratio > 0)) throw ConfigError("UniformGrid2D: spacing ratio must be positive");
    UniformGrid2D g(x_lo, x_hi, nx, y_lo, y_lo + 1.0, ny, ghost_width);
    g.dy_ = ratio * g.dx_;
    g.y_hi_ = y_lo + (ny - 1) * g.dy_;
    g.ratio_ = ratio;
    return g;
}

UniformGrid2D UniformGrid2D::square(double lo, double hi, int n, int ghost_width) {
    return UniformGrid2D(lo, hi, n, lo, hi, n, ghost_width);
}

bool UniformGrid2D::is_isotropic(double rel_tol) const { return std::abs(dy_ - dx_) <= rel_tol * dx_; }

CellClassification::CellClassification(UniformGrid2D grid, std::vector<NodeKind> kinds, std::vector<EdgeGhost> edges,
                                       std::vector<CornerGhost> corners, std::vector<std::size_t> on_boundary_nodes,
                                       std::size_t pruned)
    : grid_(std::move(grid)),
      kinds_(std::move(kinds)),
      edges_(std::move(edges)),
      corners_(std::move(corners)),
      on_boundary_(std::move(on_boundary_nodes)),
      pruned_(pruned) {
    for (int j = 0; j < grid_.ny(); ++j) {
        for (int i = 0; i < grid_.nx(); ++i) {
            if (kind(i, j) != NodeKind::interior) continue;
            const bool ring = i == 0 || j == 0 || i == grid_.nx() - 1 || j == grid_.ny() - 1;
            (ring ? ring_ : active_).emplace_back(i, j);
        }
    }
}

std::size_t CellClassification::count(NodeKind k) const { return std::ranges::count(kinds_, k); }

double boundary_point(double interior_coord, double ghost_coord, double phi_interior, double phi_ghost) {
    const bool opposite = (phi_interior <= 0 && phi_ghost > 0) || (phi_interior > 0 && phi_ghost <= 0);
    if (!opposite || phi_interior == phi_ghost) {
        throw NoSignChangeError("boundary_point: phi does not change sign between the nodes");
    }
    const double t = phi_interior / (phi_interior - phi_ghost);
    return interior_coord + t * (ghost_coord - interior_coord);
}

std::pair<double, double> boundary_point(const ImplicitDomain& domain, int ii, int ij, int gi, int gj) {
    const auto& g = domain.grid;
    if (std::abs(ii - gi) + std::abs(ij - gj) != 1) {
        throw ConfigError("boundary_point: nodes are not joined by a grid edge");
    }
    const double pi = domain.phi(g.x(ii), g.y(ij));
    const double pg = domain.phi(g.x(gi), g.y(gj));
    if (ii != gi) return {boundary_point(g.x(ii), g.x(gi), pi, pg), g.y(ij)};
    return {g.x(ii), boundary_point(g.y(ij), g.y(gj), pi, pg)};
}

namespace {

struct PhiSamples {
    const UniformGrid2D& grid;
    std::vector<double> values;
    double operator()(int i, int j) const { return values[static_cast<std::size_t>(j) * grid.nx() + i]; }
};

void check_resolved(const ImplicitDomain& domain, const PhiSamples& phi, int samples) {
    const auto& g = domain.grid;
    auto sign_changes = [&](double x0, double y0, double x1, double y1, double p0, double p1) {
        int changes = 0;
        bool prev = p0 <= 0;
        for (int k = 1; k <= samples + 1; ++k) {
            const double s = static_cast<double>(k) / (samples + 1);
            const double p = k == samples + 1 ? p1 : domain.phi(x0 + s * (x1 - x0), y0 + s * (y1 - y0));
            const bool inside = p <= 0;
            if (inside != prev) ++changes;
            prev = inside;
        }
        return changes;
    };
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            if (i + 1 < g.nx() &&
                sign_changes(g.x(i), g.y(j), g.x(i + 1), g.y(j), phi(i, j), phi(i + 1, j)) > 1) {
                throw UnresolvedBoundaryError("classify_cells: boundary crosses an x-edge more than once near (" +
                                              std::to_string(i) + ", " + std::to_string(j) + ")");
            }
            if (j + 1 < g.ny() &&
                sign_changes(g.x(i), g.y(j), g.x(i), g.y(j + 1), phi(i, j), phi(i, j + 1)) > 1) {
                throw UnresolvedBoundaryError("classify_cells: boundary crosses a y-edge more than once near (" +
                                              std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
}

}  // namespace

CellClassification classify_cells(const ImplicitDomain& domain, const ClassificationOptions& options) {
    const auto& g = domain.grid;
    const int nx = g.nx();
    const int ny = g.ny();
    PhiSamples phi{g, std::vector<double>(static_cast<std::size_t>(nx) * ny)};
    std::vector<std::size_t> zero_nodes;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double p = domain.phi(g.x(i), g.y(j));
            phi.values[static_cast<std::size_t>(j) * nx + i] = p;
            if (p == 0) zero_nodes.push_back(static_cast<std::size_t>(j) * nx + i);
        }
    }
    if (std::ranges::none_of(phi.values, [](double p) { return p <= 0; })) {
        throw DegenerateDomainError("classify_cells: the domain has no interior nodes");
    }
    check_resolved(domain, phi, options.edge_samples);

    // Interior nodes off the outer ring with fewer than two interior axis neighbours are
    // pruned; they become edge ghosts pinned to the boundary value at their own position.
    std::vector<char> in(static_cast<std::size_t>(nx) * ny);
    for (std::size_t k = 0; k < in.size(); ++k) in[k] = phi.values[k] <= 0;
    auto in_at = [&](int i, int j) {
        return i >= 0 && j >= 0 && i < nx && j < ny && in[static_cast<std::size_t>(j) * nx + i];
    };
    std::size_t pruned = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (int j = 1; j + 1 < ny; ++j) {
            for (int i = 1; i + 1 < nx; ++i) {
                if (!in_at(i, j)) continue;
                const int count = in_at(i - 1, j) + in_at(i + 1, j) + in_at(i, j - 1) + in_at(i, j + 1);
                if (count < 2) {
                    in[static_cast<std::size_t>(j) * nx + i] = 0;
                    ++pruned;
                    changed = true;
                }
            }
        }
    }
    if (std::ranges::none_of(in, [](char c) { return c != 0; })) {
        throw DegenerateDomainError("classify_cells: no interior nodes survive pruning");
    }

    auto inside = [&](int i, int j) { return in_at(i, j); };

    std::vector<NodeKind> kinds(static_cast<std::size_t>(nx) * ny, NodeKind::far_exterior);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            auto& k = kinds[static_cast<std::size_t>(j) * nx + i];
            if (inside(i, j)) {
                k = NodeKind::interior;
            } else if (inside(i - 1, j) || inside(i + 1, j) || inside(i, j - 1) || inside(i, j + 1)) {
                k = NodeKind::edge_ghost;
            } else if (inside(i - 1, j - 1) || inside(i + 1, j - 1) || inside(i - 1, j + 1) || inside(i + 1, j + 1)) {
                k = NodeKind::corner_ghost;
            }
        }
    }
    auto kind_at = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= nx || j >= ny) return NodeKind::far_exterior;
        return kinds[static_cast<std::size_t>(j) * nx + i];
    };

    std::vector<EdgeGhost> edges;
    std::vector<CornerGhost> corners;
    constexpr int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const NodeKind k = kinds[static_cast<std::size_t>(j) * nx + i];
            if (k == NodeKind::edge_ghost) {
                bool found = false;
                EdgeGhost best;
                for (const auto& d : dirs) {
                    if (!inside(i + d[0], j + d[1])) continue;
                    EdgeGhost cand;
                    cand.i = i;
                    cand.j = j;
                    cand.axis = d[0] != 0 ? 0 : 1;
                    cand.direction = d[0] != 0 ? d[0] : d[1];
                    const double pi = phi(i + d[0], j + d[1]);
                    const double pg = phi(i, j);
                    // fraction of the edge from the interior node to the boundary point;
                    // a pruned node (pg <= 0) carries its own boundary point
                    const double t = pg <= 0 ? 1.0 : pi / (pi - pg);
                    cand.boundary_offset = 1.0 - t;
                    cand.boundary_x = g.x(i) + d[0] * cand.boundary_offset * g.dx();
                    cand.boundary_y = g.y(j) + d[1] * cand.boundary_offset * g.dy();
                    cand.shifted = t < options.shift_threshold;
                    const int first = cand.shifted ? 2 : 1;
                    bool feasible = true;
                    for (int m = first; m < first + 3 && pg > 0; ++m) {
                        feasible = feasible && inside(i + m * d[0], j + m * d[1]);
                    }
                    if (!feasible) continue;
                    if (!found || cand.boundary_offset < best.boundary_offset) best = cand;
                    found = true;
                }
                if (!found) {
                    throw NotEnoughInteriorPointsError("classify_cells: no axis through edge ghost (" +
                                                       std::to_string(i) + ", " + std::to_string(j) +
                                                       ") has three interior nodes for the cubic extrapolant");
                }
                edges.push_back(best);
            } else if (k == NodeKind::corner_ghost) {
                bool found = false;
                CornerGhost best;
                double best_phi = 0;
                for (int sy : {-1, 1}) {
                    for (int sx : {-1, 1}) {
                        const int ai = i - sx;
                        const int aj = j - sy;
                        if (!inside(ai, aj)) continue;
                        constexpr int stencil[7][2] = {{-1, -1}, {1, 0}, {0, 1}, {1, -1}, {-1, 1}, {0, -1}, {-1, 0}};
                        bool feasible = true;
                        for (const auto& s : stencil) {
                            const NodeKind nk = kind_at(ai + s[0] * sx, aj + s[1] * sy);
                            feasible = feasible && (nk == NodeKind::interior || nk == NodeKind::edge_ghost);
                        }
                        if (!feasible) continue;
                        if (!found || phi(ai, aj) < best_phi) {
                            best = CornerGhost{i, j, ai, aj, sx, sy};
                            best_phi = phi(ai, aj);
                        }
                        found = true;
                    }
                }
                if (!found) {
                    throw NotEnoughInteriorPointsError("classify_cells: corner ghost (" + std::to_string(i) + ", " +
                                                       std::to_string(j) +
                                                       ") has no anchor whose stencil is interior or edge ghosts");
                }
                corners.push_back(best);
            }
        }
    }
    std::erase_if(zero_nodes, [&](std::size_t k) { return !in[k]; });
    return CellClassification(g, std::move(kinds), std::move(edges), std::move(corners), std::move(zero_nodes),
                              pruned);
}

}  // namespace otsfd
