#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace otsfd {

/// Node-centred uniform 1D grid. Nodes 0 and n-1 sit on x_lo and x_hi;
/// ghost nodes extend ghost_width layers beyond each end.
class UniformGrid1D {
   public:
    UniformGrid1D(double x_lo, double x_hi, int n, int ghost_width);

    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    int n() const { return n_; }
    double dx() const { return dx_; }
    int ghost_width() const { return ghost_width_; }
    std::size_t storage_size() const { return static_cast<std::size_t>(n_ + 2 * ghost_width_); }

    /// Coordinate of node j; valid for j in [-ghost_width, n + ghost_width).
    double x(int j) const { return x_lo_ + j * dx_; }

    /// Same extent and resolution with a different ghost layer count.
    UniformGrid1D with_ghost_width(int ghost_width) const;

    bool operator==(const UniformGrid1D&) const = default;

   private:
    double x_lo_;
    double x_hi_;
    int n_;
    double dx_;
    int ghost_width_;
};

/// Node-centred uniform 2D grid. The spacing ratio dy/dx is stored as given
/// so that grids built from a ratio keep it exactly.
class UniformGrid2D {
   public:
    UniformGrid2D(double x_lo, double x_hi, int nx, double y_lo, double y_hi, int ny, int ghost_width);

    /// Grid with dy = ratio * dx; y_hi follows from y_lo, ny and dy.
    static UniformGrid2D with_ratio(double x_lo, double x_hi, int nx, double y_lo, int ny, double ratio,
                                    int ghost_width);

    /// Square grid on [lo, hi]^2 with n nodes per direction.
    static UniformGrid2D square(double lo, double hi, int n, int ghost_width);

    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    double y_lo() const { return y_lo_; }
    double y_hi() const { return y_hi_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    double spacing_ratio() const { return ratio_; }
    int ghost_width() const { return ghost_width_; }
    int stride() const { return nx_ + 2 * ghost_width_; }
    std::size_t storage_size() const {
        return static_cast<std::size_t>(nx_ + 2 * ghost_width_) * static_cast<std::size_t>(ny_ + 2 * ghost_width_);
    }

    double x(int i) const { return x_lo_ + i * dx_; }
    double y(int j) const { return y_lo_ + j * dy_; }

    /// Flat storage offset of node (i, j), ghosts included.
    std::size_t offset(int i, int j) const {
        return static_cast<std::size_t>(j + ghost_width_) * static_cast<std::size_t>(stride()) +
               static_cast<std::size_t>(i + ghost_width_);
    }

    bool is_isotropic(double rel_tol = 1e-12) const;

    bool operator==(const UniformGrid2D&) const = default;

   private:
    UniformGrid2D() = default;

    double x_lo_ = 0, x_hi_ = 0, y_lo_ = 0, y_hi_ = 0;
    int nx_ = 0, ny_ = 0;
    double dx_ = 0, dy_ = 0, ratio_ = 1;
    int ghost_width_ = 0;
};

using LevelSet = std::function<double(double x, double y)>;

/// Region where phi <= 0, sampled on a bounding grid.
struct ImplicitDomain {
    LevelSet phi;
    UniformGrid2D grid;
};

enum class NodeKind : unsigned char { interior, edge_ghost, corner_ghost, far_exterior };

/// An exterior node linked to the interior across a grid edge.
struct EdgeGhost {
    int i = 0;
    int j = 0;
    int axis = 0;       ///< 0: fill along x, 1: fill along y
    int direction = 0;  ///< +1 or -1, step from the ghost toward the interior
    double boundary_x = 0;
    double boundary_y = 0;
    /// Distance from the ghost to the boundary point, in units of the spacing along the axis.
    double boundary_offset = 0;
    /// True when the boundary point sat closer than the shift threshold to the first
    /// interior node, so the extrapolant uses nodes 2..4 instead of 1..3.
    bool shifted = false;
};

/// An exterior node whose nearest interior node is diagonal.
struct CornerGhost {
    int i = 0;
    int j = 0;
    int anchor_i = 0;  ///< nearest interior node (u_{0,0} of the corner stencil)
    int anchor_j = 0;
    int sx = 0;  ///< ghost = anchor + (sx, sy)
    int sy = 0;
};

struct ClassificationOptions {
    /// The extrapolation nodes shift inward when the boundary point is closer than
    /// shift_threshold * dx to the first interior node.
    double shift_threshold = 0.5;
    /// Sub-samples of phi per cell edge used to detect unresolved boundaries.
    int edge_samples = 4;
};

class CellClassification {
   public:
    CellClassification(UniformGrid2D grid, std::vector<NodeKind> kinds, std::vector<EdgeGhost> edges,
                       std::vector<CornerGhost> corners, std::vector<std::size_t> on_boundary_nodes,
                       std::size_t pruned = 0);

    const UniformGrid2D& grid() const { return grid_; }
    NodeKind kind(int i, int j) const { return kinds_[static_cast<std::size_t>(j) * grid_.nx() + i]; }
    bool in_grid(int i, int j) const { return i >= 0 && j >= 0 && i < grid_.nx() && j < grid_.ny(); }
    bool is_interior(int i, int j) const { return in_grid(i, j) && kind(i, j) == NodeKind::interior; }

    const std::vector<EdgeGhost>& edge_ghosts() const { return edges_; }
    const std::vector<CornerGhost>& corner_ghosts() const { return corners_; }

    /// Interior nodes that are advanced by the stepper (interior nodes off the grid's outer ring).
    const std::vector<std::pair<int, int>>& active_nodes() const { return active_; }
    /// Interior nodes lying on the grid's outer ring; these take Dirichlet data directly.
    const std::vector<std::pair<int, int>>& ring_nodes() const { return ring_; }

    std::size_t count(NodeKind k) const;
    /// Interior nodes where phi evaluated to exactly zero (ties are counted as interior).
    std::size_t zero_level_nodes() const { return on_boundary_.size(); }
    /// Nodes with phi <= 0 reclassified as edge ghosts for having fewer than two interior
    /// axis neighbours.
    std::size_t pruned_nodes() const { return pruned_; }

   private:
    UniformGrid2D grid_;
    std::vector<NodeKind> kinds_;
    std::vector<EdgeGhost> edges_;
    std::vector<CornerGhost> corners_;
    std::vector<std::size_t> on_boundary_;
    std::vector<std::pair<int, int>> active_;
    std::vector<std::pair<int, int>> ring_;
    std::size_t pruned_ = 0;
};

/// Classifies every node of the bounding grid as interior, edge ghost, corner ghost or far exterior.
CellClassification classify_cells(const ImplicitDomain& domain, const ClassificationOptions& options = {});

/// Root of the linear interpolant of phi between an interior node and an exterior node.
/// Returns the coordinate along the connecting edge.
double boundary_point(double interior_coord, double ghost_coord, double phi_interior, double phi_ghost);

/// boundary_point for the edge joining grid nodes (ii, ij) (interior) and (gi, gj) (ghost).
std::pair<double, double> boundary_point(const ImplicitDomain& domain, int ii, int ij, int gi, int gj);

}  // namespace otsfd
