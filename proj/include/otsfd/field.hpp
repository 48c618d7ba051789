#pragma once

#include <cassert>
#include <span>
#include <vector>

#include "otsfd/grid.hpp"

namespace otsfd {

/// Samples on a UniformGrid1D, ghost nodes included, at a given time.
class ScalarField1D {
   public:
    explicit ScalarField1D(UniformGrid1D grid, double time = 0.0)
        : grid_(std::move(grid)), values_(grid_.storage_size(), 0.0), time_(time) {}

    const UniformGrid1D& grid() const { return grid_; }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

    /// Node j in [-ghost_width, n + ghost_width).
    double& operator[](int j) {
        assert(j >= -grid_.ghost_width() && j < grid_.n() + grid_.ghost_width());
        return values_[static_cast<std::size_t>(j + grid_.ghost_width())];
    }
    double operator[](int j) const {
        assert(j >= -grid_.ghost_width() && j < grid_.n() + grid_.ghost_width());
        return values_[static_cast<std::size_t>(j + grid_.ghost_width())];
    }

    std::span<double> storage() { return values_; }
    std::span<const double> storage() const { return values_; }
    /// The n grid nodes, ghosts excluded.
    std::span<const double> nodes() const {
        return std::span<const double>(values_).subspan(static_cast<std::size_t>(grid_.ghost_width()),
                                                        static_cast<std::size_t>(grid_.n()));
    }

   private:
    UniformGrid1D grid_;
    std::vector<double> values_;
    double time_;
};

/// Samples on a UniformGrid2D, ghost layers included, at a given time.
class ScalarField2D {
   public:
    explicit ScalarField2D(UniformGrid2D grid, double time = 0.0)
        : grid_(std::move(grid)), values_(grid_.storage_size(), 0.0), time_(time) {}

    const UniformGrid2D& grid() const { return grid_; }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

    double& operator()(int i, int j) {
        assert(in_storage(i, j));
        return values_[grid_.offset(i, j)];
    }
    double operator()(int i, int j) const {
        assert(in_storage(i, j));
        return values_[grid_.offset(i, j)];
    }

    bool in_storage(int i, int j) const {
        const int g = grid_.ghost_width();
        return i >= -g && j >= -g && i < grid_.nx() + g && j < grid_.ny() + g;
    }

    std::span<double> storage() { return values_; }
    std::span<const double> storage() const { return values_; }

   private:
    UniformGrid2D grid_;
    std::vector<double> values_;
    double time_;
};

/// Node-sized 2D array (no ghosts) returned by the 2D stencils; x varies fastest.
class NodeArray2D {
   public:
    NodeArray2D(int nx, int ny, double fill = 0.0)
        : nx_(nx), ny_(ny), data_(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), fill) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * nx_ + i]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(j) * nx_ + i]; }
    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

   private:
    int nx_;
    int ny_;
    std::vector<double> data_;
};

}  // namespace otsfd
