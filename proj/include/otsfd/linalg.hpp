#pragma once

#include <functional>
#include <span>
#include <vector>

namespace otsfd {

/// Thomas algorithm. lower[0] and upper[n-1] are ignored. No pivoting.
/// Throws ZeroPivotError on a vanishing pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

/// Square banded matrix with equal lower and upper bandwidth, stored by diagonal:
/// band(k, i) holds A(i, i + k) for k in [-bandwidth, bandwidth].
class BandedMatrix {
   public:
    BandedMatrix(int n, int bandwidth);

    int size() const { return n_; }
    int bandwidth() const { return w_; }
    double& band(int k, int i) { return data_[index(k, i)]; }
    double band(int k, int i) const { return data_[index(k, i)]; }
    /// A(i, j); zero outside the band.
    double at(int i, int j) const;
    std::vector<double> multiply(std::span<const double> x) const;

   private:
    std::size_t index(int k, int i) const {
        return static_cast<std::size_t>(k + w_) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    }
    int n_;
    int w_;
    std::vector<double> data_;
};

/// LU without pivoting restricted to the band. Throws ZeroPivotError.
std::vector<double> solve_banded(const BandedMatrix& a, std::span<const double> rhs);

/// Pre-factored banded LU for repeated solves with one matrix.
class BandedLU {
   public:
    explicit BandedLU(BandedMatrix a);
    std::vector<double> solve(std::span<const double> rhs) const;
    void solve_in_place(std::span<double> x) const;

   private:
    BandedMatrix lu_;
};

/// Same, tridiagonal.
class TridiagonalLU {
   public:
    TridiagonalLU(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper);
    void solve_in_place(std::span<double> x) const;

   private:
    std::vector<double> lower_;
    std::vector<double> inv_pivot_;
    std::vector<double> upper_;
};

using LinearOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct CgResult {
    std::vector<double> x;
    int iterations = 0;
    double relative_residual = 0;
};

/// Conjugate gradients for an SPD operator. Stops when ||b - A x|| <= tolerance ||b||.
/// Throws NotConvergedError after max_iterations.
CgResult solve_cg(const LinearOperator& apply, std::span<const double> rhs, double tolerance, int max_iterations,
                  std::span<const double> initial_guess = {});

}  // namespace otsfd
