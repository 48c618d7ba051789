#include "otsfd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "otsfd/errors.hpp"

namespace otsfd {

namespace {

constexpr double kPivotFloor = 16 * std::numeric_limits<double>::epsilon();

void check_pivot(double pivot, double scale, int row) {
    if (!std::isfinite(pivot) || std::abs(pivot) <= kPivotFloor * scale) {
        throw ZeroPivotError("zero pivot at row " + std::to_string(row));
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n) {
        throw ConfigError("solve_tridiagonal: band and rhs lengths differ");
    }
    TridiagonalLU lu({lower.begin(), lower.end()}, {diag.begin(), diag.end()}, {upper.begin(), upper.end()});
    std::vector<double> x(rhs.begin(), rhs.end());
    lu.solve_in_place(x);
    return x;
}

TridiagonalLU::TridiagonalLU(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper)
    : lower_(std::move(lower)), inv_pivot_(diag.size()), upper_(std::move(upper)) {
    const std::size_t n = diag.size();
    if (n == 0) throw ConfigError("TridiagonalLU: empty system");
    double scale = 0;
    for (std::size_t i = 0; i < n; ++i) {
        scale = std::max({scale, std::abs(diag[i]), i > 0 ? std::abs(lower_[i]) : 0.0,
                          i + 1 < n ? std::abs(upper_[i]) : 0.0});
    }
    double pivot = diag[0];
    check_pivot(pivot, scale, 0);
    inv_pivot_[0] = 1.0 / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        // lower_[i] becomes the multiplier l_i = a_i / pivot_{i-1}
        lower_[i] *= inv_pivot_[i - 1];
        pivot = diag[i] - lower_[i] * upper_[i - 1];
        check_pivot(pivot, scale, static_cast<int>(i));
        inv_pivot_[i] = 1.0 / pivot;
    }
}

void TridiagonalLU::solve_in_place(std::span<double> x) const {
    const std::size_t n = inv_pivot_.size();
    for (std::size_t i = 1; i < n; ++i) x[i] -= lower_[i] * x[i - 1];
    x[n - 1] *= inv_pivot_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - upper_[i] * x[i + 1]) * inv_pivot_[i];
}

BandedMatrix::BandedMatrix(int n, int bandwidth)
    : n_(n), w_(bandwidth), data_(static_cast<std::size_t>(2 * bandwidth + 1) * static_cast<std::size_t>(n), 0.0) {
    if (n <= 0) throw ConfigError("BandedMatrix: size must be positive");
    if (bandwidth < 0) throw ConfigError("BandedMatrix: negative bandwidth");
}

double BandedMatrix::at(int i, int j) const {
    const int k = j - i;
    if (k < -w_ || k > w_ || i < 0 || j < 0 || i >= n_ || j >= n_) return 0.0;
    return band(k, i);
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) {
        const int lo = std::max(-w_, -i);
        const int hi = std::min(w_, n_ - 1 - i);
        double s = 0;
        for (int k = lo; k <= hi; ++k) s += band(k, i) * x[static_cast<std::size_t>(i + k)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

BandedLU::BandedLU(BandedMatrix a) : lu_(std::move(a)) {
    const int n = lu_.size();
    const int w = lu_.bandwidth();
    double scale = 0;
    for (int i = 0; i < n; ++i) {
        for (int k = -w; k <= w; ++k) scale = std::max(scale, std::abs(lu_.at(i, i + k)));
    }
    // entry (i, j) lives at band(j - i, i)
    for (int k = 0; k < n; ++k) {
        const double pivot = lu_.band(0, k);
        check_pivot(pivot, scale, k);
        const int last = std::min(n - 1, k + w);
        for (int i = k + 1; i <= last; ++i) {
            const double l = lu_.band(k - i, i) / pivot;
            lu_.band(k - i, i) = l;
            if (l == 0) continue;
            for (int j = k + 1; j <= last; ++j) lu_.band(j - i, i) -= l * lu_.band(j - k, k);
        }
    }
}

void BandedLU::solve_in_place(std::span<double> x) const {
    const int n = lu_.size();
    const int w = lu_.bandwidth();
    if (static_cast<int>(x.size()) != n) throw ConfigError("BandedLU: rhs length does not match the matrix");
    for (int i = 1; i < n; ++i) {
        double s = x[static_cast<std::size_t>(i)];
        for (int j = std::max(0, i - w); j < i; ++j) s -= lu_.band(j - i, i) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[static_cast<std::size_t>(i)];
        const int last = std::min(n - 1, i + w);
        for (int j = i + 1; j <= last; ++j) s -= lu_.band(j - i, i) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / lu_.band(0, i);
    }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
    std::vector<double> x(rhs.begin(), rhs.end());
    solve_in_place(x);
    return x;
}

std::vector<double> solve_banded(const BandedMatrix& a, std::span<const double> rhs) {
    if (static_cast<int>(rhs.size()) != a.size()) throw ConfigError("solve_banded: rhs length does not match");
    return BandedLU(a).solve(rhs);
}

CgResult solve_cg(const LinearOperator& apply, std::span<const double> rhs, double tolerance, int max_iterations,
                  std::span<const double> initial_guess) {
    const std::size_t n = rhs.size();
    CgResult res;
    res.x.assign(n, 0.0);
    if (!initial_guess.empty()) {
        if (initial_guess.size() != n) throw ConfigError("solve_cg: initial guess length does not match");
        std::ranges::copy(initial_guess, res.x.begin());
    }
    const double bnorm = std::sqrt(dot(rhs, rhs));
    if (bnorm == 0) {
        std::ranges::fill(res.x, 0.0);
        return res;
    }
    std::vector<double> r(n);
    std::vector<double> p(n);
    std::vector<double> ap(n);
    apply(res.x, ap);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];
    p = r;
    double rr = dot(r, r);
    const double target = tolerance * bnorm;
    while (std::sqrt(rr) > target) {
        if (res.iterations >= max_iterations) {
            throw NotConvergedError("solve_cg: relative residual " + std::to_string(std::sqrt(rr) / bnorm) +
                                    " after " + std::to_string(res.iterations) + " iterations");
        }
        apply(p, ap);
        const double pap = dot(p, ap);
        if (!(pap > 0)) throw NotConvergedError("solve_cg: operator is not positive definite along a search direction");
        const double alpha = rr / pap;
        for (std::size_t i = 0; i < n; ++i) {
            res.x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        const double rr_next = dot(r, r);
        const double beta = rr_next / rr;
        rr = rr_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        ++res.iterations;
    }
    res.relative_residual = std::sqrt(rr) / bnorm;
    return res;
}

}  // namespace otsfd
