#include "otsfd/solvers_2d.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

#include "otsfd/errors.hpp"
#include "otsfd/linalg.hpp"
#include "otsfd/stencil.hpp"

namespace otsfd {

namespace {

constexpr double kStabilitySlack = 1e-12;
constexpr double kSentinel = std::numeric_limits<double>::quiet_NaN();

void check_dt(double dt, double limit, const char* who) {
    if (!(dt > 0)) throw ConfigError(std::string(who) + ": dt must be positive");
    if (dt > limit * (1 + kStabilitySlack)) {
        std::ostringstream os;
        os << who << ": dt = " << dt << " exceeds the stability limit " << limit;
        throw StabilityError(os.str());
    }
}

void require_isotropic(const UniformGrid2D& g, const char* who) {
    if (!g.is_isotropic()) throw AnisotropicGridError(std::string(who) + ": requires dx == dy");
}

std::unique_ptr<GridSampler> maybe_sampler(const SourceModel& src, DerivativeOrder d, bool needed,
                                           const UniformGrid2D& grid) {
    if (!needed) return nullptr;
    return src.get(d).sampler(grid);
}

void require_source(const SourceModel& src, std::initializer_list<DerivativeOrder> orders, const char* who) {
    std::vector<DerivativeOrder> v(orders);
    src.require(v, who);
}

// Nine-point diffusion update at one node from storage offsets; shared by the regular and
// irregular steppers so that both produce identical arithmetic.
inline double diffusion9_update(const double* u, std::size_t k, std::size_t stride, double d, double dt,
                                double inv6dx2, double f, double corr) {
    const double lap = (u[k + 1 + stride] + u[k + 1 - stride] + u[k - 1 + stride] + u[k - 1 - stride] +
                        4.0 * (u[k + 1] + u[k - 1] + u[k + stride] + u[k - stride]) - 20.0 * u[k]) *
                       inv6dx2;
    return u[k] + dt * (d * lap + f) + corr;
}

}  // namespace

ScalarField2D sample_field(const UniformGrid2D& grid, const SpaceTimeFunction& f, double t) {
    ScalarField2D u(grid, t);
    f.sample(grid, t, u.storage());
    return u;
}

void fill_dirichlet(ScalarField2D& u, const SpaceTimeFunction& exact) {
    const auto& g = u.grid();
    const int w = g.ghost_width();
    const double t = u.time();
    for (int j = -w; j < g.ny() + w; ++j) {
        const bool edge_row = j <= 0 || j >= g.ny() - 1;
        for (int i = -w; i < g.nx() + w; ++i) {
            if (!edge_row && i > 0 && i < g.nx() - 1) continue;
            u(i, j) = exact.eval(g.x(i), g.y(j), t);
        }
    }
}

// ---------------------------------------------------------------- advection

Advection2D::Advection2D(const UniformGrid2D& grid, double ax, double ay, const SchemeVariant& variant,
                         const SpaceTimeFunction& boundary)
    : ax_(ax), ay_(ay), optimal_(variant.ots()), nidc_(variant.nidc), boundary_(boundary),
      next_(grid.storage_size()) {
    require_ghost_width(grid.ghost_width(), 1, "advection2d");
    if (ax == 0 || ay == 0) throw ConfigError("advection2d: both velocity components must be nonzero");
    if (optimal_) {
        const double want = std::abs(ay / ax);
        if (std::abs(grid.spacing_ratio() - want) > 1e-14 * want) {
            std::ostringstream os;
            os << "advection2d: optimal variant needs dy/dx = |Ay/Ax| = " << want << ", grid has "
               << grid.spacing_ratio();
            throw RatioMismatchError(os.str());
        }
    }
}

void Advection2D::step(State2D& s, double dt) {
    auto& u = s.u;
    const auto& g = u.grid();
    const double dx = g.dx();
    const double dy = g.dy();
    if (!(dt > 0)) throw ConfigError("advection2d: dt must be positive");
    if (optimal_) {
        const double want = dx / std::abs(ax_);
        if (std::abs(dt - want) > 1e-14 * want) {
            std::ostringstream os;
            os << "advection2d: optimal variant needs dt = dx/|Ax| = " << want << ", got " << dt;
            throw RatioMismatchError(os.str());
        }
    } else if (nidc_) {
        check_dt(dt, std::min(dx / std::abs(ax_), dy / std::abs(ay_)), "advection2d (CFL)");
    } else {
        check_dt(dt, 1.0 / (std::abs(ax_) / dx + std::abs(ay_) / dy), "advection2d (CFL)");
    }
    const int sx = ax_ > 0 ? 1 : -1;
    const int sy = ay_ > 0 ? 1 : -1;
    const double nx = std::abs(ax_) * dt / dx;
    const double ny = std::abs(ay_) * dt / dy;
    const double nxy = nidc_ ? nx * ny : 0.0;
    for (int j = 1; j < g.ny() - 1; ++j) {
        for (int i = 1; i < g.nx() - 1; ++i) {
            const double c = u(i, j);
            const double ux = u(i - sx, j);
            const double uy = u(i, j - sy);
            const double uxy = u(i - sx, j - sy);
            next_[g.offset(i, j)] = c + nx * (ux - c) + ny * (uy - c) + nxy * (c - ux - uy + uxy);
        }
    }
    auto st = u.storage();
    for (int j = 1; j < g.ny() - 1; ++j) {
        for (int i = 1; i < g.nx() - 1; ++i) st[g.offset(i, j)] = next_[g.offset(i, j)];
    }
    u.set_time(u.time() + dt);
    fill_dirichlet(u, boundary_);
    ++s.steps;
}

// ---------------------------------------------------------------- regular diffusion

Diffusion2D9pt::Diffusion2D9pt(const UniformGrid2D& grid, double d, const SourceModel& source,
                               const SchemeVariant& variant, const SpaceTimeFunction& boundary)
    : d_(d), nidc_(variant.nidc), boundary_(boundary) {
    require_isotropic(grid, "diffusion2d_9pt");
    require_ghost_width(grid.ghost_width(), 1, "diffusion2d_9pt");
    if (!(d > 0)) throw ConfigError("diffusion2d_9pt: diffusivity must be positive");
    require_source(source, {d_base}, "diffusion2d_9pt");
    if (nidc_) require_source(source, {d_t, d_xx, d_yy}, "diffusion2d_9pt correction");
    f_ = source.get(d_base).sampler(grid);
    f_t_ = maybe_sampler(source, d_t, nidc_, grid);
    f_xx_ = maybe_sampler(source, d_xx, nidc_, grid);
    f_yy_ = maybe_sampler(source, d_yy, nidc_, grid);
    const auto n = grid.storage_size();
    fv_.resize(n);
    ftv_.resize(n);
    fxxv_.resize(n);
    fyyv_.resize(n);
    next_.resize(n);
}

void Diffusion2D9pt::step(State2D& s, double dt) {
    auto& u = s.u;
    const auto& g = u.grid();
    const double dx = g.dx();
    check_dt(dt, 3 * dx * dx / (8 * d_), "diffusion2d_9pt");
    const double t = u.time();
    f_->sample(t, fv_);
    if (nidc_) {
        f_t_->sample(t, ftv_);
        f_xx_->sample(t, fxxv_);
        f_yy_->sample(t, fyyv_);
    }
    const double inv6 = 1.0 / (6 * dx * dx);
    const double half_dt2 = 0.5 * dt * dt;
    const std::size_t stride = static_cast<std::size_t>(g.stride());
    const double* data = u.storage().data();
    for (int j = 1; j < g.ny() - 1; ++j) {
        for (int i = 1; i < g.nx() - 1; ++i) {
            const std::size_t k = g.offset(i, j);
            const double corr = nidc_ ? half_dt2 * (d_ * (fxxv_[k] + fyyv_[k]) + ftv_[k]) : 0.0;
            next_[k] = diffusion9_update(data, k, stride, d_, dt, inv6, fv_[k], corr);
        }
    }
    auto st = u.storage();
    for (int j = 1; j < g.ny() - 1; ++j) {
        for (int i = 1; i < g.nx() - 1; ++i) st[g.offset(i, j)] = next_[g.offset(i, j)];
    }
    u.set_time(t + dt);
    fill_dirichlet(u, boundary_);
    ++s.steps;
}

// ---------------------------------------------------------------- ghost filling

void invalidate_ghosts(ScalarField2D& u, const CellClassification& cls) {
    const auto& g = u.grid();
    const int w = g.ghost_width();
    for (int j = -w; j < g.ny() + w; ++j) {
        for (int i = -w; i < g.nx() + w; ++i) {
            if (!cls.is_interior(i, j)) u(i, j) = kSentinel;
        }
    }
}

std::array<double, 4> edge_ghost_weights(const EdgeGhost& e) {
    const double first = e.shifted ? 2.0 : 1.0;
    const std::array<double, 4> s{e.boundary_offset, first, first + 1, first + 2};
    std::array<double, 4> w{};
    for (int k = 0; k < 4; ++k) {
        double num = 1;
        double den = 1;
        for (int l = 0; l < 4; ++l) {
            if (l == k) continue;
            num *= -s[static_cast<std::size_t>(l)];
            den *= s[static_cast<std::size_t>(k)] - s[static_cast<std::size_t>(l)];
        }
        w[static_cast<std::size_t>(k)] = num / den;
    }
    return w;
}

void fill_edge_ghosts(ScalarField2D& u, const CellClassification& cls, const SpaceTimeFunction& boundary_values,
                      double t) {
    if (u.grid() != cls.grid()) throw ConfigError("fill_edge_ghosts: field and classification grids differ");
    for (const auto& e : cls.edge_ghosts()) {
        if (e.boundary_offset == 0) {
            u(e.i, e.j) = boundary_values.eval(e.boundary_x, e.boundary_y, t);
            continue;
        }
        const auto w = edge_ghost_weights(e);
        const int di = e.axis == 0 ? e.direction : 0;
        const int dj = e.axis == 1 ? e.direction : 0;
        const int first = e.shifted ? 2 : 1;
        double v = w[0] * boundary_values.eval(e.boundary_x, e.boundary_y, t);
        for (int m = 0; m < 3; ++m) {
            const int ii = e.i + (first + m) * di;
            const int jj = e.j + (first + m) * dj;
            if (!cls.is_interior(ii, jj)) {
                throw NotEnoughInteriorPointsError("fill_edge_ghosts: extrapolation node is not interior");
            }
            v += w[static_cast<std::size_t>(m + 1)] * u(ii, jj);
        }
        u(e.i, e.j) = v;
    }
}

void fill_corner_ghosts(ScalarField2D& u, const CellClassification& cls) {
    if (u.grid() != cls.grid()) throw ConfigError("fill_corner_ghosts: field and classification grids differ");
    // printed orientation: ghost at (+1, +1) from the anchor u(0, 0)
    struct Tap {
        int a, b;
        double w;
    };
    constexpr Tap taps[8] = {{0, 0, -4}, {-1, -1, -1}, {1, 0, 2}, {0, 1, 2},
                             {1, -1, -1}, {-1, 1, -1}, {0, -1, 2}, {-1, 0, 2}};
    for (const auto& c : cls.corner_ghosts()) {
        double v = 0;
        for (const auto& tap : taps) {
            const int ii = c.anchor_i + tap.a * c.sx;
            const int jj = c.anchor_j + tap.b * c.sy;
            const double x = u(ii, jj);
            if (std::isnan(x)) {
                throw GhostOrderError("fill_corner_ghosts: stencil node (" + std::to_string(ii) + ", " +
                                      std::to_string(jj) + ") of corner ghost (" + std::to_string(c.i) + ", " +
                                      std::to_string(c.j) + ") is unfilled");
            }
            v += tap.w * x;
        }
        u(c.i, c.j) = v;
    }
}

ScalarField2D sample_interior(const CellClassification& cls, const SpaceTimeFunction& f, double t) {
    ScalarField2D u(cls.grid(), t);
    f.sample(cls.grid(), t, u.storage());
    invalidate_ghosts(u, cls);
    return u;
}

// ---------------------------------------------------------------- irregular diffusion

Diffusion2DIrregular::Diffusion2DIrregular(const CellClassification& cls, double d, const SourceModel& source,
                                           const SchemeVariant& variant, const SpaceTimeFunction& boundary)
    : cls_(cls), d_(d), nidc_(variant.nidc), boundary_(boundary) {
    const auto& grid = cls.grid();
    require_isotropic(grid, "diffusion2d_irregular");
    require_ghost_width(grid.ghost_width(), 1, "diffusion2d_irregular");
    if (!(d > 0)) throw ConfigError("diffusion2d_irregular: diffusivity must be positive");
    require_source(source, {d_base}, "diffusion2d_irregular");
    if (nidc_) require_source(source, {d_t, d_xx, d_yy}, "diffusion2d_irregular correction");
    f_ = source.get(d_base).sampler(grid);
    f_t_ = maybe_sampler(source, d_t, nidc_, grid);
    f_xx_ = maybe_sampler(source, d_xx, nidc_, grid);
    f_yy_ = maybe_sampler(source, d_yy, nidc_, grid);
    const auto n = grid.storage_size();
    fv_.resize(n);
    ftv_.resize(n);
    fxxv_.resize(n);
    fyyv_.resize(n);
    next_.resize(n);
    for (const auto& [i, j] : cls.active_nodes()) {
        const std::size_t k = grid.offset(i, j);
        if (!runs_.empty() && runs_.back().begin + runs_.back().length == k) {
            ++runs_.back().length;
        } else {
            runs_.push_back({k, 1});
        }
        active_.push_back(k);
    }
    for (const auto& e : cls.edge_ghosts()) ghosts_.push_back(grid.offset(e.i, e.j));
    for (const auto& c : cls.corner_ghosts()) ghosts_.push_back(grid.offset(c.i, c.j));
}

void Diffusion2DIrregular::step(State2D& s, double dt) {
    auto& u = s.u;
    const auto& g = u.grid();
    if (g != cls_.grid()) throw ConfigError("diffusion2d_irregular: field and classification grids differ");
    const double dx = g.dx();
    check_dt(dt, 3 * dx * dx / (8 * d_), "diffusion2d_irregular");
    const double t = u.time();
    // Far-exterior nodes are never read by an active stencil; only ghosts need the sentinel.
    for (std::size_t k : ghosts_) u.storage()[k] = kSentinel;
    fill_edge_ghosts(u, cls_, boundary_, t);
    fill_corner_ghosts(u, cls_);
    f_->sample_runs(t, runs_, fv_);
    if (nidc_) {
        f_t_->sample_runs(t, runs_, ftv_);
        f_xx_->sample_runs(t, runs_, fxxv_);
        f_yy_->sample_runs(t, runs_, fyyv_);
    }
    const double inv6 = 1.0 / (6 * dx * dx);
    const double half_dt2 = 0.5 * dt * dt;
    const std::size_t stride = static_cast<std::size_t>(g.stride());
    const double* data = u.storage().data();
    for (std::size_t k : active_) {
        const double corr = nidc_ ? half_dt2 * (d_ * (fxxv_[k] + fyyv_[k]) + ftv_[k]) : 0.0;
        next_[k] = diffusion9_update(data, k, stride, d_, dt, inv6, fv_[k], corr);
        assert(!std::isnan(next_[k]) && "stencil read a far-exterior sentinel");
    }
    auto st = u.storage();
    for (std::size_t k : active_) st[k] = next_[k];
    const double t1 = t + dt;
    u.set_time(t1);
    for (const auto& [i, j] : cls_.ring_nodes()) u(i, j) = boundary_.eval(g.x(i), g.y(j), t1);
    ++s.steps;
}

// ---------------------------------------------------------------- Crank-Nicolson 2D

CrankNicolson2D5pt::CrankNicolson2D5pt(const UniformGrid2D& grid, double d, const SourceModel& source,
                                       const SpaceTimeFunction& boundary, double solver_tolerance)
    : d_(d), tol_(solver_tolerance), boundary_(boundary) {
    require_isotropic(grid, "crank_nicolson_2d_5pt");
    require_ghost_width(grid.ghost_width(), 1, "crank_nicolson_2d_5pt");
    if (!(d > 0)) throw ConfigError("crank_nicolson_2d_5pt: diffusivity must be positive");
    if (grid.nx() < 3 || grid.ny() < 3) throw ConfigError("crank_nicolson_2d_5pt: need interior nodes");
    require_source(source, {d_base}, "crank_nicolson_2d_5pt");
    f_ = source.get(d_base).sampler(grid);
    f0_.resize(grid.storage_size());
    f1_.resize(grid.storage_size());
}

void CrankNicolson2D5pt::step(State2D& s, double dt) {
    auto& u = s.u;
    if (!(dt > 0)) throw ConfigError("crank_nicolson_2d_5pt: dt must be positive");
    const auto& g = u.grid();
    const int mx = g.nx() - 2;
    const int my = g.ny() - 2;
    const std::size_t m = static_cast<std::size_t>(mx) * static_cast<std::size_t>(my);
    const double a = 0.5 * d_ * dt / (g.dx() * g.dx());
    const double t = u.time();
    f_->sample(t, f0_);
    f_->sample(t + dt, f1_);
    ScalarField2D edge(g, t + dt);
    fill_dirichlet(edge, boundary_);

    auto unknown = [mx](int i, int j) { return static_cast<std::size_t>(j - 1) * mx + static_cast<std::size_t>(i - 1); };
    std::vector<double> rhs(m);
    std::vector<double> guess(m);
    for (int j = 1; j <= my; ++j) {
        for (int i = 1; i <= mx; ++i) {
            const std::size_t k = g.offset(i, j);
            const double lap = u(i + 1, j) + u(i - 1, j) + u(i, j + 1) + u(i, j - 1) - 4 * u(i, j);
            double r = u(i, j) + a * lap + 0.5 * dt * (f0_[k] + f1_[k]);
            if (i == 1) r += a * edge(0, j);
            if (i == mx) r += a * edge(mx + 1, j);
            if (j == 1) r += a * edge(i, 0);
            if (j == my) r += a * edge(i, my + 1);
            rhs[unknown(i, j)] = r;
            guess[unknown(i, j)] = u(i, j);
        }
    }
    const LinearOperator op = [mx, my, a](std::span<const double> x, std::span<double> y) {
        for (int j = 0; j < my; ++j) {
            for (int i = 0; i < mx; ++i) {
                const std::size_t k = static_cast<std::size_t>(j) * mx + static_cast<std::size_t>(i);
                double nb = 0;
                if (i > 0) nb += x[k - 1];
                if (i + 1 < mx) nb += x[k + 1];
                if (j > 0) nb += x[k - static_cast<std::size_t>(mx)];
                if (j + 1 < my) nb += x[k + static_cast<std::size_t>(mx)];
                y[k] = (1 + 4 * a) * x[k] - a * nb;
            }
        }
    };
    const auto res = solve_cg(op, rhs, tol_, 10 * static_cast<int>(m), guess);
    last_iterations_ = res.iterations;
    for (int j = 1; j <= my; ++j) {
        for (int i = 1; i <= mx; ++i) u(i, j) = res.x[unknown(i, j)];
    }
    u.set_time(t + dt);
    fill_dirichlet(u, boundary_);
    ++s.steps;
}

// ---------------------------------------------------------------- wrappers and drivers

void advection2d_step(State2D& s, double ax, double ay, double dt, const SchemeVariant& variant,
                      const SpaceTimeFunction& boundary) {
    Advection2D(s.u.grid(), ax, ay, variant, boundary).step(s, dt);
}

void diffusion2d_9pt_step(State2D& s, double d, double dt, const SourceModel& source, const SchemeVariant& variant,
                          const SpaceTimeFunction& boundary) {
    Diffusion2D9pt(s.u.grid(), d, source, variant, boundary).step(s, dt);
}

void diffusion2d_irregular_step(State2D& s, const CellClassification& cls, double d, double dt,
                                const SourceModel& source, const SchemeVariant& variant,
                                const SpaceTimeFunction& boundary) {
    Diffusion2DIrregular(cls, d, source, variant, boundary).step(s, dt);
}

void crank_nicolson_2d_5pt_step(State2D& s, double d, double dt, const SourceModel& source,
                                const SpaceTimeFunction& boundary, double solver_tolerance) {
    CrankNicolson2D5pt(s.u.grid(), d, source, boundary, solver_tolerance).step(s, dt);
}

int advance_to(Stepper2D& stepper, State2D& s, double dt, double final_time) {
    if (!(dt > 0)) throw ConfigError("advance_to: dt must be positive");
    const double span = final_time - s.time();
    if (span < 0) throw ConfigError("advance_to: final time lies in the past");
    const long long total = static_cast<long long>(std::ceil(span / dt - 1e-9));
    for (long long k = 0; k < total; ++k) {
        const double h = k + 1 < total ? dt : final_time - s.time();
        stepper.step(s, h);
    }
    return static_cast<int>(total);
}

void advance_steps(Stepper2D& stepper, State2D& s, double dt, int steps) {
    for (int k = 0; k < steps; ++k) stepper.step(s, dt);
}

}  // namespace otsfd
