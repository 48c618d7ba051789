#include "otsfd/solvers_1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "otsfd/errors.hpp"
#include "otsfd/stencil.hpp"

namespace otsfd {

namespace {

constexpr double kStabilitySlack = 1e-12;

std::size_t idx(int j, int g) { return static_cast<std::size_t>(j + g); }

void check_dt(double dt, double limit, const char* who) {
    if (!(dt > 0)) throw ConfigError(std::string(who) + ": dt must be positive");
    if (dt > limit * (1 + kStabilitySlack)) {
        std::ostringstream os;
        os << who << ": dt = " << dt << " exceeds the stability limit " << limit;
        throw StabilityError(os.str());
    }
}

void check_levels(const ThreeLevelState& s, double dt, const char* who) {
    if (s.prev.grid() != s.curr.grid()) throw ConfigError(std::string(who) + ": levels live on different grids");
    const double gap = s.curr.time() - s.prev.time();
    const double tol = 1e-9 * dt + 8 * std::numeric_limits<double>::epsilon() * std::abs(s.curr.time());
    if (std::abs(gap - dt) > tol) {
        std::ostringstream os;
        os << who << ": level times differ by " << gap << ", expected dt = " << dt;
        throw ConfigError(os.str());
    }
}

std::unique_ptr<GridSampler> sampler_or_null(const SourceModel& src, DerivativeOrder d, bool needed,
                                             const UniformGrid1D& grid) {
    if (!needed) return nullptr;
    return src.get(d).sampler(grid);
}

void require_source(const SourceModel& src, std::initializer_list<DerivativeOrder> orders, const char* who) {
    std::vector<DerivativeOrder> v(orders);
    src.require(v, who);
}

void commit(ScalarField1D& u, const std::vector<double>& next, double t_new, const SpaceTimeFunction& boundary) {
    const int g = u.grid().ghost_width();
    auto st = u.storage();
    for (int j = 1; j < u.grid().n() - 1; ++j) st[idx(j, g)] = next[idx(j, g)];
    u.set_time(t_new);
    fill_dirichlet(u, boundary);
}

}  // namespace

ScalarField1D sample_field(const UniformGrid1D& grid, const SpaceTimeFunction& f, double t) {
    ScalarField1D u(grid, t);
    f.sample(grid, t, u.storage());
    return u;
}

void fill_dirichlet(ScalarField1D& u, const SpaceTimeFunction& exact) {
    const auto& g = u.grid();
    const double t = u.time();
    for (int j = -g.ghost_width(); j <= 0; ++j) u[j] = exact.eval(g.x(j), 0.0, t);
    for (int j = g.n() - 1; j < g.n() + g.ghost_width(); ++j) u[j] = exact.eval(g.x(j), 0.0, t);
}

// ---------------------------------------------------------------- advection

AdvectionUpwindFE::AdvectionUpwindFE(const UniformGrid1D& grid, double a, const SpaceTimeFunction& boundary)
    : a_(a), boundary_(boundary), next_(grid.storage_size()) {
    require_ghost_width(grid.ghost_width(), 1, "advection_upwind_fe");
    if (a == 0) throw ConfigError("advection_upwind_fe: advection speed must be nonzero");
}

void AdvectionUpwindFE::step(TwoLevelState& s, double dt) {
    auto& u = s.u;
    const double dx = u.grid().dx();
    check_dt(dt, dx / std::abs(a_), "advection_upwind_fe (CFL)");
    const int g = u.grid().ghost_width();
    const double nu = std::abs(a_) * dt / dx;
    const int up = a_ > 0 ? -1 : 1;
    for (int j = 1; j < u.grid().n() - 1; ++j) next_[idx(j, g)] = u[j] + nu * (u[j + up] - u[j]);
    commit(u, next_, u.time() + dt, boundary_);
    ++s.steps;
}

// ---------------------------------------------------------------- diffusion FE

DiffusionFE::DiffusionFE(const UniformGrid1D& grid, double d, const SourceModel& source, const SchemeVariant& variant,
                         const SpaceTimeFunction& boundary)
    : d_(d), nidc_(variant.nidc), boundary_(boundary) {
    require_ghost_width(grid.ghost_width(), 1, "diffusion_fe");
    if (!(d > 0)) throw ConfigError("diffusion_fe: diffusivity must be positive");
    require_source(source, {d_base}, "diffusion_fe");
    if (nidc_) require_source(source, {d_t, d_xx}, "diffusion_fe correction");
    f_ = source.get(d_base).sampler(grid);
    f_t_ = sampler_or_null(source, d_t, nidc_, grid);
    f_xx_ = sampler_or_null(source, d_xx, nidc_, grid);
    const auto n = grid.storage_size();
    fv_.resize(n);
    ftv_.resize(n);
    fxxv_.resize(n);
    next_.resize(n);
}

void DiffusionFE::step(TwoLevelState& s, double dt) {
    auto& u = s.u;
    const double dx = u.grid().dx();
    check_dt(dt, dx * dx / (2 * d_), "diffusion_fe");
    const int g = u.grid().ghost_width();
    const double t = u.time();
    f_->sample(t, fv_);
    if (nidc_) {
        f_t_->sample(t, ftv_);
        f_xx_->sample(t, fxxv_);
    }
    const double inv_dx2 = 1.0 / (dx * dx);
    const double half_dt2 = 0.5 * dt * dt;
    for (int j = 1; j < u.grid().n() - 1; ++j) {
        const std::size_t k = idx(j, g);
        double v = u[j] + dt * (d_ * kernel::laplacian_c2(u, j, inv_dx2) + fv_[k]);
        if (nidc_) v += half_dt2 * (d_ * fxxv_[k] + ftv_[k]);
        next_[k] = v;
    }
    commit(u, next_, t + dt, boundary_);
    ++s.steps;
}

// ---------------------------------------------------------------- Burgers FE

BurgersFE::BurgersFE(const UniformGrid1D& grid, double nu, const SchemeVariant& variant,
                     const SpaceTimeFunction& boundary)
    : nu_(nu), nidc_(variant.nidc), bracket_(variant.burgers_bracket), boundary_(boundary), next_(grid.storage_size()) {
    require_ghost_width(grid.ghost_width(), 1, "burgers_fe");
    if (!(nu > 0)) throw ConfigError("burgers_fe: viscosity must be positive");
}

void BurgersFE::step(TwoLevelState& s, double dt) {
    auto& u = s.u;
    const double dx = u.grid().dx();
    check_dt(dt, dx * dx / (2 * nu_), "burgers_fe");
    const int g = u.grid().ghost_width();
    if (guard_ == 0) {
        double m = 1.0;
        for (double v : u.nodes()) m = std::max(m, std::abs(v));
        guard_ = 10.0 * m;
    }
    const double inv_dx2 = 1.0 / (dx * dx);
    const double inv_2dx = 0.5 / dx;
    const double half_dt2 = 0.5 * dt * dt;
    for (int j = 1; j < u.grid().n() - 1; ++j) {
        const double uj = u[j];
        const double ux = kernel::gradient_central(u, j, inv_2dx);
        const double uxx = kernel::laplacian_c2(u, j, inv_dx2);
        double v = uj + dt * (nu_ * uxx - uj * ux);
        if (nidc_) {
            const double sq = bracket_ == BurgersBracket::derived ? ux * ux : uxx * uxx;
            v -= half_dt2 * (4 * nu_ * ux * uxx - 2 * uj * sq - uj * uj * uxx);
        }
        if (!std::isfinite(v) || std::abs(v) > guard_) {
            std::ostringstream os;
            os << "burgers_fe: solution grew to " << v << " at node " << j << " (step " << s.steps + 1 << ")";
            throw StabilityError(os.str());
        }
        next_[idx(j, g)] = v;
    }
    commit(u, next_, u.time() + dt, boundary_);
    ++s.steps;
}

// ---------------------------------------------------------------- parabolic4 FE

Parabolic4FE::Parabolic4FE(const UniformGrid1D& grid, double kappa, const SourceModel& source,
                           const SchemeVariant& variant, const SpaceTimeFunction& boundary)
    : kappa_(kappa), nidc_(variant.nidc), boundary_(boundary) {
    require_ghost_width(grid.ghost_width(), 3, "parabolic4_fe");
    if (!(kappa > 0)) throw ConfigError("parabolic4_fe: kappa must be positive");
    require_source(source, {d_base}, "parabolic4_fe");
    if (nidc_) require_source(source, {d_t, d_xxxx}, "parabolic4_fe correction");
    f_ = source.get(d_base).sampler(grid);
    f_t_ = sampler_or_null(source, d_t, nidc_, grid);
    f_xxxx_ = sampler_or_null(source, d_xxxx, nidc_, grid);
    const auto n = grid.storage_size();
    fv_.resize(n);
    ftv_.resize(n);
    f4v_.resize(n);
    next_.resize(n);
}

void Parabolic4FE::step(TwoLevelState& s, double dt) {
    auto& u = s.u;
    const double dx = u.grid().dx();
    check_dt(dt, 3 * std::pow(dx, 4) / (40 * kappa_), "parabolic4_fe");
    const int g = u.grid().ghost_width();
    const double t = u.time();
    f_->sample(t, fv_);
    if (nidc_) {
        f_t_->sample(t, ftv_);
        f_xxxx_->sample(t, f4v_);
    }
    const double inv = 1.0 / (6 * std::pow(dx, 4));
    const double half_dt2 = 0.5 * dt * dt;
    for (int j = 1; j < u.grid().n() - 1; ++j) {
        const std::size_t k = idx(j, g);
        double v = u[j] + dt * (-kappa_ * kernel::bilaplacian_o4_sum(u, j) * inv + fv_[k]);
        if (nidc_) v -= half_dt2 * (kappa_ * f4v_[k] - ftv_[k]);
        next_[k] = v;
    }
    commit(u, next_, t + dt, boundary_);
    ++s.steps;
}

// ---------------------------------------------------------------- implicit baselines

ThetaDiffusion::ThetaDiffusion(const UniformGrid1D& grid, double d, double theta, const SourceModel& source,
                               const SpaceTimeFunction& boundary)
    : d_(d), theta_(theta), boundary_(boundary) {
    require_ghost_width(grid.ghost_width(), 1, "theta_diffusion");
    if (!(d > 0)) throw ConfigError("theta_diffusion: diffusivity must be positive");
    if (!(theta > 0 && theta <= 1)) throw ConfigError("theta_diffusion: theta must lie in (0, 1]");
    if (grid.n() < 3) throw ConfigError("theta_diffusion: need at least one interior node");
    require_source(source, {d_base}, "theta_diffusion");
    f_ = source.get(d_base).sampler(grid);
    const auto n = grid.storage_size();
    f0_.resize(n);
    f1_.resize(n);
    rhs_.resize(static_cast<std::size_t>(grid.n() - 2));
}

void ThetaDiffusion::step(TwoLevelState& s, double dt) {
    auto& u = s.u;
    if (!(dt > 0)) throw ConfigError("theta_diffusion: dt must be positive");
    const auto& grid = u.grid();
    const int g = grid.ghost_width();
    const int n = grid.n();
    const std::size_t m = static_cast<std::size_t>(n - 2);
    const double lam = d_ * dt / (grid.dx() * grid.dx());
    if (!lu_ || dt != lu_dt_) {
        std::vector<double> lo(m, -theta_ * lam), di(m, 1 + 2 * theta_ * lam), up(m, -theta_ * lam);
        lu_.emplace(std::move(lo), std::move(di), std::move(up));
        lu_dt_ = dt;
    }
    const double t = u.time();
    f_->sample(t, f0_);
    f_->sample(t + dt, f1_);
    const double ex = 1 - theta_;
    for (int j = 1; j < n - 1; ++j) {
        const std::size_t k = idx(j, g);
        const double lap = u[j + 1] - 2 * u[j] + u[j - 1];
        rhs_[static_cast<std::size_t>(j - 1)] = u[j] + ex * lam * lap + dt * (ex * f0_[k] + theta_ * f1_[k]);
    }
    rhs_.front() += theta_ * lam * boundary_.eval(grid.x(0), 0.0, t + dt);
    rhs_.back() += theta_ * lam * boundary_.eval(grid.x(n - 1), 0.0, t + dt);
    lu_->solve_in_place(rhs_);
    auto st = u.storage();
    for (int j = 1; j < n - 1; ++j) st[idx(j, g)] = rhs_[static_cast<std::size_t>(j - 1)];
    u.set_time(t + dt);
    fill_dirichlet(u, boundary_);
    ++s.steps;
}

namespace {

std::vector<double> bilaplacian_weights(int order, double dx) {
    const double h4 = std::pow(dx, 4);
    if (order == 2) return {1 / h4, -4 / h4, 6 / h4, -4 / h4, 1 / h4};
    const double c = 1.0 / (6 * h4);
    return {-c, 12 * c, -39 * c, 56 * c, -39 * c, 12 * c, -c};
}

}  // namespace

CrankNicolsonParabolic4::CrankNicolsonParabolic4(const UniformGrid1D& grid, double kappa, int bilaplacian_order,
                                                 const SourceModel& source, const SpaceTimeFunction& boundary)
    : kappa_(kappa), order_(bilaplacian_order), boundary_(boundary) {
    if (order_ != 2 && order_ != 4) throw ConfigError("crank_nicolson_parabolic4: bilaplacian order must be 2 or 4");
    require_ghost_width(grid.ghost_width(), order_ == 2 ? 2 : 3, "crank_nicolson_parabolic4");
    if (!(kappa > 0)) throw ConfigError("crank_nicolson_parabolic4: kappa must be positive");
    if (grid.n() < 3) throw ConfigError("crank_nicolson_parabolic4: need at least one interior node");
    require_source(source, {d_base}, "crank_nicolson_parabolic4");
    f_ = source.get(d_base).sampler(grid);
    const auto n = grid.storage_size();
    f0_.resize(n);
    f1_.resize(n);
    rhs_.resize(static_cast<std::size_t>(grid.n() - 2));
}

void CrankNicolsonParabolic4::step(TwoLevelState& s, double dt) {
    auto& u = s.u;
    if (!(dt > 0)) throw ConfigError("crank_nicolson_parabolic4: dt must be positive");
    const auto& grid = u.grid();
    const int g = grid.ghost_width();
    const int n = grid.n();
    const int m = n - 2;
    const auto w = bilaplacian_weights(order_, grid.dx());
    const int hw = static_cast<int>(w.size() / 2);
    const double a = 0.5 * dt * kappa_;
    if (!lu_ || dt != lu_dt_) {
        BandedMatrix mat(m, hw);
        for (int i = 0; i < m; ++i) {
            for (int k = -hw; k <= hw; ++k) {
                if (i + k < 0 || i + k >= m) continue;
                mat.band(k, i) = (k == 0 ? 1.0 : 0.0) + a * w[static_cast<std::size_t>(k + hw)];
            }
        }
        lu_.emplace(std::move(mat));
        lu_dt_ = dt;
    }
    const double t = u.time();
    f_->sample(t, f0_);
    f_->sample(t + dt, f1_);
    // values outside the unknown range at the new level come from the exact solution
    ScalarField1D edge(grid, t + dt);
    fill_dirichlet(edge, boundary_);
    for (int j = 1; j < n - 1; ++j) {
        const std::size_t k = idx(j, g);
        double bil = 0;
        double outside = 0;
        for (int q = -hw; q <= hw; ++q) {
            const double wq = w[static_cast<std::size_t>(q + hw)];
            bil += wq * u[j + q];
            if (j + q < 1 || j + q > n - 2) outside += wq * edge[j + q];
        }
        rhs_[static_cast<std::size_t>(j - 1)] = u[j] - a * bil + 0.5 * dt * (f0_[k] + f1_[k]) - a * outside;
    }
    lu_->solve_in_place(rhs_);
    auto st = u.storage();
    for (int j = 1; j < n - 1; ++j) st[idx(j, g)] = rhs_[static_cast<std::size_t>(j - 1)];
    u.set_time(t + dt);
    fill_dirichlet(u, boundary_);
    ++s.steps;
}

// ---------------------------------------------------------------- KPY wave

WaveKPY::WaveKPY(const UniformGrid1D& grid, double c, const SourceModel& source, const SchemeVariant& variant,
                 const SpaceTimeFunction& boundary)
    : c_(c), nidc_(variant.nidc), boundary_(boundary) {
    require_ghost_width(grid.ghost_width(), 1, "wave_kpy");
    if (!(c > 0)) throw ConfigError("wave_kpy: wave speed must be positive");
    require_source(source, {d_base}, "wave_kpy");
    if (nidc_) require_source(source, {d_xx, d_tt}, "wave_kpy correction");
    f_ = source.get(d_base).sampler(grid);
    f_xx_ = sampler_or_null(source, d_xx, nidc_, grid);
    f_tt_ = sampler_or_null(source, d_tt, nidc_, grid);
    const auto n = grid.storage_size();
    fv_.resize(n);
    fxxv_.resize(n);
    fttv_.resize(n);
    next_.resize(n);
}

void WaveKPY::step(ThreeLevelState& s, double dt) {
    auto& u = s.curr;
    const double dx = u.grid().dx();
    check_dt(dt, dx / c_, "wave_kpy");
    check_levels(s, dt, "wave_kpy");
    const int g = u.grid().ghost_width();
    const double t = u.time();
    f_->sample(t, fv_);
    if (nidc_) {
        f_xx_->sample(t, fxxv_);
        f_tt_->sample(t, fttv_);
    }
    const double inv_dx2 = 1.0 / (dx * dx);
    const double dt2 = dt * dt;
    const double c2 = c_ * c_;
    for (int j = 1; j < u.grid().n() - 1; ++j) {
        const std::size_t k = idx(j, g);
        double v = 2 * u[j] - s.prev[j] + dt2 * (c2 * kernel::laplacian_c2(u, j, inv_dx2) + fv_[k]);
        if (nidc_) v += dt2 * dt2 / 12.0 * (c2 * fxxv_[k] + fttv_[k]);
        next_[k] = v;
    }
    std::swap(s.prev, s.curr);
    commit(s.curr, next_, t + dt, boundary_);
    ++s.steps;
}

// ---------------------------------------------------------------- DuFort-Frankel

DuFortFrankel::DuFortFrankel(const UniformGrid1D& grid, double d, const SourceModel& source,
                             const SchemeVariant& variant, const SpaceTimeFunction& boundary)
    : d_(d), nidc_(variant.nidc), boundary_(boundary) {
    require_ghost_width(grid.ghost_width(), 1, "dufort_frankel");
    if (!(d > 0)) throw ConfigError("dufort_frankel: diffusivity must be positive");
    require_source(source, {d_base}, "dufort_frankel");
    if (nidc_) require_source(source, {d_t, d_xx}, "dufort_frankel correction");
    f_ = source.get(d_base).sampler(grid);
    f_t_ = sampler_or_null(source, d_t, nidc_, grid);
    f_xx_ = sampler_or_null(source, d_xx, nidc_, grid);
    const auto n = grid.storage_size();
    fv_.resize(n);
    ftv_.resize(n);
    fxxv_.resize(n);
    next_.resize(n);
}

void DuFortFrankel::step(ThreeLevelState& s, double dt) {
    if (!(dt > 0)) throw ConfigError("dufort_frankel: dt must be positive");
    check_levels(s, dt, "dufort_frankel");
    auto& u = s.curr;
    const double dx = u.grid().dx();
    const int g = u.grid().ghost_width();
    const double t = u.time();
    f_->sample(t, fv_);
    if (nidc_) {
        f_t_->sample(t, ftv_);
        f_xx_->sample(t, fxxv_);
    }
    const double inv_dx2 = 1.0 / (dx * dx);
    const double mu = 2 * d_ * dt * inv_dx2;
    const double inv_lhs = 1.0 / (1 + mu);
    const double corr = 2 * d_ * dt * dt * dt * inv_dx2;
    for (int j = 1; j < u.grid().n() - 1; ++j) {
        const std::size_t k = idx(j, g);
        // u^{n+1} = u^{n-1} + 2 dt (D L u^n + f) - mu (u^{n+1} - 2 u^n + u^{n-1}), solved for u^{n+1}
        double v = (1 - mu) * s.prev[j] + 2 * dt * (d_ * kernel::laplacian_c2(u, j, inv_dx2) + fv_[k]) + 2 * mu * u[j];
        if (nidc_) v += corr * (d_ * fxxv_[k] + ftv_[k]);
        next_[k] = v * inv_lhs;
    }
    std::swap(s.prev, s.curr);
    commit(s.curr, next_, t + dt, boundary_);
    ++s.steps;
}

// ---------------------------------------------------------------- start-up

ScalarField1D kpy_first_step(const UniformGrid1D& grid, const ExactSolution& u0, double c, double dt,
                             const SourceModel& source, int order_of_start) {
    if (order_of_start < 1 || order_of_start > 5) throw ConfigError("kpy_first_step: order must lie in [1, 5]");
    if (!(dt > 0)) throw ConfigError("kpy_first_step: dt must be positive");
    const int m = order_of_start;
    std::vector<DerivativeOrder> un{d_base};
    std::vector<DerivativeOrder> fn;
    if (m > 1) un.push_back(d_t);
    if (m > 2) {
        un.push_back(d_xx);
        fn.push_back(d_base);
    }
    if (m > 3) {
        un.push_back(d_txx);
        fn.push_back(d_t);
    }
    if (m > 4) {
        un.push_back(d_xxxx);
        fn.push_back(d_xx);
        fn.push_back(d_tt);
    }
    u0.require(un, "kpy_first_step");
    source.require(fn, "kpy_first_step");
    const double c2 = c * c;
    ScalarField1D out(grid, dt);
    for (int j = -grid.ghost_width(); j < grid.n() + grid.ghost_width(); ++j) {
        const double x = grid.x(j);
        double v = u0.get(d_base).eval(x, 0, 0);
        if (m > 1) v += dt * u0.get(d_t).eval(x, 0, 0);
        if (m > 2) v += dt * dt / 2 * (c2 * u0.get(d_xx).eval(x, 0, 0) + source.get(d_base).eval(x, 0, 0));
        if (m > 3) v += std::pow(dt, 3) / 6 * (c2 * u0.get(d_txx).eval(x, 0, 0) + source.get(d_t).eval(x, 0, 0));
        if (m > 4) {
            v += std::pow(dt, 4) / 24 *
                 (c2 * c2 * u0.get(d_xxxx).eval(x, 0, 0) + c2 * source.get(d_xx).eval(x, 0, 0) +
                  source.get(d_tt).eval(x, 0, 0));
        }
        out[j] = v;
    }
    fill_dirichlet(out, u0.u());
    return out;
}

ScalarField1D dufort_frankel_start(const UniformGrid1D& grid, const ExactSolution& exact, double dt) {
    if (!(dt > 0)) throw ConfigError("dufort_frankel_start: dt must be positive");
    const std::vector<DerivativeOrder> need{d_base, d_t, d_tt, d_ttt};
    exact.require(need, "dufort_frankel_start");
    ScalarField1D out(grid, dt);
    for (int j = -grid.ghost_width(); j < grid.n() + grid.ghost_width(); ++j) {
        const double x = grid.x(j);
        out[j] = exact.get(d_base).eval(x, 0, 0) + dt * exact.get(d_t).eval(x, 0, 0) +
                 dt * dt / 2 * exact.get(d_tt).eval(x, 0, 0) + std::pow(dt, 3) / 6 * exact.get(d_ttt).eval(x, 0, 0);
    }
    fill_dirichlet(out, exact.u());
    return out;
}

// ---------------------------------------------------------------- drivers

int advance_to(Stepper1D& stepper, TwoLevelState& s, double dt, double final_time) {
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

void advance_steps(ThreeLevelStepper1D& stepper, ThreeLevelState& s, double dt, int steps) {
    for (int k = 0; k < steps; ++k) stepper.step(s, dt);
}

// ---------------------------------------------------------------- one-step wrappers

void advection_upwind_fe_step(TwoLevelState& s, double a, double dt, const SpaceTimeFunction& boundary) {
    AdvectionUpwindFE(s.u.grid(), a, boundary).step(s, dt);
}

void diffusion_fe_step(TwoLevelState& s, double d, double dt, const SourceModel& source, const SchemeVariant& variant,
                       const SpaceTimeFunction& boundary) {
    DiffusionFE(s.u.grid(), d, source, variant, boundary).step(s, dt);
}

void burgers_fe_step(TwoLevelState& s, double nu, double dt, const SchemeVariant& variant,
                     const SpaceTimeFunction& boundary) {
    BurgersFE(s.u.grid(), nu, variant, boundary).step(s, dt);
}

void parabolic4_fe_step(TwoLevelState& s, double kappa, double dt, const SourceModel& source,
                        const SchemeVariant& variant, const SpaceTimeFunction& boundary) {
    Parabolic4FE(s.u.grid(), kappa, source, variant, boundary).step(s, dt);
}

void wave_kpy_step(ThreeLevelState& s, double c, double dt, const SourceModel& source, const SchemeVariant& variant,
                   const SpaceTimeFunction& boundary) {
    WaveKPY(s.curr.grid(), c, source, variant, boundary).step(s, dt);
}

void dufort_frankel_step(ThreeLevelState& s, double d, double dt, const SourceModel& source,
                         const SchemeVariant& variant, const SpaceTimeFunction& boundary) {
    DuFortFrankel(s.curr.grid(), d, source, variant, boundary).step(s, dt);
}

void backward_euler_diffusion_step(TwoLevelState& s, double d, double dt, const SourceModel& source,
                                   const SpaceTimeFunction& boundary) {
    ThetaDiffusion(s.u.grid(), d, 1.0, source, boundary).step(s, dt);
}

void crank_nicolson_diffusion_step(TwoLevelState& s, double d, double dt, const SourceModel& source,
                                   const SpaceTimeFunction& boundary) {
    ThetaDiffusion(s.u.grid(), d, 0.5, source, boundary).step(s, dt);
}

void crank_nicolson_parabolic4_step(TwoLevelState& s, double kappa, int bilaplacian_order, double dt,
                                    const SourceModel& source, const SpaceTimeFunction& boundary) {
    CrankNicolsonParabolic4(s.u.grid(), kappa, bilaplacian_order, source, boundary).step(s, dt);
}

}  // namespace otsfd
