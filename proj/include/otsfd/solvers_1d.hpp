#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "otsfd/field.hpp"
#include "otsfd/linalg.hpp"
#include "otsfd/ots.hpp"
#include "otsfd/sources.hpp"

namespace otsfd {

enum class BurgersBracket {
    derived,  ///< -(dt^2/2)(4 nu u_x u_xx - 2 u (u_x)^2 - u^2 u_xx)
    printed,  ///< same with (u_xx)^2 in place of (u_x)^2, kept for comparison
};

struct SchemeVariant {
    TimeStepPolicy policy = TimeStepPolicy::optimal();
    bool nidc = true;
    BurgersBracket burgers_bracket = BurgersBracket::derived;

    bool ots() const { return policy.kind() == TimeStepPolicy::Kind::optimal; }
};

struct TwoLevelState {
    ScalarField1D u;
    int steps = 0;
    double time() const { return u.time(); }
};

struct ThreeLevelState {
    ScalarField1D prev;  ///< level n-1
    ScalarField1D curr;  ///< level n
    int steps = 0;
    double time() const { return curr.time(); }
};

/// Field sampled from f at time t, ghosts included.
ScalarField1D sample_field(const UniformGrid1D& grid, const SpaceTimeFunction& f, double t);

/// Sets the two boundary nodes and every ghost node from the exact solution at the field's time.
void fill_dirichlet(ScalarField1D& u, const SpaceTimeFunction& exact);

/// Common interface of the 1D two-level steppers.
class Stepper1D {
   public:
    virtual ~Stepper1D() = default;
    /// Advances u by dt; boundary and ghost nodes are refreshed at the new time.
    virtual void step(TwoLevelState& s, double dt) = 0;
};

class AdvectionUpwindFE final : public Stepper1D {
   public:
    AdvectionUpwindFE(const UniformGrid1D& grid, double a, const SpaceTimeFunction& boundary);
    void step(TwoLevelState& s, double dt) override;

   private:
    double a_;
    const SpaceTimeFunction& boundary_;
    std::vector<double> next_;
};

class DiffusionFE final : public Stepper1D {
   public:
    DiffusionFE(const UniformGrid1D& grid, double d, const SourceModel& source, const SchemeVariant& variant,
                const SpaceTimeFunction& boundary);
    void step(TwoLevelState& s, double dt) override;

   private:
    double d_;
    bool nidc_;
    const SpaceTimeFunction& boundary_;
    std::unique_ptr<GridSampler> f_, f_t_, f_xx_;
    std::vector<double> fv_, ftv_, fxxv_, next_;
};

class BurgersFE final : public Stepper1D {
   public:
    BurgersFE(const UniformGrid1D& grid, double nu, const SchemeVariant& variant, const SpaceTimeFunction& boundary);
    void step(TwoLevelState& s, double dt) override;

   private:
    double nu_;
    bool nidc_;
    BurgersBracket bracket_;
    const SpaceTimeFunction& boundary_;
    double guard_ = 0;
    std::vector<double> next_;
};

class Parabolic4FE final : public Stepper1D {
   public:
    Parabolic4FE(const UniformGrid1D& grid, double kappa, const SourceModel& source, const SchemeVariant& variant,
                 const SpaceTimeFunction& boundary);
    void step(TwoLevelState& s, double dt) override;

   private:
    double kappa_;
    bool nidc_;
    const SpaceTimeFunction& boundary_;
    std::unique_ptr<GridSampler> f_, f_t_, f_xxxx_;
    std::vector<double> fv_, ftv_, f4v_, next_;
};

/// Backward Euler (theta = 1) or Crank-Nicolson (theta = 1/2) for u_t = D u_xx + f.
class ThetaDiffusion final : public Stepper1D {
   public:
    ThetaDiffusion(const UniformGrid1D& grid, double d, double theta, const SourceModel& source,
                   const SpaceTimeFunction& boundary);
    void step(TwoLevelState& s, double dt) override;

   private:
    double d_;
    double theta_;
    const SpaceTimeFunction& boundary_;
    std::unique_ptr<GridSampler> f_;
    std::optional<TridiagonalLU> lu_;
    double lu_dt_ = -1;
    std::vector<double> f0_, f1_, rhs_;
};

/// Crank-Nicolson for u_t = -kappa u_xxxx + f with the 2nd- or 4th-order bilaplacian.
class CrankNicolsonParabolic4 final : public Stepper1D {
   public:
    CrankNicolsonParabolic4(const UniformGrid1D& grid, double kappa, int bilaplacian_order, const SourceModel& source,
                            const SpaceTimeFunction& boundary);
    void step(TwoLevelState& s, double dt) override;

   private:
    double kappa_;
    int order_;
    const SpaceTimeFunction& boundary_;
    std::unique_ptr<GridSampler> f_;
    std::optional<BandedLU> lu_;
    double lu_dt_ = -1;
    std::vector<double> f0_, f1_, rhs_;
};

/// Three-level schemes: advance (prev, curr) to (curr, next).
class ThreeLevelStepper1D {
   public:
    virtual ~ThreeLevelStepper1D() = default;
    virtual void step(ThreeLevelState& s, double dt) = 0;
};

class WaveKPY final : public ThreeLevelStepper1D {
   public:
    WaveKPY(const UniformGrid1D& grid, double c, const SourceModel& source, const SchemeVariant& variant,
            const SpaceTimeFunction& boundary);
    void step(ThreeLevelState& s, double dt) override;

   private:
    double c_;
    bool nidc_;
    const SpaceTimeFunction& boundary_;
    std::unique_ptr<GridSampler> f_, f_xx_, f_tt_;
    std::vector<double> fv_, fxxv_, fttv_, next_;
};

class DuFortFrankel final : public ThreeLevelStepper1D {
   public:
    DuFortFrankel(const UniformGrid1D& grid, double d, const SourceModel& source, const SchemeVariant& variant,
                  const SpaceTimeFunction& boundary);
    void step(ThreeLevelState& s, double dt) override;

   private:
    double d_;
    bool nidc_;
    const SpaceTimeFunction& boundary_;
    std::unique_ptr<GridSampler> f_, f_t_, f_xx_;
    std::vector<double> fv_, ftv_, fxxv_, next_;
};

/// One-step conveniences with the operation signatures; each builds a stepper and advances once.
void advection_upwind_fe_step(TwoLevelState& s, double a, double dt, const SpaceTimeFunction& boundary);
void diffusion_fe_step(TwoLevelState& s, double d, double dt, const SourceModel& source, const SchemeVariant& variant,
                       const SpaceTimeFunction& boundary);
void burgers_fe_step(TwoLevelState& s, double nu, double dt, const SchemeVariant& variant,
                     const SpaceTimeFunction& boundary);
void parabolic4_fe_step(TwoLevelState& s, double kappa, double dt, const SourceModel& source,
                        const SchemeVariant& variant, const SpaceTimeFunction& boundary);
void wave_kpy_step(ThreeLevelState& s, double c, double dt, const SourceModel& source, const SchemeVariant& variant,
                   const SpaceTimeFunction& boundary);
void dufort_frankel_step(ThreeLevelState& s, double d, double dt, const SourceModel& source,
                         const SchemeVariant& variant, const SpaceTimeFunction& boundary);
void backward_euler_diffusion_step(TwoLevelState& s, double d, double dt, const SourceModel& source,
                                   const SpaceTimeFunction& boundary);
void crank_nicolson_diffusion_step(TwoLevelState& s, double d, double dt, const SourceModel& source,
                                   const SpaceTimeFunction& boundary);
void crank_nicolson_parabolic4_step(TwoLevelState& s, double kappa, int bilaplacian_order, double dt,
                                    const SourceModel& source, const SpaceTimeFunction& boundary);

/// Terms of the Taylor start u(dt) = sum_k dt^k/k! d^k u/dt^k (0) for u_tt = c^2 u_xx + f, with
/// time derivatives of order 2 and above converted through the PDE. order_of_start = m keeps
/// terms k < m, so the start has local error O(dt^m); m in [1, 5].
ScalarField1D kpy_first_step(const UniformGrid1D& grid, const ExactSolution& u0, double c, double dt,
                             const SourceModel& source, int order_of_start);

/// u(dt) = u + dt u_t + dt^2/2 u_tt + dt^3/6 u_ttt from the solution's analytic time derivatives at t = 0.
ScalarField1D dufort_frankel_start(const UniformGrid1D& grid, const ExactSolution& exact, double dt);

/// Advances a two-level state to final_time; the last step is shortened to land on it.
/// Returns the number of steps taken.
int advance_to(Stepper1D& stepper, TwoLevelState& s, double dt, double final_time);

/// Advances a three-level state by a fixed number of steps.
void advance_steps(ThreeLevelStepper1D& stepper, ThreeLevelState& s, double dt, int steps);

}  // namespace otsfd
