#pragma once

#include <string>

namespace otsfd {

/// Leading-error polynomial P(dx, dt) = (alpha dx^r - beta dt^s) dt, with shared
/// factors already divided out. p and q are the spatial and temporal orders of
/// the terms that remain once P vanishes.
struct LeadingError {
    double alpha = 0;
    double beta = 0;
    int r = 0;
    int s = 0;
    int p = 0;
    int q = 0;

    /// Throws ConfigError unless r, s, p, q are positive with p > r and q > s.
    void validate() const;
    /// Value of P at (dx, dt).
    double polynomial(double dx, double dt) const;
};

/// How dt is derived from dx.
class TimeStepPolicy {
   public:
    enum class Kind { optimal, fraction_of_stability, explicit_ratio };

    static TimeStepPolicy optimal();
    /// dt = fraction * dt_max; fraction in (0, 1].
    static TimeStepPolicy fraction_of_stability(double fraction);
    /// dt = c * dx^exponent; c > 0.
    static TimeStepPolicy explicit_ratio(double c, double exponent);

    Kind kind() const { return kind_; }
    double fraction() const { return fraction_; }
    double coefficient() const { return c_; }
    double exponent() const { return exponent_; }
    std::string describe() const;

    bool operator==(const TimeStepPolicy&) const = default;

   private:
    Kind kind_ = Kind::optimal;
    double fraction_ = 1;
    double c_ = 1;
    double exponent_ = 1;
};

/// dt_max = coefficient * dx^exponent, or no bound.
struct StabilityBound {
    bool unconditional = false;
    double coefficient = 0;
    double exponent = 0;

    static StabilityBound none() { return {true, 0, 0}; }
    double max_dt(double dx) const;
};

struct SchemeDescriptor {
    std::string name;
    LeadingError leading_error;
    StabilityBound stability;
    /// False for baselines whose leading terms cannot be cancelled by a choice of dt.
    bool ots_capable = true;
    /// The optimal step makes the update exact (unit-CFL advection).
    bool exact_at_optimum = false;
    /// Power of dx multiplying the whole truncation error (-2 for DuFort-Frankel,
    /// whose error carries a 1/dx^2 prefactor); added to every predicted order.
    int dx_prefactor_exponent = 0;
    std::string dt_opt_formula;
};

/// (alpha/beta)^(1/s) dx^(r/s). Throws NoPositiveRootError when alpha*beta <= 0.
double optimal_dt(const LeadingError& le, double dx);

/// Global order predicted for a run with the given policy. With the optimal policy
/// and correction on: min(p, r q / s). Otherwise the uncancelled O(dx^r) + O(dt^s)
/// terms with dt = c dx^e give min(r, e s). Infinity when the optimum is exact.
double predicted_order(const SchemeDescriptor& sd, const TimeStepPolicy& policy, bool correction);

/// Shorthand: optimal policy with correction, or fraction 1/2 of the stability
/// bound (dt = dx^r/s for unconditionally stable schemes) without.
double predicted_order(const SchemeDescriptor& sd, bool with_ots);

/// Applies the policy at spacing dx and checks the result against the stability bound.
/// Throws StabilityError, NoPositiveRootError or ConfigError.
double resolve_dt(const SchemeDescriptor& sd, const TimeStepPolicy& policy, double dx);

/// Descriptors for the shipped schemes, parameterised by the PDE coefficient.
namespace schemes {
SchemeDescriptor advection_upwind_1d(double a);
SchemeDescriptor wave_kpy(double c);
SchemeDescriptor diffusion_fe_1d(double d);
SchemeDescriptor dufort_frankel(double d);
SchemeDescriptor burgers_fe(double nu);
SchemeDescriptor parabolic4_fe(double kappa);
SchemeDescriptor advection_2d(double ax, double ay);
SchemeDescriptor diffusion_2d_9pt(double d);
SchemeDescriptor backward_euler_diffusion(double d);
SchemeDescriptor crank_nicolson_diffusion(double d);
SchemeDescriptor crank_nicolson_parabolic4(double kappa, int bilaplacian_order);
SchemeDescriptor crank_nicolson_2d_5pt(double d);
}  // namespace schemes

}  // namespace otsfd
