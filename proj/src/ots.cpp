#include "otsfd/ots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "otsfd/errors.hpp"

namespace otsfd {

void LeadingError::validate() const {
    if (r <= 0 || s <= 0 || p <= 0 || q <= 0) throw ConfigError("LeadingError: orders must be positive integers");
    if (p <= r || q <= s) throw ConfigError("LeadingError: post-elimination orders must exceed r and s");
}

double LeadingError::polynomial(double dx, double dt) const {
    return (alpha * std::pow(dx, r) - beta * std::pow(dt, s)) * dt;
}

TimeStepPolicy TimeStepPolicy::optimal() { return {}; }

TimeStepPolicy TimeStepPolicy::fraction_of_stability(double fraction) {
    if (!(fraction > 0 && fraction <= 1)) throw ConfigError("TimeStepPolicy: fraction must lie in (0, 1]");
    TimeStepPolicy p;
    p.kind_ = Kind::fraction_of_stability;
    p.fraction_ = fraction;
    return p;
}

TimeStepPolicy TimeStepPolicy::explicit_ratio(double c, double exponent) {
    if (!(c > 0)) throw ConfigError("TimeStepPolicy: ratio coefficient must be positive");
    if (!(exponent > 0)) throw ConfigError("TimeStepPolicy: ratio exponent must be positive");
    TimeStepPolicy p;
    p.kind_ = Kind::explicit_ratio;
    p.c_ = c;
    p.exponent_ = exponent;
    return p;
}

std::string TimeStepPolicy::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::optimal:
            os << "optimal";
            break;
        case Kind::fraction_of_stability:
            os << "fraction=" << fraction_;
            break;
        case Kind::explicit_ratio:
            os << "ratio=" << c_ << ":" << exponent_;
            break;
    }
    return os.str();
}

double StabilityBound::max_dt(double dx) const {
    if (unconditional) return std::numeric_limits<double>::infinity();
    return coefficient * std::pow(dx, exponent);
}

double optimal_dt(const LeadingError& le, double dx) {
    if (!(dx > 0)) throw ConfigError("optimal_dt: dx must be positive");
    if (!(le.alpha * le.beta > 0)) {
        throw NoPositiveRootError("optimal_dt: alpha and beta have opposite signs (or one is zero); "
                                  "the leading-error polynomial has no positive root");
    }
    return std::pow(le.alpha / le.beta, 1.0 / le.s) * std::pow(dx, static_cast<double>(le.r) / le.s);
}

double predicted_order(const SchemeDescriptor& sd, const TimeStepPolicy& policy, bool correction) {
    const auto& le = sd.leading_error;
    const double shift = sd.dx_prefactor_exponent;
    if (policy.kind() == TimeStepPolicy::Kind::optimal && sd.ots_capable) {
        if (sd.exact_at_optimum) return std::numeric_limits<double>::infinity();
        if (correction) return std::min<double>(le.p, static_cast<double>(le.r) * le.q / le.s) + shift;
        return le.r + shift;
    }
    double e = 0;
    switch (policy.kind()) {
        case TimeStepPolicy::Kind::explicit_ratio:
            e = policy.exponent();
            break;
        case TimeStepPolicy::Kind::fraction_of_stability:
            e = sd.stability.unconditional ? static_cast<double>(le.r) / le.s : sd.stability.exponent;
            break;
        case TimeStepPolicy::Kind::optimal:
            e = static_cast<double>(le.r) / le.s;
            break;
    }
    return std::min(static_cast<double>(le.r), e * le.s) + shift;
}

double predicted_order(const SchemeDescriptor& sd, bool with_ots) {
    if (with_ots) return predicted_order(sd, TimeStepPolicy::optimal(), true);
    return predicted_order(sd, TimeStepPolicy::fraction_of_stability(0.5), false);
}

double resolve_dt(const SchemeDescriptor& sd, const TimeStepPolicy& policy, double dx) {
    if (!(dx > 0)) throw ConfigError("resolve_dt: dx must be positive");
    double dt = 0;
    switch (policy.kind()) {
        case TimeStepPolicy::Kind::optimal:
            if (!sd.ots_capable) throw ConfigError(sd.name + ": scheme has no optimal time step");
            dt = optimal_dt(sd.leading_error, dx);
            break;
        case TimeStepPolicy::Kind::fraction_of_stability:
            if (sd.stability.unconditional) {
                throw ConfigError(sd.name + ": fraction-of-stability policy needs a stability bound");
            }
            dt = policy.fraction() * sd.stability.max_dt(dx);
            break;
        case TimeStepPolicy::Kind::explicit_ratio:
            dt = policy.coefficient() * std::pow(dx, policy.exponent());
            break;
    }
    const double limit = sd.stability.max_dt(dx);
    if (dt > limit * (1 + 1e-12)) {
        std::ostringstream os;
        os << sd.name << ": dt = " << dt << " exceeds the stability bound " << limit << " at dx = " << dx;
        throw StabilityError(os.str());
    }
    return dt;
}

namespace schemes {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0)) throw ConfigError(std::string(what) + " must be positive");
}

}  // namespace

SchemeDescriptor advection_upwind_1d(double a) {
    const double speed = std::abs(a);
    require_positive(speed, "advection speed");
    SchemeDescriptor sd;
    sd.name = "advection-upwind-fe";
    sd.leading_error = {0.5, 0.5 * speed, 1, 1, 2, 2};
    sd.stability = {false, 1.0 / speed, 1.0};
    sd.exact_at_optimum = true;
    sd.dt_opt_formula = "dx/|A|";
    return sd;
}

SchemeDescriptor wave_kpy(double c) {
    require_positive(c, "wave speed");
    SchemeDescriptor sd;
    sd.name = "wave-kpy";
    sd.leading_error = {1.0, c * c, 2, 2, 4, 4};
    sd.stability = {false, 1.0 / c, 1.0};
    sd.dt_opt_formula = "dx/c";
    return sd;
}

SchemeDescriptor diffusion_fe_1d(double d) {
    require_positive(d, "diffusivity");
    SchemeDescriptor sd;
    sd.name = "diffusion-fe";
    sd.leading_error = {1.0 / 12.0, 0.5 * d, 2, 1, 4, 2};
    sd.stability = {false, 0.5 / d, 2.0};
    sd.dt_opt_formula = "dx^2/(6 D)";
    return sd;
}

SchemeDescriptor dufort_frankel(double d) {
    require_positive(d, "diffusivity");
    SchemeDescriptor sd;
    sd.name = "dufort-frankel";
    // bracket (dx^2/12 - D^2 dt^2/dx^2) written as (dx^4/12 - D^2 dt^2)/dx^2
    sd.leading_error = {1.0 / 12.0, d * d, 4, 2, 6, 4};
    sd.stability = StabilityBound::none();
    sd.dx_prefactor_exponent = -2;
    sd.dt_opt_formula = "dx^2/(sqrt(12) D)";
    return sd;
}

SchemeDescriptor burgers_fe(double nu) {
    require_positive(nu, "viscosity");
    SchemeDescriptor sd;
    sd.name = "burgers-fe";
    sd.leading_error = {1.0 / 12.0, 0.5 * nu, 2, 1, 4, 2};
    sd.stability = {false, 0.5 / nu, 2.0};
    sd.dt_opt_formula = "dx^2/(6 nu)";
    return sd;
}

SchemeDescriptor parabolic4_fe(double kappa) {
    require_positive(kappa, "kappa");
    SchemeDescriptor sd;
    sd.name = "parabolic4-fe";
    sd.leading_error = {7.0 / 240.0, 0.5 * kappa, 4, 1, 6, 2};
    sd.stability = {false, 3.0 / (40.0 * kappa), 4.0};
    sd.dt_opt_formula = "7 dx^4/(120 kappa)";
    return sd;
}

SchemeDescriptor advection_2d(double ax, double ay) {
    require_positive(std::abs(ax), "x advection speed");
    require_positive(std::abs(ay), "y advection speed");
    SchemeDescriptor sd;
    sd.name = "advection-2d";
    sd.leading_error = {0.5, 0.5 * std::abs(ax), 1, 1, 2, 2};
    // with dy = (Ay/Ax) dx the CFL bound dt <= 1/(|Ax|/dx + |Ay|/dy) is dx/(2|Ax|); the
    // corrected scheme is stable up to dt = dx/|Ax|
    sd.stability = {false, 1.0 / std::abs(ax), 1.0};
    sd.exact_at_optimum = true;
    sd.dt_opt_formula = "dx/|Ax| with dy = (Ay/Ax) dx";
    return sd;
}

SchemeDescriptor diffusion_2d_9pt(double d) {
    require_positive(d, "diffusivity");
    SchemeDescriptor sd;
    sd.name = "diffusion-2d-9pt";
    sd.leading_error = {1.0 / 12.0, 0.5 * d, 2, 1, 4, 2};
    sd.stability = {false, 3.0 / (8.0 * d), 2.0};
    sd.dt_opt_formula = "dx^2/(6 D)";
    return sd;
}

SchemeDescriptor backward_euler_diffusion(double d) {
    require_positive(d, "diffusivity");
    SchemeDescriptor sd;
    sd.name = "backward-euler-diffusion";
    sd.leading_error = {1.0 / 12.0, -0.5 * d, 2, 1, 4, 2};
    sd.stability = StabilityBound::none();
    sd.ots_capable = false;
    sd.dt_opt_formula = "n/a";
    return sd;
}

SchemeDescriptor crank_nicolson_diffusion(double d) {
    require_positive(d, "diffusivity");
    SchemeDescriptor sd;
    sd.name = "crank-nicolson-diffusion";
    sd.leading_error = {1.0 / 12.0, -d * d / 12.0, 2, 2, 4, 4};
    sd.stability = StabilityBound::none();
    sd.ots_capable = false;
    sd.dt_opt_formula = "n/a";
    return sd;
}

SchemeDescriptor crank_nicolson_parabolic4(double kappa, int bilaplacian_order) {
    require_positive(kappa, "kappa");
    if (bilaplacian_order != 2 && bilaplacian_order != 4) {
        throw ConfigError("crank_nicolson_parabolic4: bilaplacian order must be 2 or 4");
    }
    SchemeDescriptor sd;
    sd.name = bilaplacian_order == 2 ? "crank-nicolson-parabolic4-o2" : "crank-nicolson-parabolic4-o4";
    const double alpha = bilaplacian_order == 2 ? 1.0 / 6.0 : 7.0 / 240.0;
    sd.leading_error = {alpha, -kappa * kappa / 12.0, bilaplacian_order, 2, bilaplacian_order + 2, 4};
    sd.stability = StabilityBound::none();
    sd.ots_capable = false;
    sd.dt_opt_formula = "n/a";
    return sd;
}

SchemeDescriptor crank_nicolson_2d_5pt(double d) {
    require_positive(d, "diffusivity");
    SchemeDescriptor sd;
    sd.name = "crank-nicolson-2d-5pt";
    sd.leading_error = {1.0 / 12.0, -d * d / 12.0, 2, 2, 4, 4};
    sd.stability = StabilityBound::none();
    sd.ots_capable = false;
    sd.dt_opt_formula = "n/a";
    return sd;
}

}  // namespace schemes

}  // namespace otsfd
