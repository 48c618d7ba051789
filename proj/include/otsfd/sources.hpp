#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "otsfd/grid.hpp"

namespace otsfd {

/// Evaluates a function on every storage node of a fixed grid.
class GridSampler {
   public:
    virtual ~GridSampler() = default;
    virtual void sample(double t, std::span<double> out) const = 0;
    /// A contiguous run of storage offsets [begin, begin + length).
    struct Run {
        std::size_t begin;
        std::size_t length;
    };
    /// Fills at least the entries covered by runs; the default samples everything.
    virtual void sample_runs(double t, std::span<const Run> runs, std::span<double> out) const {
        (void)runs;
        sample(t, out);
    }
};

/// A scalar function of (x, y, t). One-dimensional functions ignore y.
class SpaceTimeFunction {
   public:
    virtual ~SpaceTimeFunction() = default;
    virtual double eval(double x, double y, double t) const = 0;
    double operator()(double x, double t) const { return eval(x, 0.0, t); }
    double operator()(double x, double y, double t) const { return eval(x, y, t); }

    /// Values at every storage node of the grid, ghosts included.
    virtual void sample(const UniformGrid1D& grid, double t, std::span<double> out) const;
    virtual void sample(const UniformGrid2D& grid, double t, std::span<double> out) const;

    /// Sampler bound to one grid; the function must outlive it. Overrides may
    /// precompute the time-independent part.
    virtual std::unique_ptr<GridSampler> sampler(const UniformGrid1D& grid) const;
    virtual std::unique_ptr<GridSampler> sampler(const UniformGrid2D& grid) const;
};

using FunctionPtr = std::shared_ptr<const SpaceTimeFunction>;

class CallableFunction final : public SpaceTimeFunction {
   public:
    using Fn = std::function<double(double x, double y, double t)>;
    explicit CallableFunction(Fn fn) : fn_(std::move(fn)) {}
    double eval(double x, double y, double t) const override { return fn_(x, y, t); }

   private:
    Fn fn_;
};

FunctionPtr make_function(CallableFunction::Fn fn);
/// Wraps f(x, t) as a one-dimensional function.
FunctionPtr make_function_1d(std::function<double(double x, double t)> fn);

/// One separable term a e^{lambda t} sin(omega t + phi) sin(kx x + px) sin(ky y + py).
struct TrigTerm {
    double a = 1;
    double lambda = 0;
    double omega = 0;
    double phi = 1.5707963267948966;
    double kx = 0;
    double px = 1.5707963267948966;
    double ky = 0;
    double py = 1.5707963267948966;
};

/// Finite sum of TrigTerms. Closed under differentiation and linear combination,
/// so manufactured sources and all their derivatives stay in the family.
class TrigSeries final : public SpaceTimeFunction {
   public:
    TrigSeries() = default;
    explicit TrigSeries(std::vector<TrigTerm> terms) : terms_(std::move(terms)) {}

    const std::vector<TrigTerm>& terms() const { return terms_; }

    double eval(double x, double y, double t) const override;
    void sample(const UniformGrid1D& grid, double t, std::span<double> out) const override;
    void sample(const UniformGrid2D& grid, double t, std::span<double> out) const override;
    std::unique_ptr<GridSampler> sampler(const UniformGrid1D& grid) const override;
    std::unique_ptr<GridSampler> sampler(const UniformGrid2D& grid) const override;

    /// d^nt/dt^nt d^nx/dx^nx d^ny/dy^ny of the series.
    TrigSeries derivative(int nt, int nx, int ny) const;
    TrigSeries scaled(double c) const;
    TrigSeries operator+(const TrigSeries& o) const;
    TrigSeries operator-(const TrigSeries& o) const;

   private:
    std::vector<TrigTerm> terms_;
};

struct DerivativeOrder {
    int t = 0;
    int x = 0;
    int y = 0;
    auto operator<=>(const DerivativeOrder&) const = default;
};

std::string to_string(const DerivativeOrder& d);

/// A base function plus the analytic derivatives a consumer may request.
/// Requesting an absent derivative throws MissingDerivativeError.
class DerivativeBundle {
   public:
    explicit DerivativeBundle(std::string name = {}) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    void set(DerivativeOrder d, FunctionPtr fn);
    bool has(DerivativeOrder d) const;
    const SpaceTimeFunction& get(DerivativeOrder d) const;
    /// Throws MissingDerivativeError naming the first absent order and the consumer.
    void require(std::span<const DerivativeOrder> orders, const std::string& consumer) const;
    std::vector<DerivativeOrder> present() const;

    /// Every derivative with t <= max_t, x <= max_x, y <= max_y of a trig series.
    static DerivativeBundle from_series(std::string name, const TrigSeries& base, int max_t, int max_x, int max_y);

   protected:
    std::string name_;
    std::map<DerivativeOrder, FunctionPtr> entries_;
    bool all_zero_ = false;
};

inline constexpr DerivativeOrder d_base{0, 0, 0};
inline constexpr DerivativeOrder d_t{1, 0, 0};
inline constexpr DerivativeOrder d_tt{2, 0, 0};
inline constexpr DerivativeOrder d_ttt{3, 0, 0};
inline constexpr DerivativeOrder d_x{0, 1, 0};
inline constexpr DerivativeOrder d_xx{0, 2, 0};
inline constexpr DerivativeOrder d_xxxx{0, 4, 0};
inline constexpr DerivativeOrder d_txx{1, 2, 0};
inline constexpr DerivativeOrder d_yy{0, 0, 2};

class ExactSolution : public DerivativeBundle {
   public:
    using DerivativeBundle::DerivativeBundle;
    ExactSolution(DerivativeBundle b) : DerivativeBundle(std::move(b)) {}
    const SpaceTimeFunction& u() const { return get(d_base); }
};

class SourceModel : public DerivativeBundle {
   public:
    using DerivativeBundle::DerivativeBundle;
    SourceModel(DerivativeBundle b) : DerivativeBundle(std::move(b)) {}
    /// f = 0 with every derivative present and zero.
    static SourceModel zero();
    bool is_zero() const { return all_zero_; }
    const SpaceTimeFunction& f() const { return get(d_base); }
};

/// Cole-Hopf solution of u_t + u u_x = nu u_xx travelling at unit speed,
/// u = 1 + gamma sqrt(nu/(pi T)) exp(-(x-T)^2/(4 nu T)) / (1 + (gamma/2) erfc((x-T)/sqrt(4 nu T))),
/// T = t + 1. Supplies u, u_t, u_x and u_xx analytically.
ExactSolution burgers_exact(double nu, double gamma);

/// gamma such that ln(1 + gamma) equals the effective Reynolds number.
double burgers_gamma_for_reynolds(double re);

enum class PdeTag { advection1d, diffusion1d, wave1d, parabolic4, diffusion2d };

struct PdeParams {
    double a = 1;      ///< advection speed
    double d = 1;      ///< diffusivity
    double c = 1;      ///< wave speed
    double kappa = 1;  ///< parabolic4 coefficient
};

struct ManufacturedProblem {
    ExactSolution exact;
    SourceModel source;
};

/// Source f such that target solves the tagged PDE exactly:
/// advection u_t + a u_x = f, diffusion u_t = d lap u + f, wave u_tt = c^2 u_xx + f,
/// parabolic4 u_t = -kappa u_xxxx + f.
ManufacturedProblem manufactured(const TrigSeries& target, PdeTag tag, const PdeParams& params);

/// Same for a target given as a bundle; throws MissingDerivativeError when the
/// bundle lacks a derivative the PDE needs. The source carries only its base value.
ManufacturedProblem manufactured(const ExactSolution& target, PdeTag tag, const PdeParams& params);

/// 1 where |x| + |y| <= 2, else 0.
double square_pulse_2d(double x, double y);

/// Named fixtures referenced by experiments and the CLI.
struct Fixture {
    std::string name;
    std::string description;
    ExactSolution exact;
    SourceModel source;
    PdeParams params;
};

const Fixture& fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace otsfd
