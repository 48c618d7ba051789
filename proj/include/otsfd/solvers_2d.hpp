#pragma once

#include <array>
#include <memory>
#include <vector>

#include "otsfd/field.hpp"
#include "otsfd/grid.hpp"
#include "otsfd/solvers_1d.hpp"
#include "otsfd/sources.hpp"

namespace otsfd {

struct State2D {
    ScalarField2D u;
    int steps = 0;
    double time() const { return u.time(); }
};

ScalarField2D sample_field(const UniformGrid2D& grid, const SpaceTimeFunction& f, double t);

/// Sets the outer ring of grid nodes and every storage ghost from the exact solution.
void fill_dirichlet(ScalarField2D& u, const SpaceTimeFunction& exact);

class Stepper2D {
   public:
    virtual ~Stepper2D() = default;
    virtual void step(State2D& s, double dt) = 0;
};

/// u_t + Ax u_x + Ay u_y = 0, first-order upwind forward Euler, optionally with the
/// Ax Ay dt^2 u_xy correction. With the optimal variant the grid must satisfy
/// dy/dx = |Ay/Ax| and dt = dx/|Ax|, which turns the update into a diagonal index shift.
class Advection2D final : public Stepper2D {
   public:
    Advection2D(const UniformGrid2D& grid, double ax, double ay, const SchemeVariant& variant,
                const SpaceTimeFunction& boundary);
    void step(State2D& s, double dt) override;

   private:
    double ax_, ay_;
    bool optimal_;
    bool nidc_;
    const SpaceTimeFunction& boundary_;
    std::vector<double> next_;
};

/// u_t = D lap u + f with the nine-point Laplacian on a square-cell grid.
class Diffusion2D9pt final : public Stepper2D {
   public:
    Diffusion2D9pt(const UniformGrid2D& grid, double d, const SourceModel& source, const SchemeVariant& variant,
                   const SpaceTimeFunction& boundary);
    void step(State2D& s, double dt) override;

   private:
    double d_;
    bool nidc_;
    const SpaceTimeFunction& boundary_;
    std::unique_ptr<GridSampler> f_, f_t_, f_xx_, f_yy_;
    std::vector<double> fv_, ftv_, fxxv_, fyyv_, next_;
};

/// Sets every non-interior grid node to the quiet-NaN sentinel, so unfilled ghosts are detectable.
void invalidate_ghosts(ScalarField2D& u, const CellClassification& cls);

/// Cubic Lagrange extrapolation through u_B (the exact solution at the boundary point)
/// and three interior nodes along each edge ghost's fill axis.
void fill_edge_ghosts(ScalarField2D& u, const CellClassification& cls, const SpaceTimeFunction& boundary_values,
                      double t);

/// Lagrange weights for the edge-ghost extrapolant, ordered (u_B, node m, m+1, m+2).
std::array<double, 4> edge_ghost_weights(const EdgeGhost& e);

/// Corner ghosts from the reflected eight-point stencil. Throws GhostOrderError when a
/// stencil node still holds the sentinel (edge ghosts must be filled first).
void fill_corner_ghosts(ScalarField2D& u, const CellClassification& cls);

/// Forward Euler nine-point diffusion on the interior of an implicit domain. Each step fills
/// edge then corner ghosts at the current time and advances the active nodes; interior
/// nodes on the bounding grid's outer ring take Dirichlet data.
class Diffusion2DIrregular final : public Stepper2D {
   public:
    Diffusion2DIrregular(const CellClassification& cls, double d, const SourceModel& source,
                         const SchemeVariant& variant, const SpaceTimeFunction& boundary);
    void step(State2D& s, double dt) override;

    const CellClassification& classification() const { return cls_; }

   private:
    const CellClassification& cls_;
    double d_;
    bool nidc_;
    const SpaceTimeFunction& boundary_;
    std::unique_ptr<GridSampler> f_, f_t_, f_xx_, f_yy_;
    std::vector<double> fv_, ftv_, fxxv_, fyyv_, next_;
    std::vector<std::size_t> active_;
    std::vector<GridSampler::Run> runs_;
    std::vector<std::size_t> ghosts_;
};

/// Crank-Nicolson with the five-point Laplacian, solved by conjugate gradients.
class CrankNicolson2D5pt final : public Stepper2D {
   public:
    CrankNicolson2D5pt(const UniformGrid2D& grid, double d, const SourceModel& source,
                       const SpaceTimeFunction& boundary, double solver_tolerance = 1e-12);
    void step(State2D& s, double dt) override;
    int last_iterations() const { return last_iterations_; }

   private:
    double d_;
    double tol_;
    const SpaceTimeFunction& boundary_;
    std::unique_ptr<GridSampler> f_;
    std::vector<double> f0_, f1_;
    int last_iterations_ = 0;
};

/// Sets the storage of an irregular-domain field: interior from f, ghosts and far-exterior nodes
/// to the sentinel.
ScalarField2D sample_interior(const CellClassification& cls, const SpaceTimeFunction& f, double t);

void advection2d_step(State2D& s, double ax, double ay, double dt, const SchemeVariant& variant,
                      const SpaceTimeFunction& boundary);
void diffusion2d_9pt_step(State2D& s, double d, double dt, const SourceModel& source, const SchemeVariant& variant,
                          const SpaceTimeFunction& boundary);
void diffusion2d_irregular_step(State2D& s, const CellClassification& cls, double d, double dt,
                                const SourceModel& source, const SchemeVariant& variant,
                                const SpaceTimeFunction& boundary);
void crank_nicolson_2d_5pt_step(State2D& s, double d, double dt, const SourceModel& source,
                                const SpaceTimeFunction& boundary, double solver_tolerance = 1e-12);

int advance_to(Stepper2D& stepper, State2D& s, double dt, double final_time);
void advance_steps(Stepper2D& stepper, State2D& s, double dt, int steps);

}  // namespace otsfd
