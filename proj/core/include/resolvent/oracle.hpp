#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "resolvent/green_kernel.hpp"
#include "resolvent/model.hpp"
#include "resolvent/piecewise_potential.hpp"
#include "resolvent/piecewise_wave.hpp"

namespace resolvent::oracle {

// Independent checks of the kernel machinery. Nothing in here calls the
// coefficient builders; kernels and waves are sampled as black boxes.

struct ResidualReport {
    std::string name;
    std::size_t samples = 0;
    std::size_t excluded = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// pass == (max_residual <= tolerance); a NaN residual fails.
ResidualReport make_report(std::string name, double max_residual, double tolerance, std::size_t samples,
                           std::size_t excluded = 0);

// ---------------------------------------------------------------------------
// ODE integration of -y'' + V y = E y.

struct Trajectory {
    std::vector<double> r;
    std::vector<cplx> value;
    std::vector<cplx> derivative;
};

/// Classical RK4 over the given mesh (ascending or descending). V is taken
/// as constant on every cell, so no cell may straddle a breakpoint.
Trajectory integrate_schrodinger(const PiecewisePotential& p, ComplexEnergy e, cplx y0, cplx dy0,
                                 std::span<const double> mesh);

/// Uniform steps of size `step` from r_from to r_to. The step must divide the
/// interval and every breakpoint inside it must fall on a mesh node.
Trajectory integrate_schrodinger(const PiecewisePotential& p, ComplexEnergy e, cplx y0, cplx dy0, double r_from,
                                 double r_to, double step);

/// Mesh from r_from to r_to with every breakpoint in between as a node and
/// cells no longer than max_step.
std::vector<double> aligned_mesh(const PiecewisePotential& p, double r_from, double r_to, double max_step);

/// Integrates from r_from with the wave's own value and derivative and
/// reports max |ode - wave| / max |wave| along the way.
ResidualReport check_wave_ode(const PiecewiseWave& w, double r_from, double r_to, double step,
                              double tolerance = 1e-7);

// ---------------------------------------------------------------------------
// Finite-difference application of h = -d^2/dr^2 + V.

struct FdApplication {
    std::vector<cplx> hu;       ///< NaN where flagged
    std::vector<bool> flagged;  ///< grid edges and collars around breakpoints / kinks
    std::size_t flagged_count = 0;
};

/// u is sampled at r0 + j*step. Points within `collar` steps of a breakpoint
/// or of any entry of `kinks` are flagged.
FdApplication apply_hamiltonian_fd(std::span<const cplx> u, const PiecewisePotential& p, double r0, double step,
                                   std::span<const double> kinks = {}, int collar = 2);

// ---------------------------------------------------------------------------

enum class BumpKind { gaussian_bump, compact_polynomial_bump };

/// Smooth test function. gaussian_bump = exp(-x^2/2), compact_polynomial_bump
/// = (1 - x^2)^4 on |x| < 1, with x = (r - center) / width.
class TestFunction {
public:
    TestFunction(BumpKind kind, double center, double width);

    [[nodiscard]] double value(double r) const;
    [[nodiscard]] double second_derivative(double r) const;
    /// Interval outside which the function is negligible (< 1e-6 of its peak).
    [[nodiscard]] std::pair<double, double> effective_support() const;
    /// Interval that has to be integrated over so nothing above 1e-16 is dropped.
    [[nodiscard]] std::pair<double, double> integration_support() const;

    [[nodiscard]] BumpKind kind() const noexcept { return kind_; }
    [[nodiscard]] double center() const noexcept { return center_; }
    [[nodiscard]] double width() const noexcept { return width_; }

private:
    [[nodiscard]] double first_derivative(double r) const;

    BumpKind kind_;
    double center_;
    double width_;
};

/// Composite Simpson for the kernel action (G f)(r), panels split at r and at
/// every breakpoint.
cplx apply_kernel(const GreenKernel& g, const TestFunction& f, double r, double r_max, double quad_step);

/// Default outer radius for complex-energy identity checks: the farther of the
/// last breakpoint and `support_edge`, plus max(20, 20 / |Im sqrt(E)|).
double default_r_max(const PiecewisePotential& p, ComplexEnergy e, double support_edge = 0.0);

struct IdentityOptions {
    double quad_step = 1e-3;
    double grid_step = 1e-3;
    int check_points = 200;
    double tolerance = 1e-4;
};

/// (E - h) applied by finite differences to the quadrature image of f, compared with f.
ResidualReport check_resolvent_identity(const GreenKernel& g, const TestFunction& f, double r_max,
                                        const IdentityOptions& options = {});

/// The integral of G against (E - h) g reproduces g; no finite differences involved.
/// A gaussian's nonzero tail at r = 0 enters through a boundary term, hence the 1e-6 default.
ResidualReport check_adjoint_identity(const GreenKernel& g, const TestFunction& f, double quad_step = 1e-3,
                                      int check_points = 200, double tolerance = 1e-6);

// ---------------------------------------------------------------------------
// Pointwise properties of G(., s).

/// One-sided value and derivative of fn at x, extrapolated from samples on
/// `side` within `reach` of x.
struct OneSidedLimit {
    cplx value;
    cplx derivative;
};

template <class F>
OneSidedLimit one_sided_limit(const F& fn, double x, Side side, double reach);

/// |dG/dr(s+0) - dG/dr(s-0) - 1| from extrapolated one-sided differences.
ResidualReport check_jump(const GreenKernel& g, double s, double tolerance = 1e-6);

struct DistributionalReport {
    ResidualReport off_diagonal;  ///< ODE re-integration of r -> G(r, s) on both sides of s
    ResidualReport jump;
    ResidualReport continuity;    ///< value/derivative at breakpoints, value at r = s
    ResidualReport combined;
};

DistributionalReport check_distributional_equation(const GreenKernel& g, double s, double r_max,
                                                   double ode_step = 1e-3);

/// Continuity of value and derivative of w at every breakpoint, scaled by 1 + |value|.
ResidualReport check_wave_continuity(const PiecewiseWave& w, double tolerance = 1e-10);

}  // namespace resolvent::oracle

#include "resolvent/detail/one_sided_limit.hpp"
