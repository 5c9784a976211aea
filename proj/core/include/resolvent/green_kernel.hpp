#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "resolvent/eigenfunctions.hpp"
#include "resolvent/model.hpp"
#include "resolvent/piecewise_potential.hpp"
#include "resolvent/piecewise_wave.hpp"

namespace resolvent {

enum class Provenance { resolvent_kernel, formal_plus, formal_minus, boundary_limit_plus, boundary_limit_minus };

std::string_view to_string(Provenance p);
std::string_view to_string(Direction d);

struct KernelSample {
    double r;
    double s;
    ComplexEnergy e;
    cplx value;
    Provenance provenance;
};

/// The three ingredients of chi(r_<) Omega(r_>) / W.
struct KernelFactors {
    PiecewiseWave regular;
    PiecewiseWave jost;
    cplx wronskian;
    Direction direction;
};

/// G(r, s) = chi(min(r, s)) Omega(max(r, s)) / W for a fixed energy.
class GreenKernel {
public:
    explicit GreenKernel(KernelFactors factors);

    [[nodiscard]] cplx operator()(double r, double s) const;
    /// dG/dr on the given side of r; at r == s the side decides which branch is used.
    [[nodiscard]] cplx d_dr(double r, double s, Side side) const;
    /// G evaluated with the region on `side` of r (for continuity checks at breakpoints).
    [[nodiscard]] cplx value(double r, double s, Side side) const;

    [[nodiscard]] const KernelFactors& factors() const noexcept { return factors_; }
    [[nodiscard]] ComplexEnergy energy() const noexcept { return factors_.regular.energy(); }
    [[nodiscard]] const PiecewisePotential& potential() const noexcept { return factors_.regular.potential(); }

private:
    KernelFactors factors_;
    cplx inv_w_;
};

/// Kernel built from the square-barrier closed forms (W from 2ik J4 or -2ik J3).
GreenKernel make_kernel(const SquareBarrier& p, ComplexEnergy e, Direction direction);
/// Kernel built by the transfer-matrix engine.
GreenKernel make_kernel(const PiecewisePotential& p, ComplexEnergy e, Direction direction);

/// Direction selected by the half-plane of a non-real energy.
Direction half_plane_direction(ComplexEnergy e);

/// Resolvent kernel for Im E != 0: Omega+ in the upper half-plane, Omega- in the lower.
KernelSample resolvent_kernel(const SquareBarrier& p, ComplexEnergy e, double r, double s);
KernelSample resolvent_kernel(const PiecewisePotential& p, ComplexEnergy e, double r, double s);

/// Outgoing (plus) or incoming (minus) Green function at real E > 0.
KernelSample formal_green(const SquareBarrier& p, double e, double r, double s, Direction direction);
KernelSample formal_green(const PiecewisePotential& p, double e, double r, double s, Direction direction);

/// Trajectory of G(r, s; E +- i mu_k), mu_k = mu0 2^-k for k = 1..K.
struct LimitStudy {
    double e;
    double r;
    double s;
    Direction direction;
    double mu0;
    std::vector<double> mu_sequence;
    std::vector<cplx> samples;
    cplx extrapolated;
    cplx richardson;
    bool converged;

    [[nodiscard]] std::size_t halvings() const noexcept { return mu_sequence.size(); }
};

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, LimitStudy study)
        : std::runtime_error(what), study_(std::move(study)) {}
    [[nodiscard]] const LimitStudy& study() const noexcept { return study_; }

private:
    LimitStudy study_;
};

struct LimitOptions {
    double tolerance = 1e-10;
    double mu_floor = 1e-8;
    int max_halvings = 40;
};

LimitStudy boundary_limit(const SquareBarrier& p, double e, double r, double s, Direction direction, double mu0,
                          const LimitOptions& options = {});
LimitStudy boundary_limit(const PiecewisePotential& p, double e, double r, double s, Direction direction,
                          double mu0, const LimitOptions& options = {});

struct SearchBox {
    double re_min;
    double re_max;
    double im_min;
    double im_max;
};

struct PoleScanOptions {
    double seed_spacing = 0.25;
    double branch_margin = 1e-6;
    int max_iterations = 80;
    double derivative_step = 1e-7;
    double value_tolerance = 1e-10;
    double step_tolerance = 1e-12;
    double dedup_radius = 1e-8;
};

struct KernelPole {
    cplx energy;
    double j4_magnitude;
    double last_step;
};

/// Zeros of J4(E) inside the box found by Newton iteration from a seed grid.
/// Discs of radius branch_margin around E = 0 and E = V0 are excluded.
std::vector<KernelPole> find_kernel_poles(const SquareBarrier& p, const SearchBox& box,
                                          const PoleScanOptions& options = {});

}  // namespace resolvent
