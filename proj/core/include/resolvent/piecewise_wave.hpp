#pragma once

#include <utility>
#include <vector>

#include "resolvent/model.hpp"
#include "resolvent/piecewise_potential.hpp"

namespace resolvent {

enum class RegionForm {
    plane_wave,  ///< plus * e^{ik(r-origin)} + minus * e^{-ik(r-origin)}
    sine,        ///< plus * sin(k(r-origin)); minus is unused
};

struct WaveRegion {
    double lo;
    double hi;
    BranchMomentum k;
    cplx plus;
    cplx minus;
    double origin = 0.0;
    RegionForm form = RegionForm::plane_wave;
};

enum class Side { left, right };

/// A solution of -w'' + V w = E w on (0, inf), stored region by region.
/// The regions follow the breakpoints of `potential` exactly.
class PiecewiseWave {
public:
    PiecewiseWave(PiecewisePotential potential, ComplexEnergy energy, std::vector<WaveRegion> regions);

    [[nodiscard]] const PiecewisePotential& potential() const noexcept { return potential_; }
    [[nodiscard]] ComplexEnergy energy() const noexcept { return energy_; }
    [[nodiscard]] const std::vector<WaveRegion>& regions() const noexcept { return regions_; }
    std::vector<WaveRegion>& mutable_regions() noexcept { return regions_; }

    [[nodiscard]] cplx value(double r) const;
    [[nodiscard]] cplx derivative(double r) const;
    /// One-sided limits; differ from value/derivative only at breakpoints.
    [[nodiscard]] cplx value(double r, Side side) const;
    [[nodiscard]] cplx derivative(double r, Side side) const;

    /// Coefficients of e^{+ikr} and e^{-ikr} with the origin at r = 0.
    [[nodiscard]] std::pair<cplx, cplx> global_coefficients(std::size_t region) const;

private:
    [[nodiscard]] const WaveRegion& region_for(double r, Side side) const;

    PiecewisePotential potential_;
    ComplexEnergy energy_;
    std::vector<WaveRegion> regions_;
};

/// Value of w at r >= 0. At a breakpoint the right-hand region is used.
cplx eval_wave(const PiecewiseWave& w, double r);
/// Analytic derivative of the region formula; right-hand region at breakpoints.
cplx eval_wave_derivative(const PiecewiseWave& w, double r);
cplx eval_wave_derivative(const PiecewiseWave& w, double r, Side side);

/// f g' - f' g at r. Both waves must belong to the same potential and energy.
cplx wronskian(const PiecewiseWave& f, const PiecewiseWave& g, double r);

}  // namespace resolvent
