#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "resolvent/model.hpp"

namespace resolvent {

/// Step potential: heights[j] on (breakpoints[j-1], breakpoints[j]) with
/// breakpoints[-1] = 0 and breakpoints[N] = infinity. The last height must be 0.
class PiecewisePotential {
public:
    PiecewisePotential(std::vector<double> breakpoints, std::vector<double> heights);

    /// Potential that is zero everywhere.
    static PiecewisePotential free();

    [[nodiscard]] std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    [[nodiscard]] std::span<const double> heights() const noexcept { return heights_; }
    [[nodiscard]] std::size_t region_count() const noexcept { return heights_.size(); }

    /// Region containing r; a breakpoint belongs to the region on its right.
    [[nodiscard]] std::size_t region_index(double r) const;
    [[nodiscard]] std::pair<double, double> region_bounds(std::size_t j) const;
    [[nodiscard]] double value_at(double r) const;

    /// Smallest region width among the bounded regions (infinity when there are none).
    [[nodiscard]] double min_width() const;

    friend bool operator==(const PiecewisePotential&, const PiecewisePotential&) = default;

private:
    std::vector<double> breakpoints_;
    std::vector<double> heights_;
};

PiecewisePotential to_piecewise(const SquareBarrier& p);

/// Throws BranchPointError when E is within kBranchPointEpsilon of any region height.
void require_off_branch_points(const PiecewisePotential& p, ComplexEnergy e);

}  // namespace resolvent
