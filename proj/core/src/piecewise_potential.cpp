#include "resolvent/piecewise_potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "resolvent/errors.hpp"

namespace resolvent {

PiecewisePotential::PiecewisePotential(std::vector<double> breakpoints, std::vector<double> heights)
    : breakpoints_(std::move(breakpoints)), heights_(std::move(heights)) {
    if (heights_.size() != breakpoints_.size() + 1) {
        throw DomainError("piecewise potential needs exactly one more height than breakpoints");
    }
    double prev = 0.0;
    for (double r : breakpoints_) {
        if (!std::isfinite(r) || !(r > prev)) {
            throw DomainError("piecewise potential breakpoints must be positive and strictly ascending");
        }
        prev = r;
    }
    for (double v : heights_) {
        if (!std::isfinite(v)) throw DomainError("piecewise potential heights must be finite");
    }
    if (heights_.back() != 0.0) {
        throw DomainError("piecewise potential must vanish beyond the last breakpoint");
    }
}

PiecewisePotential PiecewisePotential::free() { return PiecewisePotential{{}, {0.0}}; }

std::size_t PiecewisePotential::region_index(double r) const {
    if (!(r >= 0.0)) throw DomainError("radius must be non-negative");
    return static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r) -
                                    breakpoints_.begin());
}

std::pair<double, double> PiecewisePotential::region_bounds(std::size_t j) const {
    const double lo = j == 0 ? 0.0 : breakpoints_.at(j - 1);
    const double hi = j < breakpoints_.size() ? breakpoints_[j] : std::numeric_limits<double>::infinity();
    return {lo, hi};
}

double PiecewisePotential::value_at(double r) const { return heights_[region_index(r)]; }

double PiecewisePotential::min_width() const {
    double w = std::numeric_limits<double>::infinity();
    double prev = 0.0;
    for (double r : breakpoints_) {
        w = std::min(w, r - prev);
        prev = r;
    }
    return w;
}

PiecewisePotential to_piecewise(const SquareBarrier& p) {
    return PiecewisePotential{{p.a(), p.b()}, {0.0, p.v0(), 0.0}};
}

void require_off_branch_points(const PiecewisePotential& p, ComplexEnergy e) {
    for (double v : p.heights()) {
        if (std::abs(e.value() - v) < kBranchPointEpsilon) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "energy (" << e.real() << ", " << e.imag() << ") is at the branch point E = " << v;
            throw BranchPointError(msg.str());
        }
    }
}

}  // namespace resolvent
