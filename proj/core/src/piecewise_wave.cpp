#include "resolvent/piecewise_wave.hpp"

#include <cmath>

#include "resolvent/errors.hpp"

namespace resolvent {
namespace {

constexpr cplx kI{0.0, 1.0};

cplx region_value(const WaveRegion& reg, double r) {
    const cplx k = reg.k;
    const double x = r - reg.origin;
    if (reg.form == RegionForm::sine) return reg.plus * std::sin(k * x);
    return reg.plus * std::exp(kI * k * x) + reg.minus * std::exp(-kI * k * x);
}

cplx region_derivative(const WaveRegion& reg, double r) {
    const cplx k = reg.k;
    const double x = r - reg.origin;
    if (reg.form == RegionForm::sine) return reg.plus * k * std::cos(k * x);
    return kI * k * (reg.plus * std::exp(kI * k * x) - reg.minus * std::exp(-kI * k * x));
}

}  // namespace

PiecewiseWave::PiecewiseWave(PiecewisePotential potential, ComplexEnergy energy, std::vector<WaveRegion> regions)
    : potential_(std::move(potential)), energy_(energy), regions_(std::move(regions)) {
    if (regions_.size() != potential_.region_count()) {
        throw ContractError("wave must have one region per potential region");
    }
}

const WaveRegion& PiecewiseWave::region_for(double r, Side side) const {
    if (!(r >= 0.0)) throw DomainError("wave evaluated at negative radius");
    std::size_t j = potential_.region_index(r);
    if (side == Side::left && j > 0 && r == potential_.breakpoints()[j - 1]) --j;
    return regions_[j];
}

cplx PiecewiseWave::value(double r) const { return region_value(region_for(r, Side::right), r); }
cplx PiecewiseWave::derivative(double r) const { return region_derivative(region_for(r, Side::right), r); }
cplx PiecewiseWave::value(double r, Side side) const { return region_value(region_for(r, side), r); }
cplx PiecewiseWave::derivative(double r, Side side) const {
    return region_derivative(region_for(r, side), r);
}

std::pair<cplx, cplx> PiecewiseWave::global_coefficients(std::size_t region) const {
    const WaveRegion& reg = regions_.at(region);
    const cplx k = reg.k;
    if (reg.form == RegionForm::sine) {
        // sin(k(r - o)) = (e^{ik(r-o)} - e^{-ik(r-o)}) / 2i
        const cplx half = reg.plus / (2.0 * kI);
        return {half * std::exp(-kI * k * reg.origin), -half * std::exp(kI * k * reg.origin)};
    }
    return {reg.plus * std::exp(-kI * k * reg.origin), reg.minus * std::exp(kI * k * reg.origin)};
}

cplx eval_wave(const PiecewiseWave& w, double r) { return w.value(r); }
cplx eval_wave_derivative(const PiecewiseWave& w, double r) { return w.derivative(r); }
cplx eval_wave_derivative(const PiecewiseWave& w, double r, Side side) { return w.derivative(r, side); }

cplx wronskian(const PiecewiseWave& f, const PiecewiseWave& g, double r) {
    if (!(f.energy() == g.energy()) || !(f.potential() == g.potential())) {
        throw ContractError("wronskian of waves with different potential or energy");
    }
    return f.value(r) * g.derivative(r) - f.derivative(r) * g.value(r);
}

}  // namespace resolvent
