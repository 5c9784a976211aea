#include "resolvent/eigenfunctions.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "resolvent/errors.hpp"

namespace resolvent {
namespace {

constexpr cplx kI{0.0, 1.0};

struct PlaneWavePair {
    cplx plus;
    cplx minus;
};

/// Solve c+ e^{ikr} + c- e^{-ikr} = value, ik (c+ e^{ikr} - c- e^{-ikr}) = slope.
PlaneWavePair match_plane_waves(cplx k, double r, cplx value, cplx slope) {
    const cplx reduced = slope / (kI * k);
    return {0.5 * std::exp(-kI * k * r) * (value + reduced), 0.5 * std::exp(kI * k * r) * (value - reduced)};
}

cplx plane_value(PlaneWavePair c, cplx k, double r) {
    return c.plus * std::exp(kI * k * r) + c.minus * std::exp(-kI * k * r);
}

cplx plane_slope(PlaneWavePair c, cplx k, double r) {
    return kI * k * (c.plus * std::exp(kI * k * r) - c.minus * std::exp(-kI * k * r));
}

std::pair<cplx, cplx> checked_momenta(const SquareBarrier& p, ComplexEnergy e) {
    if (std::abs(e.value()) < kBranchPointEpsilon || std::abs(e.value() - p.v0()) < kBranchPointEpsilon) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "energy (" << e.real() << ", " << e.imag() << ") is at a branch point (0 or V0=" << p.v0() << ")";
        throw BranchPointError(msg.str());
    }
    const auto [k, q] = momenta(p, e);
    return {k.value(), q.value()};
}

}  // namespace

CoefficientSet chi_coefficients(const SquareBarrier& p, ComplexEnergy e) {
    const auto [k, q] = checked_momenta(p, e);
    const double a = p.a();
    const double b = p.b();
    const PlaneWavePair inner = match_plane_waves(q, a, std::sin(k * a), k * std::cos(k * a));
    const PlaneWavePair outer = match_plane_waves(k, b, plane_value(inner, q, b), plane_slope(inner, q, b));
    return {CoefficientKind::chi, {inner.plus, inner.minus, outer.plus, outer.minus}};
}

namespace {

CoefficientSet omega_from_outer(const SquareBarrier& p, ComplexEnergy e, PlaneWavePair outer, CoefficientKind kind) {
    const auto [k, q] = checked_momenta(p, e);
    const double a = p.a();
    const double b = p.b();
    const PlaneWavePair barrier = match_plane_waves(q, b, plane_value(outer, k, b), plane_slope(outer, k, b));
    const PlaneWavePair inner = match_plane_waves(k, a, plane_value(barrier, q, a), plane_slope(barrier, q, a));
    return {kind, {inner.plus, inner.minus, barrier.plus, barrier.minus}};
}

}  // namespace

CoefficientSet omega_plus_coefficients(const SquareBarrier& p, ComplexEnergy e) {
    return omega_from_outer(p, e, {1.0, 0.0}, CoefficientKind::omega_plus);
}

CoefficientSet omega_minus_coefficients(const SquareBarrier& p, ComplexEnergy e) {
    return omega_from_outer(p, e, {0.0, 1.0}, CoefficientKind::omega_minus);
}

CoefficientSet omega_coefficients(const SquareBarrier& p, ComplexEnergy e, Direction direction) {
    return direction == Direction::plus ? omega_plus_coefficients(p, e) : omega_minus_coefficients(p, e);
}

PiecewiseWave assemble_wave(const SquareBarrier& p, ComplexEnergy e, const CoefficientSet& cs) {
    const auto [k, q] = momenta(p, e);
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<WaveRegion> regions;
    regions.reserve(3);
    if (cs.kind == CoefficientKind::chi) {
        regions.push_back({0.0, p.a(), k, 1.0, 0.0, 0.0, RegionForm::sine});
        regions.push_back({p.a(), p.b(), q, cs.c[0], cs.c[1]});
        regions.push_back({p.b(), inf, k, cs.c[2], cs.c[3]});
    } else {
        regions.push_back({0.0, p.a(), k, cs.c[0], cs.c[1]});
        regions.push_back({p.a(), p.b(), q, cs.c[2], cs.c[3]});
        const bool plus = cs.kind == CoefficientKind::omega_plus;
        regions.push_back({p.b(), inf, k, plus ? 1.0 : 0.0, plus ? 0.0 : 1.0});
    }
    return PiecewiseWave{to_piecewise(p), e, std::move(regions)};
}

PiecewiseWave chi_wave(const SquareBarrier& p, ComplexEnergy e) {
    return assemble_wave(p, e, chi_coefficients(p, e));
}

PiecewiseWave omega_wave(const SquareBarrier& p, ComplexEnergy e, Direction direction) {
    return assemble_wave(p, e, omega_coefficients(p, e, direction));
}

cplx wronskian_closed_form(const SquareBarrier& p, ComplexEnergy e, Direction direction) {
    const CoefficientSet j = chi_coefficients(p, e);
    const cplx k = branch_sqrt(e.value());
    return direction == Direction::plus ? 2.0 * kI * k * j[4] : -2.0 * kI * k * j[3];
}

}  // namespace resolvent
