#pragma once

#include <array>

#include "resolvent/model.hpp"
#include "resolvent/piecewise_wave.hpp"

namespace resolvent {

enum class CoefficientKind {
    chi,          ///< J1..J4
    omega_plus,   ///< A1+..A4+
    omega_minus,  ///< A1-..A4-
};

/// Region-matching amplitudes of one basic solution of the square barrier.
/// c[0], c[1] multiply e^{+-i q r} or e^{+-i k r} in the first bounded region
/// that is not fixed by a boundary condition; see the individual builders.
struct CoefficientSet {
    CoefficientKind kind;
    std::array<cplx, 4> c;

    [[nodiscard]] cplx operator[](int index) const { return c.at(static_cast<std::size_t>(index - 1)); }
};

/// J1..J4 of the regular solution chi: sin(kr) on (0,a),
/// J1 e^{iqr} + J2 e^{-iqr} on (a,b), J3 e^{ikr} + J4 e^{-ikr} beyond b,
/// with k = sqrt(E), q = sqrt(E - V0).
CoefficientSet chi_coefficients(const SquareBarrier& p, ComplexEnergy e);

/// A1+..A4+: A1 e^{ikr} + A2 e^{-ikr} on (0,a), A3 e^{iqr} + A4 e^{-iqr} on (a,b),
/// exactly e^{ikr} beyond b.
CoefficientSet omega_plus_coefficients(const SquareBarrier& p, ComplexEnergy e);

/// A1-..A4-, same layout as omega_plus_coefficients with e^{-ikr} beyond b.
CoefficientSet omega_minus_coefficients(const SquareBarrier& p, ComplexEnergy e);

CoefficientSet omega_coefficients(const SquareBarrier& p, ComplexEnergy e, Direction direction);

/// Assemble the wave described by a coefficient set (origin at r = 0 in every region).
PiecewiseWave assemble_wave(const SquareBarrier& p, ComplexEnergy e, const CoefficientSet& coefficients);

PiecewiseWave chi_wave(const SquareBarrier& p, ComplexEnergy e);
PiecewiseWave omega_wave(const SquareBarrier& p, ComplexEnergy e, Direction direction);

/// W(chi, Omega+) = 2ik J4 and W(chi, Omega-) = -2ik J3.
cplx wronskian_closed_form(const SquareBarrier& p, ComplexEnergy e, Direction direction);

}  // namespace resolvent
