#pragma once

#include <array>
#include <utility>

#include "resolvent/model.hpp"
#include "resolvent/piecewise_potential.hpp"
#include "resolvent/piecewise_wave.hpp"

namespace resolvent {

/// Maps (plus, minus) plane-wave amplitudes of one region onto the adjacent
/// region so that value and derivative are continuous at the interface.
struct TransferMatrix {
    std::array<std::array<cplx, 2>, 2> m;

    [[nodiscard]] std::pair<cplx, cplx> apply(std::pair<cplx, cplx> c) const {
        return {m[0][0] * c.first + m[0][1] * c.second, m[1][0] * c.first + m[1][1] * c.second};
    }
    [[nodiscard]] cplx determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    [[nodiscard]] TransferMatrix operator*(const TransferMatrix& rhs) const;
};

/// Interface matrix at r with every exponential measured from r = 0.
/// det = k_left / k_right.
TransferMatrix interface_matrix(BranchMomentum k_left, BranchMomentum k_right, double r);

/// Same, with the left region written as e^{+-ik_left (x - origin_left)} and the
/// right region as e^{+-ik_right (x - origin_right)}.
TransferMatrix interface_matrix(BranchMomentum k_left, BranchMomentum k_right, double r, double origin_left,
                                double origin_right);

/// Regular solution: sin(sqrt(E - v0) r) in the innermost region, propagated outward.
/// Region j > 0 uses its left breakpoint as origin.
PiecewiseWave build_chi(const PiecewisePotential& p, ComplexEnergy e);

/// Jost-type solution pinned to exactly e^{+-i sqrt(E) r} beyond the last
/// breakpoint and propagated inward. Region j < N uses its right breakpoint as origin.
PiecewiseWave build_omega(const PiecewisePotential& p, ComplexEnergy e, Direction direction);

/// Coefficients (J3, J4) of chi in the outermost region, origin at r = 0.
std::pair<cplx, cplx> chi_outer_coefficients(const PiecewisePotential& p, ComplexEnergy e);

/// 2ik J4 for plus, -2ik J3 for minus, computed from the outer amplitudes of chi.
cplx wronskian_closed_form(const PiecewisePotential& p, ComplexEnergy e, Direction direction);

}  // namespace resolvent
