#include "resolvent/model.hpp"

#include <cmath>
#include <sstream>

#include "resolvent/errors.hpp"

namespace resolvent {

SquareBarrier::SquareBarrier(double v0, double a, double b) : v0_(v0), a_(a), b_(b) {
    if (!std::isfinite(v0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("square barrier parameters must be finite");
    }
    if (!(0.0 < a && a < b)) {
        std::ostringstream msg;
        msg << "square barrier requires 0 < a < b, got a=" << a << " b=" << b;
        throw DomainError(msg.str());
    }
}

ComplexEnergy::ComplexEnergy(cplx value) : value_(value) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw DomainError("energy must be finite");
    }
}

BranchMomentum branch_sqrt(cplx z) {
    const double x = z.real();
    const double y = z.imag();
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("branch_sqrt: non-finite argument");
    }
    if (x == 0.0 && y == 0.0) {
        return BranchMomentum{cplx{0.0, 0.0}};
    }
    // t = sqrt((|z| + |x|) / 2) avoids cancellation in either half-plane.
    const double t = std::sqrt(0.5 * (std::hypot(x, y) + std::fabs(x)));
    if (x >= 0.0) {
        return BranchMomentum{cplx{t, y / (2.0 * t)}};
    }
    // arg(z) = -pi is not in the domain; y == -0.0 is treated as arg = +pi.
    const double im = (y < 0.0) ? -t : t;
    return BranchMomentum{cplx{std::fabs(y) / (2.0 * t), im}};
}

double potential_at(const SquareBarrier& p, double r) {
    if (!(r >= 0.0)) {
        throw DomainError("potential_at: r must be non-negative");
    }
    if (r < p.a()) return 0.0;
    if (r < p.b()) return p.v0();
    return 0.0;
}

std::pair<BranchMomentum, BranchMomentum> momenta(const SquareBarrier& p, ComplexEnergy e) {
    return {branch_sqrt(e.value()), branch_sqrt(e.value() - p.v0())};
}

}  // namespace resolvent
