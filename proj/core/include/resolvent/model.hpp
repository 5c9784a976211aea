#pragma once

#include <complex>
#include <utility>

namespace resolvent {

using cplx = std::complex<double>;

/// Which asymptotic behaviour e^{+i k r} (plus, outgoing) or e^{-i k r} (minus, incoming).
enum class Direction { plus, minus };

/// Magnitude below which E or E - V counts as sitting on a branch point.
inline constexpr double kBranchPointEpsilon = 1e-12;

/// Square barrier of height v0 on (a, b); zero elsewhere. A negative v0 is a well.
class SquareBarrier {
public:
    SquareBarrier(double v0, double a, double b);

    [[nodiscard]] double v0() const noexcept { return v0_; }
    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }

    friend bool operator==(const SquareBarrier&, const SquareBarrier&) = default;

private:
    double v0_;
    double a_;
    double b_;
};

/// Finite complex energy.
class ComplexEnergy {
public:
    ComplexEnergy(cplx value);  // NOLINT(google-explicit-constructor)
    ComplexEnergy(double re, double im = 0.0) : ComplexEnergy(cplx{re, im}) {}

    [[nodiscard]] cplx value() const noexcept { return value_; }
    [[nodiscard]] double real() const noexcept { return value_.real(); }
    [[nodiscard]] double imag() const noexcept { return value_.imag(); }
    [[nodiscard]] ComplexEnergy conj() const { return ComplexEnergy{std::conj(value_)}; }

    friend bool operator==(const ComplexEnergy&, const ComplexEnergy&) = default;

private:
    cplx value_;
};

/// A wavenumber on the branch arg(k) in (-pi/2, pi/2].
class BranchMomentum {
public:
    [[nodiscard]] cplx value() const noexcept { return k_; }
    operator cplx() const noexcept { return k_; }  // NOLINT(google-explicit-constructor)

    friend bool operator==(const BranchMomentum&, const BranchMomentum&) = default;
    friend BranchMomentum branch_sqrt(cplx z);

private:
    explicit BranchMomentum(cplx k) : k_(k) {}
    cplx k_{};
};

/// Square root with arg(z) taken in (-pi, pi] before halving. The negative
/// real axis maps to the positive imaginary axis regardless of the sign of a
/// zero imaginary part.
BranchMomentum branch_sqrt(cplx z);

/// V(r). At r = a and r = b the right-limit value is returned.
double potential_at(const SquareBarrier& p, double r);

/// (sqrt(E), sqrt(E - v0)) on the branch of branch_sqrt.
std::pair<BranchMomentum, BranchMomentum> momenta(const SquareBarrier& p, ComplexEnergy e);

}  // namespace resolvent
