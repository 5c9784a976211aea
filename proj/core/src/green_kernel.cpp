#include "resolvent/green_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "resolvent/errors.hpp"
#include "resolvent/piecewise_engine.hpp"

namespace resolvent {
namespace {

constexpr double kPoleGuard = 1e-14;

Provenance formal_provenance(Direction d) {
    return d == Direction::plus ? Provenance::formal_plus : Provenance::formal_minus;
}

void require_real_positive(double e, const char* op) {
    if (!(e > 0.0) || !std::isfinite(e)) {
        std::ostringstream msg;
        msg << op << ": energy must be real and positive, got " << e;
        throw DomainError(msg.str());
    }
}

void require_radii(double r, double s) {
    if (!(r >= 0.0) || !(s >= 0.0)) throw DomainError("kernel radii must be non-negative");
}

void guard_pole(cplx j, double e) {
    if (std::abs(j) < kPoleGuard) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "kernel denominator vanishes at E = " << e;
        throw PoleError(msg.str());
    }
}

template <class Potential>
KernelSample resolvent_kernel_impl(const Potential& p, ComplexEnergy e, double r, double s) {
    if (e.imag() == 0.0) {
        throw ContractError(
            "resolvent_kernel needs Im E != 0; use formal_green or boundary_limit on the real axis");
    }
    require_radii(r, s);
    const GreenKernel g = make_kernel(p, e, half_plane_direction(e));
    return {r, s, e, g(r, s), Provenance::resolvent_kernel};
}

cplx formal_denominator_coefficient(const SquareBarrier& p, double e, Direction d) {
    const CoefficientSet j = chi_coefficients(p, e);
    return d == Direction::plus ? j[4] : j[3];
}

cplx formal_denominator_coefficient(const PiecewisePotential& p, double e, Direction d) {
    const auto [j3, j4] = chi_outer_coefficients(p, e);
    return d == Direction::plus ? j4 : j3;
}

template <class Potential>
KernelSample formal_green_impl(const Potential& p, double e, double r, double s, Direction d) {
    require_real_positive(e, "formal_green");
    require_radii(r, s);
    guard_pole(formal_denominator_coefficient(p, e, d), e);
    const GreenKernel g = make_kernel(p, ComplexEnergy{e}, d);
    return {r, s, ComplexEnergy{e}, g(r, s), formal_provenance(d)};
}

template <class Potential>
LimitStudy boundary_limit_impl(const Potential& p, double e, double r, double s, Direction d, double mu0,
                               const LimitOptions& opt) {
    require_real_positive(e, "boundary_limit");
    require_radii(r, s);
    if (!(mu0 > 0.0) || mu0 > 0.1 * e) {
        throw ContractError("boundary_limit: mu0 must lie in (0, 0.1 E]");
    }
    const double sign = d == Direction::plus ? 1.0 : -1.0;
    LimitStudy study{e, r, s, d, mu0, {}, {}, {}, {}, false};
    for (int k = 1; k <= opt.max_halvings; ++k) {
        const double mu = std::ldexp(mu0, -k);
        const cplx g = resolvent_kernel_impl(p, ComplexEnergy{e, sign * mu}, r, s).value;
        study.mu_sequence.push_back(mu);
        study.samples.push_back(g);
        if (k >= 2) {
            const cplx prev = study.samples[study.samples.size() - 2];
            if (std::abs(g - prev) < opt.tolerance && mu < opt.mu_floor) {
                study.converged = true;
                break;
            }
        }
    }
    const std::size_t n = study.samples.size();
    study.extrapolated = study.samples.back();
    study.richardson = n >= 2 ? 2.0 * study.samples[n - 1] - study.samples[n - 2] : study.samples.back();
    if (!study.converged) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "boundary_limit did not converge after " << opt.max_halvings << " halvings at E=" << e
            << " r=" << r << " s=" << s;
        throw NonConvergenceError(msg.str(), std::move(study));
    }
    return study;
}

}  // namespace

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::resolvent_kernel: return "resolvent_kernel";
        case Provenance::formal_plus: return "formal_plus";
        case Provenance::formal_minus: return "formal_minus";
        case Provenance::boundary_limit_plus: return "boundary_limit_plus";
        case Provenance::boundary_limit_minus: return "boundary_limit_minus";
    }
    return "unknown";
}

std::string_view to_string(Direction d) { return d == Direction::plus ? "plus" : "minus"; }

GreenKernel::GreenKernel(KernelFactors factors) : factors_(std::move(factors)) {
    if (!(factors_.regular.energy() == factors_.jost.energy()) ||
        !(factors_.regular.potential() == factors_.jost.potential())) {
        throw ContractError("kernel factors belong to different problems");
    }
    if (factors_.wronskian == cplx{0.0, 0.0}) throw PoleError("kernel Wronskian is zero");
    inv_w_ = 1.0 / factors_.wronskian;
}

cplx GreenKernel::operator()(double r, double s) const {
    const double lo = std::min(r, s);
    const double hi = std::max(r, s);
    return factors_.regular.value(lo) * factors_.jost.value(hi) / factors_.wronskian;
}

cplx GreenKernel::value(double r, double s, Side side) const {
    if (r < s || (r == s && side == Side::left)) {
        return factors_.regular.value(r, side) * factors_.jost.value(s) / factors_.wronskian;
    }
    return factors_.regular.value(s) * factors_.jost.value(r, side) / factors_.wronskian;
}

cplx GreenKernel::d_dr(double r, double s, Side side) const {
    if (r < s || (r == s && side == Side::left)) {
        return factors_.regular.derivative(r, side) * factors_.jost.value(s) / factors_.wronskian;
    }
    return factors_.regular.value(s) * factors_.jost.derivative(r, side) / factors_.wronskian;
}

GreenKernel make_kernel(const SquareBarrier& p, ComplexEnergy e, Direction direction) {
    return GreenKernel{KernelFactors{chi_wave(p, e), omega_wave(p, e, direction),
                                     wronskian_closed_form(p, e, direction), direction}};
}

GreenKernel make_kernel(const PiecewisePotential& p, ComplexEnergy e, Direction direction) {
    return GreenKernel{KernelFactors{build_chi(p, e), build_omega(p, e, direction),
                                     wronskian_closed_form(p, e, direction), direction}};
}

Direction half_plane_direction(ComplexEnergy e) {
    if (e.imag() == 0.0) throw ContractError("energy on the real axis has no half-plane");
    return e.imag() > 0.0 ? Direction::plus : Direction::minus;
}

KernelSample resolvent_kernel(const SquareBarrier& p, ComplexEnergy e, double r, double s) {
    return resolvent_kernel_impl(p, e, r, s);
}
KernelSample resolvent_kernel(const PiecewisePotential& p, ComplexEnergy e, double r, double s) {
    return resolvent_kernel_impl(p, e, r, s);
}

KernelSample formal_green(const SquareBarrier& p, double e, double r, double s, Direction direction) {
    return formal_green_impl(p, e, r, s, direction);
}
KernelSample formal_green(const PiecewisePotential& p, double e, double r, double s, Direction direction) {
    return formal_green_impl(p, e, r, s, direction);
}

LimitStudy boundary_limit(const SquareBarrier& p, double e, double r, double s, Direction direction, double mu0,
                          const LimitOptions& options) {
    return boundary_limit_impl(p, e, r, s, direction, mu0, options);
}
LimitStudy boundary_limit(const PiecewisePotential& p, double e, double r, double s, Direction direction,
                          double mu0, const LimitOptions& options) {
    return boundary_limit_impl(p, e, r, s, direction, mu0, options);
}

std::vector<KernelPole> find_kernel_poles(const SquareBarrier& p, const SearchBox& box,
                                          const PoleScanOptions& opt) {
    if (!(box.re_min < box.re_max) || !(box.im_min < box.im_max)) {
        throw ContractError("find_kernel_poles: empty search box");
    }
    if (!(opt.seed_spacing > 0.0)) throw ContractError("find_kernel_poles: seed spacing must be positive");

    auto excluded = [&](cplx z) {
        return std::abs(z) < opt.branch_margin || std::abs(z - p.v0()) < opt.branch_margin;
    };
    auto inside = [&](cplx z) {
        return z.real() >= box.re_min && z.real() <= box.re_max && z.imag() >= box.im_min &&
               z.imag() <= box.im_max;
    };
    auto j4 = [&](cplx z) { return chi_coefficients(p, ComplexEnergy{z})[4]; };

    const auto n_re = static_cast<int>(std::floor((box.re_max - box.re_min) / opt.seed_spacing));
    const auto n_im = static_cast<int>(std::floor((box.im_max - box.im_min) / opt.seed_spacing));
    const double h = opt.derivative_step;

    std::vector<KernelPole> poles;
    for (int i = 0; i <= n_re; ++i) {
        for (int j = 0; j <= n_im; ++j) {
            cplx z{box.re_min + i * opt.seed_spacing, box.im_min + j * opt.seed_spacing};
            if (excluded(z)) continue;
            double last_step = std::numeric_limits<double>::infinity();
            std::optional<KernelPole> found;
            try {
                for (int it = 0; it < opt.max_iterations; ++it) {
                    const cplx f = j4(z);
                    if (std::abs(f) < opt.value_tolerance && last_step < opt.step_tolerance) {
                        found = KernelPole{z, std::abs(f), last_step};
                        break;
                    }
                    const cplx df = (j4(z + h) - j4(z - h)) / (2.0 * h);
                    if (df == cplx{0.0, 0.0}) break;
                    const cplx step = f / df;
                    z -= step;
                    last_step = std::abs(step);
                    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || excluded(z)) break;
                    // Let iterates wander a little outside the box before giving up.
                    const double slack = 2.0 * opt.seed_spacing;
                    if (z.real() < box.re_min - slack || z.real() > box.re_max + slack ||
                        z.imag() < box.im_min - slack || z.imag() > box.im_max + slack) {
                        break;
                    }
                }
            } catch (const BranchPointError&) {
                continue;
            }
            if (!found || !inside(found->energy) || excluded(found->energy)) continue;
            const bool duplicate = std::any_of(poles.begin(), poles.end(), [&](const KernelPole& q) {
                return std::abs(q.energy - found->energy) < opt.dedup_radius;
            });
            if (!duplicate) poles.push_back(*found);
        }
    }
    std::sort(poles.begin(), poles.end(), [](const KernelPole& x, const KernelPole& y) {
        return x.energy.real() != y.energy.real() ? x.energy.real() < y.energy.real()
                                                  : x.energy.imag() < y.energy.imag();
    });
    return poles;
}

}  // namespace resolvent
