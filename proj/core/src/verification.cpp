#include "resolvent/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "resolvent/eigenfunctions.hpp"
#include "resolvent/piecewise_engine.hpp"

namespace resolvent {
namespace {

constexpr cplx kI{0.0, 1.0};

double relative_gap(cplx x, cplx y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return scale > 0.0 ? std::abs(x - y) / scale : 0.0;
}

struct Accumulator {
    double worst = 0.0;
    std::size_t samples = 0;
    void add(double v) {
        worst = std::isnan(v) ? v : (std::isnan(worst) ? worst : std::max(worst, v));
        ++samples;
    }
};

}  // namespace

GreenKernel closed_form_kernel(const SquareBarrier& p, ComplexEnergy e, Direction d) { return make_kernel(p, e, d); }

KernelFactory corrupted_j4_kernel(double relative_error) {
    return [relative_error](const SquareBarrier& p, ComplexEnergy e, Direction d) {
        CoefficientSet j = chi_coefficients(p, e);
        j.c[3] *= 1.0 + relative_error;
        const cplx k = branch_sqrt(e.value());
        const cplx w = d == Direction::plus ? 2.0 * kI * k * j[4] : -2.0 * kI * k * j[3];
        return GreenKernel{KernelFactors{assemble_wave(p, e, j), omega_wave(p, e, d), w, d}};
    };
}

RandomInstance sample_instance(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double v0 = -5.0 + 15.0 * unit(rng);
    double a = 0.0;
    double b = 0.0;
    do {
        a = 5.0 * unit(rng);
        b = 5.0 * unit(rng);
        if (a > b) std::swap(a, b);
    } while (a < 0.1 || b - a < 0.1);
    const double e_hi = std::max(2.0 * v0 + 5.0, 5.0);
    double e = 0.0;
    do {
        e = 0.1 + (e_hi - 0.1) * unit(rng);
    } while (std::fabs(e - v0) < 0.05);
    return {SquareBarrier{v0, a, b}, e};
}

VerificationReport run_verification(const VerificationConfig& config, const KernelFactory& factory) {
    std::mt19937_64 rng(config.seed);
    std::vector<RandomInstance> instances{{config.barrier, config.energy}};
    for (int i = 0; i < config.random_instances; ++i) instances.push_back(sample_instance(rng));

    Accumulator continuity;
    Accumulator wronsk;
    Accumulator jump;
    Accumulator schrodinger;
    Accumulator engine;
    Accumulator limit;
    constexpr std::array kDirections{Direction::plus, Direction::minus};

    for (const auto& inst : instances) {
        const SquareBarrier& p = inst.barrier;
        const ComplexEnergy e{inst.energy};
        const double a = p.a();
        const double b = p.b();
        const PiecewisePotential pw = to_piecewise(p);
        const PiecewiseWave chi = chi_wave(p, e);
        const std::array<double, 3> interior{0.5 * a, 0.5 * (a + b), b + 1.0};

        continuity.add(oracle::check_wave_continuity(chi).max_residual);
        schrodinger.add(oracle::check_wave_ode(chi, 0.0, b + 5.0, 1e-3).max_residual);

        for (Direction d : kDirections) {
            const PiecewiseWave omega = omega_wave(p, e, d);
            continuity.add(oracle::check_wave_continuity(omega).max_residual);
            schrodinger.add(oracle::check_wave_ode(omega, b + 5.0, 0.0, 1e-3).max_residual);
            const cplx w_closed = wronskian_closed_form(p, e, d);
            for (double r : interior) wronsk.add(relative_gap(wronskian(chi, omega, r), w_closed));

            const GreenKernel g = factory(p, e, d);
            for (double s : interior) {
                const auto dist = oracle::check_distributional_equation(g, s, b + 10.0);
                jump.add(dist.jump.max_residual);
                schrodinger.add(dist.off_diagonal.max_residual);
                continuity.add(dist.continuity.max_residual);
            }

            const GreenKernel closed = make_kernel(p, e, d);
            const GreenKernel eng = make_kernel(pw, e, d);
            double scale = 0.0;
            double gap = 0.0;
            for (int i = 0; i <= 12; ++i) {
                for (int j = 0; j <= 12; ++j) {
                    const double r = (b + 3.0) * i / 12.0;
                    const double s = (b + 3.0) * j / 12.0;
                    const cplx x = closed(r, s);
                    gap = std::max(gap, std::abs(x - eng(r, s)));
                    scale = std::max(scale, std::abs(x));
                }
            }
            engine.add(scale > 0.0 ? gap / scale : gap);

            const double mu0 = std::min(1e-2, 0.1 * inst.energy);
            for (const auto& [r, s] : std::array<std::pair<double, double>, 3>{
                     {{0.5 * a, b + 1.0}, {0.5 * (a + b), 0.5 * (a + b) + 0.1}, {b + 2.0, 0.3 * a}}}) {
                try {
                    const LimitStudy study = boundary_limit(p, inst.energy, r, s, d, mu0);
                    const cplx formal = factory(p, e, d)(r, s);
                    limit.add(std::abs(study.extrapolated - formal));
                } catch (const NonConvergenceError&) {
                    limit.add(std::numeric_limits<double>::infinity());
                }
            }
        }
    }

    // Resolvent identity on the configured barrier in both half-planes.
    Accumulator identity;
    const oracle::TestFunction bump(oracle::BumpKind::gaussian_bump, 3.0, 0.5);
    for (const cplx ez : {config.complex_energy, std::conj(config.complex_energy)}) {
        const ComplexEnergy e{ez};
        const GreenKernel g = factory(config.barrier, e, half_plane_direction(e));
        const double r_max = oracle::default_r_max(to_piecewise(config.barrier), e, bump.effective_support().second);
        identity.add(oracle::check_resolvent_identity(g, bump, r_max, {1e-3, 1e-3, 60, 1e-4}).max_residual);
    }

    VerificationReport rep{config.barrier, config.energy, config.seed, {}, true};
    auto push = [&](const char* name, const Accumulator& acc, double tol) {
        rep.checks.push_back(oracle::make_report(name, acc.worst, tol, acc.samples));
        rep.pass = rep.pass && rep.checks.back().pass;
    };
    push("continuity", continuity, 1e-10);
    push("wronskian", wronsk, 1e-10);
    push("jump", jump, 1e-6);
    push("schrodinger_residual", schrodinger, 1e-7);
    push("resolvent_identity", identity, 1e-4);
    push("engine_equivalence", engine, 1e-12);
    push("limit_equivalence", limit, 1e-8);
    return rep;
}

}  // namespace resolvent
