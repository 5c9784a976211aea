#include <doctest.h>

#include <cmath>
#include <random>

#include "reference.hpp"
#include "resolvent/eigenfunctions.hpp"
#include "resolvent/errors.hpp"
#include "resolvent/green_kernel.hpp"
#include "resolvent/piecewise_engine.hpp"

using namespace resolvent;
using reference::I;
using reference::relative_gap;

TEST_CASE("free outgoing Green function") {
    const SquareBarrier free{0.0, 1.0, 2.0};
    const KernelSample g = formal_green(free, 1.0, 1.0, 2.0, Direction::plus);
    // -sin(1) e^{2i}, evaluated independently
    const cplx expected = -std::sin(1.0) * cplx{std::cos(2.0), std::sin(2.0)};
    CHECK(std::abs(g.value - expected) < 1e-14);
    CHECK(std::abs(g.value - cplx{0.35018, -0.76514}) < 1e-5);
    CHECK(g.provenance == Provenance::formal_plus);

    const KernelSample gm = formal_green(free, 1.0, 1.0, 2.0, Direction::minus);
    CHECK(std::abs(gm.value - std::conj(g.value)) < 1e-14);
    CHECK(gm.provenance == Provenance::formal_minus);

    for (double e : {0.3, 2.0, 9.0}) {
        const double k = std::sqrt(e);
        for (double r : {0.2, 1.5, 4.0}) {
            for (double s : {0.7, 3.3}) {
                const double lo = std::min(r, s);
                const double hi = std::max(r, s);
                const cplx closed = -std::sin(k * lo) * std::exp(I * k * hi) / k;
                CHECK(std::abs(formal_green(free, e, r, s, Direction::plus).value - closed) < 1e-12);
            }
        }
    }
}

TEST_CASE("kernel regularity, symmetry and reflection") {
    const SquareBarrier p{5.0, 1.0, 2.0};
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (cplx e : {cplx{1.0, 0.3}, cplx{1.0, 1.0}, cplx{6.5, 0.3}, cplx{-2.0, 1.0}}) {
        for (int i = 0; i < 50; ++i) {
            const double r = u(rng);
            const double s = u(rng);
            const cplx g = resolvent_kernel(p, e, r, s).value;
            CHECK(g == resolvent_kernel(p, e, s, r).value);
            const cplx gc = resolvent_kernel(p, std::conj(e), r, s).value;
            CHECK(relative_gap(gc, std::conj(g)) < 1e-10);
        }
        CHECK(resolvent_kernel(p, e, 0.0, 1.3).value == cplx{0.0, 0.0});
        CHECK(resolvent_kernel(p, std::conj(e), 2.7, 0.0).value == cplx{0.0, 0.0});
    }
    CHECK(formal_green(p, 1.0, 0.0, 2.5, Direction::plus).value == cplx{0.0, 0.0});
    CHECK(formal_green(p, 1.0, 0.0, 2.5, Direction::minus).value == cplx{0.0, 0.0});
}

TEST_CASE("resolvent kernel picks the half-plane solution") {
    const SquareBarrier p{5.0, 1.0, 2.0};
    const cplx up{2.0, 0.5};
    const GreenKernel gp = make_kernel(p, up, Direction::plus);
    CHECK(resolvent_kernel(p, up, 0.4, 3.0).value == gp(0.4, 3.0));
    const GreenKernel gm = make_kernel(p, std::conj(up), Direction::minus);
    CHECK(resolvent_kernel(p, std::conj(up), 0.4, 3.0).value == gm(0.4, 3.0));
    CHECK(resolvent_kernel(p, up, 0.4, 3.0).provenance == Provenance::resolvent_kernel);
}

TEST_CASE("kernel errors") {
    const SquareBarrier p{5.0, 1.0, 2.0};
    CHECK_THROWS_AS(resolvent_kernel(p, ComplexEnergy{1.0}, 0.5, 1.0), ContractError);
    CHECK_THROWS_AS(resolvent_kernel(p, cplx{0.0, 1e-14}, 0.5, 1.0), BranchPointError);
    CHECK_THROWS_AS(resolvent_kernel(p, cplx{1.0, 1.0}, -0.5, 1.0), DomainError);
    CHECK_THROWS_AS(formal_green(p, 0.0, 0.5, 1.0, Direction::plus), DomainError);
    CHECK_THROWS_AS(formal_green(p, -1.0, 0.5, 1.0, Direction::plus), DomainError);
    CHECK_THROWS_AS(formal_green(p, 5.0, 0.5, 1.0, Direction::plus), BranchPointError);
    CHECK_THROWS_AS(boundary_limit(p, 1.0, 0.5, 1.0, Direction::plus, 0.5), ContractError);
    CHECK_THROWS_AS(boundary_limit(p, 1.0, 0.5, 1.0, Direction::plus, 0.0), ContractError);
}

TEST_CASE("engine and closed-form kernels coincide") {
    const SquareBarrier p{3.0, 0.6, 1.8};
    const auto pw = to_piecewise(p);
    for (cplx e : {cplx{1.0, 0.3}, cplx{4.0, -1.0}, cplx{2.0, 0.0}}) {
        for (Direction d : {Direction::plus, Direction::minus}) {
            const GreenKernel a = make_kernel(p, e, d);
            const GreenKernel b = make_kernel(pw, e, d);
            for (double r = 0.0; r < 5.0; r += 0.23) {
                for (double s = 0.0; s < 5.0; s += 0.31) {
                    REQUIRE(relative_gap(a(r, s), b(r, s)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("boundary limits reproduce the formal Green functions") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int done = 0;
    while (done < 20) {
        const double v0 = -5.0 + 15.0 * u(rng);
        const double a = 0.2 + 2.0 * u(rng);
        const SquareBarrier p{v0, a, a + 0.2 + 2.0 * u(rng)};
        const double e = 0.1 + 12.0 * u(rng);
        if (std::fabs(e - v0) < 0.05) continue;
        ++done;
        const double r = (p.b() + 3.0) * u(rng);
        const double s = (p.b() + 3.0) * u(rng);
        const double mu0 = std::min(1e-2, 0.1 * e);
        for (Direction d : {Direction::plus, Direction::minus}) {
            const LimitStudy st = boundary_limit(p, e, r, s, d, mu0);
            REQUIRE(st.converged);
            CHECK(st.halvings() == st.samples.size());
            CHECK(st.mu_sequence.back() < 1e-8);
            for (std::size_t k = 1; k < st.mu_sequence.size(); ++k) CHECK(st.mu_sequence[k] < st.mu_sequence[k - 1]);
            CHECK(std::abs(st.extrapolated - formal_green(p, e, r, s, d).value) < 1e-8);
        }
        const cplx plus = boundary_limit(p, e, r, s, Direction::plus, mu0).extrapolated;
        const cplx minus = boundary_limit(p, e, r, s, Direction::minus, mu0).extrapolated;
        CHECK(std::abs(plus - std::conj(minus)) < 1e-8);
    }
}

TEST_CASE("boundary limit converges at first order") {
    const SquareBarrier p{5.0, 1.0, 2.0};
    const LimitStudy st = boundary_limit(p, 1.0, 0.5, 3.0, Direction::plus, 0.01);
    const cplx formal = formal_green(p, 1.0, 0.5, 3.0, Direction::plus).value;
    // |G(E + i mu) - G+(E)| halves with every halving of mu
    for (std::size_t k = 4; k + 8 < st.samples.size(); ++k) {
        const double ratio = std::abs(st.samples[k + 1] - formal) / std::abs(st.samples[k] - formal);
        CHECK(ratio == doctest::Approx(0.5).epsilon(0.02));
    }
    CHECK(std::abs(st.richardson - formal) < std::abs(st.extrapolated - formal));
}

TEST_CASE("boundary limit of an identically zero column") {
    const SquareBarrier p{5.0, 1.0, 2.0};
    const LimitStudy st = boundary_limit(p, 2.0, 0.0, 1.5, Direction::minus, 0.1);
    CHECK(st.converged);
    CHECK(st.extrapolated == cplx{0.0, 0.0});
    CHECK(st.mu_sequence.back() < 1e-8);
}

TEST_CASE("non-convergence surfaces the partial study") {
    const SquareBarrier p{5.0, 1.0, 2.0};
    LimitOptions strict;
    strict.max_halvings = 5;
    try {
        (void)boundary_limit(p, 1.0, 0.5, 3.0, Direction::plus, 0.01, strict);
        FAIL("expected NonConvergenceError");
    } catch (const NonConvergenceError& err) {
        CHECK(err.study().halvings() == 5);
        CHECK_FALSE(err.study().converged);
    }
}

TEST_CASE("kernel poles") {
    CHECK(find_kernel_poles(SquareBarrier{0.0, 1.0, 2.0}, {-5.0, 5.0, -5.0, 5.0}).empty());

    const SquareBarrier p{5.0, 1.0, 2.0};
    const auto poles = find_kernel_poles(p, {0.5, 30.0, -8.0, -0.01});
    REQUIRE(poles.size() >= 2);
    const auto pw = to_piecewise(p);
    for (const auto& pole : poles) {
        CHECK(std::abs(chi_coefficients(p, pole.energy)[4]) < 1e-10);
        CHECK(pole.last_step < 1e-12);
        // resonances sit below the real axis
        CHECK(pole.energy.imag() < 0.0);
        // the transfer-matrix route sees the same zero of J4
        CHECK(std::abs(chi_outer_coefficients(pw, pole.energy).second) < 1e-9);
    }
    // the upper half-plane of the physical sheet is pole-free for a barrier
    CHECK(find_kernel_poles(p, {-5.0, 30.0, 0.01, 5.0}).empty());

    // a well has bound states on the negative axis
    const SquareBarrier well{-20.0, 0.5, 2.0};
    const auto bound = find_kernel_poles(well, {-25.0, -0.1, -1.0, 1.0});
    REQUIRE_FALSE(bound.empty());
    for (const auto& pole : bound) {
        CHECK(std::abs(chi_coefficients(well, pole.energy)[4]) < 1e-10);
        CHECK(std::abs(pole.energy.imag()) < 1e-8);
    }
}

TEST_CASE("pole scan seeds never sit on branch points") {
    // the default 0.25 grid over [-5, 5]^2 hits E = 0 and E = V0 exactly
    const SquareBarrier p{1.0, 1.0, 2.0};
    CHECK_NOTHROW((void)find_kernel_poles(p, {-5.0, 5.0, -5.0, 5.0}));
}
