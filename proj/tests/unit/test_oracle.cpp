#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "resolvent/eigenfunctions.hpp"
#include "resolvent/errors.hpp"
#include "resolvent/green_kernel.hpp"
#include "resolvent/oracle.hpp"
#include "resolvent/piecewise_engine.hpp"

using namespace resolvent;
using namespace resolvent::oracle;

TEST_CASE("RK4 reproduces sin on the free line") {
    const auto free = PiecewisePotential::free();
    const Trajectory t = integrate_schrodinger(free, ComplexEnergy{1.0}, 0.0, 1.0, 0.0, 3.0, 1e-3);
    double err = 0.0;
    for (std::size_t i = 0; i < t.r.size(); ++i) err = std::max(err, std::abs(t.value[i] - std::sin(t.r[i])));
    CHECK(err < 1e-8);
    CHECK(t.r.back() == 3.0);

    // up to pi with an aligned mesh (pi is not a multiple of 1e-3)
    const auto mesh = aligned_mesh(free, 0.0, std::numbers::pi, 1e-3);
    const Trajectory tp = integrate_schrodinger(free, ComplexEnergy{1.0}, 0.0, 1.0, mesh);
    err = 0.0;
    for (std::size_t i = 0; i < tp.r.size(); ++i) err = std::max(err, std::abs(tp.value[i] - std::sin(tp.r[i])));
    CHECK(err < 1e-8);
}

TEST_CASE("RK4 step contract") {
    const PiecewisePotential p = to_piecewise(SquareBarrier{5.0, 1.0005, 2.0});
    CHECK_THROWS_AS(integrate_schrodinger(p, ComplexEnergy{1.0}, 0.0, 1.0, 0.0, 3.0, 1e-3), ContractError);
    CHECK_THROWS_AS(integrate_schrodinger(p, ComplexEnergy{1.0}, 0.0, 1.0, 0.0, 3.0005, 1e-3), ContractError);
    CHECK_NOTHROW(integrate_schrodinger(p, ComplexEnergy{1.0}, 0.0, 1.0, 0.0, 3.0, 5e-4));
    const std::vector<double> straddle{0.9, 1.1};
    CHECK_THROWS_AS(integrate_schrodinger(p, ComplexEnergy{1.0}, 0.0, 1.0, straddle), ContractError);
}

TEST_CASE("closed-form waves agree with ODE re-integration") {
    const SquareBarrier p{5.0, 1.0, 2.0};
    for (cplx e : {cplx{1.0, 0.0}, cplx{7.0, 0.0}, cplx{1.0, 1.0}, cplx{3.0, -0.5}}) {
        const auto chi = chi_wave(p, e);
        CHECK(check_wave_ode(chi, 0.0, p.b() + 5.0, 1e-3).pass);
        // Omega from r = b + 5 inward, compared along the way and so also at a/2
        for (Direction d : {Direction::plus, Direction::minus}) {
            const auto rep = check_wave_ode(omega_wave(p, e, d), p.b() + 5.0, 0.0, 1e-3);
            CHECK(rep.pass);
        }
    }
    // the value at a/2 specifically
    const auto om = omega_wave(p, ComplexEnergy{1.0}, Direction::plus);
    const auto mesh = aligned_mesh(to_piecewise(p), p.b() + 5.0, 0.5 * p.a(), 1e-3);
    const Trajectory t = integrate_schrodinger(to_piecewise(p), ComplexEnergy{1.0}, eval_wave(om, p.b() + 5.0),
                                               eval_wave_derivative(om, p.b() + 5.0), mesh);
    CHECK(std::abs(t.value.back() - eval_wave(om, 0.5 * p.a())) < 1e-7 * std::abs(eval_wave(om, 0.5 * p.a())));
}

TEST_CASE("ODE oracle catches a wrong wave") {
    const SquareBarrier p{5.0, 1.0, 2.0};
    auto chi = chi_wave(p, ComplexEnergy{1.0});
    chi.mutable_regions()[2].minus *= 1.001;
    CHECK_FALSE(check_wave_ode(chi, 0.0, p.b() + 5.0, 1e-3).pass);
    CHECK_FALSE(check_wave_continuity(chi).pass);
}

TEST_CASE("finite-difference Hamiltonian") {
    const auto free = PiecewisePotential::free();
    const double e = 1.7;
    const double k = std::sqrt(e);
    auto residual = [&](double h) {
        std::vector<cplx> u;
        for (int j = 0; j * h <= 5.0; ++j) u.emplace_back(std::sin(k * j * h));
        const auto fd = apply_hamiltonian_fd(u, free, 0.0, h);
        double worst = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (!fd.flagged[j]) worst = std::max(worst, std::abs(fd.hu[j] - e * u[j]));
        }
        return worst;
    };
    const double r1 = residual(1e-2);
    const double r2 = residual(5e-3);
    CHECK(r1 < 1e-4);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));

    // chi of the barrier, collars around a and b excluded
    const SquareBarrier p{5.0, 1.0, 2.0};
    const auto chi = chi_wave(p, ComplexEnergy{e});
    const double h = 1e-3;
    std::vector<cplx> u;
    for (int j = 0; j * h <= 4.0; ++j) u.push_back(eval_wave(chi, j * h));
    const auto fd = apply_hamiltonian_fd(u, to_piecewise(p), 0.0, h);
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        scale = std::max(scale, std::abs(u[j]));
        if (!fd.flagged[j]) worst = std::max(worst, std::abs(fd.hu[j] - e * u[j]));
    }
    CHECK(worst / scale < 1e-6);
    CHECK(fd.flagged_count >= 2 + 2 * 3);
    CHECK(fd.flagged[1000]);  // r = a
    CHECK_FALSE(fd.flagged[1500]);

    const std::vector<double> kinks{3.0};
    const auto fd_kink = apply_hamiltonian_fd(u, to_piecewise(p), 0.0, h, kinks);
    CHECK(fd_kink.flagged[3000]);

    CHECK_THROWS_AS(apply_hamiltonian_fd(u, to_piecewise(p), 0.0, 0.1), ContractError);
}

TEST_CASE("test functions") {
    const TestFunction g(BumpKind::gaussian_bump, 3.0, 0.5);
    CHECK(g.value(3.0) == 1.0);
    CHECK(g.effective_support().first > 0.0);
    CHECK(g.value(g.effective_support().second) == doctest::Approx(1e-6).epsilon(1e-6));
    const TestFunction c(BumpKind::compact_polynomial_bump, 3.0, 1.0);
    CHECK(c.value(2.0) == 0.0);
    CHECK(c.value(4.5) == 0.0);
    // second derivative against a central difference
    for (const TestFunction* f : {&g, &c}) {
        for (double r : {2.3, 2.9, 3.4}) {
            const double h = 1e-4;
            const double fd = (f->value(r + h) - 2.0 * f->value(r) + f->value(r - h)) / (h * h);
            CHECK(f->second_derivative(r) == doctest::Approx(fd).epsilon(1e-5));
        }
    }
    CHECK_THROWS_AS(TestFunction(BumpKind::gaussian_bump, 1.0, 0.5), ContractError);
    CHECK_THROWS_AS(TestFunction(BumpKind::compact_polynomial_bump, 0.5, 1.0), ContractError);
}

TEST_CASE("derivative jump of one at r = s") {
    const SquareBarrier p{5.0, 1.0, 2.0};
    for (Direction d : {Direction::plus, Direction::minus}) {
        const GreenKernel g = make_kernel(p, ComplexEnergy{1.0}, d);
        for (double s : {0.5, 1.5, 4.0}) CHECK(check_jump(g, s).pass);
    }
    const GreenKernel gc = make_kernel(p, cplx{2.0, 0.7}, Direction::plus);
    CHECK(check_jump(gc, 1.2).max_residual < 1e-6);
    const GreenKernel g = make_kernel(p, ComplexEnergy{1.0}, Direction::plus);
    CHECK_THROWS_AS(check_jump(g, 1.0005), ContractError);
}

TEST_CASE("distributional equation") {
    const SquareBarrier p{3.0, 0.7, 1.6};
    for (double e : {0.8, 5.0}) {
        for (Direction d : {Direction::plus, Direction::minus}) {
            const GreenKernel g = make_kernel(p, ComplexEnergy{e}, d);
            for (double s : {0.35, 1.15, 3.6}) {
                const auto rep = check_distributional_equation(g, s, p.b() + 10.0);
                CHECK(rep.off_diagonal.pass);
                CHECK(rep.jump.pass);
                CHECK(rep.continuity.pass);
                CHECK(rep.combined.pass);
            }
        }
    }
    // continuity at r = s degrades linearly: |G(s+h) - G(s-h)| ~ h
    const GreenKernel g = make_kernel(p, ComplexEnergy{0.8}, Direction::plus);
    const double s = 1.15;
    const double d1 = std::abs(g(s + 1e-3, s) - g(s - 1e-3, s));
    const double d2 = std::abs(g(s + 5e-4, s) - g(s - 5e-4, s));
    CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("resolvent identity converges at second order") {
    const TestFunction f(BumpKind::gaussian_bump, 3.0, 0.5);
    const SquareBarrier p{5.0, 1.0, 2.0};
    const ComplexEnergy e{1.0, 1.0};
    const GreenKernel g = make_kernel(p, e, Direction::plus);
    const double r_max = default_r_max(to_piecewise(p), e, f.effective_support().second);
    const auto coarse = check_resolvent_identity(g, f, r_max, {1e-3, 1e-3, 80, 1e-4});
    const auto fine = check_resolvent_identity(g, f, r_max, {5e-4, 5e-4, 80, 1e-4});
    CHECK(coarse.pass);
    CHECK(fine.pass);
    CHECK(coarse.max_residual / fine.max_residual == doctest::Approx(4.0).epsilon(0.1));

    CHECK_THROWS_AS(check_resolvent_identity(g, f, 10.0), ContractError);
    const GreenKernel real = make_kernel(p, ComplexEnergy{1.0}, Direction::plus);
    CHECK_THROWS_AS(check_resolvent_identity(real, f, 100.0), ContractError);
}

TEST_CASE("adjoint identity with a compact bump") {
    const TestFunction f(BumpKind::compact_polynomial_bump, 2.5, 2.0);
    for (cplx e : {cplx{1.0, 1.0}, cplx{4.0, -0.5}}) {
        const SquareBarrier p{5.0, 1.0, 2.0};
        const GreenKernel g = make_kernel(p, e, half_plane_direction(e));
        const auto rep = check_adjoint_identity(g, f, 1e-3, 60, 1e-8);
        CHECK(rep.pass);
    }
}

TEST_CASE("oracle verdicts do not depend on the kernel backend") {
    const SquareBarrier p{5.0, 1.0, 2.0};
    const TestFunction f(BumpKind::gaussian_bump, 3.0, 0.5);
    const ComplexEnergy e{1.0, -1.0};
    const GreenKernel a = make_kernel(p, e, Direction::minus);
    const GreenKernel b = make_kernel(to_piecewise(p), e, Direction::minus);
    const double r_max = default_r_max(to_piecewise(p), e, f.effective_support().second);
    const auto ra = check_resolvent_identity(a, f, r_max, {1e-3, 1e-3, 40, 1e-4});
    const auto rb = check_resolvent_identity(b, f, r_max, {1e-3, 1e-3, 40, 1e-4});
    CHECK(ra.pass == rb.pass);
    CHECK(ra.max_residual == doctest::Approx(rb.max_residual).epsilon(1e-6));
    const GreenKernel ja = make_kernel(p, ComplexEnergy{1.0}, Direction::plus);
    const GreenKernel jb = make_kernel(to_piecewise(p), ComplexEnergy{1.0}, Direction::plus);
    CHECK(check_jump(ja, 1.5).max_residual == doctest::Approx(check_jump(jb, 1.5).max_residual).epsilon(1e-2));
}

TEST_CASE("report pass flag") {
    CHECK(make_report("x", 1e-7, 1e-6, 1).pass);
    CHECK_FALSE(make_report("x", 1e-5, 1e-6, 1).pass);
    CHECK_FALSE(make_report("x", std::nan(""), 1e-6, 1).pass);
}
