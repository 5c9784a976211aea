#include "resolvent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "resolvent/errors.hpp"

namespace resolvent::oracle {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Simpson on [x0, x1] with an even number of panels no wider than step.
template <class F>
cplx simpson(const F& fn, double x0, double x1, double step) {
    const double len = x1 - x0;
    if (len <= 0.0) return 0.0;
    auto n = static_cast<long>(std::ceil(len / step));
    n = std::max<long>(2, n + (n % 2));
    const double h = len / static_cast<double>(n);
    cplx sum = fn(x0) + fn(x1);
    for (long j = 1; j < n; ++j) {
        const double x = x0 + static_cast<double>(j) * h;
        sum += (j % 2 == 1 ? 4.0 : 2.0) * fn(x);
    }
    return sum * (h / 3.0);
}

/// Integral over [lo, hi] of G(r, s) q(s, V(s)), split at r and at every breakpoint.
template <class Q>
cplx integrate_kernel(const GreenKernel& g, const Q& q, double r, double lo, double hi, double step) {
    std::vector<double> cuts{lo, hi};
    for (double bp : g.potential().breakpoints()) {
        if (bp > lo && bp < hi) cuts.push_back(bp);
    }
    if (r > lo && r < hi) cuts.push_back(r);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    cplx total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double x0 = cuts[i];
        const double x1 = cuts[i + 1];
        // V is constant on the open sub-interval; take it from the midpoint so
        // the end nodes sitting on breakpoints use the correct side.
        const double v = g.potential().value_at(0.5 * (x0 + x1));
        total += simpson([&](double s) { return g(r, s) * q(s, v); }, x0, x1, step);
    }
    return total;
}

double near_breakpoint_distance(const PiecewisePotential& p, double r) {
    double d = std::numeric_limits<double>::infinity();
    for (double bp : p.breakpoints()) d = std::min(d, std::fabs(r - bp));
    return d;
}

/// Check points spread over [lo, hi], skipping collars around breakpoints.
std::pair<std::vector<double>, std::size_t> check_points(const PiecewisePotential& p, double lo, double hi,
                                                         int count, double collar) {
    std::vector<double> pts;
    std::size_t excluded = 0;
    const double delta = (hi - lo) / count;
    for (int j = 0; j < count; ++j) {
        const double r = lo + (j + 0.5) * delta;
        if (near_breakpoint_distance(p, r) <= collar || r - collar <= 0.0) {
            ++excluded;
            continue;
        }
        pts.push_back(r);
    }
    return {pts, excluded};
}

double imag_sqrt_energy(ComplexEnergy e) { return std::fabs(branch_sqrt(e.value()).value().imag()); }

}  // namespace

ResidualReport make_report(std::string name, double max_residual, double tolerance, std::size_t samples,
                           std::size_t excluded) {
    ResidualReport rep;
    rep.name = std::move(name);
    rep.samples = samples;
    rep.excluded = excluded;
    rep.max_residual = max_residual;
    rep.tolerance = tolerance;
    rep.pass = max_residual <= tolerance;  // false for NaN
    return rep;
}

// ---------------------------------------------------------------------------

Trajectory integrate_schrodinger(const PiecewisePotential& p, ComplexEnergy e, cplx y0, cplx dy0,
                                 std::span<const double> mesh) {
    if (mesh.size() < 2) throw ContractError("integrate_schrodinger: mesh needs at least two nodes");
    const cplx energy = e.value();
    Trajectory out;
    out.r.reserve(mesh.size());
    out.value.reserve(mesh.size());
    out.derivative.reserve(mesh.size());
    out.r.push_back(mesh[0]);
    out.value.push_back(y0);
    out.derivative.push_back(dy0);
    cplx y = y0;
    cplx z = dy0;
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
        const double x0 = mesh[i];
        const double x1 = mesh[i + 1];
        const double lo = std::min(x0, x1);
        const double hi = std::max(x0, x1);
        const double slack = 1e-9 * (hi - lo);
        for (double bp : p.breakpoints()) {
            if (bp > lo + slack && bp < hi - slack) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "integrate_schrodinger: cell [" << lo << ", " << hi << "] straddles breakpoint " << bp;
                throw ContractError(msg.str());
            }
        }
        if (lo < 0.0) throw DomainError("integrate_schrodinger: negative radius");
        const cplx c = p.value_at(0.5 * (lo + hi)) - energy;  // y'' = (V - E) y
        const double h = x1 - x0;
        const cplx k1y = z;
        const cplx k1z = c * y;
        const cplx k2y = z + 0.5 * h * k1z;
        const cplx k2z = c * (y + 0.5 * h * k1y);
        const cplx k3y = z + 0.5 * h * k2z;
        const cplx k3z = c * (y + 0.5 * h * k2y);
        const cplx k4y = z + h * k3z;
        const cplx k4z = c * (y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        out.r.push_back(x1);
        out.value.push_back(y);
        out.derivative.push_back(z);
    }
    return out;
}

Trajectory integrate_schrodinger(const PiecewisePotential& p, ComplexEnergy e, cplx y0, cplx dy0, double r_from,
                                 double r_to, double step) {
    if (!(step > 0.0)) throw ContractError("integrate_schrodinger: step must be positive");
    const double span = std::fabs(r_to - r_from);
    const double steps = span / step;
    const auto n = static_cast<long>(std::llround(steps));
    if (n < 1 || std::fabs(steps - static_cast<double>(n)) > 1e-9 * std::max(1.0, steps)) {
        throw ContractError("integrate_schrodinger: step does not divide the interval");
    }
    const double dir = r_to >= r_from ? 1.0 : -1.0;
    std::vector<double> mesh(static_cast<std::size_t>(n) + 1);
    for (long j = 0; j <= n; ++j) mesh[static_cast<std::size_t>(j)] = r_from + dir * static_cast<double>(j) * step;
    mesh.back() = r_to;
    const double lo = std::min(r_from, r_to);
    const double hi = std::max(r_from, r_to);
    for (double bp : p.breakpoints()) {
        if (bp <= lo || bp >= hi) continue;
        const double idx = std::fabs(bp - r_from) / step;
        const auto j = static_cast<long>(std::llround(idx));
        if (std::fabs(idx - static_cast<double>(j)) > 1e-9 * std::max(1.0, idx)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "integrate_schrodinger: breakpoint " << bp << " is not on the step grid";
            throw ContractError(msg.str());
        }
        mesh[static_cast<std::size_t>(j)] = bp;
    }
    return integrate_schrodinger(p, e, y0, dy0, mesh);
}

std::vector<double> aligned_mesh(const PiecewisePotential& p, double r_from, double r_to, double max_step) {
    if (!(max_step > 0.0)) throw ContractError("aligned_mesh: step must be positive");
    const double lo = std::min(r_from, r_to);
    const double hi = std::max(r_from, r_to);
    std::vector<double> cuts{lo};
    for (double bp : p.breakpoints()) {
        if (bp > lo && bp < hi) cuts.push_back(bp);
    }
    cuts.push_back(hi);
    std::vector<double> mesh{lo};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double len = cuts[i + 1] - cuts[i];
        const auto n = std::max<long>(1, static_cast<long>(std::ceil(len / max_step - 1e-9)));
        for (long j = 1; j < n; ++j) mesh.push_back(cuts[i] + len * static_cast<double>(j) / static_cast<double>(n));
        mesh.push_back(cuts[i + 1]);
    }
    if (r_to < r_from) std::reverse(mesh.begin(), mesh.end());
    return mesh;
}

ResidualReport check_wave_ode(const PiecewiseWave& w, double r_from, double r_to, double step, double tolerance) {
    const auto mesh = aligned_mesh(w.potential(), r_from, r_to, step);
    const Side start_side = r_to >= r_from ? Side::right : Side::left;
    const Trajectory t = integrate_schrodinger(w.potential(), w.energy(), w.value(r_from, start_side),
                                               w.derivative(r_from, start_side), mesh);
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < t.r.size(); ++i) {
        const cplx ref = w.value(t.r[i]);
        err = std::max(err, std::abs(t.value[i] - ref));
        scale = std::max(scale, std::abs(ref));
    }
    return make_report("wave_ode", scale > 0.0 ? err / scale : err, tolerance, t.r.size());
}

// ---------------------------------------------------------------------------

FdApplication apply_hamiltonian_fd(std::span<const cplx> u, const PiecewisePotential& p, double r0, double step,
                                   std::span<const double> kinks, int collar) {
    if (!(step > 0.0)) throw ContractError("apply_hamiltonian_fd: step must be positive");
    if (step > p.min_width() / 16.0) {
        throw ContractError("apply_hamiltonian_fd: grid too coarse for the narrowest region");
    }
    const std::size_t n = u.size();
    FdApplication out;
    out.hu.assign(n, cplx{kNaN, kNaN});
    out.flagged.assign(n, true);
    out.flagged_count = n;
    const double inv_h2 = 1.0 / (step * step);
    const double reach = collar * step;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double r = r0 + static_cast<double>(j) * step;
        bool near = near_breakpoint_distance(p, r) < reach;
        for (double k : kinks) near = near || std::fabs(r - k) < reach;
        if (near) continue;
        out.hu[j] = -(u[j + 1] - 2.0 * u[j] + u[j - 1]) * inv_h2 + p.value_at(r) * u[j];
        out.flagged[j] = false;
        --out.flagged_count;
    }
    return out;
}

// ---------------------------------------------------------------------------

TestFunction::TestFunction(BumpKind kind, double center, double width) : kind_(kind), center_(center), width_(width) {
    if (!(width > 0.0) || !(center > 0.0) || !std::isfinite(center) || !std::isfinite(width)) {
        throw ContractError("test function needs positive center and width");
    }
    if (kind == BumpKind::compact_polynomial_bump) {
        if (center - width < 0.0) throw ContractError("compact bump must be supported in [0, inf)");
    } else {
        constexpr double kOriginTolerance = 1e-5;
        if (std::fabs(value(0.0)) > kOriginTolerance || std::fabs(first_derivative(0.0)) > kOriginTolerance ||
            std::fabs(second_derivative(0.0)) > kOriginTolerance) {
            throw ContractError("gaussian bump does not vanish at the origin");
        }
    }
}

double TestFunction::value(double r) const {
    const double x = (r - center_) / width_;
    if (kind_ == BumpKind::gaussian_bump) return std::exp(-0.5 * x * x);
    if (std::fabs(x) >= 1.0) return 0.0;
    const double t = 1.0 - x * x;
    return t * t * t * t;
}

double TestFunction::first_derivative(double r) const {
    const double x = (r - center_) / width_;
    if (kind_ == BumpKind::gaussian_bump) return -x / width_ * std::exp(-0.5 * x * x);
    if (std::fabs(x) >= 1.0) return 0.0;
    const double t = 1.0 - x * x;
    return -8.0 * x * t * t * t / width_;
}

double TestFunction::second_derivative(double r) const {
    const double x = (r - center_) / width_;
    const double w2 = width_ * width_;
    if (kind_ == BumpKind::gaussian_bump) return (x * x - 1.0) / w2 * std::exp(-0.5 * x * x);
    if (std::fabs(x) >= 1.0) return 0.0;
    const double t = 1.0 - x * x;
    return (-8.0 * t * t * t + 48.0 * x * x * t * t) / w2;
}

std::pair<double, double> TestFunction::effective_support() const {
    if (kind_ == BumpKind::compact_polynomial_bump) return {center_ - width_, center_ + width_};
    // exp(-x^2/2) = 1e-6
    const double half = std::sqrt(2.0 * std::log(1e6)) * width_;
    return {std::max(0.0, center_ - half), center_ + half};
}

std::pair<double, double> TestFunction::integration_support() const {
    if (kind_ == BumpKind::compact_polynomial_bump) return {center_ - width_, center_ + width_};
    return {std::max(0.0, center_ - 9.0 * width_), center_ + 9.0 * width_};
}

cplx apply_kernel(const GreenKernel& g, const TestFunction& f, double r, double r_max, double quad_step) {
    const auto [lo, hi] = f.integration_support();
    return integrate_kernel(g, [&](double s, double) { return cplx{f.value(s)}; }, r, lo, std::min(hi, r_max),
                            quad_step);
}

double default_r_max(const PiecewisePotential& p, ComplexEnergy e, double support_edge) {
    const double outer = std::max(p.breakpoints().empty() ? 0.0 : p.breakpoints().back(), support_edge);
    const double im = imag_sqrt_energy(e);
    return outer + std::max(20.0, im > 0.0 ? 20.0 / im : std::numeric_limits<double>::infinity());
}

ResidualReport check_resolvent_identity(const GreenKernel& g, const TestFunction& f, double r_max,
                                        const IdentityOptions& opt) {
    const ComplexEnergy e = g.energy();
    if (e.imag() == 0.0) throw ContractError("check_resolvent_identity needs Im E != 0");
    const auto [lo, hi] = f.effective_support();
    if (imag_sqrt_energy(e) * (r_max - hi) < 20.0) {
        throw ContractError("check_resolvent_identity: r_max too small for negligible tail truncation");
    }
    const double h = opt.grid_step;
    if (h > g.potential().min_width() / 16.0) {
        throw ContractError("check_resolvent_identity: grid too coarse for the narrowest region");
    }
    const auto [pts, excluded] = check_points(g.potential(), lo, hi, opt.check_points, 2.0 * h);
    const cplx energy = e.value();
    double worst = 0.0;
    double f_scale = 0.0;
    for (double r : pts) {
        const cplx um = apply_kernel(g, f, r - h, r_max, opt.quad_step);
        const cplx u0 = apply_kernel(g, f, r, r_max, opt.quad_step);
        const cplx up = apply_kernel(g, f, r + h, r_max, opt.quad_step);
        const cplx hu = -(up - 2.0 * u0 + um) / (h * h) + g.potential().value_at(r) * u0;
        const double fr = f.value(r);
        worst = std::max(worst, std::abs(energy * u0 - hu - fr));
        f_scale = std::max(f_scale, std::fabs(fr));
    }
    return make_report("resolvent_identity", worst / f_scale, opt.tolerance, pts.size(), excluded);
}

ResidualReport check_adjoint_identity(const GreenKernel& g, const TestFunction& f, double quad_step,
                                      int check_points_count, double tolerance) {
    const cplx energy = g.energy().value();
    const auto [lo, hi] = f.effective_support();
    const auto [qlo, qhi] = f.integration_support();
    const auto [pts, excluded] = check_points(g.potential(), lo, hi, check_points_count, 0.0);
    auto source = [&](double s, double v) { return (energy - v) * f.value(s) + f.second_derivative(s); };
    double worst = 0.0;
    double f_scale = 0.0;
    for (double r : pts) {
        const cplx back = integrate_kernel(g, source, r, qlo, qhi, quad_step);
        worst = std::max(worst, std::abs(back - f.value(r)));
        f_scale = std::max(f_scale, std::fabs(f.value(r)));
    }
    return make_report("adjoint_identity", worst / f_scale, tolerance, pts.size(), excluded);
}

// ---------------------------------------------------------------------------

namespace {

/// Largest sampling reach on `side` of x that stays inside x's region.
double region_reach(const PiecewisePotential& p, double x, Side side) {
    constexpr double kMaxReach = 0.3;
    double limit = kMaxReach;
    if (side == Side::left) {
        double prev = 0.0;
        for (double bp : p.breakpoints()) {
            if (bp < x) prev = bp;
        }
        limit = std::min(limit, 0.9 * (x - prev));
    } else {
        for (double bp : p.breakpoints()) {
            if (bp > x) {
                limit = std::min(limit, 0.9 * (bp - x));
                break;
            }
        }
    }
    return limit;
}

void require_clear_of_breakpoints(const PiecewisePotential& p, double s) {
    if (!(s > 1e-3) || near_breakpoint_distance(p, s) < 1e-3) {
        throw ContractError("source point must be in (0, inf) and at least 1e-3 from every breakpoint");
    }
}

}  // namespace

ResidualReport check_jump(const GreenKernel& g, double s, double tolerance) {
    require_clear_of_breakpoints(g.potential(), s);
    auto column = [&](double r) { return g(r, s); };
    const auto left = one_sided_limit(column, s, Side::left, region_reach(g.potential(), s, Side::left));
    const auto right = one_sided_limit(column, s, Side::right, region_reach(g.potential(), s, Side::right));
    const cplx jump = right.derivative - left.derivative;
    return make_report("jump", std::abs(jump - 1.0), tolerance, 2);
}

ResidualReport check_wave_continuity(const PiecewiseWave& w, double tolerance) {
    double worst = 0.0;
    for (double bp : w.potential().breakpoints()) {
        const cplx vl = w.value(bp, Side::left);
        const cplx vr = w.value(bp, Side::right);
        const cplx dl = w.derivative(bp, Side::left);
        const cplx dr = w.derivative(bp, Side::right);
        worst = std::max(worst, std::abs(vl - vr) / (1.0 + std::abs(vl)));
        worst = std::max(worst, std::abs(dl - dr) / (1.0 + std::abs(dl)));
    }
    return make_report("continuity", worst, tolerance, w.potential().breakpoints().size());
}

DistributionalReport check_distributional_equation(const GreenKernel& g, double s, double r_max, double ode_step) {
    const PiecewisePotential& p = g.potential();
    require_clear_of_breakpoints(p, s);
    if (!(r_max > s)) throw ContractError("check_distributional_equation: r_max must exceed s");
    DistributionalReport rep;

    // r -> G(r, s) solves the homogeneous equation on (0, s) and (s, r_max).
    double off = 0.0;
    std::size_t nodes = 0;
    auto compare = [&](const std::vector<double>& mesh, cplx y0, cplx dy0) {
        const Trajectory t = integrate_schrodinger(p, g.energy(), y0, dy0, mesh);
        double err = 0.0;
        double scale = 0.0;
        for (std::size_t i = 0; i < t.r.size(); ++i) {
            const cplx ref = g(t.r[i], s);
            err = std::max(err, std::abs(t.value[i] - ref));
            scale = std::max(scale, std::abs(ref));
        }
        nodes += t.r.size();
        off = std::max(off, scale > 0.0 ? err / scale : err);
    };
    compare(aligned_mesh(p, 0.0, s, ode_step), g(0.0, s), g.d_dr(0.0, s, Side::right));
    compare(aligned_mesh(p, s, r_max, ode_step), g(s, s), g.d_dr(s, s, Side::right));
    rep.off_diagonal = make_report("schrodinger_residual", off, 1e-7, nodes);

    rep.jump = check_jump(g, s);

    double cont = 0.0;
    for (double bp : p.breakpoints()) {
        const cplx vl = g.value(bp, s, Side::left);
        const cplx vr = g.value(bp, s, Side::right);
        const cplx dl = g.d_dr(bp, s, Side::left);
        const cplx dr = g.d_dr(bp, s, Side::right);
        cont = std::max(cont, std::abs(vl - vr) / (1.0 + std::abs(vl)));
        cont = std::max(cont, std::abs(dl - dr) / (1.0 + std::abs(dl)));
    }
    auto column = [&](double r) { return g(r, s); };
    const auto left = one_sided_limit(column, s, Side::left, region_reach(p, s, Side::left));
    const auto right = one_sided_limit(column, s, Side::right, region_reach(p, s, Side::right));
    cont = std::max(cont, std::abs(left.value - right.value) / (1.0 + std::abs(left.value)));
    rep.continuity = make_report("continuity", cont, 1e-10, p.breakpoints().size() + 1);

    const double combined = std::max({rep.off_diagonal.max_residual / rep.off_diagonal.tolerance,
                                      rep.jump.max_residual / rep.jump.tolerance,
                                      rep.continuity.max_residual / rep.continuity.tolerance});
    rep.combined = make_report("distributional_equation", combined, 1.0, 3);
    rep.combined.pass = rep.off_diagonal.pass && rep.jump.pass && rep.continuity.pass;
    return rep;
}

}  // namespace resolvent::oracle
