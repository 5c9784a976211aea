#include "resolvent/piecewise_engine.hpp"

#include "resolvent/errors.hpp"

namespace resolvent {
namespace {

constexpr cplx kI{0.0, 1.0};

std::vector<BranchMomentum> region_momenta(const PiecewisePotential& p, ComplexEnergy e) {
    require_off_branch_points(p, e);
    std::vector<BranchMomentum> ks;
    ks.reserve(p.region_count());
    for (double v : p.heights()) ks.push_back(branch_sqrt(e.value() - v));
    return ks;
}

}  // namespace

TransferMatrix TransferMatrix::operator*(const TransferMatrix& rhs) const {
    TransferMatrix out{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.m[i][j] = m[i][0] * rhs.m[0][j] + m[i][1] * rhs.m[1][j];
        }
    }
    return out;
}

TransferMatrix interface_matrix(BranchMomentum k_left, BranchMomentum k_right, double r) {
    return interface_matrix(k_left, k_right, r, 0.0, 0.0);
}

TransferMatrix interface_matrix(BranchMomentum k_left, BranchMomentum k_right, double r, double origin_left,
                                double origin_right) {
    const cplx kl = k_left;
    const cplx kr = k_right;
    if (kr == cplx{0.0, 0.0}) {
        throw BranchPointError("interface_matrix: zero momentum on the target side");
    }
    const cplx ratio = kl / kr;
    const cplx el = std::exp(kI * kl * (r - origin_left));
    const cplx er = std::exp(kI * kr * (r - origin_right));
    const cplx same = 0.5 * (1.0 + ratio);
    const cplx cross = 0.5 * (1.0 - ratio);
    TransferMatrix t{};
    t.m[0][0] = same * el / er;
    t.m[0][1] = cross / (el * er);
    t.m[1][0] = cross * el * er;
    t.m[1][1] = same * er / el;
    return t;
}

PiecewiseWave build_chi(const PiecewisePotential& p, ComplexEnergy e) {
    const auto ks = region_momenta(p, e);
    const auto bps = p.breakpoints();
    std::vector<WaveRegion> regions;
    regions.reserve(ks.size());
    {
        const auto [lo, hi] = p.region_bounds(0);
        regions.push_back({lo, hi, ks[0], 1.0, 0.0, 0.0, RegionForm::sine});
    }
    // sin(kr) = (e^{ikr} - e^{-ikr}) / 2i
    std::pair<cplx, cplx> c{1.0 / (2.0 * kI), -1.0 / (2.0 * kI)};
    double origin = 0.0;
    for (std::size_t j = 1; j < ks.size(); ++j) {
        const double r = bps[j - 1];
        c = interface_matrix(ks[j - 1], ks[j], r, origin, r).apply(c);
        origin = r;
        const auto [lo, hi] = p.region_bounds(j);
        regions.push_back({lo, hi, ks[j], c.first, c.second, origin});
    }
    return PiecewiseWave{p, e, std::move(regions)};
}

PiecewiseWave build_omega(const PiecewisePotential& p, ComplexEnergy e, Direction direction) {
    const auto ks = region_momenta(p, e);
    const auto bps = p.breakpoints();
    const std::size_t n = ks.size();
    std::vector<WaveRegion> regions(n, WaveRegion{0.0, 0.0, ks[0], 0.0, 0.0});
    std::pair<cplx, cplx> c = direction == Direction::plus ? std::pair<cplx, cplx>{1.0, 0.0}
                                                           : std::pair<cplx, cplx>{0.0, 1.0};
    double origin = 0.0;
    {
        const auto [lo, hi] = p.region_bounds(n - 1);
        regions[n - 1] = {lo, hi, ks[n - 1], c.first, c.second, origin};
    }
    for (std::size_t j = n - 1; j-- > 0;) {
        const double r = bps[j];
        if (ks[j].value() == cplx{0.0, 0.0}) {
            throw DegenerateInstanceError("build_omega: singular interface");
        }
        c = interface_matrix(ks[j + 1], ks[j], r, origin, r).apply(c);
        origin = r;
        const auto [lo, hi] = p.region_bounds(j);
        regions[j] = {lo, hi, ks[j], c.first, c.second, origin};
    }
    return PiecewiseWave{p, e, std::move(regions)};
}

std::pair<cplx, cplx> chi_outer_coefficients(const PiecewisePotential& p, ComplexEnergy e) {
    const PiecewiseWave chi = build_chi(p, e);
    return chi.global_coefficients(p.region_count() - 1);
}

cplx wronskian_closed_form(const PiecewisePotential& p, ComplexEnergy e, Direction direction) {
    const auto [j3, j4] = chi_outer_coefficients(p, e);
    const cplx k = branch_sqrt(e.value());
    return direction == Direction::plus ? 2.0 * kI * k * j4 : -2.0 * kI * k * j3;
}

}  // namespace resolvent
