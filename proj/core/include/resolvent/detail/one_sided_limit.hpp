#pragma once

#include <array>
#include <cmath>

namespace resolvent::oracle {

template <class F>
OneSidedLimit one_sided_limit(const F& fn, double x, Side side, double reach) {
    // Second-order one-sided stencils at h0, h0/2, ..., extrapolated to h = 0 by Neville.
    constexpr int kLevels = 6;
    const double dir = side == Side::right ? 1.0 : -1.0;
    const double h0 = reach / 10.0;
    std::array<double, kLevels> hs{};
    std::array<cplx, kLevels> vals{};
    std::array<cplx, kLevels> ders{};
    for (int i = 0; i < kLevels; ++i) {
        const double h = std::ldexp(h0, -i);
        const cplx f1 = fn(x + dir * h);
        const cplx f2 = fn(x + dir * 2.0 * h);
        const cplx f3 = fn(x + dir * 3.0 * h);
        hs[i] = h;
        // Quadratic through (h, 2h, 3h) evaluated at 0, and its slope there.
        vals[i] = 3.0 * f1 - 3.0 * f2 + f3;
        ders[i] = dir * (-5.0 * f1 + 8.0 * f2 - 3.0 * f3) / (2.0 * h);
    }
    auto neville = [&](std::array<cplx, kLevels> t) {
        for (int level = 1; level < kLevels; ++level) {
            for (int i = kLevels - 1; i >= level; --i) {
                const double ha = hs[i - level];
                const double hb = hs[i];
                t[i] = (ha * t[i] - hb * t[i - 1]) / (ha - hb);
            }
        }
        return t[kLevels - 1];
    };
    return {neville(vals), neville(ders)};
}

}  // namespace resolvent::oracle
