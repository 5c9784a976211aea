#pragma once

// Test-only reference routes. Nothing here calls the library's coefficient
// builders: the brute-force solver assembles the full continuity system and
// eliminates it densely, and the printed coefficient formulas are transcribed
// term by term.

#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "resolvent/eigenfunctions.hpp"
#include "resolvent/model.hpp"

namespace reference {

using resolvent::cplx;
inline constexpr cplx I{0.0, 1.0};

template <std::size_t N>
std::array<cplx, N> solve_dense(std::array<std::array<cplx, N>, N> m, std::array<cplx, N> rhs) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < N; ++row) {
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        }
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t row = col + 1; row < N; ++row) {
            const cplx f = m[row][col] / m[col][col];
            for (std::size_t k = col; k < N; ++k) m[row][k] -= f * m[col][k];
            rhs[row] -= f * rhs[col];
        }
    }
    std::array<cplx, N> x{};
    for (std::size_t i = N; i-- > 0;) {
        cplx acc = rhs[i];
        for (std::size_t k = i + 1; k < N; ++k) acc -= m[i][k] * x[k];
        x[i] = acc / m[i][i];
    }
    return x;
}

inline std::pair<cplx, cplx> wavenumbers(const resolvent::SquareBarrier& p, cplx e) {
    return {resolvent::branch_sqrt(e).value(), resolvent::branch_sqrt(e - p.v0()).value()};
}

/// J1..J4 from the 4x4 continuity system at r = a and r = b.
inline std::array<cplx, 4> brute_force_chi(const resolvent::SquareBarrier& p, cplx e) {
    const auto [k, q] = wavenumbers(p, e);
    const double a = p.a();
    const double b = p.b();
    auto ep = [](cplx kk, double r) { return std::exp(I * kk * r); };
    auto em = [](cplx kk, double r) { return std::exp(-I * kk * r); };
    // unknowns J1, J2, J3, J4
    std::array<std::array<cplx, 4>, 4> m{{
        {ep(q, a), em(q, a), 0.0, 0.0},
        {I * q * ep(q, a), -I * q * em(q, a), 0.0, 0.0},
        {ep(q, b), em(q, b), -ep(k, b), -em(k, b)},
        {I * q * ep(q, b), -I * q * em(q, b), -I * k * ep(k, b), I * k * em(k, b)},
    }};
    std::array<cplx, 4> rhs{std::sin(k * a), k * std::cos(k * a), 0.0, 0.0};
    return solve_dense(m, rhs);
}

/// A1..A4 with the outer region pinned to e^{+ikr} (plus) or e^{-ikr} (minus).
inline std::array<cplx, 4> brute_force_omega(const resolvent::SquareBarrier& p, cplx e, bool plus) {
    const auto [k, q] = wavenumbers(p, e);
    const double a = p.a();
    const double b = p.b();
    auto ep = [](cplx kk, double r) { return std::exp(I * kk * r); };
    auto em = [](cplx kk, double r) { return std::exp(-I * kk * r); };
    const cplx outer_v = plus ? ep(k, b) : em(k, b);
    const cplx outer_d = plus ? I * k * ep(k, b) : -I * k * em(k, b);
    // unknowns A1, A2, A3, A4
    std::array<std::array<cplx, 4>, 4> m{{
        {ep(k, a), em(k, a), -ep(q, a), -em(q, a)},
        {I * k * ep(k, a), -I * k * em(k, a), -I * q * ep(q, a), I * q * em(q, a)},
        {0.0, 0.0, ep(q, b), em(q, b)},
        {0.0, 0.0, I * q * ep(q, b), -I * q * em(q, b)},
    }};
    std::array<cplx, 4> rhs{0.0, 0.0, outer_v, outer_d};
    return solve_dense(m, rhs);
}

// ---------------------------------------------------------------------------
// Printed closed forms, transcribed as written (including the exponent on the
// last term of A2+).

inline std::array<cplx, 4> printed_chi(const resolvent::SquareBarrier& p, cplx e) {
    const auto [k, q] = wavenumbers(p, e);
    const double a = p.a();
    const double b = p.b();
    const cplx j1 = 0.5 * std::exp(-I * q * a) * (std::sin(k * a) + k / (I * q) * std::cos(k * a));
    const cplx j2 = 0.5 * std::exp(I * q * a) * (std::sin(k * a) - k / (I * q) * std::cos(k * a));
    const cplx j3 = 0.5 * std::exp(-I * k * b) *
                    ((1.0 + q / k) * std::exp(I * q * b) * j1 + (1.0 - q / k) * std::exp(-I * q * b) * j2);
    const cplx j4 = 0.5 * std::exp(I * k * b) *
                    ((1.0 - q / k) * std::exp(I * q * b) * j1 + (1.0 + q / k) * std::exp(-I * q * b) * j2);
    return {j1, j2, j3, j4};
}

inline std::array<cplx, 4> printed_omega_plus(const resolvent::SquareBarrier& p, cplx e) {
    const auto [k, q] = wavenumbers(p, e);
    const double a = p.a();
    const double b = p.b();
    const cplx a3 = 0.5 * std::exp(-I * q * b) * (1.0 + k / q) * std::exp(I * k * b);
    const cplx a4 = 0.5 * std::exp(I * q * b) * (1.0 - k / q) * std::exp(I * k * b);
    const cplx a1 = 0.5 * std::exp(-I * k * a) *
                    ((1.0 + q / k) * std::exp(I * q * a) * a3 + (1.0 - q / k) * std::exp(-I * q * a) * a4);
    const cplx a2 = 0.5 * std::exp(I * k * a) *
                    ((1.0 - q / k) * std::exp(I * q * a) * a3 + (1.0 + q / k) * std::exp(-I * q * b) * a4);
    return {a1, a2, a3, a4};
}

inline std::array<cplx, 4> printed_omega_minus(const resolvent::SquareBarrier& p, cplx e) {
    const auto [k, q] = wavenumbers(p, e);
    const double a = p.a();
    const double b = p.b();
    const cplx a3 = 0.5 * std::exp(-I * q * b) * (1.0 - k / q) * std::exp(-I * k * b);
    const cplx a4 = 0.5 * std::exp(I * q * b) * (1.0 + k / q) * std::exp(-I * k * b);
    const cplx a1 = 0.5 * std::exp(-I * k * a) *
                    ((1.0 + q / k) * std::exp(I * q * a) * a3 + (1.0 - q / k) * std::exp(-I * q * a) * a4);
    const cplx a2 = 0.5 * std::exp(I * k * a) *
                    ((1.0 - q / k) * std::exp(I * q * a) * a3 + (1.0 + q / k) * std::exp(-I * q * a) * a4);
    return {a1, a2, a3, a4};
}

inline double relative_gap(cplx x, cplx y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return scale > 0.0 ? std::abs(x - y) / scale : 0.0;
}

}  // namespace reference
