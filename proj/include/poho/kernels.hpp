#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "poho/vec.hpp"

namespace poho {

struct KernelEval {
    double value = 0.0;
    double d_dt = 0.0;
    double d_dspace = 0.0;
};

// Poisson kernel G(t,x) = (1/pi) t/(x^2+t^2), the fundamental solution of the
// half-heat equation on the line, with its closed-form derivatives.
inline KernelEval poisson_G(double t, double x) {
    if (!(t > 0.0)) throw std::invalid_argument("poisson_G: t must be positive");
    const double d = x * x + t * t;
    KernelEval k;
    k.value = t / (M_PI * d);
    k.d_dt = (x * x - t * t) / (M_PI * d * d);
    k.d_dspace = -2.0 * x * t / (M_PI * d * d);
    return k;
}

// Half-heat kernel on the circle, defined by the series
//   F(t,theta) = (1/2pi) sum_n e^{-t|n|} e^{i n theta}.
// The Poisson-sum closed form (e^{2t}-1)/(e^{2t}-2e^t cos(theta)+1) equals
// 2pi * F; the factor is pinned by a regression test against the truncated
// series. Evaluation here uses the closed forms divided by 2pi.
inline KernelEval circle_F(double t, double theta) {
    if (!(t > 0.0)) throw std::invalid_argument("circle_F: t must be positive");
    const double et = std::exp(t);
    const double e2t = et * et;
    const double c = std::cos(theta);
    const double den = e2t - 2.0 * et * c + 1.0;
    KernelEval k;
    k.value = (e2t - 1.0) / (two_pi * den);
    k.d_dt = -2.0 * et * (e2t * c - 2.0 * et + c) / (two_pi * den * den);
    k.d_dspace = -2.0 * et * (e2t - 1.0) * std::sin(theta) / (two_pi * den * den);
    return k;
}

// Truncation order keeping the series tail below machine epsilon
// (e^{-t n} < 1e-16 for n > 37/t).
inline std::size_t circle_F_truncation(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("circle_F_truncation: t must be positive");
    return std::size_t(std::ceil(37.0 / t));
}

// Truncated-series route for the same kernel, the second half of the dual
// evaluation.
inline KernelEval circle_F_series(double t, double theta) {
    const std::size_t nmax = circle_F_truncation(t);
    double v = 1.0, dt = 0.0, dth = 0.0;
    for (std::size_t n = 1; n <= nmax; ++n) {
        const double w = std::exp(-t * double(n));
        v += 2.0 * w * std::cos(double(n) * theta);
        dt -= 2.0 * double(n) * w * std::cos(double(n) * theta);
        dth -= 2.0 * double(n) * w * std::sin(double(n) * theta);
    }
    return KernelEval{v / two_pi, dt / two_pi, dth / two_pi};
}

// Pure exponential factor e^{-|x-x0|^2/(4t)} of the planar heat kernel; the
// planar balance laws are homogeneous in the weight, so the normalization
// constant is dropped.
inline double gaussian_weight(double t, double x, double y, double x0, double y0) {
    if (!(t > 0.0)) throw std::invalid_argument("gaussian_weight: t must be positive");
    const double dx = x - x0, dy = y - y0;
    return std::exp(-(dx * dx + dy * dy) / (4.0 * t));
}

}  // namespace poho
