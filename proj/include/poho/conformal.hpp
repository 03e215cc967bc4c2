#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "poho/spectral.hpp"

namespace poho {

// Disk automorphism z -> e^{i alpha} (z - a)/(1 - conj(a) z), restricted to
// the unit circle. Parameters too close to the boundary are rejected: the
// conformal factor blows up like 1/(1-|a|) and is no longer resolvable.
struct MobiusDisk {
    double alpha = 0.0;
    cplx a{0.0, 0.0};

    MobiusDisk() = default;
    MobiusDisk(double alpha_, cplx a_) : alpha(alpha_), a(a_) {
        if (std::abs(a) > 1.0 - 1e-6)
            throw std::invalid_argument("MobiusDisk: |a| must stay below 1 - 1e-6");
    }
};

inline cplx mobius_apply(const MobiusDisk& mob, cplx z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
        throw std::invalid_argument("mobius_apply: |z| must be 1");
    return std::polar(1.0, mob.alpha) * (z - mob.a) / (1.0 - std::conj(mob.a) * z);
}

// |dM/dtheta| on the circle: (1 - |a|^2) / |1 - conj(a) e^{i theta}|^2.
inline double conformal_factor(const MobiusDisk& mob, double theta) {
    const cplx z = std::polar(1.0, theta);
    return (1.0 - std::norm(mob.a)) / std::norm(1.0 - std::conj(mob.a) * z);
}

// Group composition so that apply(compose(m1, m2), z) = apply(m1, apply(m2, z)).
inline MobiusDisk mobius_compose(const MobiusDisk& m1, const MobiusDisk& m2) {
    const cplx e2 = std::polar(1.0, m2.alpha);
    const cplx gamma = 1.0 + std::conj(m1.a) * m2.a * e2;
    const cplx a = (m1.a + e2 * m2.a) / (e2 + m1.a * std::conj(m2.a));
    const double alpha = m1.alpha + m2.alpha + std::arg(std::conj(gamma) / gamma);
    return MobiusDisk(alpha, a);
}

// Reparametrization u o M sampled on the original grid. Off-grid values come
// from direct summation of the synthesis series (exact trigonometric
// interpolation). Inputs must be resolved; tail_fraction_out, when given,
// receives the top-band energy fraction of the result so callers can warn
// when the distortion outruns the grid.
inline GridMap1D precompose(const GridMap1D& u, const MobiusDisk& mob,
                            double* tail_fraction_out = nullptr) {
    const Spectrum s = analyze(u);
    if (tail_energy_fraction(s) > 1e-12)
        throw std::invalid_argument("precompose: input map is not resolved on its grid");
    GridMap1D v(u.grid_size(), u.dim(), u.sphere_valued());
    for (std::size_t j = 0; j < u.grid_size(); ++j) {
        const double phi = std::arg(mobius_apply(mob, std::polar(1.0, u.theta(j))));
        v.set_sample(j, evaluate(s, phi));
    }
    if (u.sphere_valued()) {
        for (std::size_t j = 0; j < v.grid_size(); ++j) {
            RVec p = v.sample(j);
            const double r = norm(p);
            if (r > 0.0) v.set_sample(j, p * (1.0 / r));
        }
    }
    if (tail_fraction_out) *tail_fraction_out = tail_energy_fraction(analyze(v));
    return v;
}

// Stereographic projection from the circle minus -i to the line,
//   theta -> cos(theta)/(1 + sin(theta)),
// evaluated as cot((theta + pi/2)/2) which stays accurate near the pole.
inline double stereographic(double theta) {
    double w = std::fmod(theta + M_PI / 2.0, two_pi);
    if (w < 0.0) w += two_pi;
    const double h = 0.5 * w;
    const double s = std::sin(h);
    if (std::abs(s) < 1e-13) throw std::invalid_argument("stereographic: pole theta = -pi/2");
    return std::cos(h) / s;
}

// Inverse: x -> (2x/(1+x^2), (1-x^2)/(1+x^2)) as a point on the circle.
inline RVec stereographic_inv(double x) {
    const double d = 1.0 + x * x;
    return RVec(2.0 * x / d, (1.0 - x * x) / d);
}

// Forward map from a circle point (c, s). The two algebraically equal
// branches c/(1+s) and (1-s)/c trade the cancellation near the two poles, so
// the round trip holds to 1e-12 relative out to |x| = 1e6.
inline double stereographic_point(const RVec& p) {
    if (p.m != 2) throw std::invalid_argument("stereographic_point: m must be 2");
    const double c = p[0], s = p[1];
    if (std::abs(1.0 + s) < 1e-26)
        throw std::invalid_argument("stereographic_point: pole (0, -1)");
    return s > 0.0 ? c / (1.0 + s) : (1.0 - s) / c;
}

inline double stereographic_inv_angle(double x) {
    const RVec p = stereographic_inv(x);
    return std::atan2(p[1], p[0]);
}

// |dP/dtheta| = 1/(1 + sin theta) written as 1/(2 sin^2((theta+pi/2)/2)),
// the change-of-variables weight for dx = weight * dtheta.
inline double stereographic_weight(double theta) {
    const double s = std::sin(0.5 * (theta + M_PI / 2.0));
    if (std::abs(s) < 1e-13)
        throw std::invalid_argument("stereographic_weight: pole theta = -pi/2");
    return 1.0 / (2.0 * s * s);
}

}  // namespace poho
