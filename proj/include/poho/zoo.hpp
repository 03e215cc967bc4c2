#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poho/spectral.hpp"

namespace poho {

// Finite product of disk-automorphism factors with a global phase. Its
// boundary trace is the smooth circle-valued test family; the verifiers
// certify criticality numerically per map, it is never assumed.
struct BlaschkeProduct {
    std::vector<cplx> factors;
    double phase = 0.0;

    cplx eval_on_circle(cplx z) const {
        cplx w = std::polar(1.0, phase);
        for (const cplx& a : factors) w *= (z - a) / (1.0 - std::conj(a) * z);
        return w;
    }
};

inline GridMap1D blaschke_trace(const BlaschkeProduct& b, std::size_t n) {
    for (const cplx& a : b.factors) {
        if (std::abs(a) >= 1.0) throw std::invalid_argument("blaschke_trace: need |a| < 1");
        if (std::abs(a) > 0.9)
            throw std::invalid_argument("blaschke_trace: |a| > 0.9 is not resolvable");
    }
    GridMap1D u(n, 2, /*sphere_valued=*/true);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx w = b.eval_on_circle(std::polar(1.0, u.theta(j)));
        u.set_sample(j, RVec(w.real(), w.imag()));
    }
    return u;
}

// Smooth map that is certifiably not critical: u(theta) = (cos 2theta, sin theta).
// Its exact Fourier data (a1 = 0, b1 = (0,1/2), a2 = (1/2,0), b2 = 0) makes the
// expected verifier failures computable in closed form.
inline GridMap1D negative_control(std::size_t n) {
    GridMap1D u(n, 2, /*sphere_valued=*/false);
    for (std::size_t j = 0; j < n; ++j) {
        const double th = u.theta(j);
        u.set_sample(j, RVec(std::cos(2.0 * th), std::sin(th)));
    }
    return u;
}

// Pointwise-normalized variant of the control; |(cos 2t, sin t)| >= sqrt(7)/4,
// so the normalization is smooth. Used where a sphere-valued non-critical map
// is required.
inline GridMap1D negative_control_sphere(std::size_t n) {
    GridMap1D u(n, 2, /*sphere_valued=*/true);
    for (std::size_t j = 0; j < n; ++j) {
        const double th = u.theta(j);
        RVec p(std::cos(2.0 * th), std::sin(th));
        u.set_sample(j, p * (1.0 / norm(p)));
    }
    return u;
}

namespace detail {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [-1, 1)
    double uniform_pm1() { return double(next() >> 11) * (2.0 / 9007199254740992.0) - 1.0; }
};

// Band-limited noise with modes 1..8, scaled to unit sup norm on the grid.
inline std::vector<double> bandlimited_noise(std::size_t n, SplitMix64& rng) {
    constexpr std::size_t kmax = 8;
    std::vector<double> ak(kmax + 1), bk(kmax + 1);
    for (std::size_t k = 1; k <= kmax; ++k) {
        ak[k] = rng.uniform_pm1();
        bk[k] = rng.uniform_pm1();
    }
    std::vector<double> w(n, 0.0);
    double sup = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double th = GridMap1D::theta(j, n);
        for (std::size_t k = 1; k <= kmax; ++k)
            w[j] += ak[k] * std::cos(double(k) * th) + bk[k] * std::sin(double(k) * th);
        sup = std::max(sup, std::abs(w[j]));
    }
    if (sup > 0.0)
        for (double& x : w) x /= sup;
    return w;
}

}  // namespace detail

// Deterministic tangential perturbation: each sample is rotated in the tangent
// direction by amplitude * w(theta_j) for a fixed band-limited noise w
// (modes <= 8), then renormalized exactly.
inline GridMap1D perturb_tangent(const GridMap1D& u, double amplitude, std::uint64_t seed) {
    if (!u.sphere_valued())
        throw std::invalid_argument("perturb_tangent: input must be sphere-valued");
    detail::SplitMix64 rng(seed);
    const std::vector<double> w = detail::bandlimited_noise(u.grid_size(), rng);

    GridMap1D v(u.grid_size(), u.dim(), /*sphere_valued=*/true);
    for (std::size_t j = 0; j < u.grid_size(); ++j) {
        const RVec p = u.sample(j);
        RVec t(u.dim());
        if (u.dim() == 2) {
            t = quarter_turn(p);
        } else {
            // Fixed reference field projected to the tangent plane.
            RVec ref(0.3, -0.7, 0.64);
            t = ref - dot(ref, p) * p;
            const double tn = norm(t);
            if (tn < 1e-8) {
                RVec alt(1.0, 0.0, 0.0);
                t = alt - dot(alt, p) * p;
            }
            t *= 1.0 / norm(t);
        }
        const double a = amplitude * w[j];
        RVec q = std::cos(a) * p + std::sin(a) * t;
        q *= 1.0 / norm(q);
        v.set_sample(j, q);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Planar test maps
// ---------------------------------------------------------------------------

// Complex polynomial sum coef[k] z^k.
struct CPoly {
    std::vector<cplx> coef;

    cplx eval(cplx z) const {
        cplx acc(0.0, 0.0);
        for (std::size_t i = coef.size(); i-- > 0;) acc = acc * z + coef[i];
        return acc;
    }
    CPoly derivative() const {
        CPoly d;
        for (std::size_t k = 1; k < coef.size(); ++k) d.coef.push_back(double(k) * coef[k]);
        return d;
    }
    // Coefficients of p(z + z0) by Horner: out <- out * (z + z0) + coef[k].
    CPoly shifted(cplx z0) const {
        CPoly out;
        out.coef.assign(coef.size(), cplx(0.0, 0.0));
        for (std::size_t k = coef.size(); k-- > 0;) {
            cplx carry(0.0, 0.0);
            for (std::size_t i = 0; i < out.coef.size(); ++i) {
                const cplx t = out.coef[i];
                out.coef[i] = t * z0 + carry;
                carry = t;
            }
            out.coef[0] += coef[k];
        }
        return out;
    }
};

// A planar map given by closed-form evaluators; gradient returns the pair
// (du/dx, du/dy).
struct PlanarMap {
    enum class Kind { harmonic_function, sphere_harmonic, control };

    Kind kind = Kind::harmonic_function;
    std::size_t dim = 2;
    std::function<RVec(double, double)> value;
    std::function<std::pair<RVec, RVec>(double, double)> gradient;
    std::function<RVec(double, double)> laplacian;
};

// u = (Re f, Im f) for a polynomial f: harmonic componentwise, Laplacian
// evaluator returns exactly zero.
inline PlanarMap holomorphic_planar(CPoly f) {
    PlanarMap u;
    u.kind = PlanarMap::Kind::harmonic_function;
    u.dim = 2;
    const CPoly df = f.derivative();
    u.value = [f](double x, double y) {
        const cplx w = f.eval(cplx(x, y));
        return RVec(w.real(), w.imag());
    };
    u.gradient = [df](double x, double y) {
        const cplx d = df.eval(cplx(x, y));
        // du/dx ~ f'(z), du/dy ~ i f'(z) under R^2 ~ C.
        return std::make_pair(RVec(d.real(), d.imag()), RVec(-d.imag(), d.real()));
    };
    u.laplacian = [](double, double) { return RVec(0.0, 0.0); };
    return u;
}

// Scalar harmonic map u = Re f (m = 1). Unlike the holomorphic pair it is not
// conformal, which is what the anti-holomorphic control fields need to bite.
inline PlanarMap harmonic_scalar(CPoly f) {
    PlanarMap u;
    u.kind = PlanarMap::Kind::harmonic_function;
    u.dim = 1;
    const CPoly df = f.derivative();
    u.value = [f](double x, double y) { return RVec::scalar(f.eval(cplx(x, y)).real()); };
    u.gradient = [df](double x, double y) {
        const cplx d = df.eval(cplx(x, y));
        // d(Re f)/dx = Re f', d(Re f)/dy = -Im f'.
        return std::make_pair(RVec::scalar(d.real()), RVec::scalar(-d.imag()));
    };
    u.laplacian = [](double, double) { return RVec::scalar(0.0); };
    return u;
}

// Rational function p/q with derivative (p'q - pq')/q^2.
struct CRational {
    CPoly num;
    CPoly den;

    cplx eval(cplx z) const { return num.eval(z) / den.eval(z); }
    cplx deriv(cplx z) const {
        const cplx q = den.eval(z);
        return (num.derivative().eval(z) * q - num.eval(z) * den.derivative().eval(z)) / (q * q);
    }
    static CRational poly(CPoly p) { return CRational{std::move(p), CPoly{{cplx(1.0, 0.0)}}}; }
};

// Inverse stereographic composition u = S(f(x+iy)) into the unit two-sphere,
// with S(w) = (2 Re w, 2 Im w, |w|^2 - 1)/(1 + |w|^2) so that f = 0 maps to
// the south pole (0,0,-1). Conformal into the sphere, hence harmonic:
// Delta u = -|grad u|^2 u with |grad u|^2 = 8|f'|^2/(1+|f|^2)^2.
inline PlanarMap meromorphic_to_s2(CRational f) {
    PlanarMap u;
    u.kind = PlanarMap::Kind::sphere_harmonic;
    u.dim = 3;
    auto val = [f](double x, double y) {
        const cplx w = f.eval(cplx(x, y));
        const double d = 1.0 + std::norm(w);
        return RVec(2.0 * w.real() / d, 2.0 * w.imag() / d, (std::norm(w) - 1.0) / d);
    };
    auto grad = [f](double x, double y) {
        const cplx z(x, y);
        const cplx w = f.eval(z);
        const cplx dw = f.deriv(z);
        const double d = 1.0 + std::norm(w);
        auto dir = [&](cplx p) {
            const double wp = 2.0 * (w.real() * p.real() + w.imag() * p.imag());
            return RVec(2.0 * p.real() / d - 2.0 * w.real() * wp / (d * d),
                        2.0 * p.imag() / d - 2.0 * w.imag() * wp / (d * d),
                        2.0 * wp / (d * d));
        };
        return std::make_pair(dir(dw), dir(cplx(0.0, 1.0) * dw));
    };
    u.value = val;
    u.gradient = grad;
    u.laplacian = [f, val](double x, double y) {
        const cplx z(x, y);
        const cplx w = f.eval(z);
        const cplx dw = f.deriv(z);
        const double d = 1.0 + std::norm(w);
        const double g2 = 8.0 * std::norm(dw) / (d * d);
        return val(x, y) * (-g2);
    };
    return u;
}

// Hypothesis-violating control u = (x^2, y): Delta u = (2, 0) is not normal
// to anything, du/dx . Delta u = 4x.
inline PlanarMap broken_planar_control() {
    PlanarMap u;
    u.kind = PlanarMap::Kind::control;
    u.dim = 2;
    u.value = [](double x, double y) { return RVec(x * x, y); };
    u.gradient = [](double x, double) {
        return std::make_pair(RVec(2.0 * x, 0.0), RVec(0.0, 1.0));
    };
    u.laplacian = [](double, double) { return RVec(2.0, 0.0); };
    return u;
}

// Map translated by (x0, y0): t(x, y) = u(x + x0, y + y0).
inline PlanarMap translate_planar(const PlanarMap& u, double x0, double y0) {
    PlanarMap t = u;
    auto v = u.value;
    auto g = u.gradient;
    auto l = u.laplacian;
    t.value = [v, x0, y0](double x, double y) { return v(x + x0, y + y0); };
    t.gradient = [g, x0, y0](double x, double y) { return g(x + x0, y + y0); };
    t.laplacian = [l, x0, y0](double x, double y) { return l(x + x0, y + y0); };
    return t;
}

}  // namespace poho
