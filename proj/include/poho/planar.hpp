#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poho/kernels.hpp"
#include "poho/report.hpp"
#include "poho/zoo.hpp"

namespace poho {

// Planar vector field X = X1 + iX2 given by a polynomial in z, or in conj(z)
// for the deliberately non-conformal control fields. Only polynomial fields
// satisfy the Cauchy-Riemann structure the balance laws rely on.
struct PlanarField {
    CPoly poly;
    bool antiholomorphic = false;

    cplx eval(double x, double y) const {
        const cplx z(x, y);
        return poly.eval(antiholomorphic ? std::conj(z) : z);
    }
    static PlanarField holomorphic(CPoly p) { return PlanarField{std::move(p), false}; }
    static PlanarField conj_z() { return PlanarField{CPoly{{cplx(0, 0), cplx(1, 0)}}, true}; }
};

inline PlanarField holo_shift(const PlanarField& f, double x0, double y0) {
    if (f.antiholomorphic)
        throw std::invalid_argument("holo_shift: only holomorphic fields can be shifted");
    return PlanarField{f.poly.shifted(cplx(x0, y0)), false};
}

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on the
// three-term recurrence.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(std::size_t n) {
        nodes.resize(n);
        weights.resize(n);
        for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(M_PI * (double(i) + 0.75) / (double(n) + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (std::size_t k = 2; k <= n; ++k) {
                    const double p2 =
                        ((2.0 * double(k) - 1.0) * x * p1 - (double(k) - 1.0) * p0) / double(k);
                    p0 = p1;
                    p1 = p2;
                }
                dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
                const double next = x - p1 / dp;
                if (next == x) break;  // double-precision fixed point
                x = next;
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
    }
};

// Tensor rule: uniform angular x Gauss-Legendre radial, with the truncation
// radius R(t) = 2 sqrt(t ln(1/eps)) that keeps the Gaussian tail below eps.
struct QuadratureConfig {
    std::size_t circle_points = 64;
    std::size_t radial_nodes = 128;
    double eps = 1e-12;

    double truncation_radius(double t) const { return 2.0 * std::sqrt(t * std::log(1.0 / eps)); }
};

// Sup of |du/dx . Delta u| and |du/dy . Delta u| over an axis-aligned box,
// sampled on a 50 x 50 grid.
inline double hypothesis_residual(const PlanarMap& u, double x_lo, double x_hi, double y_lo,
                                  double y_hi) {
    constexpr std::size_t pts = 50;
    double sup = 0.0;
    for (std::size_t i = 0; i < pts; ++i) {
        for (std::size_t j = 0; j < pts; ++j) {
            const double x = x_lo + (x_hi - x_lo) * double(i) / double(pts - 1);
            const double y = y_lo + (y_hi - y_lo) * double(j) / double(pts - 1);
            const auto [ux, uy] = u.gradient(x, y);
            const RVec lap = u.laplacian(x, y);
            sup = std::max({sup, std::abs(dot(ux, lap)), std::abs(dot(uy, lap))});
        }
    }
    return sup;
}

namespace detail {

struct BoundarySides {
    double lhs = 0.0;
    double rhs = 0.0;
    // Absolute integrand mass; the well-conditioned yardstick for the gap.
    // Parity cases integrate to 0 on both sides, where a gap-over-values
    // quotient would be roundoff divided by roundoff.
    double scale = 0.0;
};

// One circle pass: lhs integrand 2 (grad u . X) . (du/dnu), rhs integrand
// (X . nu) |grad u|^2.
inline BoundarySides ball_sides(const PlanarMap& u, double x0, double y0, double r,
                                const PlanarField& field, std::size_t n_c) {
    BoundarySides s;
    for (std::size_t j = 0; j < n_c; ++j) {
        const double phi = two_pi * double(j) / double(n_c);
        const double nx = std::cos(phi), ny = std::sin(phi);
        const double x = x0 + r * nx, y = y0 + r * ny;
        const auto [ux, uy] = u.gradient(x, y);
        const cplx xv = field.eval(x, y);
        const RVec grad_x = ux * xv.real() + uy * xv.imag();
        const RVec du_nu = ux * nx + uy * ny;
        const double g2 = dot(ux, ux) + dot(uy, uy);
        const double li = 2.0 * dot(grad_x, du_nu);
        const double ri = (xv.real() * nx + xv.imag() * ny) * g2;
        s.lhs += li;
        s.rhs += ri;
        s.scale += 0.5 * (std::abs(li) + std::abs(ri));
    }
    const double dsigma = two_pi * r / double(n_c);
    s.lhs *= dsigma;
    s.rhs *= dsigma;
    s.scale *= dsigma;
    return s;
}

}  // namespace detail

// Boundary balance law 2 int (du/dnu)(grad u . X) = int (X.nu)|grad u|^2 over
// the circle of radius r about (x0,y0), for hypothesis-satisfying maps and
// holomorphic X. The doubled-resolution pass acts as the convergence guard.
inline IdentityReport ball_pohozaev(const PlanarMap& u, double x0, double y0, double r,
                                    const PlanarField& field, double rel_tol,
                                    const QuadratureConfig& q = {}, Params base = {}) {
    const auto s = detail::ball_sides(u, x0, y0, r, field, q.circle_points);
    const auto s2 = detail::ball_sides(u, x0, y0, r, field, 2 * q.circle_points);
    const double scale = s2.scale + rel_gap_floor;
    const double guard = std::max(std::abs(s.lhs - s2.lhs), std::abs(s.rhs - s2.rhs)) / scale;
    Params p = with(with(std::move(base), "r", r), "x0",
                    std::string(format_g17(x0)) + "," + format_g17(y0));
    p.emplace_back("scale", format_g17(s2.scale));
    p.emplace_back("quadrature_guard", format_g17(guard));
    if (guard > 1e-10) p.emplace_back("warning", "circle quadrature not converged");
    return make_report_abs("ball_pohozaev", std::move(p), s2.lhs, s2.rhs,
                           std::abs(s2.lhs - s2.rhs), rel_tol * scale);
}

// Radial special case: int |du/dr|^2 dsigma = r^{-2} int |du/dtheta|^2 dsigma.
inline IdentityReport ball_pohozaev_radial(const PlanarMap& u, double x0, double y0, double r,
                                           double rel_tol, const QuadratureConfig& q = {},
                                           Params base = {}) {
    auto sides = [&](std::size_t n_c) {
        detail::BoundarySides s;
        for (std::size_t j = 0; j < n_c; ++j) {
            const double phi = two_pi * double(j) / double(n_c);
            const double nx = std::cos(phi), ny = std::sin(phi);
            const auto [ux, uy] = u.gradient(x0 + r * nx, y0 + r * ny);
            const RVec du_nu = ux * nx + uy * ny;
            const RVec du_th = (ux * (-ny) + uy * nx) * r;
            s.lhs += dot(du_nu, du_nu);
            s.rhs += dot(du_th, du_th) / (r * r);
        }
        const double dsigma = two_pi * r / double(n_c);
        s.lhs *= dsigma;
        s.rhs *= dsigma;
        s.scale = 0.5 * (std::abs(s.lhs) + std::abs(s.rhs));
        return s;
    };
    const auto s = sides(q.circle_points);
    const auto s2 = sides(2 * q.circle_points);
    const double scale = s2.scale + rel_gap_floor;
    const double guard = std::max(std::abs(s.lhs - s2.lhs), std::abs(s.rhs - s2.rhs)) / scale;
    Params p = with(with(std::move(base), "r", r), "x0",
                    std::string(format_g17(x0)) + "," + format_g17(y0));
    p.emplace_back("quadrature_guard", format_g17(guard));
    if (guard > 1e-10) p.emplace_back("warning", "circle quadrature not converged");
    return make_report_rel("ball_pohozaev_radial", std::move(p), s2.lhs, s2.rhs,
                           std::abs(s2.lhs - s2.rhs), rel_tol);
}

namespace detail {

struct GaussianSides {
    double lhs = 0.0;
    double rhs = 0.0;
    double scale = 0.0;
    double tail_bound = 0.0;
};

enum class GaussianForm { field, radial };

inline GaussianSides gaussian_sides(const PlanarMap& u, double x0, double y0, double t,
                                    const PlanarField* field, GaussianForm form,
                                    const QuadratureConfig& q, std::size_t n_c,
                                    std::size_t n_r) {
    const double radius = q.truncation_radius(t);
    const GaussLegendre gl(n_r);
    GaussianSides s;
    double abs_mass = 0.0;
    for (std::size_t ir = 0; ir < n_r; ++ir) {
        const double r = 0.5 * radius * (gl.nodes[ir] + 1.0);
        const double wr = 0.5 * radius * gl.weights[ir] * r;  // r dr
        const double gw = std::exp(-r * r / (4.0 * t));
        for (std::size_t j = 0; j < n_c; ++j) {
            const double phi = two_pi * double(j) / double(n_c);
            const double nx = std::cos(phi), ny = std::sin(phi);
            const double x = x0 + r * nx, y = y0 + r * ny;
            const auto [ux, uy] = u.gradient(x, y);
            const RVec du_nu = ux * nx + uy * ny;
            const double w = wr * gw * two_pi / double(n_c);
            double li, ri;
            if (form == GaussianForm::field) {
                const cplx xv = field->eval(x, y);
                const RVec grad_x = ux * xv.real() + uy * xv.imag();
                const double g2 = dot(ux, ux) + dot(uy, uy);
                li = 2.0 * r * dot(grad_x, du_nu);
                ri = (xv.real() * r * nx + xv.imag() * r * ny) * g2;
            } else {
                const RVec du_th = ux * (-r * ny) + uy * (r * nx);
                li = r * r * dot(du_nu, du_nu);
                ri = dot(du_th, du_th);
            }
            s.lhs += w * li;
            s.rhs += w * ri;
            abs_mass += w * (std::abs(li) + std::abs(ri));
        }
    }
    // Everything integrated has polynomial growth; past R the weight is below
    // eps, so eps * (integrated |.| mass) bounds the truncated tail up to the
    // polynomial factor, recorded as a rough a-posteriori figure.
    s.scale = 0.5 * abs_mass;
    s.tail_bound = q.eps * abs_mass;
    return s;
}

}  // namespace detail

// Gaussian-weighted balance law
//   2 iint w (grad u . X).(du/dnu) |x-x0| = iint w ((x-x0).X) |grad u|^2
// with w = exp(-|x-x0|^2/4t), verified on the truncation disk of radius
// R(t, eps) with doubled-resolution convergence guard.
inline IdentityReport gaussian_pohozaev(const PlanarMap& u, double x0, double y0, double t,
                                        const PlanarField& field, double rel_tol,
                                        const QuadratureConfig& q = {}, Params base = {}) {
    const auto s = detail::gaussian_sides(u, x0, y0, t, &field, detail::GaussianForm::field, q,
                                          q.circle_points, q.radial_nodes);
    const auto s2 = detail::gaussian_sides(u, x0, y0, t, &field, detail::GaussianForm::field, q,
                                           2 * q.circle_points, 2 * q.radial_nodes);
    const double scale = s2.scale + rel_gap_floor;
    const double guard = std::max(std::abs(s.lhs - s2.lhs), std::abs(s.rhs - s2.rhs)) / scale;
    Params p = with(with(std::move(base), "t", t), "x0",
                    std::string(format_g17(x0)) + "," + format_g17(y0));
    p.emplace_back("scale", format_g17(s2.scale));
    p.emplace_back("quadrature_guard", format_g17(guard));
    p.emplace_back("tail_bound", format_g17(s2.tail_bound));
    if (guard > 1e-10) p.emplace_back("warning", "tensor quadrature not converged");
    return make_report_abs("gaussian_pohozaev", std::move(p), s2.lhs, s2.rhs,
                           std::abs(s2.lhs - s2.rhs), rel_tol * scale);
}

// Radial form iint w |x-x0|^2 |du/dnu|^2 = iint w |du/dtheta|^2, the
// X = x - x0 consequence.
inline IdentityReport gaussian_pohozaev_radial(const PlanarMap& u, double x0, double y0,
                                               double t, double rel_tol,
                                               const QuadratureConfig& q = {},
                                               Params base = {}) {
    const auto s = detail::gaussian_sides(u, x0, y0, t, nullptr, detail::GaussianForm::radial,
                                          q, q.circle_points, q.radial_nodes);
    const auto s2 = detail::gaussian_sides(u, x0, y0, t, nullptr, detail::GaussianForm::radial,
                                           q, 2 * q.circle_points, 2 * q.radial_nodes);
    const double guard = std::max(std::abs(s.lhs - s2.lhs), std::abs(s.rhs - s2.rhs)) /
                         (s2.scale + rel_gap_floor);
    Params p = with(with(std::move(base), "t", t), "x0",
                    std::string(format_g17(x0)) + "," + format_g17(y0));
    p.emplace_back("quadrature_guard", format_g17(guard));
    p.emplace_back("tail_bound", format_g17(s2.tail_bound));
    if (guard > 1e-10) p.emplace_back("warning", "tensor quadrature not converged");
    return make_report_rel("gaussian_pohozaev_radial", std::move(p), s2.lhs, s2.rhs,
                           std::abs(s2.lhs - s2.rhs), rel_tol);
}

}  // namespace poho
