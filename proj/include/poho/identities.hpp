#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "poho/conformal.hpp"
#include "poho/kernels.hpp"
#include "poho/report.hpp"
#include "poho/spectral.hpp"

namespace poho {

struct ResidualField {
    std::vector<double> values;
    double sup = 0.0;
};

// Pointwise d u/dtheta . (-Delta)^{1/2} u, the stationarity defect. Vanishes
// identically for domain-critical maps.
inline ResidualField stationarity_residual(const GridMap1D& u) {
    const Spectrum s = analyze(u);
    const GridMap1D du = synthesize(theta_derivative(s), u.grid_size());
    const GridMap1D w = synthesize(fractional_laplacian(s, 0.5), u.grid_size());
    ResidualField r;
    r.values.resize(u.grid_size());
    for (std::size_t j = 0; j < u.grid_size(); ++j) {
        r.values[j] = dot(du.sample(j), w.sample(j));
        r.sup = std::max(r.sup, std::abs(r.values[j]));
    }
    return r;
}

// Tangential part of (-Delta)^{1/2} u along the sphere: the Euler-Lagrange
// defect. For m = 2 this is the signed component against the quarter turn of
// u; for m = 3 the norm of the tangent-plane projection.
inline ResidualField el_residual_sphere(const GridMap1D& u) {
    if (!u.sphere_valued())
        throw std::invalid_argument("el_residual_sphere: input must be sphere-valued");
    const Spectrum s = analyze(u);
    const GridMap1D w = synthesize(fractional_laplacian(s, 0.5), u.grid_size());
    ResidualField r;
    r.values.resize(u.grid_size());
    for (std::size_t j = 0; j < u.grid_size(); ++j) {
        const RVec p = u.sample(j);
        const RVec wj = w.sample(j);
        double mag;
        if (u.dim() == 2) {
            mag = std::abs(dot(wj, quarter_turn(p)));
        } else {
            mag = norm(wj - dot(wj, p) * p);
        }
        r.values[j] = mag;
        r.sup = std::max(r.sup, mag);
    }
    return r;
}

inline IdentityReport residual_report(const std::string& name, const ResidualField& f,
                                      double abs_tol, Params base) {
    return make_report_abs(name, std::move(base), f.sup, 0.0, f.sup, abs_tol);
}

// ---------------------------------------------------------------------------
// Cosine/sine coefficient data and the relation family
// ---------------------------------------------------------------------------

// a_k = (1/2pi) int u cos(k theta), b_k = (1/2pi) int u sin(k theta),
// reassembled from the two-sided spectrum. Coefficient vectors whose norm
// falls below 1e-14 of the largest are flushed to zero: they are
// indistinguishable from roundoff of analytically absent modes, and flushing
// keeps the quadratic relation sums of sparse maps at exact zero rather than
// noise-over-noise quotients.
struct FourierData {
    std::vector<RVec> a;
    std::vector<RVec> b;
    std::size_t max_order() const { return a.size() - 1; }
};

inline FourierData fourier_data(const Spectrum& s, std::size_t kmax) {
    if (long(kmax) > s.max_mode())
        throw std::invalid_argument("fourier_data: kmax beyond the spectrum band");
    FourierData fd;
    fd.a.assign(kmax + 1, RVec(s.dim()));
    fd.b.assign(kmax + 1, RVec(s.dim()));
    for (std::size_t k = 0; k <= kmax; ++k) {
        for (std::size_t c = 0; c < s.dim(); ++c) {
            const cplx ck = s.at(long(k), c);
            const cplx cmk = s.at(-long(k), c);
            fd.a[k][c] = 0.5 * (ck + cmk).real();
            fd.b[k][c] = k == 0 ? 0.0 : 0.5 * (cmk - ck).imag();
        }
    }
    double peak = 0.0;
    for (std::size_t k = 0; k <= kmax; ++k)
        peak = std::max({peak, norm(fd.a[k]), norm(fd.b[k])});
    const double floor = 1e-14 * peak;
    for (std::size_t k = 0; k <= kmax; ++k) {
        for (std::size_t c = 0; c < s.dim(); ++c) {
            if (std::abs(fd.a[k][c]) <= floor) fd.a[k][c] = 0.0;
            if (std::abs(fd.b[k][c]) <= floor) fd.b[k][c] = 0.0;
        }
    }
    return fd;
}

inline FourierData fourier_data(const GridMap1D& u, std::size_t kmax) {
    return fourier_data(analyze(u), kmax);
}

struct RelationSums {
    double s_sum = 0.0;   // sum (n-k)k (a_k.a_{n-k} - b_k.b_{n-k})
    double t_sum = 0.0;   // sum (n-k)k (a_k.b_{n-k} + b_k.a_{n-k})
    double scale = 0.0;   // sum (n-k)k (|a_k||a_{n-k}| + |b_k||b_{n-k}|)
};

inline RelationSums relation_sums(const FourierData& fd, std::size_t n) {
    if (n < 2 || n > fd.max_order() + 1)
        throw std::invalid_argument("relation_sums: need 2 <= n <= kmax+1");
    RelationSums r;
    for (std::size_t k = 1; k <= n - 1; ++k) {
        const double w = double(n - k) * double(k);
        r.s_sum += w * (dot(fd.a[k], fd.a[n - k]) - dot(fd.b[k], fd.b[n - k]));
        r.t_sum += w * (dot(fd.a[k], fd.b[n - k]) + dot(fd.b[k], fd.a[n - k]));
        r.scale += w * (norm(fd.a[k]) * norm(fd.a[n - k]) + norm(fd.b[k]) * norm(fd.b[n - k]));
    }
    return r;
}

// Report for a residual judged against tol * (scale + floor).
inline IdentityReport scaled_residual_report(const std::string& name, Params params,
                                             double value, double scale, double tol) {
    const double threshold = tol * (scale + rel_gap_floor);
    IdentityReport r;
    r.identity_name = name;
    r.params = std::move(params);
    r.lhs = value;
    r.rhs = 0.0;
    r.abs_gap = value;
    r.rel_gap = value / (value + rel_gap_floor);
    r.pass = value <= threshold;
    r.add_param("scale", scale);
    r.add_param("tolerance", threshold / (value + rel_gap_floor));
    return r;
}

struct FourierRelation {
    std::size_t n = 0;
    double s_sum = 0.0;
    double t_sum = 0.0;
    double scale = 0.0;
    IdentityReport report;
};

// The countable relation family: for stationary maps both quadratic sums
// vanish for every n >= 2.
inline std::vector<FourierRelation> fourier_relations(const GridMap1D& u, std::size_t n_max,
                                                      double tol, Params base = {}) {
    const FourierData fd = fourier_data(u, n_max == 0 ? 0 : n_max - 1);
    std::vector<FourierRelation> out;
    for (std::size_t n = 2; n <= n_max; ++n) {
        const RelationSums rs = relation_sums(fd, n);
        FourierRelation fr;
        fr.n = n;
        fr.s_sum = rs.s_sum;
        fr.t_sum = rs.t_sum;
        fr.scale = rs.scale;
        Params p = with(base, "n", format_g17(double(n)));
        p.emplace_back("S_n", format_g17(rs.s_sum));
        p.emplace_back("T_n", format_g17(rs.t_sum));
        fr.report = scaled_residual_report("fourier_relation", std::move(p),
                                           std::max(std::abs(rs.s_sum), std::abs(rs.t_sum)),
                                           rs.scale, tol);
        out.push_back(std::move(fr));
    }
    return out;
}

// Pre-separation form cos(n alpha) S_n + sin(n alpha) T_n = 0; sweeping alpha
// reproduces the separation argument.
inline IdentityReport fourier_relation_alpha(const GridMap1D& u, std::size_t n, double alpha,
                                             double tol, Params base = {}) {
    const FourierData fd = fourier_data(u, n - 1);
    const RelationSums rs = relation_sums(fd, n);
    const double value = std::abs(std::cos(double(n) * alpha) * rs.s_sum +
                                  std::sin(double(n) * alpha) * rs.t_sum);
    Params p = with(with(base, "n", format_g17(double(n))), "alpha", alpha);
    return scaled_residual_report("fourier_relation_alpha", std::move(p), value, rs.scale, tol);
}

// The six printed low-order consequences (n = 2, 3, 4), judged absolutely.
inline std::vector<IdentityReport> low_order_relations(const GridMap1D& u, double abs_tol,
                                                       Params base = {}) {
    const FourierData fd = fourier_data(u, 3);
    const RVec &a1 = fd.a[1], &a2 = fd.a[2], &a3 = fd.a[3];
    const RVec &b1 = fd.b[1], &b2 = fd.b[2], &b3 = fd.b[3];
    std::vector<IdentityReport> out;
    auto push = [&](const std::string& name, double lhs, double rhs) {
        out.push_back(
            make_report_abs(name, base, lhs, rhs, std::abs(lhs - rhs), abs_tol));
    };
    push("low_order_n2_norm", norm(a1), norm(b1));
    push("low_order_n2_orth", dot(a1, b1), 0.0);
    push("low_order_n3_sym", dot(a1, a2), dot(b1, b2));
    push("low_order_n3_skew", dot(a1, b2), -dot(a2, b1));
    push("low_order_n4_norm", dot(a2, a2) - dot(b2, b2), 1.5 * (dot(b1, b3) - dot(a1, a3)));
    push("low_order_n4_orth", dot(a2, b2), -0.75 * (dot(a1, b3) + dot(b1, a3)));
    return out;
}

// ---------------------------------------------------------------------------
// Kernel-pairing balance laws
// ---------------------------------------------------------------------------

// On the circle: |int u dF/dt|^2 = |int u dF/dtheta|^2 for every t > 0.
// Both sides by uniform-grid quadrature against the closed-form kernel
// derivatives, spectrally exact once the integrand is resolved.
inline std::vector<IdentityReport> poho_s1(const GridMap1D& u, const std::vector<double>& t_grid,
                                           double rel_tol, Params base = {}) {
    const std::size_t n = u.grid_size();
    // The kernel derivatives integrate constants to zero, so the mean is
    // removed up front; constants then give an exact 0 = 0 instead of a
    // roundoff-over-roundoff quotient. Anchoring the accumulation at the
    // first sample makes the deviation of a constant map exactly zero.
    const RVec anchor = u.sample(0);
    RVec acc(u.dim());
    for (std::size_t j = 0; j < n; ++j) acc += u.sample(j) - anchor;
    const RVec mean = anchor + acc * (1.0 / double(n));
    std::vector<IdentityReport> out;
    for (double t : t_grid) {
        RVec it(u.dim()), ith(u.dim());
        for (std::size_t j = 0; j < n; ++j) {
            const KernelEval k = circle_F(t, u.theta(j));
            it += (u.sample(j) - mean) * k.d_dt;
            ith += (u.sample(j) - mean) * k.d_dspace;
        }
        it *= two_pi / double(n);
        ith *= two_pi / double(n);
        const double lhs = dot(it, it), rhs = dot(ith, ith);
        out.push_back(make_report_rel("poho_s1", with(base, "t", t), lhs, rhs,
                                      std::abs(lhs - rhs), rel_tol));
    }
    return out;
}

// First-mode consequence |int u cos|^2 = |int u sin|^2.
inline IdentityReport poho_s1_first(const GridMap1D& u, double rel_tol, Params base = {}) {
    const FourierData fd = fourier_data(u, 1);
    const double lhs = two_pi * two_pi * dot(fd.a[1], fd.a[1]);
    const double rhs = two_pi * two_pi * dot(fd.b[1], fd.b[1]);
    return make_report_rel("poho_s1_first", std::move(base), lhs, rhs, std::abs(lhs - rhs),
                           rel_tol);
}

// On the line: |int dG/dt (u - u0)|^2 = |int dG/dx (u - u0)|^2, computed
// through the circle parametrization x = cot((theta+pi/2)/2). The kernel
// derivative times the change-of-variables weight stays smooth across the
// pole:
//   dG/dt * dx/dtheta = (1/2pi) (c^2 - t^2 s^2)/(c^2 + t^2 s^2)^2,
//   dG/dx * dx/dtheta = -(t/pi) c s  /(c^2 + t^2 s^2)^2,
// with c = cos((theta+pi/2)/2), s = sin((theta+pi/2)/2), so a uniform grid
// integrates it spectrally. v holds the circle-side samples and u0 the value
// of v at the pole (the limit of u at infinity).
inline std::vector<IdentityReport> poho_r(const GridMap1D& v, const RVec& u0,
                                          const std::vector<double>& t_grid, double rel_tol,
                                          Params base = {}) {
    if (u0.m != v.dim()) throw std::invalid_argument("poho_r: u0 dimension mismatch");
    const std::size_t n = v.grid_size();
    std::vector<IdentityReport> out;
    for (double t : t_grid) {
        RVec it(v.dim()), ix(v.dim());
        RVec it_half(v.dim()), ix_half(v.dim());
        double window_mass = 0.0, total_mass = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double theta = v.theta(j);
            const double h = 0.5 * (theta + M_PI / 2.0);
            const double s = std::sin(h), c = std::cos(h);
            const double den = c * c + t * t * s * s;
            const double wdt = (c * c - t * t * s * s) / (two_pi * den * den);
            const double wdx = -(t / M_PI) * c * s / (den * den);
            const RVec dev = v.sample(j) - u0;
            it += dev * wdt;
            ix += dev * wdx;
            if (j % 2 == 0) {
                it_half += dev * wdt;
                ix_half += dev * wdx;
            }
            const double mass = norm(dev) * std::abs(wdt);
            total_mass += mass;
            double d = std::fmod(std::abs(theta - 1.5 * M_PI), two_pi);
            d = std::min(d, two_pi - d);
            if (d < 0.1) window_mass += mass;
        }
        it *= two_pi / double(n);
        ix *= two_pi / double(n);
        it_half *= two_pi / double(n / 2);
        ix_half *= two_pi / double(n / 2);

        const double lhs = dot(it, it), rhs = dot(ix, ix);
        const double refine_gap =
            std::max(norm(it - it_half), norm(ix - ix_half)) /
            (std::max(norm(it), norm(ix)) + rel_gap_floor);
        Params p = with(base, "t", t);
        p.emplace_back("pole_mass_fraction",
                       format_g17(window_mass / (total_mass + rel_gap_floor)));
        p.emplace_back("refinement_gap", format_g17(refine_gap));
        if (refine_gap > 1e-8) p.emplace_back("warning", "pole-neighborhood under-resolved");
        p.emplace_back("l1_hypothesis", window_mass / (total_mass + rel_gap_floor) > 0.1
                                            ? "not literally satisfied"
                                            : "plausible");
        out.push_back(
            make_report_rel("poho_r", std::move(p), lhs, rhs, std::abs(lhs - rhs), rel_tol));
    }
    return out;
}

// Checks the intertwining of the two half-Laplacians under stereographic
// pullback on the Poisson-kernel family, for which the line half-Laplacian is
// -dG/dt in closed form. Compared away from the pole, |theta + pi/2| >= 0.1.
inline IdentityReport pullback_halflap_check(double t, std::size_t n, double rel_tol,
                                             Params base = {}) {
    GridMap1D v(n, 1);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = v.theta(j);
        const double h = 0.5 * (theta + M_PI / 2.0);
        const double s = std::sin(h), c = std::cos(h);
        // G(t, cot h) written without cancellation.
        v.at(j, 0) = (t / M_PI) * s * s / (c * c + t * t * s * s);
    }
    const GridMap1D w = synthesize(fractional_laplacian(analyze(v), 0.5), n);
    double sup_lhs = 0.0, sup_rhs = 0.0, sup_diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = v.theta(j);
        double d = std::fmod(std::abs(theta - 1.5 * M_PI), two_pi);
        d = std::min(d, two_pi - d);
        if (d < 0.1) continue;
        const double h = 0.5 * (theta + M_PI / 2.0);
        const double one_plus_sin = 2.0 * std::sin(h) * std::sin(h);
        const double lhs = w.at(j, 0) * one_plus_sin;
        const double rhs = -poisson_G(t, stereographic(theta)).d_dt;
        sup_lhs = std::max(sup_lhs, std::abs(lhs));
        sup_rhs = std::max(sup_rhs, std::abs(rhs));
        sup_diff = std::max(sup_diff, std::abs(lhs - rhs));
    }
    return make_report_rel("pullback_halflap", with(std::move(base), "t", t), sup_lhs, sup_rhs,
                           sup_diff, rel_tol);
}

// Conformal covariance of the half-Laplacian under a disk automorphism:
// (-Delta)^{1/2}(u o M) against e^{lambda} ((-Delta)^{1/2} u) o M, both sides
// computed independently in frequency space.
inline IdentityReport mobius_covariance_residual(const GridMap1D& u, const MobiusDisk& mob,
                                                 double rel_tol, Params base = {}) {
    const std::size_t n = u.grid_size();
    const GridMap1D composed = precompose(u, mob);
    const GridMap1D lhs_field = synthesize(fractional_laplacian(analyze(composed), 0.5), n);
    const Spectrum w = fractional_laplacian(analyze(u), 0.5);
    double sup_lhs = 0.0, sup_rhs = 0.0, sup_diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = u.theta(j);
        const double lam = conformal_factor(mob, theta);
        const double phi = std::arg(mobius_apply(mob, std::polar(1.0, theta)));
        const RVec rhs = evaluate(w, phi) * lam;
        const RVec lhs = lhs_field.sample(j);
        sup_lhs = std::max(sup_lhs, norm(lhs));
        sup_rhs = std::max(sup_rhs, norm(rhs));
        sup_diff = std::max(sup_diff, norm(lhs - rhs));
    }
    Params p = with(std::move(base), "a", std::string(format_g17(mob.a.real())) + "+" +
                                              format_g17(mob.a.imag()) + "i");
    p.emplace_back("alpha", format_g17(mob.alpha));
    return make_report_rel("mobius_covariance", std::move(p), sup_lhs, sup_rhs, sup_diff,
                           rel_tol);
}

// Reruns the stationarity and relation verifiers on u o M; criticality is
// preserved under the automorphism group, at a coarser tolerance since the
// reparametrized map spends resolution unevenly.
inline std::vector<IdentityReport> mobius_invariance_suite(const GridMap1D& u,
                                                           const MobiusDisk& mob,
                                                           std::size_t n_max, double tol,
                                                           Params base = {}) {
    const GridMap1D v = precompose(u, mob);
    Params p = with(base, "a", std::string(format_g17(mob.a.real())) + "+" +
                                   format_g17(mob.a.imag()) + "i");
    p.emplace_back("alpha", format_g17(mob.alpha));
    std::vector<IdentityReport> out;
    out.push_back(residual_report("mobius_invariance_stationarity", stationarity_residual(v),
                                  tol, p));
    for (auto& fr : fourier_relations(v, n_max, tol, with(p, "composed", "true")))
        out.push_back(std::move(fr.report));
    return out;
}

}  // namespace poho
