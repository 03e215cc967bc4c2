#include <catch2/catch_amalgamated.hpp>

#include "poho/planar.hpp"
#include "poho/zoo.hpp"

using namespace poho;

namespace {

PlanarMap holo_z() { return holomorphic_planar(CPoly{{cplx(0, 0), cplx(1, 0)}}); }
PlanarMap holo_z2() { return holomorphic_planar(CPoly{{cplx(0, 0), cplx(0, 0), cplx(1, 0)}}); }
PlanarMap sphere_z() { return meromorphic_to_s2(CRational::poly(CPoly{{cplx(0, 0), cplx(1, 0)}})); }

PlanarField field_one() { return PlanarField::holomorphic(CPoly{{cplx(1, 0)}}); }
PlanarField field_z() { return PlanarField::holomorphic(CPoly{{cplx(0, 0), cplx(1, 0)}}); }
PlanarField field_z2() {
    return PlanarField::holomorphic(CPoly{{cplx(0, 0), cplx(0, 0), cplx(1, 0)}});
}

}  // namespace

TEST_CASE("Cauchy-Riemann structure of the fields") {
    const double h = 1e-6;
    detail::SplitMix64 rng(11);
    auto cr_residual = [&](const PlanarField& f, double x, double y) {
        auto X1 = [&](double a, double b) { return f.eval(a, b).real(); };
        auto X2 = [&](double a, double b) { return f.eval(a, b).imag(); };
        const double d1 = (X1(x + h, y) - X1(x - h, y)) / (2 * h) -
                          (X2(x, y + h) - X2(x, y - h)) / (2 * h);
        const double d2 = (X1(x, y + h) - X1(x, y - h)) / (2 * h) +
                          (X2(x + h, y) - X2(x - h, y)) / (2 * h);
        return std::max(std::abs(d1), std::abs(d2));
    };
    for (int i = 0; i < 50; ++i) {
        const double x = 2.0 * rng.uniform_pm1(), y = 2.0 * rng.uniform_pm1();
        CHECK(cr_residual(field_z2(), x, y) < 1e-6);
        CHECK(cr_residual(field_one(), x, y) < 1e-6);
    }
    // the conjugate field is the deliberate violation
    CHECK(cr_residual(PlanarField::conj_z(), 0.3, 0.7) > 1.0);
}

TEST_CASE("hypothesis residual") {
    SECTION("holomorphic pairs have identically zero tension") {
        CHECK(hypothesis_residual(holo_z2(), -2.0, 2.0, -2.0, 2.0) == 0.0);
    }
    SECTION("sphere-valued maps satisfy it to roundoff") {
        CHECK(hypothesis_residual(sphere_z(), -2.0, 2.0, -2.0, 2.0) <= 1e-8);
    }
    SECTION("broken control violates it on the unit square") {
        CHECK(hypothesis_residual(broken_planar_control(), 0.0, 1.0, 0.0, 1.0) >= 1.0);
    }
}

TEST_CASE("boundary balance law, radial form") {
    SECTION("f(z) = z^2: both sides are 8 pi r^3") {
        for (double r : {0.5, 1.0, 2.0}) {
            const IdentityReport rep = ball_pohozaev_radial(holo_z2(), 0.0, 0.0, r, 1e-10);
            const double expected = 8.0 * M_PI * r * r * r;
            CHECK(rep.lhs == Catch::Approx(expected).epsilon(1e-12));
            CHECK(rep.rhs == Catch::Approx(expected).epsilon(1e-12));
            CHECK(rep.rel_gap <= 1e-10);
            CHECK(rep.pass);
        }
    }
    SECTION("f(z) = z: both sides are 2 pi r") {
        const double r = 1.3;
        const IdentityReport rep = ball_pohozaev_radial(holo_z(), 0.0, 0.0, r, 1e-10);
        CHECK(rep.lhs == Catch::Approx(two_pi * r).epsilon(1e-12));
        CHECK(rep.rhs == Catch::Approx(two_pi * r).epsilon(1e-12));
    }
    SECTION("constant maps give 0 = 0") {
        const PlanarMap c = holomorphic_planar(CPoly{{cplx(1.0, -2.0)}});
        const IdentityReport rep = ball_pohozaev_radial(c, 0.3, -0.1, 1.0, 1e-10);
        CHECK(rep.lhs == 0.0);
        CHECK(rep.rhs == 0.0);
        CHECK(rep.pass);
    }
}

TEST_CASE("boundary balance law with holomorphic fields") {
    SECTION("f(z) = z^2 with X = z: both sides 16 pi r^4") {
        for (double r : {0.5, 1.0, 2.0}) {
            const IdentityReport rep = ball_pohozaev(holo_z2(), 0.0, 0.0, r, field_z(), 1e-10);
            const double expected = 16.0 * M_PI * std::pow(r, 4.0);
            CHECK(rep.lhs == Catch::Approx(expected).epsilon(1e-12));
            CHECK(rep.rhs == Catch::Approx(expected).epsilon(1e-12));
            CHECK(rep.pass);
        }
    }
    SECTION("constant field: both sides vanish by parity") {
        const IdentityReport rep = ball_pohozaev(holo_z2(), 0.0, 0.0, 1.0, field_one(), 1e-10);
        CHECK(std::abs(rep.lhs) < 1e-12);
        CHECK(std::abs(rep.rhs) < 1e-12);
        CHECK(rep.pass);
    }
    SECTION("X = z^2 passes off-center") {
        const IdentityReport rep =
            ball_pohozaev(holo_z2(), 0.3, 0.1, 1.0, field_z2(), 1e-10);
        CHECK(rep.pass);
    }
    SECTION("sphere-valued map passes") {
        const IdentityReport rep =
            ball_pohozaev(sphere_z(), 0.2, -0.1, 1.5, field_z(), 1e-10);
        CHECK(rep.pass);
    }
}

TEST_CASE("anti-holomorphic control field") {
    SECTION("breaks the law for the non-conformal scalar harmonic map") {
        // u = Re z^2 has |u_x| != |u_y|, which is what the Cauchy-Riemann
        // cancellation needs; off the symmetry axes the two sides come out in
        // the exact ratio 2:1, hence rel_gap = 1/3.
        const PlanarMap u = harmonic_scalar(CPoly{{cplx(0, 0), cplx(0, 0), cplx(1, 0)}});
        const IdentityReport rep =
            ball_pohozaev(u, 0.5, 0.0, 1.0, PlanarField::conj_z(), 1e-10);
        CHECK(rep.lhs == Catch::Approx(4.0 * M_PI).epsilon(1e-12));
        CHECK(rep.rhs == Catch::Approx(2.0 * M_PI).epsilon(1e-12));
        CHECK(rep.rel_gap == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK_FALSE(rep.pass);
    }
    SECTION("is inert for conformal maps: the law holds pointwise for any X") {
        // For u = (Re f, Im f) the integrands of the two sides coincide at
        // every boundary point (|u_x| = |u_y|, u_x . u_y = 0), so even the
        // conjugate field cannot break the identity. The genuine control
        // therefore lives on the scalar map above.
        const IdentityReport rep =
            ball_pohozaev(holo_z2(), 0.3, 0.1, 1.0, PlanarField::conj_z(), 1e-10);
        CHECK(rep.pass);
    }
}

TEST_CASE("gaussian balance law") {
    SECTION("constant maps give 0 = 0") {
        const PlanarMap c = holomorphic_planar(CPoly{{cplx(0.5, 0.5)}});
        const IdentityReport rep = gaussian_pohozaev(c, 0.0, 0.0, 1.0, field_z(), 1e-8);
        CHECK(rep.lhs == 0.0);
        CHECK(rep.rhs == 0.0);
        CHECK(rep.pass);
    }
    SECTION("f(z) = z^2, X = z, t = 1: both sides 1024 pi") {
        // radial reduction: both sides equal 4 pi n^2 (1/2)(4t)^{n+1} n! at
        // x0 = 0; for n = 2, t = 1 that is 1024 pi.
        const IdentityReport rep = gaussian_pohozaev(holo_z2(), 0.0, 0.0, 1.0, field_z(), 1e-8);
        CHECK(rep.lhs == Catch::Approx(1024.0 * M_PI).epsilon(1e-9));
        CHECK(rep.rhs == Catch::Approx(1024.0 * M_PI).epsilon(1e-9));
        CHECK(rep.rel_gap <= 1e-8);
        CHECK(rep.pass);
    }
    SECTION("sphere-valued map, shifted center, affine field") {
        const PlanarField x = PlanarField::holomorphic(CPoly{{cplx(1, 0), cplx(1, 0)}});
        const IdentityReport rep = gaussian_pohozaev(sphere_z(), 0.2, -0.1, 0.5, x, 1e-7);
        CHECK(rep.rel_gap <= 1e-7);
        CHECK(rep.pass);
    }
    SECTION("radial form at the spec'd parameter matrix") {
        for (double t : {0.5, 1.0}) {
            for (auto [x0, y0] : {std::pair{0.0, 0.0}, {0.2, -0.1}}) {
                CHECK(gaussian_pohozaev_radial(holo_z2(), x0, y0, t, 1e-8).pass);
                CHECK(gaussian_pohozaev_radial(sphere_z(), x0, y0, t, 1e-8).pass);
            }
        }
    }
}

TEST_CASE("gaussian law scales like t^{n+1} for f = z^n") {
    for (int n : {1, 2}) {
        CPoly f;
        f.coef.assign(std::size_t(n) + 1, cplx(0, 0));
        f.coef[std::size_t(n)] = cplx(1, 0);
        const PlanarMap u = holomorphic_planar(f);
        for (double t : {0.5, 1.0}) {
            const IdentityReport at_t = gaussian_pohozaev(u, 0.0, 0.0, t, field_z(), 1e-8);
            const IdentityReport at_2t = gaussian_pohozaev(u, 0.0, 0.0, 2.0 * t, field_z(), 1e-8);
            const double ratio = at_2t.lhs / at_t.lhs;
            CHECK(std::abs(ratio - std::pow(2.0, double(n) + 1.0)) <=
                  1e-6 * std::pow(2.0, double(n) + 1.0));
        }
    }
}

TEST_CASE("gaussian law is linear in the field") {
    const double alpha = 1.7, beta = -0.4;
    const PlanarMap u = holo_z2();
    const IdentityReport r1 = gaussian_pohozaev(u, 0.1, 0.2, 1.0, field_one(), 1e-8);
    const IdentityReport r2 = gaussian_pohozaev(u, 0.1, 0.2, 1.0, field_z(), 1e-8);
    CPoly combo;
    combo.coef = {alpha * cplx(1, 0), beta * cplx(1, 0)};
    const IdentityReport rc =
        gaussian_pohozaev(u, 0.1, 0.2, 1.0, PlanarField::holomorphic(combo), 1e-8);
    const double scale = std::abs(rc.lhs) + std::abs(rc.rhs) + 1.0;
    CHECK(std::abs(rc.lhs - (alpha * r1.lhs + beta * r2.lhs)) <= 1e-10 * scale);
    CHECK(std::abs(rc.rhs - (alpha * r1.rhs + beta * r2.rhs)) <= 1e-10 * scale);
}

TEST_CASE("gaussian law is translation covariant") {
    const PlanarMap u = holo_z2();
    const double x0 = 0.4, y0 = -0.3, t = 0.8;
    const IdentityReport direct = gaussian_pohozaev(u, x0, y0, t, field_z(), 1e-8);
    const PlanarMap shifted = translate_planar(u, x0, y0);
    const IdentityReport moved =
        gaussian_pohozaev(shifted, 0.0, 0.0, t, holo_shift(field_z(), x0, y0), 1e-8);
    const double scale = std::abs(direct.lhs) + std::abs(direct.rhs) + 1e-30;
    CHECK(std::abs(direct.lhs - moved.lhs) <= 1e-10 * scale);
    CHECK(std::abs(direct.rhs - moved.rhs) <= 1e-10 * scale);
}

TEST_CASE("quadrature configuration") {
    SECTION("truncation radius formula") {
        const QuadratureConfig q;
        CHECK(q.truncation_radius(1.0) ==
              Catch::Approx(2.0 * std::sqrt(std::log(1e12))).epsilon(1e-15));
    }
    SECTION("doubling the rule moves reported integrals by less than 1e-10") {
        // the convergence guard recorded in the report is exactly that delta
        const IdentityReport rep = gaussian_pohozaev(sphere_z(), 0.2, -0.1, 1.0, field_z(), 1e-8);
        for (const auto& [k, v] : rep.params) {
            if (k == "quadrature_guard") CHECK(std::stod(v) <= 1e-10);
        }
    }
    SECTION("Gauss-Legendre rule integrates polynomials exactly") {
        const GaussLegendre gl(12);
        double acc = 0.0;
        for (std::size_t i = 0; i < 12; ++i)
            acc += gl.weights[i] * std::pow(gl.nodes[i], 10.0);
        CHECK(acc == Catch::Approx(2.0 / 11.0).epsilon(1e-14));
    }
}
