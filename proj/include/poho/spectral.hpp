#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "poho/fft.hpp"
#include "poho/vec.hpp"

namespace poho {

using cplx = std::complex<double>;

// Uniform samples of an R^m-valued map on the circle, theta_j = 2*pi*j/N.
class GridMap1D {
  public:
    GridMap1D(std::size_t n, std::size_t m, bool sphere_valued = false)
        : n_(n), m_(m), sphere_(sphere_valued), data_(n * m, 0.0) {
        check_dims(n, m);
    }

    static double theta(std::size_t j, std::size_t n) { return two_pi * double(j) / double(n); }
    double theta(std::size_t j) const { return theta(j, n_); }

    std::size_t grid_size() const { return n_; }
    std::size_t dim() const { return m_; }
    bool sphere_valued() const { return sphere_; }

    double& at(std::size_t j, std::size_t c) { return data_[j * m_ + c]; }
    double at(std::size_t j, std::size_t c) const { return data_[j * m_ + c]; }

    RVec sample(std::size_t j) const {
        RVec r(m_);
        for (std::size_t c = 0; c < m_; ++c) r[c] = data_[j * m_ + c];
        return r;
    }
    void set_sample(std::size_t j, const RVec& v) {
        for (std::size_t c = 0; c < m_; ++c) data_[j * m_ + c] = v[c];
    }

    // Enforces the type invariants: finite samples, and unit norm when the
    // sphere flag is set (tolerance 1e-12).
    void validate() const {
        for (double x : data_)
            if (!std::isfinite(x)) throw std::invalid_argument("GridMap1D: non-finite sample");
        if (sphere_) {
            for (std::size_t j = 0; j < n_; ++j)
                if (std::abs(norm(sample(j)) - 1.0) > 1e-12)
                    throw std::invalid_argument("GridMap1D: sample off the unit sphere");
        }
    }

  private:
    static void check_dims(std::size_t n, std::size_t m) {
        if (n < 4 || !detail::is_pow2(n))
            throw std::invalid_argument("GridMap1D: N must be a power of two, N >= 4");
        if (m == 0 || m > 3) throw std::invalid_argument("GridMap1D: m must be 1..3");
    }

    std::size_t n_;
    std::size_t m_;
    bool sphere_;
    std::vector<double> data_;
};

// Fourier coefficients c_n, n = -N/2..N/2, convention
//   c_n = (1/2pi) \int u(theta) e^{-i n theta} dtheta.
// The Nyquist pair is stored symmetrized, c_{N/2} = c_{-N/2}, so that real
// maps stay real under d/dtheta.
class Spectrum {
  public:
    Spectrum(std::size_t n, std::size_t m)
        : n_(n), m_(m), coef_((n + 1) * m, cplx(0.0, 0.0)) {
        if (n < 4 || !detail::is_pow2(n))
            throw std::invalid_argument("Spectrum: N must be a power of two, N >= 4");
        if (m == 0 || m > 3) throw std::invalid_argument("Spectrum: m must be 1..3");
    }

    std::size_t grid_size() const { return n_; }
    std::size_t dim() const { return m_; }
    long max_mode() const { return long(n_) / 2; }

    cplx& at(long k, std::size_t c) { return coef_[idx(k, c)]; }
    cplx at(long k, std::size_t c) const { return coef_[idx(k, c)]; }

    double mode_norm2(long k) const {
        double s = 0.0;
        for (std::size_t c = 0; c < m_; ++c) s += std::norm(at(k, c));
        return s;
    }

  private:
    std::size_t idx(long k, std::size_t c) const {
        const long half = long(n_) / 2;
        if (k < -half || k > half) throw std::out_of_range("Spectrum: mode out of range");
        return std::size_t(k + half) * m_ + c;
    }

    std::size_t n_;
    std::size_t m_;
    std::vector<cplx> coef_;
};

// Discrete Fourier analysis of a grid map.
inline Spectrum analyze(const GridMap1D& u) {
    u.validate();
    const std::size_t n = u.grid_size(), m = u.dim();
    Spectrum s(n, m);
    std::vector<cplx> buf(n);
    const long half = long(n) / 2;
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t j = 0; j < n; ++j) buf[j] = cplx(u.at(j, c), 0.0);
        detail::fft_inplace(buf, /*inverse=*/false);
        for (long k = -half + 1; k < half; ++k) {
            const std::size_t bin = k >= 0 ? std::size_t(k) : n - std::size_t(-k);
            s.at(k, c) = buf[bin] / double(n);
        }
        const cplx nyq = buf[std::size_t(half)] / double(n);
        s.at(half, c) = 0.5 * nyq;
        s.at(-half, c) = 0.5 * nyq;
    }
    return s;
}

// Trigonometric synthesis back to a uniform grid of size n_out. Exact for
// trigonometric polynomials resolved below the target Nyquist frequency;
// modes that cannot be represented must be zero.
inline GridMap1D synthesize(const Spectrum& s, std::size_t n_out, bool sphere_valued = false) {
    if (n_out < 4 || !detail::is_pow2(n_out))
        throw std::invalid_argument("synthesize: N must be a power of two, N >= 4");
    const long half_out = long(n_out) / 2;
    const long half_in = s.max_mode();
    if (half_out < half_in) {
        double cut = 0.0, total = 0.0;
        for (long k = -half_in; k <= half_in; ++k) {
            const double e = s.mode_norm2(k);
            total += e;
            if (k < -half_out || k > half_out) cut = std::max(cut, e);
        }
        if (cut > 1e-28 * std::max(total, 1e-300))
            throw std::invalid_argument("synthesize: grid too coarse for retained modes");
    }
    const std::size_t m = s.dim();
    GridMap1D u(n_out, m, sphere_valued);
    std::vector<cplx> buf(n_out);
    const long hi = std::min(half_in, half_out);
    for (std::size_t c = 0; c < m; ++c) {
        std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
        for (long k = -hi + 1; k < hi; ++k) {
            const std::size_t bin = k >= 0 ? std::size_t(k) : n_out - std::size_t(-k);
            buf[bin] += s.at(k, c);
        }
        // The +-hi pair lands in one bin: either the output Nyquist bin or a
        // regular resolved pair.
        if (hi == half_out) {
            buf[std::size_t(hi)] += s.at(hi, c) + s.at(-hi, c);
        } else {
            buf[std::size_t(hi)] += s.at(hi, c);
            buf[n_out - std::size_t(hi)] += s.at(-hi, c);
        }
        detail::fft_inplace(buf, /*inverse=*/true);
        for (std::size_t j = 0; j < n_out; ++j) u.at(j, c) = buf[j].real();
    }
    return u;
}

// Direct evaluation of the synthesis series at an arbitrary angle.
// Coefficients at or below the relative floor are skipped; the floor is far
// under every tolerance used by the verifiers.
inline RVec evaluate(const Spectrum& s, double theta) {
    const long half = s.max_mode();
    double peak = 0.0;
    for (long k = -half; k <= half; ++k) peak = std::max(peak, s.mode_norm2(k));
    const double floor2 = peak * 1e-36;
    RVec out(s.dim());
    for (long k = -half; k <= half; ++k) {
        if (s.mode_norm2(k) <= floor2) continue;
        const cplx e = std::polar(1.0, double(k) * theta);
        for (std::size_t c = 0; c < s.dim(); ++c) out[c] += (s.at(k, c) * e).real();
    }
    return out;
}

// Fourier multiplier |n|^{2s} of the fractional Laplacian; only the orders
// used by the energy (s = 1/4) and the stationarity operator (s = 1/2) are
// admitted. The mean mode is annihilated.
inline Spectrum fractional_laplacian(const Spectrum& s, double order) {
    if (order != 0.25 && order != 0.5)
        throw std::invalid_argument("fractional_laplacian: order must be 1/4 or 1/2");
    Spectrum r = s;
    const long half = s.max_mode();
    for (long k = -half; k <= half; ++k) {
        const double mult = std::pow(std::abs(double(k)), 2.0 * order);
        for (std::size_t c = 0; c < s.dim(); ++c) r.at(k, c) = mult * s.at(k, c);
    }
    return r;
}

// d/dtheta as the multiplier i*n, with the Nyquist pair zeroed so real maps
// map to real maps.
inline Spectrum theta_derivative(const Spectrum& s) {
    Spectrum r = s;
    const long half = s.max_mode();
    for (long k = -half; k <= half; ++k) {
        const cplx mult = (k == half || k == -half) ? cplx(0.0, 0.0) : cplx(0.0, double(k));
        for (std::size_t c = 0; c < s.dim(); ++c) r.at(k, c) = mult * s.at(k, c);
    }
    return r;
}

// The half-Dirichlet energy \int |(-Delta)^{1/4} u|^2 dtheta = 2pi sum |n| |c_n|^2.
inline double half_energy(const Spectrum& s) {
    double e = 0.0;
    const long half = s.max_mode();
    for (long k = -half; k <= half; ++k) e += std::abs(double(k)) * s.mode_norm2(k);
    return two_pi * e;
}

// Uniform-grid circle integral; spectrally exact for resolved integrands and
// equal to 2pi c_0 by construction.
inline RVec integrate_s1(const GridMap1D& u) {
    RVec acc(u.dim());
    for (std::size_t j = 0; j < u.grid_size(); ++j) acc += u.sample(j);
    return acc * (two_pi / double(u.grid_size()));
}

// Fraction of the map's oscillatory L^2 mass in the top eighth of the band;
// the resolution check used by operators that need fully resolved inputs.
inline double tail_energy_fraction(const Spectrum& s) {
    const long half = s.max_mode();
    const long cutoff = (7 * half) / 8;
    double total = 0.0, tail = 0.0;
    for (long k = -half; k <= half; ++k) {
        if (k == 0) continue;
        const double e = s.mode_norm2(k);
        total += e;
        if (std::abs(k) >= cutoff) tail += e;
    }
    if (total == 0.0) return 0.0;
    return tail / total;
}

// Winding number of a circle-valued map, computed spectrally from
// (1/2pi) \int <J u, du/dtheta> dtheta.
inline double winding_number(const GridMap1D& u) {
    if (u.dim() != 2) throw std::invalid_argument("winding_number: m must be 2");
    const Spectrum s = analyze(u);
    const GridMap1D du = synthesize(theta_derivative(s), u.grid_size());
    double acc = 0.0;
    for (std::size_t j = 0; j < u.grid_size(); ++j)
        acc += dot(quarter_turn(u.sample(j)), du.sample(j));
    return acc / double(u.grid_size());
}

}  // namespace poho
