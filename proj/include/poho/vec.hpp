#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace poho {

inline constexpr double two_pi = 2.0 * M_PI;

// Small fixed-capacity vector for target-space values (m <= 3).
struct RVec {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    std::size_t m = 0;

    RVec() = default;
    explicit RVec(std::size_t dim) : m(dim) {
        if (dim == 0 || dim > 3) throw std::invalid_argument("RVec: dim must be 1..3");
    }
    RVec(double x, double y) : v{x, y, 0.0}, m(2) {}
    RVec(double x, double y, double z) : v{x, y, z}, m(3) {}
    static RVec scalar(double x) {
        RVec r(std::size_t{1});
        r.v[0] = x;
        return r;
    }

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    RVec& operator+=(const RVec& o) {
        for (std::size_t i = 0; i < m; ++i) v[i] += o.v[i];
        return *this;
    }
    RVec& operator-=(const RVec& o) {
        for (std::size_t i = 0; i < m; ++i) v[i] -= o.v[i];
        return *this;
    }
    RVec& operator*=(double s) {
        for (std::size_t i = 0; i < m; ++i) v[i] *= s;
        return *this;
    }
    friend RVec operator+(RVec a, const RVec& b) { return a += b; }
    friend RVec operator-(RVec a, const RVec& b) { return a -= b; }
    friend RVec operator*(double s, RVec a) { return a *= s; }
    friend RVec operator*(RVec a, double s) { return a *= s; }
};

inline double dot(const RVec& a, const RVec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.m; ++i) s += a.v[i] * b.v[i];
    return s;
}

inline double norm(const RVec& a) { return std::sqrt(dot(a, a)); }

// Quarter turn in the plane; defined for m = 2 only.
inline RVec quarter_turn(const RVec& a) {
    if (a.m != 2) throw std::invalid_argument("quarter_turn: m must be 2");
    return RVec(-a.v[1], a.v[0]);
}

}  // namespace poho
