#pragma once

// Integer lattice vectors, GL(2,Z) matrices and the affine maps
// p -> Bp + r that move moment domains around the plane.

#include "blowdown/rational.hpp"

#include <utility>

namespace blowdown {

struct LatticeVec {
    Int x;
    Int y;

    LatticeVec operator+(const LatticeVec& o) const { return {x + o.x, y + o.y}; }
    LatticeVec operator-(const LatticeVec& o) const { return {x - o.x, y - o.y}; }
    LatticeVec operator-() const { return {-x, -y}; }
    bool operator==(const LatticeVec& o) const = default;
};

inline Int cross(const LatticeVec& a, const LatticeVec& b) { return a.x * b.y - a.y * b.x; }
inline Int dot(const LatticeVec& a, const LatticeVec& b) { return a.x * b.x + a.y * b.y; }

// gcd(|x|,|y|) = 1 and (x,y) != (0,0)
inline bool is_primitive(const LatticeVec& v) {
    if (v.x == 0 && v.y == 0) return false;
    return gcd(abs(v.x), abs(v.y)) == 1;
}

// rotate 90 degrees counterclockwise; with the interior-left boundary
// convention this turns an edge direction into the inward normal
inline LatticeVec rot90ccw(const LatticeVec& v) { return {-v.y, v.x}; }

// Points (and displacement vectors) of the moment plane.
struct RatPoint {
    Rational x;
    Rational y;

    RatPoint operator+(const RatPoint& o) const { return {x + o.x, y + o.y}; }
    RatPoint operator-(const RatPoint& o) const { return {x - o.x, y - o.y}; }
    bool operator==(const RatPoint& o) const = default;
};

inline RatPoint operator*(const Rational& s, const LatticeVec& v) {
    return {s * Rational(v.x), s * Rational(v.y)};
}
inline RatPoint operator*(const Rational& s, const RatPoint& p) { return {s * p.x, s * p.y}; }

inline Rational cross(const RatPoint& a, const RatPoint& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const RatPoint& a, const RatPoint& b) { return a.x * b.x + a.y * b.y; }
inline Rational dot(const LatticeVec& a, const RatPoint& b) {
    return Rational(a.x) * b.x + Rational(a.y) * b.y;
}
inline RatPoint to_rat(const LatticeVec& v) { return {Rational(v.x), Rational(v.y)}; }

// 2x2 integer matrix, row major: [[a b], [c d]].
struct Mat2 {
    Int a, b, c, d;

    static Mat2 identity() { return {1, 0, 0, 1}; }

    Int det() const { return a * d - b * c; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    LatticeVec operator*(const LatticeVec& v) const {
        return {a * v.x + b * v.y, c * v.x + d * v.y};
    }
    RatPoint operator*(const RatPoint& p) const {
        return {Rational(a) * p.x + Rational(b) * p.y, Rational(c) * p.x + Rational(d) * p.y};
    }
    bool operator==(const Mat2& o) const = default;
};

// Affine map p -> Bp + r with B in GL(2,Z).
class UnimodularMap {
public:
    UnimodularMap() : linear_(Mat2::identity()), translation_{0, 0} {}

    UnimodularMap(Mat2 linear, RatPoint translation)
        : linear_(std::move(linear)), translation_(std::move(translation)) {
        Int d = linear_.det();
        if (d != 1 && d != -1)
            throw std::invalid_argument("UnimodularMap: determinant must be +1 or -1");
    }

    static UnimodularMap translation_by(RatPoint r) {
        return UnimodularMap(Mat2::identity(), std::move(r));
    }

    const Mat2& linear() const { return linear_; }
    const RatPoint& translation() const { return translation_; }

    RatPoint operator()(const RatPoint& p) const { return linear_ * p + translation_; }
    LatticeVec map_direction(const LatticeVec& v) const { return linear_ * v; }

    UnimodularMap inverse() const {
        Int det = linear_.det();
        // adj / det stays integral because det = +-1
        Mat2 inv{linear_.d / det, -linear_.b / det, -linear_.c / det, linear_.a / det};
        RatPoint r = inv * translation_;
        return UnimodularMap(inv, RatPoint{-r.x, -r.y});
    }

    UnimodularMap compose(const UnimodularMap& inner) const {
        return UnimodularMap(linear_ * inner.linear_, (*this)(inner.translation_));
    }

    bool operator==(const UnimodularMap& o) const {
        return linear_ == o.linear_ && translation_ == o.translation_;
    }

private:
    Mat2 linear_;
    RatPoint translation_;
};

// extended gcd: returns (g, s, t) with s*a + t*b = g = gcd(a,b) >= 0
inline std::tuple<Int, Int, Int> ext_gcd(Int a, Int b) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
        old_t -= q * t;
        std::swap(old_t, t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

inline Int mod_inverse(const Int& a, const Int& n) {
    auto [g, s, t] = ext_gcd(a, n);
    if (g != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    return ((s % n) + n) % n;
}

}  // namespace blowdown
