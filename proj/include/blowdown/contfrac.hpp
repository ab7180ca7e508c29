#pragma once

// Negative continued fractions [b1,...,bs] = b1 - 1/(b2 - 1/(...)) with
// every term >= 2, the convergent data attached to sphere chains, the
// chain gluing maps, and lens-space classification of polygon corners.

#include "blowdown/lattice.hpp"
#include "blowdown/rational.hpp"

#include <span>
#include <vector>

namespace blowdown {

class CfExpansion {
public:
    explicit CfExpansion(std::vector<Int> terms) : terms_(std::move(terms)) {
        if (terms_.empty()) throw std::invalid_argument("CfExpansion: no terms");
        for (const Int& b : terms_)
            if (b < 2) throw std::invalid_argument("CfExpansion: every term must be >= 2");
    }

    const std::vector<Int>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool operator==(const CfExpansion& o) const { return terms_ == o.terms_; }

private:
    std::vector<Int> terms_;
};

// n/m = [b1,...,bs], all terms >= 2; requires n > m >= 1 coprime.
inline CfExpansion neg_cf_expand(Int n, Int m) {
    if (n <= 0 || m <= 0) throw std::invalid_argument("neg_cf_expand: inputs must be positive");
    if (m >= n) throw std::invalid_argument("neg_cf_expand: requires n > m");
    if (gcd(n, m) != 1) throw std::invalid_argument("neg_cf_expand: n, m must be coprime");
    std::vector<Int> terms;
    while (m != 0) {
        Int b = (n + m - 1) / m;  // ceil(n/m)
        terms.push_back(b);
        Int next = b * m - n;
        n = m;
        m = next;
    }
    return CfExpansion(std::move(terms));
}

// exact value of the expansion as a coprime pair (n, m), n/m > 1
inline std::pair<Int, Int> neg_cf_eval(const CfExpansion& e) {
    const auto& b = e.terms();
    Int p = b.back(), q = 1;
    for (std::size_t i = b.size() - 1; i-- > 0;) {
        Int np = b[i] * p - q;
        q = p;
        p = np;
    }
    if (gcd(p, q) != 1) throw std::logic_error("neg_cf_eval: continuants not coprime");
    return {p, q};
}

// Convergent i of the chain expansion [n+2, 2, ..., 2]:
// n_i/m_i is the value of the length-i prefix and r_i = (n_{i-1}, m_{i-1})
// is the lattice direction of the i-th chain edge (n_0 = 1, m_0 = 0).
struct Convergent {
    Int n;
    Int m;
    LatticeVec r;
    bool operator==(const Convergent& o) const = default;
};

// Convergents i = 1..count of [n+2,2,...,2]. Each value is computed by
// direct evaluation and checked against the closed form
// n_i = (n+1)i + 1, m_i = i; disagreement is a hard internal error.
inline std::vector<Convergent> chain_convergents(int n, int count) {
    if (n < 2) throw std::invalid_argument("chain_convergents: n must be >= 2");
    if (count < 1 || count > n)
        throw std::invalid_argument("chain_convergents: count must be in [1, n]");
    std::vector<Convergent> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<Int> prefix;
    Int prev_n = 1, prev_m = 0;
    for (int i = 1; i <= count; ++i) {
        prefix.push_back(i == 1 ? Int(n) + 2 : Int(2));
        auto [ni, mi] = neg_cf_eval(CfExpansion(prefix));
        if (ni != Int(n + 1) * i + 1 || mi != i)
            throw std::logic_error("chain_convergents: closed form disagrees with evaluation");
        LatticeVec r{prev_n, prev_m};
        if (!is_primitive(r)) throw std::logic_error("chain_convergents: r_i not primitive");
        out.push_back({ni, mi, r});
        prev_n = ni;
        prev_m = mi;
    }
    return out;
}

// Gluing map (T_i, t_i) that places the i-th standard disk-bundle block
// into the chain picture: T_i = R_{n+2} R_2^{i-2} with
// R_k = [[k,-1],[1,0]], and t_i = sum_{j<i} a_j r_j.
inline UnimodularMap gluing_map(int n, int i, std::span<const Rational> areas) {
    if (n < 3) throw std::invalid_argument("gluing_map: n must be >= 3");
    if (i < 2 || i > n - 1) throw std::out_of_range("gluing_map: index must satisfy 2 <= i <= n-1");
    if (areas.size() < static_cast<std::size_t>(i - 1))
        throw std::invalid_argument("gluing_map: need at least i-1 areas");
    for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(i); ++j)
        if (areas[j] <= 0) throw std::invalid_argument("gluing_map: areas must be positive");

    auto rk = [](Int k) { return Mat2{k, -1, 1, 0}; };
    Mat2 t = rk(Int(n) + 2);
    for (int k = 0; k < i - 2; ++k) t = t * rk(2);
    if (t.det() != 1) throw std::logic_error("gluing_map: determinant is not +1");

    auto conv = chain_convergents(n, i - 1);
    RatPoint trans{0, 0};
    for (int j = 1; j <= i - 1; ++j)
        trans = trans + areas[static_cast<std::size_t>(j - 1)] * conv[static_cast<std::size_t>(j - 1)].r;
    return UnimodularMap(t, trans);
}

// Classify a corner with primitive edge directions u, v (emanating from
// the vertex) as a lens space L(n, m): n = |det[u v]|, m is read off
// after a GL(2,Z) change of basis sending u to (0,1), canonicalized by
// m <-> m^{-1} mod n. Delzant corners give (1, 0).
inline std::pair<Int, Int> lens_from_corner(const LatticeVec& u, const LatticeVec& v) {
    if (!is_primitive(u) || !is_primitive(v))
        throw std::invalid_argument("lens_from_corner: directions must be primitive");
    Int d = cross(u, v);
    if (d == 0) throw std::invalid_argument("lens_from_corner: directions are parallel");
    Int n = abs(d);
    if (n == 1) return {Int(1), Int(0)};
    auto [g, s, t] = ext_gcd(u.x, u.y);
    if (g != 1) throw std::logic_error("lens_from_corner: extended gcd of a primitive vector");
    Int y = s * v.x + t * v.y;
    Int m = ((y % n) + n) % n;
    Int minv = mod_inverse(m, n);
    return {n, m < minv ? m : minv};
}

}  // namespace blowdown
