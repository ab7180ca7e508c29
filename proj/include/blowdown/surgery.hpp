#pragma once

// The blowdown pipeline: the fit inequality and its budget, the
// explicit embedding translations, exact volume accounting for the
// surgered manifold, plumbing intersection forms and the topological
// invariant deltas.

#include "blowdown/domain.hpp"

#include <optional>
#include <span>
#include <vector>

namespace blowdown {

// Chain of n-1 spheres with self-intersections -(n+2), -2, ..., -2 and
// the given symplectic areas.
struct ChainSpec {
    int n;
    std::vector<Rational> areas;

    ChainSpec(int n_, std::vector<Rational> areas_) : n(n_), areas(std::move(areas_)) {
        if (n < 2) throw std::invalid_argument("ChainSpec: n must be >= 2");
        if (areas.size() != static_cast<std::size_t>(n - 1))
            throw std::invalid_argument("ChainSpec: need exactly n-1 sphere areas");
        for (const Rational& a : areas)
            if (a <= 0) throw std::invalid_argument("ChainSpec: areas must be positive");
    }
};

// Section areas of the rational ball's ruled-surface completion.
struct BallSpec {
    Rational alpha_plus;
    Rational alpha_minus;

    bool valid_for(int n) const {
        return alpha_minus > 0 && alpha_plus > Rational(n + 1) * alpha_minus;
    }
};

struct ManifoldInvariants {
    Int euler;
    Int signature;
    Int b2;
    Rational volume;

    ManifoldInvariants(Int euler_, Int signature_, Int b2_, Rational volume_)
        : euler(std::move(euler_)), signature(std::move(signature_)), b2(std::move(b2_)),
          volume(std::move(volume_)) {
        if (b2 < 0) throw std::invalid_argument("ManifoldInvariants: b2 must be >= 0");
    }
};

struct FitReport {
    bool feasible = false;
    UnimodularMap phi1;
    UnimodularMap phi2;
    Rational margin;     // phi1 translation height minus phi2 translation height
    std::string reason;  // empty when feasible
};

struct InvariantDeltas {
    Int euler;
    Int signature;
    Int b2;
    Int c1_squared;
    Rational volume;
};

struct BlowdownReport {
    std::optional<FitReport> fit;  // absent for n = 2 (conic-sum path)
    Rational volume_delta;
    InvariantDeltas deltas;
    ManifoldInvariants new_invariants;
};

// Budget sum((n-1) n_{i-1} - n^2 m_{i-1}) a_i bounding the admissible
// ball section areas; the coefficient identity (n-1)n_{i-1} - n^2
// m_{i-1} = n - i is asserted term by term.
inline Rational chain_budget(const ChainSpec& c) {
    auto conv = chain_convergents(c.n, c.n - 1);
    const Int n2 = Int(c.n) * c.n;
    Rational total = 0;
    for (int i = 1; i <= c.n - 1; ++i) {
        const LatticeVec& r = conv[static_cast<std::size_t>(i - 1)].r;
        Int coeff = Int(c.n - 1) * r.x - n2 * r.y;
        if (coeff != c.n - i)
            throw std::logic_error("chain_budget: coefficient identity (n-1)n_{i-1} - n^2 m_{i-1} = n-i failed");
        total += Rational(coeff) * c.areas[static_cast<std::size_t>(i - 1)];
    }
    return total;
}

// Vertical translation placing the chain collar inside the wedge of
// L(n^2, n-1): the axis leg stays on {p1 = 0} and the outgoing ray
// lands on the line p2 = ((n-1)/n^2) p1.
inline UnimodularMap embedding_phi1(const ChainSpec& c) {
    Rational dy = chain_budget(c) / Rational(Int(c.n) * c.n);
    return UnimodularMap::translation_by({0, dy});
}

// Vertical translation placing the ball collar in the same wedge, its
// legs landing on the two wedge edges.
inline UnimodularMap embedding_phi2(const ChainSpec& c, const BallSpec& b) {
    if (!b.valid_for(c.n))
        throw infeasible_ball_error("embedding_phi2: requires alpha_plus > (n+1) * alpha_minus > 0");
    Rational dy =
        (Rational(c.n - 1) * b.alpha_plus + b.alpha_minus) / Rational(Int(c.n) * c.n);
    return UnimodularMap::translation_by({0, dy});
}

namespace detail {

// Height of the chain domain's lower boundary over p1 = x (the chain
// polyline continued by the outgoing ray).
inline Rational lower_envelope_at(const PolyDomain& d, const Rational& x) {
    if (x < d.vertex(0).x) throw std::invalid_argument("lower_envelope_at: x left of the domain");
    const auto& es = d.edges();
    for (std::size_t j = 1; j < d.vertex_count(); ++j) {
        if (x <= d.vertex(j).x) {
            const RatPoint& a = d.vertex(j - 1);
            const LatticeVec& dir = es[j].direction;
            return a.y + (x - a.x) * Rational(dir.y) / Rational(dir.x);
        }
    }
    const RatPoint& a = d.vertex(d.vertex_count() - 1);
    const LatticeVec& dir = es.back().direction;
    return a.y + (x - a.x) * Rational(dir.y) / Rational(dir.x);
}

// Exact geometric verification behind a feasible fit: the translated
// chain collar sits in the wedge with its legs on the wedge edges, and
// the translated ball collar sits strictly below the chain polyline.
inline void verify_fit(const ChainSpec& c, const BallSpec& b, const UnimodularMap& phi1,
                       const UnimodularMap& phi2) {
    const Int n2 = Int(c.n) * c.n;
    const Int nm1 = Int(c.n) - 1;
    auto on_slant = [&](const RatPoint& p) { return n2 * p.y == Rational(nm1) * p.x; };

    PolyDomain wedge = make_wedge(n2, nm1);
    PolyDomain chain = apply_affine(make_chain_collar(c.n, c.areas), phi1);
    if (chain.vertex(0).x != 0)
        throw std::logic_error("verify_fit: chain axis leg left {p1 = 0}");
    if (!on_slant(chain.vertex(chain.vertex_count() - 1)))
        throw std::logic_error("verify_fit: chain ray base is off the wedge slant edge");
    if (!domain_contains(wedge, chain))
        throw std::logic_error("verify_fit: translated chain collar escapes the wedge");

    PolyDomain ball = apply_affine(make_ball_collar_domain(c.n, b.alpha_plus, b.alpha_minus), phi2);
    const RatPoint& v_mid = ball.vertex(0);
    const RatPoint& v_right = ball.vertex(1);
    const RatPoint& v_origin = ball.vertex(2);
    if (v_origin.x != 0) throw std::logic_error("verify_fit: ball axis leg left {p1 = 0}");
    if (!on_slant(v_mid)) throw std::logic_error("verify_fit: ball ray base is off the slant edge");
    if (!(n2 * v_right.y > Rational(nm1) * v_right.x))
        throw std::logic_error("verify_fit: ball corner below the slant edge");

    // both boundaries are piecewise linear in p1, so mutual strictness
    // at every breakpoint in range gives strictness everywhere
    for (const RatPoint* v : {&v_mid, &v_right, &v_origin})
        if (!(v->y < lower_envelope_at(chain, v->x)))
            throw std::logic_error("verify_fit: ball collar is not strictly below the chain");
    for (std::size_t j = 0; j < chain.vertex_count(); ++j) {
        const RatPoint& v = chain.vertex(j);
        if (v.x <= v_right.x && !(v.y > v_origin.y))
            throw std::logic_error("verify_fit: chain vertex is not strictly above the ball");
    }
}

}  // namespace detail

// Decide whether the ball fits below the chain collar. Both
// inequalities are strict; a feasible verdict is backed by an exact
// geometric verification of the two embeddings.
inline FitReport ball_feasible(const ChainSpec& c, const BallSpec& b) {
    FitReport r;
    const Int n2 = Int(c.n) * c.n;
    Rational budget = chain_budget(c);
    Rational used = Rational(c.n - 1) * b.alpha_plus + b.alpha_minus;
    r.phi1 = UnimodularMap::translation_by({0, budget / Rational(n2)});
    r.phi2 = UnimodularMap::translation_by({0, used / Rational(n2)});
    r.margin = (budget - used) / Rational(n2);

    if (c.n < 3)
        r.reason = "n = 2 blows down by the conic sum; no rational-ball collar is defined";
    else if (!b.valid_for(c.n))
        r.reason = "ball sections must satisfy alpha_plus > (n+1) * alpha_minus > 0";
    else if (!(r.margin > 0))
        r.reason = "(n-1) * alpha_plus + alpha_minus must be strictly below the chain budget";
    else {
        r.feasible = true;
        detail::verify_fit(c, b, r.phi1, r.phi2);
    }
    return r;
}

// Deterministic default ball: alpha_minus = budget / (2(n^2+n-1)) and
// alpha_plus = (n+2) alpha_minus, the midpoint of the budget constraint.
inline BallSpec choose_ball(const ChainSpec& c) {
    if (c.n < 3) throw std::invalid_argument("choose_ball: n = 2 uses the conic-sum path");
    Rational budget = chain_budget(c);
    Rational am = budget / Rational(2 * (Int(c.n) * c.n + c.n - 1));
    return BallSpec{Rational(c.n + 2) * am, am};
}

// Exact area of the region gained by the surgery: the polygon between
// the wedge edges and the translated chain polyline. Independent of any
// ball choice.
inline Rational blowdown_volume_delta(const ChainSpec& c) {
    Rational dy = chain_budget(c) / Rational(Int(c.n) * c.n);
    auto conv = chain_convergents(c.n, c.n - 1);
    std::vector<RatPoint> cycle;
    cycle.push_back({0, 0});
    RatPoint t{0, dy};
    cycle.push_back(t);
    for (int i = 1; i <= c.n - 1; ++i) {
        t = t + c.areas[static_cast<std::size_t>(i - 1)] * conv[static_cast<std::size_t>(i - 1)].r;
        cycle.push_back(t);
    }
    return polygon_area(cycle);
}

// Volume of the filled rational ball, computed two ways: shoelace of
// the filled collar quadrilateral, and the ruled-surface formula
// t*alpha_minus + (n-1)t^2/2 with fiber area t = (alpha_plus -
// alpha_minus)/n. The two must agree exactly.
inline Rational ball_volume(int n, const BallSpec& b) {
    if (n < 3) throw std::invalid_argument("ball_volume: n must be >= 3");
    if (!b.valid_for(n))
        throw infeasible_ball_error("ball_volume: requires alpha_plus > (n+1) * alpha_minus > 0");
    auto pentagon = ball_pentagon(n, b.alpha_plus, b.alpha_minus);
    Rational by_shoelace = polygon_area(pentagon);
    Rational t = (b.alpha_plus - b.alpha_minus) / Rational(n);
    Rational by_ruled = t * b.alpha_minus + Rational(n - 1) * t * t / 2;
    if (by_shoelace != by_ruled)
        throw std::logic_error("ball_volume: shoelace and ruled-surface volumes disagree");
    return by_shoelace;
}

class IntMatrix {
public:
    explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, Int(0)) {
        if (n == 0) throw std::invalid_argument("IntMatrix: size must be >= 1");
    }

    std::size_t size() const { return n_; }
    Int& at(std::size_t i, std::size_t j) { return data_.at(i * n_ + j); }
    const Int& at(std::size_t i, std::size_t j) const { return data_.at(i * n_ + j); }
    bool operator==(const IntMatrix& o) const = default;

private:
    std::size_t n_;
    std::vector<Int> data_;
};

// Tridiagonal intersection form of the linear plumbing -b_1, ..., -b_s.
inline IntMatrix plumbing_matrix(std::span<const Int> b) {
    if (b.empty()) throw std::invalid_argument("plumbing_matrix: need at least one term");
    IntMatrix m(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        m.at(i, i) = -b[i];
        if (i + 1 < b.size()) {
            m.at(i, i + 1) = 1;
            m.at(i + 1, i) = 1;
        }
    }
    return m;
}

inline IntMatrix plumbing_matrix(const CfExpansion& b) {
    return plumbing_matrix(std::span<const Int>(b.terms()));
}

// Exact determinant, fraction-free Bareiss elimination.
inline Int determinant(IntMatrix m) {
    const std::size_t n = m.size();
    Int prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && m.at(pivot, k) == 0) ++pivot;
            if (pivot == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sgn * m.at(n - 1, n - 1);
}

inline std::vector<Int> leading_principal_minors(const IntMatrix& m) {
    std::vector<Int> out;
    out.reserve(m.size());
    for (std::size_t k = 1; k <= m.size(); ++k) {
        IntMatrix sub(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(i, j);
        out.push_back(determinant(std::move(sub)));
    }
    return out;
}

// Sylvester test: the k-th leading principal minor must have sign
// (-1)^k for every k.
inline bool is_negative_definite(const IntMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (m.at(i, j) != m.at(j, i))
                throw std::invalid_argument("is_negative_definite: matrix is not symmetric");
    auto minors = leading_principal_minors(m);
    for (std::size_t k = 0; k < minors.size(); ++k) {
        bool want_negative = (k % 2 == 0);  // minor index k is the (k+1)-st
        if (minors[k] == 0) return false;
        if ((minors[k] < 0) != want_negative) return false;
    }
    return true;
}

// Full report for blowing down the chain inside a manifold with the
// given invariants. For n >= 3 a ball is chosen (or validated); n = 2
// needs none. Removing the chain neighborhood and gluing the rational
// ball changes (chi, sigma, b2, c1^2) by (-(n-1), n-1, -(n-1), n-1).
inline BlowdownReport blowdown_report(const ManifoldInvariants& m, const ChainSpec& c,
                                      const std::optional<BallSpec>& b = std::nullopt) {
    const Int k = Int(c.n) - 1;
    if (m.b2 < k)
        throw std::invalid_argument("blowdown_report: manifold b2 is too small to carry the chain");

    std::optional<FitReport> fit;
    if (c.n == 2) {
        if (b.has_value())
            throw std::invalid_argument("blowdown_report: n = 2 takes no ball (conic-sum path)");
    } else {
        BallSpec ball = b.has_value() ? *b : choose_ball(c);
        FitReport fr = ball_feasible(c, ball);
        if (!fr.feasible) {
            if (b.has_value())
                throw infeasible_ball_error("blowdown_report: explicit ball does not fit: " + fr.reason);
            throw std::logic_error("blowdown_report: default ball failed the fit check");
        }
        fit = std::move(fr);
    }

    Rational dvol = blowdown_volume_delta(c);
    InvariantDeltas deltas{-k, k, -k, k, dvol};
    ManifoldInvariants updated(m.euler - k, m.signature + k, m.b2 - k, m.volume + dvol);
    return BlowdownReport{std::move(fit), std::move(dvol), std::move(deltas), std::move(updated)};
}

}  // namespace blowdown
