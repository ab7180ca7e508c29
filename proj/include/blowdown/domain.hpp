#pragma once

// Polygonal moment domains: boundary chains of closed segments and up
// to two unbounded rays, traversed with the domain interior on the
// left. Constructors build the standard models (lens wedge, sphere
// chain, general linear plumbing, rational-ball collar); queries give
// edge sphere invariants, exact areas, affine transport, containment
// and the boundary-reduction point map.

#include "blowdown/contfrac.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blowdown {

struct infeasible_ball_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct Edge {
    std::optional<RatPoint> start;  // nullopt = unbounded
    std::optional<RatPoint> end;
    LatticeVec direction;  // primitive, points from start toward end
    bool closed = true;

    bool bounded() const { return start.has_value() && end.has_value(); }
    bool operator==(const Edge& o) const = default;
};

// Boundary chain of a moment domain. The chain starts and ends with an
// unbounded ray; all intermediate edges are bounded segments whose
// shared endpoints are the vertices. A vertex belongs to the domain's
// point set only if it is not flagged excluded and both adjacent edges
// are closed (an open edge removes the whole line, endpoints included).
class PolyDomain {
public:
    PolyDomain(std::vector<Edge> edges, std::vector<bool> corner_excluded)
        : edges_(std::move(edges)), corner_excluded_(std::move(corner_excluded)) {
        validate();
    }

    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return edges_.size() - 1; }
    const RatPoint& vertex(std::size_t j) const { return *edges_.at(j).end; }

    bool corner_excluded(std::size_t j) const { return corner_excluded_.at(j); }
    const std::vector<bool>& corner_excluded_flags() const { return corner_excluded_; }

    bool delzant_corner(std::size_t j) const {
        return abs(cross(edges_.at(j).direction, edges_.at(j + 1).direction)) == 1;
    }

    bool vertex_in_point_set(std::size_t j) const {
        return !corner_excluded_.at(j) && edges_.at(j).closed && edges_.at(j + 1).closed;
    }

    // positive rational multiple relating a bounded edge's displacement
    // to its primitive direction (the symplectic area of its sphere)
    Rational lattice_length(std::size_t k) const {
        const Edge& e = edges_.at(k);
        if (!e.bounded())
            throw std::invalid_argument("lattice_length: edge is unbounded");
        RatPoint disp = *e.end - *e.start;
        return e.direction.x != 0 ? disp.x / Rational(e.direction.x)
                                  : disp.y / Rational(e.direction.y);
    }

    bool operator==(const PolyDomain& o) const {
        return edges_ == o.edges_ && corner_excluded_ == o.corner_excluded_;
    }

private:
    void validate() const {
        if (edges_.size() < 2)
            throw std::invalid_argument("PolyDomain: need at least two edges");
        if (edges_.front().start.has_value() || edges_.back().end.has_value())
            throw std::invalid_argument("PolyDomain: boundary must start and end unbounded");
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            const Edge& e = edges_[k];
            if (k > 0 && !e.start.has_value())
                throw std::invalid_argument("PolyDomain: interior edge missing start");
            if (k + 1 < edges_.size() && !e.end.has_value())
                throw std::invalid_argument("PolyDomain: interior edge missing end");
            if (!is_primitive(e.direction))
                throw std::invalid_argument("PolyDomain: edge direction must be primitive");
            if (e.bounded()) {
                RatPoint disp = *e.end - *e.start;
                Rational len = e.direction.x != 0 ? disp.x / Rational(e.direction.x)
                                                  : disp.y / Rational(e.direction.y);
                if (len <= 0 || disp.x != len * Rational(e.direction.x) ||
                    disp.y != len * Rational(e.direction.y))
                    throw std::invalid_argument(
                        "PolyDomain: edge displacement is not a positive multiple of its direction");
            }
        }
        for (std::size_t j = 0; j + 1 < edges_.size(); ++j) {
            if (*edges_[j].end != *edges_[j + 1].start)
                throw std::invalid_argument("PolyDomain: consecutive edges must share a vertex");
            if (cross(edges_[j].direction, edges_[j + 1].direction) == 0)
                throw std::invalid_argument("PolyDomain: consecutive edge directions are parallel");
        }
        if (corner_excluded_.size() != vertex_count())
            throw std::invalid_argument("PolyDomain: one exclusion flag per vertex required");
    }

    std::vector<Edge> edges_;
    std::vector<bool> corner_excluded_;
};

// Wedge {p1 >= 0, p2 >= (m/n) p1} whose boundary reduction is the lens
// collar L(n,m) x (0,inf). The apex is removed unless it is Delzant;
// (1,0) gives the closed quadrant.
inline PolyDomain make_wedge(const Int& n, const Int& m) {
    if (!(n == 1 && m == 0)) {
        if (!(n >= m && m >= 1))
            throw std::invalid_argument("make_wedge: requires n >= m >= 1 (or the quadrant (1,0))");
        if (gcd(n, m) != 1) throw std::invalid_argument("make_wedge: n, m must be coprime");
    }
    RatPoint apex{0, 0};
    std::vector<Edge> edges;
    edges.push_back({std::nullopt, apex, LatticeVec{0, -1}, true});
    edges.push_back({apex, std::nullopt, LatticeVec{n, m}, true});
    bool delzant = (n == 1);
    return PolyDomain(std::move(edges), {!delzant});
}

namespace detail {

inline void check_areas(std::span<const Rational> areas, const char* who) {
    for (const Rational& a : areas)
        if (a <= 0) throw std::invalid_argument(std::string(who) + ": areas must be positive");
}

inline PolyDomain chain_domain_impl(int n, std::span<const Rational> areas, bool collar) {
    if (n < 2) throw std::invalid_argument("make_chain_domain: n must be >= 2");
    if (areas.size() != static_cast<std::size_t>(n - 1))
        throw std::invalid_argument("make_chain_domain: need exactly n-1 sphere areas");
    check_areas(areas, "make_chain_domain");
    auto conv = chain_convergents(n, n);
    std::vector<Edge> edges;
    RatPoint t{0, 0};
    edges.push_back({std::nullopt, t, LatticeVec{0, -1}, true});
    for (int i = 1; i <= n - 1; ++i) {
        const LatticeVec& r = conv[static_cast<std::size_t>(i - 1)].r;
        RatPoint next = t + areas[static_cast<std::size_t>(i - 1)] * r;
        edges.push_back({t, next, r, !collar});
        t = next;
    }
    edges.push_back({t, std::nullopt, conv[static_cast<std::size_t>(n - 1)].r, true});
    return PolyDomain(std::move(edges), std::vector<bool>(static_cast<std::size_t>(n), false));
}

inline PolyDomain plumbing_domain_impl(const CfExpansion& b, std::span<const Rational> areas,
                                       bool collar) {
    const std::size_t s = b.size();
    if (areas.size() != s)
        throw std::invalid_argument("make_general_plumbing_domain: one area per chain term");
    check_areas(areas, "make_general_plumbing_domain");
    std::vector<Edge> edges;
    RatPoint t{0, 0};
    edges.push_back({std::nullopt, t, LatticeVec{0, -1}, true});
    // continuants of the prefixes give the successive edge directions
    Int n_prev = 0, n_cur = 1;  // n_{i-2}, n_{i-1}
    Int m_prev = -1, m_cur = 0;
    for (std::size_t i = 0; i < s; ++i) {
        LatticeVec r{n_cur, m_cur};
        if (!is_primitive(r))
            throw std::logic_error("make_general_plumbing_domain: convergent not primitive");
        RatPoint next = t + areas[i] * r;
        edges.push_back({t, next, r, !collar});
        t = next;
        Int n_next = b.terms()[i] * n_cur - n_prev;
        Int m_next = b.terms()[i] * m_cur - m_prev;
        n_prev = n_cur;
        n_cur = n_next;
        m_prev = m_cur;
        m_cur = m_next;
    }
    edges.push_back({t, std::nullopt, LatticeVec{n_cur, m_cur}, true});
    return PolyDomain(std::move(edges), std::vector<bool>(s + 1, false));
}

}  // namespace detail

// Chain neighborhood model: the region above the sphere-chain polyline,
// between the vertical axis and the outgoing ray of direction
// (n^2, n-1). Chain edges are the spheres S_1..S_{n-1}.
inline PolyDomain make_chain_domain(int n, std::span<const Rational> areas) {
    return detail::chain_domain_impl(n, areas, false);
}

// Collar variant: same region with the sphere edges removed (open).
inline PolyDomain make_chain_collar(int n, std::span<const Rational> areas) {
    return detail::chain_domain_impl(n, areas, true);
}

// Linear plumbing with self-intersections -b_1..-b_s and given areas.
inline PolyDomain make_general_plumbing_domain(const CfExpansion& b,
                                               std::span<const Rational> areas) {
    return detail::plumbing_domain_impl(b, areas, false);
}

inline PolyDomain make_general_plumbing_collar(const CfExpansion& b,
                                               std::span<const Rational> areas) {
    return detail::plumbing_domain_impl(b, areas, true);
}

// Rational-ball collar: the two section edges (areas alpha_plus,
// alpha_minus) are open, the legs lie on the vertical axis and on the
// line of direction (n^2, n-1).
inline PolyDomain make_ball_collar_domain(int n, const Rational& alpha_plus,
                                          const Rational& alpha_minus) {
    if (n < 3) throw std::invalid_argument("make_ball_collar_domain: n must be >= 3");
    if (!(alpha_minus > 0 && alpha_plus > Rational(n + 1) * alpha_minus))
        throw infeasible_ball_error(
            "make_ball_collar_domain: requires alpha_plus > (n+1) * alpha_minus > 0");
    const Int big_n = Int(n);
    RatPoint v_origin{0, 0};
    RatPoint v_right{alpha_plus, 0};
    RatPoint v_mid{alpha_plus - Rational(n + 1) * alpha_minus, -alpha_minus};
    std::vector<Edge> edges;
    edges.push_back({std::nullopt, v_mid, LatticeVec{big_n * big_n, big_n - 1}, true});
    edges.push_back({v_mid, v_right, LatticeVec{big_n + 1, 1}, false});
    edges.push_back({v_right, v_origin, LatticeVec{-1, 0}, false});
    edges.push_back({v_origin, std::nullopt, LatticeVec{0, -1}, true});
    return PolyDomain(std::move(edges), std::vector<bool>(3, false));
}

// Filled closure of the ball collar, for volume bookkeeping: the
// quadrilateral closing at the axis point (0, -((n-1)a+ + a-)/n^2).
inline std::vector<RatPoint> ball_pentagon(int n, const Rational& alpha_plus,
                                           const Rational& alpha_minus) {
    if (n < 3) throw std::invalid_argument("ball_pentagon: n must be >= 3");
    if (!(alpha_minus > 0 && alpha_plus > Rational(n + 1) * alpha_minus))
        throw infeasible_ball_error("ball_pentagon: requires alpha_plus > (n+1) * alpha_minus > 0");
    Rational s = (Rational(n - 1) * alpha_plus + alpha_minus) / Rational(Int(n) * n);
    return {RatPoint{0, 0}, RatPoint{alpha_plus, 0},
            RatPoint{alpha_plus - Rational(n + 1) * alpha_minus, -alpha_minus}, RatPoint{0, -s}};
}

struct EdgeInvariant {
    Rational area;
    Int self_intersection;
    bool operator==(const EdgeInvariant& o) const = default;
};

// Invariants of the spheres carried by the bounded edges, in boundary
// order. The self-intersection is the unique integer s satisfying
// nu_prev + nu_next = -s * nu_mid on primitive inward normals, which
// exists because the adjacent vertices are Delzant.
inline std::vector<EdgeInvariant> edge_sphere_invariants(const PolyDomain& d) {
    std::vector<EdgeInvariant> out;
    const auto& es = d.edges();
    for (std::size_t k = 0; k < es.size(); ++k) {
        if (!es[k].bounded()) continue;
        const LatticeVec& dp = es[k - 1].direction;
        const LatticeVec& dm = es[k].direction;
        const LatticeVec& dn = es[k + 1].direction;
        if (abs(cross(dp, dm)) != 1 || abs(cross(dm, dn)) != 1)
            throw std::invalid_argument(
                "edge_sphere_invariants: edge is adjacent to a non-Delzant vertex");
        LatticeVec sum = rot90ccw(dp) + rot90ccw(dn);
        LatticeVec mid = rot90ccw(dm);
        Int s;
        if (mid.x != 0) {
            if (sum.x % mid.x != 0)
                throw std::invalid_argument("edge_sphere_invariants: normal relation not integral");
            s = -sum.x / mid.x;
        } else {
            if (sum.y % mid.y != 0)
                throw std::invalid_argument("edge_sphere_invariants: normal relation not integral");
            s = -sum.y / mid.y;
        }
        if (sum.x != -s * mid.x || sum.y != -s * mid.y)
            throw std::invalid_argument("edge_sphere_invariants: normal relation has no solution");
        out.push_back({d.lattice_length(k), s});
    }
    return out;
}

// Transport a domain by p -> Bp + r. A reflection (det B = -1) reverses
// the traversal, so the edge list is re-oriented to keep the interior
// on the left.
inline PolyDomain apply_affine(const PolyDomain& d, const UnimodularMap& f) {
    std::vector<Edge> edges;
    edges.reserve(d.edges().size());
    for (const Edge& e : d.edges()) {
        Edge ne;
        if (e.start) ne.start = f(*e.start);
        if (e.end) ne.end = f(*e.end);
        ne.direction = f.map_direction(e.direction);
        ne.closed = e.closed;
        edges.push_back(std::move(ne));
    }
    std::vector<bool> excluded = d.corner_excluded_flags();
    if (f.linear().det() == -1) {
        std::reverse(edges.begin(), edges.end());
        for (Edge& e : edges) {
            std::swap(e.start, e.end);
            e.direction = -e.direction;
        }
        std::reverse(excluded.begin(), excluded.end());
    }
    return PolyDomain(std::move(edges), std::move(excluded));
}

namespace detail {

struct HalfPlane {
    LatticeVec normal;  // inward
    Rational offset;
    bool closed;
    std::size_t edge;
};

inline RatPoint edge_ref_point(const Edge& e) { return e.start ? *e.start : *e.end; }

inline std::vector<HalfPlane> half_planes(const PolyDomain& d) {
    std::vector<HalfPlane> hps;
    hps.reserve(d.edges().size());
    for (std::size_t k = 0; k < d.edges().size(); ++k) {
        const Edge& e = d.edges()[k];
        LatticeVec nrm = rot90ccw(e.direction);
        hps.push_back({nrm, dot(nrm, edge_ref_point(e)), e.closed, k});
    }
    return hps;
}

inline std::array<LatticeVec, 2> recession_dirs(const PolyDomain& d) {
    return {-d.edges().front().direction, d.edges().back().direction};
}

// The boundary path must actually bound the convex intersection of its
// half-planes for the containment logic to be exact.
inline void require_convex(const PolyDomain& d, const char* who) {
    const auto& es = d.edges();
    for (std::size_t j = 0; j + 1 < es.size(); ++j)
        if (cross(es[j].direction, es[j + 1].direction) <= 0)
            throw std::invalid_argument(std::string(who) +
                                        ": boundary must turn left at every vertex");
    auto hps = half_planes(d);
    for (const auto& hp : hps) {
        for (std::size_t j = 0; j < d.vertex_count(); ++j)
            if (dot(hp.normal, d.vertex(j)) < hp.offset)
                throw std::invalid_argument(std::string(who) +
                                            ": boundary path does not bound a convex region");
        for (const LatticeVec& u : recession_dirs(d))
            if (dot(hp.normal, u) < 0)
                throw std::invalid_argument(std::string(who) +
                                            ": unbounded edges leave the convex region");
    }
}

}  // namespace detail

// Exact membership of a point in a convex domain's point set, honoring
// open edges and excluded corners.
inline bool point_in_domain(const PolyDomain& d, const RatPoint& x) {
    detail::require_convex(d, "point_in_domain");
    auto hps = detail::half_planes(d);
    std::vector<std::size_t> tight;
    for (const auto& hp : hps) {
        Rational s = dot(hp.normal, x) - hp.offset;
        if (s < 0) return false;
        if (s == 0) tight.push_back(hp.edge);
    }
    if (tight.empty()) return true;
    for (std::size_t j = 0; j < d.vertex_count(); ++j)
        if (d.vertex(j) == x) return d.vertex_in_point_set(j);
    for (std::size_t idx : tight) {
        const Edge& e = d.edges()[idx];
        bool on = true;
        if (e.start) on = on && dot(to_rat(e.direction), x - *e.start) >= 0;
        if (e.end) on = on && dot(to_rat(e.direction), *e.end - x) >= 0;
        if (on) return e.closed;
    }
    throw std::logic_error("point_in_domain: boundary point on no edge extent");
}

// Exact containment of one convex domain in another, treating open
// edges and excluded corners strictly.
inline bool domain_contains(const PolyDomain& outer, const PolyDomain& inner) {
    detail::require_convex(outer, "domain_contains(outer)");
    detail::require_convex(inner, "domain_contains(inner)");
    auto hps = detail::half_planes(outer);
    const auto& ies = inner.edges();
    for (const auto& hp : hps) {
        for (std::size_t j = 0; j < inner.vertex_count(); ++j) {
            Rational s = dot(hp.normal, inner.vertex(j)) - hp.offset;
            if (s < 0) return false;
            if (s == 0 && !hp.closed && inner.vertex_in_point_set(j)) return false;
        }
        const Edge& fe = ies.front();
        const Edge& be = ies.back();
        Int rf = dot(hp.normal, -fe.direction);
        if (rf < 0) return false;
        if (rf == 0 && fe.closed && !hp.closed && dot(hp.normal, *fe.end) == hp.offset)
            return false;
        Int rb = dot(hp.normal, be.direction);
        if (rb < 0) return false;
        if (rb == 0 && be.closed && !hp.closed && dot(hp.normal, *be.start) == hp.offset)
            return false;
        if (!hp.closed) {
            for (const Edge& e : ies) {
                if (!e.bounded() || !e.closed) continue;
                if (dot(hp.normal, *e.start) == hp.offset && dot(hp.normal, *e.end) == hp.offset)
                    return false;
            }
        }
    }
    for (std::size_t j = 0; j < outer.vertex_count(); ++j)
        if (outer.corner_excluded(j) && point_in_domain(inner, outer.vertex(j))) return false;
    return true;
}

namespace detail {

inline int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

inline bool on_segment(const RatPoint& p, const RatPoint& a, const RatPoint& b) {
    // assumes p collinear with a-b
    return dot(p - a, b - a) >= 0 && dot(b - p, b - a) >= 0;
}

inline bool segments_intersect(const RatPoint& p, const RatPoint& q, const RatPoint& r,
                               const RatPoint& s) {
    int o1 = sign(cross(q - p, r - p));
    int o2 = sign(cross(q - p, s - p));
    int o3 = sign(cross(s - r, p - r));
    int o4 = sign(cross(s - r, q - r));
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(r, p, q)) return true;
    if (o2 == 0 && on_segment(s, p, q)) return true;
    if (o3 == 0 && on_segment(p, r, s)) return true;
    if (o4 == 0 && on_segment(q, r, s)) return true;
    return false;
}

}  // namespace detail

// Exact absolute shoelace area of a simple closed polygon.
inline Rational polygon_area(std::span<const RatPoint> vertices) {
    const std::size_t k = vertices.size();
    if (k < 3) throw std::invalid_argument("polygon_area: need at least 3 vertices");
    auto at = [&](std::size_t i) -> const RatPoint& { return vertices[i % k]; };
    for (std::size_t i = 0; i < k; ++i) {
        if (at(i) == at(i + 1))
            throw std::invalid_argument("polygon_area: repeated consecutive vertex");
        RatPoint in = at(i + 1) - at(i);
        RatPoint out = at(i + 2) - at(i + 1);
        if (cross(in, out) == 0 && dot(in, out) < 0)
            throw std::invalid_argument("polygon_area: self-intersecting polygon");
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == k - 1);
            if (adjacent) continue;
            if (detail::segments_intersect(at(i), at(i + 1), at(j), at(j + 1)))
                throw std::invalid_argument("polygon_area: self-intersecting polygon");
        }
    }
    Rational twice = 0;
    for (std::size_t i = 0; i < k; ++i) twice += cross(at(i), at(i + 1));
    return abs(twice) / 2;
}

// The boundary-reduction coordinate chart: the only floating-point
// computation in the library.
inline std::array<double, 4> reduction_point_map(double p1, double p2, double q1, double q2) {
    if (p1 < 0 || p2 < 0)
        throw std::domain_error("reduction_point_map: p coordinates must be nonnegative");
    auto polar = [](double p, double q) {
        double rad = std::sqrt(p / std::numbers::pi);
        double ang = 2.0 * std::numbers::pi * q;
        return std::pair<double, double>{rad * std::cos(ang), rad * std::sin(ang)};
    };
    auto [x1, y1] = polar(p1, q1);
    auto [x2, y2] = polar(p2, q2);
    return {x1, y1, x2, y2};
}

// True iff no segment's supporting line passes through the apex, i.e.
// the polyline is transverse to the radial expanding field centered
// there.
inline bool radial_transversality_check(std::span<const RatPoint> polyline,
                                        const RatPoint& apex) {
    if (polyline.size() < 2)
        throw std::invalid_argument("radial_transversality_check: need at least one segment");
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        const RatPoint& p = polyline[i];
        const RatPoint& q = polyline[i + 1];
        if (p == q)
            throw std::invalid_argument("radial_transversality_check: zero-length segment");
        if (cross(p - apex, q - p) == 0) return false;
    }
    return true;
}

// Collar thickness used for rendering and transversality demos only;
// fit and volume results never read it.
inline Rational default_collar_epsilon(const PolyDomain& d) {
    std::optional<Rational> best;
    for (std::size_t k = 0; k < d.edges().size(); ++k) {
        if (!d.edges()[k].bounded()) continue;
        Rational len = d.lattice_length(k);
        if (!best || len < *best) best = len;
    }
    if (!best) return Rational(1);
    return *best / 4;
}

// Polyline at lattice depth eps inside the domain: intersections of the
// inward-shifted edge lines, extended one lattice step along the first
// and last edges.
inline std::vector<RatPoint> collar_inner_boundary(const PolyDomain& d, const Rational& eps) {
    if (eps <= 0) throw std::invalid_argument("collar_inner_boundary: epsilon must be positive");
    const auto& es = d.edges();
    auto hps = detail::half_planes(d);
    std::vector<RatPoint> pts;
    for (std::size_t j = 0; j + 1 < es.size(); ++j) {
        const LatticeVec& n1 = hps[j].normal;
        const LatticeVec& n2 = hps[j + 1].normal;
        Rational c1 = hps[j].offset + eps;
        Rational c2 = hps[j + 1].offset + eps;
        Rational det{cross(n1, n2)};
        pts.push_back({(c1 * Rational(n2.y) - c2 * Rational(n1.y)) / det,
                       (Rational(n1.x) * c2 - Rational(n2.x) * c1) / det});
    }
    RatPoint front = pts.front() - to_rat(es.front().direction);
    RatPoint back = pts.back() + to_rat(es.back().direction);
    pts.insert(pts.begin(), front);
    pts.push_back(back);
    return pts;
}

}  // namespace blowdown
