#include "blowdown/domain.hpp"

#include "blowdown/json_io.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

using namespace blowdown;

namespace {

std::vector<Rational> rats(std::initializer_list<long long> xs) {
    std::vector<Rational> out;
    for (long long x : xs) out.emplace_back(x);
    return out;
}

Mat2 random_gl2z(std::mt19937& rng, bool allow_reflection = true) {
    Mat2 m = Mat2::identity();
    for (int k = 0; k < 6; ++k) {
        long long s = static_cast<long long>(rng() % 7) - 3;
        m = (rng() % 2) ? m * Mat2{1, s, 0, 1} : m * Mat2{1, 0, s, 1};
    }
    if (allow_reflection && rng() % 2) m = m * Mat2{0, 1, 1, 0};
    return m;
}

RatPoint random_point(std::mt19937& rng) {
    auto r = [&]() { return Rational(static_cast<long long>(rng() % 41) - 20, 1 + rng() % 8); };
    return {r(), r()};
}

}  // namespace

TEST_CASE("make_wedge") {
    PolyDomain w = make_wedge(16, 3);
    REQUIRE(w.edges().size() == 2);
    CHECK(w.edges()[0].direction == LatticeVec{0, -1});
    CHECK(w.edges()[1].direction == LatticeVec{16, 3});
    CHECK(w.corner_excluded(0));
    CHECK_FALSE(w.delzant_corner(0));
    CHECK(lens_from_corner(-w.edges()[0].direction, w.edges()[1].direction) ==
          std::pair<Int, Int>{16, 3});

    PolyDomain d11 = make_wedge(1, 1);
    CHECK(d11.delzant_corner(0));
    CHECK_FALSE(d11.corner_excluded(0));

    PolyDomain n4 = make_wedge(4, 1);
    CHECK(lens_from_corner(-n4.edges()[0].direction, n4.edges()[1].direction) ==
          std::pair<Int, Int>{4, 1});

    PolyDomain quadrant = make_wedge(1, 0);
    CHECK(quadrant.edges()[1].direction == LatticeVec{1, 0});
    CHECK_FALSE(quadrant.corner_excluded(0));

    CHECK_THROWS_AS(make_wedge(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_wedge(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_wedge(3, 0), std::invalid_argument);
}

TEST_CASE("make_chain_domain geometry") {
    PolyDomain c = make_chain_domain(4, rats({1, 1, 1}));
    REQUIRE(c.edges().size() == 5);  // n-1 closed edges plus 2 unbounded
    CHECK(c.vertex(0) == RatPoint{0, 0});
    CHECK(c.vertex(1) == RatPoint{1, 0});
    CHECK(c.vertex(2) == RatPoint{7, 1});
    CHECK(c.vertex(3) == RatPoint{18, 3});
    CHECK(c.edges().back().direction == LatticeVec{16, 3});
    for (std::size_t k = 1; k + 1 < c.edges().size(); ++k) {
        CHECK(c.edges()[k].closed);
        CHECK(c.edges()[k].bounded());
    }
    for (std::size_t j = 0; j < c.vertex_count(); ++j) CHECK(c.delzant_corner(j));

    // n = 2: the single -4 sphere neighborhood
    PolyDomain n2 = make_chain_domain(2, {rats({3})});
    REQUIRE(n2.edges().size() == 3);
    CHECK(n2.lattice_length(1) == 3);
    CHECK(n2.edges()[1].direction == LatticeVec{1, 0});
    CHECK(n2.edges()[2].direction == LatticeVec{4, 1});

    CHECK_THROWS_AS(make_chain_domain(1, rats({})), std::invalid_argument);
    CHECK_THROWS_AS(make_chain_domain(4, rats({1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(make_chain_domain(4, rats({1, -1, 1})), std::invalid_argument);
}

TEST_CASE("chain collar opens exactly the sphere edges") {
    PolyDomain collar = make_chain_collar(4, rats({1, 1, 1}));
    CHECK(collar.edges().front().closed);
    CHECK(collar.edges().back().closed);
    for (std::size_t k = 1; k + 1 < collar.edges().size(); ++k)
        CHECK_FALSE(collar.edges()[k].closed);
    // vertices sit on removed lines, so none belong to the point set
    for (std::size_t j = 0; j < collar.vertex_count(); ++j)
        CHECK_FALSE(collar.vertex_in_point_set(j));
}

TEST_CASE("general plumbing domain matches the chain construction") {
    CfExpansion b622(std::vector<Int>{6, 2, 2});
    CHECK(make_general_plumbing_domain(b622, rats({1, 1, 1})) ==
          make_chain_domain(4, rats({1, 1, 1})));

    CfExpansion b4(std::vector<Int>{4});
    CHECK(make_general_plumbing_domain(b4, rats({7})) == make_chain_domain(2, rats({7})));

    CfExpansion b22(std::vector<Int>{2, 2});
    PolyDomain d = make_general_plumbing_domain(b22, rats({1, 1}));
    CHECK(lens_from_corner(-d.edges().front().direction, d.edges().back().direction) ==
          std::pair<Int, Int>{3, 2});

    std::mt19937 rng(4242);
    for (int n = 2; n <= 12; ++n) {
        std::vector<Rational> as;
        for (int i = 0; i < n - 1; ++i) as.emplace_back(Int(1 + rng() % 30), Int(1 + rng() % 7));
        std::vector<Int> terms(static_cast<std::size_t>(n - 1), Int(2));
        terms[0] = Int(n) + 2;
        CHECK(make_general_plumbing_domain(CfExpansion(terms), as) == make_chain_domain(n, as));
        CHECK(make_general_plumbing_collar(CfExpansion(terms), as) == make_chain_collar(n, as));
    }
}

TEST_CASE("plumbing corner classification agrees with the continued fraction") {
    // every term vector with entries in [2,7], length <= 5
    std::vector<std::vector<Int>> stack{{}};
    for (int len = 1; len <= 5; ++len) {
        std::vector<std::vector<Int>> next;
        for (const auto& prefix : stack) {
            for (int b = 2; b <= 7; ++b) {
                auto terms = prefix;
                terms.emplace_back(b);
                next.push_back(terms);
                CfExpansion e(terms);
                auto [n, m] = neg_cf_eval(e);
                std::vector<Rational> as(terms.size(), Rational(1));
                PolyDomain d = make_general_plumbing_domain(e, as);
                auto corner =
                    lens_from_corner(-d.edges().front().direction, d.edges().back().direction);
                Int want_m = m;
                if (n > 1) {
                    Int minv = mod_inverse(m, n);
                    if (minv < want_m) want_m = minv;
                }
                if (n == 1) want_m = 0;
                REQUIRE(corner == std::pair<Int, Int>{n, want_m});
            }
        }
        stack = std::move(next);
    }
}

TEST_CASE("ball collar domain") {
    PolyDomain b = make_ball_collar_domain(4, 20, 1);
    REQUIRE(b.edges().size() == 4);
    CHECK(b.vertex(0) == RatPoint{15, -1});
    CHECK(b.vertex(1) == RatPoint{20, 0});
    CHECK(b.vertex(2) == RatPoint{0, 0});
    CHECK(b.edges()[0].direction == LatticeVec{16, 3});
    CHECK(b.edges()[0].closed);
    CHECK_FALSE(b.edges()[1].closed);
    CHECK_FALSE(b.edges()[2].closed);
    CHECK(b.edges()[3].closed);
    CHECK(b.lattice_length(1) == 1);   // alpha_minus
    CHECK(b.lattice_length(2) == 20);  // alpha_plus

    auto pent = ball_pentagon(4, 20, 1);
    REQUIRE(pent.size() == 4);
    CHECK(pent[3] == RatPoint{0, Rational(-61, 16)});

    CHECK_THROWS_AS(make_ball_collar_domain(4, 5, 1), infeasible_ball_error);
    CHECK_THROWS_AS(make_ball_collar_domain(4, 4, 1), infeasible_ball_error);
    CHECK_THROWS_AS(make_ball_collar_domain(4, 20, Rational(0)), infeasible_ball_error);
    CHECK_THROWS_AS(make_ball_collar_domain(2, 20, 1), std::invalid_argument);
}

TEST_CASE("edge sphere invariants") {
    // single sphere neighborhoods
    for (int bb = 2; bb <= 9; ++bb) {
        CfExpansion e(std::vector<Int>{Int(bb)});
        auto inv = edge_sphere_invariants(make_general_plumbing_domain(e, rats({5})));
        REQUIRE(inv.size() == 1);
        CHECK(inv[0].area == 5);
        CHECK(inv[0].self_intersection == -bb);
    }

    auto chain_inv = edge_sphere_invariants(make_chain_domain(4, rats({1, 1, 1})));
    REQUIRE(chain_inv.size() == 3);
    CHECK(chain_inv[0] == EdgeInvariant{1, -6});
    CHECK(chain_inv[1] == EdgeInvariant{1, -2});
    CHECK(chain_inv[2] == EdgeInvariant{1, -2});

    // ball collar: the section of area alpha_minus comes first in
    // boundary order
    auto ball_inv = edge_sphere_invariants(make_ball_collar_domain(4, 20, 1));
    REQUIRE(ball_inv.size() == 2);
    CHECK(ball_inv[0] == EdgeInvariant{1, -3});
    CHECK(ball_inv[1] == EdgeInvariant{20, 5});

    // a bounded edge next to a lens corner has no invariant
    std::vector<Edge> edges;
    edges.push_back({std::nullopt, RatPoint{0, 0}, LatticeVec{0, -1}, true});
    edges.push_back({RatPoint{0, 0}, RatPoint{1, 0}, LatticeVec{1, 0}, true});
    edges.push_back({RatPoint{1, 0}, std::nullopt, LatticeVec{1, 2}, true});
    PolyDomain lens_adjacent(std::move(edges), {false, false});
    CHECK_THROWS_AS(edge_sphere_invariants(lens_adjacent), std::invalid_argument);
}

TEST_CASE("apply_affine") {
    PolyDomain quadrant = make_wedge(1, 0);
    PolyDomain sheared = apply_affine(quadrant, UnimodularMap(Mat2{1, 0, 1, 1}, RatPoint{0, 0}));
    CHECK(sheared.edges()[1].direction == LatticeVec{1, 1});
    CHECK(sheared.delzant_corner(0));

    PolyDomain chain = make_chain_domain(4, rats({1, 1, 1}));
    PolyDomain moved = apply_affine(chain, UnimodularMap::translation_by({Rational(5, 3), 7}));
    CHECK(edge_sphere_invariants(moved) == edge_sphere_invariants(chain));
    CHECK(moved.vertex(0) == RatPoint{Rational(5, 3), 7});

    // the gluing map carries the standard one-sphere block onto the
    // second chain segment
    PolyDomain block = make_general_plumbing_domain(CfExpansion(std::vector<Int>{2}), rats({1}));
    std::vector<Rational> areas = rats({1, 1, 1});
    PolyDomain image = apply_affine(block, gluing_map(4, 2, areas));
    CHECK(image.edges()[1] == chain.edges()[2]);
    CHECK(image.edges()[0].direction == LatticeVec{1, 0});
    CHECK(image.edges()[0].end == RatPoint{1, 0});
    CHECK(image.edges()[2].direction == chain.edges()[3].direction);

    // and carries the standard quadrant onto the correctly rotated cone
    // at the chain vertex: the incoming edge runs along the previous
    // chain direction, the outgoing one along the next
    for (int i = 2; i <= 3; ++i) {
        PolyDomain cone = apply_affine(quadrant, gluing_map(4, i, areas));
        auto conv = chain_convergents(4, i);
        CHECK(cone.vertex(0) == chain.vertex(static_cast<std::size_t>(i - 1)));
        CHECK(cone.edges()[0].direction == conv[static_cast<std::size_t>(i - 2)].r);
        CHECK(cone.edges()[1].direction == conv[static_cast<std::size_t>(i - 1)].r);
        CHECK(cone.delzant_corner(0));
    }
}

TEST_CASE("apply_affine preserves corners and invariants for random maps") {
    std::mt19937 rng(99);
    PolyDomain chain = make_chain_domain(5, rats({2, 1, 3, 1}));
    PolyDomain ball = make_ball_collar_domain(4, Rational(18, 19), Rational(3, 19));
    auto base_chain = edge_sphere_invariants(chain);
    auto base_ball = edge_sphere_invariants(ball);
    // a reflection re-orients the boundary, so the edges come back in
    // reversed order with the same invariants
    auto expected = [](std::vector<EdgeInvariant> inv, const UnimodularMap& f) {
        if (f.linear().det() == -1) std::reverse(inv.begin(), inv.end());
        return inv;
    };
    for (int trial = 0; trial < 120; ++trial) {
        UnimodularMap f(random_gl2z(rng), random_point(rng));
        PolyDomain mc = apply_affine(chain, f);
        CHECK(edge_sphere_invariants(mc) == expected(base_chain, f));
        for (std::size_t j = 0; j < mc.vertex_count(); ++j) CHECK(mc.delzant_corner(j));
        CHECK(edge_sphere_invariants(apply_affine(ball, f)) == expected(base_ball, f));
        // round trip through the inverse is the identity
        CHECK(apply_affine(mc, f.inverse()) == chain);
    }
}

TEST_CASE("domain_contains") {
    PolyDomain wedge = make_wedge(16, 3);
    PolyDomain chain = make_chain_domain(4, rats({1, 1, 1}));
    PolyDomain collar = make_chain_collar(4, rats({1, 1, 1}));

    CHECK(domain_contains(wedge, wedge));
    CHECK(domain_contains(chain, chain));
    CHECK(domain_contains(collar, collar));

    // the fit translation: collar + (0, 3/8) sits inside the wedge
    UnimodularMap phi1 = UnimodularMap::translation_by({0, Rational(3, 8)});
    CHECK(domain_contains(wedge, apply_affine(collar, phi1)));
    CHECK(domain_contains(wedge, apply_affine(chain, phi1)));

    // untranslated, the chain pokes below the slant edge
    CHECK_FALSE(domain_contains(wedge, collar));

    // closed chain edges may not land on an open-edged wedge
    std::vector<Edge> open_edges;
    open_edges.push_back({std::nullopt, RatPoint{0, 0}, LatticeVec{0, -1}, false});
    open_edges.push_back({RatPoint{0, 0}, std::nullopt, LatticeVec{16, 3}, false});
    PolyDomain open_wedge(std::move(open_edges), {true});
    CHECK_FALSE(domain_contains(open_wedge, apply_affine(chain, phi1)));
    // the collar's own leg still touches {p1 = 0}, so it is out too
    CHECK_FALSE(domain_contains(open_wedge, apply_affine(collar, phi1)));

    // non-convex boundary chains are rejected
    PolyDomain ball = make_ball_collar_domain(4, 20, 1);
    CHECK_THROWS_AS(domain_contains(wedge, ball), std::invalid_argument);
}

TEST_CASE("point_in_domain honors flags") {
    PolyDomain wedge = make_wedge(16, 3);
    CHECK_FALSE(point_in_domain(wedge, {0, 0}));  // excluded corner
    CHECK(point_in_domain(wedge, {0, 1}));        // on the closed axis edge
    CHECK(point_in_domain(wedge, {1, 1}));
    CHECK(point_in_domain(wedge, {1, Rational(3, 16)}));  // on the closed slant edge
    CHECK(point_in_domain(wedge, {16, 3}));
    CHECK_FALSE(point_in_domain(wedge, {-1, 5}));
    CHECK_FALSE(point_in_domain(wedge, {5, Rational(1, 2)}));

    PolyDomain quadrant = make_wedge(1, 0);
    CHECK(point_in_domain(quadrant, {0, 0}));

    PolyDomain collar = make_chain_collar(4, rats({1, 1, 1}));
    CHECK_FALSE(point_in_domain(collar, {Rational(1, 2), 0}));  // open sphere edge
    CHECK_FALSE(point_in_domain(collar, {0, 0}));               // endpoint of a removed line
    CHECK(point_in_domain(collar, {0, 5}));                     // closed leg
    CHECK(point_in_domain(collar, {Rational(1, 2), Rational(1, 2)}));

    PolyDomain chain = make_chain_domain(4, rats({1, 1, 1}));
    CHECK(point_in_domain(chain, {Rational(1, 2), 0}));
    CHECK(point_in_domain(chain, {0, 0}));
}

TEST_CASE("polygon_area") {
    std::vector<RatPoint> tri{{0, 0}, {1, 0}, {0, 1}};
    CHECK(polygon_area(tri) == Rational(1, 2));

    std::vector<RatPoint> blowdown_region{{0, 0}, {0, Rational(1, 8)}, {Rational(1, 2), Rational(1, 8)}};
    CHECK(polygon_area(blowdown_region) == Rational(1, 32));

    CHECK(polygon_area(ball_pentagon(4, 20, 1)) == Rational(1235, 32));

    std::vector<RatPoint> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
    CHECK_THROWS_AS(polygon_area(bowtie), std::invalid_argument);
    std::vector<RatPoint> dup{{0, 0}, {0, 0}, {1, 0}};
    CHECK_THROWS_AS(polygon_area(dup), std::invalid_argument);
    std::vector<RatPoint> spike{{0, 0}, {2, 0}, {1, 0}, {1, 1}};
    CHECK_THROWS_AS(polygon_area(spike), std::invalid_argument);
    std::vector<RatPoint> two{{0, 0}, {1, 0}};
    CHECK_THROWS_AS(polygon_area(two), std::invalid_argument);
}

TEST_CASE("polygon_area is invariant under lattice-affine maps") {
    std::mt19937 rng(31337);
    std::vector<RatPoint> pent = ball_pentagon(5, 33, Rational(7, 2));
    Rational base = polygon_area(pent);
    for (int trial = 0; trial < 60; ++trial) {
        UnimodularMap f(random_gl2z(rng), random_point(rng));
        std::vector<RatPoint> moved;
        for (const RatPoint& p : pent) moved.push_back(f(p));
        CHECK(polygon_area(moved) == base);
    }
}

TEST_CASE("reduction point map") {
    const double pi = std::numbers::pi;
    auto a = reduction_point_map(pi, pi, 0, 0);
    CHECK(a[0] == Catch::Approx(1.0).margin(1e-12));
    CHECK(a[1] == Catch::Approx(0.0).margin(1e-12));
    CHECK(a[2] == Catch::Approx(1.0).margin(1e-12));
    CHECK(a[3] == Catch::Approx(0.0).margin(1e-12));

    auto b = reduction_point_map(pi, pi, 0.25, 0.5);
    CHECK(b[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(b[1] == Catch::Approx(1.0).margin(1e-12));
    CHECK(b[2] == Catch::Approx(-1.0).margin(1e-12));
    CHECK(b[3] == Catch::Approx(0.0).margin(1e-12));

    auto c = reduction_point_map(0, 0, 0.3, 0.9);
    CHECK(c == std::array<double, 4>{0, 0, 0, 0});

    CHECK_THROWS_AS(reduction_point_map(-1, 0, 0, 0), std::domain_error);
}

TEST_CASE("radial transversality") {
    std::vector<RatPoint> collinear{{1, 0}, {2, 0}};
    CHECK_FALSE(radial_transversality_check(collinear, {0, 0}));
    std::vector<RatPoint> offset{{1, 1}, {2, 1}};
    CHECK(radial_transversality_check(offset, {0, 0}));
    std::vector<RatPoint> degenerate{{1, 1}, {1, 1}};
    CHECK_THROWS_AS(radial_transversality_check(degenerate, {0, 0}), std::invalid_argument);

    // translated chain collar in the wedge of L(16,3): the inner collar
    // boundary misses the apex for the default thickness
    PolyDomain collar = make_chain_collar(4, rats({1, 1, 1}));
    PolyDomain moved = apply_affine(collar, UnimodularMap::translation_by({0, Rational(3, 8)}));
    auto inner = collar_inner_boundary(moved, default_collar_epsilon(moved));
    CHECK(radial_transversality_check(inner, {0, 0}));
    // and the boundary polyline itself is NOT transverse: the outgoing
    // ray's supporting line runs through the apex
    std::vector<RatPoint> boundary;
    for (std::size_t j = 0; j < moved.vertex_count(); ++j) boundary.push_back(moved.vertex(j));
    boundary.push_back(moved.vertex(moved.vertex_count() - 1) +
                       to_rat(moved.edges().back().direction));
    CHECK_FALSE(radial_transversality_check(boundary, {0, 0}));
}

TEST_CASE("euler characteristic oracle") {
    std::mt19937 rng(5);
    for (int n = 2; n <= 12; ++n) {
        std::vector<Rational> as;
        for (int i = 0; i < n - 1; ++i) as.emplace_back(Int(1 + rng() % 12), Int(1 + rng() % 5));
        PolyDomain d = make_chain_domain(n, as);
        int closed_edges = 0;
        for (const Edge& e : d.edges())
            if (e.bounded() && e.closed) ++closed_edges;
        int joining = 0;
        for (std::size_t j = 0; j < d.vertex_count(); ++j) {
            const Edge& a = d.edges()[j];
            const Edge& b = d.edges()[j + 1];
            if (a.bounded() && a.closed && b.bounded() && b.closed) ++joining;
        }
        CHECK(2 * closed_edges - joining == n);
    }
}

TEST_CASE("domain JSON round trip") {
    for (const PolyDomain& d : {make_wedge(16, 3), make_chain_domain(4, rats({1, 1, 1})),
                                make_chain_collar(3, rats({2, 5})),
                                make_ball_collar_domain(4, 20, 1)}) {
        json j = to_json(d);
        CHECK(parse_domain(j, "") == d);
    }
    json j = to_json(make_wedge(9, 2));
    CHECK(j["excluded_corners"] == json::array({0}));
}
