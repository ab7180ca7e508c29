#pragma once

// Deterministic SVG 1.1 rendering of moment domains, fit figures and
// plumbing graphs. Closed edges are solid, open edges dashed, excluded
// corners hollow, collars shaded. All coordinates are computed as exact
// rationals, scaled, and only then rounded to 6 significant digits, so
// identical inputs give byte-identical output.

#include "blowdown/domain.hpp"
#include "blowdown/surgery.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blowdown {

struct RenderOptions {
    Rational scale{40};                     // svg units per lattice step
    std::optional<Rational> collar_epsilon; // default: 1/4 of the smallest edge area
    std::optional<Rational> horizon;        // default: 1.5 x largest vertex coordinate
    bool labels = true;
};

struct Decorations {
    std::string title;  // empty = no title
    bool collar_shading = false;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

class SvgBuilder {
public:
    explicit SvgBuilder(Rational scale) : scale_(std::move(scale)) {
        if (scale_ <= 0) throw std::invalid_argument("render: scale must be positive");
    }

    void line(const RatPoint& a, const RatPoint& b, std::string cls) {
        include(a);
        include(b);
        lines_.push_back({a, b, std::move(cls)});
    }

    void polygon(std::vector<RatPoint> pts, std::string cls) {
        for (const RatPoint& p : pts) include(p);
        polys_.push_back({std::move(pts), std::move(cls)});
    }

    void circle(const RatPoint& c, const Rational& r, std::string cls) {
        include({c.x - r, c.y - r});
        include({c.x + r, c.y + r});
        circles_.push_back({c, r, std::move(cls)});
    }

    void text(const RatPoint& pos, const std::string& s) {
        include(pos);
        texts_.push_back({pos, s});
    }

    void set_title(std::string t) { title_ = std::move(t); }

    std::string emit() const {
        if (!have_bbox_) throw std::logic_error("SvgBuilder: nothing to render");
        const Rational pad = Rational(1, 2);
        Rational x0 = scale_ * (min_x_ - pad);
        Rational y0 = scale_ * (-max_y_ - pad);
        Rational w = scale_ * (max_x_ - min_x_ + 2 * pad);
        Rational h = scale_ * (max_y_ - min_y_ + 2 * pad);

        std::string out;
        out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
               format_decimal(x0) + " " + format_decimal(y0) + " " + format_decimal(w) + " " +
               format_decimal(h) + "\">\n";
        out += "<style>\n"
               "line { stroke: #000000; stroke-width: 1.5; }\n"
               ".open { stroke-dasharray: 6 4; }\n"
               ".collar { fill: #c8c8c8; fill-opacity: 0.6; stroke: none; }\n"
               ".corner { fill: #000000; stroke: #000000; stroke-width: 1; }\n"
               ".corner.excluded { fill: #ffffff; }\n"
               ".graph-node { fill: #ffffff; stroke: #000000; stroke-width: 1.5; }\n"
               "text { font-family: monospace; font-size: 13px; fill: #000000; "
               "text-anchor: middle; }\n"
               "text.title { text-anchor: start; }\n"
               "</style>\n";
        for (const auto& p : polys_) {
            out += "<polygon class=\"" + p.cls + "\" points=\"";
            for (std::size_t i = 0; i < p.pts.size(); ++i) {
                if (i) out += " ";
                out += sx(p.pts[i]) + "," + sy(p.pts[i]);
            }
            out += "\"/>\n";
        }
        for (const auto& l : lines_)
            out += "<line class=\"" + l.cls + "\" x1=\"" + sx(l.a) + "\" y1=\"" + sy(l.a) +
                   "\" x2=\"" + sx(l.b) + "\" y2=\"" + sy(l.b) + "\"/>\n";
        for (const auto& c : circles_)
            out += "<circle class=\"" + c.cls + "\" cx=\"" + sx(c.center) + "\" cy=\"" +
                   sy(c.center) + "\" r=\"" + format_decimal(scale_ * c.radius) + "\"/>\n";
        for (const auto& t : texts_)
            out += "<text x=\"" + sx(t.pos) + "\" y=\"" + sy(t.pos) + "\">" +
                   xml_escape(t.label) + "</text>\n";
        if (!title_.empty())
            out += "<text class=\"title\" x=\"" + format_decimal(x0 + scale_ / 4) + "\" y=\"" +
                   format_decimal(y0 + scale_ / 2) + "\">" + xml_escape(title_) + "</text>\n";
        out += "</svg>\n";
        return out;
    }

private:
    struct Line {
        RatPoint a, b;
        std::string cls;
    };
    struct Poly {
        std::vector<RatPoint> pts;
        std::string cls;
    };
    struct Circle {
        RatPoint center;
        Rational radius;
        std::string cls;
    };
    struct Text {
        RatPoint pos;
        std::string label;
    };

    void include(const RatPoint& p) {
        if (!have_bbox_) {
            min_x_ = max_x_ = p.x;
            min_y_ = max_y_ = p.y;
            have_bbox_ = true;
            return;
        }
        if (p.x < min_x_) min_x_ = p.x;
        if (p.x > max_x_) max_x_ = p.x;
        if (p.y < min_y_) min_y_ = p.y;
        if (p.y > max_y_) max_y_ = p.y;
    }

    std::string sx(const RatPoint& p) const { return format_decimal(scale_ * p.x); }
    std::string sy(const RatPoint& p) const { return format_decimal(-scale_ * p.y); }

    Rational scale_;
    bool have_bbox_ = false;
    Rational min_x_, max_x_, min_y_, max_y_;
    std::vector<Line> lines_;
    std::vector<Poly> polys_;
    std::vector<Circle> circles_;
    std::vector<Text> texts_;
    std::string title_;
};

inline Rational abs_rat(const Rational& r) { return r < 0 ? -r : r; }

inline Rational default_horizon(const PolyDomain& d) {
    Rational biggest = 0;
    for (const Edge& e : d.edges()) {
        for (const auto& p : {e.start, e.end}) {
            if (!p) continue;
            if (abs_rat(p->x) > biggest) biggest = abs_rat(p->x);
            if (abs_rat(p->y) > biggest) biggest = abs_rat(p->y);
        }
    }
    if (biggest < 1) biggest = 1;
    return biggest * Rational(3, 2);
}

// farthest point of the ray base + t*u, t >= 0 inside the box [-h, h]^2
inline RatPoint truncate_ray(const RatPoint& base, const LatticeVec& u, const Rational& h) {
    std::optional<Rational> t;
    auto bound = [&](const Rational& b, const Int& du) {
        if (du == 0) return;
        Rational lim = du > 0 ? (h - b) / Rational(du) : (-h - b) / Rational(du);
        if (!t || lim < *t) t = lim;
    };
    bound(base.x, u.x);
    bound(base.y, u.y);
    if (!t || *t < 0) return base;
    return base + *t * u;
}

struct EdgeScreen {
    RatPoint a, b;
    bool ray;
    bool closed;
};

inline std::vector<EdgeScreen> edge_segments(const PolyDomain& d, const Rational& horizon) {
    std::vector<EdgeScreen> out;
    for (const Edge& e : d.edges()) {
        if (e.bounded()) {
            out.push_back({*e.start, *e.end, false, e.closed});
        } else if (e.end) {
            out.push_back({truncate_ray(*e.end, -e.direction, horizon), *e.end, true, e.closed});
        } else {
            out.push_back({*e.start, truncate_ray(*e.start, e.direction, horizon), true, e.closed});
        }
    }
    return out;
}

inline void add_domain(SvgBuilder& svg, const PolyDomain& d, const RenderOptions& opt,
                       const Rational& horizon, bool collar_shading) {
    if (collar_shading) {
        Rational eps = opt.collar_epsilon.value_or(default_collar_epsilon(d));
        if (eps <= 0) throw std::invalid_argument("render: collar epsilon must be positive");
        auto hps = half_planes(d);
        auto segs = edge_segments(d, horizon);
        std::vector<RatPoint> strip;
        strip.push_back(segs.front().a);
        for (std::size_t j = 0; j < d.vertex_count(); ++j) strip.push_back(d.vertex(j));
        strip.push_back(segs.back().b);
        // inner boundary: the same polyline pushed in by eps along each
        // inward normal, ends truncated like the rays
        std::vector<RatPoint> inner;
        for (std::size_t j = 0; j + 1 < d.edges().size(); ++j) {
            const LatticeVec& n1 = hps[j].normal;
            const LatticeVec& n2 = hps[j + 1].normal;
            Rational c1 = hps[j].offset + eps;
            Rational c2 = hps[j + 1].offset + eps;
            Rational det{cross(n1, n2)};
            inner.push_back({(c1 * Rational(n2.y) - c2 * Rational(n1.y)) / det,
                             (Rational(n1.x) * c2 - Rational(n2.x) * c1) / det});
        }
        RatPoint front_dir = segs.front().a - *d.edges().front().end;
        RatPoint back_dir = segs.back().b - *d.edges().back().start;
        RatPoint ext_front = inner.front() + front_dir;
        RatPoint ext_back = inner.back() + back_dir;
        inner.insert(inner.begin(), ext_front);
        inner.push_back(ext_back);
        std::vector<RatPoint> shade = strip;
        shade.insert(shade.end(), inner.rbegin(), inner.rend());
        svg.polygon(std::move(shade), "collar");
    }
    auto segs = edge_segments(d, horizon);
    for (const auto& s : segs)
        svg.line(s.a, s.b, std::string(s.ray ? "ray" : "seg") + (s.closed ? " closed" : " open"));
    for (std::size_t j = 0; j < d.vertex_count(); ++j) {
        bool excl = d.corner_excluded(j);
        svg.circle(d.vertex(j), Rational(2, 25), excl ? "corner excluded" : "corner");
        if (opt.labels && !d.delzant_corner(j)) {
            auto [ln, lm] =
                lens_from_corner(-d.edges()[j].direction, d.edges()[j + 1].direction);
            svg.text(d.vertex(j) + RatPoint{Rational(0), Rational(-2, 5)},
                     "L(" + ln.str() + "," + lm.str() + ")");
        }
    }
    if (opt.labels) {
        for (std::size_t k = 0; k < d.edges().size(); ++k) {
            const Edge& e = d.edges()[k];
            if (!e.bounded()) continue;
            RatPoint mid = Rational(1, 2) * (*e.start + *e.end);
            LatticeVec nrm = rot90ccw(e.direction);
            Int linf = abs(nrm.x) > abs(nrm.y) ? abs(nrm.x) : abs(nrm.y);
            RatPoint off = (Rational(2, 5) / Rational(linf)) * nrm;
            svg.text(mid + off, "a=" + format_rational(d.lattice_length(k)));
        }
    }
}

}  // namespace detail

// Picture of a single moment domain.
inline std::string render_domain_svg(const PolyDomain& d, const Decorations& deco,
                                     const RenderOptions& opt) {
    detail::SvgBuilder svg(opt.scale);
    Rational horizon = opt.horizon.value_or(detail::default_horizon(d));
    if (horizon <= 0) throw std::invalid_argument("render: horizon must be positive");
    detail::add_domain(svg, d, opt, horizon, deco.collar_shading);
    if (!deco.title.empty()) svg.set_title(deco.title);
    return svg.emit();
}

// The embedding figure: both collars translated into the wedge of
// L(n^2, n-1), with the glued collar region shaded.
inline std::string render_fit_svg(const ChainSpec& c, const BallSpec& b,
                                  const RenderOptions& opt) {
    FitReport fit = ball_feasible(c, b);
    if (!fit.feasible)
        throw std::invalid_argument("render_fit_svg: infeasible fit: " + fit.reason);
    const Int n2 = Int(c.n) * c.n;
    PolyDomain wedge = make_wedge(n2, Int(c.n) - 1);
    PolyDomain chain = apply_affine(make_chain_collar(c.n, c.areas), fit.phi1);
    PolyDomain ball = apply_affine(make_ball_collar_domain(c.n, b.alpha_plus, b.alpha_minus),
                                   fit.phi2);

    detail::SvgBuilder svg(opt.scale);
    Rational horizon = opt.horizon.value_or(detail::default_horizon(chain));
    if (horizon <= 0) throw std::invalid_argument("render: horizon must be positive");

    // glued collar: between the ball edges and the chain polyline
    std::vector<RatPoint> shade;
    shade.push_back(ball.vertex(2));  // (0, delta2)
    shade.push_back(ball.vertex(1));
    shade.push_back(ball.vertex(0));
    for (std::size_t j = chain.vertex_count(); j-- > 0;) shade.push_back(chain.vertex(j));
    svg.polygon(std::move(shade), "collar");

    for (const auto& s : detail::edge_segments(wedge, horizon))
        svg.line(s.a, s.b, "ray closed");
    for (const auto& s : detail::edge_segments(chain, horizon))
        svg.line(s.a, s.b, std::string(s.ray ? "ray" : "seg") + (s.closed ? " closed" : " open"));
    // the ball legs run down the wedge edges and close up at the apex
    RatPoint apex{0, 0};
    svg.line(ball.vertex(2), apex, "seg closed");
    svg.line(ball.vertex(0), apex, "seg closed");
    svg.line(ball.vertex(0), ball.vertex(1), "seg open");
    svg.line(ball.vertex(1), ball.vertex(2), "seg open");

    svg.circle(apex, Rational(2, 25), "corner excluded");
    if (opt.labels) {
        auto [ln, lm] = lens_from_corner(LatticeVec{0, 1}, LatticeVec{n2, Int(c.n) - 1});
        svg.text(apex + RatPoint{Rational(1, 2), Rational(-2, 5)},
                 "V(" + ln.str() + "," + lm.str() + ")");
        Rational cx = Rational(1, 2) * chain.vertex(chain.vertex_count() - 1).x;
        svg.text({cx, detail::lower_envelope_at(chain, cx) + Rational(1, 2)}, "C-");
        RatPoint bmid = Rational(1, 2) * (ball.vertex(1) + RatPoint{0, ball.vertex(2).y});
        svg.text(bmid, "A'");
    }
    return svg.emit();
}

// Plumbing graph: one node per sphere, labeled with its
// self-intersection -b_i.
inline std::string render_plumbing_graph_svg(std::span<const Int> terms,
                                             const RenderOptions& opt,
                                             const std::string& title = "") {
    if (terms.empty()) throw std::invalid_argument("render_plumbing_graph_svg: no terms");
    detail::SvgBuilder svg(opt.scale);
    const Rational step = 3;
    const Rational radius(1, 2);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        RatPoint center{step * Rational(i), 0};
        if (i + 1 < terms.size())
            svg.line({center.x + radius, 0}, {center.x + step - radius, 0}, "seg closed");
        svg.circle(center, radius, "graph-node");
        if (opt.labels) svg.text({center.x, Rational(11, 10)}, "-" + terms[i].str());
    }
    if (!title.empty()) svg.set_title(title);
    return svg.emit();
}

}  // namespace blowdown
