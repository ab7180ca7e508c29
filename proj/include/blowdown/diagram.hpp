#pragma once

// Gluing diagrams for sums along positively intersecting surfaces.
// Each pairing glues two surfaces living in distinct manifolds; a
// triple point records three pairings meeting at a single sum point.
// The balance rule: the self-intersections of a glued pair must add up
// to minus the number of triple points involving that pairing.

#include "blowdown/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace blowdown {

struct Surface {
    std::string id;
    std::string host;
    Int self_intersection;
    bool operator==(const Surface& o) const = default;
};

struct SumDiagram {
    std::vector<Surface> surfaces;
    std::vector<std::array<std::string, 2>> pairings;
    std::vector<std::array<std::size_t, 3>> triple_points;  // pairing indices
};

struct PairingCheck {
    std::size_t pairing;
    std::array<std::string, 2> ids;
    Int self_intersection_sum;
    Int triple_count;
    Int residual;  // sum + count; zero means balanced
    bool ok;
};

struct DiagramVerdict {
    bool valid;
    std::vector<PairingCheck> pairings;
};

namespace detail {

inline const Surface& find_surface(const SumDiagram& d, const std::string& id) {
    for (const Surface& s : d.surfaces)
        if (s.id == id) return s;
    throw std::invalid_argument("diagram: pairing references unknown surface '" + id + "'");
}

inline void validate_diagram(const SumDiagram& d) {
    for (std::size_t i = 0; i < d.surfaces.size(); ++i) {
        if (d.surfaces[i].id.empty())
            throw std::invalid_argument("diagram: surface with empty id");
        for (std::size_t j = i + 1; j < d.surfaces.size(); ++j)
            if (d.surfaces[i].id == d.surfaces[j].id)
                throw std::invalid_argument("diagram: duplicate surface id '" + d.surfaces[i].id + "'");
    }
    for (const auto& p : d.pairings) {
        const Surface& a = find_surface(d, p[0]);
        const Surface& b = find_surface(d, p[1]);
        if (a.id == b.id)
            throw std::invalid_argument("diagram: pairing glues a surface to itself");
        if (a.host == b.host)
            throw std::invalid_argument("diagram: pairing joins surfaces in the same manifold");
    }
    for (const auto& t : d.triple_points) {
        for (std::size_t idx : t)
            if (idx >= d.pairings.size())
                throw std::invalid_argument("diagram: triple point references missing pairing");
        if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
            throw std::invalid_argument("diagram: triple point must reference three distinct pairings");
    }
}

}  // namespace detail

// Check every pairing against the balance rule and report per-pairing
// residuals. Malformed references throw; imbalance only marks the
// verdict invalid.
inline DiagramVerdict validate_threefold_diagram(const SumDiagram& d) {
    detail::validate_diagram(d);
    DiagramVerdict verdict{true, {}};
    for (std::size_t i = 0; i < d.pairings.size(); ++i) {
        const auto& p = d.pairings[i];
        Int sum = detail::find_surface(d, p[0]).self_intersection +
                  detail::find_surface(d, p[1]).self_intersection;
        Int count = 0;
        for (const auto& t : d.triple_points)
            if (t[0] == i || t[1] == i || t[2] == i) ++count;
        Int residual = sum + count;
        bool ok = (residual == 0);
        if (!ok) verdict.valid = false;
        verdict.pairings.push_back({i, p, sum, count, residual, ok});
    }
    return verdict;
}

}  // namespace blowdown
