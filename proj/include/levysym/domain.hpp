#pragma once

// Finite-volume regions with membership tests and exact measure: balls, boxes,
// disjoint unions, and grid masks.

#include <memory>
#include <stdexcept>
#include <vector>

#include "levysym/core.hpp"
#include "levysym/grid.hpp"

namespace levysym {

struct DomainSpec {
    enum class Kind { Ball, Box, Union, Mask };

    Kind kind = Kind::Ball;
    int dim = 1;

    // ball
    Point ball_center{0.0, 0.0, 0.0};
    double ball_radius = 1.0;
    // box
    Point box_lower{0.0, 0.0, 0.0};
    Point box_upper{0.0, 0.0, 0.0};
    // union of disjoint parts
    std::vector<DomainSpec> parts;
    // grid mask: cells with value > 0.5 belong to the domain
    std::shared_ptr<GridFunction> mask;

    static DomainSpec ball(int dim, const Point& center, double radius) {
        if (radius <= 0.0) throw std::invalid_argument("ball radius must be positive");
        DomainSpec d;
        d.kind = Kind::Ball;
        d.dim = dim;
        d.ball_center = center;
        d.ball_radius = radius;
        return d;
    }

    static DomainSpec box(int dim, const Point& lower, const Point& upper) {
        DomainSpec d;
        d.kind = Kind::Box;
        d.dim = dim;
        d.box_lower = lower;
        d.box_upper = upper;
        for (int a = 0; a < dim; ++a)
            if (!(upper[a] > lower[a])) throw std::invalid_argument("box must be nonempty");
        return d;
    }

    static DomainSpec disjoint_union(std::vector<DomainSpec> pieces) {
        if (pieces.empty()) throw std::invalid_argument("union needs at least one part");
        DomainSpec d;
        d.kind = Kind::Union;
        d.dim = pieces.front().dim;
        for (const auto& p : pieces)
            if (p.dim != d.dim) throw std::invalid_argument("union parts must share dimension");
        d.parts = std::move(pieces);
        return d;
    }

    static DomainSpec grid_mask(GridFunction g) {
        DomainSpec d;
        d.kind = Kind::Mask;
        d.dim = g.dim;
        d.mask = std::make_shared<GridFunction>(std::move(g));
        return d;
    }

    bool contains(const Point& x) const {
        switch (kind) {
            case Kind::Ball: {
                double s = 0.0;
                for (int a = 0; a < dim; ++a) {
                    const double dxa = x[a] - ball_center[a];
                    s += dxa * dxa;
                }
                return s < ball_radius * ball_radius;
            }
            case Kind::Box:
                for (int a = 0; a < dim; ++a)
                    if (x[a] <= box_lower[a] || x[a] >= box_upper[a]) return false;
                return true;
            case Kind::Union:
                for (const auto& p : parts)
                    if (p.contains(x)) return true;
                return false;
            case Kind::Mask:
                return mask->covers(x) && mask->value_at(x) > 0.5;
        }
        return false;
    }

    double measure() const {
        switch (kind) {
            case Kind::Ball:
                return unit_ball_volume(dim) * std::pow(ball_radius, dim);
            case Kind::Box: {
                double v = 1.0;
                for (int a = 0; a < dim; ++a) v *= box_upper[a] - box_lower[a];
                return v;
            }
            case Kind::Union: {
                double v = 0.0;
                for (const auto& p : parts) v += p.measure();
                return v;
            }
            case Kind::Mask: {
                std::size_t count = 0;
                for (double v : mask->values)
                    if (v > 0.5) ++count;
                return mask->cell_volume() * static_cast<double>(count);
            }
        }
        return 0.0;
    }

    // Axis-aligned bounding box (lo, hi), used for rejection sampling of starts.
    void bounding_box(Point& lo, Point& hi) const {
        switch (kind) {
            case Kind::Ball:
                for (int a = 0; a < dim; ++a) {
                    lo[a] = ball_center[a] - ball_radius;
                    hi[a] = ball_center[a] + ball_radius;
                }
                return;
            case Kind::Box:
                lo = box_lower;
                hi = box_upper;
                return;
            case Kind::Union: {
                parts.front().bounding_box(lo, hi);
                for (std::size_t i = 1; i < parts.size(); ++i) {
                    Point l2{}, h2{};
                    parts[i].bounding_box(l2, h2);
                    for (int a = 0; a < dim; ++a) {
                        lo[a] = std::min(lo[a], l2[a]);
                        hi[a] = std::max(hi[a], h2[a]);
                    }
                }
                return;
            }
            case Kind::Mask:
                for (int a = 0; a < dim; ++a) {
                    lo[a] = -mask->extent();
                    hi[a] = mask->extent();
                }
                return;
        }
    }
};

// Origin ball with the same measure as D.
inline DomainSpec symmetrize_domain(const DomainSpec& d) {
    const double m = d.measure();
    if (!(m > 0.0) || !std::isfinite(m))
        throw std::invalid_argument("domain measure must be positive and finite");
    return DomainSpec::ball(d.dim, Point{0.0, 0.0, 0.0}, ball_radius_for_volume(m, d.dim));
}

}  // namespace levysym
