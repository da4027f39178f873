#pragma once

// Symmetric decreasing rearrangement of grid functions, level-set measures,
// and the layer-cake evaluation that serves as an independent route to f*.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "levysym/domain.hpp"
#include "levysym/grid.hpp"

namespace levysym {

// Rearranged grid function: same multiset of values, nonincreasing along the
// canonical cell order. Stable on value ties, deterministic throughout.
inline GridFunction rearrange_grid(const GridFunction& f) {
    f.check_shape();
    f.check_values();
    std::vector<std::size_t> by_value(f.size());
    std::iota(by_value.begin(), by_value.end(), std::size_t{0});
    std::stable_sort(by_value.begin(), by_value.end(), [&](std::size_t a, std::size_t b) {
        return f.values[a] > f.values[b];
    });
    const std::vector<std::size_t> order = f.canonical_order();
    GridFunction out(f.dim, f.cells_per_axis, f.h);
    for (std::size_t k = 0; k < f.size(); ++k)
        out.values[order[k]] = f.values[by_value[k]];
    return out;
}

struct LevelMeasure {
    double measure = 0.0;
    double radius = 0.0;
};

// Grid measure of {f > t} and the radius of the origin ball with that measure.
inline LevelMeasure level_measure(const GridFunction& f, double t) {
    if (t < 0.0) throw std::invalid_argument("level threshold must be >= 0");
    std::size_t count = 0;
    for (double v : f.values)
        if (v > t) ++count;
    LevelMeasure lm;
    lm.measure = f.cell_volume() * static_cast<double>(count);
    lm.radius = count ? ball_radius_for_volume(lm.measure, f.dim) : 0.0;
    return lm;
}

// f*(x) by integrating rearranged level-set indicators over the thresholds at
// the distinct cell values. Exact for grid functions: never sorts assignments,
// only counts cells, so it cross-checks rearrange_grid independently.
inline double layer_cake_eval(const GridFunction& f, const Point& x) {
    const std::size_t cell = f.cell_at(x);  // throws if outside bounds
    const std::int64_t r2 = f.lattice_r2(cell);
    // 1-based position of x's cell in the canonical order.
    std::size_t rank = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::int64_t r2i = f.lattice_r2(i);
        if (r2i < r2 || (r2i == r2 && i < cell)) ++rank;
    }
    std::vector<double> distinct = f.values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    double value = 0.0, prev = 0.0;
    for (double u : distinct) {
        if (u <= 0.0) continue;
        // On (prev, u] the level set {f > t} is {f >= u}.
        std::size_t count = 0;
        for (double v : f.values)
            if (v >= u) ++count;
        if (count >= rank) value += u - prev;
        prev = u;
    }
    return value;
}

}  // namespace levysym
