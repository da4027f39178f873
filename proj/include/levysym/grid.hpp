#pragma once

// Nonnegative functions sampled on a regular, odd-sized, origin-centered grid.
// The canonical cell order (distance from origin, lexicographic tie-break) is
// the discrete target of symmetric decreasing rearrangement.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "levysym/core.hpp"

#include <json.hpp>

namespace levysym {

struct GridFunction {
    int dim = 1;              // 1..3
    int cells_per_axis = 1;   // odd
    double h = 1.0;           // cell size
    std::vector<double> values;  // row-major, size cells_per_axis^dim

    GridFunction() = default;
    GridFunction(int dim_, int cells, double h_)
        : dim(dim_), cells_per_axis(cells), h(h_),
          values(static_cast<std::size_t>(total_cells(dim_, cells)), 0.0) {
        check_shape();
    }

    static std::size_t total_cells(int dim, int cells) {
        std::size_t n = 1;
        for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(cells);
        return n;
    }

    void check_shape() const {
        if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("grid dim must be 1..3");
        if (cells_per_axis < 1 || cells_per_axis % 2 == 0)
            throw std::invalid_argument("cells_per_axis must be odd and positive");
        if (h <= 0.0) throw std::invalid_argument("cell size must be positive");
        if (values.size() != total_cells(dim, cells_per_axis))
            throw std::invalid_argument("values size does not match grid shape");
    }

    void check_values() const {
        for (double v : values)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument("grid values must be finite and >= 0");
    }

    std::size_t size() const { return values.size(); }
    int half_span() const { return (cells_per_axis - 1) / 2; }
    double extent() const { return (half_span() + 0.5) * h; }  // outer edge coordinate

    // Multi-index (0-based) of a flat index, row-major.
    std::array<int, kMaxDim> multi_index(std::size_t flat) const {
        std::array<int, kMaxDim> idx{0, 0, 0};
        for (int a = dim - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(flat % cells_per_axis);
            flat /= cells_per_axis;
        }
        return idx;
    }

    Point center(std::size_t flat) const {
        const auto idx = multi_index(flat);
        Point p{0.0, 0.0, 0.0};
        for (int a = 0; a < dim; ++a) p[a] = (idx[a] - half_span()) * h;
        return p;
    }

    // Integer squared lattice radius of a cell; exact, used for ordering ties.
    std::int64_t lattice_r2(std::size_t flat) const {
        const auto idx = multi_index(flat);
        std::int64_t s = 0;
        for (int a = 0; a < dim; ++a) {
            const std::int64_t k = idx[a] - half_span();
            s += k * k;
        }
        return s;
    }

    // Flat index of the cell containing x; throws when x is outside the grid.
    std::size_t cell_at(const Point& x) const {
        std::size_t flat = 0;
        for (int a = 0; a < dim; ++a) {
            const double t = x[a] / h + half_span();
            const long k = std::lround(t);
            if (k < 0 || k >= cells_per_axis || std::abs(t - k) > 0.5 + 1e-9)
                throw std::out_of_range("point outside grid bounds");
            flat = flat * cells_per_axis + static_cast<std::size_t>(k);
        }
        return flat;
    }

    bool covers(const Point& x) const {
        for (int a = 0; a < dim; ++a)
            if (std::abs(x[a]) > extent()) return false;
        return true;
    }

    // Piecewise-constant evaluation; zero outside the grid.
    double value_at(const Point& x) const {
        std::size_t flat = 0;
        for (int a = 0; a < dim; ++a) {
            const double t = x[a] / h + half_span();
            const long k = std::lround(t);
            if (k < 0 || k >= cells_per_axis) return 0.0;
            flat = flat * cells_per_axis + static_cast<std::size_t>(k);
        }
        return values[flat];
    }

    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= h;
        return v;
    }

    double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
    double mass() const { return cell_volume() * sum(); }
    double max_value() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, v);
        return m;
    }

    // Cells sorted by (distance from origin, flat index). Deterministic.
    std::vector<std::size_t> canonical_order() const {
        std::vector<std::size_t> order(size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::vector<std::int64_t> r2(size());
        for (std::size_t i = 0; i < size(); ++i) r2[i] = lattice_r2(i);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return r2[a] != r2[b] ? r2[a] < r2[b] : a < b;
        });
        return order;
    }

    static GridFunction sample(int dim, int cells, double h,
                               const std::function<double(const Point&)>& f) {
        GridFunction g(dim, cells, h);
        for (std::size_t i = 0; i < g.size(); ++i)
            g.values[i] = f(g.center(i));
        return g;
    }
};

// --- serialization -----------------------------------------------------------

// Binary layout: dim (u64 LE), cells_per_axis (u64 LE), h (f64 LE), values (f64 LE).
inline void write_grid_binary(const GridFunction& g, std::ostream& os) {
    auto put_u64 = [&](std::uint64_t v) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
        os.write(reinterpret_cast<const char*>(b), 8);
    };
    auto put_f64 = [&](double d) {
        std::uint64_t v;
        static_assert(sizeof(v) == sizeof(d));
        std::memcpy(&v, &d, 8);
        put_u64(v);
    };
    put_u64(static_cast<std::uint64_t>(g.dim));
    put_u64(static_cast<std::uint64_t>(g.cells_per_axis));
    put_f64(g.h);
    for (double v : g.values) put_f64(v);
}

inline GridFunction read_grid_binary(std::istream& is) {
    auto get_u64 = [&]() {
        unsigned char b[8];
        is.read(reinterpret_cast<char*>(b), 8);
        if (!is) throw std::runtime_error("truncated grid stream");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        return v;
    };
    auto get_f64 = [&]() {
        const std::uint64_t v = get_u64();
        double d;
        std::memcpy(&d, &v, 8);
        return d;
    };
    GridFunction g;
    g.dim = static_cast<int>(get_u64());
    g.cells_per_axis = static_cast<int>(get_u64());
    g.h = get_f64();
    g.values.resize(GridFunction::total_cells(g.dim, g.cells_per_axis));
    for (auto& v : g.values) v = get_f64();
    g.check_shape();
    g.check_values();
    return g;
}

inline nlohmann::json grid_to_json(const GridFunction& g) {
    return nlohmann::json{{"dim", g.dim},
                          {"cells_per_axis", g.cells_per_axis},
                          {"h", g.h},
                          {"values", g.values}};
}

inline GridFunction grid_from_json(const nlohmann::json& j) {
    GridFunction g;
    g.dim = j.at("dim").get<int>();
    g.cells_per_axis = j.at("cells_per_axis").get<int>();
    g.h = j.at("h").get<double>();
    g.values = j.at("values").get<std::vector<double>>();
    g.check_shape();
    g.check_values();
    return g;
}

}  // namespace levysym
