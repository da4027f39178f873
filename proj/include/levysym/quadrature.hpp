#pragma once

// Adaptive deterministic quadrature: Gauss-Kronrod 7/15 on intervals,
// tensor GK panels on boxes (d <= 3), and polar/spherical shell wrappers.
// Non-convergence raises QuadratureError carrying the partial value.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "levysym/core.hpp"

namespace levysym {

struct QuadSpec {
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    int max_panels = 200000;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double partial, double err_estimate)
        : std::runtime_error(what), partial_value(partial), error_estimate(err_estimate) {}
    double partial_value;
    double error_estimate;
};

namespace detail {

// QUADPACK qk15 nodes/weights on [-1,1]; Gauss-7 nodes are the odd entries.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kGk15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGauss7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class T>
struct PanelResult {
    T value{};
    double error = 0.0;
};

template <class T, class Fn>
PanelResult<T> gk15_panel(const Fn& f, double a, double b) {
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    T resk = kGk15Weights[7] * f(c);
    T resg = kGauss7Weights[3] * f(c);
    for (int j = 0; j < 7; ++j) {
        const double x = hl * kGk15Nodes[j];
        const T fsum = f(c - x) + f(c + x);
        resk += kGk15Weights[j] * fsum;
        if (j % 2 == 1) resg += kGauss7Weights[j / 2] * fsum;
    }
    PanelResult<T> r;
    r.value = resk * hl;
    r.error = std::abs(std::abs(hl) * std::abs(resk - resg));
    return r;
}

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

}  // namespace detail

// Adaptive GK15 over [a, b], splitting the worst panel first. Breakpoints are
// honored as initial panel boundaries (useful at truncation radii).
template <class T, class Fn>
T integrate_interval(const Fn& f, double a, double b, const QuadSpec& spec = {},
                     const std::vector<double>& breakpoints = {}) {
    if (a == b) return T{};
    std::vector<double> edges{a, b};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    std::sort(edges.begin(), edges.end());

    struct Panel {
        double a, b, error;
        T value;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    std::priority_queue<Panel> heap;
    T total{};
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto r = detail::gk15_panel<T>(f, edges[i], edges[i + 1]);
        heap.push(Panel{edges[i], edges[i + 1], r.error, r.value});
        total += r.value;
        total_err += r.error;
    }
    int panels = static_cast<int>(heap.size());
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * detail::magnitude(total))) {
        if (panels >= spec.max_panels || heap.top().error <= 0.0) {
            throw QuadratureError("interval quadrature did not converge",
                                  detail::magnitude(total), total_err);
        }
        Panel p = heap.top();
        heap.pop();
        const double mid = 0.5 * (p.a + p.b);
        auto rl = detail::gk15_panel<T>(f, p.a, mid);
        auto rr = detail::gk15_panel<T>(f, mid, p.b);
        total += rl.value + rr.value - p.value;
        total_err += rl.error + rr.error - p.error;
        heap.push(Panel{p.a, mid, rl.error, rl.value});
        heap.push(Panel{mid, p.b, rr.error, rr.value});
        ++panels;
    }
    return total;
}

// Tensor GK15 panel on a box with embedded tensor Gauss-7 error estimate.
namespace detail {

template <class T, class Fn>
PanelResult<T> gk15_box_panel(const Fn& f, const Point& lo, const Point& hi, int dim) {
    double node[15], wk[15], wg[15];
    for (int j = 0; j < 7; ++j) {
        node[j] = -kGk15Nodes[j];
        node[14 - j] = kGk15Nodes[j];
        wk[j] = wk[14 - j] = kGk15Weights[j];
        wg[j] = wg[14 - j] = (j % 2 == 1) ? kGauss7Weights[j / 2] : 0.0;
    }
    node[7] = 0.0;
    wk[7] = kGk15Weights[7];
    wg[7] = kGauss7Weights[3];

    Point c{}, hl{};
    double vol = 1.0;
    for (int i = 0; i < dim; ++i) {
        c[i] = 0.5 * (lo[i] + hi[i]);
        hl[i] = 0.5 * (hi[i] - lo[i]);
        vol *= hl[i];
    }
    T resk{}, resg{};
    const int n1 = 15, n2 = dim >= 2 ? 15 : 1, n3 = dim >= 3 ? 15 : 1;
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            for (int k = 0; k < n3; ++k) {
                Point x{c[0] + hl[0] * node[i],
                        dim >= 2 ? c[1] + hl[1] * node[j] : 0.0,
                        dim >= 3 ? c[2] + hl[2] * node[k] : 0.0};
                const T fv = f(x);
                double wkk = wk[i], wgg = wg[i];
                if (dim >= 2) wkk *= wk[j], wgg *= wg[j];
                if (dim >= 3) wkk *= wk[k], wgg *= wg[k];
                resk += wkk * fv;
                resg += wgg * fv;
            }
        }
    }
    PanelResult<T> r;
    r.value = resk * vol;
    r.error = std::abs(vol) * detail::magnitude(resk - resg);
    return r;
}

}  // namespace detail

// Adaptive tensor-grid quadrature over an axis-aligned box, d = 1..3.
template <class T, class Fn>
T integrate_box(const Fn& f, const Point& lo, const Point& hi, int dim,
                const QuadSpec& spec = {}) {
    if (dim == 1) {
        return integrate_interval<T>([&](double x) { return f(Point{x, 0.0, 0.0}); },
                                     lo[0], hi[0], spec);
    }
    struct Panel {
        Point lo, hi;
        double error;
        T value;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    std::priority_queue<Panel> heap;
    auto r0 = detail::gk15_box_panel<T>(f, lo, hi, dim);
    heap.push(Panel{lo, hi, r0.error, r0.value});
    T total = r0.value;
    double total_err = r0.error;
    int panels = 1;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * detail::magnitude(total))) {
        if (panels >= spec.max_panels || heap.top().error <= 0.0) {
            throw QuadratureError("box quadrature did not converge",
                                  detail::magnitude(total), total_err);
        }
        Panel p = heap.top();
        heap.pop();
        int axis = 0;
        double w = p.hi[0] - p.lo[0];
        for (int i = 1; i < dim; ++i)
            if (p.hi[i] - p.lo[i] > w) w = p.hi[i] - p.lo[i], axis = i;
        const double mid = 0.5 * (p.lo[axis] + p.hi[axis]);
        Point hi1 = p.hi, lo2 = p.lo;
        hi1[axis] = mid;
        lo2[axis] = mid;
        auto rl = detail::gk15_box_panel<T>(f, p.lo, hi1, dim);
        auto rr = detail::gk15_box_panel<T>(f, lo2, p.hi, dim);
        total += rl.value + rr.value - p.value;
        total_err += rl.error + rr.error - p.error;
        heap.push(Panel{p.lo, hi1, rl.error, rl.value});
        heap.push(Panel{lo2, p.hi, rr.error, rr.value});
        ++panels;
    }
    return total;
}

// Integral of g over the shell r0 <= |y| <= r1 in R^d, in polar/spherical
// coordinates so radial truncation boundaries are panel edges, not jumps.
template <class T, class Fn>
T integrate_shell(const Fn& g, int dim, double r0, double r1, const QuadSpec& spec = {}) {
    if (r1 <= r0) return T{};
    if (dim == 1) {
        return integrate_interval<T>(
            [&](double s) { return g(Point{s, 0.0, 0.0}) + g(Point{-s, 0.0, 0.0}); },
            r0, r1, spec);
    }
    if (dim == 2) {
        auto integrand = [&](const Point& rt) {
            const double r = rt[0], th = rt[1];
            return r * g(Point{r * std::cos(th), r * std::sin(th), 0.0});
        };
        return integrate_box<T>(integrand, Point{r0, 0.0, 0.0},
                                Point{r1, 2.0 * M_PI, 0.0}, 2, spec);
    }
    auto integrand = [&](const Point& rut) {
        const double r = rut[0], u = rut[1], th = rut[2];  // u = cos(polar angle)
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        return r * r * g(Point{r * s * std::cos(th), r * s * std::sin(th), r * u});
    };
    return integrate_box<T>(integrand, Point{r0, -1.0, 0.0},
                            Point{r1, 1.0, 2.0 * M_PI}, 3, spec);
}

// Radial integral s^{d-1} * profile(s) over [r0, r1] times the sphere area,
// for isotropic integrands.
template <class Fn>
double integrate_radial(const Fn& profile, int dim, double r0, double r1,
                        const QuadSpec& spec = {},
                        const std::vector<double>& breakpoints = {}) {
    if (r1 <= r0) return 0.0;
    const double area = unit_sphere_area(dim);
    auto f = [&](double s) { return std::pow(s, dim - 1) * profile(s); };
    return area * integrate_interval<double>(f, r0, r1, spec, breakpoints);
}

}  // namespace levysym
