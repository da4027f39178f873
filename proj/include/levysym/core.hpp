#pragma once

// Small fixed-dimension (d <= 3) linear algebra, ball volumes, and the
// blocked deterministic parallel-for used by the Monte Carlo runners.

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace levysym {

inline constexpr int kMaxDim = 3;

// Point in R^d, d <= 3; unused trailing components stay zero.
using Point = std::array<double, kMaxDim>;

inline Point make_point(double x, double y = 0.0, double z = 0.0) {
    return Point{x, y, z};
}

inline Point point_from(const std::vector<double>& v) {
    if (v.size() > kMaxDim) throw std::invalid_argument("point dimension exceeds 3");
    Point p{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < v.size(); ++i) p[i] = v[i];
    return p;
}

inline double dot(const Point& a, const Point& b, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Point& a, int dim) { return dot(a, a, dim); }
inline double norm(const Point& a, int dim) { return std::sqrt(norm2(a, dim)); }

inline Point add(const Point& a, const Point& b, int dim) {
    Point r{0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i) r[i] = a[i] + b[i];
    return r;
}

inline Point sub(const Point& a, const Point& b, int dim) {
    Point r{0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i) r[i] = a[i] - b[i];
    return r;
}

inline Point scale(const Point& a, double c, int dim) {
    Point r{0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i) r[i] = c * a[i];
    return r;
}

// Volume of the d-dimensional unit ball.
inline double unit_ball_volume(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return M_PI;
        case 3: return 4.0 * M_PI / 3.0;
        default: throw std::invalid_argument("dimension must be 1..3");
    }
}

// Surface measure of the unit sphere S^{d-1}.
inline double unit_sphere_area(int dim) { return dim * unit_ball_volume(dim); }

// Radius of the origin ball with the given d-volume.
inline double ball_radius_for_volume(double volume, int dim) {
    if (volume < 0.0) throw std::invalid_argument("negative volume");
    return std::pow(volume / unit_ball_volume(dim), 1.0 / dim);
}

// Dense d x d matrix, d <= 3, row-major.
struct Mat {
    int n = 0;
    std::array<double, kMaxDim * kMaxDim> a{};

    Mat() = default;
    explicit Mat(int dim) : n(dim) { a.fill(0.0); }

    static Mat identity(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat zero(int dim) { return Mat(dim); }
    static Mat diag(std::initializer_list<double> d) {
        Mat m(static_cast<int>(d.size()));
        int i = 0;
        for (double v : d) m(i, i) = v, ++i;
        return m;
    }

    double& operator()(int i, int j) { return a[i * kMaxDim + j]; }
    double operator()(int i, int j) const { return a[i * kMaxDim + j]; }

    bool is_zero(double tol = 0.0) const {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (std::abs((*this)(i, j)) > tol) return false;
        return true;
    }

    Point apply(const Point& x) const {
        Point r{0.0, 0.0, 0.0};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r[i] += (*this)(i, j) * x[j];
        return r;
    }
};

inline Mat add_scaled_identity(const Mat& m, double eps) {
    Mat r = m;
    for (int i = 0; i < m.n; ++i) r(i, i) += eps;
    return r;
}

inline double det(const Mat& m) {
    switch (m.n) {
        case 1: return m(0, 0);
        case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                 - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                 + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        default: throw std::invalid_argument("det: dimension must be 1..3");
    }
}

inline Mat inverse(const Mat& m) {
    const double d = det(m);
    if (d == 0.0) throw std::invalid_argument("inverse: singular matrix");
    Mat r(m.n);
    switch (m.n) {
        case 1:
            r(0, 0) = 1.0 / d;
            break;
        case 2:
            r(0, 0) = m(1, 1) / d;
            r(1, 1) = m(0, 0) / d;
            r(0, 1) = -m(0, 1) / d;
            r(1, 0) = -m(1, 0) / d;
            break;
        case 3:
            r(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / d;
            r(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / d;
            r(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / d;
            r(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / d;
            r(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / d;
            r(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / d;
            r(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / d;
            r(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / d;
            r(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / d;
            break;
    }
    return r;
}

inline double quad_form(const Mat& m, const Point& x) {
    double s = 0.0;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) s += x[i] * m(i, j) * x[j];
    return s;
}

struct EigenDecomposition {
    std::array<double, kMaxDim> values{};  // ascending
    Mat vectors;                           // columns are eigenvectors
};

// Cyclic Jacobi for symmetric d x d, d <= 3. Exact on diagonal input.
inline EigenDecomposition sym_eigen(const Mat& m) {
    const int n = m.n;
    Mat a = m, v = Mat::identity(n);
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off <= 1e-300) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0)
                               / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    EigenDecomposition e;
    e.vectors = Mat(n);
    std::array<int, kMaxDim> order{0, 1, 2};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a(order[j], order[j]) < a(order[i], order[i])) std::swap(order[i], order[j]);
    for (int i = 0; i < n; ++i) {
        e.values[i] = a(order[i], order[i]);
        for (int k = 0; k < n; ++k) e.vectors(k, i) = v(k, order[i]);
    }
    return e;
}

// Factor S with S S^T = m (symmetric PSD); negative eigenvalues below tol are clamped.
inline Mat spectral_sqrt(const Mat& m, double clamp_tol = 1e-12) {
    const EigenDecomposition e = sym_eigen(m);
    Mat s(m.n);
    for (int j = 0; j < m.n; ++j) {
        double lam = e.values[j];
        if (lam < 0.0) {
            if (lam < -clamp_tol) throw std::invalid_argument("spectral_sqrt: matrix not PSD");
            lam = 0.0;
        }
        const double r = std::sqrt(lam);
        for (int i = 0; i < m.n; ++i) s(i, j) = e.vectors(i, j) * r;
    }
    return s;
}

// Deterministic blocked parallel loop: blocks are claimed atomically but each
// block's result is written to its own slot, so the combined output does not
// depend on the number of workers.
inline constexpr std::uint64_t kMcBlockSize = 4096;

template <class BlockFn>
void for_blocks(std::uint64_t num_items, int workers, BlockFn&& fn) {
    const std::uint64_t nblocks = (num_items + kMcBlockSize - 1) / kMcBlockSize;
    if (workers <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        workers = hc ? static_cast<int>(hc) : 1;
    }
    const int nthreads = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), nblocks ? nblocks : 1));
    if (nthreads <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b)
            fn(b, b * kMcBlockSize, std::min(num_items, (b + 1) * kMcBlockSize));
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::uint64_t b = next.fetch_add(1);
                if (b >= nblocks) break;
                fn(b, b * kMcBlockSize, std::min(num_items, (b + 1) * kMcBlockSize));
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace levysym
