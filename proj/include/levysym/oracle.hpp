#pragma once

// Deterministic small-scale oracles, independent of the Monte Carlo path:
// tensor Riemann sums for the multiple-integral rearrangement inequality,
// lattice convolutions for the random-walk form, the Gaussian density
// rearrangement identity, and truncation convergence of the exponents.

#include <complex>
#include <stdexcept>
#include <vector>

#include "levysym/characteristics.hpp"
#include "levysym/grid.hpp"
#include "levysym/rearrange.hpp"

namespace levysym {

inline constexpr double kOracleCostCap = 1e8;

struct BLLInstance {
    std::vector<GridFunction> functions;   // 1-d, shared grid shape
    std::vector<std::vector<double>> mixing;  // m x k matrix B

    void check() const {
        if (functions.empty() || functions.size() > 3)
            throw std::invalid_argument("need 1..3 functions");
        if (mixing.size() != functions.size())
            throw std::invalid_argument("mixing rows must match functions");
        const std::size_t k = mixing.front().size();
        if (k < 1 || k > 3) throw std::invalid_argument("need 1..3 integration variables");
        for (const auto& row : mixing)
            if (row.size() != k) throw std::invalid_argument("ragged mixing matrix");
        for (const auto& f : functions) {
            if (f.dim != 1) throw std::invalid_argument("oracle functions are 1-d");
            if (f.cells_per_axis != functions.front().cells_per_axis
                || f.h != functions.front().h)
                throw std::invalid_argument("functions must share one grid");
            f.check_values();
        }
    }
};

struct BLLResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double h = 0.0;
    double allowance = 0.0;
};

namespace detail {

inline double bll_sum(const std::vector<const GridFunction*>& fs,
                      const std::vector<std::vector<double>>& B, int k) {
    const GridFunction& g0 = *fs.front();
    const int cells = g0.cells_per_axis;
    const double h = g0.h;
    const int half = g0.half_span();
    double total = 0.0;
    const int n1 = cells, n2 = k >= 2 ? cells : 1, n3 = k >= 3 ? cells : 1;
    for (int i1 = 0; i1 < n1; ++i1) {
        const double x1 = (i1 - half) * h;
        for (int i2 = 0; i2 < n2; ++i2) {
            const double x2 = (i2 - half) * h;
            for (int i3 = 0; i3 < n3; ++i3) {
                const double x3 = (i3 - half) * h;
                double prod = 1.0;
                for (std::size_t j = 0; j < fs.size(); ++j) {
                    double arg = B[j][0] * x1;
                    if (k >= 2) arg += B[j][1] * x2;
                    if (k >= 3) arg += B[j][2] * x3;
                    prod *= fs[j]->value_at(Point{arg, 0.0, 0.0});
                    if (prod == 0.0) break;
                }
                total += prod;
            }
        }
    }
    return total * std::pow(h, k);
}

}  // namespace detail

// Boundary-layer allowance for the discrete inequality: one O(h) cell layer
// per function along each integration direction, in the scale of the
// instance. The constant was calibrated by halving h on randomized instances.
inline double bll_allowance(const BLLInstance& inst) {
    inst.check();
    const GridFunction& g0 = inst.functions.front();
    const std::size_t k = inst.mixing.front().size();
    const double span = 2.0 * g0.extent();
    double prod_max = 1.0;
    for (const auto& f : inst.functions) prod_max *= std::max(f.max_value(), 1e-30);
    double bsum = 0.0;
    for (const auto& row : inst.mixing)
        for (double b : row) bsum += std::abs(b);
    return 2.0 * g0.h * prod_max * bsum * std::pow(span, static_cast<double>(k) - 1.0);
}

// Both sides of the multiple-integral inequality by tensor Riemann sums over
// cell centers; rhs uses the rearranged functions.
inline BLLResult bll_quadrature(const BLLInstance& inst) {
    inst.check();
    const std::size_t k = inst.mixing.front().size();
    const double cost = static_cast<double>(k)
                      * std::pow(static_cast<double>(inst.functions.front().cells_per_axis),
                                 static_cast<double>(k));
    if (cost > kOracleCostCap) throw std::invalid_argument("oracle cost cap exceeded");

    std::vector<const GridFunction*> fs;
    for (const auto& f : inst.functions) fs.push_back(&f);
    BLLResult r;
    r.h = inst.functions.front().h;
    r.lhs = detail::bll_sum(fs, inst.mixing, static_cast<int>(k));

    std::vector<GridFunction> stars;
    stars.reserve(inst.functions.size());
    for (const auto& f : inst.functions) stars.push_back(rearrange_grid(f));
    std::vector<const GridFunction*> gs;
    for (const auto& f : stars) gs.push_back(&f);
    r.rhs = detail::bll_sum(gs, inst.mixing, static_cast<int>(k));
    r.allowance = bll_allowance(inst);
    return r;
}

// --- random walk product functionals on the lattice ------------------------------

struct RandomWalkResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double h = 0.0;
    double allowance = 0.0;
};

namespace detail {

// E[prod_i f_i(x0 + S_{k_i})] on the lattice: propagate the pmf of the walk,
// multiplying by f_i at step k_i. Positions are lattice indices times h.
inline double lattice_walk_product(const GridFunction& phi,
                                   const std::vector<const GridFunction*>& fs,
                                   const std::vector<int>& ks, double x0) {
    const int half = phi.half_span();
    const double h = phi.h;
    const int kmax = ks.back();
    // pmf of one step, indexed by lattice offset
    std::vector<double> step(phi.values);
    for (auto& v : step) v *= h;

    const long x0_idx = std::lround(x0 / h);
    // dist[i] is the mass at lattice index (i + origin)
    std::vector<double> dist{1.0};
    long origin = x0_idx;

    std::size_t next_f = 0;
    auto apply_functions = [&](int step_index) {
        while (next_f < ks.size() && ks[next_f] == step_index) {
            const GridFunction& f = *fs[next_f];
            for (std::size_t i = 0; i < dist.size(); ++i) {
                const double x = (static_cast<long>(i) + origin) * h;
                dist[i] *= f.value_at(Point{x, 0.0, 0.0});
            }
            ++next_f;
        }
    };
    apply_functions(0);
    for (int s = 1; s <= kmax; ++s) {
        std::vector<double> out(dist.size() + step.size() - 1, 0.0);
        for (std::size_t i = 0; i < dist.size(); ++i) {
            if (dist[i] == 0.0) continue;
            for (std::size_t j = 0; j < step.size(); ++j)
                out[i + j] += dist[i] * step[j];
        }
        dist.swap(out);
        origin -= half;
        apply_functions(s);
    }
    double total = 0.0;
    for (double v : dist) total += v;
    return total;
}

}  // namespace detail

inline double randomwalk_allowance(const GridFunction& phi,
                                   const std::vector<GridFunction>& fs) {
    double prod_max = 1.0;
    for (const auto& f : fs) prod_max *= std::max(f.max_value(), 1e-30);
    return 2.0 * phi.h * prod_max * static_cast<double>(fs.size());
}

inline RandomWalkResult randomwalk_product(const GridFunction& phi,
                                           const std::vector<GridFunction>& fs,
                                           const std::vector<int>& ks, double x0) {
    if (phi.dim != 1) throw std::invalid_argument("random-walk oracle is 1-d");
    if (fs.empty() || fs.size() != ks.size())
        throw std::invalid_argument("need matching functions and walk indices");
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] < 0 || ks[i] > 4) throw std::invalid_argument("walk indices must be in 0..4");
        if (i > 0 && ks[i] < ks[i - 1])
            throw std::invalid_argument("walk indices must be nondecreasing");
    }
    if (std::abs(phi.mass() - 1.0) > 1e-9)
        throw std::invalid_argument("step density must be normalized on the grid");
    const double final_size = phi.size() + static_cast<double>(ks.back()) * (phi.size() - 1);
    if (final_size * phi.size() * ks.back() > kOracleCostCap)
        throw std::invalid_argument("oracle cost cap exceeded");

    std::vector<const GridFunction*> fp;
    for (const auto& f : fs) fp.push_back(&f);
    RandomWalkResult r;
    r.h = phi.h;
    r.lhs = detail::lattice_walk_product(phi, fp, ks, x0);

    GridFunction phistar = rearrange_grid(phi);
    std::vector<GridFunction> fstars;
    fstars.reserve(fs.size());
    for (const auto& f : fs) fstars.push_back(rearrange_grid(f));
    std::vector<const GridFunction*> gp;
    for (const auto& f : fstars) gp.push_back(&f);
    r.rhs = detail::lattice_walk_product(phistar, gp, ks, 0.0);
    r.allowance = randomwalk_allowance(phi, fs);
    return r;
}

// --- Gaussian rearrangement identity ---------------------------------------------

inline double gaussian_density(const Mat& a, const Point& b, double t, const Point& x) {
    const int d = a.n;
    const Mat ainv = inverse(a);
    Point z{0.0, 0.0, 0.0};
    for (int i = 0; i < d; ++i) z[i] = x[i] - t * b[i];
    const double q = quad_form(ainv, z);
    return std::exp(-q / (2.0 * t))
         / (std::pow(2.0 * M_PI * t, 0.5 * d) * std::sqrt(det(a)));
}

struct GaussianCheckResult {
    double sup_error = 0.0;
    double peak_sampled = 0.0;
    double peak_rearranged = 0.0;
};

// sup over cells of | rearrange(f_{A,b}(t, .)) - f_{A*,0}(t, .) |.
inline GaussianCheckResult gaussian_rearrangement_check(const Mat& a, const Point& b, double t,
                                                        int cells_per_axis, double h) {
    if (t <= 0.0) throw std::invalid_argument("time must be positive");
    const EigenDecomposition eig = sym_eigen(a);
    if (eig.values[0] <= 0.0)
        throw std::invalid_argument("covariance must be strictly positive definite");
    const int d = a.n;
    GridFunction f = GridFunction::sample(d, cells_per_axis, h, [&](const Point& x) {
        return gaussian_density(a, b, t, x);
    });
    GridFunction fr = rearrange_grid(f);
    const double astar = d == 1 ? det(a) : std::pow(det(a), 1.0 / d);
    Mat star(d);
    for (int i = 0; i < d; ++i) star(i, i) = astar;
    GaussianCheckResult res;
    for (std::size_t i = 0; i < fr.size(); ++i) {
        const double closed = gaussian_density(star, Point{0.0, 0.0, 0.0}, t, fr.center(i));
        res.sup_error = std::max(res.sup_error, std::abs(fr.values[i] - closed));
    }
    res.peak_sampled = f.max_value();
    res.peak_rearranged = fr.max_value();
    return res;
}

// --- exponent convergence ----------------------------------------------------------

struct ExponentConvergenceRow {
    int n = 0;
    Point xi{0.0, 0.0, 0.0};
    double error_plain = 0.0;
    double error_star = 0.0;
};

// |Psi_n - Psi| and |Psi*_n - Psi*| for each (n, xi); the truncation uses the
// default epsilon schedule so both Gaussian and jump residues vanish with n.
inline std::vector<ExponentConvergenceRow> exponent_convergence(
    const LevyTriple& triple, const std::vector<Point>& xi_list, const std::vector<int>& n_list,
    const QuadSpec& spec = {}, RearrangeGridSpec gs = {}) {
    const LevyTriple star = symmetrize_triple(triple, gs);
    std::vector<ExponentConvergenceRow> rows;
    rows.reserve(xi_list.size() * n_list.size());
    for (int n : n_list) {
        const ApproxComponents ac = truncate(triple, n, default_epsilon(triple, n), spec);
        const ApproxComponents acs = truncate(star, n, default_epsilon(star, n), spec);
        for (const Point& xi : xi_list) {
            ExponentConvergenceRow row;
            row.n = n;
            row.xi = xi;
            row.error_plain = std::abs(approx_exponent(ac, xi, spec) - exponent(triple, xi, spec));
            row.error_star = std::abs(approx_exponent_star(acs, xi, spec)
                                      - exponent_star(star, xi, spec));
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace levysym
