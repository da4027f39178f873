#include <doctest.h>

#include <cmath>
#include <random>

#include "levysym/oracle.hpp"

using namespace levysym;

namespace {

GridFunction random_grid_1d(std::mt19937& rng, int cells, double h) {
    GridFunction g(1, cells, h);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution zero(0.3);
    for (auto& v : g.values) v = zero(rng) ? 0.0 : u(rng);
    return g;
}

}  // namespace

TEST_CASE("bll: single function is equimeasurable") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        BLLInstance inst;
        inst.functions = {random_grid_1d(rng, 81, 0.1)};
        inst.mixing = {{1.0}};
        auto r = bll_quadrature(inst);
        CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-12));
    }
}

TEST_CASE("bll: Hardy-Littlewood case holds exactly on the lattice") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        BLLInstance inst;
        inst.functions = {random_grid_1d(rng, 101, 0.08), random_grid_1d(rng, 101, 0.08)};
        inst.mixing = {{1.0}, {1.0}};
        auto r = bll_quadrature(inst);
        CHECK(r.lhs <= r.rhs + 1e-12 * std::max(1.0, r.rhs));
    }
}

TEST_CASE("bll: convolution-type instance with three functions") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        BLLInstance inst;
        inst.functions = {random_grid_1d(rng, 41, 0.15), random_grid_1d(rng, 41, 0.15),
                          random_grid_1d(rng, 41, 0.15)};
        inst.mixing = {{1.0, 0.0}, {0.0, 1.0}, {1.0, -1.0}};
        auto r = bll_quadrature(inst);
        CHECK(r.lhs <= r.rhs + r.allowance);
    }
}

TEST_CASE("bll cost cap") {
    BLLInstance inst;
    inst.functions = {GridFunction(1, 1001, 0.01), GridFunction(1, 1001, 0.01),
                      GridFunction(1, 1001, 0.01)};
    inst.mixing = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    CHECK_THROWS_AS(bll_quadrature(inst), std::invalid_argument);
}

TEST_CASE("random walk: symmetric decreasing inputs are a fixed point") {
    GridFunction phi(1, 41, 0.25);
    for (std::size_t i = 0; i < phi.size(); ++i)
        phi.values[i] = std::exp(-static_cast<double>(phi.lattice_r2(i)) * 0.05);
    const double mass = phi.mass();
    for (auto& v : phi.values) v /= mass;
    GridFunction f(1, 41, 0.25);
    for (std::size_t i = 0; i < f.size(); ++i)
        f.values[i] = 1.0 / (1.0 + static_cast<double>(f.lattice_r2(i)));
    auto r = randomwalk_product(phi, {f, f}, {1, 2}, 0.0);
    CHECK(r.lhs == r.rhs);  // identical lattice computation
}

TEST_CASE("random walk: one-step case against direct Riemann sums") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        GridFunction phi = random_grid_1d(rng, 61, 0.12);
        double mass = phi.mass();
        if (mass == 0.0) continue;
        for (auto& v : phi.values) v /= mass;
        GridFunction f = random_grid_1d(rng, 61, 0.12);
        const double x0 = 0.12 * 7;
        auto r = randomwalk_product(phi, {f}, {1}, x0);

        // direct sum: E[f(x0 + Y)] = sum_y f(x0 + y) phi(y) h
        double direct = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i) {
            const double y = phi.center(i)[0];
            direct += f.value_at(Point{x0 + y, 0, 0}) * phi.values[i] * phi.h;
        }
        CHECK(r.lhs == doctest::Approx(direct).epsilon(1e-12));
        CHECK(r.lhs <= r.rhs + 1e-12 * std::max(1.0, r.rhs));
    }
}

TEST_CASE("random walk: two observation times, asymmetric step density") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        GridFunction phi = random_grid_1d(rng, 41, 0.2);
        double mass = phi.mass();
        if (mass == 0.0) continue;
        for (auto& v : phi.values) v /= mass;
        GridFunction f1 = random_grid_1d(rng, 41, 0.2);
        GridFunction f2 = random_grid_1d(rng, 41, 0.2);
        auto r = randomwalk_product(phi, {f1, f2}, {1, 2}, 0.2 * 3);
        CHECK(r.lhs <= r.rhs + r.allowance);
    }
}

TEST_CASE("random walk: verdict is stable under grid refinement") {
    auto phi_profile = [](double x) { return x > -0.2 && x < 1.0 ? std::exp(-x) : 0.0; };
    auto f1_profile = [](double x) { return std::max(0.0, 1.0 - std::abs(x - 0.4)); };
    auto f2_profile = [](double x) { return x > -1.0 && x < 0.5 ? 0.8 : 0.0; };
    for (int cells : {41, 81}) {
        const double h = 4.0 / (cells - 1);
        GridFunction phi = GridFunction::sample(1, cells, h,
                                                [&](const Point& p) { return phi_profile(p[0]); });
        const double mass = phi.mass();
        for (auto& v : phi.values) v /= mass;
        GridFunction f1 = GridFunction::sample(1, cells, h,
                                               [&](const Point& p) { return f1_profile(p[0]); });
        GridFunction f2 = GridFunction::sample(1, cells, h,
                                               [&](const Point& p) { return f2_profile(p[0]); });
        auto r = randomwalk_product(phi, {f1, f2}, {1, 3}, 0.25);
        CHECK(r.lhs <= r.rhs + r.allowance);
    }
}

TEST_CASE("random walk input validation") {
    GridFunction phi(1, 11, 0.5);
    phi.values.assign(phi.size(), 0.3);  // mass != 1
    GridFunction f(1, 11, 0.5);
    CHECK_THROWS_AS(randomwalk_product(phi, {f}, {1}, 0.0), std::invalid_argument);
}

TEST_CASE("gaussian identity: isotropic case is already rearranged") {
    auto r = gaussian_rearrangement_check(Mat::identity(2), Point{0, 0, 0}, 1.0, 81, 0.2);
    CHECK(r.sup_error < 1e-14);
    CHECK(r.peak_sampled == r.peak_rearranged);
}

TEST_CASE("gaussian identity: anisotropic shifted density converges O(h)") {
    const Mat a = Mat::diag({1.0, 4.0});
    const Point b{2.0, 0.0, 0.0};
    double prev = -1.0;
    // grid extent fixed at 12, h halved
    for (double h : {0.25, 0.125}) {
        const int cells = static_cast<int>(std::lround(24.0 / h)) + 1;
        auto r = gaussian_rearrangement_check(a, b, 1.0, cells, h);
        CHECK(r.peak_rearranged == r.peak_sampled);
        if (prev > 0.0) CHECK(prev / r.sup_error >= 1.5);
        prev = r.sup_error;
    }
}

TEST_CASE("exponent convergence: inactive truncation leaves no plain residue") {
    auto phi = JumpDensity::power_law(1, 0.0, 1.0, 0.5, 2.0);
    auto t = LevyTriple::make(1, Point{0.3, 0, 0}, Mat::diag({0.5}), phi);
    auto rows = exponent_convergence(t, {Point{1.0, 0, 0}, Point{2.5, 0, 0}}, {1, 4, 16});
    for (const auto& row : rows) CHECK(row.error_plain < 1e-6);
    // the rearranged density concentrates at the origin, so its truncation
    // residue is real but vanishes with n
    for (std::size_t x = 0; x < 2; ++x) {
        CHECK(rows[0 * 2 + x].error_star > rows[1 * 2 + x].error_star);
        CHECK(rows[1 * 2 + x].error_star > rows[2 * 2 + x].error_star);
        CHECK(rows[2 * 2 + x].error_star < 1e-3);
    }
}

TEST_CASE("exponent convergence: truncated Cauchy errors shrink monotonically") {
    auto phi = JumpDensity::power_law(1, 2.0, 0.0, 1.0, 1.0);
    auto t = LevyTriple::make(1, Point{0.4, 0, 0}, Mat::zero(1), phi);
    const std::vector<Point> xis{Point{0.5, 0, 0}, Point{1.0, 0, 0}, Point{2.0, 0, 0}};
    auto rows = exponent_convergence(t, xis, {4, 16, 64});
    for (std::size_t x = 0; x < xis.size(); ++x) {
        const auto& r4 = rows[0 * xis.size() + x];
        const auto& r16 = rows[1 * xis.size() + x];
        const auto& r64 = rows[2 * xis.size() + x];
        CHECK(r4.error_plain > r16.error_plain);
        CHECK(r16.error_plain > r64.error_plain);
        CHECK(r4.error_star > r16.error_star);
        CHECK(r16.error_star > r64.error_star);
        CHECK(r64.error_plain > 0.0);
    }
}

TEST_CASE("epsilon regularization contributes exactly eps |xi|^2 / 2") {
    auto phi = JumpDensity::power_law(1, 0.0, 1.0, 0.5, 2.0);
    auto t = LevyTriple::make(1, Point{0, 0, 0}, Mat::zero(1), phi);
    const Point xi{1.5, 0, 0};
    for (int n : {4, 16, 64}) {
        const double eps = 1.0 / n;
        auto with_eps = approx_exponent(truncate(t, n, eps), xi);
        auto without = approx_exponent(truncate(t, n, 0.0), xi);
        CHECK((with_eps - without).real()
              == doctest::Approx(0.5 * eps * xi[0] * xi[0]).epsilon(1e-12));
    }
}
