#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "levysym/rearrange.hpp"

using namespace levysym;

namespace {

GridFunction random_grid(std::mt19937& rng, int dim, int cells, double h) {
    GridFunction g(dim, cells, h);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution spike(0.2);
    for (auto& v : g.values) v = spike(rng) ? 0.0 : u(rng);
    return g;
}

}  // namespace

TEST_CASE("1-d indicator recenters to a symmetric interval") {
    // indicator of [0,2] on a grid covering [-4,4]
    const int cells = 81;
    const double h = 8.0 / (cells - 1);
    GridFunction f = GridFunction::sample(1, cells, h, [](const Point& p) {
        return (p[0] >= 0.0 && p[0] <= 2.0) ? 1.0 : 0.0;
    });
    GridFunction g = rearrange_grid(f);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.center(i)[0];
        if (std::abs(x) < 1.0 - h) CHECK(g.values[i] == 1.0);
        if (std::abs(x) > 1.0 + h) CHECK(g.values[i] == 0.0);
    }
}

TEST_CASE("radially nonincreasing input is a fixed point") {
    // value depends only on the lattice radius class: exact fixed point
    GridFunction f(2, 41, 0.1);
    for (std::size_t i = 0; i < f.size(); ++i)
        f.values[i] = std::exp(-static_cast<double>(f.lattice_r2(i)) * f.h * f.h);
    GridFunction g = rearrange_grid(f);
    CHECK(g.values == f.values);

    // sampled radial profile: fixed point up to same-radius rounding ties
    GridFunction fs = GridFunction::sample(2, 41, 0.1, [](const Point& p) {
        return std::exp(-norm2(p, 2));
    });
    GridFunction gs = rearrange_grid(fs);
    double sup = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i)
        sup = std::max(sup, std::abs(gs.values[i] - fs.values[i]));
    CHECK(sup < 1e-12);
    // idempotence on arbitrary input
    std::mt19937 rng(7);
    GridFunction r = random_grid(rng, 2, 21, 0.25);
    GridFunction r1 = rearrange_grid(r);
    GridFunction r2 = rearrange_grid(r1);
    CHECK(r1.values == r2.values);
}

TEST_CASE("ramp rearranges to the centered tent, sup error <= 2h") {
    const int cells = 401;
    const double h = 4.0 / (cells - 1);
    GridFunction f = GridFunction::sample(1, cells, h, [](const Point& p) {
        return (p[0] >= 0.0 && p[0] <= 1.0) ? p[0] : 0.0;
    });
    GridFunction g = rearrange_grid(f);
    // layer-cake oracle: m{f > t} = 1 - t, so f*(x) = (1 - 2|x|) on [-1/2, 1/2]
    double sup = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.center(i)[0];
        const double expect = std::max(0.0, 1.0 - 2.0 * std::abs(x));
        sup = std::max(sup, std::abs(g.values[i] - expect));
    }
    CHECK(sup <= 2.0 * h);
}

TEST_CASE("level_measure") {
    const int cells = 201;
    const double h = 8.0 / (cells - 1);
    GridFunction ind = GridFunction::sample(1, cells, h, [](const Point& p) {
        return (p[0] > -0.5 && p[0] < 1.5) ? 1.0 : 0.0;
    });
    auto lm = level_measure(ind, 0.5);
    CHECK(lm.measure == doctest::Approx(2.0).epsilon(2.0 * h));
    CHECK(lm.radius == doctest::Approx(1.0).epsilon(2.0 * h));

    auto top = level_measure(ind, 1.0);
    CHECK(top.measure == 0.0);
    CHECK(top.radius == 0.0);

    // standard Gaussian density at t = 0.2: closed-form level-set length
    GridFunction gauss = GridFunction::sample(1, 801, 8.0 / 800, [](const Point& p) {
        return std::exp(-0.5 * p[0] * p[0]) / std::sqrt(2.0 * M_PI);
    });
    const double t = 0.2;
    const double expect = 2.0 * std::sqrt(2.0 * std::log(1.0 / (t * std::sqrt(2.0 * M_PI))));
    auto glm = level_measure(gauss, t);
    CHECK(std::abs(glm.measure - expect) <= 2.0 * gauss.h);
}

TEST_CASE("layer cake evaluation") {
    std::mt19937 rng(11);
    GridFunction f = random_grid(rng, 1, 41, 0.2);

    // at the origin: the max value
    CHECK(layer_cake_eval(f, Point{0.0, 0.0, 0.0}) == *std::max_element(f.values.begin(), f.values.end()));

    // cross-method equivalence at every cell center, both 1-d and 2-d
    GridFunction fs = rearrange_grid(f);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(layer_cake_eval(f, f.center(i)) == fs.values[i]);

    GridFunction f2 = random_grid(rng, 2, 15, 0.3);
    GridFunction f2s = rearrange_grid(f2);
    for (std::size_t i = 0; i < f2.size(); ++i)
        CHECK(layer_cake_eval(f2, f2.center(i)) == f2s.values[i]);
}

TEST_CASE("equimeasurability, order, non-expansion, monotone limits, mass") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        const int dim = 1 + trial % 2;
        const int cells = dim == 1 ? 101 : 17;
        GridFunction f = random_grid(rng, dim, cells, 0.125);
        GridFunction fs = rearrange_grid(f);

        // same value multiset => equal counts above every threshold
        for (double t : f.values) {
            std::size_t cf = 0, cs = 0;
            for (double v : f.values) cf += v > t;
            for (double v : fs.values) cs += v > t;
            REQUIRE(cf == cs);
        }

        // order preservation for g <= f
        GridFunction g = f;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (auto& v : g.values) v *= u(rng);
        GridFunction gs = rearrange_grid(g);
        for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(gs.values[i] <= fs.values[i]);

        // sup-norm non-expansion for arbitrary pairs
        GridFunction p = random_grid(rng, dim, cells, 0.125);
        GridFunction ps = rearrange_grid(p);
        double d_in = 0.0, d_out = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            d_in = std::max(d_in, std::abs(f.values[i] - p.values[i]));
            d_out = std::max(d_out, std::abs(fs.values[i] - ps.values[i]));
        }
        REQUIRE(d_out <= d_in);

        // mass conservation
        REQUIRE(fs.sum() == doctest::Approx(f.sum()).epsilon(1e-13));
    }

    // monotone convergence: f_n = min(f, c_n) with c_n increasing
    GridFunction f = random_grid(rng, 1, 101, 0.1);
    GridFunction prev = rearrange_grid(f);
    for (auto& v : prev.values) v = 0.0;
    for (double c : {0.25, 0.5, 0.75, 1.0}) {
        GridFunction fn = f;
        for (auto& v : fn.values) v = std::min(v, c);
        GridFunction fns = rearrange_grid(fn);
        for (std::size_t i = 0; i < fn.size(); ++i) REQUIRE(fns.values[i] >= prev.values[i]);
        prev = fns;
    }
    GridFunction fstar = rearrange_grid(f);
    CHECK(prev.values == fstar.values);  // c=1 bounds the inputs here
}

TEST_CASE("symmetrize_domain") {
    auto d2 = symmetrize_domain(DomainSpec::box(2, Point{0, 0, 0}, Point{1, 1, 0}));
    CHECK(d2.kind == DomainSpec::Kind::Ball);
    CHECK(d2.ball_radius == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(norm(d2.ball_center, 2) == 0.0);

    auto d1 = symmetrize_domain(DomainSpec::ball(2, Point{3.0, -1.0, 0.0}, 0.7));
    CHECK(d1.ball_radius == doctest::Approx(0.7).epsilon(1e-14));

    auto du = symmetrize_domain(DomainSpec::disjoint_union(
        {DomainSpec::box(1, Point{0, 0, 0}, Point{1, 0, 0}),
         DomainSpec::box(1, Point{2, 0, 0}, Point{3, 0, 0})}));
    CHECK(du.ball_radius == doctest::Approx(1.0).epsilon(1e-14));

    // mask measure is h^d * count
    GridFunction m(2, 5, 0.5);
    m.values[0] = 1.0;
    m.values[7] = 1.0;
    auto dm = DomainSpec::grid_mask(m);
    CHECK(dm.measure() == doctest::Approx(2 * 0.25).epsilon(1e-14));
}

TEST_CASE("domain membership and bounding boxes") {
    auto b = DomainSpec::box(2, Point{-1, -0.5, 0}, Point{1, 0.5, 0});
    CHECK(b.contains(Point{0, 0, 0}));
    CHECK(!b.contains(Point{0, 0.6, 0}));
    CHECK(b.measure() == doctest::Approx(2.0).epsilon(1e-14));

    Point lo{}, hi{};
    auto u = DomainSpec::disjoint_union(
        {DomainSpec::ball(1, Point{-2, 0, 0}, 0.5), DomainSpec::ball(1, Point{2, 0, 0}, 0.5)});
    u.bounding_box(lo, hi);
    CHECK(lo[0] == doctest::Approx(-2.5));
    CHECK(hi[0] == doctest::Approx(2.5));
    CHECK(u.contains(Point{2.2, 0, 0}));
    CHECK(!u.contains(Point{0.0, 0, 0}));
}
