#include <doctest.h>

#include <cmath>
#include <complex>

#include "levysym/characteristics.hpp"

using namespace levysym;

namespace {

LevyTriple gaussian_2d(const Point& b, const Mat& a) { return LevyTriple::make(2, b, a); }

JumpDensity cauchy_like_1d() {
    // |y|^{-2} on 0 < |y| < 1
    return JumpDensity::power_law(1, 2.0, 0.0, 1.0, 1.0);
}

}  // namespace

TEST_CASE("validate accepts the standard 2-d Gaussian") {
    auto rep = validate(gaussian_2d(Point{0, 0, 0}, Mat::identity(2)));
    CHECK(rep.valid());
}

TEST_CASE("validate rejects a negative eigenvalue") {
    auto rep = validate(gaussian_2d(Point{0, 0, 0}, Mat::diag({1.0, -0.5})));
    CHECK(!rep.valid());
    CHECK(!rep.find("covariance-psd")->pass);
}

TEST_CASE("validate reports the integrability value") {
    auto phi = JumpDensity::power_law(1, 2.0, 1e-3, 1.0, 1.0);
    auto t = LevyTriple::make(1, Point{0, 0, 0}, Mat::zero(1), phi);
    auto rep = validate(t);
    CHECK(rep.valid());
    const double expect = 2.0 * (std::atan(1.0) - std::atan(1e-3));
    CHECK(rep.find("levy-integrability")->value == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("validate flags degenerate Gaussian without jumps") {
    auto rep = validate(gaussian_2d(Point{0, 0, 0}, Mat::diag({1.0, 0.0})));
    CHECK(!rep.valid());
    CHECK(!rep.find("degenerate-gaussian-unsupported")->pass);
}

TEST_CASE("validate asymmetric covariance") {
    Mat a(2);
    a(0, 0) = 1.0; a(0, 1) = 0.2;
    a(1, 0) = 0.1; a(1, 1) = 1.0;
    auto rep = validate(gaussian_2d(Point{0, 0, 0}, a));
    CHECK(!rep.find("covariance-symmetric")->pass);
}

TEST_CASE("symmetrize: anisotropic Gaussian with isotropic decreasing jumps") {
    auto phi = JumpDensity::power_law(2, 1.0, 0.0, 0.5, 2.0);
    auto t = LevyTriple::make(2, Point{3.0, -1.0, 0.0}, Mat::diag({1.0, 4.0}), phi);
    auto s = symmetrize_triple(t);
    CHECK(norm(s.drift, 2) == 0.0);
    CHECK(s.covariance(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s.covariance(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s.covariance(0, 1) == 0.0);
    REQUIRE(s.jump.has_value());
    CHECK(s.jump->kind == JumpKind::PowerLaw);
    CHECK(s.jump->alpha == 1.0);
}

TEST_CASE("symmetrize: standard Gaussian is a fixed point") {
    auto t = gaussian_2d(Point{0, 0, 0}, Mat::identity(2));
    auto s = symmetrize_triple(t);
    CHECK(s.covariance(0, 0) == 1.0);
    CHECK(s.covariance(1, 1) == 1.0);
    CHECK(s.covariance(0, 1) == 0.0);
    CHECK(!s.jump.has_value());
}

TEST_CASE("symmetrize: box indicator density becomes the equal-measure ball") {
    auto phi = JumpDensity::uniform_box(2, Point{0, 0, 0}, Point{1, 1, 0}, 1.0);
    auto t = LevyTriple::make(2, Point{0, 0, 0}, Mat::zero(2), phi);
    auto s = symmetrize_triple(t);
    CHECK(s.covariance.is_zero());
    REQUIRE(s.jump.has_value());
    CHECK(s.jump->kind == JumpKind::PowerLaw);
    CHECK(s.jump->alpha == 0.0);
    CHECK(s.jump->support_radius == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(s.jump->amplitude == 1.0);
}

TEST_CASE("symmetrize rejects degenerate nonzero covariance") {
    auto t = gaussian_2d(Point{0, 0, 0}, Mat::diag({1.0, 0.0}));
    CHECK_THROWS_AS(static_cast<void>(symmetrize_triple(t)), std::invalid_argument);
}

TEST_CASE("symmetrize is idempotent (grid route included)") {
    // non-isotropic mixture forces the grid route
    GaussComponent c1;
    c1.weight = 1.0;
    c1.mean = Point{0.5, 0.0, 0.0};
    c1.cov = Mat::diag({0.05, 0.1});
    auto phi = JumpDensity::gaussian_mixture(2, {c1}, 2.0);
    auto t = LevyTriple::make(2, Point{1.0, 0.0, 0.0}, Mat::diag({1.0, 2.0}), phi);
    RearrangeGridSpec gs;
    gs.cells_per_axis = 61;
    auto s1 = symmetrize_triple(t, gs);
    auto s2 = symmetrize_triple(s1, gs);
    CHECK(s2.covariance(0, 0) == doctest::Approx(s1.covariance(0, 0)).epsilon(1e-12));
    REQUIRE(s1.jump->kind == JumpKind::GridSampled);
    REQUIRE(s2.jump->kind == JumpKind::GridSampled);
    CHECK(s1.jump->grid->values == s2.jump->grid->values);  // fixed point, bit-exact
}

TEST_CASE("exponent: Brownian, drift, and symmetric uniform jumps") {
    auto brown = gaussian_2d(Point{0, 0, 0}, Mat::identity(2));
    const Point xi{0.7, -1.2, 0.0};
    auto psi = exponent(brown, xi);
    CHECK(psi.real() == doctest::Approx(0.5 * norm2(xi, 2)).epsilon(1e-12));
    CHECK(psi.imag() == doctest::Approx(0.0));

    auto drift = gaussian_2d(Point{1.0, 0.0, 0.0}, Mat::zero(2));
    auto psid = exponent(drift, Point{2.0, 0.5, 0.0});
    CHECK(psid.real() == doctest::Approx(0.0));
    CHECK(psid.imag() == doctest::Approx(-2.0).epsilon(1e-12));

    // phi = (1/2) 1_{[-1,1]}: Psi(2) = 1 - sin(2)/2
    auto phi = JumpDensity::uniform_box(1, Point{-1, 0, 0}, Point{1, 0, 0}, 0.5);
    auto t = LevyTriple::make(1, Point{0, 0, 0}, Mat::zero(1), phi);
    auto psij = exponent(t, Point{2.0, 0, 0});
    CHECK(psij.real() == doctest::Approx(1.0 - std::sin(2.0) / 2.0).epsilon(1e-9));
    CHECK(std::abs(psij.imag()) < 1e-9);
}

TEST_CASE("exponent_star: zero at zero, even, nonnegative") {
    auto phi = JumpDensity::uniform_box(1, Point{-1, 0, 0}, Point{1, 0, 0}, 0.5);
    auto t = LevyTriple::make(1, Point{0, 0, 0}, Mat::zero(1), phi);
    auto s = symmetrize_triple(t);
    CHECK(exponent_star(s, Point{0, 0, 0}) == doctest::Approx(0.0));
    CHECK(exponent_star(s, Point{2.0, 0, 0})
          == doctest::Approx(1.0 - std::sin(2.0) / 2.0).epsilon(1e-9));
    for (double x : {0.3, 1.1, 2.7, 5.0}) {
        const double plus = exponent_star(s, Point{x, 0, 0});
        const double minus = exponent_star(s, Point{-x, 0, 0});
        CHECK(plus == doctest::Approx(minus).epsilon(1e-12));
        CHECK(plus >= 0.0);
    }
}

TEST_CASE("exponent has nonnegative real part across kinds") {
    GaussComponent c1;
    c1.weight = 0.7;
    c1.mean = Point{0.6, 0.1, 0.0};
    c1.cov = Mat::diag({0.05, 0.08});
    auto mix = JumpDensity::gaussian_mixture(2, {c1}, 2.0);
    auto t = LevyTriple::make(2, Point{0.3, -0.4, 0.0}, Mat::diag({0.5, 1.5}), mix);
    for (double a : {0.2, 0.9, 1.7}) {
        for (double b : {-1.3, 0.4, 2.2}) {
            auto psi = exponent(t, Point{a, b, 0.0});
            CHECK(psi.real() >= -1e-9);
        }
    }
}

TEST_CASE("truncate: cutoff inactive when support avoids the ball") {
    auto phi = JumpDensity::power_law(1, 0.0, 1.0, 0.25, 3.0);  // uniform on 1<|y|<3
    auto t = LevyTriple::make(1, Point{0.7, 0, 0}, Mat::zero(1), phi);
    for (int n : {1, 4, 64}) {
        auto ac = truncate(t, n, 0.0);
        CHECK(ac.c_n == doctest::Approx(0.25 * 2.0 * 2.0).epsilon(1e-12));  // amp * 2 * length
        CHECK(ac.drift_n[0] == doctest::Approx(0.7).epsilon(1e-12));
    }
}

TEST_CASE("truncate: c_n = 2(n-1) for |y|^{-2} on (0,1)") {
    auto t = LevyTriple::make(1, Point{0, 0, 0}, Mat::zero(1), cauchy_like_1d());
    for (int n : {2, 4, 16, 64}) {
        auto ac = truncate(t, n, 1.0 / n);
        CHECK(ac.c_n == doctest::Approx(2.0 * (n - 1)).epsilon(1e-10));
        CHECK(ac.epsilon_n == 1.0 / n);
        CHECK(ac.covariance_n(0, 0) == doctest::Approx(1.0 / n));
        // symmetric density: ball moment cancels
        CHECK(ac.drift_n[0] == doctest::Approx(0.0));
        // normalized density integrates to 1
        CHECK(ac.normalized_density->total_mass() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("truncate: positive definite covariance needs no regularization") {
    auto t = gaussian_2d(Point{0, 0, 0}, Mat::diag({1.0, 4.0}));
    CHECK(default_epsilon(t, 64) == 0.0);
    auto ac = truncate(t, 64, 0.0);
    CHECK(ac.covariance_n(0, 0) == 1.0);
    CHECK(ac.covariance_n(1, 1) == 4.0);
    CHECK(ac.degenerate_compound);

    auto tz = LevyTriple::make(1, Point{0, 0, 0}, Mat::zero(1), cauchy_like_1d());
    CHECK(default_epsilon(tz, 64) == doctest::Approx(1.0 / 64));
}

TEST_CASE("truncate: no mass beyond cutoff flags degenerate compound") {
    auto phi = JumpDensity::uniform_box(1, Point{-0.1, 0, 0}, Point{0.1, 0, 0}, 1.0);
    auto t = LevyTriple::make(1, Point{0, 0, 0}, Mat::identity(1), phi);
    auto ac = truncate(t, 4, 0.0);  // cutoff 0.25 swallows the support
    CHECK(ac.degenerate_compound);
    CHECK(ac.c_n == 0.0);
}

TEST_CASE("triple JSON round trip") {
    auto phi = JumpDensity::uniform_box(1, Point{0.2, 0, 0}, Point{1.2, 0, 0}, 1.5);
    auto t = LevyTriple::make(1, Point{-0.2, 0, 0}, Mat::diag({0.25}), phi);
    auto j = triple_to_json(t);
    CHECK(j.at("dim") == 1);
    CHECK(j.at("jump").at("kind") == "uniform-box");
    auto t2 = triple_from_json(j);
    CHECK(t2.drift[0] == t.drift[0]);
    CHECK(t2.covariance(0, 0) == t.covariance(0, 0));
    CHECK(t2.jump->intensity == phi.intensity);

    GaussComponent c1;
    c1.weight = 0.8;
    c1.mean = Point{0.6, 0.0, 0.0};
    c1.cov = Mat::diag({0.04, 0.04});
    auto mix = JumpDensity::gaussian_mixture(2, {c1}, 2.5);
    auto tm = LevyTriple::make(2, Point{0.5, -0.25, 0.0}, Mat::diag({0.8, 0.5}), mix);
    auto jm = triple_to_json(tm);
    auto tm2 = triple_from_json(jm);
    REQUIRE(tm2.jump.has_value());
    CHECK(tm2.jump->components.size() == 1);
    CHECK(tm2.jump->components[0].weight == 0.8);

    // exponent agrees through the round trip
    auto psi1 = exponent(tm, Point{0.9, 0.4, 0.0});
    auto psi2 = exponent(tm2, Point{0.9, 0.4, 0.0});
    CHECK(std::abs(psi1 - psi2) < 1e-12);
}

TEST_CASE("grid-sampled density round trip and lattice exponent") {
    GridFunction g(1, 9, 0.25);
    for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = 0.1 * (i % 3);
    auto phi = JumpDensity::grid_sampled(g);
    auto t = LevyTriple::make(1, Point{0, 0, 0}, Mat::zero(1), phi);
    auto j = triple_to_json(t);
    auto t2 = triple_from_json(j);
    const Point xi{1.3, 0, 0};
    CHECK(std::abs(exponent(t, xi) - exponent(t2, xi)) == 0.0);

    // lattice CF integral matches brute-force cell quadrature
    auto jv = phi.cf_integral(xi);
    std::complex<double> brute(0.0, 0.0);
    const std::complex<double> iu(0.0, 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double c = g.center(i)[0];
        auto cell = integrate_interval<std::complex<double>>(
            [&](double y) { return 1.0 - std::exp(iu * xi[0] * y); }, c - 0.125, c + 0.125);
        brute += g.values[i] * cell;
    }
    CHECK(std::abs(jv - brute) < 1e-10);
}
