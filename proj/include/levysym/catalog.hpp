#pragma once

// Named scenario catalog: concrete triples, domain pairs, starts, horizons
// and observables used by the standard verification suite.

#include <stdexcept>
#include <string>
#include <vector>

#include "levysym/characteristics.hpp"
#include "levysym/domain.hpp"
#include "levysym/functionals.hpp"

namespace levysym {

struct Scenario {
    std::string name;
    LevyTriple triple;

    DomainSpec domain;       // asymmetric domain for the plain side
    Point start{0, 0, 0};    // off-center start inside the domain

    // horizons tuned so survival stays resolvable at 1e5 paths
    double horizon_functional = 0.5;   // thm11 / survival / feynman-kac / heat content
    double horizon_exit = 2.0;         // exit moments
    std::vector<double> horizons_lambda1;
    double horizon_torsion = 2.0;

    DomainSpec observe_region;         // indicator region for f_1 and the potential well
    double well_depth = 2.0;

    std::vector<Point> frequencies;    // characteristic-function calibration points
};

inline Scenario make_scenario(const std::string& name) {
    Scenario s{name,
               LevyTriple::make(1, Point{0, 0, 0}, Mat::identity(1)),
               DomainSpec::box(1, Point{-1, 0, 0}, Point{1, 0, 0}),
               Point{0, 0, 0},
               0.5,
               2.0,
               {},
               2.0,
               DomainSpec::box(1, Point{0, 0, 0}, Point{1, 0, 0}),
               2.0,
               {}};

    auto freqs_1d = [](std::initializer_list<double> xs) {
        std::vector<Point> f;
        for (double x : xs) f.push_back(Point{x, 0.0, 0.0});
        return f;
    };

    if (name == "gaussian-anisotropic-2d") {
        s.triple = LevyTriple::make(2, Point{1.0, 0.0, 0.0}, Mat::diag({1.0, 4.0}));
        s.domain = DomainSpec::box(2, Point{-2.0, -0.75, 0}, Point{1.0, 0.75, 0});
        s.start = Point{-0.8, 0.3, 0};
        s.horizon_functional = 0.25;
        s.horizon_exit = 0.8;
        s.horizons_lambda1 = {0.2, 0.3, 0.4, 0.5};
        s.horizon_torsion = 1.0;
        s.observe_region = DomainSpec::box(2, Point{-1.2, -0.5, 0}, Point{-0.2, 0.3, 0});
        s.frequencies = {Point{0.5, 0, 0}, Point{0, 0.25, 0}, Point{1, 0.25, 0},
                         Point{-0.5, 0.5, 0}, Point{1.5, 0, 0}, Point{0.25, -0.5, 0},
                         Point{2, 0.25, 0}, Point{0.75, 0.75, 0}};
    } else if (name == "cauchy-truncated-1d") {
        auto phi = JumpDensity::power_law(1, 2.0, 0.0, 1.0, 1.0);
        s.triple = LevyTriple::make(1, Point{0.8, 0, 0}, Mat::zero(1), phi);
        s.domain = DomainSpec::box(1, Point{-0.4, 0, 0}, Point{1.6, 0, 0});
        s.start = Point{0.6, 0, 0};
        s.horizon_functional = 0.4;
        s.horizon_exit = 2.0;
        s.horizons_lambda1 = {0.8, 1.2, 1.6, 2.0};
        s.horizon_torsion = 2.0;
        s.observe_region = DomainSpec::box(1, Point{0.1, 0, 0}, Point{0.9, 0, 0});
        s.frequencies = freqs_1d({0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0});
    } else if (name == "uniform-jumps-asymmetric-1d") {
        auto phi = JumpDensity::uniform_box(1, Point{0.2, 0, 0}, Point{1.2, 0, 0}, 1.5);
        s.triple = LevyTriple::make(1, Point{-0.2, 0, 0}, Mat::diag({0.25}), phi);
        s.domain = DomainSpec::box(1, Point{-0.4, 0, 0}, Point{1.6, 0, 0});
        s.start = Point{0.6, 0, 0};
        s.horizon_functional = 0.6;
        s.horizon_exit = 3.0;
        s.horizons_lambda1 = {1.0, 1.5, 2.0, 2.5};
        s.horizon_torsion = 3.0;
        s.observe_region = DomainSpec::box(1, Point{0.1, 0, 0}, Point{0.9, 0, 0});
        s.frequencies = freqs_1d({0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0});
    } else if (name == "mixed-gauss-jump-2d") {
        GaussComponent c1;
        c1.weight = 0.8;
        c1.mean = Point{0.6, 0.0, 0.0};
        c1.cov = Mat::diag({0.04, 0.04});
        GaussComponent c2;
        c2.weight = 0.6;
        c2.mean = Point{-0.3, 0.5, 0.0};
        c2.cov = Mat(2);
        c2.cov(0, 0) = 0.09;
        c2.cov(0, 1) = c2.cov(1, 0) = 0.02;
        c2.cov(1, 1) = 0.05;
        auto phi = JumpDensity::gaussian_mixture(2, {c1, c2}, 2.5);
        Mat a(2);
        a(0, 0) = 0.8;
        a(0, 1) = a(1, 0) = 0.3;
        a(1, 1) = 0.5;
        s.triple = LevyTriple::make(2, Point{0.5, -0.25, 0}, a, phi);
        s.domain = DomainSpec::box(2, Point{-2.0, -0.75, 0}, Point{1.0, 0.75, 0});
        s.start = Point{-0.8, 0.3, 0};
        s.horizon_functional = 0.4;
        s.horizon_exit = 1.5;
        s.horizons_lambda1 = {0.5, 0.75, 1.0, 1.25};
        s.horizon_torsion = 1.5;
        s.observe_region = DomainSpec::box(2, Point{-1.2, -0.5, 0}, Point{-0.2, 0.3, 0});
        s.frequencies = {Point{0.5, 0, 0}, Point{0, 0.5, 0}, Point{0.75, 0.5, 0},
                         Point{-0.5, 0.75, 0}, Point{1.25, 0, 0}, Point{0.5, -1, 0},
                         Point{1.75, 0.5, 0}, Point{1, 1, 0}};
    } else {
        throw std::invalid_argument("unknown scenario: " + name);
    }
    return s;
}

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{
        "gaussian-anisotropic-2d", "cauchy-truncated-1d", "uniform-jumps-asymmetric-1d",
        "mixed-gauss-jump-2d"};
    return names;
}

// Grid spec used whenever a scenario density needs the grid rearrangement.
inline RearrangeGridSpec scenario_grid_spec(const Scenario& s) {
    RearrangeGridSpec gs;
    gs.cells_per_axis = s.triple.dim == 1 ? 401 : 101;
    return gs;
}

}  // namespace levysym
