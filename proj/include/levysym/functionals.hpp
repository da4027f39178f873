#pragma once

// Monte Carlo estimators for the product functionals, grid-time survival,
// Feynman-Kac weights, exit moments, lambda_1 decay rates, heat content and
// torsional rigidity, plus the inequality verdict between paired estimates.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "levysym/characteristics.hpp"
#include "levysym/core.hpp"
#include "levysym/domain.hpp"
#include "levysym/rearrange.hpp"
#include "levysym/rng.hpp"
#include "levysym/sampler.hpp"

namespace levysym {

// --- report type -------------------------------------------------------------

struct Fingerprint {
    int truncation_n = 0;
    double epsilon_n = 0.0;
    int steps = 0;
    double horizon = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t num_paths = 0;
};

struct EstimateReport {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t num_paths = 0;
    double ci_lo = 0.0, ci_hi = 0.0;
    Fingerprint fingerprint;
    double censored_fraction = 0.0;
    bool horizon_dominated = false;
    bool overflow = false;
};

enum class Verdict { Holds, Inconclusive, Violated };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::Violated: return "violated";
    }
    return "?";
}

// lhs <= rhs within statistical resolution?
inline Verdict compare_reports(const EstimateReport& lhs, const EstimateReport& rhs) {
    const double joint = std::sqrt(lhs.std_error * lhs.std_error
                                   + rhs.std_error * rhs.std_error);
    if (lhs.mean <= rhs.mean + 2.0 * joint) return Verdict::Holds;
    if (lhs.mean > rhs.mean + 4.0 * joint) return Verdict::Violated;
    return Verdict::Inconclusive;
}

// --- catalog functions and potentials ------------------------------------------

// Nonnegative observable with a computable symmetric decreasing rearrangement.
struct CatalogFunction {
    enum class Kind { One, Constant, Indicator, RadialTriangle, RadialGauss, Grid };
    Kind kind = Kind::One;
    double param = 1.0;                       // constant value / radius / sigma
    std::optional<DomainSpec> region;         // Indicator
    std::shared_ptr<GridFunction> grid;       // Grid

    static CatalogFunction one() { return {}; }
    static CatalogFunction constant(double c) {
        if (c < 0.0) throw std::invalid_argument("catalog functions must be nonnegative");
        CatalogFunction f;
        f.kind = Kind::Constant;
        f.param = c;
        return f;
    }
    static CatalogFunction indicator(DomainSpec d) {
        CatalogFunction f;
        f.kind = Kind::Indicator;
        f.region = std::move(d);
        return f;
    }
    static CatalogFunction radial_triangle(double radius) {
        CatalogFunction f;
        f.kind = Kind::RadialTriangle;
        f.param = radius;
        return f;
    }
    static CatalogFunction radial_gauss(double sigma) {
        CatalogFunction f;
        f.kind = Kind::RadialGauss;
        f.param = sigma;
        return f;
    }
    static CatalogFunction grid_function(GridFunction g) {
        g.check_values();
        CatalogFunction f;
        f.kind = Kind::Grid;
        f.grid = std::make_shared<GridFunction>(std::move(g));
        return f;
    }

    double value(const Point& x, int dim) const {
        switch (kind) {
            case Kind::One: return 1.0;
            case Kind::Constant: return param;
            case Kind::Indicator: return region->contains(x) ? 1.0 : 0.0;
            case Kind::RadialTriangle: return std::max(0.0, 1.0 - norm(x, dim) / param);
            case Kind::RadialGauss: return std::exp(-0.5 * norm2(x, dim) / (param * param));
            case Kind::Grid: return grid->value_at(x);
        }
        return 0.0;
    }

    CatalogFunction symmetrized() const {
        switch (kind) {
            case Kind::One:
            case Kind::Constant:
            case Kind::RadialTriangle:
            case Kind::RadialGauss:
                return *this;  // already radial nonincreasing
            case Kind::Indicator:
                return indicator(symmetrize_domain(*region));
            case Kind::Grid:
                return grid_function(rearrange_grid(*grid));
        }
        return *this;
    }
};

// Nonnegative potential V. Its symmetrization V* is the symmetric increasing
// rearrangement, fixed by [exp(-sV)]* = exp(-sV*): wells move to the origin,
// compactly supported bumps rearrange to zero, radial increasing V stays put.
struct Potential {
    enum class Kind { Zero, Constant, Well, Quadratic, Bump };
    Kind kind = Kind::Zero;
    double level = 0.0;                 // constant / well depth / bump height / quad scale
    std::optional<DomainSpec> region;   // Well (V = 0 inside), Bump (V = level inside)

    static Potential zero() { return {}; }
    static Potential constant(double c) {
        if (c < 0.0) throw std::invalid_argument("potential must be nonnegative");
        Potential v;
        v.kind = Kind::Constant;
        v.level = c;
        return v;
    }
    static Potential well(DomainSpec inside, double outside_level) {
        if (outside_level < 0.0) throw std::invalid_argument("potential must be nonnegative");
        Potential v;
        v.kind = Kind::Well;
        v.level = outside_level;
        v.region = std::move(inside);
        return v;
    }
    static Potential quadratic(double scale) {
        if (scale < 0.0) throw std::invalid_argument("potential must be nonnegative");
        Potential v;
        v.kind = Kind::Quadratic;
        v.level = scale;
        return v;
    }
    static Potential bump(DomainSpec inside, double height) {
        if (height < 0.0) throw std::invalid_argument("potential must be nonnegative");
        Potential v;
        v.kind = Kind::Bump;
        v.level = height;
        v.region = std::move(inside);
        return v;
    }

    double value(const Point& x, int dim) const {
        switch (kind) {
            case Kind::Zero: return 0.0;
            case Kind::Constant: return level;
            case Kind::Well: return region->contains(x) ? 0.0 : level;
            case Kind::Quadratic: return level * norm2(x, dim);
            case Kind::Bump: return region->contains(x) ? level : 0.0;
        }
        return 0.0;
    }

    bool is_zero() const { return kind == Kind::Zero || level == 0.0; }

    Potential symmetrized() const {
        switch (kind) {
            case Kind::Zero:
            case Kind::Constant:
            case Kind::Quadratic:
                return *this;
            case Kind::Well:
                return well(symmetrize_domain(*region), level);
            case Kind::Bump:
                return zero();  // increasing rearrangement of a bump vanishes a.e.
        }
        return *this;
    }
};

// Nonnegative increasing functions of the exit time.
struct ExitFunction {
    enum class Kind { One, Power, Bounded };
    Kind kind = Kind::Power;
    double p = 1.0;

    static ExitFunction one() {
        ExitFunction f;
        f.kind = Kind::One;
        return f;
    }
    static ExitFunction power(double exponent) {
        if (exponent <= 0.0) throw std::invalid_argument("power must be positive");
        ExitFunction f;
        f.kind = Kind::Power;
        f.p = exponent;
        return f;
    }
    static ExitFunction bounded() {
        ExitFunction f;
        f.kind = Kind::Bounded;
        return f;
    }

    double value(double tau) const {
        switch (kind) {
            case Kind::One: return 1.0;
            case Kind::Power: return std::pow(tau, p);
            case Kind::Bounded: return tau / (1.0 + tau);
        }
        return 1.0;
    }
};

// Product-functional specification: observation times with per-time functions
// and optional per-time domains, started at z.
struct FunctionalSpec {
    std::vector<double> times;              // nondecreasing, >= 0
    std::vector<CatalogFunction> functions; // same length
    std::vector<std::optional<DomainSpec>> domains;  // same length; nullopt = all space
    Point start{0.0, 0.0, 0.0};

    void check() const {
        if (times.empty()) throw std::invalid_argument("functional spec needs times");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (times[i] < times[i - 1])
                throw std::invalid_argument("observation times must be sorted");
        if (times.front() < 0.0) throw std::invalid_argument("times must be >= 0");
        if (functions.size() != times.size() || domains.size() != times.size())
            throw std::invalid_argument("functions/domains must match times");
    }

    FunctionalSpec symmetrized() const {
        FunctionalSpec s = *this;
        s.start = Point{0.0, 0.0, 0.0};
        for (auto& f : s.functions) f = f.symmetrized();
        for (auto& d : s.domains)
            if (d) d = symmetrize_domain(*d);
        return s;
    }
};

// --- Monte Carlo core -----------------------------------------------------------

struct PathValue {
    double value = 0.0;
    bool censored = false;
};

namespace detail {

inline ApproxComponents build_components(const LevyTriple& t, const SamplerConfig& cfg) {
    const double eps = cfg.epsilon_n >= 0.0 ? cfg.epsilon_n
                                            : default_epsilon(t, cfg.truncation_n);
    return truncate(t, cfg.truncation_n, eps);
}

inline Fingerprint make_fingerprint(const ApproxComponents& ac, const SamplerConfig& cfg) {
    Fingerprint fp;
    fp.truncation_n = ac.truncation_n;
    fp.epsilon_n = ac.epsilon_n;
    fp.steps = cfg.steps;
    fp.horizon = cfg.horizon;
    fp.seed = cfg.seed;
    fp.num_paths = cfg.num_paths;
    return fp;
}

// Blocked deterministic reduction of per-path values.
template <class PerPath>
EstimateReport run_paths(const SamplerConfig& cfg, const Fingerprint& fp, PerPath&& per_path) {
    struct Tally {
        double sum = 0.0, sumsq = 0.0;
        std::uint64_t censored = 0;
        bool overflow = false;
    };
    const std::uint64_t n = cfg.num_paths;
    if (n == 0) throw std::invalid_argument("num_paths must be >= 1");
    const std::uint64_t nblocks = (n + kMcBlockSize - 1) / kMcBlockSize;
    std::vector<Tally> tallies(nblocks);
    for_blocks(n, cfg.workers, [&](std::uint64_t bi, std::uint64_t b, std::uint64_t e) {
        Tally t;
        for (std::uint64_t i = b; i < e; ++i) {
            const PathValue v = per_path(i);
            if (!std::isfinite(v.value)) t.overflow = true;
            t.sum += v.value;
            t.sumsq += v.value * v.value;
            t.censored += v.censored;
        }
        tallies[bi] = t;
    });
    Tally total;
    for (const auto& t : tallies) {
        total.sum += t.sum;
        total.sumsq += t.sumsq;
        total.censored += t.censored;
        total.overflow = total.overflow || t.overflow;
    }
    EstimateReport rep;
    rep.num_paths = n;
    rep.fingerprint = fp;
    rep.mean = total.sum / static_cast<double>(n);
    const double var = std::max(0.0, total.sumsq / static_cast<double>(n) - rep.mean * rep.mean);
    rep.std_error = std::sqrt(var / static_cast<double>(n));
    rep.ci_lo = rep.mean - 1.96 * rep.std_error;
    rep.ci_hi = rep.mean + 1.96 * rep.std_error;
    rep.censored_fraction = static_cast<double>(total.censored) / static_cast<double>(n);
    rep.overflow = total.overflow;
    return rep;
}

}  // namespace detail

// --- estimators -------------------------------------------------------------------

// E^z [ prod_i f_i(X_{t_i}) 1_{D_i}(X_{t_i}) ].
inline EstimateReport estimate_product_functional(const LevyTriple& triple,
                                                  const FunctionalSpec& spec,
                                                  const SamplerConfig& cfg) {
    spec.check();
    const ApproxComponents ac = detail::build_components(triple, cfg);
    const IncrementSampler inc(ac);
    SamplerConfig c2 = cfg;
    c2.horizon = spec.times.back();
    c2.steps = static_cast<int>(spec.times.size());
    Fingerprint fp = detail::make_fingerprint(ac, c2);
    const int dim = triple.dim;
    return detail::run_paths(c2, fp, [&](std::uint64_t idx) {
        PathStreams st(cfg.seed, idx);
        Point pos = spec.start;
        double prev_t = 0.0;
        double prod = 1.0;
        for (std::size_t i = 0; i < spec.times.size(); ++i) {
            const Point dx = inc.sample_increment(spec.times[i] - prev_t, st);
            for (int a = 0; a < dim; ++a) pos[a] += dx[a];
            prev_t = spec.times[i];
            prod *= spec.functions[i].value(pos, dim);
            if (spec.domains[i] && !spec.domains[i]->contains(pos)) prod = 0.0;
            if (prod == 0.0) break;
        }
        return PathValue{prod, false};
    });
}

// P^z { X_{iT/m} in D, i = 1..m } — the grid-time survival proxy.
inline EstimateReport estimate_survival(const LevyTriple& triple, const Point& z,
                                        const DomainSpec& domain, double T,
                                        const SamplerConfig& cfg) {
    if (!domain.contains(z)) throw std::invalid_argument("start must lie inside the domain");
    if (T < 0.0) throw std::invalid_argument("horizon must be >= 0");
    const ApproxComponents ac = detail::build_components(triple, cfg);
    const IncrementSampler inc(ac);
    SamplerConfig c2 = cfg;
    c2.horizon = T;
    Fingerprint fp = detail::make_fingerprint(ac, c2);
    const int dim = triple.dim;
    const int m = cfg.steps;
    const double dt = T / m;
    return detail::run_paths(c2, fp, [&](std::uint64_t idx) {
        PathStreams st(cfg.seed, idx);
        Point pos = z;
        for (int i = 1; i <= m; ++i) {
            const Point dx = inc.sample_increment(dt, st);
            for (int a = 0; a < dim; ++a) pos[a] += dx[a];
            if (!domain.contains(pos)) return PathValue{0.0, false};
        }
        return PathValue{1.0, false};
    });
}

// E^z [ f(X_T) exp(-(T/m) sum_i V(X_{iT/m})) ; all grid points in D ].
inline EstimateReport estimate_feynman_kac(const LevyTriple& triple, const Point& z,
                                           const DomainSpec& domain, const Potential& V,
                                           const CatalogFunction& f, double T,
                                           const SamplerConfig& cfg) {
    if (!domain.contains(z)) throw std::invalid_argument("start must lie inside the domain");
    if (T < 0.0) throw std::invalid_argument("horizon must be >= 0");
    const ApproxComponents ac = detail::build_components(triple, cfg);
    const IncrementSampler inc(ac);
    SamplerConfig c2 = cfg;
    c2.horizon = T;
    Fingerprint fp = detail::make_fingerprint(ac, c2);
    const int dim = triple.dim;
    const int m = cfg.steps;
    const double dt = T / m;
    return detail::run_paths(c2, fp, [&](std::uint64_t idx) {
        PathStreams st(cfg.seed, idx);
        Point pos = z;
        double vsum = 0.0;
        for (int i = 1; i <= m; ++i) {
            const Point dx = inc.sample_increment(dt, st);
            for (int a = 0; a < dim; ++a) pos[a] += dx[a];
            if (!domain.contains(pos)) return PathValue{0.0, false};
            vsum += V.value(pos, dim);
        }
        const double weight = std::exp(-dt * vsum);
        return PathValue{f.value(pos, dim) * weight, false};
    });
}

// E^z [ psi(tau_D) ] with tau taken at grid times; survivors contribute psi(T).
inline EstimateReport estimate_exit_moment(const LevyTriple& triple, const Point& z,
                                           const DomainSpec& domain, const ExitFunction& psi,
                                           double T, const SamplerConfig& cfg) {
    if (!domain.contains(z)) throw std::invalid_argument("start must lie inside the domain");
    const ApproxComponents ac = detail::build_components(triple, cfg);
    const IncrementSampler inc(ac);
    SamplerConfig c2 = cfg;
    c2.horizon = T;
    Fingerprint fp = detail::make_fingerprint(ac, c2);
    const int dim = triple.dim;
    const int m = cfg.steps;
    const double dt = T / m;
    EstimateReport rep = detail::run_paths(c2, fp, [&](std::uint64_t idx) {
        PathStreams st(cfg.seed, idx);
        Point pos = z;
        for (int i = 1; i <= m; ++i) {
            const Point dx = inc.sample_increment(dt, st);
            for (int a = 0; a < dim; ++a) pos[a] += dx[a];
            if (!domain.contains(pos)) return PathValue{psi.value(i * dt), false};
        }
        return PathValue{psi.value(T), true};
    });
    rep.horizon_dominated = rep.censored_fraction > 0.10;
    return rep;
}

// Least-squares decay rate of -log E^z[FK; survival] over the usable horizons.
inline EstimateReport estimate_lambda1(const LevyTriple& triple, const Point& z,
                                       const DomainSpec& domain, const Potential& V,
                                       const std::vector<double>& horizons,
                                       const SamplerConfig& cfg) {
    if (horizons.size() < 3) throw std::invalid_argument("need at least 3 horizons");
    for (std::size_t i = 1; i < horizons.size(); ++i)
        if (horizons[i] <= horizons[i - 1])
            throw std::invalid_argument("horizons must be increasing");
    if (!domain.contains(z)) throw std::invalid_argument("start must lie inside the domain");
    const ApproxComponents ac = detail::build_components(triple, cfg);
    const IncrementSampler inc(ac);
    const int dim = triple.dim;
    const int m = cfg.steps;
    const double T = horizons.back();
    const double dt = T / m;
    // snap horizons to grid indices
    std::vector<int> snap(horizons.size());
    for (std::size_t k = 0; k < horizons.size(); ++k) {
        snap[k] = std::max(1, static_cast<int>(std::lround(horizons[k] / dt)));
        if (snap[k] > m) snap[k] = m;
    }
    const std::uint64_t n = cfg.num_paths;
    const std::uint64_t nblocks = (n + kMcBlockSize - 1) / kMcBlockSize;
    const std::size_t K = horizons.size();
    std::vector<std::vector<double>> sums(nblocks, std::vector<double>(K, 0.0));
    for_blocks(n, cfg.workers, [&](std::uint64_t bi, std::uint64_t b, std::uint64_t e) {
        auto& acc = sums[bi];
        for (std::uint64_t i = b; i < e; ++i) {
            PathStreams st(cfg.seed, i);
            Point pos = z;
            double vsum = 0.0;
            std::size_t k = 0;
            for (int step = 1; step <= m && k < K; ++step) {
                const Point dx = inc.sample_increment(dt, st);
                for (int a = 0; a < dim; ++a) pos[a] += dx[a];
                if (!domain.contains(pos)) break;
                vsum += V.value(pos, dim);
                while (k < K && snap[k] == step) {
                    acc[k] += std::exp(-dt * vsum);
                    ++k;
                }
            }
        }
    });
    std::vector<double> fk(K, 0.0);
    for (const auto& s : sums)
        for (std::size_t k = 0; k < K; ++k) fk[k] += s[k];
    for (auto& v : fk) v /= static_cast<double>(n);

    // usable horizons: enough surviving weight for a stable log
    std::vector<double> xs, ys;
    const double floor_mean = 100.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < K; ++k) {
        if (fk[k] >= floor_mean) {
            xs.push_back(snap[k] * dt);
            ys.push_back(-std::log(fk[k]));
        }
    }
    if (xs.size() < 3)
        throw std::runtime_error("fewer than 3 usable horizons for the decay fit");
    const std::size_t kk = xs.size();
    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < kk; ++i) xbar += xs[i], ybar += ys[i];
    xbar /= kk;
    ybar /= kk;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < kk; ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
    }
    const double slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < kk; ++i) {
        const double r = ys[i] - ybar - slope * (xs[i] - xbar);
        ssr += r * r;
    }
    EstimateReport rep;
    rep.mean = slope;
    rep.std_error = kk > 2 ? std::sqrt(ssr / (kk - 2) / sxx) : 0.0;
    rep.num_paths = n;
    rep.ci_lo = rep.mean - 1.96 * rep.std_error;
    rep.ci_hi = rep.mean + 1.96 * rep.std_error;
    SamplerConfig c2 = cfg;
    c2.horizon = T;
    rep.fingerprint = detail::make_fingerprint(ac, c2);
    return rep;
}

// Q_T(D) = |D| * mean over uniform starts of grid-time survival.
inline EstimateReport estimate_heat_content(const LevyTriple& triple, const DomainSpec& domain,
                                            double T, const SamplerConfig& cfg) {
    const ApproxComponents ac = detail::build_components(triple, cfg);
    const IncrementSampler inc(ac);
    SamplerConfig c2 = cfg;
    c2.horizon = T;
    Fingerprint fp = detail::make_fingerprint(ac, c2);
    const int dim = triple.dim;
    const int m = cfg.steps;
    const double dt = T / m;
    const double volume = domain.measure();
    Point lo{}, hi{};
    domain.bounding_box(lo, hi);
    EstimateReport rep = detail::run_paths(c2, fp, [&](std::uint64_t idx) {
        PathStreams st(cfg.seed, idx);
        Point pos{0.0, 0.0, 0.0};
        for (int tries = 0;; ++tries) {
            for (int a = 0; a < dim; ++a)
                pos[a] = lo[a] + st.misc.uniform() * (hi[a] - lo[a]);
            if (domain.contains(pos)) break;
            if (tries > 100000) throw std::runtime_error("uniform start sampling stalled");
        }
        for (int i = 1; i <= m; ++i) {
            const Point dx = inc.sample_increment(dt, st);
            for (int a = 0; a < dim; ++a) pos[a] += dx[a];
            if (!domain.contains(pos)) return PathValue{0.0, false};
        }
        return PathValue{1.0, false};
    });
    rep.mean *= volume;
    rep.std_error *= volume;
    rep.ci_lo = rep.mean - 1.96 * rep.std_error;
    rep.ci_hi = rep.mean + 1.96 * rep.std_error;
    return rep;
}

struct TorsionSpec {
    double t_max = 4.0;
    int points = 9;                 // log-spaced Q_t evaluations
    double t_min_fraction = 1.0 / 64.0;
};

// Trapezoid quadrature of Q_t over {0} + a log-spaced grid up to t_max. Each
// Q_t runs with its own sub-seed and m steps over [0, t]. The tail beyond
// t_max is flagged, never extrapolated.
inline EstimateReport estimate_torsional_rigidity(const LevyTriple& triple,
                                                  const DomainSpec& domain,
                                                  const TorsionSpec& ts,
                                                  const SamplerConfig& cfg) {
    if (ts.points < 2) throw std::invalid_argument("torsion grid needs >= 2 points");
    const double volume = domain.measure();
    std::vector<double> times{0.0};
    const double tmin = ts.t_max * ts.t_min_fraction;
    const double ratio = std::pow(ts.t_max / tmin, 1.0 / (ts.points - 1));
    for (int j = 0; j < ts.points; ++j) times.push_back(tmin * std::pow(ratio, j));
    times.back() = ts.t_max;

    std::vector<double> q(times.size(), volume), se(times.size(), 0.0);
    for (std::size_t j = 1; j < times.size(); ++j) {
        SamplerConfig cj = cfg;
        cj.seed = mix_seed(cfg.seed, j);
        const EstimateReport r = estimate_heat_content(triple, domain, times[j], cj);
        q[j] = r.mean;
        se[j] = r.std_error;
    }
    EstimateReport rep;
    double total = 0.0, var = 0.0;
    for (std::size_t j = 0; j + 1 < times.size(); ++j) {
        const double w = 0.5 * (times[j + 1] - times[j]);
        total += w * (q[j] + q[j + 1]);
    }
    for (std::size_t j = 1; j < times.size(); ++j) {
        const double w = 0.5 * ((j + 1 < times.size() ? times[j + 1] : times[j]) - times[j - 1]);
        var += w * w * se[j] * se[j];
    }
    rep.mean = total;
    rep.std_error = std::sqrt(var);
    rep.num_paths = cfg.num_paths;
    rep.ci_lo = rep.mean - 1.96 * rep.std_error;
    rep.ci_hi = rep.mean + 1.96 * rep.std_error;
    const ApproxComponents ac = detail::build_components(triple, cfg);
    SamplerConfig c2 = cfg;
    c2.horizon = ts.t_max;
    rep.fingerprint = detail::make_fingerprint(ac, c2);
    rep.horizon_dominated = q.back() >= 0.05 * volume;
    return rep;
}

}  // namespace levysym
