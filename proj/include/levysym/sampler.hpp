#pragma once

// Trajectory simulation of X_{n,t}: Gaussian part plus compound Poisson jumps
// built from truncated components. Alias-table sampling for grid densities,
// inverse radial CDF for isotropic catalog densities, rejection for the rest.

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <vector>

#include "levysym/characteristics.hpp"
#include "levysym/core.hpp"
#include "levysym/rng.hpp"

namespace levysym {

// Walker/Vose alias table over unnormalized weights; construction is a
// deterministic function of the weight vector.
class AliasTable {
  public:
    explicit AliasTable(const std::vector<double>& weights) {
        const std::size_t n = weights.size();
        if (n == 0) throw std::invalid_argument("alias table needs weights");
        double total = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0)) throw std::invalid_argument("alias weights must be >= 0");
            total += w;
        }
        if (total <= 0.0) throw std::invalid_argument("alias weights must not all vanish");
        prob_.assign(n, 0.0);
        alias_.assign(n, 0);
        std::vector<double> scaled(n);
        std::vector<std::size_t> small, large;
        for (std::size_t i = 0; i < n; ++i) {
            scaled[i] = weights[i] * n / total;
            (scaled[i] < 1.0 ? small : large).push_back(i);
        }
        while (!small.empty() && !large.empty()) {
            const std::size_t s = small.back(), l = large.back();
            small.pop_back();
            large.pop_back();
            prob_[s] = scaled[s];
            alias_[s] = l;
            scaled[l] -= 1.0 - scaled[s];
            (scaled[l] < 1.0 ? small : large).push_back(l);
        }
        for (std::size_t i : large) prob_[i] = 1.0;
        for (std::size_t i : small) prob_[i] = 1.0;
    }

    std::size_t sample(RngStream& rng) const {
        const double u = rng.uniform() * prob_.size();
        std::size_t idx = static_cast<std::size_t>(u);
        if (idx >= prob_.size()) idx = prob_.size() - 1;
        return (u - idx) < prob_[idx] ? idx : alias_[idx];
    }

    std::size_t size() const { return prob_.size(); }

  private:
    std::vector<double> prob_;
    std::vector<std::size_t> alias_;
};

// Draws from a normalized jump density.
class JumpSampler {
  public:
    explicit JumpSampler(const JumpDensity& density, double mass_tol = 1e-6)
        : density_(density) {
        const double mass = density_.total_mass();
        if (std::abs(mass - 1.0) > mass_tol)
            throw std::invalid_argument("jump sampler requires a normalized density");
        if (density_.kind == JumpKind::GridSampled) {
            const GridFunction& g = *density_.grid;
            std::vector<double> weights;
            cells_.clear();
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (g.values[i] <= 0.0) continue;
                if (density_.inner_cutoff > 0.0
                    && norm(g.center(i), g.dim) <= density_.inner_cutoff)
                    continue;
                cells_.push_back(i);
                weights.push_back(g.values[i]);
            }
            if (cells_.empty()) throw std::invalid_argument("grid density has no mass");
            alias_.emplace(weights);
        }
        if (density_.kind == JumpKind::GaussianMixture) {
            double acc = 0.0;
            for (const auto& c : density_.components) acc += c.weight;
            component_cdf_.clear();
            double run = 0.0;
            for (const auto& c : density_.components) {
                run += c.weight / acc;
                component_cdf_.push_back(run);
            }
        }
    }

    Point sample(RngStream& rng) const {
        switch (density_.kind) {
            case JumpKind::PowerLaw: return sample_power_law(rng);
            case JumpKind::UniformBox: return sample_uniform_box(rng);
            case JumpKind::GaussianMixture: return sample_mixture(rng);
            case JumpKind::GridSampled: return sample_grid(rng);
        }
        throw std::logic_error("unreachable");
    }

  private:
    Point sample_power_law(RngStream& rng) const {
        const int d = density_.dim;
        const double lo = density_.effective_r_min(), hi = density_.support_radius;
        const double p = d - 1 - density_.alpha;
        const double u = rng.uniform();
        double r;
        if (std::abs(p + 1.0) < 1e-14) {
            r = lo * std::pow(hi / lo, u);
        } else {
            const double q = p + 1.0;
            const double alo = std::pow(lo, q), ahi = std::pow(hi, q);
            r = std::pow(alo + u * (ahi - alo), 1.0 / q);
        }
        return scale(random_direction(rng, d), r, d);
    }

    Point sample_uniform_box(RngStream& rng) const {
        for (int tries = 0; tries < 100000; ++tries) {
            Point y{0.0, 0.0, 0.0};
            for (int a = 0; a < density_.dim; ++a) {
                y[a] = density_.box_lower[a]
                     + rng.uniform() * (density_.box_upper[a] - density_.box_lower[a]);
            }
            const double s = norm(y, density_.dim);
            if (s > density_.inner_cutoff && s <= density_.support_radius) return y;
        }
        throw std::runtime_error("uniform-box rejection sampling stalled");
    }

    Point sample_mixture(RngStream& rng) const {
        for (int tries = 0; tries < 100000; ++tries) {
            const double u = rng.uniform();
            std::size_t ci = 0;
            while (ci + 1 < component_cdf_.size() && u > component_cdf_[ci]) ++ci;
            const auto& c = density_.components[ci];
            Point z{0.0, 0.0, 0.0};
            for (int a = 0; a < density_.dim; ++a) z[a] = rng.normal();
            const Point y = add(c.mean, c.cov_sqrt.apply(z), density_.dim);
            const double s = norm(y, density_.dim);
            if (s > density_.inner_cutoff && s <= density_.support_radius) return y;
        }
        throw std::runtime_error("mixture rejection sampling stalled");
    }

    Point sample_grid(RngStream& rng) const {
        const GridFunction& g = *density_.grid;
        const std::size_t cell = cells_[alias_->sample(rng)];
        Point y = g.center(cell);
        for (int a = 0; a < g.dim; ++a) y[a] += g.h * (rng.uniform() - 0.5);
        return y;
    }

    static Point random_direction(RngStream& rng, int dim) {
        switch (dim) {
            case 1: return Point{rng.uniform() < 0.5 ? -1.0 : 1.0, 0.0, 0.0};
            case 2: {
                const double a = 2.0 * M_PI * rng.uniform();
                return Point{std::cos(a), std::sin(a), 0.0};
            }
            default: {
                const double z = 2.0 * rng.uniform() - 1.0;
                const double a = 2.0 * M_PI * rng.uniform();
                const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
                return Point{s * std::cos(a), s * std::sin(a), z};
            }
        }
    }

    JumpDensity density_;
    std::optional<AliasTable> alias_;
    std::vector<std::size_t> cells_;
    std::vector<double> component_cdf_;
};

// One increment of X_{n,t}: N(b_n dt, A_n dt) plus Poisson(c_n dt) jumps.
class IncrementSampler {
  public:
    explicit IncrementSampler(const ApproxComponents& ac) : ac_(ac) {
        if (!ac.degenerate_compound) jumps_.emplace(*ac.normalized_density);
    }

    const ApproxComponents& components() const { return ac_; }
    int dim() const { return ac_.dim; }

    Point sample_increment(double dt, PathStreams& st) const {
        if (dt < 0.0) throw std::invalid_argument("dt must be >= 0");
        Point x{0.0, 0.0, 0.0};
        if (dt == 0.0) return x;
        const double sd = std::sqrt(dt);
        Point z{0.0, 0.0, 0.0};
        for (int a = 0; a < ac_.dim; ++a) z[a] = st.gauss.normal();
        const Point gz = ac_.cov_sqrt.apply(z);
        for (int a = 0; a < ac_.dim; ++a) x[a] = ac_.drift_n[a] * dt + sd * gz[a];
        if (jumps_) {
            const long k = st.counts.poisson(ac_.c_n * dt);
            for (long i = 0; i < k; ++i) {
                const Point y = jumps_->sample(st.jumps);
                for (int a = 0; a < ac_.dim; ++a) x[a] += y[a];
            }
        }
        return x;
    }

  private:
    ApproxComponents ac_;
    std::optional<JumpSampler> jumps_;
};

struct PathGrid {
    int dim = 1;
    Point start{0.0, 0.0, 0.0};
    std::vector<double> times;      // increasing, starts at 0
    std::vector<double> positions;  // row-major, times.size() * dim

    Point at(std::size_t i) const {
        Point p{0.0, 0.0, 0.0};
        for (int a = 0; a < dim; ++a) p[a] = positions[i * dim + a];
        return p;
    }
};

struct SamplerConfig {
    int truncation_n = 64;
    double epsilon_n = -1.0;  // < 0: default schedule (1/n when A is singular)
    std::uint64_t num_paths = 100000;
    std::uint64_t seed = 0;
    double horizon = 1.0;  // T
    int steps = 128;       // m
    int workers = 0;       // 0: hardware concurrency
};

inline PathGrid sample_path(const IncrementSampler& inc, const Point& start,
                            const std::vector<double>& times, std::uint64_t seed,
                            std::uint64_t path_index) {
    if (times.empty() || times.front() != 0.0)
        throw std::invalid_argument("time grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] >= times[i - 1]))
            throw std::invalid_argument("time grid must be nondecreasing");
    PathStreams st(seed, path_index);
    PathGrid path;
    path.dim = inc.dim();
    path.start = start;
    path.times = times;
    path.positions.resize(times.size() * inc.dim());
    Point pos = start;
    for (int a = 0; a < inc.dim(); ++a) path.positions[a] = pos[a];
    for (std::size_t i = 1; i < times.size(); ++i) {
        const Point dx = inc.sample_increment(times[i] - times[i - 1], st);
        for (int a = 0; a < inc.dim(); ++a) {
            pos[a] += dx[a];
            path.positions[i * inc.dim() + a] = pos[a];
        }
    }
    return path;
}

// Binary path dump: per record, path index (u64 LE), number of grid times
// (u64 LE), times (f64 LE), then positions (f64 LE, row-major).
inline void write_path_binary(std::ostream& os, std::uint64_t path_index, const PathGrid& p) {
    auto put_u64 = [&](std::uint64_t v) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
        os.write(reinterpret_cast<const char*>(b), 8);
    };
    auto put_f64 = [&](double d) {
        std::uint64_t v;
        std::memcpy(&v, &d, 8);
        put_u64(v);
    };
    put_u64(path_index);
    put_u64(p.times.size());
    for (double t : p.times) put_f64(t);
    for (double x : p.positions) put_f64(x);
}

inline void write_path_csv_header(std::ostream& os, int dim) {
    os << "path,t";
    for (int a = 0; a < dim; ++a) os << ",x" << a + 1;
    os << "\n";
}

inline void write_path_csv(std::ostream& os, std::uint64_t path_index, const PathGrid& p) {
    os.precision(17);
    for (std::size_t i = 0; i < p.times.size(); ++i) {
        os << path_index << "," << p.times[i];
        for (int a = 0; a < p.dim; ++a) os << "," << p.positions[i * p.dim + a];
        os << "\n";
    }
}

}  // namespace levysym
