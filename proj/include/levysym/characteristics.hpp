#pragma once

// Characteristic triples (drift, covariance, jump density), their validation,
// symmetrization, characteristic exponents, and the truncated components
// (c_n, phi_n/c_n, A_n, b_n) feeding the compound-Poisson-plus-Gaussian sampler.

#include <complex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "levysym/core.hpp"
#include "levysym/grid.hpp"
#include "levysym/quadrature.hpp"
#include "levysym/rearrange.hpp"

#include <json.hpp>

namespace levysym {

inline constexpr double kMatrixSymTol = 1e-12;
inline constexpr double kEigenvalueTol = 1e-10;

enum class JumpKind { PowerLaw, UniformBox, GaussianMixture, GridSampled };

inline std::string jump_kind_name(JumpKind k) {
    switch (k) {
        case JumpKind::PowerLaw: return "isotropic-power-law-truncated";
        case JumpKind::UniformBox: return "uniform-box";
        case JumpKind::GaussianMixture: return "anisotropic-gaussian-mixture";
        case JumpKind::GridSampled: return "grid-sampled";
    }
    return "?";
}

struct GaussComponent {
    double weight = 1.0;
    Point mean{0.0, 0.0, 0.0};
    Mat cov;
    // cached at construction
    Mat cov_inv;
    Mat cov_sqrt;
    double norm_const = 0.0;
};

namespace detail {

// Exponent of a pure power: integral of s^p over [a, b].
inline double power_integral(double a, double b, double p) {
    if (b <= a) return 0.0;
    if (std::abs(p + 1.0) < 1e-14) return std::log(b / a);
    if (a == 0.0 && p + 1.0 <= 0.0) return INFINITY;
    return (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / (p + 1.0);
}

// Spherical average of exp(i xi . y) over |y| = s directions: cos, J0, sinc.
inline double radial_cf_kernel(int dim, double z) {
    switch (dim) {
        case 1: return std::cos(z);
        case 2: return std::cyl_bessel_j(0.0, std::abs(z));
        default: return std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
    }
}

// Volume of box ∩ ball(0, r), d <= 3, by chord integration.
inline double box_ball_overlap_volume(const Point& lo, const Point& hi, int dim, double r) {
    if (r <= 0.0) return 0.0;
    if (dim == 1) return std::max(0.0, std::min(hi[0], r) - std::max(lo[0], -r));
    QuadSpec spec;
    spec.rel_tol = 1e-9;
    spec.abs_tol = 1e-13;
    if (dim == 2) {
        const double a = std::max(lo[0], -r), b = std::min(hi[0], r);
        if (b <= a) return 0.0;
        auto chord = [&](double x) {
            const double s = std::sqrt(std::max(0.0, r * r - x * x));
            return std::max(0.0, std::min(hi[1], s) - std::max(lo[1], -s));
        };
        return integrate_interval<double>(chord, a, b, spec);
    }
    const Point plo{std::max(lo[0], -r), std::max(lo[1], -r), 0.0};
    const Point phi{std::min(hi[0], r), std::min(hi[1], r), 0.0};
    if (phi[0] <= plo[0] || phi[1] <= plo[1]) return 0.0;
    auto chord = [&](const Point& xy) {
        const double s2 = r * r - xy[0] * xy[0] - xy[1] * xy[1];
        if (s2 <= 0.0) return 0.0;
        const double s = std::sqrt(s2);
        return std::max(0.0, std::min(hi[2], s) - std::max(lo[2], -s));
    };
    return integrate_box<double>(chord, plo, phi, 2, spec);
}

// Component `axis` of ∫ y over box ∩ ball(0, r).
inline double box_ball_overlap_moment(const Point& lo, const Point& hi, int dim, double r,
                                      int axis) {
    if (r <= 0.0) return 0.0;
    QuadSpec spec;
    spec.rel_tol = 1e-9;
    spec.abs_tol = 1e-13;
    if (dim == 1) {
        const double a = std::max(lo[0], -r), b = std::min(hi[0], r);
        return b > a ? 0.5 * (b * b - a * a) : 0.0;
    }
    if (dim == 2) {
        const double a = std::max(lo[0], -r), b = std::min(hi[0], r);
        if (b <= a) return 0.0;
        auto f = [&](double x) {
            const double s = std::sqrt(std::max(0.0, r * r - x * x));
            const double yl = std::max(lo[1], -s), yh = std::min(hi[1], s);
            if (yh <= yl) return 0.0;
            return axis == 0 ? x * (yh - yl) : 0.5 * (yh * yh - yl * yl);
        };
        return integrate_interval<double>(f, a, b, spec);
    }
    const Point plo{std::max(lo[0], -r), std::max(lo[1], -r), 0.0};
    const Point phi{std::min(hi[0], r), std::min(hi[1], r), 0.0};
    if (phi[0] <= plo[0] || phi[1] <= plo[1]) return 0.0;
    auto f = [&](const Point& xy) {
        const double s2 = r * r - xy[0] * xy[0] - xy[1] * xy[1];
        if (s2 <= 0.0) return 0.0;
        const double s = std::sqrt(s2);
        const double zl = std::max(lo[2], -s), zh = std::min(hi[2], s);
        if (zh <= zl) return 0.0;
        if (axis == 0) return xy[0] * (zh - zl);
        if (axis == 1) return xy[1] * (zh - zl);
        return 0.5 * (zh * zh - zl * zl);
    };
    return integrate_box<double>(f, plo, phi, 2, spec);
}

// ∫ over box of e^{i xi . y}, closed form.
inline std::complex<double> box_cf_integral(const Point& lo, const Point& hi, int dim,
                                            const Point& xi) {
    std::complex<double> prod(1.0, 0.0);
    const std::complex<double> iu(0.0, 1.0);
    for (int a = 0; a < dim; ++a) {
        if (std::abs(xi[a]) < 1e-14) {
            prod *= hi[a] - lo[a];
        } else {
            prod *= (std::exp(iu * xi[a] * hi[a]) - std::exp(iu * xi[a] * lo[a])) / (iu * xi[a]);
        }
    }
    return prod;
}

// ∫ over one grid cell centered at c of e^{i xi . y}: separable sinc product.
inline std::complex<double> cell_cf_integral(const Point& c, double h, int dim,
                                             const Point& xi) {
    double factor = 1.0;
    for (int a = 0; a < dim; ++a) {
        factor *= std::abs(xi[a]) < 1e-14 ? h : 2.0 * std::sin(0.5 * xi[a] * h) / xi[a];
    }
    const std::complex<double> iu(0.0, 1.0);
    return factor * std::exp(iu * dot(xi, c, dim));
}

}  // namespace detail

// Jump measure density. All catalog kinds carry a finite declared support
// radius; inner_cutoff implements the small-jump truncation phi_n. Grid-kind
// truncation and ball membership are decided cellwise at cell centers so that
// quadrature, exponents and the sampler agree exactly on the lattice.
struct JumpDensity {
    JumpKind kind = JumpKind::PowerLaw;
    int dim = 1;
    double support_radius = 1.0;
    double inner_cutoff = 0.0;
    bool isotropic_decreasing = false;

    // power law: amplitude * |y|^{-alpha} on (max(r_min, inner_cutoff), support_radius]
    double alpha = 0.0, r_min = 0.0, amplitude = 0.0;
    // uniform box
    Point box_lower{0.0, 0.0, 0.0}, box_upper{0.0, 0.0, 0.0};
    double intensity = 0.0;
    // gaussian mixture
    std::vector<GaussComponent> components;
    // grid sampled
    std::shared_ptr<GridFunction> grid;

    static JumpDensity power_law(int dim, double alpha, double r_min, double amplitude,
                                 double support_radius) {
        JumpDensity d;
        d.kind = JumpKind::PowerLaw;
        d.dim = dim;
        d.alpha = alpha;
        d.r_min = r_min;
        d.amplitude = amplitude;
        d.support_radius = support_radius;
        d.isotropic_decreasing = (r_min == 0.0 && alpha >= 0.0);
        if (r_min < 0.0 || support_radius <= r_min)
            throw std::invalid_argument("power law radii must satisfy 0 <= r_min < support_radius");
        if (amplitude < 0.0) throw std::invalid_argument("power law amplitude must be >= 0");
        return d;
    }

    static JumpDensity uniform_box(int dim, const Point& lower, const Point& upper,
                                   double intensity) {
        JumpDensity d;
        d.kind = JumpKind::UniformBox;
        d.dim = dim;
        d.box_lower = lower;
        d.box_upper = upper;
        d.intensity = intensity;
        if (intensity < 0.0) throw std::invalid_argument("box intensity must be >= 0");
        double far2 = 0.0;
        for (int a = 0; a < dim; ++a) {
            if (!(upper[a] > lower[a])) throw std::invalid_argument("box must be nonempty");
            const double m = std::max(std::abs(lower[a]), std::abs(upper[a]));
            far2 += m * m;
        }
        d.support_radius = std::sqrt(far2);
        return d;
    }

    static JumpDensity gaussian_mixture(int dim, std::vector<GaussComponent> comps,
                                        double support_radius) {
        JumpDensity d;
        d.kind = JumpKind::GaussianMixture;
        d.dim = dim;
        d.support_radius = support_radius;
        if (comps.empty()) throw std::invalid_argument("mixture needs at least one component");
        for (auto& c : comps) {
            if (c.weight < 0.0) throw std::invalid_argument("mixture weight must be >= 0");
            c.cov_inv = inverse(c.cov);
            c.cov_sqrt = spectral_sqrt(c.cov);
            const double dc = det(c.cov);
            if (dc <= 0.0) throw std::invalid_argument("mixture covariance must be PD");
            c.norm_const = std::pow(2.0 * M_PI, -0.5 * dim) / std::sqrt(dc);
        }
        d.components = std::move(comps);
        return d;
    }

    static JumpDensity grid_sampled(GridFunction g) {
        g.check_shape();
        g.check_values();
        JumpDensity d;
        d.kind = JumpKind::GridSampled;
        d.dim = g.dim;
        d.support_radius = g.extent() * std::sqrt(static_cast<double>(g.dim));
        d.grid = std::make_shared<GridFunction>(std::move(g));
        return d;
    }

    double effective_r_min() const {
        return kind == JumpKind::PowerLaw ? std::max(r_min, inner_cutoff) : inner_cutoff;
    }

    double value(const Point& y) const {
        const double s = norm(y, dim);
        switch (kind) {
            case JumpKind::PowerLaw: {
                if (s <= effective_r_min() || s > support_radius) return 0.0;
                return amplitude * std::pow(s, -alpha);
            }
            case JumpKind::UniformBox: {
                if (s <= inner_cutoff || s > support_radius) return 0.0;
                for (int a = 0; a < dim; ++a)
                    if (y[a] <= box_lower[a] || y[a] >= box_upper[a]) return 0.0;
                return intensity;
            }
            case JumpKind::GaussianMixture: {
                if (s <= inner_cutoff || s > support_radius) return 0.0;
                double v = 0.0;
                for (const auto& c : components) {
                    const Point z = sub(y, c.mean, dim);
                    v += c.weight * c.norm_const * std::exp(-0.5 * quad_form(c.cov_inv, z));
                }
                return v;
            }
            case JumpKind::GridSampled: {
                Point center{0.0, 0.0, 0.0};
                std::size_t flat = 0;
                for (int a = 0; a < dim; ++a) {
                    const double t = y[a] / grid->h + grid->half_span();
                    const long k = std::lround(t);
                    if (k < 0 || k >= grid->cells_per_axis) return 0.0;
                    center[a] = (k - grid->half_span()) * grid->h;
                    flat = flat * grid->cells_per_axis + static_cast<std::size_t>(k);
                }
                if (inner_cutoff > 0.0 && norm(center, dim) <= inner_cutoff) return 0.0;
                return grid->values[flat];
            }
        }
        return 0.0;
    }

    // Copy with the small-jump truncation |y| <= cutoff removed.
    JumpDensity truncated(double cutoff) const {
        JumpDensity d = *this;
        d.inner_cutoff = std::max(inner_cutoff, cutoff);
        if (d.kind == JumpKind::PowerLaw && d.inner_cutoff > 0.0)
            d.isotropic_decreasing = false;
        return d;
    }

    // Copy with all values multiplied by factor.
    JumpDensity scaled(double factor) const {
        JumpDensity d = *this;
        switch (kind) {
            case JumpKind::PowerLaw: d.amplitude *= factor; break;
            case JumpKind::UniformBox: d.intensity *= factor; break;
            case JumpKind::GaussianMixture:
                for (auto& c : d.components) c.weight *= factor;
                break;
            case JumpKind::GridSampled: {
                auto g = std::make_shared<GridFunction>(*grid);
                for (auto& v : g->values) v *= factor;
                d.grid = std::move(g);
                break;
            }
        }
        return d;
    }

    // ∫ of phi over |y| <= r (respecting inner cutoff and support).
    double mass_in_ball(double r, const QuadSpec& spec = {}) const {
        switch (kind) {
            case JumpKind::PowerLaw:
                return amplitude * unit_sphere_area(dim)
                     * detail::power_integral(effective_r_min(),
                                              std::min(r, support_radius), dim - 1 - alpha);
            case JumpKind::UniformBox: {
                const double outer = detail::box_ball_overlap_volume(
                    box_lower, box_upper, dim, std::min(r, support_radius));
                const double inner = detail::box_ball_overlap_volume(
                    box_lower, box_upper, dim, inner_cutoff);
                return intensity * std::max(0.0, outer - inner);
            }
            case JumpKind::GaussianMixture:
                return integrate_shell<double>([&](const Point& y) { return value(y); }, dim,
                                               inner_cutoff, std::min(r, support_radius), spec);
            case JumpKind::GridSampled: {
                double s = 0.0;
                for (std::size_t i = 0; i < grid->size(); ++i) {
                    const double cr = norm(grid->center(i), dim);
                    if (cr <= r && (inner_cutoff == 0.0 || cr > inner_cutoff))
                        s += grid->values[i];
                }
                return s * grid->cell_volume();
            }
        }
        return 0.0;
    }

    double total_mass(const QuadSpec& spec = {}) const {
        return mass_in_ball(support_radius + 1.0, spec);
    }

    // ∫ y phi(y) dy over |y| <= r.
    Point first_moment_in_ball(double r, const QuadSpec& spec = {}) const {
        Point m{0.0, 0.0, 0.0};
        switch (kind) {
            case JumpKind::PowerLaw:
                return m;  // isotropic
            case JumpKind::UniformBox: {
                for (int a = 0; a < dim; ++a) {
                    const double outer = detail::box_ball_overlap_moment(
                        box_lower, box_upper, dim, std::min(r, support_radius), a);
                    const double inner = detail::box_ball_overlap_moment(
                        box_lower, box_upper, dim, inner_cutoff, a);
                    m[a] = intensity * (outer - inner);
                }
                return m;
            }
            case JumpKind::GaussianMixture: {
                for (int a = 0; a < dim; ++a) {
                    m[a] = integrate_shell<double>(
                        [&](const Point& y) { return y[a] * value(y); }, dim, inner_cutoff,
                        std::min(r, support_radius), spec);
                }
                return m;
            }
            case JumpKind::GridSampled: {
                for (std::size_t i = 0; i < grid->size(); ++i) {
                    const Point c = grid->center(i);
                    const double cr = norm(c, dim);
                    if (cr <= r && (inner_cutoff == 0.0 || cr > inner_cutoff))
                        for (int a = 0; a < dim; ++a) m[a] += c[a] * grid->values[i];
                }
                for (int a = 0; a < dim; ++a) m[a] *= grid->cell_volume();
                return m;
            }
        }
        return m;
    }

    // ∫ |y|^2/(1+|y|^2) phi(y) dy, the Levy-measure integrability value.
    double integrability_value(const QuadSpec& spec = {}) const {
        auto weight = [](double s2) { return s2 / (1.0 + s2); };
        switch (kind) {
            case JumpKind::PowerLaw: {
                auto profile = [&](double s) {
                    return weight(s * s) * amplitude * std::pow(s, -alpha);
                };
                return integrate_radial(profile, dim, effective_r_min(), support_radius, spec);
            }
            case JumpKind::UniformBox: {
                auto f = [&](const Point& y) { return weight(norm2(y, dim)) * value(y); };
                if (inner_cutoff == 0.0)
                    return integrate_box<double>(
                        [&](const Point& y) { return weight(norm2(y, dim)) * intensity; },
                        box_lower, box_upper, dim, spec);
                return integrate_box<double>(f, box_lower, box_upper, dim, spec);
            }
            case JumpKind::GaussianMixture:
                return integrate_shell<double>(
                    [&](const Point& y) { return weight(norm2(y, dim)) * value(y); }, dim,
                    inner_cutoff, support_radius, spec);
            case JumpKind::GridSampled: {
                double s = 0.0;
                for (std::size_t i = 0; i < grid->size(); ++i) {
                    const Point c = grid->center(i);
                    const double cr = norm(c, dim);
                    if (inner_cutoff == 0.0 || cr > inner_cutoff)
                        s += weight(cr * cr) * grid->values[i];
                }
                return s * grid->cell_volume();
            }
        }
        return 0.0;
    }

    // J(xi) = ∫ (1 - e^{i xi.y}) phi(y) dy over the (truncated) support.
    std::complex<double> cf_integral(const Point& xi, const QuadSpec& spec = {}) const {
        switch (kind) {
            case JumpKind::PowerLaw: {
                const double xin = norm(xi, dim);
                auto profile = [&](double s) {
                    return (1.0 - detail::radial_cf_kernel(dim, xin * s)) * amplitude
                         * std::pow(s, -alpha);
                };
                return {integrate_radial(profile, dim, effective_r_min(), support_radius, spec),
                        0.0};
            }
            case JumpKind::UniformBox: {
                double vol = 1.0;
                for (int a = 0; a < dim; ++a) vol *= box_upper[a] - box_lower[a];
                const double hole_vol = detail::box_ball_overlap_volume(box_lower, box_upper,
                                                                        dim, inner_cutoff);
                std::complex<double> cf_box = detail::box_cf_integral(box_lower, box_upper, dim, xi);
                std::complex<double> cf_hole(0.0, 0.0);
                if (inner_cutoff > 0.0 && hole_vol > 0.0) {
                    cf_hole = integrate_shell<std::complex<double>>(
                        [&](const Point& y) -> std::complex<double> {
                            for (int a = 0; a < dim; ++a)
                                if (y[a] <= box_lower[a] || y[a] >= box_upper[a]) return {0.0, 0.0};
                            const std::complex<double> iu(0.0, 1.0);
                            return std::exp(iu * dot(xi, y, dim));
                        },
                        dim, 0.0, inner_cutoff, coarse(spec));
                }
                return intensity * ((vol - hole_vol) - (cf_box - cf_hole));
            }
            case JumpKind::GaussianMixture: {
                const std::complex<double> iu(0.0, 1.0);
                return integrate_shell<std::complex<double>>(
                    [&](const Point& y) {
                        return (1.0 - std::exp(iu * dot(xi, y, dim))) * value(y);
                    },
                    dim, inner_cutoff, support_radius, spec);
            }
            case JumpKind::GridSampled: {
                std::complex<double> s(0.0, 0.0);
                const double cv = grid->cell_volume();
                for (std::size_t i = 0; i < grid->size(); ++i) {
                    const double v = grid->values[i];
                    if (v == 0.0) continue;
                    const Point c = grid->center(i);
                    if (inner_cutoff > 0.0 && norm(c, dim) <= inner_cutoff) continue;
                    s += v * (cv - detail::cell_cf_integral(c, grid->h, dim, xi));
                }
                return s;
            }
        }
        return {0.0, 0.0};
    }

    bool has_mass() const {
        switch (kind) {
            case JumpKind::PowerLaw: return amplitude > 0.0;
            case JumpKind::UniformBox: return intensity > 0.0;
            case JumpKind::GaussianMixture: {
                for (const auto& c : components)
                    if (c.weight > 0.0) return true;
                return false;
            }
            case JumpKind::GridSampled: return grid->sum() > 0.0;
        }
        return false;
    }

  private:
    static QuadSpec coarse(QuadSpec s) {
        s.rel_tol = std::max(s.rel_tol, 1e-5);
        s.max_panels = std::min(s.max_panels, 20000);
        return s;
    }
};

// --- the triple --------------------------------------------------------------

struct LevyTriple {
    int dim = 1;
    Point drift{0.0, 0.0, 0.0};
    Mat covariance;
    std::optional<JumpDensity> jump;

    static LevyTriple make(int dim, const Point& drift, const Mat& cov,
                           std::optional<JumpDensity> jump = std::nullopt) {
        LevyTriple t;
        t.dim = dim;
        t.drift = drift;
        t.covariance = cov;
        t.jump = std::move(jump);
        if (cov.n != dim) throw std::invalid_argument("covariance dimension mismatch");
        if (t.jump && t.jump->dim != dim)
            throw std::invalid_argument("jump density dimension mismatch");
        return t;
    }
};

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool valid() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const ValidationCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// Report-style validation; never throws on bad numerical input.
inline ValidationReport validate(const LevyTriple& t, const QuadSpec& spec = {}) {
    ValidationReport rep;

    ValidationCheck sym{"covariance-symmetric", true, 0.0, ""};
    for (int i = 0; i < t.dim; ++i)
        for (int j = i + 1; j < t.dim; ++j)
            sym.value = std::max(sym.value, std::abs(t.covariance(i, j) - t.covariance(j, i)));
    sym.pass = sym.value <= kMatrixSymTol;
    rep.checks.push_back(sym);

    const EigenDecomposition eig = sym_eigen(t.covariance);
    ValidationCheck psd{"covariance-psd", true, eig.values[0], ""};
    psd.pass = eig.values[0] >= -kEigenvalueTol;
    if (!psd.pass) psd.detail = "negative eigenvalue";
    rep.checks.push_back(psd);

    ValidationCheck nonneg{"jump-nonnegative", true, 0.0, ""};
    if (t.jump) {
        try {
            switch (t.jump->kind) {
                case JumpKind::PowerLaw: nonneg.pass = t.jump->amplitude >= 0.0; break;
                case JumpKind::UniformBox: nonneg.pass = t.jump->intensity >= 0.0; break;
                case JumpKind::GaussianMixture:
                    for (const auto& c : t.jump->components)
                        if (c.weight < 0.0) nonneg.pass = false;
                    break;
                case JumpKind::GridSampled:
                    for (double v : t.jump->grid->values)
                        if (!(v >= 0.0) || !std::isfinite(v)) nonneg.pass = false;
                    break;
            }
        } catch (const std::exception& e) {
            nonneg.pass = false;
            nonneg.detail = e.what();
        }
    }
    rep.checks.push_back(nonneg);

    ValidationCheck integ{"levy-integrability", true, 0.0, ""};
    if (t.jump) {
        try {
            integ.value = t.jump->integrability_value(spec);
            integ.pass = std::isfinite(integ.value);
        } catch (const QuadratureError& e) {
            integ.pass = false;
            integ.value = e.partial_value;
            integ.detail = "quadrature did not converge";
        } catch (const std::exception& e) {
            integ.pass = false;
            integ.detail = e.what();
        }
    }
    rep.checks.push_back(integ);

    // Degenerate nonzero Gaussian with no jump part is out of scope.
    const bool has_zero_eig = eig.values[0] < kEigenvalueTol && eig.values[0] >= -kEigenvalueTol;
    const bool has_pos_eig = eig.values[t.dim - 1] > kEigenvalueTol;
    const bool no_jumps = !t.jump || !t.jump->has_mass();
    ValidationCheck degen{"degenerate-gaussian-unsupported", true, 0.0, ""};
    if (has_zero_eig && has_pos_eig && no_jumps) {
        degen.pass = false;
        degen.detail = "degenerate nonzero covariance with zero jump density";
    }
    rep.checks.push_back(degen);

    return rep;
}

// --- symmetrization -----------------------------------------------------------

struct RearrangeGridSpec {
    int cells_per_axis = 101;
    double h = 0.0;  // 0: derive from the density support
};

// phi* for a density: exact for isotropic decreasing profiles and uniform
// boxes, grid rearrangement otherwise.
inline JumpDensity symmetrize_density(const JumpDensity& phi, RearrangeGridSpec gs = {}) {
    if (phi.isotropic_decreasing && phi.inner_cutoff == 0.0) return phi;
    if (phi.kind == JumpKind::UniformBox && phi.inner_cutoff == 0.0) {
        double vol = 1.0;
        for (int a = 0; a < phi.dim; ++a) vol *= phi.box_upper[a] - phi.box_lower[a];
        const double r = ball_radius_for_volume(vol, phi.dim);
        JumpDensity star = JumpDensity::power_law(phi.dim, 0.0, 0.0, phi.intensity, r);
        return star;
    }
    if (phi.kind == JumpKind::GridSampled && phi.inner_cutoff == 0.0) {
        GridFunction g = rearrange_grid(*phi.grid);
        JumpDensity star = JumpDensity::grid_sampled(std::move(g));
        star.isotropic_decreasing = true;
        return star;
    }
    if (gs.h <= 0.0) gs.h = 2.0 * phi.support_radius / (gs.cells_per_axis - 1);
    GridFunction g = GridFunction::sample(phi.dim, gs.cells_per_axis, gs.h,
                                          [&](const Point& y) { return phi.value(y); });
    g = rearrange_grid(g);
    JumpDensity star = JumpDensity::grid_sampled(std::move(g));
    star.isotropic_decreasing = true;
    return star;
}

// (0, (det A)^{1/d} I, phi*). Requires A zero or strictly positive definite.
inline LevyTriple symmetrize_triple(const LevyTriple& t, RearrangeGridSpec gs = {}) {
    Mat astar(t.dim);
    if (!t.covariance.is_zero(0.0)) {
        const EigenDecomposition eig = sym_eigen(t.covariance);
        if (eig.values[0] <= kEigenvalueTol)
            throw std::invalid_argument(
                "degenerate nonzero covariance is unsupported for symmetrization");
        const double a = t.dim == 1 ? det(t.covariance)
                                    : std::pow(det(t.covariance), 1.0 / t.dim);
        for (int i = 0; i < t.dim; ++i) astar(i, i) = a;
    }
    LevyTriple star;
    star.dim = t.dim;
    star.drift = Point{0.0, 0.0, 0.0};
    star.covariance = astar;
    if (t.jump) star.jump = symmetrize_density(*t.jump, gs);
    return star;
}

// --- characteristic exponents --------------------------------------------------

// Psi(xi) = -i<b,xi> + (1/2)<A xi, xi> + ∫ [1 + i<xi,y> 1_B - e^{i xi.y}] phi(y) dy.
inline std::complex<double> exponent(const LevyTriple& t, const Point& xi,
                                     const QuadSpec& spec = {}) {
    std::complex<double> psi(0.5 * quad_form(t.covariance, xi), -dot(t.drift, xi, t.dim));
    if (t.jump && t.jump->has_mass()) {
        psi += t.jump->cf_integral(xi, spec);
        const Point mb = t.jump->first_moment_in_ball(1.0, spec);
        psi += std::complex<double>(0.0, dot(xi, mb, t.dim));
    }
    return psi;
}

// Psi*(xi) = (1/2)<A* xi, xi> + ∫ (1 - cos(xi.y)) phi*(y) dy; real and >= 0.
inline double exponent_star(const LevyTriple& star, const Point& xi,
                            const QuadSpec& spec = {}) {
    double psi = 0.5 * quad_form(star.covariance, xi);
    if (star.jump && star.jump->has_mass()) psi += star.jump->cf_integral(xi, spec).real();
    return psi;
}

// --- truncated approximation (compound Poisson + Gaussian) ----------------------

struct ApproxComponents {
    int dim = 1;
    int truncation_n = 1;
    double epsilon_n = 0.0;
    double c_n = 0.0;                             // total truncated jump mass
    std::optional<JumpDensity> normalized_density;  // phi_n / c_n
    Mat covariance_n;                             // A + eps_n I
    Point drift_n{0.0, 0.0, 0.0};                 // b - ∫_B y phi_n
    Mat cov_sqrt;                                 // factor of covariance_n
    bool degenerate_compound = false;             // c_n == 0: jump part absent
};

inline double default_epsilon(const LevyTriple& t, int n) {
    if (t.covariance.is_zero(0.0)) return 1.0 / n;
    const EigenDecomposition eig = sym_eigen(t.covariance);
    return eig.values[0] <= kEigenvalueTol ? 1.0 / n : 0.0;
}

inline ApproxComponents truncate(const LevyTriple& t, int n, double epsilon_n,
                                 const QuadSpec& spec = {}) {
    if (n < 1) throw std::invalid_argument("truncation index must be >= 1");
    if (epsilon_n < 0.0) throw std::invalid_argument("epsilon_n must be >= 0");
    ApproxComponents ac;
    ac.dim = t.dim;
    ac.truncation_n = n;
    ac.epsilon_n = epsilon_n;
    ac.covariance_n = add_scaled_identity(t.covariance, epsilon_n);
    ac.cov_sqrt = spectral_sqrt(ac.covariance_n);
    ac.drift_n = t.drift;
    if (t.jump && t.jump->has_mass()) {
        const double cutoff = 1.0 / n;
        JumpDensity phin = t.jump->truncated(cutoff);
        ac.c_n = phin.total_mass(spec);
        if (ac.c_n > 0.0) {
            const Point mb = phin.first_moment_in_ball(1.0, spec);
            ac.drift_n = sub(t.drift, mb, t.dim);
            ac.normalized_density = phin.scaled(1.0 / ac.c_n);
        } else {
            ac.degenerate_compound = true;
        }
    } else {
        ac.degenerate_compound = true;
    }
    return ac;
}

// Psi_n from the truncated components (compound Poisson + Gaussian recombined).
inline std::complex<double> approx_exponent(const ApproxComponents& ac, const Point& xi,
                                            const QuadSpec& spec = {}) {
    std::complex<double> psi(0.5 * quad_form(ac.covariance_n, xi),
                             -dot(ac.drift_n, xi, ac.dim));
    if (!ac.degenerate_compound)
        psi += ac.c_n * ac.normalized_density->cf_integral(xi, spec);
    return psi;
}

// Real part route for the symmetrized approximation.
inline double approx_exponent_star(const ApproxComponents& ac, const Point& xi,
                                   const QuadSpec& spec = {}) {
    double psi = 0.5 * quad_form(ac.covariance_n, xi);
    if (!ac.degenerate_compound)
        psi += ac.c_n * ac.normalized_density->cf_integral(xi, spec).real();
    return psi;
}

// --- JSON representation ---------------------------------------------------------

inline nlohmann::json triple_to_json(const LevyTriple& t) {
    nlohmann::json j;
    j["dim"] = t.dim;
    j["drift"] = std::vector<double>(t.drift.begin(), t.drift.begin() + t.dim);
    std::vector<std::vector<double>> cov(t.dim, std::vector<double>(t.dim));
    for (int i = 0; i < t.dim; ++i)
        for (int k = 0; k < t.dim; ++k) cov[i][k] = t.covariance(i, k);
    j["covariance"] = cov;
    if (!t.jump) {
        j["jump"] = nullptr;
        return j;
    }
    const JumpDensity& d = *t.jump;
    nlohmann::json params;
    switch (d.kind) {
        case JumpKind::PowerLaw:
            params = {{"alpha", d.alpha}, {"r_min", d.r_min}, {"amplitude", d.amplitude}};
            break;
        case JumpKind::UniformBox:
            params = {{"lower", std::vector<double>(d.box_lower.begin(), d.box_lower.begin() + d.dim)},
                      {"upper", std::vector<double>(d.box_upper.begin(), d.box_upper.begin() + d.dim)},
                      {"intensity", d.intensity}};
            break;
        case JumpKind::GaussianMixture: {
            nlohmann::json comps = nlohmann::json::array();
            for (const auto& c : d.components) {
                std::vector<std::vector<double>> cc(d.dim, std::vector<double>(d.dim));
                for (int i = 0; i < d.dim; ++i)
                    for (int k = 0; k < d.dim; ++k) cc[i][k] = c.cov(i, k);
                comps.push_back({{"weight", c.weight},
                                 {"mean", std::vector<double>(c.mean.begin(), c.mean.begin() + d.dim)},
                                 {"cov", cc}});
            }
            params = {{"components", comps}};
            break;
        }
        case JumpKind::GridSampled:
            params = {{"grid", grid_to_json(*d.grid)}};
            break;
    }
    j["jump"] = {{"kind", jump_kind_name(d.kind)},
                 {"params", params},
                 {"support_radius", d.support_radius},
                 {"is_isotropic_decreasing", d.isotropic_decreasing}};
    return j;
}

inline LevyTriple triple_from_json(const nlohmann::json& j) {
    const int dim = j.at("dim").get<int>();
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("dim must be 1..3");
    const auto drift_v = j.at("drift").get<std::vector<double>>();
    if (static_cast<int>(drift_v.size()) != dim)
        throw std::invalid_argument("drift length does not match dim");
    const auto cov_v = j.at("covariance").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(cov_v.size()) != dim)
        throw std::invalid_argument("covariance shape does not match dim");
    Mat cov(dim);
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(cov_v[i].size()) != dim)
            throw std::invalid_argument("covariance shape does not match dim");
        for (int k = 0; k < dim; ++k) cov(i, k) = cov_v[i][k];
    }
    std::optional<JumpDensity> jump;
    if (j.contains("jump") && !j.at("jump").is_null()) {
        const auto& jj = j.at("jump");
        const std::string kind = jj.at("kind").get<std::string>();
        const auto& params = jj.at("params");
        const double support = jj.at("support_radius").get<double>();
        if (kind == "isotropic-power-law-truncated") {
            jump = JumpDensity::power_law(dim, params.at("alpha").get<double>(),
                                          params.at("r_min").get<double>(),
                                          params.at("amplitude").get<double>(), support);
        } else if (kind == "uniform-box") {
            jump = JumpDensity::uniform_box(
                dim, point_from(params.at("lower").get<std::vector<double>>()),
                point_from(params.at("upper").get<std::vector<double>>()),
                params.at("intensity").get<double>());
        } else if (kind == "anisotropic-gaussian-mixture") {
            std::vector<GaussComponent> comps;
            for (const auto& cj : params.at("components")) {
                GaussComponent c;
                c.weight = cj.at("weight").get<double>();
                c.mean = point_from(cj.at("mean").get<std::vector<double>>());
                const auto cc = cj.at("cov").get<std::vector<std::vector<double>>>();
                c.cov = Mat(dim);
                for (int i = 0; i < dim; ++i)
                    for (int k = 0; k < dim; ++k) c.cov(i, k) = cc.at(i).at(k);
                comps.push_back(c);
            }
            jump = JumpDensity::gaussian_mixture(dim, std::move(comps), support);
        } else if (kind == "grid-sampled") {
            jump = JumpDensity::grid_sampled(grid_from_json(params.at("grid")));
        } else {
            throw std::invalid_argument("unknown jump kind: " + kind);
        }
        if (jj.contains("is_isotropic_decreasing"))
            jump->isotropic_decreasing = jj.at("is_isotropic_decreasing").get<bool>();
    }
    return LevyTriple::make(dim, point_from(drift_v), cov, std::move(jump));
}

}  // namespace levysym
