#pragma once

// Configuration-driven experiment runner: parses JSON configs, executes one
// named experiment or the standard suite, and writes CSV rows plus a JSON
// summary with the full reproduction fingerprint.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "levysym/catalog.hpp"
#include "levysym/characteristics.hpp"
#include "levysym/functionals.hpp"
#include "levysym/oracle.hpp"
#include "levysym/rng.hpp"

#include <json.hpp>

namespace levysym {

class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error("config field '" + field + "': " + what), field_(field) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

// --- JSON for domains, observables, potentials -----------------------------------

inline nlohmann::json domain_to_json(const DomainSpec& d) {
    nlohmann::json j;
    switch (d.kind) {
        case DomainSpec::Kind::Ball:
            j["kind"] = "ball";
            j["center"] = std::vector<double>(d.ball_center.begin(), d.ball_center.begin() + d.dim);
            j["radius"] = d.ball_radius;
            break;
        case DomainSpec::Kind::Box:
            j["kind"] = "box";
            j["lower"] = std::vector<double>(d.box_lower.begin(), d.box_lower.begin() + d.dim);
            j["upper"] = std::vector<double>(d.box_upper.begin(), d.box_upper.begin() + d.dim);
            break;
        case DomainSpec::Kind::Union: {
            j["kind"] = "union";
            nlohmann::json parts = nlohmann::json::array();
            for (const auto& p : d.parts) parts.push_back(domain_to_json(p));
            j["parts"] = parts;
            break;
        }
        case DomainSpec::Kind::Mask:
            j["kind"] = "mask";
            j["grid"] = grid_to_json(*d.mask);
            break;
    }
    return j;
}

inline DomainSpec domain_from_json(const nlohmann::json& j, int dim) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ball")
        return DomainSpec::ball(dim, point_from(j.at("center").get<std::vector<double>>()),
                                j.at("radius").get<double>());
    if (kind == "box")
        return DomainSpec::box(dim, point_from(j.at("lower").get<std::vector<double>>()),
                               point_from(j.at("upper").get<std::vector<double>>()));
    if (kind == "union") {
        std::vector<DomainSpec> parts;
        for (const auto& p : j.at("parts")) parts.push_back(domain_from_json(p, dim));
        return DomainSpec::disjoint_union(std::move(parts));
    }
    if (kind == "mask") return DomainSpec::grid_mask(grid_from_json(j.at("grid")));
    throw ConfigError("domain.kind", "unknown kind " + kind);
}

inline CatalogFunction function_from_json(const nlohmann::json& j, int dim) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "one") return CatalogFunction::one();
    if (kind == "constant") return CatalogFunction::constant(j.at("value").get<double>());
    if (kind == "indicator")
        return CatalogFunction::indicator(domain_from_json(j.at("domain"), dim));
    if (kind == "radial-triangle")
        return CatalogFunction::radial_triangle(j.at("radius").get<double>());
    if (kind == "radial-gauss") return CatalogFunction::radial_gauss(j.at("sigma").get<double>());
    if (kind == "grid") return CatalogFunction::grid_function(grid_from_json(j.at("grid")));
    throw ConfigError("f.kind", "unknown kind " + kind);
}

inline Potential potential_from_json(const nlohmann::json& j, int dim) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return Potential::zero();
    if (kind == "constant") return Potential::constant(j.at("level").get<double>());
    if (kind == "well")
        return Potential::well(domain_from_json(j.at("region"), dim), j.at("level").get<double>());
    if (kind == "quadratic") return Potential::quadratic(j.at("level").get<double>());
    if (kind == "bump")
        return Potential::bump(domain_from_json(j.at("region"), dim), j.at("level").get<double>());
    throw ConfigError("potential.kind", "unknown kind " + kind);
}

inline ExitFunction exit_function_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "one") return ExitFunction::one();
    if (kind == "power") return ExitFunction::power(j.value("p", 1.0));
    if (kind == "bounded") return ExitFunction::bounded();
    throw ConfigError("psi.kind", "unknown kind " + kind);
}

// --- experiment configuration -----------------------------------------------------

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    std::optional<std::string> scenario;
    std::optional<LevyTriple> triple;
    SamplerConfig sampler;

    // kind-specific (defaults come from the scenario when present)
    std::optional<DomainSpec> domain;
    std::optional<DomainSpec> observe_region;
    std::optional<Point> start;
    std::optional<Potential> potential;
    std::optional<CatalogFunction> f;
    std::optional<ExitFunction> psi;
    std::optional<std::vector<double>> horizons;
    std::optional<double> horizon;
    std::optional<nlohmann::json> raw;  // original document (fingerprint echo)
    std::string out;                    // output path prefix; empty = no files

    static ExperimentConfig from_json(const nlohmann::json& j);
};

inline ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    if (!j.contains("experiment")) throw ConfigError("experiment", "missing");
    c.experiment = j.at("experiment").get<std::string>();
    if (!j.contains("seed")) throw ConfigError("seed", "missing (seed is mandatory)");
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
        throw ConfigError("seed", "must be an integer");
    c.seed = j.at("seed").get<std::uint64_t>();
    c.sampler.seed = c.seed;
    if (j.contains("scenario")) c.scenario = j.at("scenario").get<std::string>();
    if (j.contains("triple")) {
        try {
            c.triple = triple_from_json(j.at("triple"));
        } catch (const std::exception& e) {
            throw ConfigError("triple", e.what());
        }
    }
    if (!c.scenario && !c.triple && c.experiment.rfind("oracle-", 0) != 0)
        throw ConfigError("triple", "either 'triple' or 'scenario' is required");
    if (j.contains("paths")) c.sampler.num_paths = j.at("paths").get<std::uint64_t>();
    if (j.contains("n")) c.sampler.truncation_n = j.at("n").get<int>();
    if (j.contains("epsilon_n") && !j.at("epsilon_n").is_null())
        c.sampler.epsilon_n = j.at("epsilon_n").get<double>();
    if (j.contains("m")) c.sampler.steps = j.at("m").get<int>();
    if (j.contains("workers")) c.sampler.workers = j.at("workers").get<int>();
    if (j.contains("T")) c.horizon = j.at("T").get<double>();

    const int dim = c.triple ? c.triple->dim
                             : (c.scenario ? make_scenario(*c.scenario).triple.dim : 1);
    if (j.contains("domain")) c.domain = domain_from_json(j.at("domain"), dim);
    if (j.contains("observe_region"))
        c.observe_region = domain_from_json(j.at("observe_region"), dim);
    if (j.contains("start")) c.start = point_from(j.at("start").get<std::vector<double>>());
    if (j.contains("potential")) c.potential = potential_from_json(j.at("potential"), dim);
    if (j.contains("f")) c.f = function_from_json(j.at("f"), dim);
    if (j.contains("psi")) c.psi = exit_function_from_json(j.at("psi"));
    if (j.contains("horizons")) c.horizons = j.at("horizons").get<std::vector<double>>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (c.sampler.num_paths < 1) throw ConfigError("paths", "must be >= 1");
    if (c.sampler.steps < 1) throw ConfigError("m", "must be >= 1");
    c.raw = j;
    return c;
}

// --- results ------------------------------------------------------------------------

struct CsvRow {
    std::string experiment;
    std::string side;  // lhs | rhs
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t num_paths = 0;
    int n = 0;
    double epsilon_n = 0.0;
    int m = 0;
    double T = 0.0;
    std::uint64_t seed = 0;
    std::string verdict;
};

inline std::string csv_header() {
    return "experiment,side,mean,std_error,num_paths,n,epsilon_n,m,T,seed,verdict";
}

inline std::string to_csv(const CsvRow& r) {
    std::ostringstream os;
    os.precision(17);
    os << r.experiment << ',' << r.side << ',' << r.mean << ',' << r.std_error << ','
       << r.num_paths << ',' << r.n << ',' << r.epsilon_n << ',' << r.m << ',' << r.T << ','
       << r.seed << ',' << r.verdict;
    return os.str();
}

struct ExperimentResult {
    std::string experiment;
    Verdict verdict = Verdict::Holds;
    bool comparison = false;  // verdict meaningful only for comparisons
    bool ok = true;           // non-comparison experiments: success flag
    EstimateReport lhs, rhs;
    std::vector<CsvRow> rows;
    nlohmann::json summary;

    int exit_status() const {
        if (!ok) return 1;
        if (comparison && verdict == Verdict::Violated) return 2;
        return 0;
    }
};

namespace detail {

inline CsvRow report_row(const std::string& experiment, const std::string& side,
                         const EstimateReport& r, const std::string& verdict) {
    CsvRow row;
    row.experiment = experiment;
    row.side = side;
    row.mean = r.mean;
    row.std_error = r.std_error;
    row.num_paths = r.num_paths;
    row.n = r.fingerprint.truncation_n;
    row.epsilon_n = r.fingerprint.epsilon_n;
    row.m = r.fingerprint.steps;
    row.T = r.fingerprint.horizon;
    row.seed = r.fingerprint.seed;
    row.verdict = verdict;
    return row;
}

inline nlohmann::json fingerprint_json(const EstimateReport& lhs, const EstimateReport& rhs) {
    return nlohmann::json{{"n", lhs.fingerprint.truncation_n},
                          {"epsilon_n", lhs.fingerprint.epsilon_n},
                          {"m", lhs.fingerprint.steps},
                          {"T", lhs.fingerprint.horizon},
                          {"seed_lhs", lhs.fingerprint.seed},
                          {"seed_rhs", rhs.fingerprint.seed},
                          {"paths", lhs.fingerprint.num_paths}};
}

}  // namespace detail

// --- the comparison experiments ----------------------------------------------------

// Both sides of one inequality experiment for a scenario-style setup.
// Orientation: the symmetrized process dominates the plain one for every
// functional here, except lambda1 where the ball minimizes the eigenvalue.
inline ExperimentResult run_comparison(const std::string& kind, const Scenario& sc,
                                       const SamplerConfig& cfg_base) {
    const RearrangeGridSpec gs = scenario_grid_spec(sc);
    const LevyTriple star = symmetrize_triple(sc.triple, gs);
    const DomainSpec dstar = symmetrize_domain(sc.domain);
    const Point origin{0.0, 0.0, 0.0};

    // independent seeds per side; exact-reduction identities keep shared seeds
    SamplerConfig lhs_cfg = cfg_base;
    lhs_cfg.seed = mix_seed(cfg_base.seed, 0x4c);
    SamplerConfig rhs_cfg = cfg_base;
    rhs_cfg.seed = mix_seed(cfg_base.seed, 0x52);

    ExperimentResult res;
    res.comparison = true;
    res.experiment = kind + ":" + sc.name;

    EstimateReport plain, starred;
    if (kind == "thm11") {
        FunctionalSpec spec;
        spec.times = {0.5 * sc.horizon_functional, sc.horizon_functional};
        spec.functions = {CatalogFunction::indicator(sc.observe_region),
                          CatalogFunction::radial_gauss(1.0)};
        spec.domains = {sc.domain, sc.domain};
        spec.start = sc.start;
        plain = estimate_product_functional(sc.triple, spec, lhs_cfg);
        starred = estimate_product_functional(star, spec.symmetrized(), rhs_cfg);
    } else if (kind == "survival") {
        plain = estimate_survival(sc.triple, sc.start, sc.domain, sc.horizon_functional, lhs_cfg);
        starred = estimate_survival(star, origin, dstar, sc.horizon_functional, rhs_cfg);
    } else if (kind == "feynman-kac") {
        const Potential v = Potential::well(sc.observe_region, sc.well_depth);
        plain = estimate_feynman_kac(sc.triple, sc.start, sc.domain, v, CatalogFunction::one(),
                                     sc.horizon_functional, lhs_cfg);
        starred = estimate_feynman_kac(star, origin, dstar, v.symmetrized(),
                                       CatalogFunction::one(), sc.horizon_functional, rhs_cfg);
    } else if (kind == "exit-moment") {
        plain = estimate_exit_moment(sc.triple, sc.start, sc.domain, ExitFunction::power(1.0),
                                     sc.horizon_exit, lhs_cfg);
        starred = estimate_exit_moment(star, origin, dstar, ExitFunction::power(1.0),
                                       sc.horizon_exit, rhs_cfg);
    } else if (kind == "lambda1") {
        plain = estimate_lambda1(sc.triple, sc.start, sc.domain, Potential::zero(),
                                 sc.horizons_lambda1, lhs_cfg);
        starred = estimate_lambda1(star, origin, dstar, Potential::zero(), sc.horizons_lambda1,
                                   rhs_cfg);
    } else if (kind == "heat-content") {
        plain = estimate_heat_content(sc.triple, sc.domain, sc.horizon_functional, lhs_cfg);
        starred = estimate_heat_content(star, dstar, sc.horizon_functional, rhs_cfg);
    } else if (kind == "torsion") {
        TorsionSpec ts;
        ts.t_max = sc.horizon_torsion;
        ts.points = 10;
        plain = estimate_torsional_rigidity(sc.triple, sc.domain, ts, lhs_cfg);
        starred = estimate_torsional_rigidity(star, dstar, ts, rhs_cfg);
    } else {
        throw ConfigError("experiment", "unknown comparison kind " + kind);
    }

    // lambda1 reverses: the ball minimizes the principal eigenvalue
    if (kind == "lambda1") {
        res.lhs = starred;
        res.rhs = plain;
    } else {
        res.lhs = plain;
        res.rhs = starred;
    }
    res.verdict = compare_reports(res.lhs, res.rhs);
    const std::string v = verdict_name(res.verdict);
    res.rows.push_back(detail::report_row(res.experiment, "lhs", res.lhs, v));
    res.rows.push_back(detail::report_row(res.experiment, "rhs", res.rhs, v));
    res.summary = nlohmann::json{{"experiment", res.experiment},
                                 {"verdict", v},
                                 {"lhs", res.lhs.mean},
                                 {"rhs", res.rhs.mean},
                                 {"fingerprint", detail::fingerprint_json(res.lhs, res.rhs)}};
    return res;
}

// --- oracle experiments --------------------------------------------------------------

inline GridFunction oracle_random_grid(RngStream& rng, int cells, double h) {
    GridFunction g(1, cells, h);
    for (auto& v : g.values) {
        const double u = rng.uniform();
        v = u < 0.25 ? 0.0 : rng.uniform();
    }
    return g;
}

struct OracleOutcome {
    bool holds = true;
    double worst_lhs = 0.0;
    double worst_rhs = 0.0;   // includes the allowance
    double worst_margin = -1e300;
};

inline OracleOutcome oracle_bll_experiment(std::uint64_t seed, int instances, bool mixed_shapes) {
    RngStream rng(seed, 0, 7);
    OracleOutcome out;
    for (int i = 0; i < instances; ++i) {
        const int m = mixed_shapes ? 1 + static_cast<int>(rng.uniform() * 3) : 2;
        const int k = mixed_shapes ? 1 + static_cast<int>(rng.uniform() * std::min(3, m)) : 1;
        const int cells = k == 3 ? 31 : 61;
        const double h = 4.0 / (cells - 1);
        BLLInstance inst;
        for (int j = 0; j < m; ++j) inst.functions.push_back(oracle_random_grid(rng, cells, h));
        // random full-rank mixing matrix with entries in {-1, 0, 1}
        for (;;) {
            inst.mixing.assign(m, std::vector<double>(k, 0.0));
            for (int j = 0; j < m; ++j) {
                bool nonzero = false;
                for (int c = 0; c < k; ++c) {
                    const double u = rng.uniform();
                    inst.mixing[j][c] = u < 1.0 / 3 ? -1.0 : (u < 2.0 / 3 ? 0.0 : 1.0);
                    if (inst.mixing[j][c] != 0.0) nonzero = true;
                }
                if (!nonzero) inst.mixing[j][k == 1 ? 0 : j % k] = 1.0;
            }
            // need the rows to span R^k so the integrand has bounded support
            Mat g(k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) {
                    double s = 0.0;
                    for (int j = 0; j < m; ++j) s += inst.mixing[j][a] * inst.mixing[j][b];
                    g(a, b) = s;
                }
            if (std::abs(det(g)) > 1e-9) break;
        }
        const BLLResult r = bll_quadrature(inst);
        const double margin = r.lhs - (r.rhs + r.allowance);
        if (margin > out.worst_margin) {
            out.worst_margin = margin;
            out.worst_lhs = r.lhs;
            out.worst_rhs = r.rhs + r.allowance;
        }
        if (margin > 0.0) out.holds = false;
    }
    return out;
}

inline OracleOutcome oracle_rw_experiment(std::uint64_t seed, int instances) {
    RngStream rng(seed, 1, 7);
    OracleOutcome out;
    for (int i = 0; i < instances; ++i) {
        const int cells = 41;
        const double h = 3.0 / (cells - 1);
        GridFunction phi = oracle_random_grid(rng, cells, h);
        double mass = phi.mass();
        if (mass <= 0.0) {
            phi.values[cells / 2] = 1.0;
            mass = phi.mass();
        }
        for (auto& v : phi.values) v /= mass;
        const int m = 1 + static_cast<int>(rng.uniform() * 3);
        std::vector<GridFunction> fs;
        std::vector<int> ks;
        int kprev = 0;
        for (int j = 0; j < m; ++j) {
            fs.push_back(oracle_random_grid(rng, cells, h));
            kprev = std::min(4, kprev + (rng.uniform() < 0.5 ? 1 : 2));
            ks.push_back(kprev);
        }
        const double x0 = h * static_cast<int>(rng.uniform() * 7 - 3);
        const RandomWalkResult r = randomwalk_product(phi, fs, ks, x0);
        const double margin = r.lhs - (r.rhs + r.allowance);
        if (margin > out.worst_margin) {
            out.worst_margin = margin;
            out.worst_lhs = r.lhs;
            out.worst_rhs = r.rhs + r.allowance;
        }
        if (margin > 0.0) out.holds = false;
    }
    return out;
}

struct GaussOracleOutcome {
    bool holds = true;
    double min_ratio = 0.0;
    std::vector<double> sup_errors;
};

inline GaussOracleOutcome oracle_gauss_experiment(int refinements = 3) {
    const Mat a = Mat::diag({1.0, 4.0});
    const Point b{2.0, 0.0, 0.0};
    GaussOracleOutcome out;
    double h = 0.25;
    double prev = -1.0;
    out.min_ratio = 1e300;
    for (int r = 0; r <= refinements; ++r) {
        const int cells = static_cast<int>(std::lround(24.0 / h)) + 1;
        const auto res = gaussian_rearrangement_check(a, b, 1.0, cells, h);
        out.sup_errors.push_back(res.sup_error);
        if (prev > 0.0) out.min_ratio = std::min(out.min_ratio, prev / res.sup_error);
        prev = res.sup_error;
        h *= 0.5;
    }
    out.holds = out.min_ratio >= 1.8;
    return out;
}

struct PsiOracleOutcome {
    bool holds = true;
    double err_coarse = 0.0;  // max over frequencies at the smallest n
    double err_fine = 0.0;    // max over frequencies at the largest n
};

inline PsiOracleOutcome oracle_psi_experiment(const Scenario& sc,
                                              const std::vector<int>& ns = {4, 16, 64}) {
    const auto rows = exponent_convergence(sc.triple, sc.frequencies, ns, {},
                                           scenario_grid_spec(sc));
    const std::size_t nx = sc.frequencies.size();
    PsiOracleOutcome out;
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t a = 0; a + 1 < ns.size(); ++a) {
            const auto& coarse = rows[a * nx + x];
            const auto& fine = rows[(a + 1) * nx + x];
            if (fine.error_plain > coarse.error_plain + 1e-12) out.holds = false;
            if (fine.error_star > coarse.error_star + 1e-12) out.holds = false;
        }
        out.err_coarse = std::max({out.err_coarse, rows[x].error_plain, rows[x].error_star});
        const auto& last = rows[(ns.size() - 1) * nx + x];
        out.err_fine = std::max({out.err_fine, last.error_plain, last.error_star});
    }
    return out;
}

// --- single-experiment runner ---------------------------------------------------------

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    const std::string& kind = cfg.experiment;
    ExperimentResult res;
    res.experiment = kind;

    auto oracle_rows = [&](const std::string& name, double lhs, double rhs, bool holds) {
        const std::string v = holds ? "holds" : "violated";
        CsvRow l;
        l.experiment = name;
        l.side = "lhs";
        l.mean = lhs;
        l.seed = cfg.seed;
        l.verdict = v;
        CsvRow r = l;
        r.side = "rhs";
        r.mean = rhs;
        res.rows = {l, r};
        res.comparison = true;
        res.verdict = holds ? Verdict::Holds : Verdict::Violated;
        res.summary = nlohmann::json{{"experiment", name},
                                     {"verdict", v},
                                     {"lhs", lhs},
                                     {"rhs", rhs},
                                     {"fingerprint", {{"seed", cfg.seed}}}};
    };

    if (kind == "oracle-bll") {
        const auto out = oracle_bll_experiment(cfg.seed, 100, true);
        oracle_rows("oracle-bll", out.worst_lhs, out.worst_rhs, out.holds);
        return res;
    }
    if (kind == "oracle-rw") {
        const auto out = oracle_rw_experiment(cfg.seed, 100);
        oracle_rows("oracle-rw", out.worst_lhs, out.worst_rhs, out.holds);
        return res;
    }
    if (kind == "oracle-gauss") {
        const auto out = oracle_gauss_experiment();
        oracle_rows("oracle-gauss", 1.8, out.min_ratio, out.holds);
        return res;
    }
    if (kind == "oracle-psi") {
        const Scenario sc = make_scenario(cfg.scenario.value_or("cauchy-truncated-1d"));
        const auto out = oracle_psi_experiment(sc);
        oracle_rows("oracle-psi", out.err_fine, out.err_coarse, out.holds);
        return res;
    }

    if (kind == "validate") {
        if (!cfg.triple) throw ConfigError("triple", "validate needs an inline triple");
        const ValidationReport rep = validate(*cfg.triple);
        res.ok = rep.valid();
        res.comparison = false;
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : rep.checks)
            checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value},
                              {"detail", c.detail}});
        res.summary = nlohmann::json{{"experiment", "validate"},
                                     {"valid", rep.valid()},
                                     {"checks", checks}};
        return res;
    }
    if (kind == "symmetrize") {
        if (!cfg.triple) throw ConfigError("triple", "symmetrize needs an inline triple");
        const LevyTriple star = symmetrize_triple(*cfg.triple);
        res.summary = nlohmann::json{{"experiment", "symmetrize"},
                                     {"triple", triple_to_json(star)}};
        return res;
    }

    // comparison kinds need a scenario (or a triple with explicit geometry)
    Scenario sc = cfg.scenario ? make_scenario(*cfg.scenario) : Scenario{};
    if (!cfg.scenario) {
        if (!cfg.triple) throw ConfigError("triple", "missing");
        sc.name = "custom";
        sc.triple = *cfg.triple;
        if (!cfg.domain) throw ConfigError("domain", "missing for a custom triple");
        sc.domain = *cfg.domain;
        sc.observe_region = cfg.observe_region ? *cfg.observe_region : *cfg.domain;
        if (!cfg.horizons) sc.horizons_lambda1 = {0.5, 1.0, 1.5, 2.0};
    }
    if (cfg.triple && cfg.scenario) sc.triple = *cfg.triple;
    if (cfg.domain) sc.domain = *cfg.domain;
    if (cfg.observe_region) sc.observe_region = *cfg.observe_region;
    if (cfg.start) sc.start = *cfg.start;
    if (cfg.horizon) {
        sc.horizon_functional = *cfg.horizon;
        sc.horizon_exit = *cfg.horizon;
        sc.horizon_torsion = *cfg.horizon;
    }
    if (cfg.horizons) sc.horizons_lambda1 = *cfg.horizons;
    return run_comparison(kind, sc, cfg.sampler);
}

// --- suite -----------------------------------------------------------------------------

inline const std::vector<std::string>& suite_kinds() {
    static const std::vector<std::string> kinds{"thm11",   "feynman-kac", "exit-moment",
                                                "lambda1", "heat-content", "torsion"};
    return kinds;
}

// Runs the standard configuration suite: every comparison kind on every
// catalog scenario, plus the four deterministic oracles.
inline std::vector<ExperimentResult> run_suite(const SamplerConfig& cfg,
                                               const std::string& filter = "") {
    std::vector<ExperimentResult> results;
    for (const auto& kind : suite_kinds()) {
        if (!filter.empty() && kind != filter) continue;
        for (const auto& name : scenario_names()) {
            const Scenario sc = make_scenario(name);
            SamplerConfig c = cfg;
            c.seed = mix_seed(cfg.seed, std::hash<std::string>{}(kind + name));
            results.push_back(run_comparison(kind, sc, c));
        }
    }
    auto want = [&](const std::string& k) { return filter.empty() || filter == k; };
    ExperimentConfig oc;
    oc.seed = cfg.seed;
    oc.sampler = cfg;
    if (want("oracle-bll")) {
        oc.experiment = "oracle-bll";
        results.push_back(run_experiment(oc));
    }
    if (want("oracle-rw")) {
        oc.experiment = "oracle-rw";
        results.push_back(run_experiment(oc));
    }
    if (want("oracle-gauss")) {
        oc.experiment = "oracle-gauss";
        results.push_back(run_experiment(oc));
    }
    if (want("oracle-psi")) {
        oc.experiment = "oracle-psi";
        oc.scenario = "cauchy-truncated-1d";
        results.push_back(run_experiment(oc));
    }
    return results;
}

// --- output files -------------------------------------------------------------------

inline void append_csv(const std::string& path, const std::vector<CsvRow>& rows) {
    const bool fresh = !std::ifstream(path).good();
    std::ofstream os(path, std::ios::app);
    if (!os) throw std::runtime_error("cannot open CSV output: " + path);
    if (fresh) os << csv_header() << "\n";
    for (const auto& r : rows) os << to_csv(r) << "\n";
}

inline void write_summary(const std::string& path, const nlohmann::json& summary) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open JSON output: " + path);
    os << summary.dump(2) << "\n";
}

}  // namespace levysym
