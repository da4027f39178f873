#include <doctest.h>

#include <sstream>

#include "levysym/experiment.hpp"

using namespace levysym;

TEST_CASE("config: seed is mandatory and named in the diagnostic") {
    nlohmann::json j{{"experiment", "survival"}, {"scenario", "cauchy-truncated-1d"}};
    try {
        ExperimentConfig::from_json(j);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "seed");
        CHECK(std::string(e.what()).find("seed") != std::string::npos);
    }
}

TEST_CASE("config: experiment kind and triple source are required") {
    CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"seed", 1}}), ConfigError);
    nlohmann::json j{{"experiment", "survival"}, {"seed", 1}};
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);  // no triple or scenario
}

TEST_CASE("config: full document round trip") {
    nlohmann::json j{
        {"experiment", "feynman-kac"},
        {"seed", 42},
        {"scenario", "uniform-jumps-asymmetric-1d"},
        {"paths", 1000},
        {"n", 32},
        {"m", 64},
        {"T", 0.5},
    };
    auto cfg = ExperimentConfig::from_json(j);
    CHECK(cfg.sampler.num_paths == 1000);
    CHECK(cfg.sampler.truncation_n == 32);
    CHECK(cfg.sampler.steps == 64);
    CHECK(cfg.seed == 42);
    CHECK(cfg.horizon == doctest::Approx(0.5));
}

TEST_CASE("thm11 on an isotropic triple holds (X equals X*)") {
    nlohmann::json j{
        {"experiment", "thm11"},
        {"seed", 5},
        {"paths", 4000},
        {"m", 16},
        {"triple",
         {{"dim", 1},
          {"drift", {0.0}},
          {"covariance", {{1.0}}},
          {"jump", nullptr}}},
        {"domain", {{"kind", "box"}, {"lower", {-1.0}}, {"upper", {1.0}}}},
        {"start", {0.0}},
    };
    auto cfg = ExperimentConfig::from_json(j);
    auto res = run_experiment(cfg);
    CHECK(res.comparison);
    CHECK(res.verdict == Verdict::Holds);
    CHECK(res.exit_status() == 0);
    CHECK(res.summary.at("experiment") == "thm11:custom");
    CHECK(res.summary.contains("fingerprint"));
}

TEST_CASE("suite rows are reproducible and worker-count independent") {
    SamplerConfig cfg;
    cfg.seed = 31337;
    cfg.num_paths = 3000;
    cfg.steps = 64;
    cfg.workers = 1;
    auto a = run_suite(cfg, "heat-content");
    cfg.workers = 4;
    auto b = run_suite(cfg, "heat-content");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].rows.size() == b[i].rows.size());
        for (std::size_t r = 0; r < a[i].rows.size(); ++r) {
            CHECK(a[i].rows[r].mean == b[i].rows[r].mean);
            CHECK(a[i].rows[r].std_error == b[i].rows[r].std_error);
        }
    }
}

TEST_CASE("csv rows carry the full fingerprint") {
    CHECK(csv_header()
          == "experiment,side,mean,std_error,num_paths,n,epsilon_n,m,T,seed,verdict");
    CsvRow row;
    row.experiment = "survival:x";
    row.side = "lhs";
    row.mean = 0.25;
    row.std_error = 0.003;
    row.num_paths = 100;
    row.n = 64;
    row.epsilon_n = 0.015625;
    row.m = 128;
    row.T = 0.5;
    row.seed = 9;
    row.verdict = "holds";
    const std::string line = to_csv(row);
    std::size_t commas = 0;
    for (char c : line) commas += c == ',';
    CHECK(commas == 10);
    CHECK(line.find("survival:x,lhs,0.25,") == 0);
}

TEST_CASE("oracle experiments run standalone") {
    ExperimentConfig cfg;
    cfg.seed = 2;
    cfg.experiment = "oracle-gauss";
    auto res = run_experiment(cfg);
    CHECK(res.verdict == Verdict::Holds);
    CHECK(res.rows.size() == 2);
    CHECK(res.summary.at("verdict") == "holds");
}

TEST_CASE("exponent convergence is monotone across the whole catalog") {
    for (const auto& name : scenario_names()) {
        const Scenario sc = make_scenario(name);
        const auto out = oracle_psi_experiment(sc, {4, 16, 64});
        CHECK(out.holds);
        CHECK(out.err_fine <= out.err_coarse + 1e-12);
    }
}

TEST_CASE("scenario catalog is complete and valid") {
    for (const auto& name : scenario_names()) {
        const Scenario sc = make_scenario(name);
        CHECK(sc.triple.dim >= 1);
        CHECK(validate(sc.triple).valid());
        CHECK(sc.domain.contains(sc.start));
        CHECK(sc.frequencies.size() == 8);
        // the symmetrized side must be constructible
        auto star = symmetrize_triple(sc.triple, scenario_grid_spec(sc));
        CHECK(norm(star.drift, star.dim) == 0.0);
        auto dstar = symmetrize_domain(sc.domain);
        CHECK(dstar.measure() == doctest::Approx(sc.domain.measure()).epsilon(1e-12));
    }
    CHECK_THROWS_AS(make_scenario("nope"), std::invalid_argument);
}
