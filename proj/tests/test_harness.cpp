#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "schrlab/harness.hpp"
#include "schrlab/profile.hpp"

using namespace lab;

namespace {

const BumpProfile& profile2() {
    static BumpProfile pf = load_or_build_profile(2, "/tmp/schrlab_profile2.json");
    return pf;
}

const ProofConstants& constants2() {
    static ProofConstants pc = derive_constants(profile2(), 1e6, 64, 2024);
    return pc;
}

RunConfig small_config() {
    RunConfig cfg;
    cfg.m_list = {12};
    cfg.seed = 2024;
    cfg.witness_count = 4;
    cfg.quotient_samples = 1000;
    cfg.out_dir = "/tmp/schrlab_test_out";
    return cfg;
}

}  // namespace

TEST_CASE("config: JSON round trip and defaults") {
    RunConfig c;
    c.m_list = {12, 16};
    c.seed = 99;
    c.eps_tier = "rigorous";
    RunConfig back = RunConfig::from_json_text(c.to_json());
    CHECK(back.n == c.n);
    CHECK(back.sigma == c.sigma);
    CHECK(back.m_list == c.m_list);
    CHECK(back.seed == c.seed);
    CHECK(back.eps_tier == "rigorous");
    CHECK(back.quotient_samples == c.quotient_samples);

    // missing keys keep defaults
    RunConfig d = RunConfig::from_json_text("{\"seed\": 7}");
    CHECK(d.seed == 7);
    CHECK(d.n == 2);
    CHECK(d.m_list == std::vector<int64_t>({12, 16, 20, 24}));
}

TEST_CASE("config: TOML parsing") {
    std::string toml =
        "# comment line\n"
        "n = 2\n"
        "sigma = 0.2   # trailing comment\n"
        "m_list = [12, 16, 20]\n"
        "seed = 5\n"
        "eps_tier = \"empirical\"\n"
        "out_dir = \"results # not a comment\"\n";
    RunConfig c = RunConfig::from_toml_text(toml);
    CHECK(c.n == 2);
    CHECK(c.sigma == 0.2);
    CHECK(c.m_list == std::vector<int64_t>({12, 16, 20}));
    CHECK(c.seed == 5);
    CHECK(c.out_dir == "results # not a comment");

    CHECK_THROWS_AS(RunConfig::from_toml_text("just some words\n"), Error);
    CHECK_THROWS_AS(RunConfig::from_toml_text("key = \n"), Error);
    CHECK_THROWS_AS(RunConfig::from_toml_text("m_list = [12, 16\n"), Error);
    CHECK_THROWS_AS(RunConfig::from_toml_text("seed = zebra\n"), Error);
}

TEST_CASE("config: validation rejects bad fields") {
    auto bad = [](auto&& mod) {
        RunConfig c;
        mod(c);
        CHECK_THROWS_AS(c.validate(), Error);
    };
    bad([](RunConfig& c) { c.n = 4; });
    bad([](RunConfig& c) { c.sigma = 0.5; });
    bad([](RunConfig& c) { c.s = -0.1; });
    bad([](RunConfig& c) { c.m_list.clear(); });
    bad([](RunConfig& c) { c.m_list = {1}; });
    bad([](RunConfig& c) { c.quotient_samples = 10; });
    bad([](RunConfig& c) { c.witness_count = 0; });
    bad([](RunConfig& c) { c.eps_tier = "optimistic"; });
    bad([](RunConfig& c) { c.out_dir = ""; });
    RunConfig ok;
    CHECK_NOTHROW(ok.validate());
}

TEST_CASE("config: file loading dispatches on extension") {
    RunConfig c;
    c.seed = 41;
    write_file("/tmp/schrlab_cfg.json", c.to_json());
    CHECK(RunConfig::from_file("/tmp/schrlab_cfg.json").seed == 41);
    write_file("/tmp/schrlab_cfg.toml", "seed = 42\n");
    CHECK(RunConfig::from_file("/tmp/schrlab_cfg.toml").seed == 42);
    CHECK_THROWS_AS(RunConfig::from_file("/tmp/schrlab_missing_cfg.toml"), Error);
}

TEST_CASE("maximal lower bound: components compose as documented") {
    RunConfig cfg = small_config();
    ExperimentParams p = build_params(cfg.n, cfg.sigma, 12, cfg.s, constants2());
    FrequencySet freq = build_frequency_set(p);
    MaximalLB mlb = maximal_lower_bound(p, freq, profile2(), cfg.witness_count,
                                        cfg.quotient_samples, cfg.seed);
    CHECK(mlb.witnesses == cfg.witness_count);
    CHECK(mlb.min_amp > 0);
    CHECK(mlb.quotient.value > 0);
    CHECK(mlb.quotient.value <= 1.0);
    CHECK(mlb.value == doctest::Approx(std::sqrt(mlb.quotient.value) *
                                       std::pow(2.0 * M_PI * p.R, 1.0) * mlb.min_amp));
    CHECK(mlb.min_amp_time > 0);
}

TEST_CASE("sweep: csv format, slope consistency, determinism") {
    RunConfig cfg = small_config();
    cfg.m_list = {12, 16};
    SweepResult res = divergence_sweep(cfg, profile2(), constants2());
    REQUIRE(res.rows.size() == 2);

    // two rows determine the fitted slope exactly
    double expect = std::log(res.rows[1].ratio / res.rows[0].ratio) /
                    std::log(res.rows[1].R / res.rows[0].R);
    CHECK(res.slope == doctest::Approx(expect).epsilon(1e-12));

    std::string csv = sweep_csv(res);
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    CHECK(line ==
          "m,R,omega_size,u0_l2,v0_l2,maximal_l2_lower,ratio,witness_min_amp,"
          "quotient_estimate,quotient_hw,seed");
    int rows = 0;
    while (std::getline(ss, line))
        if (!line.empty()) rows++;
    CHECK(rows == 2);
    CHECK(csv.substr(0, 3) == "m,R");

    // byte-identical on a repeated run with the same seed
    SweepResult res2 = divergence_sweep(cfg, profile2(), constants2());
    CHECK(sweep_csv(res2) == csv);
}

TEST_CASE("report emission writes csv and self-consistent json") {
    RunConfig cfg = small_config();
    std::filesystem::remove_all(cfg.out_dir);
    SweepResult res = divergence_sweep(cfg, profile2(), constants2());
    report_emit(res, cfg, profile2());

    std::string csv = read_file(cfg.out_dir + "/sweep.csv");
    CHECK(csv == sweep_csv(res));

    nlohmann::json j = nlohmann::json::parse(read_file(cfg.out_dir + "/sweep.json"));
    CHECK(j.at("csv_sha1").get<std::string>() == sha1_hex(csv));
    CHECK(j.at("profile_fingerprint").get<std::string>() == profile2().fingerprint());
    CHECK(j.at("rows").size() == res.rows.size());
    CHECK(j.at("slope").get<double>() == doctest::Approx(res.slope));
    CHECK(j.at("config").at("seed").get<uint64_t>() == cfg.seed);
}

TEST_CASE("quick suites pass on the pinned seed") {
    SuiteResult d = suite_dirichlet(2024, true);
    CHECK(d.pass);
    CHECK(d.name == "dirichlet-approximation");
    SuiteResult ps = suite_perturbed_sum(2024, true);
    CHECK(ps.pass);
    SuiteResult nm = suite_norms(profile2(), constants2());
    CHECK(nm.pass);
    CHECK(nm.detail.find("ratio") != std::string::npos);
}
