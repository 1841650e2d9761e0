// Command-line front end; talks to the core exclusively through the C API.
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schrlab.h"

namespace {

struct ConfigFlags {
    std::string config_path;
    int n = 2;
    double sigma = 0.2;
    double s = 0.15;
    std::vector<int64_t> m_list{12, 16, 20, 24};
    uint64_t seed = 1;
    int64_t quotient_samples = 10000;
    int witness_count = 48;
    int lower_bound_samples = 200;
    std::string out_dir = "out";
    std::string profile_cache;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& cf) {
    cmd->add_option("--config", cf.config_path, "config file (.toml or .json); overrides flags");
    cmd->add_option("--n", cf.n, "dimension (2 or 3)");
    cmd->add_option("--sigma", cf.sigma, "scaling exponent in (0, 1/2)");
    cmd->add_option("--s", cf.s, "Sobolev exponent");
    cmd->add_option("--m", cf.m_list, "lattice parameters (R = m^{1/sigma})");
    cmd->add_option("--seed", cf.seed, "RNG seed");
    cmd->add_option("--quotient-samples", cf.quotient_samples, "Monte Carlo samples");
    cmd->add_option("--witnesses", cf.witness_count, "witness count per row");
    cmd->add_option("--out", cf.out_dir, "report output directory");
    cmd->add_option("--profile-cache", cf.profile_cache, "profile table cache path");
}

// config text + is_json flag; a --config file is passed through verbatim
std::pair<std::string, int> config_text(const ConfigFlags& cf) {
    if (!cf.config_path.empty()) {
        std::ifstream in(cf.config_path, std::ios::binary);
        if (!in) throw CLI::ValidationError("--config", "cannot open " + cf.config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        bool json = cf.config_path.size() >= 5 &&
                    cf.config_path.substr(cf.config_path.size() - 5) == ".json";
        return {ss.str(), json ? 1 : 0};
    }
    nlohmann::json j;
    j["n"] = cf.n;
    j["sigma"] = cf.sigma;
    j["s"] = cf.s;
    j["m_list"] = cf.m_list;
    j["seed"] = cf.seed;
    j["quotient_samples"] = cf.quotient_samples;
    j["witness_count"] = cf.witness_count;
    j["lower_bound_samples"] = cf.lower_bound_samples;
    j["out_dir"] = cf.out_dir;
    j["profile_cache"] = cf.profile_cache;
    return {j.dump(), 1};
}

int report(int rc) {
    if (rc < 0) {
        std::fprintf(stderr, "error: %s\n", schrlab_last_error());
        return 2;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"schrlab: quantitative laboratory for a Schrodinger maximal-function counterexample"};
    app.require_subcommand(1);

    ConfigFlags run_cf, all_cf, suite_cf;

    auto* run = app.add_subcommand("run", "divergence sweep + CSV/JSON reports");
    add_config_flags(run, run_cf);

    auto* verify_all = app.add_subcommand("verify-all", "run every acceptance suite");
    add_config_flags(verify_all, all_cf);

    // per-suite verification
    struct SuiteCmd {
        const char* cli;
        const char* suite;
    };
    const SuiteCmd suite_cmds[] = {
        {"verify-bump-factor", "bump-factor"},
        {"verify-perturbed-sum", "perturbed-sum"},
        {"verify-lower-bound", "lower-bound"},
        {"verify-norms", "norms"},
        {"verify-pseudoconformal", "pseudoconformal"},
        {"verify-dirichlet", "dirichlet"},
        {"verify-measure", "measure"},
        {"verify-quotient", "quotient"},
        {"verify-sweep", "sweep"},
        {"verify-determinism", "determinism"},
    };
    int probes = 50;
    double fd_step = -1.0;
    std::string picked_suite;
    std::vector<CLI::App*> suite_apps;
    for (const SuiteCmd& sc : suite_cmds) {
        auto* cmd = app.add_subcommand(sc.cli, std::string("acceptance suite: ") + sc.suite);
        add_config_flags(cmd, suite_cf);
        if (std::string(sc.suite) == "pseudoconformal") {
            cmd->add_option("--probes", probes, "spectral-fit probe count");
            cmd->add_option("--fd-step", fd_step, "finite-difference spatial step");
        }
        cmd->callback([&picked_suite, sc] { picked_suite = sc.suite; });
        suite_apps.push_back(cmd);
    }

    // diophantine utilities
    int dn = 2;
    double dN = 1000.0;
    int64_t dpmin = 1;
    std::vector<double> dy;
    auto* dirichlet = app.add_subcommand("dirichlet", "simultaneous approximation search");
    dirichlet->add_option("--n", dn, "dimension")->required();
    dirichlet->add_option("--N", dN, "range parameter")->required();
    dirichlet->add_option("--y", dy, "target coordinates")->required();
    dirichlet->add_option("--p-min", dpmin, "smallest denominator");

    int mn = 2;
    double mN = 1e4;
    int64_t msamples = 100000;
    uint64_t mseed = 1;
    auto* measure = app.add_subcommand("measure-s", "Monte Carlo measure of the good set");
    measure->add_option("--n", mn, "dimension");
    measure->add_option("--N", mN, "range parameter");
    measure->add_option("--samples", msamples, "sample count");
    measure->add_option("--seed", mseed, "RNG seed");

    ConfigFlags qm_cf;
    int64_t qm_m = 20;
    int64_t qm_samples = 10000;
    auto* qmeasure = app.add_subcommand("quotient-measure", "measure of the representable set");
    add_config_flags(qmeasure, qm_cf);
    qmeasure->add_option("--quotient-m", qm_m, "lattice parameter for the quotient sets");
    qmeasure->add_option("--samples", qm_samples, "sample count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            auto [text, is_json] = config_text(run_cf);
            return report(schrlab_run(text.c_str(), is_json));
        }
        if (*verify_all) {
            auto [text, is_json] = config_text(all_cf);
            return report(schrlab_verify_all(text.c_str(), is_json));
        }
        if (!picked_suite.empty()) {
            auto [text, is_json] = config_text(suite_cf);
            return report(
                schrlab_verify_suite(picked_suite.c_str(), text.c_str(), is_json, probes, fd_step));
        }
        if (*dirichlet) {
            if (int(dy.size()) != dn) {
                std::fprintf(stderr, "error: --y needs exactly n coordinates\n");
                return 2;
            }
            int64_t p = 0;
            double err = 0;
            int found = 0;
            int rc = schrlab_dirichlet_search(dy.data(), dn, dN, dpmin, &p, &err, &found);
            if (rc != SCHRLAB_OK) return report(-rc);
            std::printf("found=%d p=%" PRId64 " error=%.17g bound=%.17g\n", found, p, err,
                        std::pow(dN, -1.0 / dn));
            return found ? 0 : 1;
        }
        if (*measure) {
            double val = 0, hw = 0;
            int rc = schrlab_measure_s(mN, mn, msamples, mseed, &val, &hw);
            if (rc != SCHRLAB_OK) return report(-rc);
            std::printf("measure_S=%.17g half_width=%.17g samples=%" PRId64 "\n", val, hw,
                        msamples);
            return 0;
        }
        if (*qmeasure) {
            schrlab_profile* pf = nullptr;
            schrlab_constants* pc = nullptr;
            schrlab_experiment* ex = nullptr;
            int rc = schrlab_profile_build(qm_cf.n, qm_cf.profile_cache.c_str(), &pf);
            if (rc == SCHRLAB_OK) rc = schrlab_constants_derive(pf, 1e6, 400, 2024, &pc);
            if (rc == SCHRLAB_OK)
                rc = schrlab_experiment_create(pf, pc, qm_cf.n, qm_cf.sigma, qm_m, qm_cf.s, 0, &ex);
            double val = 0, hw = 0;
            if (rc == SCHRLAB_OK) rc = schrlab_quotient_measure(ex, qm_samples, qm_cf.seed, &val, &hw);
            schrlab_experiment_free(ex);
            schrlab_constants_free(pc);
            schrlab_profile_free(pf);
            if (rc != SCHRLAB_OK) return report(-rc);
            std::printf("quotient_measure=%.17g half_width=%.17g samples=%" PRId64 "\n", val, hw,
                        qm_samples);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
