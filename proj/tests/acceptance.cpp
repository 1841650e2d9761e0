// Acceptance gate: runs every verification suite at full budget against the
// pinned configuration and prints one line per criterion.
#include <cstdio>
#include <vector>

#include "schrlab/harness.hpp"
#include "schrlab/profile.hpp"

using namespace lab;

int main() {
    RunConfig cfg;
    cfg.n = 2;
    cfg.sigma = 0.2;
    cfg.s = 0.15;
    cfg.m_list = {12, 16, 20, 24};
    cfg.seed = 2024;
    cfg.quotient_samples = 10000;
    cfg.witness_count = 48;
    cfg.lower_bound_samples = 200;
    cfg.out_dir = "/tmp/schrlab_acceptance_out";
    cfg.profile_cache = "/tmp/schrlab_profile2.json";
    cfg.validate();

    BumpProfile pf = load_or_build_profile(cfg.n, cfg.profile_cache);
    ProofConstants pc = derive_constants(pf, 1e6, 400, 2024);

    std::vector<SuiteResult> suites;
    suites.push_back(suite_dirichlet(cfg.seed));
    suites.push_back(suite_measure(cfg.seed));
    suites.push_back(suite_bump_factor(pf, pc, cfg.seed));
    suites.push_back(suite_perturbed_sum(cfg.seed));
    suites.push_back(suite_lower_bound(pf, pc, cfg.seed));
    suites.push_back(suite_norms(pf, pc));
    suites.push_back(suite_pseudoconformal(pf, pc, cfg.seed));
    suites.push_back(suite_quotient(pf, pc, cfg.seed));
    suites.push_back(suite_sweep(cfg, pf, pc));
    suites.push_back(suite_determinism(cfg, pf, pc));

    bool all = true;
    for (size_t i = 0; i < suites.size(); i++) {
        std::printf("criterion %zu (%s): %s — %s\n", i + 1, suites[i].name.c_str(),
                    suites[i].pass ? "PASS" : "FAIL", suites[i].detail.c_str());
        std::fflush(stdout);
        all = all && suites[i].pass;
    }
    std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}
