#pragma once

#include "schrlab/config.hpp"
#include "schrlab/diophantine.hpp"
#include "schrlab/pseudoconformal.hpp"

namespace lab {

struct MaximalLB {
    double value = 0;        // sqrt(measure(Y)) * min witness amplitude
    double min_amp = 0;      // min |v| over the witness sample
    double min_amp_time = 0; // big-clock witness time of that minimum
    MeasureEstimate quotient;
    int witnesses = 0;
};

MaximalLB maximal_lower_bound(const ExperimentParams& p, const FrequencySet& freq,
                              const BumpProfile& pf, int witness_count, int64_t quotient_samples,
                              uint64_t seed);

struct DivergenceRow {
    int64_t m = 0;
    double R = 0;
    int64_t omega_size = 0;
    double u0_l2 = 0, v0_l2 = 0;
    double maximal_l2_lower = 0;
    double ratio = 0;
    double witness_min_amp = 0;
    double witness_min_time = 0;
    MeasureEstimate quotient;
    uint64_t seed = 0;
};

struct SweepResult {
    std::vector<DivergenceRow> rows;
    double slope = 0;  // log-log fit of ratio vs R
    bool monotone = false;
};

DivergenceRow sweep_row(const RunConfig& cfg, int64_t m, const BumpProfile& pf,
                        const ProofConstants& pc);
SweepResult divergence_sweep(const RunConfig& cfg, const BumpProfile& pf,
                             const ProofConstants& pc);

std::string sweep_csv(const SweepResult& res);
// writes <out_dir>/sweep.csv and <out_dir>/sweep.json (config + fingerprint + content hash)
void report_emit(const SweepResult& res, const RunConfig& cfg, const BumpProfile& pf);

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
    std::string csv;  // optional row dump
};

// acceptance suites (criteria 1-10); budgets default to the pinned acceptance
// values, scaled down by `quick` for CLI smoke verification
SuiteResult suite_dirichlet(uint64_t seed, bool quick = false);
SuiteResult suite_measure(uint64_t seed, bool quick = false);
SuiteResult suite_bump_factor(const BumpProfile& pf, const ProofConstants& pc, uint64_t seed,
                         bool quick = false);
SuiteResult suite_perturbed_sum(uint64_t seed, bool quick = false);
SuiteResult suite_lower_bound(const BumpProfile& pf, const ProofConstants& pc, uint64_t seed,
                       bool quick = false);
SuiteResult suite_norms(const BumpProfile& pf, const ProofConstants& pc);
SuiteResult suite_pseudoconformal(const BumpProfile& pf, const ProofConstants& pc, uint64_t seed,
                                  int probes = 50, double fd_step = -1.0);
SuiteResult suite_quotient(const BumpProfile& pf, const ProofConstants& pc, uint64_t seed,
                           bool quick = false);
SuiteResult suite_sweep(const RunConfig& cfg, const BumpProfile& pf, const ProofConstants& pc);
SuiteResult suite_determinism(const RunConfig& cfg, const BumpProfile& pf,
                              const ProofConstants& pc);

int run_command(const RunConfig& cfg);     // `lab run`: sweep + reports; 0 iff checks pass
int verify_all_command(const RunConfig& cfg);

}  // namespace lab
