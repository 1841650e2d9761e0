#include "schrlab.h"

#include "schrlab/harness.hpp"

using namespace lab;

namespace {

thread_local std::string g_last_error;

int set_error(const std::exception& e, int code) {
    g_last_error = e.what();
    return code;
}

template <typename F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        return set_error(e, e.code);
    } catch (const std::exception& e) {
        return set_error(e, SCHRLAB_ERR_NUMERIC);
    }
}

int require(bool cond, const char* msg) {
    if (cond) return SCHRLAB_OK;
    g_last_error = msg;
    return SCHRLAB_ERR_INVALID_ARG;
}

}  // namespace

struct schrlab_profile {
    BumpProfile pf;
};
struct schrlab_constants {
    ProofConstants pc;
};
struct schrlab_experiment {
    const schrlab_profile* pf;
    ExperimentParams params;
    FrequencySet freq;
};

extern "C" {

const char* schrlab_last_error(void) { return g_last_error.c_str(); }

int schrlab_profile_build(int n, const char* cache_path, schrlab_profile** out) {
    if (int rc = require(out != nullptr, "out is NULL")) return rc;
    return guarded([&] {
        auto* h = new schrlab_profile{load_or_build_profile(n, cache_path ? cache_path : "")};
        *out = h;
        return SCHRLAB_OK;
    });
}

void schrlab_profile_free(schrlab_profile* pf) { delete pf; }

int schrlab_profile_theta(const schrlab_profile* pf, double r, double* out) {
    if (int rc = require(pf && out, "NULL argument")) return rc;
    *out = pf->pf.theta(r);
    return SCHRLAB_OK;
}

int schrlab_profile_cutoff(const schrlab_profile* pf, double r, double* out) {
    if (int rc = require(pf && out, "NULL argument")) return rc;
    *out = pf->pf.cutoff(r);
    return SCHRLAB_OK;
}

int schrlab_profile_tail_mass(const schrlab_profile* pf, double r, double* out) {
    if (int rc = require(pf && out, "NULL argument")) return rc;
    *out = pf->pf.tail_mass(r);
    return SCHRLAB_OK;
}

int schrlab_profile_stats(const schrlab_profile* pf, double stats[4]) {
    if (int rc = require(pf && stats, "NULL argument")) return rc;
    stats[0] = pf->pf.l1_norm;
    stats[1] = pf->pf.l2_norm;
    stats[2] = pf->pf.theta_at_zero;
    stats[3] = pf->pf.r_support_end();
    return SCHRLAB_OK;
}

int schrlab_constants_derive(const schrlab_profile* pf, double r_min, int validation_budget,
                             uint64_t seed, schrlab_constants** out) {
    if (int rc = require(pf && out, "NULL argument")) return rc;
    return guarded([&] {
        auto* h = new schrlab_constants{derive_constants(pf->pf, r_min, validation_budget, seed)};
        *out = h;
        return SCHRLAB_OK;
    });
}

void schrlab_constants_free(schrlab_constants* pc) { delete pc; }

int schrlab_constants_values(const schrlab_constants* pc, double values[7]) {
    if (int rc = require(pc && values, "NULL argument")) return rc;
    values[0] = pc->pc.c_tail;
    values[1] = pc->pc.eps1_rigorous;
    values[2] = pc->pc.eps1_empirical;
    values[3] = pc->pc.eps2;
    values[4] = pc->pc.eps3;
    values[5] = pc->pc.r_min;
    values[6] = pc->pc.r_min_empirical;
    return SCHRLAB_OK;
}

int schrlab_experiment_create(const schrlab_profile* pf, const schrlab_constants* pc, int n,
                              double sigma, int64_t m, double s, int toy,
                              schrlab_experiment** out) {
    if (int rc = require(pf && pc && out, "NULL argument")) return rc;
    return guarded([&] {
        auto* h = new schrlab_experiment;
        h->pf = pf;
        h->params = build_params(n, sigma, m, s, pc->pc, toy != 0);
        h->freq = build_frequency_set(h->params);
        *out = h;
        return SCHRLAB_OK;
    });
}

void schrlab_experiment_free(schrlab_experiment* ex) { delete ex; }

int schrlab_experiment_omega_size(const schrlab_experiment* ex, int64_t* out) {
    if (int rc = require(ex && out, "NULL argument")) return rc;
    *out = ex->freq.size();
    return SCHRLAB_OK;
}

int schrlab_experiment_scale(const schrlab_experiment* ex, double* out_R) {
    if (int rc = require(ex && out_R, "NULL argument")) return rc;
    *out_R = ex->params.R;
    return SCHRLAB_OK;
}

namespace {
void pack_amp(const AmpResult& a, schrlab_amp_result* out) {
    out->value = {a.value.real(), a.value.imag()};
    out->quad_err = a.quad_err;
    out->tail_err = a.tail_err;
}
}  // namespace

int schrlab_evolve_expsum(const schrlab_experiment* ex, const double* x, double t,
                          schrlab_amp_result* out) {
    if (int rc = require(ex && x && out, "NULL argument")) return rc;
    return guarded([&] {
        pack_amp(evolve_expsum(x, t, ex->freq, ex->params.R, ex->pf->pf), out);
        return SCHRLAB_OK;
    });
}

int schrlab_evolve_oracle(const schrlab_experiment* ex, const double* x, double t,
                          schrlab_amp_result* out) {
    if (int rc = require(ex && x && out, "NULL argument")) return rc;
    return guarded([&] {
        pack_amp(evolve_oracle(x, t, ex->freq, ex->params.R, ex->pf->pf), out);
        return SCHRLAB_OK;
    });
}

int schrlab_initial_data(const schrlab_experiment* ex, const double* x, schrlab_complex* out) {
    if (int rc = require(ex && x && out, "NULL argument")) return rc;
    return guarded([&] {
        cplx v = initial_data_space(x, ex->freq, ex->pf->pf);
        *out = {v.real(), v.imag()};
        return SCHRLAB_OK;
    });
}

int schrlab_dirichlet_search(const double* y, int n, double N, int64_t p_min, int64_t* out_p,
                             double* out_error, int* out_found) {
    if (int rc = require(y && out_p && out_error && out_found, "NULL argument")) return rc;
    return guarded([&] {
        ApproxResult r = dirichlet_search(y, n, N, p_min);
        *out_p = r.p;
        *out_error = r.error;
        *out_found = r.found ? 1 : 0;
        return SCHRLAB_OK;
    });
}

int schrlab_measure_s(double N, int n, int64_t samples, uint64_t seed, double* out_value,
                      double* out_half_width) {
    if (int rc = require(out_value && out_half_width, "NULL argument")) return rc;
    return guarded([&] {
        MeasureEstimate e = measure_S(N, n, samples, seed);
        *out_value = e.value;
        *out_half_width = e.half_width;
        return SCHRLAB_OK;
    });
}

int schrlab_quotient_measure(const schrlab_experiment* ex, int64_t samples, uint64_t seed,
                             double* out_value, double* out_half_width) {
    if (int rc = require(ex && out_value && out_half_width, "NULL argument")) return rc;
    return guarded([&] {
        MeasureEstimate e = quotient_measure(make_quotient_params(ex->params), samples, seed);
        *out_value = e.value;
        *out_half_width = e.half_width;
        return SCHRLAB_OK;
    });
}

namespace {
int pipeline(const char* config_text, int is_json, int (*cmd)(const RunConfig&)) {
    if (!config_text) {
        g_last_error = "config_text is NULL";
        return -SCHRLAB_ERR_INVALID_ARG;
    }
    try {
        RunConfig cfg = is_json ? RunConfig::from_json_text(config_text)
                                : RunConfig::from_toml_text(config_text);
        return cmd(cfg);
    } catch (const Error& e) {
        g_last_error = e.what();
        return -e.code;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return -SCHRLAB_ERR_NUMERIC;
    }
}
}  // namespace

int schrlab_run(const char* config_text, int is_json) {
    return pipeline(config_text, is_json, run_command);
}

int schrlab_verify_all(const char* config_text, int is_json) {
    return pipeline(config_text, is_json, verify_all_command);
}

int schrlab_verify_suite(const char* suite, const char* config_text, int is_json, int probes,
                         double fd_step) {
    if (!suite || !config_text) {
        g_last_error = "NULL argument";
        return -SCHRLAB_ERR_INVALID_ARG;
    }
    try {
        RunConfig cfg = is_json ? RunConfig::from_json_text(config_text)
                                : RunConfig::from_toml_text(config_text);
        cfg.validate();
        std::string name = suite;
        SuiteResult res;
        if (name == "dirichlet") {
            res = suite_dirichlet(cfg.seed);
        } else if (name == "measure") {
            res = suite_measure(cfg.seed);
        } else {
            BumpProfile pf = load_or_build_profile(cfg.n, cfg.profile_cache);
            ProofConstants pc = derive_constants(pf, 1e6, 400, 2024);
            if (name == "bump-factor")
                res = suite_bump_factor(pf, pc, cfg.seed);
            else if (name == "perturbed-sum")
                res = suite_perturbed_sum(cfg.seed);
            else if (name == "lower-bound")
                res = suite_lower_bound(pf, pc, cfg.seed);
            else if (name == "norms")
                res = suite_norms(pf, pc);
            else if (name == "pseudoconformal")
                res = suite_pseudoconformal(pf, pc, cfg.seed, probes > 0 ? probes : 50, fd_step);
            else if (name == "quotient")
                res = suite_quotient(pf, pc, cfg.seed);
            else if (name == "sweep")
                res = suite_sweep(cfg, pf, pc);
            else if (name == "determinism")
                res = suite_determinism(cfg, pf, pc);
            else
                throw Error(ERR_INVALID_ARG, "unknown suite: " + name);
        }
        std::printf("%s: %s — %s\n", res.name.c_str(), res.pass ? "PASS" : "FAIL",
                    res.detail.c_str());
        return res.pass ? 0 : 1;
    } catch (const Error& e) {
        g_last_error = e.what();
        return -e.code;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return -SCHRLAB_ERR_NUMERIC;
    }
}

}  // extern "C"
