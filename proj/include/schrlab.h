#ifndef SCHRLAB_H
#define SCHRLAB_H

/* C API for the Schrodinger maximal-function laboratory.
 *
 * All functions return a status code (0 = ok) unless noted; on failure,
 * schrlab_last_error() returns a thread-local message. Output parameters are
 * only written on success. Handles are opaque and must be released with the
 * matching free function. Handles are immutable after creation and safe to
 * share across threads. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    SCHRLAB_OK = 0,
    SCHRLAB_ERR_INVALID_ARG = 1,
    SCHRLAB_ERR_IO = 2,
    SCHRLAB_ERR_NUMERIC = 3,
    SCHRLAB_ERR_UNSUPPORTED = 4,
};

typedef struct schrlab_profile schrlab_profile;
typedef struct schrlab_constants schrlab_constants;
typedef struct schrlab_experiment schrlab_experiment;

typedef struct schrlab_complex {
    double re, im;
} schrlab_complex;

typedef struct schrlab_amp_result {
    schrlab_complex value;
    double quad_err;
    double tail_err;
} schrlab_amp_result;

const char* schrlab_last_error(void);

/* profile: build the bump profile for dimension n (2 or 3); cache_path may be
 * NULL or empty to skip caching */
int schrlab_profile_build(int n, const char* cache_path, schrlab_profile** out);
void schrlab_profile_free(schrlab_profile* pf);
int schrlab_profile_theta(const schrlab_profile* pf, double r, double* out);
int schrlab_profile_cutoff(const schrlab_profile* pf, double r, double* out);
int schrlab_profile_tail_mass(const schrlab_profile* pf, double r, double* out);
/* stats: [0]=l1, [1]=l2, [2]=theta(0), [3]=support end */
int schrlab_profile_stats(const schrlab_profile* pf, double stats[4]);

/* constants: derived from the profile; r_min is the requested rigorous floor */
int schrlab_constants_derive(const schrlab_profile* pf, double r_min, int validation_budget,
                             uint64_t seed, schrlab_constants** out);
void schrlab_constants_free(schrlab_constants* pc);
/* values: [0]=c_tail, [1]=eps1_rigorous, [2]=eps1_empirical, [3]=eps2,
 * [4]=eps3, [5]=r_min, [6]=r_min_empirical */
int schrlab_constants_values(const schrlab_constants* pc, double values[7]);

/* experiment: n, sigma in (0,1/2), lattice parameter m (R = m^{1/sigma}),
 * Sobolev exponent s; toy != 0 relaxes the validated scale floor */
int schrlab_experiment_create(const schrlab_profile* pf, const schrlab_constants* pc, int n,
                              double sigma, int64_t m, double s, int toy,
                              schrlab_experiment** out);
void schrlab_experiment_free(schrlab_experiment* ex);
int schrlab_experiment_omega_size(const schrlab_experiment* ex, int64_t* out);
int schrlab_experiment_scale(const schrlab_experiment* ex, double* out_R);

/* solution evaluation in the lattice clock (multiplier e^{-2 pi i (t/R)|xi|^2}) */
int schrlab_evolve_expsum(const schrlab_experiment* ex, const double* x, double t,
                          schrlab_amp_result* out);
int schrlab_evolve_oracle(const schrlab_experiment* ex, const double* x, double t,
                          schrlab_amp_result* out);
int schrlab_initial_data(const schrlab_experiment* ex, const double* x, schrlab_complex* out);

/* diophantine */
int schrlab_dirichlet_search(const double* y, int n, double N, int64_t p_min, int64_t* out_p,
                             double* out_error, int* out_found);
int schrlab_measure_s(double N, int n, int64_t samples, uint64_t seed, double* out_value,
                      double* out_half_width);
int schrlab_quotient_measure(const schrlab_experiment* ex, int64_t samples, uint64_t seed,
                             double* out_value, double* out_half_width);

/* full pipeline: config is a TOML or JSON document (see README); these mirror
 * the `lab run` / `lab verify-all` subcommands and return the process-style
 * exit code (0 = all checks passed, 1 = a check failed, negative = error) */
int schrlab_run(const char* config_text, int is_json);
int schrlab_verify_all(const char* config_text, int is_json);

/* run one acceptance suite by name: dirichlet, measure, bump-factor, perturbed-sum, lower-bound,
 * norms, pseudoconformal, quotient, sweep, determinism. probes <= 0 and
 * fd_step <= 0 select defaults (only the pseudoconformal suite reads them). */
int schrlab_verify_suite(const char* suite, const char* config_text, int is_json, int probes,
                         double fd_step);

#ifdef __cplusplus
}
#endif

#endif /* SCHRLAB_H */
