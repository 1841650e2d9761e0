#pragma once

#include "schrlab/lattice.hpp"

namespace lab {

struct ApproxResult {
    int64_t p = 0;
    double error = 0;  // max_i ||p y_i||
    bool found = false;
    double bound_n = 0;
};

// smallest p in [p_min, floor(N)+2] with max_i ||p y_i|| <= N^{-1/n}
ApproxResult dirichlet_search(const double* y, int n, double N, int64_t p_min = 1);

struct MeasureEstimate {
    double value = 0;
    double half_width = 0;  // 95% normal-approximation, 0 for exact
    int64_t samples = 0;
    enum Method { EXACT, MONTE_CARLO, GRID } method = EXACT;
};

MeasureEstimate measure_Ap(int64_t p, double N, int n);         // exact: min(1, 2N^{-1/n})^n
double crude_Ap_bound(int64_t p, double N, int n);              // (p+1)^n (2/(N^{1/n} p))^n
MeasureEstimate bad_union_bound(double N, int n);               // sum over p <= 4^{-n-1}N
MeasureEstimate measure_S(double N, int n, int64_t samples, uint64_t seed);
MeasureEstimate measure_S_grid(double N, int n, double resolution);

struct QuotientParams {
    int n = 2;
    int64_t m = 20;
    double R = 0;
    double eps2 = 0;     // coverage-tier value (see eps2_coverage_required)
    double P = 0;        // R^{1-2sigma} = R/m^2
    double N = 0;        // P - 2
    int64_t p_lo = 0, p_hi = 0;
    double k_lo = 0, k_hi = 0;  // Euclidean |k| window for U
};

// smallest eps2 making the threshold identity eps2 p R^sigma / R >= N^{-1/n}
// hold for every p >= 4^{-n-1} R^{1-2sigma}; equals 4^{n+1} m N^{-1/n}
double eps2_coverage_required(const ExperimentParams& p);
QuotientParams make_quotient_params(const ExperimentParams& p, double eps2 = -1.0);

struct QuotientFlags {
    bool U = false, V = false, W = false, V0 = false;
};
QuotientFlags quotient_membership(const double* x, const QuotientParams& q);

struct QuotientMeasures {
    MeasureEstimate U, V, W, V0;
};
MeasureEstimate quotient_measure(const QuotientParams& q, int64_t samples, uint64_t seed);
QuotientMeasures quotient_measures(const QuotientParams& q, int64_t samples, uint64_t seed);

// min over axes of the chi-square p-value for x -> {m x} pushforward uniformity
double uniformity_chi2_pvalue(int64_t m, int n, int64_t samples, int bins, uint64_t seed);

// regularized upper incomplete gamma Q(a, x) (for the chi-square tail)
double gamma_q(double a, double x);

}  // namespace lab
