#pragma once

#include "schrlab/propagator.hpp"

namespace lab {

// field evaluators work in the e^{itDelta} clock (physical time)
using FieldEval = std::function<cplx(const double* x, double t_phys)>;

// v(x,t) = t^{-n/2} conj(u(x/t, 1/t)) e^{i|x|^2/(4t)}
cplx transform_amplitude(const FieldEval& u, const double* x, double t, int n);

// physical-clock evaluator for the lattice solution u
FieldEval make_u_evaluator(const FrequencySet& freq, double R, const BumpProfile& pf);

struct Witness {
    std::array<double, 3> xprime{};
    std::array<int64_t, 3> k{};
    double tprime = 0;
    std::array<double, 3> x_big{};  // 2piR x'/t'
    double t_big = 0;               // 2piR/t'
};
Witness make_witness(const std::array<double, 3>& xprime, const std::array<int64_t, 3>& k,
                     double tprime, double R, int n);

// pinned constants for "t <~ R" and "B(0,R)" (smallest making every witness admissible)
inline double witness_time_cap(int n) { return 2.0 * M_PI * std::pow(4.0, n + 1); }         // C_t
inline double witness_ball_cap(int n) { return witness_time_cap(n) * 2.0 * std::sqrt(n); }  // C_x

// spectral pairing constant under the fixed convention, derived via the Fresnel kernel:
// C = (4pi)^{n/2} i^{n/2}
cplx spectral_c_analytic(int n);

struct SpectralConstant {
    cplx c_value{};
    double fit_residual = 0;
    int probes_used = 0;
};
// measures C: per-probe ratio of the numerically transformed v0 (from the
// theta table) to the exact windowed exponential sum u0(4py)
SpectralConstant fit_spectral_constant(const FrequencySet& freq, double R, const BumpProfile& pf,
                                       int probes = 50, uint64_t seed = 7);

// hat{v0} at y from the theta-table route (used by fit and the support test)
cplx vhat0_numeric(const double* y, const FrequencySet& freq, const BumpProfile& pf);

// direct evolution of v0 built from its spectral form: per-bump radial quadrature
// of the theta table against the physical-clock phase; independent of the
// pseudoconformal factorization
AmpResult evolve_v0_direct(const double* x, double t_phys, const FrequencySet& freq,
                           const BumpProfile& pf, int n);

// second-order centered residual of i d_t + Laplacian at (x, t_phys)
double pde_residual(const FieldEval& f, const double* x, double t_phys, int n, double hx,
                    double ht);

}  // namespace lab
