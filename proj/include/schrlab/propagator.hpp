#pragma once

#include "schrlab/lattice.hpp"

namespace lab {

// Module clock: t is the module-normalized time of e^{i(t/2piR)Delta}, so the
// frequency-side multiplier is e^{-2pi i (t/R)|xi|^2}. Conversion to the
// e^{itDelta} clock (t_phys = t / (2piR)) lives in pseudoconformal/harness.

struct AmpResult {
    cplx value{};
    double quad_err = 0;
    double tail_err = 0;
    double cert() const { return quad_err + tail_err; }
};

// F(w, delta) = integral over R^n of theta(|eta|) e^{2pi i (xt.eta - delta|eta|^2)} d eta,
// with w = |xt|, delta = t/R, via exact radial reduction (Bessel/sinc kernel).
AmpResult bump_factor_radial(double w, double delta, const BumpProfile& pf, double refine = 1.0);

// Tensor-grid evaluation at x~ = x - 2 t xi'/R: quadrature of
// the smooth outer part over the square |eta|_inf <= main_end, plus exact
// radial quadrature of the inner-hole part over the full numerical support
// (a pure tensor grid over the whole support is infeasible; see README).
// quad_err is the observed Richardson delta (step halving), tail_err certified.
AmpResult bump_factor_tensor(const double* x, double t, const double* xi_prime, double R,
                          const BumpProfile& pf, bool refinement_check = true);

// Sum over Omega of e^{2pi i (x.xi' - (t/R)|xi'|^2)} F(|x - 2t xi'/R|, t/R).
// plan_x, if given, fixes the quadrature panel plan as if evaluating at plan_x
// (used by finite-difference stencils so quadrature error varies smoothly).
AmpResult evolve_expsum(const double* x, double t, const FrequencySet& freq, double R,
                        const BumpProfile& pf, const double* plan_x = nullptr);

// Independent oracle: per-bump 2-D Cartesian tensor quadrature of the full
// integrand (no phase factorization, no radial reduction). n = 2 only.
AmpResult evolve_oracle(const double* x, double t, const FrequencySet& freq, double R,
                        const BumpProfile& pf);

struct PerturbedSum {
    cplx sum{};
    double lhs = 0;  // |sum - N|
    double rhs = 0;  // N (d1 max|b| + d2 max|a| + d1 d2)
};
PerturbedSum perturbed_sum_bound(const std::vector<cplx>& a, const std::vector<cplx>& b,
                                 double delta1, double delta2);

// distance of x.xi' - (t/R)|xi'|^2 to the nearest integer
double phase_distance(const double* x, double t, const double* xi_prime, int n, double R);
// exact integer identity on lattice indices: x0.xi' - (t/R)|xi'|^2 = k.a - j|a|^2
int64_t phase_residue_integer(const std::array<int64_t, 3>& k, int64_t j,
                              const std::array<int64_t, 3>& a, int n);

}  // namespace lab
