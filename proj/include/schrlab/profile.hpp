#pragma once

#include "schrlab/common.hpp"

namespace lab {

// C-infinity glue: psi(t) = exp(-1/t) for t > 0, else 0;
// step(t) = psi(t) / (psi(t) + psi(1-t)) rises 0 -> 1 on [0,1].
double glue_psi(double t);
double glue_step(double t);

struct AnnularCutoff {
    int n = 2;
    double r_supp_in = 0, r_one_in = 0, r_one_out = 0, r_supp_out = 0;
    double operator()(double r) const;
};

AnnularCutoff build_cutoff(int n);

struct RadialTable {
    double h = 0;
    std::vector<double> v;
    double r_end() const { return v.empty() ? 0.0 : h * double(v.size() - 1); }
    double eval(double r) const;  // 4-point Lagrange; 0 beyond table end
};

struct GridSpec {
    double main_h = 1.25e-4;
    double main_end = 18.0;
    double hole_h = 0.05;
    double hole_end = 6000.0;
};

// theta = (inverse transform of the full cutoff) = main_part - hole_part,
// where main_part transforms the outer window alone (annulus with the hole
// filled in: smooth on the outer scale, decays fast) and hole_part transforms
// the small inner filling window (tiny amplitude, decays slowly because the
// pinned inner transition is narrow). Splitting keeps both tables at their
// natural resolution; a single table for theta would need ~1e8 entries.
struct BumpProfile {
    AnnularCutoff cutoff;
    GridSpec grid;
    RadialTable main_part;
    RadialTable hole_part;
    double l1_norm = 0, l2_norm = 0, theta_at_zero = 0;
    double tail_h = 0;
    std::vector<double> tail_cum;  // raw |theta| mass outside r_i, on tail grid
    double tail_beyond = 0;        // allowance for mass beyond the table end

    int n() const { return cutoff.n; }
    double theta(double r) const;
    double tail_raw(double r) const;
    // certified bound: raw quadrature x2 safety factor
    double tail_mass(double r) const { return 2.0 * tail_raw(r); }
    double r_support_end() const { return hole_part.r_end(); }
    double main_end() const { return main_part.r_end(); }

    std::string fingerprint() const;
    std::string to_json() const;
    static BumpProfile from_json(const std::string& text);
};

BumpProfile build_profile(const AnnularCutoff& cutoff, const GridSpec& grid = {});
// cache_path empty -> always build
BumpProfile load_or_build_profile(int n, const std::string& cache_path);

struct ProofConstants {
    int n = 0;
    double c_tail = 0;
    double eps1_rigorous = 0;
    double eps1_empirical = 0;
    double eps2 = 0;
    double eps3 = 0;
    double r_min = 0;            // rigorous floor; promoted if the request is infeasible
    double r_min_requested = 0;
    double r_min_empirical = 0;  // floor for the empirically validated tier
    double l1 = 0, l2 = 0, theta0 = 0;
    int validation_samples = 0;
    double validation_worst = 0;  // max |bump-factor integral - 1| over validation draws

    std::string to_json() const;
    static ProofConstants from_json(const std::string& text);
};

ProofConstants derive_constants(const BumpProfile& pf, double r_min, int validation_budget,
                                uint64_t seed = 2024);

}  // namespace lab
