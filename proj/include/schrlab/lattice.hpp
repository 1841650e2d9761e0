#pragma once

#include <array>
#include <optional>

#include "schrlab/common.hpp"
#include "schrlab/profile.hpp"

namespace lab {

struct ExperimentParams {
    int n = 2;
    double sigma = 0.2;
    int64_t m = 20;
    double R = 0;  // = m^{1/sigma}, derived
    double s = 0.15;
    ProofConstants pc;
    bool toy = false;  // relaxed validity floor for small-R oracle configs

    double eps1() const { return pc.eps1_empirical; }
    double freq_spacing() const { return R / double(m); }       // R^{1-sigma}
    double center_spacing() const { return double(m) / R; }     // R^{sigma-1}
    double time_spacing() const { return double(m) * double(m) / R; }  // R^{2sigma-1}
};

ExperimentParams build_params(int n, double sigma, int64_t m, double s, const ProofConstants& pc,
                              bool toy = false);

struct FreqPoint {
    std::array<int64_t, 3> a{};   // integer lattice index
    std::array<double, 3> xi{};   // a * spacing
    int64_t a_norm2 = 0;          // |a|^2 (exact)
};

struct FrequencySet {
    int n = 2;
    double spacing = 0;
    double radius = 0;
    std::vector<FreqPoint> points;
    int64_t size() const { return int64_t(points.size()); }
};

FrequencySet build_frequency_set(const ExperimentParams& p);

struct SpatialPattern {
    int n = 2;
    double center_spacing = 0;
    double box_radius = 0;  // sup-norm half width = eps2/R
    double ann_lo = 0, ann_hi = 0;

    struct Sample {
        std::array<double, 3> x{};
        std::array<int64_t, 3> k{};
    };

    std::optional<std::array<int64_t, 3>> member_index(const double* x) const;
    bool membership(const double* x) const { return member_index(x).has_value(); }
    // uniform over the represented set, optionally restricted to |x| in [rlo, rhi]
    Sample sample(Rng& rng, double rlo = -1.0, double rhi = -1.0) const;
};

// eps2_override < 0 -> use pc.eps2 (phase tier)
SpatialPattern build_pattern(const ExperimentParams& p, double eps2_override = -1.0);

struct TimeGrid {
    double spacing = 0;
    double lo = 0, hi = 1;
    int64_t j_lo = 0, j_hi = -1;  // inclusive index range; t = j * spacing
    int64_t count() const { return j_hi < j_lo ? 0 : j_hi - j_lo + 1; }
    double t(int64_t idx) const { return double(j_lo + idx) * spacing; }
    int64_t j(int64_t idx) const { return j_lo + idx; }
};

TimeGrid build_time_grid(const ExperimentParams& p);

double initial_data_hat(const double* xi, const FrequencySet& freq, const BumpProfile& pf);
cplx initial_data_space(const double* x, const FrequencySet& freq, const BumpProfile& pf);
// sqrt(|Omega|) * l2(theta); valid when bump supports are disjoint (spacing
// >= 2 * numerical support), which holds at every non-toy scale
double u0_l2_frequency_side(const FrequencySet& freq, const BumpProfile& pf);

}  // namespace lab
