#include "schrlab/lattice.hpp"

#include <algorithm>

namespace lab {

ExperimentParams build_params(int n, double sigma, int64_t m, double s, const ProofConstants& pc,
                              bool toy) {
    if (n != pc.n) throw Error(ERR_INVALID_ARG, "dimension mismatch between params and constants");
    if (!(sigma > 0 && sigma < 0.5)) throw Error(ERR_INVALID_ARG, "sigma must lie in (0, 1/2)");
    if (m < 2) throw Error(ERR_INVALID_ARG, "m must be >= 2");
    if (!(s >= 0)) throw Error(ERR_INVALID_ARG, "s must be >= 0");
    ExperimentParams p;
    p.n = n;
    p.sigma = sigma;
    p.m = m;
    p.R = std::pow(double(m), 1.0 / sigma);
    p.s = s;
    p.pc = pc;
    p.toy = toy;
    if (!toy && p.R < pc.r_min_empirical)
        throw Error(ERR_INVALID_ARG, "scale below validated floor: R < r_min_empirical (pass toy for small-scale configs)");
    if (p.eps1() * std::pow(p.R, sigma) < 1.0)
        throw Error(ERR_INVALID_ARG, "degenerate-frequency-set: eps1 R^sigma < 1");
    return p;
}

FrequencySet build_frequency_set(const ExperimentParams& p) {
    FrequencySet fs;
    fs.n = p.n;
    fs.spacing = p.freq_spacing();
    fs.radius = p.eps1() * p.R;
    // |xi| < eps1 R  <=>  |a| < eps1 m on the integer lattice
    double amax = p.eps1() * double(p.m);
    int64_t cap = int64_t(std::floor(amax)) + 1;
    double amax2 = amax * amax;
    auto push = [&](int64_t a0, int64_t a1, int64_t a2) {
        double n2 = double(a0 * a0 + a1 * a1 + a2 * a2);
        if (!(n2 < amax2)) return;
        FreqPoint fp;
        fp.a = {a0, a1, a2};
        fp.a_norm2 = a0 * a0 + a1 * a1 + a2 * a2;
        for (int d = 0; d < 3; d++) fp.xi[d] = double(fp.a[d]) * fs.spacing;
        fs.points.push_back(fp);
    };
    if (p.n == 2) {
        for (int64_t a0 = -cap; a0 <= cap; a0++)
            for (int64_t a1 = -cap; a1 <= cap; a1++) push(a0, a1, 0);
    } else {
        for (int64_t a0 = -cap; a0 <= cap; a0++)
            for (int64_t a1 = -cap; a1 <= cap; a1++)
                for (int64_t a2 = -cap; a2 <= cap; a2++) push(a0, a1, a2);
    }
    if (fs.points.empty()) throw Error(ERR_NUMERIC, "degenerate-frequency-set: Omega is empty");
    return fs;
}

std::optional<std::array<int64_t, 3>> SpatialPattern::member_index(const double* x) const {
    double r2 = 0;
    for (int d = 0; d < n; d++) r2 += x[d] * x[d];
    if (!(r2 >= ann_lo * ann_lo && r2 <= ann_hi * ann_hi)) return std::nullopt;
    std::array<int64_t, 3> k{};
    for (int d = 0; d < n; d++) {
        k[d] = int64_t(std::llround(x[d] / center_spacing));
        if (std::fabs(x[d] - double(k[d]) * center_spacing) > box_radius) return std::nullopt;
    }
    return k;
}

SpatialPattern::Sample SpatialPattern::sample(Rng& rng, double rlo, double rhi) const {
    if (rlo < 0) rlo = ann_lo;
    if (rhi < 0) rhi = ann_hi;
    Sample s;
    // rejection from the annulus bounding box onto centers, then a uniform
    // offset inside the box; membership is re-checked at the perturbed point
    for (int attempt = 0; attempt < 100000; attempt++) {
        double cand[3] = {0, 0, 0};
        double r2 = 0;
        for (int d = 0; d < n; d++) {
            cand[d] = rng.uniform(-rhi, rhi);
            r2 += cand[d] * cand[d];
        }
        if (r2 < rlo * rlo || r2 > rhi * rhi) continue;
        for (int d = 0; d < n; d++) {
            s.k[d] = int64_t(std::llround(cand[d] / center_spacing));
            s.x[d] = double(s.k[d]) * center_spacing + rng.uniform(-box_radius, box_radius);
        }
        if (member_index(s.x.data())) return s;
    }
    throw Error(ERR_NUMERIC, "sampler failed to land in the pattern (annulus too thin?)");
}

SpatialPattern build_pattern(const ExperimentParams& p, double eps2_override) {
    SpatialPattern sp;
    sp.n = p.n;
    sp.center_spacing = p.center_spacing();
    double eps2 = eps2_override < 0 ? p.pc.eps2 : eps2_override;
    sp.box_radius = eps2 / p.R;
    sp.ann_lo = 0.5;
    sp.ann_hi = 2.0 * std::sqrt(double(p.n));
    return sp;
}

TimeGrid build_time_grid(const ExperimentParams& p) {
    TimeGrid tg;
    tg.spacing = p.time_spacing();
    tg.lo = std::pow(4.0, -p.n - 1);
    tg.hi = 1.0;
    tg.j_lo = int64_t(std::ceil(tg.lo / tg.spacing));
    tg.j_hi = int64_t(std::floor(tg.hi / tg.spacing));
    if (double(tg.j_lo) * tg.spacing < tg.lo) tg.j_lo++;
    if (double(tg.j_hi) * tg.spacing > tg.hi) tg.j_hi--;
    if (tg.count() <= 0) throw Error(ERR_NUMERIC, "empty time grid");
    return tg;
}

double initial_data_hat(const double* xi, const FrequencySet& freq, const BumpProfile& pf) {
    Kahan acc;
    for (const FreqPoint& fp : freq.points) {
        double r2 = 0;
        for (int d = 0; d < freq.n; d++) {
            double diff = xi[d] - fp.xi[d];
            r2 += diff * diff;
        }
        double r = std::sqrt(r2);
        if (r < pf.r_support_end()) acc.add(pf.theta(r));
    }
    return acc.get();
}

cplx initial_data_space(const double* x, const FrequencySet& freq, const BumpProfile& pf) {
    double r2 = 0;
    for (int d = 0; d < freq.n; d++) r2 += x[d] * x[d];
    double th = pf.cutoff(std::sqrt(r2));
    KahanC acc;
    for (const FreqPoint& fp : freq.points) {
        double phase = 0;
        for (int d = 0; d < freq.n; d++) phase += x[d] * fp.xi[d];
        acc.add(std::polar(1.0, 2.0 * M_PI * phase));
    }
    return th * acc.get();
}

double u0_l2_frequency_side(const FrequencySet& freq, const BumpProfile& pf) {
    return std::sqrt(double(freq.size())) * pf.l2_norm;
}

}  // namespace lab
