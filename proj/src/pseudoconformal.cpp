#include "schrlab/pseudoconformal.hpp"

#include <algorithm>

#include "schrlab/bessel.hpp"
#include "schrlab/quadrature.hpp"

namespace lab {

namespace {

inline double radial_kernel(int n, double w, double rho) {
    if (n == 2) return 2.0 * M_PI * rho * fast_j0(2.0 * M_PI * w * rho);
    double z = 2.0 * M_PI * w * rho;
    double sinc = std::fabs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
    return 4.0 * M_PI * rho * rho * sinc;
}

}  // namespace

cplx transform_amplitude(const FieldEval& u, const double* x, double t, int n) {
    if (!(t > 0)) throw Error(ERR_INVALID_ARG, "singular-time: pseudoconformal transform needs t > 0");
    double xs[3] = {0, 0, 0};
    double r2 = 0;
    for (int d = 0; d < n; d++) {
        xs[d] = x[d] / t;
        r2 += x[d] * x[d];
    }
    cplx uval = u(xs, 1.0 / t);
    return std::pow(t, -0.5 * n) * std::conj(uval) * std::polar(1.0, r2 / (4.0 * t));
}

FieldEval make_u_evaluator(const FrequencySet& freq, double R, const BumpProfile& pf) {
    return [&freq, R, &pf](const double* x, double t_phys) -> cplx {
        return evolve_expsum(x, 2.0 * M_PI * R * t_phys, freq, R, pf).value;
    };
}

Witness make_witness(const std::array<double, 3>& xprime, const std::array<int64_t, 3>& k,
                     double tprime, double R, int n) {
    if (!(tprime > 0)) throw Error(ERR_INVALID_ARG, "singular-time: witness needs t' > 0");
    Witness w;
    w.xprime = xprime;
    w.k = k;
    w.tprime = tprime;
    for (int d = 0; d < n; d++) w.x_big[d] = 2.0 * M_PI * R * xprime[d] / tprime;
    w.t_big = 2.0 * M_PI * R / tprime;
    return w;
}

cplx spectral_c_analytic(int n) {
    return std::polar(std::pow(4.0 * M_PI, 0.5 * n), M_PI * double(n) / 4.0);
}

cplx vhat0_numeric(const double* y, const FrequencySet& freq, const BumpProfile& pf) {
    int n = freq.n;
    double r2 = 0;
    for (int d = 0; d < n; d++) r2 += y[d] * y[d];
    double r4 = 4.0 * M_PI * std::sqrt(r2);
    // fresh forward transform of the theta table (the position-side envelope
    // of u0); independent of the closed-form cutoff
    cplx H = bump_factor_radial(r4, 0.0, pf).value;
    KahanC sum;
    for (const FreqPoint& fp : freq.points) {
        double phase = 0;
        for (int d = 0; d < n; d++) phase += y[d] * fp.xi[d];
        sum.add(std::polar(1.0, -8.0 * M_PI * M_PI * phase));
    }
    return spectral_c_analytic(n) * H * sum.get();
}

SpectralConstant fit_spectral_constant(const FrequencySet& freq, double R, const BumpProfile& pf,
                                       int probes, uint64_t seed) {
    (void)R;
    int n = freq.n;
    double thresh_sum = 0.2 * std::sqrt(double(freq.size()));
    Rng rng(seed, stream_id(5, uint64_t(probes)));
    std::vector<cplx> ratios;
    for (int attempt = 0; attempt < 400 * probes && int(ratios.size()) < probes; attempt++) {
        double r = rng.uniform(0.05, 2.0);
        if (pf.cutoff(r) < 0.3) continue;
        double dir[3] = {0, 0, 0};
        double nn = 0;
        do {
            nn = 0;
            for (int d = 0; d < n; d++) {
                dir[d] = rng.uniform(-1, 1);
                nn += dir[d] * dir[d];
            }
        } while (nn > 1.0 || nn < 1e-12);
        double y[3] = {0, 0, 0};
        for (int d = 0; d < n; d++) y[d] = (r / (4.0 * M_PI)) * dir[d] / std::sqrt(nn);
        // denominator: u0 at 4 pi y from the closed-form envelope and the
        // exact phase sum
        KahanC sum;
        for (const FreqPoint& fp : freq.points) {
            double phase = 0;
            for (int d = 0; d < n; d++) phase += 4.0 * M_PI * y[d] * fp.xi[d];
            sum.add(std::polar(1.0, 2.0 * M_PI * phase));
        }
        cplx S = sum.get();
        if (std::abs(S) < thresh_sum) continue;
        cplx denom = pf.cutoff(r) * S;
        ratios.push_back(vhat0_numeric(y, freq, pf) / denom);
    }
    if (int(ratios.size()) < probes)
        throw Error(ERR_NUMERIC, "degenerate-probe-set: not enough probes above threshold");
    auto median_of = [](std::vector<double> v) {
        std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
        return v[v.size() / 2];
    };
    std::vector<double> re, im;
    for (const cplx& z : ratios) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    SpectralConstant sc;
    sc.c_value = {median_of(re), median_of(im)};
    sc.probes_used = int(ratios.size());
    double worst = 0;
    for (const cplx& z : ratios) worst = std::max(worst, std::abs(z - sc.c_value));
    sc.fit_residual = worst / std::abs(sc.c_value);
    return sc;
}

AmpResult evolve_v0_direct(const double* x, double t_phys, const FrequencySet& freq,
                           const BumpProfile& pf, int n) {
    if (!(t_phys > 0)) throw Error(ERR_INVALID_ARG, "singular-time: direct evolution needs t > 0");
    double me = pf.main_end(), he = pf.r_support_end();

    // v(x,t) = t^{-n/2} sum over xi' of e^{i|b|^2/4t} I(b), b = x - 4 pi xi',
    // I(b) = integral of theta(rho) kernel(n, |b|/t, rho) e^{i 4 pi^2 rho^2 / t} drho
    auto bump = [&](const FreqPoint& fp, double refine) -> cplx {
        double b2 = 0;
        for (int d = 0; d < n; d++) {
            double bd = x[d] - 4.0 * M_PI * fp.xi[d];
            b2 += bd * bd;
        }
        double wb = std::sqrt(b2) / t_phys;
        KahanC acc;
        auto add_range = [&](double a, double bnd, double omega, int64_t min_panels,
                             auto&& amp) {
            int64_t panels = std::max<int64_t>(
                min_panels, (int64_t)std::ceil(plan_panels(a, bnd, omega).panels * refine));
            double pw = (bnd - a) / double(panels);
            for (int64_t k = 0; k < panels; k++) {
                double half = 0.5 * pw, mid = a + pw * double(k) + half;
                for (int j = 0; j < 16; j++) {
                    double rho = mid + half * GL16_X[j];
                    double th = amp(rho);
                    if (th == 0.0) continue;
                    acc.add(th * radial_kernel(n, wb, rho) * (half * GL16_W[j]) *
                            std::polar(1.0, 4.0 * M_PI * M_PI * rho * rho / t_phys));
                }
            }
        };
        double chirp_main = 8.0 * M_PI * M_PI * me / t_phys;
        double chirp_tail = 8.0 * M_PI * M_PI * he / t_phys;
        add_range(0.0, me, 2.0 * M_PI * (wb + pf.cutoff.r_supp_out) + chirp_main, 12,
                  [&](double rho) { return pf.theta(rho); });
        add_range(me, he, 2.0 * M_PI * wb + chirp_tail + 0.02, 4,
                  [&](double rho) { return -pf.hole_part.eval(rho); });
        return std::polar(1.0, b2 / (4.0 * t_phys)) * acc.get();
    };

    int64_t sz = freq.size();
    std::vector<cplx> v1(sz), v2(sz);
    parallel_chunks(sz, [&](int64_t lo, int64_t hi, int) {
        for (int64_t i = lo; i < hi; i++) {
            v1[i] = bump(freq.points[i], 1.0);
            v2[i] = bump(freq.points[i], 1.5);
        }
    });
    KahanC a1, a2;
    for (int64_t i = 0; i < sz; i++) {
        a1.add(v1[i]);
        a2.add(v2[i]);
    }
    AmpResult res;
    double pref = std::pow(t_phys, -0.5 * n);
    res.value = pref * a2.get();
    res.quad_err = pref * std::abs(a2.get() - a1.get());
    res.tail_err = pref * pf.tail_mass(he) * double(sz);  // theta mass beyond the table
    return res;
}

double pde_residual(const FieldEval& f, const double* x, double t_phys, int n, double hx,
                    double ht) {
    if (!(t_phys > 2.0 * ht)) throw Error(ERR_INVALID_ARG, "pde_residual needs t > 2 ht");
    cplx f0 = f(x, t_phys);
    cplx dt = (f(x, t_phys + ht) - f(x, t_phys - ht)) / (2.0 * ht);
    cplx lap = 0;
    double xp[3] = {0, 0, 0};
    for (int d = 0; d < n; d++) xp[d] = x[d];
    for (int d = 0; d < n; d++) {
        xp[d] = x[d] + hx;
        cplx fp = f(xp, t_phys);
        xp[d] = x[d] - hx;
        cplx fm = f(xp, t_phys);
        xp[d] = x[d];
        lap += (fp - 2.0 * f0 + fm) / (hx * hx);
    }
    return std::abs(cplx(0, 1) * dt + lap);
}

}  // namespace lab
