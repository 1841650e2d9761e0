#include "schrlab/profile.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "schrlab/bessel.hpp"
#include "schrlab/config.hpp"
#include "schrlab/propagator.hpp"
#include "schrlab/quadrature.hpp"

namespace lab {

double glue_psi(double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; }

double glue_step(double t) {
    if (t <= 0) return 0.0;
    if (t >= 1) return 1.0;
    double a = glue_psi(t), b = glue_psi(1.0 - t);
    return a / (a + b);
}

double AnnularCutoff::operator()(double r) const {
    if (r <= r_supp_in || r >= r_supp_out) return 0.0;
    double rising = glue_step((r - r_supp_in) / (r_one_in - r_supp_in));
    double falling = glue_step((r_supp_out - r) / (r_supp_out - r_one_out));
    return rising * falling;
}

AnnularCutoff build_cutoff(int n) {
    if (n < 2) throw Error(ERR_INVALID_ARG, "invalid dimension: n must be >= 2");
    AnnularCutoff c;
    c.n = n;
    c.r_supp_in = std::pow(4.0, -n - 3);
    c.r_one_in = std::pow(4.0, -n - 2);
    c.r_one_out = 2.0 * std::sqrt(double(n));
    c.r_supp_out = 4.0 * std::sqrt(double(n));
    return c;
}

double RadialTable::eval(double r) const {
    r = std::fabs(r);
    if (v.size() < 4 || r >= r_end()) return 0.0;
    double u = r / h;
    int64_t i = int64_t(u);
    int64_t last = int64_t(v.size()) - 1;
    int64_t i0 = std::clamp<int64_t>(i - 1, 0, last - 3);
    double s = u - double(i0);  // in [0,3] within the 4-point stencil
    double s1 = s - 1.0, s2 = s - 2.0, s3 = s - 3.0;
    // Lagrange weights for nodes 0,1,2,3
    double w0 = -s1 * s2 * s3 / 6.0;
    double w1 = s * s2 * s3 / 2.0;
    double w2 = -s * s1 * s3 / 2.0;
    double w3 = s * s1 * s2 / 6.0;
    return w0 * v[i0] + w1 * v[i0 + 1] + w2 * v[i0 + 2] + w3 * v[i0 + 3];
}

namespace {

template <typename F>
double gl_real(double a, double b, double omega, F&& f, double min_panels = 1.0) {
    PanelPlan p = plan_panels(a, b, omega);
    int64_t n = std::max<int64_t>(p.panels, int64_t(min_panels));
    double w = (b - a) / double(n);
    Kahan acc;
    for (int64_t k = 0; k < n; k++) {
        double half = 0.5 * w, mid = a + w * double(k) + half;
        for (int j = 0; j < 16; j++) acc.add(f(mid + half * GL16_X[j]) * (half * GL16_W[j]));
    }
    return acc.get();
}

// radial inverse transform of a window supported in [0, sup_end], at radius r
template <typename W>
double radial_inverse(int n, double r, double sup_end, W&& win) {
    double omega = 2.0 * M_PI * r;
    if (n == 2) {
        return gl_real(
            0.0, sup_end, omega,
            [&](double rho) { return 2.0 * M_PI * win(rho) * fast_j0(2.0 * M_PI * r * rho) * rho; },
            8.0);
    }
    // n = 3: kernel 4 pi sinc(2 pi r rho) rho^2
    return gl_real(
        0.0, sup_end, omega,
        [&](double rho) {
            double z = 2.0 * M_PI * r * rho;
            double sinc = std::fabs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
            return 4.0 * M_PI * win(rho) * sinc * rho * rho;
        },
        8.0);
}

double surface_measure(int n, double r) {
    return n == 2 ? 2.0 * M_PI * r : 4.0 * M_PI * r * r;
}

}  // namespace

double BumpProfile::theta(double r) const { return main_part.eval(r) - hole_part.eval(r); }

double BumpProfile::tail_raw(double r) const {
    if (tail_cum.empty()) return 0.0;
    double u = r / tail_h;
    int64_t i = int64_t(u);
    int64_t last = int64_t(tail_cum.size()) - 1;
    if (i >= last) return tail_beyond;
    double frac = u - double(i);
    double val = tail_cum[i] * (1.0 - frac) + tail_cum[i + 1] * frac;
    return val + tail_beyond;
}

BumpProfile build_profile(const AnnularCutoff& cutoff, const GridSpec& grid) {
    BumpProfile pf;
    pf.cutoff = cutoff;
    pf.grid = grid;
    const int n = cutoff.n;

    auto outer_window = [&](double rho) {
        if (rho >= cutoff.r_supp_out) return 0.0;
        return glue_step((cutoff.r_supp_out - rho) / (cutoff.r_supp_out - cutoff.r_one_out));
    };
    auto hole_window = [&](double rho) {
        if (rho >= cutoff.r_one_in) return 0.0;
        double rising = rho <= cutoff.r_supp_in
                            ? 0.0
                            : glue_step((rho - cutoff.r_supp_in) / (cutoff.r_one_in - cutoff.r_supp_in));
        return outer_window(rho) * (1.0 - rising);
    };

    int64_t n_main = int64_t(std::llround(grid.main_end / grid.main_h)) + 1;
    pf.main_part.h = grid.main_h;
    pf.main_part.v.resize(n_main);
    parallel_chunks(n_main, [&](int64_t lo, int64_t hi, int) {
        for (int64_t i = lo; i < hi; i++)
            pf.main_part.v[i] =
                radial_inverse(n, double(i) * grid.main_h, cutoff.r_supp_out, outer_window);
    });

    int64_t n_hole = int64_t(std::llround(grid.hole_end / grid.hole_h)) + 1;
    pf.hole_part.h = grid.hole_h;
    pf.hole_part.v.resize(n_hole);
    parallel_chunks(n_hole, [&](int64_t lo, int64_t hi, int) {
        for (int64_t i = lo; i < hi; i++)
            pf.hole_part.v[i] =
                radial_inverse(n, double(i) * grid.hole_h, cutoff.r_one_in, hole_window);
    });

    pf.theta_at_zero = pf.main_part.v[0] - pf.hole_part.v[0];

    // cell-wise |theta| and theta^2 masses on the tail grid (8-point GL/cell)
    pf.tail_h = grid.hole_h;
    int64_t n_cells = n_hole - 1;
    std::vector<double> cell_abs(n_cells), cell_sq(n_cells);
    parallel_chunks(n_cells, [&](int64_t lo, int64_t hi, int) {
        for (int64_t i = lo; i < hi; i++) {
            double a = double(i) * pf.tail_h, half = 0.5 * pf.tail_h, mid = a + half;
            Kahan sa, sq;
            for (int j = 0; j < 16; j++) {
                double r = mid + half * GL16_X[j];
                double th = pf.theta(r);
                double wsurf = surface_measure(n, r) * half * GL16_W[j];
                sa.add(std::fabs(th) * wsurf);
                sq.add(th * th * wsurf);
            }
            cell_abs[i] = sa.get();
            cell_sq[i] = sq.get();
        }
    });

    pf.tail_cum.assign(n_hole, 0.0);
    for (int64_t i = n_cells - 1; i >= 0; i--) pf.tail_cum[i] = pf.tail_cum[i + 1] + cell_abs[i];
    // beyond-end allowance: the trend over the table decays superalgebraically,
    // so the remainder is bounded by the mass of the last 10% of the table
    int64_t i90 = int64_t(double(n_cells) * 0.9);
    pf.tail_beyond = pf.tail_cum[i90];

    pf.l1_norm = pf.tail_cum[0] + pf.tail_beyond;
    Kahan l2acc;
    for (int64_t i = 0; i < n_cells; i++) l2acc.add(cell_sq[i]);
    pf.l2_norm = std::sqrt(l2acc.get());
    return pf;
}

std::string BumpProfile::fingerprint() const {
    std::string s = "n=" + std::to_string(cutoff.n) + ";mh=" + fmt_g17(grid.main_h) +
                    ";me=" + fmt_g17(grid.main_end) + ";hh=" + fmt_g17(grid.hole_h) +
                    ";he=" + fmt_g17(grid.hole_end) + ";t0=" + fmt_g17(theta_at_zero) +
                    ";l1=" + fmt_g17(l1_norm) + ";l2=" + fmt_g17(l2_norm);
    return sha1_hex(s);
}

std::string BumpProfile::to_json() const {
    nlohmann::json j;
    j["n"] = cutoff.n;
    j["grid"] = {{"main_h", grid.main_h},
                 {"main_end", grid.main_end},
                 {"hole_h", grid.hole_h},
                 {"hole_end", grid.hole_end}};
    j["main_part"] = main_part.v;
    j["hole_part"] = hole_part.v;
    j["tail_cum"] = tail_cum;
    j["tail_beyond"] = tail_beyond;
    j["l1_norm"] = l1_norm;
    j["l2_norm"] = l2_norm;
    j["theta_at_zero"] = theta_at_zero;
    j["fingerprint"] = fingerprint();
    return j.dump();
}

BumpProfile BumpProfile::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    BumpProfile pf;
    pf.cutoff = build_cutoff(j.at("n").get<int>());
    pf.grid.main_h = j.at("grid").at("main_h").get<double>();
    pf.grid.main_end = j.at("grid").at("main_end").get<double>();
    pf.grid.hole_h = j.at("grid").at("hole_h").get<double>();
    pf.grid.hole_end = j.at("grid").at("hole_end").get<double>();
    pf.main_part.h = pf.grid.main_h;
    pf.main_part.v = j.at("main_part").get<std::vector<double>>();
    pf.hole_part.h = pf.grid.hole_h;
    pf.hole_part.v = j.at("hole_part").get<std::vector<double>>();
    pf.tail_h = pf.grid.hole_h;
    pf.tail_cum = j.at("tail_cum").get<std::vector<double>>();
    pf.tail_beyond = j.at("tail_beyond").get<double>();
    pf.l1_norm = j.at("l1_norm").get<double>();
    pf.l2_norm = j.at("l2_norm").get<double>();
    pf.theta_at_zero = j.at("theta_at_zero").get<double>();
    return pf;
}

BumpProfile load_or_build_profile(int n, const std::string& cache_path) {
    if (n != 2 && n != 3) throw Error(ERR_UNSUPPORTED, "profile: n must be 2 or 3");
    if (!cache_path.empty()) {
        std::ifstream in(cache_path);
        if (in) {
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            try {
                BumpProfile pf = BumpProfile::from_json(text);
                if (pf.n() == n) return pf;
            } catch (...) {
                // fall through to rebuild
            }
        }
    }
    BumpProfile pf = build_profile(build_cutoff(n));
    if (!cache_path.empty()) write_file(cache_path, pf.to_json());
    return pf;
}

namespace {

// worst |bump-factor integral - 1| over `budget` seeded admissible triples at scale R
double validate_eps1(const BumpProfile& pf, double eps1, double R, int budget, uint64_t seed) {
    int n = pf.n();
    double ann_lo = 0.5, ann_hi = 2.0 * std::sqrt(double(n));
    std::vector<double> worst_per(budget);
    parallel_chunks(budget, [&](int64_t lo, int64_t hi, int) {
        for (int64_t i = lo; i < hi; i++) {
            Rng rng(seed, 0x4c456d6d ^ uint64_t(i));
            // x uniform in the annulus, t uniform (0,1), xi' uniform in B(0, eps1 R)
            double x[3] = {0, 0, 0}, xip[3] = {0, 0, 0};
            double u = rng.uniform();
            double r = n == 2 ? std::sqrt(ann_lo * ann_lo + u * (ann_hi * ann_hi - ann_lo * ann_lo))
                              : std::cbrt(std::pow(ann_lo, 3) + u * (std::pow(ann_hi, 3) - std::pow(ann_lo, 3)));
            double dir[3];
            double nn = 0;
            do {
                nn = 0;
                for (int d = 0; d < n; d++) {
                    dir[d] = rng.uniform(-1, 1);
                    nn += dir[d] * dir[d];
                }
            } while (nn > 1.0 || nn < 1e-12);
            for (int d = 0; d < n; d++) x[d] = r * dir[d] / std::sqrt(nn);
            double t = rng.uniform();
            do {
                nn = 0;
                for (int d = 0; d < n; d++) {
                    xip[d] = rng.uniform(-1, 1);
                    nn += xip[d] * xip[d];
                }
            } while (nn > 1.0);
            for (int d = 0; d < n; d++) xip[d] *= eps1 * R;
            double w2 = 0;
            for (int d = 0; d < n; d++) {
                double c = x[d] - 2.0 * t * xip[d] / R;
                w2 += c * c;
            }
            AmpResult res = bump_factor_radial(std::sqrt(w2), t / R, pf);
            worst_per[i] = std::abs(res.value - 1.0);
        }
    });
    double worst = 0;
    for (double w : worst_per) worst = std::max(worst, w);
    return worst;
}

}  // namespace

ProofConstants derive_constants(const BumpProfile& pf, double r_min, int validation_budget,
                                uint64_t seed) {
    ProofConstants pc;
    pc.n = pf.n();
    pc.l1 = pf.l1_norm;
    pc.l2 = pf.l2_norm;
    pc.theta0 = pf.theta_at_zero;
    pc.r_min_requested = r_min;

    // smallest grid radius with (safety-factored) tail below 1/4
    int64_t nt = int64_t(pf.tail_cum.size());
    int64_t idx = nt - 1;
    for (int64_t i = 0; i < nt; i++) {
        if (pf.tail_mass(double(i) * pf.tail_h) < 0.25) {
            idx = i;
            break;
        }
    }
    pc.c_tail = double(idx) * pf.tail_h;
    if (pf.tail_mass(pc.c_tail) >= 0.25)
        throw Error(ERR_NUMERIC, "constants-infeasible: tail never drops below 1/4");

    // split the smallness budget: 4 pi l1 2 eps1 c <= 1/8 and
    // 4 pi l1 c^2 / R <= 1/16, so the sum stays strictly below 1/4;
    // promote r_min when the request can't support it
    pc.eps1_rigorous = 1.0 / (64.0 * M_PI * pf.l1_norm * pc.c_tail);
    double r_floor = std::max(64.0 * M_PI * pf.l1_norm * pc.c_tail * pc.c_tail,
                              10.0 * pc.c_tail * pc.c_tail);
    pc.r_min = std::max(r_min, r_floor);
    double check = 4.0 * M_PI *
                   (pc.c_tail * pc.c_tail / pc.r_min + 2.0 * pc.eps1_rigorous * pc.c_tail) *
                   pf.l1_norm;
    if (!(check < 0.25)) throw Error(ERR_NUMERIC, "constants-infeasible: smallness check failed");

    pc.r_min_empirical = 1e5;

    // empirical tier: largest eps1 in a bisection sweep whose seeded validation
    // stays within 1/2; the bracket is capped below the outer-transition
    // midpoint (shifts beyond ~sqrt(n)/2 push the integral toward the cutoff's
    // falling edge and the 1/2 margin evaporates)
    double cap = 0.425 * std::sqrt(double(pc.n));
    int budget = std::max(8, validation_budget);
    double r_val_hi = std::max(pc.r_min_requested, pc.r_min_empirical);
    auto ok = [&](double e1) {
        double w1 = validate_eps1(pf, e1, pc.r_min_empirical, budget / 2, seed);
        double w2 = validate_eps1(pf, e1, r_val_hi, budget - budget / 2, seed + 1);
        double w = std::max(w1, w2);
        pc.validation_worst = w;
        return w < 0.5;
    };
    if (ok(cap)) {
        pc.eps1_empirical = cap;
    } else {
        double lo = pc.eps1_rigorous, hi = cap;
        if (!ok(lo)) throw Error(ERR_NUMERIC, "constants-infeasible: even rigorous eps1 fails validation");
        for (int it = 0; it < 40; it++) {
            double mid = 0.5 * (lo + hi);
            if (ok(mid))
                lo = mid;
            else
                hi = mid;
        }
        pc.eps1_empirical = lo;
        ok(lo);  // leave validation_worst consistent with the returned value
    }
    pc.validation_samples = budget;

    double margin = std::min(0.01, pf.l1_norm / 100.0);
    pc.eps2 = 0.999 * margin / (4.0 * M_PI * M_PI * pc.eps1_empirical);
    pc.eps3 = 2.0 * M_PI * std::sqrt(double(pc.n)) * pc.eps1_empirical * pc.eps2;
    if (!(2.0 * pc.eps3 < margin))
        throw Error(ERR_NUMERIC, "constants-infeasible: eps3 margin violated");
    return pc;
}

std::string ProofConstants::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["c_tail"] = c_tail;
    j["eps1_rigorous"] = eps1_rigorous;
    j["eps1_empirical"] = eps1_empirical;
    j["eps2"] = eps2;
    j["eps3"] = eps3;
    j["r_min"] = r_min;
    j["r_min_requested"] = r_min_requested;
    j["r_min_empirical"] = r_min_empirical;
    j["l1"] = l1;
    j["l2"] = l2;
    j["theta0"] = theta0;
    j["validation_samples"] = validation_samples;
    j["validation_worst"] = validation_worst;
    return j.dump();
}

ProofConstants ProofConstants::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ProofConstants pc;
    pc.n = j.at("n").get<int>();
    pc.c_tail = j.at("c_tail").get<double>();
    pc.eps1_rigorous = j.at("eps1_rigorous").get<double>();
    pc.eps1_empirical = j.at("eps1_empirical").get<double>();
    pc.eps2 = j.at("eps2").get<double>();
    pc.eps3 = j.at("eps3").get<double>();
    pc.r_min = j.at("r_min").get<double>();
    pc.r_min_requested = j.at("r_min_requested").get<double>();
    pc.r_min_empirical = j.at("r_min_empirical").get<double>();
    pc.l1 = j.at("l1").get<double>();
    pc.l2 = j.at("l2").get<double>();
    pc.theta0 = j.at("theta0").get<double>();
    pc.validation_samples = j.at("validation_samples").get<int>();
    pc.validation_worst = j.at("validation_worst").get<double>();
    return pc;
}

}  // namespace lab
