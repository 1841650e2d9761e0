#include "schrlab/diophantine.hpp"

#include <algorithm>

namespace lab {

namespace {

inline double dist_to_int(double x) {
    double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

inline double conf95(double phat, int64_t samples) {
    return 1.96 * std::sqrt(std::max(phat * (1.0 - phat), 1e-12) / double(samples));
}

}  // namespace

ApproxResult dirichlet_search(const double* y, int n, double N, int64_t p_min) {
    if (!(N >= 1)) throw Error(ERR_INVALID_ARG, "dirichlet_search needs N >= 1");
    if (p_min < 1) p_min = 1;
    ApproxResult r;
    r.bound_n = std::pow(N, -1.0 / double(n));
    int64_t p_max = int64_t(std::floor(N)) + 2;
    double best = 2.0;
    for (int64_t p = p_min; p <= p_max; p++) {
        double worst = 0;
        for (int d = 0; d < n; d++) worst = std::max(worst, dist_to_int(double(p) * y[d]));
        if (worst < best) best = worst;
        if (worst <= r.bound_n) {
            r.p = p;
            r.error = worst;
            r.found = true;
            return r;
        }
    }
    r.error = best;
    return r;
}

MeasureEstimate measure_Ap(int64_t p, double N, int n) {
    if (p < 1) throw Error(ERR_INVALID_ARG, "measure_Ap needs p >= 1");
    MeasureEstimate e;
    e.method = MeasureEstimate::EXACT;
    e.value = std::pow(std::min(1.0, 2.0 * std::pow(N, -1.0 / double(n))), double(n));
    return e;
}

double crude_Ap_bound(int64_t p, double N, int n) {
    return std::pow(double(p + 1), double(n)) *
           std::pow(2.0 / (std::pow(N, 1.0 / double(n)) * double(p)), double(n));
}

MeasureEstimate bad_union_bound(double N, int n) {
    int64_t p_cap = int64_t(std::floor(std::pow(4.0, -n - 1) * N));
    if (p_cap < 1) throw Error(ERR_INVALID_ARG, "bad_union_bound needs 4^{-n-1} N >= 1");
    MeasureEstimate e;
    e.method = MeasureEstimate::EXACT;
    e.value = double(p_cap) * measure_Ap(1, N, n).value;
    return e;
}

MeasureEstimate measure_S(double N, int n, int64_t samples, uint64_t seed) {
    int64_t p_min = int64_t(std::ceil(std::pow(4.0, -n - 1) * N));
    std::vector<uint8_t> hit(samples);
    parallel_chunks(samples, [&](int64_t lo, int64_t hi, int) {
        for (int64_t i = lo; i < hi; i++) {
            Rng rng(seed, stream_id(11, uint64_t(i)));
            double y[3] = {0, 0, 0};
            for (int d = 0; d < n; d++) y[d] = rng.uniform();
            hit[i] = dirichlet_search(y, n, N, p_min).found ? 1 : 0;
        }
    });
    int64_t cnt = 0;
    for (uint8_t h : hit) cnt += h;
    MeasureEstimate e;
    e.method = MeasureEstimate::MONTE_CARLO;
    e.samples = samples;
    e.value = double(cnt) / double(samples);
    e.half_width = conf95(e.value, samples);
    return e;
}

MeasureEstimate measure_S_grid(double N, int n, double resolution) {
    int64_t per_axis = int64_t(std::llround(1.0 / resolution));
    int64_t p_min = int64_t(std::ceil(std::pow(4.0, -n - 1) * N));
    int64_t total = 1;
    for (int d = 0; d < n; d++) total *= per_axis + 1;
    std::vector<uint8_t> hit(total);
    parallel_chunks(total, [&](int64_t lo, int64_t hi, int) {
        for (int64_t i = lo; i < hi; i++) {
            double y[3] = {0, 0, 0};
            int64_t rem = i;
            for (int d = 0; d < n; d++) {
                y[d] = double(rem % (per_axis + 1)) * resolution;
                rem /= per_axis + 1;
            }
            hit[i] = dirichlet_search(y, n, N, p_min).found ? 1 : 0;
        }
    });
    int64_t cnt = 0;
    for (uint8_t h : hit) cnt += h;
    MeasureEstimate e;
    e.method = MeasureEstimate::GRID;
    e.samples = total;
    e.value = double(cnt) / double(total);
    return e;
}

double eps2_coverage_required(const ExperimentParams& p) {
    double P = p.R / (double(p.m) * double(p.m));
    double N = P - 2.0;
    if (!(N > 1)) throw Error(ERR_INVALID_ARG, "scale too small for quotient-set analysis");
    return std::pow(4.0, p.n + 1) * double(p.m) * std::pow(N, -1.0 / double(p.n));
}

QuotientParams make_quotient_params(const ExperimentParams& p, double eps2) {
    QuotientParams q;
    q.n = p.n;
    q.m = p.m;
    q.R = p.R;
    q.P = p.R / (double(p.m) * double(p.m));
    q.N = q.P - 2.0;
    if (!(q.N > 1)) throw Error(ERR_INVALID_ARG, "scale too small for quotient-set analysis");
    q.eps2 = eps2 < 0 ? eps2_coverage_required(p) : eps2;
    q.p_lo = int64_t(std::ceil(std::pow(4.0, -p.n - 1) * q.P));
    q.p_hi = int64_t(std::floor(q.P));
    double r1s = p.freq_spacing();  // R^{1-sigma}
    q.k_lo = std::pow(4.0, -p.n - 2) * r1s;
    q.k_hi = 2.0 * std::sqrt(double(p.n)) * r1s;
    return q;
}

QuotientFlags quotient_membership(const double* x, const QuotientParams& q) {
    QuotientFlags f;
    const int n = q.n;
    double mx[3] = {0, 0, 0};
    for (int d = 0; d < n; d++) mx[d] = double(q.m) * x[d];

    for (int64_t p = q.p_lo; p <= q.p_hi && !(f.U && f.V && f.W); p++) {
        double box = q.eps2 * double(p) * double(q.m) / q.R;
        bool inbox = true;
        double k2 = 0;
        for (int d = 0; d < n; d++) {
            double pk = double(p) * mx[d];
            double kd = std::round(pk);
            if (std::fabs(pk - kd) > box) {
                inbox = false;
                break;
            }
            k2 += kd * kd;
        }
        if (!inbox) continue;
        f.V = true;
        double knorm = std::sqrt(k2);
        if (knorm >= q.k_lo && knorm <= q.k_hi) f.U = true;
        if (knorm <= q.k_lo) f.W = true;
    }

    double frac[3] = {0, 0, 0};
    for (int d = 0; d < n; d++) frac[d] = mx[d] - std::floor(mx[d]);
    int64_t p_min = int64_t(std::ceil(std::pow(4.0, -n - 1) * q.N));
    f.V0 = dirichlet_search(frac, n, q.N, p_min).found;
    return f;
}

QuotientMeasures quotient_measures(const QuotientParams& q, int64_t samples, uint64_t seed) {
    std::vector<uint8_t> u(samples), v(samples), w(samples), v0(samples);
    parallel_chunks(samples, [&](int64_t lo, int64_t hi, int) {
        for (int64_t i = lo; i < hi; i++) {
            Rng rng(seed, stream_id(13, uint64_t(i)));
            double x[3] = {0, 0, 0};
            for (int d = 0; d < q.n; d++) x[d] = rng.uniform();
            QuotientFlags f = quotient_membership(x, q);
            u[i] = f.U;
            v[i] = f.V;
            w[i] = f.W;
            v0[i] = f.V0;
        }
    });
    auto pack = [&](const std::vector<uint8_t>& flags) {
        int64_t cnt = 0;
        for (uint8_t h : flags) cnt += h;
        MeasureEstimate e;
        e.method = MeasureEstimate::MONTE_CARLO;
        e.samples = samples;
        e.value = double(cnt) / double(samples);
        e.half_width = conf95(e.value, samples);
        return e;
    };
    QuotientMeasures qm;
    qm.U = pack(u);
    qm.V = pack(v);
    qm.W = pack(w);
    qm.V0 = pack(v0);
    return qm;
}

MeasureEstimate quotient_measure(const QuotientParams& q, int64_t samples, uint64_t seed) {
    return quotient_measures(q, samples, seed).U;
}

double uniformity_chi2_pvalue(int64_t m, int n, int64_t samples, int bins, uint64_t seed) {
    std::vector<std::vector<int64_t>> counts(n, std::vector<int64_t>(bins, 0));
    Rng rng(seed, stream_id(17, uint64_t(m)));
    for (int64_t i = 0; i < samples; i++) {
        for (int d = 0; d < n; d++) {
            double y = double(m) * rng.uniform();
            double f = y - std::floor(y);
            int b = std::min(bins - 1, int(f * double(bins)));
            counts[d][b]++;
        }
    }
    double expected = double(samples) / double(bins);
    double worst_p = 1.0;
    for (int d = 0; d < n; d++) {
        double chi2 = 0;
        for (int b = 0; b < bins; b++) {
            double diff = double(counts[d][b]) - expected;
            chi2 += diff * diff / expected;
        }
        worst_p = std::min(worst_p, gamma_q(0.5 * double(bins - 1), 0.5 * chi2));
    }
    return worst_p;
}

// regularized incomplete gamma functions: series for P when x < a+1,
// continued fraction for Q otherwise
double gamma_q(double a, double x) {
    if (!(a > 0) || x < 0) throw Error(ERR_INVALID_ARG, "gamma_q domain");
    if (x == 0) return 1.0;
    double gln = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; i++) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        double p = sum * std::exp(-x + a * std::log(x) - gln);
        return 1.0 - p;
    }
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; i++) {
        double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

}  // namespace lab
