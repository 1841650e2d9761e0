#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "schrlab/diophantine.hpp"
#include "schrlab/profile.hpp"

using namespace lab;

namespace {

const BumpProfile& profile2() {
    static BumpProfile pf = load_or_build_profile(2, "/tmp/schrlab_profile2.json");
    return pf;
}

const ProofConstants& constants2() {
    static ProofConstants pc = derive_constants(profile2(), 1e6, 64, 2024);
    return pc;
}

ExperimentParams params20() { return build_params(2, 0.2, 20, 0.15, constants2()); }

}  // namespace

TEST_CASE("dirichlet search: hand-checked examples") {
    // y = (1/2, 1/4): p = 4 clears both coordinates exactly; p = 1, 2, 3 all
    // leave ||p/2|| or ||p/4|| at 1/2 or 1/4 > 16^{-1/2}
    double y[2] = {0.5, 0.25};
    ApproxResult r = dirichlet_search(y, 2, 16.0);
    CHECK(r.found);
    CHECK(r.p == 4);
    CHECK(r.error == 0.0);
    CHECK(r.bound_n == doctest::Approx(0.25));

    // p_min skips the exact denominator, so the search must go further
    ApproxResult r2 = dirichlet_search(y, 2, 16.0, 5);
    CHECK(r2.found);
    CHECK(r2.p > 4);
    CHECK(r2.error <= r2.bound_n);

    CHECK_THROWS_AS(dirichlet_search(y, 2, 0.5), Error);
}

TEST_CASE("dirichlet search: the guarantee holds on random targets") {
    Rng rng(101, 0);
    for (int i = 0; i < 200; i++) {
        double y[2] = {rng.uniform(), rng.uniform()};
        double N = rng.uniform(4.0, 400.0);
        ApproxResult r = dirichlet_search(y, 2, N);
        CHECK(r.found);
        CHECK(r.error <= r.bound_n);
        CHECK(r.p >= 1);
        CHECK(r.p <= int64_t(std::floor(N)) + 2);
    }
}

TEST_CASE("dirichlet search: golden-ratio denominators are Fibonacci") {
    // the best rational approximations of (sqrt 5 - 1)/2 have Fibonacci
    // denominators; the first p with ||p y|| <= N^{-1} must be one of them
    double y[1] = {0.5 * (std::sqrt(5.0) - 1.0)};
    std::set<int64_t> fib = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987};
    for (double N : {5.0, 13.0, 34.0, 89.0, 233.0}) {
        ApproxResult r = dirichlet_search(y, 1, N);
        CHECK(r.found);
        CHECK(fib.count(r.p) == 1);
    }
}

TEST_CASE("measure of a single approximation set and its crude bound") {
    // exact value min(1, 2 N^{-1/n})^n
    CHECK(measure_Ap(1, 1e4, 2).value == doctest::Approx(4e-4));
    CHECK(measure_Ap(7, 1e4, 2).value == doctest::Approx(4e-4));
    CHECK(measure_Ap(1, 1e6, 3).value == doctest::Approx(8e-6));
    CHECK(measure_Ap(1, 1.0, 2).value == doctest::Approx(1.0));
    CHECK_THROWS_AS(measure_Ap(0, 1e4, 2), Error);

    // the exact measure never exceeds the crude per-p bound
    for (int64_t p : {int64_t(1), int64_t(3), int64_t(10), int64_t(100)}) {
        CHECK(measure_Ap(p, 1e4, 2).value <= crude_Ap_bound(p, 1e4, 2) * (1.0 + 1e-12));
        CHECK(measure_Ap(p, 1e6, 3).value <= crude_Ap_bound(p, 1e6, 3) * (1.0 + 1e-12));
    }
}

TEST_CASE("union bound over small denominators stays below one quarter") {
    MeasureEstimate e2 = bad_union_bound(1e4, 2);
    CHECK(e2.method == MeasureEstimate::EXACT);
    // 156 denominators, each of measure (2e-2)^2
    CHECK(e2.value == doctest::Approx(156.0 * 4e-4));
    CHECK(e2.value <= 0.25);
    MeasureEstimate e3 = bad_union_bound(1e6, 3);
    CHECK(e3.value <= 0.25);
    CHECK_THROWS_AS(bad_union_bound(10.0, 2), Error);
}

TEST_CASE("monte-carlo and grid estimates of the large-denominator set agree") {
    double N = 1e4;
    MeasureEstimate mc = measure_S(N, 2, 4000, 77);
    MeasureEstimate gr = measure_S_grid(N, 2, 0.02);
    CHECK(mc.method == MeasureEstimate::MONTE_CARLO);
    CHECK(gr.method == MeasureEstimate::GRID);
    CHECK(mc.samples == 4000);
    CHECK(gr.samples == 51 * 51);
    CHECK(mc.half_width > 0);
    // 0.05 slack for the grid discretization on top of the 95% interval
    CHECK(std::abs(mc.value - gr.value) <= mc.half_width + 0.05);
    // both estimates are probabilities
    CHECK(mc.value >= 0.0);
    CHECK(mc.value <= 1.0);
}

TEST_CASE("regularized upper incomplete gamma") {
    // Q(1/2, x) = erfc(sqrt x), Q(1, x) = exp(-x)
    for (double x : {0.01, 0.3, 1.0, 4.0, 25.0}) {
        CHECK(gamma_q(0.5, x) == doctest::Approx(std::erfc(std::sqrt(x))).epsilon(1e-12));
        CHECK(gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
    }
    // Q(2, x) = (1+x) exp(-x)
    CHECK(gamma_q(2.0, 3.0) == doctest::Approx(4.0 * std::exp(-3.0)).epsilon(1e-12));
    CHECK(gamma_q(0.5, 0.0) == 1.0);
    CHECK_THROWS_AS(gamma_q(-1.0, 1.0), Error);
    CHECK_THROWS_AS(gamma_q(0.5, -1.0), Error);
}

TEST_CASE("pushforward of the dilation by m is uniform") {
    double p = uniformity_chi2_pvalue(20, 2, 20000, 32, 5);
    CHECK(p > 1e-4);
    CHECK(p <= 1.0);
}

TEST_CASE("quotient-set parameters at production scale") {
    ExperimentParams p = params20();
    QuotientParams q = make_quotient_params(p);
    CHECK(q.P == doctest::Approx(p.R / 400.0));
    CHECK(q.N == doctest::Approx(q.P - 2.0));
    CHECK(q.p_lo == int64_t(std::ceil(q.P / 64.0)));
    CHECK(q.p_hi == int64_t(std::floor(q.P)));
    CHECK(q.eps2 == doctest::Approx(eps2_coverage_required(p)));
    CHECK(q.eps2 == doctest::Approx(64.0 * double(p.m) * std::pow(q.N, -0.5)));
    double r1s = p.freq_spacing();
    CHECK(q.k_lo == doctest::Approx(r1s / 256.0));
    CHECK(q.k_hi == doctest::Approx(2.0 * std::sqrt(2.0) * r1s));
    // coverage: the per-p box width meets the dirichlet threshold at every
    // admissible denominator (it is increasing in p, so p_lo suffices)
    CHECK(q.eps2 * double(q.p_lo) * double(q.m) / q.R >=
          std::pow(q.N, -0.5) * (1.0 - 1e-12));
}

TEST_CASE("quotient-set membership flags") {
    ExperimentParams p = params20();
    QuotientParams q = make_quotient_params(p);

    // a point p m x = k exactly, with |k| inside the window, lands in U
    int64_t pp = q.p_lo + 75;
    double kx = std::floor(0.5 * (q.k_lo + 0.1 * q.k_hi));
    double xu[2] = {kx / (double(pp) * double(q.m)), 0.0};
    QuotientFlags fu = quotient_membership(xu, q);
    CHECK(fu.U);
    CHECK(fu.V);

    // the origin resonates with k = 0 for every p: in W and V but not U
    double x0[2] = {0.0, 0.0};
    QuotientFlags f0 = quotient_membership(x0, q);
    CHECK(f0.W);
    CHECK(f0.V);
    CHECK(!f0.U);
    CHECK(f0.V0);

    // U and W both imply V on random points
    Rng rng(303, 0);
    for (int i = 0; i < 50; i++) {
        double x[2] = {rng.uniform(), rng.uniform()};
        QuotientFlags f = quotient_membership(x, q);
        if (f.U || f.W) CHECK(f.V);
    }
}

TEST_CASE("quotient-set measures: consistency and determinism") {
    ExperimentParams p = params20();
    QuotientParams q = make_quotient_params(p);
    QuotientMeasures a = quotient_measures(q, 2000, 9);
    QuotientMeasures b = quotient_measures(q, 2000, 9);
    CHECK(a.U.value == b.U.value);
    CHECK(a.V.value == b.V.value);
    CHECK(a.U.value <= a.V.value);
    CHECK(a.W.value <= a.V.value);
    CHECK(a.U.samples == 2000);
    CHECK(quotient_measure(q, 2000, 9).value == a.U.value);
}
