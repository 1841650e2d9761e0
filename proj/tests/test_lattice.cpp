#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "schrlab/lattice.hpp"
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

// independent brute-force count: integer points with |a| < rad (strict)
int64_t brute_count(int n, double rad) {
    int64_t lim = int64_t(std::floor(rad)) + 1, cnt = 0;
    if (n == 2) {
        for (int64_t a = -lim; a <= lim; a++)
            for (int64_t b = -lim; b <= lim; b++)
                if (double(a * a + b * b) < rad * rad) cnt++;
    } else {
        for (int64_t a = -lim; a <= lim; a++)
            for (int64_t b = -lim; b <= lim; b++)
                for (int64_t c = -lim; c <= lim; c++)
                    if (double(a * a + b * b + c * c) < rad * rad) cnt++;
    }
    return cnt;
}

ExperimentParams params_for(int64_t m, double sigma = 0.2) {
    return build_params(2, sigma, m, 0.15, constants2());
}

}  // namespace

TEST_CASE("parameter derivation and validation") {
    ExperimentParams p = params_for(20);
    CHECK(p.R == doctest::Approx(std::pow(20.0, 5.0)));
    CHECK(p.freq_spacing() == doctest::Approx(std::pow(p.R, 0.8)));
    CHECK(p.center_spacing() == doctest::Approx(std::pow(p.R, -0.8)));
    CHECK(p.time_spacing() == doctest::Approx(std::pow(p.R, -0.6)));

    CHECK_THROWS_AS(build_params(4, 0.2, 20, 0.15, constants2()), Error);
    CHECK_THROWS_AS(build_params(2, 0.6, 20, 0.15, constants2()), Error);
    CHECK_THROWS_AS(build_params(2, 0.2, 1, 0.15, constants2()), Error);
    // R below the validated floor is rejected unless toy
    CHECK_THROWS_AS(build_params(2, 0.2, 6, 0.15, constants2()), Error);
    CHECK_NOTHROW(build_params(2, 0.2, 6, 0.15, constants2(), true));
}

TEST_CASE("frequency set against brute force") {
    for (int64_t m : {12, 16, 20, 24}) {
        ExperimentParams p = params_for(m);
        FrequencySet f = build_frequency_set(p);
        CHECK(f.size() == brute_count(2, p.eps1() * double(m)));
        CHECK(f.spacing == doctest::Approx(p.freq_spacing()));
    }
}

TEST_CASE("prototype cardinalities at eps1 = 0.601") {
    std::map<int64_t, int64_t> expect{{12, 169}, {16, 293}, {20, 441}, {24, 665}};
    for (auto [m, cnt] : expect) {
        ExperimentParams p = params_for(m);
        REQUIRE(p.eps1() == doctest::Approx(0.425 * std::sqrt(2.0)).epsilon(1e-12));
        FrequencySet f = build_frequency_set(p);
        CHECK(f.size() == cnt);
    }
}

TEST_CASE("frequency set symmetry, origin, and density") {
    ExperimentParams p = params_for(20);
    FrequencySet f = build_frequency_set(p);
    std::set<std::array<int64_t, 3>> pts;
    bool has_origin = false;
    for (const auto& q : f.points) {
        pts.insert(q.a);
        if (q.a == std::array<int64_t, 3>{0, 0, 0}) has_origin = true;
        CHECK(q.a_norm2 == q.a[0] * q.a[0] + q.a[1] * q.a[1] + q.a[2] * q.a[2]);
        CHECK(double(q.a_norm2) < p.eps1() * p.eps1() * double(p.m) * double(p.m));
        for (int d = 0; d < 3; d++) CHECK(q.xi[d] == double(q.a[d]) * f.spacing);
    }
    CHECK(int64_t(pts.size()) == f.size());  // no duplicates
    CHECK(has_origin);
    for (const auto& q : f.points) {  // central symmetry
        std::array<int64_t, 3> neg{-q.a[0], -q.a[1], -q.a[2]};
        CHECK(pts.count(neg) == 1);
    }
    double rad = p.eps1() * double(p.m);
    double density = double(f.size()) / (M_PI * rad * rad);
    CHECK(density > 0.5);
    CHECK(density < 1.5);
}

TEST_CASE("degenerate frequency set is rejected") {
    // eps1 * m < 1 leaves only the origin; build_params refuses
    ProofConstants pc = constants2();
    pc.eps1_empirical = 1e-9;
    CHECK_THROWS_AS(build_params(2, 0.2, 20, 0.15, pc), Error);
}

TEST_CASE("spatial pattern membership and sampler") {
    ExperimentParams p = params_for(20);
    SpatialPattern sp = build_pattern(p);
    CHECK(sp.box_radius == doctest::Approx(p.pc.eps2 / p.R));
    CHECK(sp.ann_lo == doctest::Approx(0.5));
    CHECK(sp.ann_hi == doctest::Approx(2.0 * std::sqrt(2.0)));

    Rng rng(7, 0);
    for (int i = 0; i < 2000; i++) {
        auto smp = sp.sample(rng);
        double nrm = 0;
        for (int d = 0; d < 2; d++) {
            double c = double(smp.k[d]) * sp.center_spacing;
            CHECK(std::fabs(smp.x[d] - c) <= sp.box_radius * (1 + 1e-12));
            nrm += smp.x[d] * smp.x[d];
        }
        nrm = std::sqrt(nrm);
        CHECK(nrm >= sp.ann_lo);
        CHECK(nrm <= sp.ann_hi);
        auto idx = sp.member_index(smp.x.data());
        REQUIRE(idx.has_value());
        CHECK(*idx == smp.k);
    }
    // restricted sampling
    for (int i = 0; i < 500; i++) {
        auto smp = sp.sample(rng, 0.5, 1.5);
        double nrm = std::hypot(smp.x[0], smp.x[1]);
        CHECK(nrm >= 0.5);
        CHECK(nrm <= 1.5 + sp.box_radius * 2);
    }
    // a point far from any center is not a member
    double bad[3] = {1.0 + 0.5 * sp.center_spacing, 0.0, 0.0};
    CHECK_FALSE(sp.membership(bad));
    double origin[3] = {0.0, 0.0, 0.0};
    CHECK_FALSE(sp.membership(origin));  // outside the annulus
}

TEST_CASE("time grid") {
    ExperimentParams p = params_for(20);
    TimeGrid tg = build_time_grid(p);
    CHECK(tg.spacing == doctest::Approx(p.time_spacing()));
    CHECK(tg.lo == doctest::Approx(std::pow(4.0, -3)));
    CHECK(tg.hi == doctest::Approx(1.0));
    REQUIRE(tg.count() > 0);
    CHECK(tg.t(0) >= tg.lo - 1e-12);
    CHECK(tg.t(tg.count() - 1) <= tg.hi + 1e-12);
    // consecutive values differ by one spacing
    CHECK(tg.t(1) - tg.t(0) == doctest::Approx(tg.spacing));
}

TEST_CASE("initial data: frequency side is a sum of translated bumps") {
    const BumpProfile& pf = profile2();
    ExperimentParams p = params_for(12);
    FrequencySet f = build_frequency_set(p);
    // at distance 1 from a center the hat equals theta(1): the other centers
    // sit further than the table support, so they contribute nothing
    const auto& q = f.points[f.size() / 2];
    double xi[3] = {q.xi[0] + 1.0, q.xi[1], q.xi[2]};
    CHECK(initial_data_hat(xi, f, pf) == doctest::Approx(pf.theta(1.0)).epsilon(1e-12));
    double mid[3] = {q.xi[0] + 0.5 * f.spacing, q.xi[1], q.xi[2]};
    CHECK(initial_data_hat(mid, f, pf) == doctest::Approx(0.0));
}

TEST_CASE("initial data: space side matches the envelope times an exponential sum") {
    const BumpProfile& pf = profile2();
    ExperimentParams p = params_for(12);
    FrequencySet f = build_frequency_set(p);
    Rng rng(11, 1);
    for (int i = 0; i < 20; i++) {
        double x[3] = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), 0.0};
        KahanC es;
        for (const auto& q : f.points) {
            double ph = 2.0 * M_PI * (x[0] * q.xi[0] + x[1] * q.xi[1]);
            es.add(cplx(std::cos(ph), std::sin(ph)));
        }
        cplx expect = pf.cutoff(std::hypot(x[0], x[1])) * es.get();
        cplx got = initial_data_space(x, f, pf);
        CHECK(std::abs(got - expect) < 1e-9 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("frequency-side L2 norm") {
    const BumpProfile& pf = profile2();
    ExperimentParams p = params_for(20);
    FrequencySet f = build_frequency_set(p);
    CHECK(u0_l2_frequency_side(f, pf) ==
          doctest::Approx(std::sqrt(double(f.size())) * pf.l2_norm).epsilon(1e-12));
}
