#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ftsclust/dissimilarity.hpp"
#include "ftsclust/errors.hpp"
#include "ftsclust/fqa.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ftsclust;
using testutil::make_series;
using testutil::random_series;

namespace {

// Four rows engineered so the below-the-median fractions are
// (0.2, 0.8, 0.2, 0.8): each column's lower half marks two rows.
FunctionalTimeSeries fraction_pattern_series() {
    return make_series({{3, 3, 3, 3, 1},
                        {1, 1, 1, 1, 3},
                        {4, 4, 4, 4, 2},
                        {2, 2, 2, 2, 4}});
}

// Alternating constant curves: indicator series (1,0,1,0,...) at tau=0.5,
// beta=0.5.
FunctionalTimeSeries alternating_series(std::size_t T) {
    std::vector<std::vector<double>> rows;
    for (std::size_t t = 0; t < T; ++t) {
        rows.push_back(std::vector<double>(4, t % 2 == 0 ? 1.0 : 0.0));
    }
    return make_series(rows);
}

}  // namespace

TEST_CASE("params validation") {
    CHECK_THROWS_AS(FqaParams::reduced({}, {0.5}), DomainError);
    CHECK_THROWS_AS(FqaParams::reduced({2, 1}, {0.5}), DomainError);
    CHECK_THROWS_AS(FqaParams::reduced({1}, {0.0, 0.5}), DomainError);
    CHECK_THROWS_AS(FqaParams::reduced({1}, {0.5, 0.5}), DomainError);
    CHECK_THROWS_AS(FqaParams::with_thresholds({1}, {0.5}, {1.5}), DomainError);
    CHECK_THROWS_AS(FqaParams::with_thresholds({1}, {0.5}, {}), DomainError);

    auto r = FqaParams::reduced({1, 2}, {0.1, 0.5, 0.9});
    CHECK(r.feature_count() == 18);  // L*P^2
    CHECK(r.feature_scale() == doctest::Approx(1.0 / std::sqrt(72.0)).epsilon(1e-15));
    auto g = FqaParams::with_thresholds({1, 2}, {0.1, 0.5, 0.9}, {0.25, 0.75});
    CHECK(g.feature_count() == 72);  // L*P^2*B^2

    auto z = FqaParams::with_thresholds({1}, {0.5}, {0.0, 1.0});  // closed range ok
    CHECK(z.feature_count() == 4);
}

TEST_CASE("indicator series hand pattern") {
    auto x = fraction_pattern_series();
    auto ind = indicator_series(x, 0.5, 0.5);
    REQUIRE(ind.size() == 4);
    CHECK(ind[0] == 1);
    CHECK(ind[1] == 0);
    CHECK(ind[2] == 1);
    CHECK(ind[3] == 0);

    auto all_ones = indicator_series(x, 0.5, 1.0);
    for (auto v : all_ones) CHECK(v == 1);
    auto all_zeros = indicator_series(x, 0.5, 0.0);
    for (auto v : all_zeros) CHECK(v == 0);
}

TEST_CASE("autocovariance and autocorrelation hand values") {
    auto x = alternating_series(6);
    CHECK(fqa_autocovariance(x, 0.5, 0.5, 1, 0.5, 0.5) == -0.25);
    CHECK(fqa_autocorrelation(x, 0.5, 0.5, 1, 0.5, 0.5) == -1.0);
    // all-ones indicators: joint 1, marginals 1 => covariance exactly 0
    CHECK(fqa_autocovariance(x, 0.5, 0.5, 1, 1.0, 1.0) == 0.0);
}

TEST_CASE("degenerate marginal carries its coordinates") {
    auto x = alternating_series(6);
    try {
        fqa_autocorrelation(x, 0.5, 0.5, 2, 1.0, 0.5);
        FAIL("expected DegenerateMarginal");
    } catch (const DegenerateMarginal& e) {
        CHECK(e.tau == 0.5);
        CHECK(e.beta == 1.0);
        CHECK(e.lag == 2);
    }
}

TEST_CASE("lag range errors") {
    auto x = alternating_series(6);
    CHECK_THROWS_AS(fqa_autocorrelation(x, 0.5, 0.5, 0, 0.5, 0.5), DomainError);
    CHECK_THROWS_AS(fqa_autocorrelation(x, 0.5, 0.5, 5, 0.5, 0.5), DomainError);
    CHECK_NOTHROW(fqa_autocorrelation(x, 0.5, 0.5, 4, 0.5, 0.5));
    auto params = FqaParams::reduced({5}, {0.5});
    CHECK_THROWS_AS(feature_vector(x, params), DomainError);
}

TEST_CASE("estimators match the brute-force oracle") {
    int seen = 0;
    for (std::uint64_t seed = 0; seed < 60 && seen < 40; ++seed) {
        auto x = random_series(8, 4, 900 + seed);
        for (double t1 : {0.25, 0.5}) {
            for (double t2 : {0.5, 0.75}) {
                for (int lag : {1, 2}) {
                    oracle::Rho expected = oracle::rho(x.values(), t1, t2, lag, t1, t2);
                    if (expected.degenerate) {
                        CHECK_THROWS_AS(fqa_autocorrelation(x, t1, t2, lag, t1, t2),
                                        DegenerateMarginal);
                    } else {
                        ++seen;
                        CHECK(fqa_autocorrelation(x, t1, t2, lag, t1, t2) ==
                              doctest::Approx(expected.value).epsilon(1e-14));
                    }
                }
            }
        }
    }
    CHECK(seen >= 40);
}

// The joint frequency averages T - lag pairs while the marginals use all T
// observations, so the plug-in ratio is not a true correlation and can leave
// [-1, 1] on short series. It does obey the hard envelope from the marginal
// frequencies: at T=12 a non-degenerate frequency is at least 1/12, putting
// the denominator at or above 11/144.
TEST_CASE("short-series rho obeys the normalization envelope, not [-1, 1]") {
    bool outside_unit = false;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto x = random_series(12, 5, 50 + seed);
        for (double t1 : {0.25, 0.5, 0.75}) {
            for (int lag : {1, 2, 3}) {
                try {
                    const double r = fqa_autocorrelation(x, t1, t1, lag, t1, t1);
                    CHECK(std::abs(r) <= 144.0 / 11.0);
                    outside_unit = outside_unit || std::abs(r) > 1.0;
                } catch (const DegenerateMarginal&) {
                }
            }
        }
    }
    CHECK(outside_unit);
}

TEST_CASE("iid noise has small autocovariance at T=2000") {
    int failures = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto x = random_series(2000, 4, 7000 + seed);
        if (std::abs(fqa_autocovariance(x, 0.5, 0.5, 1, 0.5, 0.5)) >= 0.05) ++failures;
    }
    CHECK(failures <= 1);
}

TEST_CASE("feature vector freezes the documented order") {
    auto x = random_series(30, 5, 77);
    auto params = FqaParams::reduced({1, 3}, {0.2, 0.8});
    Eigen::VectorXd v = fqa_unscaled_features(x, params);
    REQUIRE(v.size() == 8);
    Eigen::Index k = 0;
    for (int lag : {1, 3}) {
        for (double t1 : {0.2, 0.8}) {
            for (double t2 : {0.2, 0.8}) {
                CHECK(v[k++] == fqa_autocorrelation(x, t1, t2, lag, t1, t2));
            }
        }
    }

    auto ex = FqaParams::with_thresholds({2}, {0.5}, {0.3, 0.7});
    Eigen::VectorXd w = fqa_unscaled_features(x, ex);
    REQUIRE(w.size() == 4);
    k = 0;
    for (double b1 : {0.3, 0.7}) {
        for (double b2 : {0.3, 0.7}) {
            CHECK(w[k++] == fqa_autocorrelation(x, 0.5, 0.5, 2, b1, b2));
        }
    }
}

TEST_CASE("d_fqa equals the brute-force oracle on tiny instances") {
    auto lags = std::vector<int>{1};
    auto levels = std::vector<double>{0.5};
    auto params = FqaParams::reduced(lags, levels);
    int compared = 0;
    for (std::uint64_t seed = 0; seed < 140 && compared < 100; ++seed) {
        auto x = random_series(8, 4, 2 * seed);
        auto y = random_series(8, 4, 2 * seed + 1);
        double expected;
        if (!oracle::d_fqa_reduced(x.values(), y.values(), lags, levels, &expected)) continue;
        ++compared;
        CHECK(d_fqa(x, y, params) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(compared >= 100);
}

TEST_CASE("d_fqa full grid and explicit mode match the oracle") {
    auto lags = std::vector<int>{1, 2};
    auto levels = std::vector<double>{0.1, 0.5, 0.9};
    auto params = FqaParams::reduced(lags, levels);
    auto betas = std::vector<double>{0.4, 0.8};
    auto explicit_params = FqaParams::with_thresholds(lags, levels, betas);
    int compared = 0;
    for (std::uint64_t seed = 0; seed < 40 && compared < 10; ++seed) {
        auto x = random_series(40, 6, 5000 + 2 * seed);
        auto y = random_series(40, 6, 5001 + 2 * seed);
        double expected;
        if (!oracle::d_fqa_reduced(x.values(), y.values(), lags, levels, &expected)) continue;
        double expected_explicit;
        if (!oracle::d_fqa_explicit(x.values(), y.values(), lags, levels, betas,
                                    &expected_explicit)) {
            continue;
        }
        ++compared;
        CHECK(d_fqa(x, y, params) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(d_fqa(x, y, explicit_params) ==
              doctest::Approx(expected_explicit).epsilon(1e-12));
    }
    CHECK(compared >= 10);
}

TEST_CASE("d_fqa basic metric properties") {
    auto params = FqaParams::reduced({1, 2}, {0.1, 0.5, 0.9});
    auto x = random_series(30, 5, 11);
    auto y = random_series(30, 5, 12);
    auto z = random_series(44, 5, 13);  // different length is fine
    CHECK(d_fqa(x, x, params) == 0.0);
    CHECK(d_fqa(x, y, params) == d_fqa(y, x, params));
    const double dxz = d_fqa(x, z, params);
    CHECK(dxz >= 0.0);
    CHECK(dxz <= 1.0);
}

TEST_CASE("feature distance equals d_fqa") {
    auto params = FqaParams::reduced({1, 2}, {0.1, 0.5, 0.9});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto x = random_series(25, 5, 600 + 2 * seed);
        auto y = random_series(25, 5, 601 + 2 * seed);
        const Eigen::VectorXd vx = feature_vector(x, params).values;
        const Eigen::VectorXd vy = feature_vector(y, params).values;
        CHECK((vx - vy).squaredNorm() ==
              doctest::Approx(d_fqa(x, y, params)).epsilon(1e-12));
    }
}

TEST_CASE("pairwise matrix reproduces the standalone metric") {
    auto params = FqaParams::reduced({1}, {0.1, 0.5, 0.9});
    std::vector<FunctionalTimeSeries> series{random_series(20, 4, 1), random_series(20, 4, 2),
                                             random_series(20, 4, 3)};
    MetricConfig config;
    config.metric = Metric::FQA;
    config.fqa = params;
    auto D = pairwise_matrix(series, config);
    REQUIRE(D.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(D.values(i, i) == 0.0);
        for (int j = 0; j < 3; ++j) {
            CHECK(D.values(i, j) == D.values(j, i));
            CHECK(D.values(i, j) == d_fqa(series[i], series[j], params));
        }
    }
}

TEST_CASE("degenerate policy zero maps bad coordinates to 0") {
    auto x = alternating_series(8);
    auto params = FqaParams::with_thresholds({1}, {0.5}, {0.5, 1.0});
    CHECK_THROWS_AS(feature_vector(x, params, DegeneratePolicy::Error), DegenerateMarginal);
    auto fv = feature_vector(x, params, DegeneratePolicy::Zero);
    REQUIRE(fv.values.size() == 4);
    // order: (b1,b2) = (0.5,0.5), (0.5,1), (1,0.5), (1,1); any pair touching
    // beta=1 is degenerate
    CHECK(fv.degenerate_count == 3);
    CHECK(fv.values[1] == 0.0);
    CHECK(fv.values[2] == 0.0);
    CHECK(fv.values[3] == 0.0);
    CHECK(fv.values[0] != 0.0);
}
