#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ftsclust/acf_metrics.hpp"
#include "ftsclust/errors.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ftsclust;
using testutil::constant_series;
using testutil::make_series;
using testutil::random_series;

TEST_CASE("facf matches the direct kernel oracle") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto x = random_series(6, 3, 400 + seed);
        for (int lag : {0, 1, 2}) {
            CHECK(facf(x, lag) ==
                  doctest::Approx(oracle::facf(x.values(), lag)).epsilon(1e-10));
        }
    }
    auto larger = random_series(40, 12, 999);
    for (int lag : {1, 3}) {
        CHECK(facf(larger, lag) ==
              doctest::Approx(oracle::facf(larger.values(), lag)).epsilon(1e-10));
    }
}

TEST_CASE("facf positivity and degenerate input") {
    auto x = random_series(20, 6, 5);
    CHECK(facf(x, 0) > 0.0);
    CHECK(facf(x, 1) >= 0.0);
    CHECK_THROWS_AS(facf(constant_series(10, 4, 3.0), 1), DegenerateVariance);
    CHECK_THROWS_AS(facf(x, -1), DomainError);
    CHECK_THROWS_AS(facf(x, 19), DomainError);
    CHECK_NOTHROW(facf(x, 18));
}

TEST_CASE("spatial median basics") {
    Grid g = Grid::uniform(4);
    Eigen::MatrixXd one(1, 4);
    one << 1, 2, 3, 4;
    CHECK((spatial_median(one, g) - one.row(0).transpose()).norm() == 0.0);

    // two curves: midpoint documented tie-break
    Eigen::MatrixXd two(2, 4);
    two << 0, 0, 0, 0, 2, 2, 2, 2;
    Eigen::VectorXd mid = spatial_median(two, g);
    CHECK((mid - Eigen::VectorXd::Constant(4, 1.0)).cwiseAbs().maxCoeff() < 1e-7);

    // symmetric triple (f, -f, 0) -> zero curve
    Eigen::MatrixXd triple(3, 4);
    triple << 1, 2, -1, 0.5, -1, -2, 1, -0.5, 0, 0, 0, 0;
    CHECK(spatial_median(triple, g).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("spatial median minimizes the L2-distance sum") {
    Grid g = Grid::uniform(5);
    auto x = random_series(9, 5, 31);
    const Eigen::VectorXd med = spatial_median(x.values(), g);
    auto objective = [&](const Eigen::VectorXd& m) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < x.values().rows(); ++i) {
            s += l2_norm(g, (x.values().row(i).transpose() - m).eval());
        }
        return s;
    };
    const double at_median = objective(med);
    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < 40; ++k) {
        Eigen::VectorXd probe = med;
        for (Eigen::Index j = 0; j < probe.size(); ++j) probe[j] += 0.05 * gauss(rng);
        CHECK(objective(probe) >= at_median - 1e-7);
    }
}

TEST_CASE("fsacf hand patterns") {
    // 4-periodic (f, g, -f, -g): antipodal symmetry puts the median at 0,
    // lag-1 neighbours are orthogonal under the trapezoid weights
    // (1/6, 1/3, 1/3, 1/6), lag-2 neighbours are antipodal.
    Eigen::MatrixXd f(1, 4), gmat(1, 4);
    f << 1, 1, -1, -1;
    gmat << 2, -1, -1, 2;
    std::vector<std::vector<double>> rows;
    for (int t = 0; t < 12; ++t) {
        const double sign = (t % 4 < 2) ? 1.0 : -1.0;
        const Eigen::MatrixXd& base = (t % 2 == 0) ? f : gmat;
        rows.push_back({sign * base(0, 0), sign * base(0, 1), sign * base(0, 2),
                        sign * base(0, 3)});
    }
    auto x = make_series(rows);
    CHECK(fsacf(x, 1) == doctest::Approx(0.0).epsilon(1e-9));
    // every lag-2 term is -1; sum over T-2 pairs, divided by T
    CHECK(fsacf(x, 2) == doctest::Approx(-10.0 / 12.0).epsilon(1e-9));
    // every lag-4 term is +1
    CHECK(fsacf(x, 4) == doctest::Approx(8.0 / 12.0).epsilon(1e-9));
}

TEST_CASE("fsacf range and degenerate input") {
    auto x = random_series(15, 6, 21);
    for (int lag : {1, 2, 5}) {
        const double v = fsacf(x, lag);
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }
    CHECK_THROWS_AS(fsacf(constant_series(8, 4, 1.0), 1), DegenerateVariance);
    CHECK_THROWS_AS(fsacf(x, 0), DomainError);
    CHECK_THROWS_AS(fsacf(x, 15), DomainError);
    CHECK_NOTHROW(fsacf(x, 14));
}

TEST_CASE("fsacf brute-force recomputation") {
    // independent recomputation with its own Weiszfeld loop
    auto x = random_series(10, 5, 2024);
    Grid g = Grid::uniform(5);
    Eigen::VectorXd m = x.values().colwise().mean();
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXd num = Eigen::VectorXd::Zero(5);
        double den = 0.0;
        for (Eigen::Index i = 0; i < 10; ++i) {
            double d = l2_norm(g, (x.values().row(i).transpose() - m).eval());
            d = std::max(d, 1e-10);
            num += x.values().row(i).transpose() / d;
            den += 1.0 / d;
        }
        Eigen::VectorXd next = num / den;
        const double step = l2_norm(g, (next - m).eval());
        m = next;
        if (step < 1e-8) break;
    }
    for (int lag : {1, 2}) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i + lag < 10; ++i) {
            Eigen::VectorXd a = x.values().row(i).transpose() - m;
            Eigen::VectorXd b = x.values().row(i + lag).transpose() - m;
            sum += l2_inner(g, a / l2_norm(g, a), b / l2_norm(g, b));
        }
        CHECK(fsacf(x, lag) == doctest::Approx(sum / 10.0).epsilon(1e-7));
    }
}

TEST_CASE("kendall hand examples") {
    // constant curves; the max and the integral preorder both reduce to the
    // scalar ordering of the constants
    std::vector<std::vector<double>> inc, dec, anti;
    for (int t = 0; t < 8; ++t) inc.push_back(std::vector<double>(3, t));
    for (int t = 0; t < 8; ++t) dec.push_back(std::vector<double>(3, -t));
    for (double v : {1.0, 10.0, 2.0, 9.0, 3.0, 8.0}) anti.push_back(std::vector<double>(3, v));
    CHECK(kendall_acf(make_series(inc), 1, Preorder::Max) == 1.0);
    CHECK(kendall_acf(make_series(inc), 2, Preorder::Integral) == 1.0);
    CHECK(kendall_acf(make_series(dec), 1, Preorder::Max) == 1.0);  // comonotone
    CHECK(kendall_acf(make_series(anti), 1, Preorder::Max) == -1.0);
    CHECK(kendall_acf(make_series(anti), 1, Preorder::Integral) == -1.0);
}

TEST_CASE("kendall ties count as non-concordant") {
    std::vector<std::vector<double>> rows;
    for (double v : {1.0, 1.0, 2.0, 2.0, 3.0, 3.0}) rows.push_back(std::vector<double>(3, v));
    auto x = make_series(rows);
    std::vector<double> score{1, 1, 2, 2, 3, 3};
    CHECK(kendall_acf(x, 1, Preorder::Max) == oracle::kendall(score, 1));
}

TEST_CASE("kendall equals exhaustive enumeration on random data") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto x = random_series(6, 4, 800 + seed);
        for (int lag : {1, 2, 3}) {
            std::vector<double> max_score(6), int_score(6);
            for (std::size_t t = 0; t < 6; ++t) {
                max_score[t] = x.curve(t).maxCoeff();
                int_score[t] = l2_inner(x.grid(), x.curve(t).transpose(),
                                        Eigen::VectorXd::Ones(4));
            }
            CHECK(kendall_acf(x, lag, Preorder::Max) == oracle::kendall(max_score, lag));
            CHECK(kendall_acf(x, lag, Preorder::Integral) == oracle::kendall(int_score, lag));
        }
    }
}

TEST_CASE("kendall invariant under curve scaling") {
    auto x = random_series(10, 5, 404);
    FunctionalTimeSeries doubled(Eigen::MatrixXd(2.0 * x.values()), x.grid());
    for (int lag : {1, 2}) {
        CHECK(kendall_acf(x, lag, Preorder::Max) == kendall_acf(doubled, lag, Preorder::Max));
        CHECK(kendall_acf(x, lag, Preorder::Integral) ==
              kendall_acf(doubled, lag, Preorder::Integral));
    }
    CHECK_THROWS_AS(kendall_acf(x, 8, Preorder::Max), DomainError);
    CHECK_NOTHROW(kendall_acf(x, 7, Preorder::Max));
}

TEST_CASE("distance recomposition from separately computed profiles") {
    std::vector<int> lags{1, 2, 3};
    auto x = random_series(25, 6, 1);
    auto y = random_series(25, 6, 2);
    auto recompose = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return (a - b).squaredNorm() / (4.0 * static_cast<double>(lags.size()));
    };
    CHECK(d_facf(x, y, lags) ==
          doctest::Approx(recompose(facf_profile(x, lags), facf_profile(y, lags)))
              .epsilon(1e-13));
    CHECK(d_fsacf(x, y, lags) ==
          doctest::Approx(recompose(fsacf_profile(x, lags), fsacf_profile(y, lags)))
              .epsilon(1e-13));
    CHECK(d_kendall(x, y, lags, Preorder::Max) ==
          doctest::Approx(recompose(kendall_profile(x, lags, Preorder::Max),
                                    kendall_profile(y, lags, Preorder::Max)))
              .epsilon(1e-13));
    SUBCASE("metric properties") {
        CHECK(d_facf(x, x, lags) == 0.0);
        CHECK(d_fsacf(x, y, lags) == d_fsacf(y, x, lags));
        CHECK(d_kendall(x, y, lags, Preorder::Integral) >= 0.0);
    }
}
