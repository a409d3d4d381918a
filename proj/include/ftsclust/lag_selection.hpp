#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ftsclust/fts.hpp"

namespace ftsclust {

struct DcorTestResult {
    double r_star = 0.0;     // bias-corrected distance correlation
    double statistic = 0.0;  // t statistic
    double p_value = 1.0;    // one-sided (dependence inflates the statistic)
};

// Bias-corrected distance-correlation t-test of independence; the samples
// enter as precomputed pairwise-distance matrices.
DcorTestResult distance_correlation_ttest_from_distances(const Eigen::MatrixXd& dx,
                                                         const Eigen::MatrixXd& dy);

// Same test on paired curve samples (rows of x pair with rows of y);
// distances are trapezoid L2 distances on the grid.
DcorTestResult distance_correlation_test(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                                         const Grid& grid);

// Permutation alternative: shuffles the y sample n_perms times and compares
// the bias-corrected correlations.
DcorTestResult distance_correlation_permutation_test(const Eigen::MatrixXd& x,
                                                     const Eigen::MatrixXd& y, const Grid& grid,
                                                     int n_perms, std::uint64_t seed);

struct LagSelectionReport {
    std::vector<int> lags;             // the returned set {1..max selected}
    double corrected_alpha = 0.0;      // alpha / (n * max_lag)
    std::vector<int> per_series_lag;   // most significant rejected lag, 0 = none
    std::vector<double> per_series_p;  // p-value at that lag (1 when none rejected)
    bool fallback = false;             // nothing rejected anywhere -> {1}
};

// Per series, tests independence of (X_t, X_{t+l}) for l = 1..max_lag at the
// Bonferroni-corrected level, keeps each series' most significant rejected
// lag, and pools them as {1, ..., max over series}.
LagSelectionReport select_lags(const std::vector<FunctionalTimeSeries>& collection, double alpha,
                               int max_lag, bool use_permutation = false, int n_perms = 999,
                               std::uint64_t seed = 0);

}  // namespace ftsclust
