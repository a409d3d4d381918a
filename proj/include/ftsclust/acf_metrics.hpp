#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ftsclust/fts.hpp"

namespace ftsclust {

// L2-norm based functional autocorrelation at one lag: the Hilbert-Schmidt
// norm of the lag-l empirical autocovariance surface over the trace of the
// lag-0 surface. Always non-negative.
double facf(const FunctionalTimeSeries& x, int lag);

// Geometric median of the rows of `curves` under the trapezoid L2 norm,
// damped Weiszfeld starting from the pointwise mean.
Eigen::VectorXd spatial_median(const Eigen::MatrixXd& curves, const Grid& grid,
                               double tol = 1e-8, int max_iter = 10000);

// Spherical autocorrelation: mean inner product of unit-normalized deviations
// from the spatial median, lag-l pairs, averaged with 1/T. Deviations with
// norm below 1e-12 count as zero.
double fsacf(const FunctionalTimeSeries& x, int lag);

enum class Preorder { Max, Integral };

// Kendall-style autocorrelation from concordance of (X_i, X_{i+l}) pairs
// under a scalar preorder (curve maximum or curve integral); U-statistic over
// all pairs of time indices, ties non-concordant.
double kendall_acf(const FunctionalTimeSeries& x, int lag, Preorder preorder);

// Per-lag profiles in lag order; building blocks of the distances below.
Eigen::VectorXd facf_profile(const FunctionalTimeSeries& x, const std::vector<int>& lags);
Eigen::VectorXd fsacf_profile(const FunctionalTimeSeries& x, const std::vector<int>& lags);
Eigen::VectorXd kendall_profile(const FunctionalTimeSeries& x, const std::vector<int>& lags,
                                Preorder preorder);

// Mean squared profile difference with the 1/(4L) averaging factor.
double d_facf(const FunctionalTimeSeries& x, const FunctionalTimeSeries& y,
              const std::vector<int>& lags);
double d_fsacf(const FunctionalTimeSeries& x, const FunctionalTimeSeries& y,
               const std::vector<int>& lags);
double d_kendall(const FunctionalTimeSeries& x, const FunctionalTimeSeries& y,
                 const std::vector<int>& lags, Preorder preorder);

}  // namespace ftsclust
