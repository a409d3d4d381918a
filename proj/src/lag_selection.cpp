#include "ftsclust/lag_selection.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ftsclust/errors.hpp"
#include "ftsclust/rng.hpp"

namespace ftsclust {

namespace {

Eigen::MatrixXd curve_distance_matrix(const Eigen::MatrixXd& rows, const Grid& grid) {
    const Eigen::Index n = rows.rows();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = l2_norm(grid, (rows.row(i) - rows.row(j)).transpose().eval());
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

// U-centering: row/column means exclude the diagonal; the centered diagonal
// is zero by definition.
Eigen::MatrixXd u_center(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    const double nm2 = static_cast<double>(n - 2);
    Eigen::VectorXd row_sum = a.rowwise().sum();
    const double total = row_sum.sum();
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) {
                out(i, j) = 0.0;
            } else {
                out(i, j) = a(i, j) - row_sum[i] / nm2 - row_sum[j] / nm2 +
                            total / (nm2 * static_cast<double>(n - 1));
            }
        }
    }
    return out;
}

double u_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const Eigen::Index n = a.rows();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j) sum += a(i, j) * b(i, j);
        }
    }
    return sum / (static_cast<double>(n) * static_cast<double>(n - 3));
}

double bias_corrected_r(const Eigen::MatrixXd& dx, const Eigen::MatrixXd& dy) {
    Eigen::MatrixXd ax = u_center(dx);
    Eigen::MatrixXd ay = u_center(dy);
    const double vxx = u_inner(ax, ax);
    const double vyy = u_inner(ay, ay);
    if (vxx <= 0.0 || vyy <= 0.0) {
        throw DegenerateVariance("a sample has zero distance variance (all points equal)");
    }
    return u_inner(ax, ay) / std::sqrt(vxx * vyy);
}

}  // namespace

DcorTestResult distance_correlation_ttest_from_distances(const Eigen::MatrixXd& dx,
                                                         const Eigen::MatrixXd& dy) {
    const Eigen::Index n = dx.rows();
    if (dx.cols() != n || dy.rows() != n || dy.cols() != n) {
        throw DimensionError("distance matrices must be square and of equal size");
    }
    if (n < 10) throw DomainError("distance-correlation test needs at least 10 pairs");
    DcorTestResult result;
    result.r_star = bias_corrected_r(dx, dy);
    const double v = static_cast<double>(n) * static_cast<double>(n - 3) / 2.0;
    const double r = result.r_star;
    if (r >= 1.0) {
        result.statistic = std::numeric_limits<double>::infinity();
        result.p_value = 0.0;
        return result;
    }
    if (r <= -1.0) {
        result.statistic = -std::numeric_limits<double>::infinity();
        result.p_value = 1.0;
        return result;
    }
    result.statistic = std::sqrt(v - 1.0) * r / std::sqrt(1.0 - r * r);
    boost::math::students_t dist(v - 1.0);
    result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
    return result;
}

DcorTestResult distance_correlation_test(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                                         const Grid& grid) {
    if (x.rows() != y.rows()) throw DimensionError("samples must pair up (same row count)");
    return distance_correlation_ttest_from_distances(curve_distance_matrix(x, grid),
                                                     curve_distance_matrix(y, grid));
}

DcorTestResult distance_correlation_permutation_test(const Eigen::MatrixXd& x,
                                                     const Eigen::MatrixXd& y, const Grid& grid,
                                                     int n_perms, std::uint64_t seed) {
    if (x.rows() != y.rows()) throw DimensionError("samples must pair up (same row count)");
    if (n_perms < 99) throw DomainError("need at least 99 permutations");
    const Eigen::Index n = x.rows();
    if (n < 10) throw DomainError("distance-correlation test needs at least 10 pairs");
    Eigen::MatrixXd dx = curve_distance_matrix(x, grid);
    Eigen::MatrixXd dy = curve_distance_matrix(y, grid);
    DcorTestResult result;
    result.r_star = bias_corrected_r(dx, dy);
    result.statistic = result.r_star;
    int count = 0;
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    Eigen::MatrixXd dyp(n, n);
    for (int r = 0; r < n_perms; ++r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        std::iota(perm.begin(), perm.end(), 0);
        for (Eigen::Index k = 0; k < n - 1; ++k) {
            const Eigen::Index j =
                k + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n - k)));
            std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(j)]);
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                dyp(i, j) = dy(perm[static_cast<std::size_t>(i)],
                               perm[static_cast<std::size_t>(j)]);
            }
        }
        if (bias_corrected_r(dx, dyp) >= result.r_star) ++count;
    }
    result.p_value = (1.0 + count) / (static_cast<double>(n_perms) + 1.0);
    return result;
}

LagSelectionReport select_lags(const std::vector<FunctionalTimeSeries>& collection, double alpha,
                               int max_lag, bool use_permutation, int n_perms,
                               std::uint64_t seed) {
    if (collection.empty()) throw DimensionError("empty collection");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    if (max_lag < 1) throw DomainError("max_lag must be >= 1");
    const std::size_t n_series = collection.size();
    for (std::size_t i = 0; i < n_series; ++i) {
        if (collection[i].length() <= static_cast<std::size_t>(max_lag) + 3) {
            throw DomainError("series " + std::to_string(i) + " too short for max_lag " +
                              std::to_string(max_lag));
        }
    }
    LagSelectionReport report;
    report.corrected_alpha = alpha / (static_cast<double>(n_series) * max_lag);
    report.per_series_lag.assign(n_series, 0);
    report.per_series_p.assign(n_series, 1.0);
    int pooled_max = 0;
    for (std::size_t i = 0; i < n_series; ++i) {
        const auto& x = collection[i];
        const Eigen::Index T = static_cast<Eigen::Index>(x.length());
        // One T x T curve-distance matrix per series; the lag-l samples are
        // its leading and trailing principal submatrices.
        Eigen::MatrixXd dfull = curve_distance_matrix(x.values(), x.grid());
        double best_p = 1.0;
        int best_lag = 0;
        for (int lag = 1; lag <= max_lag; ++lag) {
            const Eigen::Index m = T - lag;
            DcorTestResult r;
            if (use_permutation) {
                r = distance_correlation_permutation_test(
                    x.values().topRows(m), x.values().bottomRows(m), x.grid(), n_perms,
                    derive_seed(seed, (static_cast<std::uint64_t>(i) << 20) +
                                          static_cast<std::uint64_t>(lag)));
            } else {
                r = distance_correlation_ttest_from_distances(dfull.topLeftCorner(m, m),
                                                              dfull.bottomRightCorner(m, m));
            }
            if (r.p_value < report.corrected_alpha && r.p_value < best_p) {
                best_p = r.p_value;
                best_lag = lag;
            }
        }
        report.per_series_lag[i] = best_lag;
        report.per_series_p[i] = best_lag == 0 ? 1.0 : best_p;
        pooled_max = std::max(pooled_max, best_lag);
    }
    if (pooled_max == 0) {
        report.fallback = true;
        pooled_max = 1;
    }
    report.lags.resize(static_cast<std::size_t>(pooled_max));
    std::iota(report.lags.begin(), report.lags.end(), 1);
    return report;
}

}  // namespace ftsclust
