#include "ftsclust/acf_metrics.hpp"

#include <cmath>
#include <string>

#include "ftsclust/detail/sqdist.hpp"
#include "ftsclust/errors.hpp"

namespace ftsclust {

namespace {

void check_lag(int lag, std::size_t T, std::size_t min_overlap = 1) {
    if (lag < 1 || T < static_cast<std::size_t>(lag) + min_overlap) {
        throw DomainError("lag " + std::to_string(lag) + " out of range for series length " +
                          std::to_string(T));
    }
}

// Rows centered at the spatial median and normalized to unit L2 norm;
// a row closer than 1e-12 to the median becomes the zero function.
Eigen::MatrixXd sphered_rows(const FunctionalTimeSeries& x) {
    const Eigen::VectorXd median = spatial_median(x.values(), x.grid());
    Eigen::MatrixXd sphered(x.values().rows(), x.values().cols());
    Eigen::Index nonzero = 0;
    for (Eigen::Index i = 0; i < sphered.rows(); ++i) {
        Eigen::VectorXd dev = x.values().row(i).transpose() - median;
        const double norm = l2_norm(x.grid(), dev);
        if (norm < 1e-12) {
            sphered.row(i).setZero();
        } else {
            sphered.row(i) = dev.transpose() / norm;
            ++nonzero;
        }
    }
    if (nonzero == 0) {
        throw DegenerateVariance("all curves coincide with the spatial median");
    }
    return sphered;
}

void check_lags(const std::vector<int>& lags) {
    if (lags.empty()) throw DomainError("lag set must be non-empty");
    int prev = 0;
    for (int l : lags) {
        if (l <= prev) throw DomainError("lags must be strictly increasing positive integers");
        prev = l;
    }
}

double curve_score(const FunctionalTimeSeries& x, std::size_t t, Preorder preorder) {
    if (preorder == Preorder::Max) return x.curve(t).maxCoeff();
    return x.grid().weights().dot(x.curve(t).transpose());
}

}  // namespace

double facf(const FunctionalTimeSeries& x, int lag) {
    const std::size_t T = x.length();
    if (lag < 0 || T < static_cast<std::size_t>(lag) + 2) {
        throw DomainError("lag " + std::to_string(lag) + " out of range for series length " +
                          std::to_string(T) + " (need 0 <= lag <= T - 2)");
    }
    const Eigen::Index Ti = static_cast<Eigen::Index>(T);
    const Eigen::MatrixXd centered = x.values().rowwise() - x.values().colwise().mean();
    const Eigen::Index n = Ti - lag;
    // Lag-l autocovariance surface on the grid, 1/T normalization.
    Eigen::MatrixXd cl = centered.topRows(n).transpose() * centered.bottomRows(n) /
                         static_cast<double>(T);
    const Eigen::VectorXd& w = x.grid().weights();
    double numerator_sq = w.dot((cl.array().square().matrix() * w));
    // Trace of the lag-0 surface: integral of the pointwise variances.
    Eigen::VectorXd var0 = centered.array().square().colwise().sum() / static_cast<double>(T);
    double denominator = w.dot(var0);
    if (denominator <= 0.0) {
        throw DegenerateVariance("all curves are identical; lag-0 trace is zero");
    }
    return std::sqrt(numerator_sq) / denominator;
}

Eigen::VectorXd spatial_median(const Eigen::MatrixXd& curves, const Grid& grid, double tol,
                               int max_iter) {
    if (curves.rows() < 1) throw DimensionError("spatial median needs at least one curve");
    if (static_cast<std::size_t>(curves.cols()) != grid.size()) {
        throw DimensionError("curve length does not match grid size");
    }
    const Eigen::Index T = curves.rows();
    Eigen::VectorXd m = curves.colwise().mean();
    if (T == 1) return m;
    Eigen::VectorXd next(curves.cols());
    for (int it = 0; it < max_iter; ++it) {
        double weight_sum = 0.0;
        next.setZero();
        for (Eigen::Index i = 0; i < T; ++i) {
            double d = l2_norm(grid, (curves.row(i).transpose() - m).eval());
            if (d < 1e-10) d = 1e-10;  // damping keeps anchored points finite
            const double w = 1.0 / d;
            next += w * curves.row(i).transpose();
            weight_sum += w;
        }
        next /= weight_sum;
        const double step = l2_norm(grid, (next - m).eval());
        m = next;
        if (step < tol) return m;
    }
    throw ConvergenceError("spatial median did not converge in " + std::to_string(max_iter) +
                           " iterations");
}

double fsacf(const FunctionalTimeSeries& x, int lag) {
    const std::size_t T = x.length();
    check_lag(lag, T);
    const Eigen::MatrixXd sphered = sphered_rows(x);
    const Eigen::Index n = static_cast<Eigen::Index>(T) - lag;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        sum += l2_inner(x.grid(), sphered.row(i).transpose(),
                        sphered.row(i + lag).transpose());
    }
    return sum / static_cast<double>(T);
}

double kendall_acf(const FunctionalTimeSeries& x, int lag, Preorder preorder) {
    const std::size_t T = x.length();
    check_lag(lag, T, 3);
    const std::size_t n = T - static_cast<std::size_t>(lag);
    std::vector<double> score(T);
    for (std::size_t t = 0; t < T; ++t) score[t] = curve_score(x, t, preorder);
    double concordant2 = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::size_t il = i + static_cast<std::size_t>(lag);
            const std::size_t jl = j + static_cast<std::size_t>(lag);
            const bool up = score[i] < score[j] && score[il] < score[jl];
            const bool down = score[j] < score[i] && score[jl] < score[il];
            if (up || down) concordant2 += 2.0;
        }
    }
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return concordant2 / pairs - 1.0;
}

Eigen::VectorXd facf_profile(const FunctionalTimeSeries& x, const std::vector<int>& lags) {
    check_lags(lags);
    Eigen::VectorXd out(static_cast<Eigen::Index>(lags.size()));
    for (std::size_t k = 0; k < lags.size(); ++k) {
        out[static_cast<Eigen::Index>(k)] = facf(x, lags[k]);
    }
    return out;
}

Eigen::VectorXd fsacf_profile(const FunctionalTimeSeries& x, const std::vector<int>& lags) {
    check_lags(lags);
    // One spatial median and one sphering pass shared across lags.
    const std::size_t T = x.length();
    check_lag(lags.back(), T);
    const Eigen::MatrixXd sphered = sphered_rows(x);
    Eigen::VectorXd out(static_cast<Eigen::Index>(lags.size()));
    for (std::size_t k = 0; k < lags.size(); ++k) {
        const Eigen::Index n = static_cast<Eigen::Index>(T) - lags[k];
        double sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            sum += l2_inner(x.grid(), sphered.row(i).transpose(),
                            sphered.row(i + lags[k]).transpose());
        }
        out[static_cast<Eigen::Index>(k)] = sum / static_cast<double>(T);
    }
    return out;
}

Eigen::VectorXd kendall_profile(const FunctionalTimeSeries& x, const std::vector<int>& lags,
                                Preorder preorder) {
    check_lags(lags);
    Eigen::VectorXd out(static_cast<Eigen::Index>(lags.size()));
    for (std::size_t k = 0; k < lags.size(); ++k) {
        out[static_cast<Eigen::Index>(k)] = kendall_acf(x, lags[k], preorder);
    }
    return out;
}

double d_facf(const FunctionalTimeSeries& x, const FunctionalTimeSeries& y,
              const std::vector<int>& lags) {
    const double scale = 1.0 / std::sqrt(4.0 * static_cast<double>(lags.size()));
    return detail::scaled_sq_dist(facf_profile(x, lags), facf_profile(y, lags), scale);
}

double d_fsacf(const FunctionalTimeSeries& x, const FunctionalTimeSeries& y,
               const std::vector<int>& lags) {
    const double scale = 1.0 / std::sqrt(4.0 * static_cast<double>(lags.size()));
    return detail::scaled_sq_dist(fsacf_profile(x, lags), fsacf_profile(y, lags), scale);
}

double d_kendall(const FunctionalTimeSeries& x, const FunctionalTimeSeries& y,
                 const std::vector<int>& lags, Preorder preorder) {
    const double scale = 1.0 / std::sqrt(4.0 * static_cast<double>(lags.size()));
    return detail::scaled_sq_dist(kendall_profile(x, lags, preorder),
                                  kendall_profile(y, lags, preorder), scale);
}

}  // namespace ftsclust
