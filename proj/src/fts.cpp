#include "ftsclust/fts.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ftsclust/errors.hpp"

namespace ftsclust {

namespace {

Eigen::VectorXd trapezoid_weights(const std::vector<double>& u) {
    const std::size_t p = u.size();
    Eigen::VectorXd w(static_cast<Eigen::Index>(p));
    w[0] = (u[1] - u[0]) / 2.0;
    for (std::size_t j = 1; j + 1 < p; ++j) {
        w[static_cast<Eigen::Index>(j)] = (u[j + 1] - u[j - 1]) / 2.0;
    }
    w[static_cast<Eigen::Index>(p - 1)] = (u[p - 1] - u[p - 2]) / 2.0;
    return w;
}

}  // namespace

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw DimensionError("grid needs at least 2 points, got " +
                             std::to_string(points_.size()));
    }
    if (std::abs(points_.front()) > 1e-12 || std::abs(points_.back() - 1.0) > 1e-12) {
        throw DomainError("grid must span [0, 1], got [" +
                          std::to_string(points_.front()) + ", " +
                          std::to_string(points_.back()) + "]");
    }
    for (std::size_t j = 1; j < points_.size(); ++j) {
        if (!(points_[j] > points_[j - 1])) {
            throw DomainError("grid points must be strictly increasing (index " +
                              std::to_string(j) + ")");
        }
    }
    weights_ = trapezoid_weights(points_);
}

Grid Grid::uniform(std::size_t p) {
    if (p < 2) throw DimensionError("uniform grid needs p >= 2");
    std::vector<double> pts(p);
    for (std::size_t j = 0; j < p; ++j) {
        pts[j] = static_cast<double>(j) / static_cast<double>(p - 1);
    }
    return Grid(std::move(pts));
}

FunctionalTimeSeries::FunctionalTimeSeries(Eigen::MatrixXd values, Grid grid)
    : values_(std::move(values)), grid_(std::move(grid)) {
    if (values_.rows() < 1) throw DimensionError("series needs at least one curve");
    if (static_cast<std::size_t>(values_.cols()) != grid_.size()) {
        throw DimensionError("curve length " + std::to_string(values_.cols()) +
                             " does not match grid size " + std::to_string(grid_.size()));
    }
    if (!values_.allFinite()) throw DomainError("series contains non-finite values");
}

std::size_t quantile_order_index(double tau, std::size_t T) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw DomainError("quantile level must lie in (0, 1), got " + std::to_string(tau));
    }
    const double x = tau * static_cast<double>(T);
    const double r = std::round(x);
    double k = (std::abs(x - r) < 1e-9) ? r : std::ceil(x);
    if (k < 1.0) k = 1.0;
    return static_cast<std::size_t>(k);
}

QuantileCurve empirical_quantile_curve(const FunctionalTimeSeries& x, double tau) {
    const std::size_t T = x.length();
    const std::size_t p = x.grid_size();
    const std::size_t k = quantile_order_index(tau, T);
    QuantileCurve q;
    q.level = tau;
    q.values.resize(static_cast<Eigen::Index>(p));
    std::vector<double> buffer(T);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t t = 0; t < T; ++t) {
            buffer[t] = x.values()(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j));
        }
        std::nth_element(buffer.begin(), buffer.begin() + static_cast<std::ptrdiff_t>(k - 1),
                         buffer.end());
        q.values[static_cast<Eigen::Index>(j)] = buffer[k - 1];
    }
    return q;
}

double below_fraction(const Eigen::Ref<const Eigen::VectorXd>& curve,
                      const QuantileCurve& quantile) {
    if (curve.size() != quantile.values.size()) {
        throw DimensionError("curve and quantile curve lengths differ");
    }
    const Eigen::Index p = curve.size();
    Eigen::Index count = 0;
    for (Eigen::Index j = 0; j < p; ++j) {
        if (curve[j] <= quantile.values[j]) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(p);
}

double l2_inner(const Grid& grid, const Eigen::Ref<const Eigen::VectorXd>& f,
                const Eigen::Ref<const Eigen::VectorXd>& g) {
    if (static_cast<std::size_t>(f.size()) != grid.size() ||
        static_cast<std::size_t>(g.size()) != grid.size()) {
        throw DimensionError("function length does not match grid size");
    }
    return grid.weights().dot(f.cwiseProduct(g));
}

double l2_norm(const Grid& grid, const Eigen::Ref<const Eigen::VectorXd>& f) {
    return std::sqrt(l2_inner(grid, f, f));
}

namespace {

void require_positive(const Eigen::MatrixXd& values, const char* what) {
    for (Eigen::Index t = 0; t < values.rows(); ++t) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            if (values(t, j) <= 0.0) {
                throw DomainError(std::string(what) + " require strictly positive values; row " +
                                  std::to_string(t) + ", column " + std::to_string(j) + " is " +
                                  std::to_string(values(t, j)));
            }
        }
    }
}

}  // namespace

FunctionalTimeSeries log_returns(const FunctionalTimeSeries& x) {
    const Eigen::Index p = x.values().cols();
    if (p < 3) throw DimensionError("log returns need at least 3 grid points");
    require_positive(x.values(), "log returns");
    Eigen::MatrixXd logs = x.values().array().log();
    Eigen::MatrixXd r = logs.rightCols(p - 1) - logs.leftCols(p - 1);
    return FunctionalTimeSeries(std::move(r), Grid::uniform(static_cast<std::size_t>(p - 1)));
}

FunctionalTimeSeries improvement_rates(const FunctionalTimeSeries& x) {
    const Eigen::Index T = x.values().rows();
    if (T < 2) throw DomainError("improvement rates need at least 2 curves");
    require_positive(x.values(), "improvement rates");
    const auto prev = x.values().topRows(T - 1).array();
    const auto curr = x.values().bottomRows(T - 1).array();
    Eigen::MatrixXd r = 2.0 * (prev - curr) / (prev + curr);
    return FunctionalTimeSeries(std::move(r), x.grid());
}

}  // namespace ftsclust
