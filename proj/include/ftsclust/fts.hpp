#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace ftsclust {

// Evaluation grid on [0, 1]: strictly increasing, first point 0, last point 1,
// at least two points. Trapezoid quadrature weights are precomputed since
// every integral in the library runs over the same grid.
class Grid {
public:
    explicit Grid(std::vector<double> points);
    static Grid uniform(std::size_t p);

    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t j) const { return points_[j]; }
    const std::vector<double>& points() const { return points_; }
    const Eigen::VectorXd& weights() const { return weights_; }

    bool operator==(const Grid& other) const { return points_ == other.points_; }

private:
    std::vector<double> points_;
    Eigen::VectorXd weights_;
};

// T discretized curves on a shared grid, rows are time, columns are grid
// points. Values must be finite.
class FunctionalTimeSeries {
public:
    FunctionalTimeSeries(Eigen::MatrixXd values, Grid grid);

    std::size_t length() const { return static_cast<std::size_t>(values_.rows()); }
    std::size_t grid_size() const { return static_cast<std::size_t>(values_.cols()); }
    const Eigen::MatrixXd& values() const { return values_; }
    const Grid& grid() const { return grid_; }
    Eigen::MatrixXd::ConstRowXpr curve(std::size_t t) const {
        return values_.row(static_cast<Eigen::Index>(t));
    }

private:
    Eigen::MatrixXd values_;
    Grid grid_;
};

struct QuantileCurve {
    double level = 0.0;
    Eigen::VectorXd values;
};

// Pointwise empirical quantile: at each grid point the ceil(tau*T)-th order
// statistic of the T sampled values (inf{x : Fhat(x) >= tau}).
QuantileCurve empirical_quantile_curve(const FunctionalTimeSeries& x, double tau);

// The order-statistic index k for sample size T and level tau, 1-based.
// ceil() after snapping near-integer products of decimal taus.
std::size_t quantile_order_index(double tau, std::size_t T);

// Fraction of grid points where `curve` lies at or below the quantile curve.
double below_fraction(const Eigen::Ref<const Eigen::VectorXd>& curve,
                      const QuantileCurve& quantile);

// Trapezoid integral of pointwise products: <f, g> on the grid.
double l2_inner(const Grid& grid, const Eigen::Ref<const Eigen::VectorXd>& f,
                const Eigen::Ref<const Eigen::VectorXd>& g);

// sqrt(<f, f>).
double l2_norm(const Grid& grid, const Eigen::Ref<const Eigen::VectorXd>& f);

// Within-curve log differences for strictly positive panels:
// r_t(u_j) = log x_t(u_j) - log x_t(u_{j-1}). Output keeps all T rows but has
// p-1 columns, re-declared on p-1 evenly spaced points.
FunctionalTimeSeries log_returns(const FunctionalTimeSeries& x);

// 2(x_{t-1} - x_t) / (x_{t-1} + x_t) per grid point, for strictly positive
// inputs where a decrease is an improvement. Output has T-1 rows, same grid.
FunctionalTimeSeries improvement_rates(const FunctionalTimeSeries& x);

}  // namespace ftsclust
