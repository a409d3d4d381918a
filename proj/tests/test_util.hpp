#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ftsclust/fts.hpp"
#include "ftsclust/rng.hpp"

namespace testutil {

inline ftsclust::FunctionalTimeSeries make_series(
    const std::vector<std::vector<double>>& rows) {
    const Eigen::Index T = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index p = static_cast<Eigen::Index>(rows.front().size());
    Eigen::MatrixXd values(T, p);
    for (Eigen::Index t = 0; t < T; ++t) {
        for (Eigen::Index j = 0; j < p; ++j) values(t, j) = rows[t][j];
    }
    return ftsclust::FunctionalTimeSeries(values,
                                          ftsclust::Grid::uniform(static_cast<std::size_t>(p)));
}

// Rough-but-smooth random curves: cumulative sums of Gaussian steps.
inline ftsclust::FunctionalTimeSeries random_series(std::size_t T, std::size_t p,
                                                    std::uint64_t seed) {
    ftsclust::Rng rng(seed);
    Eigen::MatrixXd values(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(p));
    for (Eigen::Index t = 0; t < values.rows(); ++t) {
        double acc = rng.gaussian();
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            values(t, j) = acc;
            acc += 0.3 * rng.gaussian();
        }
    }
    return ftsclust::FunctionalTimeSeries(values, ftsclust::Grid::uniform(p));
}

inline ftsclust::FunctionalTimeSeries constant_series(std::size_t T, std::size_t p,
                                                      double value) {
    Eigen::MatrixXd values =
        Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(p),
                                  value);
    return ftsclust::FunctionalTimeSeries(values, ftsclust::Grid::uniform(p));
}

}  // namespace testutil
