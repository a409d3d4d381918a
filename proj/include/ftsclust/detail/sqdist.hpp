#pragma once

#include <Eigen/Dense>

namespace ftsclust::detail {

// Scaled squared Euclidean distance between unscaled correlation vectors.
// Every dissimilarity in the library funnels through this one loop so that
// the standalone d_* functions and pairwise_matrix agree bit for bit.
inline double scaled_sq_dist(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double scale) {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return sum * (scale * scale);
}

}  // namespace ftsclust::detail
