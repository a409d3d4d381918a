#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ftsclust/fts.hpp"

namespace ftsclust {

// What to do when an indicator series is constant and its autocorrelation
// undefined: raise, or emit 0 for that coordinate and count it.
enum class DegeneratePolicy { Error, Zero };

// Configuration of the quantile-threshold autocorrelation features.
// Reduced mode (empty `thresholds`) ties each threshold to its quantile
// level; explicit mode crosses every level with every threshold.
struct FqaParams {
    std::vector<int> lags;           // strictly increasing, >= 1
    std::vector<double> levels;      // strictly increasing, in (0, 1)
    std::vector<double> thresholds;  // strictly increasing, in [0, 1]; empty = reduced

    static FqaParams reduced(std::vector<int> lags, std::vector<double> levels);
    static FqaParams with_thresholds(std::vector<int> lags, std::vector<double> levels,
                                     std::vector<double> thresholds);

    bool reduced_mode() const { return thresholds.empty(); }
    // L*P^2 in reduced mode, L*P^2*B^2 in explicit mode.
    std::size_t feature_count() const;
    // Features are correlations scaled by 1/sqrt(4*L*P^2[*B^2]) so that the
    // squared Euclidean feature distance equals the averaged dissimilarity.
    double feature_scale() const;
    void validate() const;
    void validate_for_length(std::size_t T) const;
};

struct FqaFeatureVector {
    Eigen::VectorXd values;  // scaled, length feature_count()
    int degenerate_count = 0;
};

// Binary series I(below_fraction(X_t, q_tau) <= beta), t = 1..T.
std::vector<std::uint8_t> indicator_series(const FunctionalTimeSeries& x, double tau,
                                           double beta);

// gamma-hat: lagged joint indicator frequency minus the product of full-sample
// marginal frequencies.
double fqa_autocovariance(const FunctionalTimeSeries& x, double tau1, double tau2, int lag,
                          double beta1, double beta2);

// gamma-hat normalized by the Bernoulli standard deviations of both marginals.
// Throws DegenerateMarginal when either marginal frequency is 0 or 1.
double fqa_autocorrelation(const FunctionalTimeSeries& x, double tau1, double tau2, int lag,
                           double beta1, double beta2);

// All autocorrelations in frozen order (lag-major; then tau1, tau2 in reduced
// mode; tau1, tau2, beta1, beta2 in explicit mode), unscaled.
Eigen::VectorXd fqa_unscaled_features(const FunctionalTimeSeries& x, const FqaParams& params,
                                      DegeneratePolicy policy = DegeneratePolicy::Error,
                                      int* degenerate_count = nullptr);

// fqa_unscaled_features times feature_scale().
FqaFeatureVector feature_vector(const FunctionalTimeSeries& x, const FqaParams& params,
                                DegeneratePolicy policy = DegeneratePolicy::Error);

// Mean squared autocorrelation difference over the whole feature grid,
// averaged with the 1/(4*L*P^2[*B^2]) factor. Equals the squared Euclidean
// distance of the two feature vectors.
double d_fqa(const FunctionalTimeSeries& x, const FunctionalTimeSeries& y,
             const FqaParams& params, DegeneratePolicy policy = DegeneratePolicy::Error);

}  // namespace ftsclust
