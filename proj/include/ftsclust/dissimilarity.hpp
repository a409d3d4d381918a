#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ftsclust/acf_metrics.hpp"
#include "ftsclust/fqa.hpp"
#include "ftsclust/fts.hpp"

namespace ftsclust {

enum class Metric { FQA, FACF, FSACF, KendallMax, KendallIntegral };

std::string metric_name(Metric metric);          // FQA, FACF, FSACF, K_m, K_i
Metric parse_metric(const std::string& name);    // inverse, case-sensitive tags

struct MetricConfig {
    Metric metric = Metric::FQA;
    // FQA reads all of `fqa`; the other metrics read only fqa.lags.
    FqaParams fqa = FqaParams::reduced({1}, {0.1, 0.5, 0.9});
    DegeneratePolicy policy = DegeneratePolicy::Error;
};

// Every metric here is the scaled squared Euclidean distance between
// per-series correlation vectors, so a collection embeds as a feature matrix
// and all pairwise work happens on rows.
struct FeatureSet {
    Eigen::MatrixXd unscaled;  // n x F, raw correlations in frozen order
    double scale = 1.0;        // distance(i,j) = ||scale*(row_i - row_j)||^2
    Metric metric = Metric::FQA;
    int degenerate_count = 0;  // coordinates zeroed under DegeneratePolicy::Zero

    Eigen::MatrixXd scaled() const { return unscaled * scale; }
    double distance(Eigen::Index i, Eigen::Index j) const;
};

struct DissimilarityMatrix {
    Eigen::MatrixXd values;  // n x n, symmetric, zero diagonal
    Metric metric = Metric::FQA;

    Eigen::Index size() const { return values.rows(); }
};

// Per-series feature rows; series are independent so extraction may run in
// parallel (threads = 0 means hardware concurrency). Errors are reported for
// the lowest offending series index regardless of thread count.
FeatureSet extract_features(const std::vector<FunctionalTimeSeries>& series,
                            const MetricConfig& config, int threads = 1);

DissimilarityMatrix pairwise_from_features(const FeatureSet& features);

// extract_features + pairwise_from_features; entry (i,j) equals the
// standalone d_* call on (series[i], series[j]) bit for bit.
DissimilarityMatrix pairwise_matrix(const std::vector<FunctionalTimeSeries>& series,
                                    const MetricConfig& config, int threads = 1);

void validate_dissimilarity(const Eigen::MatrixXd& values);

}  // namespace ftsclust
