#include "ftsclust/dissimilarity.hpp"

#include <cmath>
#include <string>

#include "ftsclust/detail/sqdist.hpp"
#include "ftsclust/errors.hpp"
#include "ftsclust/parallel.hpp"

namespace ftsclust {

std::string metric_name(Metric metric) {
    switch (metric) {
        case Metric::FQA: return "FQA";
        case Metric::FACF: return "FACF";
        case Metric::FSACF: return "FSACF";
        case Metric::KendallMax: return "K_m";
        case Metric::KendallIntegral: return "K_i";
    }
    throw DomainError("unknown metric enum value");
}

Metric parse_metric(const std::string& name) {
    if (name == "FQA") return Metric::FQA;
    if (name == "FACF") return Metric::FACF;
    if (name == "FSACF") return Metric::FSACF;
    if (name == "K_m") return Metric::KendallMax;
    if (name == "K_i") return Metric::KendallIntegral;
    throw DomainError("unknown metric '" + name + "' (expected FQA, FACF, FSACF, K_m, K_i)");
}

double FeatureSet::distance(Eigen::Index i, Eigen::Index j) const {
    return detail::scaled_sq_dist(unscaled.row(i).transpose().eval(),
                                  unscaled.row(j).transpose().eval(), scale);
}

namespace {

Eigen::VectorXd series_features(const FunctionalTimeSeries& x, const MetricConfig& config,
                                int* degenerate) {
    switch (config.metric) {
        case Metric::FQA:
            return fqa_unscaled_features(x, config.fqa, config.policy, degenerate);
        case Metric::FACF:
            return facf_profile(x, config.fqa.lags);
        case Metric::FSACF:
            return fsacf_profile(x, config.fqa.lags);
        case Metric::KendallMax:
            return kendall_profile(x, config.fqa.lags, Preorder::Max);
        case Metric::KendallIntegral:
            return kendall_profile(x, config.fqa.lags, Preorder::Integral);
    }
    throw DomainError("unknown metric enum value");
}

template <typename E>
[[noreturn]] void rethrow_tagged(const E& e, std::size_t i) {
    throw E("series " + std::to_string(i) + ": " + e.what());
}

}  // namespace

FeatureSet extract_features(const std::vector<FunctionalTimeSeries>& series,
                            const MetricConfig& config, int threads) {
    if (series.empty()) throw DimensionError("empty collection");
    config.fqa.validate();
    FeatureSet out;
    out.metric = config.metric;
    out.scale = config.metric == Metric::FQA
                    ? config.fqa.feature_scale()
                    : 1.0 / std::sqrt(4.0 * static_cast<double>(config.fqa.lags.size()));
    const std::size_t n = series.size();
    std::vector<Eigen::VectorXd> rows(n);
    std::vector<int> degenerate(n, 0);
    parallel_for(n, threads, [&](std::size_t i) {
        try {
            rows[i] = series_features(series[i], config, &degenerate[i]);
        } catch (const DegenerateMarginal& e) {
            throw DegenerateMarginal(e.tau, e.beta, e.lag,
                                     "series " + std::to_string(i) + ": " + e.what());
        } catch (const DegenerateVariance& e) {
            rethrow_tagged(e, i);
        } catch (const ConvergenceError& e) {
            rethrow_tagged(e, i);
        } catch (const DimensionError& e) {
            rethrow_tagged(e, i);
        } catch (const DomainError& e) {
            rethrow_tagged(e, i);
        }
    });
    const Eigen::Index F = rows[0].size();
    for (std::size_t i = 1; i < n; ++i) {
        if (rows[i].size() != F) {
            throw DimensionError("series " + std::to_string(i) +
                                 " produced a different feature count");
        }
    }
    out.unscaled.resize(static_cast<Eigen::Index>(n), F);
    for (std::size_t i = 0; i < n; ++i) {
        out.unscaled.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
        out.degenerate_count += degenerate[i];
    }
    return out;
}

DissimilarityMatrix pairwise_from_features(const FeatureSet& features) {
    const Eigen::Index n = features.unscaled.rows();
    DissimilarityMatrix out;
    out.metric = features.metric;
    out.values = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = features.distance(i, j);
            out.values(i, j) = d;
            out.values(j, i) = d;
        }
    }
    return out;
}

DissimilarityMatrix pairwise_matrix(const std::vector<FunctionalTimeSeries>& series,
                                    const MetricConfig& config, int threads) {
    return pairwise_from_features(extract_features(series, config, threads));
}

void validate_dissimilarity(const Eigen::MatrixXd& values) {
    if (values.rows() != values.cols()) throw DimensionError("dissimilarity matrix not square");
    if (values.rows() < 2) throw DimensionError("dissimilarity matrix needs n >= 2");
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        if (values(i, i) != 0.0) throw DomainError("dissimilarity diagonal must be zero");
        for (Eigen::Index j = i + 1; j < values.cols(); ++j) {
            if (values(i, j) != values(j, i)) {
                throw DomainError("dissimilarity matrix must be symmetric");
            }
            if (!(values(i, j) >= 0.0)) {
                throw DomainError("dissimilarities must be nonnegative and finite");
            }
        }
    }
}

}  // namespace ftsclust
