#include "ftsclust/fqa.hpp"

#include <cmath>
#include <string>

#include "ftsclust/detail/sqdist.hpp"
#include "ftsclust/errors.hpp"

namespace ftsclust {

namespace {

void check_increasing_in(const std::vector<double>& v, double lo_excl, double hi,
                         bool hi_inclusive, const char* what) {
    if (v.empty()) throw DomainError(std::string(what) + " must be non-empty");
    double prev = lo_excl;
    for (double x : v) {
        if (!(x > prev)) {
            throw DomainError(std::string(what) + " must be strictly increasing and > " +
                              std::to_string(lo_excl));
        }
        if (hi_inclusive ? !(x <= hi) : !(x < hi)) {
            throw DomainError(std::string(what) + " out of range: " + std::to_string(x));
        }
        prev = x;
    }
}

// Per-series cache of below-the-quantile fractions, one row per level.
// Indicators for any (level, threshold) pair are comparisons against it.
struct FractionPanel {
    Eigen::MatrixXd fractions;  // levels x T

    FractionPanel(const FunctionalTimeSeries& x, const std::vector<double>& levels) {
        const std::size_t T = x.length();
        fractions.resize(static_cast<Eigen::Index>(levels.size()), static_cast<Eigen::Index>(T));
        for (std::size_t a = 0; a < levels.size(); ++a) {
            QuantileCurve q = empirical_quantile_curve(x, levels[a]);
            for (std::size_t t = 0; t < T; ++t) {
                fractions(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) =
                    below_fraction(x.curve(t).transpose(), q);
            }
        }
    }
};

struct MarginalPair {
    double rho;
    bool degenerate;
    double bad_tau;
    double bad_beta;
};

// Correlation of two indicator sequences at `lag`. Marginal frequencies use
// the full sample; the joint frequency averages the T-lag overlapping pairs.
MarginalPair indicator_correlation(const Eigen::VectorXd& f1, double beta1, double tau1,
                                   const Eigen::VectorXd& f2, double beta2, double tau2,
                                   int lag) {
    const Eigen::Index T = f1.size();
    const Eigen::Index n = T - lag;
    double p1 = 0.0, p2 = 0.0, joint = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) {
        if (f1[t] <= beta1) p1 += 1.0;
        if (f2[t] <= beta2) p2 += 1.0;
    }
    for (Eigen::Index t = 0; t < n; ++t) {
        if (f1[t] <= beta1 && f2[t + lag] <= beta2) joint += 1.0;
    }
    p1 /= static_cast<double>(T);
    p2 /= static_cast<double>(T);
    joint /= static_cast<double>(n);
    const double var1 = p1 * (1.0 - p1);
    const double var2 = p2 * (1.0 - p2);
    MarginalPair out{0.0, false, tau1, beta1};
    if (var1 == 0.0 || var2 == 0.0) {
        out.degenerate = true;
        if (var1 != 0.0) {
            out.bad_tau = tau2;
            out.bad_beta = beta2;
        }
        return out;
    }
    out.rho = (joint - p1 * p2) / std::sqrt(var1 * var2);
    return out;
}

}  // namespace

FqaParams FqaParams::reduced(std::vector<int> lags, std::vector<double> levels) {
    FqaParams params{std::move(lags), std::move(levels), {}};
    params.validate();
    return params;
}

FqaParams FqaParams::with_thresholds(std::vector<int> lags, std::vector<double> levels,
                                     std::vector<double> thresholds) {
    FqaParams params{std::move(lags), std::move(levels), std::move(thresholds)};
    if (params.thresholds.empty()) {
        throw DomainError("explicit mode needs at least one threshold");
    }
    params.validate();
    return params;
}

std::size_t FqaParams::feature_count() const {
    const std::size_t L = lags.size();
    const std::size_t P = levels.size();
    const std::size_t B = thresholds.size();
    return reduced_mode() ? L * P * P : L * P * P * B * B;
}

double FqaParams::feature_scale() const {
    return 1.0 / std::sqrt(4.0 * static_cast<double>(feature_count()));
}

void FqaParams::validate() const {
    if (lags.empty()) throw DomainError("lag set must be non-empty");
    int prev = 0;
    for (int l : lags) {
        if (l <= prev) throw DomainError("lags must be strictly increasing positive integers");
        prev = l;
    }
    check_increasing_in(levels, 0.0, 1.0, false, "quantile levels");
    if (!thresholds.empty()) {
        double prev = -1.0;
        for (double b : thresholds) {
            if (!(b >= 0.0 && b <= 1.0)) {
                throw DomainError("thresholds must lie in [0, 1], got " + std::to_string(b));
            }
            if (!(b > prev)) throw DomainError("thresholds must be strictly increasing");
            prev = b;
        }
    }
}

void FqaParams::validate_for_length(std::size_t T) const {
    if (T < 3) throw DimensionError("need at least 3 curves for lagged autocorrelation");
    if (static_cast<std::size_t>(lags.back()) > T - 2) {
        throw DomainError("largest lag " + std::to_string(lags.back()) +
                          " is out of range for series length " + std::to_string(T) +
                          " (need lag <= T - 2)");
    }
}

std::vector<std::uint8_t> indicator_series(const FunctionalTimeSeries& x, double tau,
                                           double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw DomainError("threshold must lie in [0, 1], got " + std::to_string(beta));
    }
    QuantileCurve q = empirical_quantile_curve(x, tau);
    std::vector<std::uint8_t> out(x.length());
    for (std::size_t t = 0; t < x.length(); ++t) {
        out[t] = below_fraction(x.curve(t).transpose(), q) <= beta ? 1 : 0;
    }
    return out;
}

double fqa_autocovariance(const FunctionalTimeSeries& x, double tau1, double tau2, int lag,
                          double beta1, double beta2) {
    const std::size_t T = x.length();
    if (lag < 1 || T < 3 || static_cast<std::size_t>(lag) > T - 2) {
        throw DomainError("lag out of range: need 1 <= lag <= T - 2");
    }
    auto i1 = indicator_series(x, tau1, beta1);
    auto i2 = indicator_series(x, tau2, beta2);
    double p1 = 0.0, p2 = 0.0, joint = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        p1 += i1[t];
        p2 += i2[t];
    }
    for (std::size_t t = 0; t + static_cast<std::size_t>(lag) < T; ++t) {
        joint += i1[t] * i2[t + static_cast<std::size_t>(lag)];
    }
    p1 /= static_cast<double>(T);
    p2 /= static_cast<double>(T);
    joint /= static_cast<double>(T - static_cast<std::size_t>(lag));
    return joint - p1 * p2;
}

double fqa_autocorrelation(const FunctionalTimeSeries& x, double tau1, double tau2, int lag,
                           double beta1, double beta2) {
    const std::size_t T = x.length();
    if (lag < 1 || T < 3 || static_cast<std::size_t>(lag) > T - 2) {
        throw DomainError("lag out of range: need 1 <= lag <= T - 2");
    }
    auto i1 = indicator_series(x, tau1, beta1);
    auto i2 = indicator_series(x, tau2, beta2);
    double p1 = 0.0, p2 = 0.0, joint = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        p1 += i1[t];
        p2 += i2[t];
    }
    for (std::size_t t = 0; t + static_cast<std::size_t>(lag) < T; ++t) {
        joint += i1[t] * i2[t + static_cast<std::size_t>(lag)];
    }
    p1 /= static_cast<double>(T);
    p2 /= static_cast<double>(T);
    joint /= static_cast<double>(T - static_cast<std::size_t>(lag));
    const double var1 = p1 * (1.0 - p1);
    const double var2 = p2 * (1.0 - p2);
    if (var1 == 0.0) {
        throw DegenerateMarginal(tau1, beta1, lag,
                                 "indicator series at level " + std::to_string(tau1) +
                                     ", threshold " + std::to_string(beta1) + " is constant");
    }
    if (var2 == 0.0) {
        throw DegenerateMarginal(tau2, beta2, lag,
                                 "indicator series at level " + std::to_string(tau2) +
                                     ", threshold " + std::to_string(beta2) + " is constant");
    }
    return (joint - p1 * p2) / std::sqrt(var1 * var2);
}

Eigen::VectorXd fqa_unscaled_features(const FunctionalTimeSeries& x, const FqaParams& params,
                                      DegeneratePolicy policy, int* degenerate_count) {
    params.validate();
    params.validate_for_length(x.length());
    FractionPanel panel(x, params.levels);
    const std::size_t P = params.levels.size();
    const std::size_t B = params.thresholds.size();
    Eigen::VectorXd out(static_cast<Eigen::Index>(params.feature_count()));
    Eigen::Index k = 0;
    int zeroed = 0;
    auto emit = [&](const MarginalPair& r, int lag) {
        if (r.degenerate) {
            if (policy == DegeneratePolicy::Error) {
                throw DegenerateMarginal(
                    r.bad_tau, r.bad_beta, lag,
                    "indicator series at level " + std::to_string(r.bad_tau) + ", threshold " +
                        std::to_string(r.bad_beta) + " is constant (lag " + std::to_string(lag) +
                        ")");
            }
            out[k++] = 0.0;
            ++zeroed;
        } else {
            out[k++] = r.rho;
        }
    };
    for (int lag : params.lags) {
        for (std::size_t a = 0; a < P; ++a) {
            for (std::size_t c = 0; c < P; ++c) {
                const auto f1 = panel.fractions.row(static_cast<Eigen::Index>(a)).transpose();
                const auto f2 = panel.fractions.row(static_cast<Eigen::Index>(c)).transpose();
                if (params.reduced_mode()) {
                    emit(indicator_correlation(f1, params.levels[a], params.levels[a], f2,
                                               params.levels[c], params.levels[c], lag),
                         lag);
                } else {
                    for (std::size_t b1 = 0; b1 < B; ++b1) {
                        for (std::size_t b2 = 0; b2 < B; ++b2) {
                            emit(indicator_correlation(f1, params.thresholds[b1],
                                                       params.levels[a], f2,
                                                       params.thresholds[b2], params.levels[c],
                                                       lag),
                                 lag);
                        }
                    }
                }
            }
        }
    }
    if (degenerate_count) *degenerate_count = zeroed;
    return out;
}

FqaFeatureVector feature_vector(const FunctionalTimeSeries& x, const FqaParams& params,
                                DegeneratePolicy policy) {
    FqaFeatureVector fv;
    fv.values = fqa_unscaled_features(x, params, policy, &fv.degenerate_count);
    fv.values *= params.feature_scale();
    return fv;
}

double d_fqa(const FunctionalTimeSeries& x, const FunctionalTimeSeries& y,
             const FqaParams& params, DegeneratePolicy policy) {
    Eigen::VectorXd rx = fqa_unscaled_features(x, params, policy, nullptr);
    Eigen::VectorXd ry = fqa_unscaled_features(y, params, policy, nullptr);
    return detail::scaled_sq_dist(rx, ry, params.feature_scale());
}

}  // namespace ftsclust
