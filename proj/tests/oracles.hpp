// Brute-force reference implementations, written directly from the estimator
// definitions with plain loops. They deliberately share no code with the
// library so agreement between the two is evidence, not tautology.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

inline double sorted_quantile(std::vector<double> column, double tau) {
    const double k = tau * static_cast<double>(column.size());
    std::size_t idx = std::abs(k - std::round(k)) < 1e-9
                          ? static_cast<std::size_t>(std::llround(k))
                          : static_cast<std::size_t>(std::ceil(k));
    if (idx < 1) idx = 1;
    std::sort(column.begin(), column.end());
    return column[idx - 1];
}

inline std::vector<int> indicator(const Eigen::MatrixXd& x, double tau, double beta) {
    const Eigen::Index T = x.rows(), p = x.cols();
    std::vector<double> q(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        std::vector<double> col(T);
        for (Eigen::Index t = 0; t < T; ++t) col[t] = x(t, j);
        q[j] = sorted_quantile(col, tau);
    }
    std::vector<int> out(T);
    for (Eigen::Index t = 0; t < T; ++t) {
        int below = 0;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (x(t, j) <= q[j]) ++below;
        }
        out[t] = (static_cast<double>(below) / static_cast<double>(p) <= beta) ? 1 : 0;
    }
    return out;
}

struct Rho {
    double value = 0.0;
    bool degenerate = false;
};

inline Rho rho(const Eigen::MatrixXd& x, double tau1, double tau2, int lag, double beta1,
               double beta2) {
    const auto i1 = indicator(x, tau1, beta1);
    const auto i2 = indicator(x, tau2, beta2);
    const std::size_t T = i1.size();
    const std::size_t n = T - static_cast<std::size_t>(lag);
    double p1 = 0, p2 = 0, joint = 0;
    for (std::size_t t = 0; t < T; ++t) {
        p1 += i1[t];
        p2 += i2[t];
    }
    for (std::size_t t = 0; t < n; ++t) joint += i1[t] * i2[t + lag];
    p1 /= static_cast<double>(T);
    p2 /= static_cast<double>(T);
    joint /= static_cast<double>(n);
    Rho out;
    const double v = p1 * (1 - p1) * p2 * (1 - p2);
    if (v == 0.0) {
        out.degenerate = true;
        return out;
    }
    out.value = (joint - p1 * p2) / std::sqrt(v);
    return out;
}

// Reduced-mode d_FQA: mean squared rho difference over lags x levels^2,
// divided by 4. Returns false on any degenerate coordinate.
inline bool d_fqa_reduced(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                          const std::vector<int>& lags, const std::vector<double>& levels,
                          double* out) {
    double sum = 0.0;
    std::size_t count = 0;
    for (int l : lags) {
        for (double t1 : levels) {
            for (double t2 : levels) {
                Rho a = rho(x, t1, t2, l, t1, t2);
                Rho b = rho(y, t1, t2, l, t1, t2);
                if (a.degenerate || b.degenerate) return false;
                sum += (a.value - b.value) * (a.value - b.value);
                ++count;
            }
        }
    }
    *out = sum / (4.0 * static_cast<double>(count));
    return true;
}

inline bool d_fqa_explicit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                           const std::vector<int>& lags, const std::vector<double>& levels,
                           const std::vector<double>& betas, double* out) {
    double sum = 0.0;
    std::size_t count = 0;
    for (int l : lags) {
        for (double t1 : levels) {
            for (double t2 : levels) {
                for (double b1 : betas) {
                    for (double b2 : betas) {
                        Rho a = rho(x, t1, t2, l, b1, b2);
                        Rho b = rho(y, t1, t2, l, b1, b2);
                        if (a.degenerate || b.degenerate) return false;
                        sum += (a.value - b.value) * (a.value - b.value);
                        ++count;
                    }
                }
            }
        }
    }
    *out = sum / (4.0 * static_cast<double>(count));
    return true;
}

inline std::vector<double> trapezoid_weights(Eigen::Index p) {
    std::vector<double> w(p);
    const double h = 1.0 / static_cast<double>(p - 1);
    for (Eigen::Index j = 0; j < p; ++j) w[j] = (j == 0 || j == p - 1) ? h / 2 : h;
    return w;
}

// FACF by direct kernel enumeration: builds C_l(u_a, u_b) entry by entry and
// integrates with explicit double loops.
inline double facf(const Eigen::MatrixXd& x, int lag) {
    const Eigen::Index T = x.rows(), p = x.cols();
    const auto w = trapezoid_weights(p);
    std::vector<double> mean(p, 0.0);
    for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index t = 0; t < T; ++t) mean[j] += x(t, j);
        mean[j] /= static_cast<double>(T);
    }
    double num = 0.0;
    for (Eigen::Index a = 0; a < p; ++a) {
        for (Eigen::Index b = 0; b < p; ++b) {
            double c = 0.0;
            for (Eigen::Index t = 0; t + lag < T; ++t) {
                c += (x(t, a) - mean[a]) * (x(t + lag, b) - mean[b]);
            }
            c /= static_cast<double>(T);
            num += c * c * w[a] * w[b];
        }
    }
    double trace = 0.0;
    for (Eigen::Index a = 0; a < p; ++a) {
        double c = 0.0;
        for (Eigen::Index t = 0; t < T; ++t) {
            c += (x(t, a) - mean[a]) * (x(t, a) - mean[a]);
        }
        trace += w[a] * c / static_cast<double>(T);
    }
    return std::sqrt(num) / trace;
}

// Kendall autocorrelation by exhaustive pair enumeration.
inline double kendall(const std::vector<double>& score, int lag) {
    const std::size_t n = score.size() - static_cast<std::size_t>(lag);
    double conc = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            total += 1.0;
            const bool up = score[i] < score[j] && score[i + lag] < score[j + lag];
            const bool down = score[j] < score[i] && score[j + lag] < score[i + lag];
            if (up || down) conc += 1.0;
        }
    }
    return 2.0 * conc / total - 1.0;
}

// Classical ARI and Jaccard from the contingency table of two hard labelings.
struct CrispPair {
    double ari = 0.0;
    double jaccard = 0.0;
};

inline CrispPair crisp_indices(const std::vector<int>& a, const std::vector<int>& b) {
    const std::size_t n = a.size();
    double s11 = 0, s10 = 0, s01 = 0, s00 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same_a = a[i] == a[j];
            const bool same_b = b[i] == b[j];
            if (same_a && same_b) ++s11;
            else if (same_a) ++s10;
            else if (same_b) ++s01;
            else ++s00;
        }
    }
    CrispPair out;
    const double total = s11 + s10 + s01 + s00;
    const double expected = (s11 + s10) * (s11 + s01) / total;
    const double maximum = 0.5 * ((s11 + s10) + (s11 + s01));
    if (maximum == expected) {
        out.ari = (s10 == 0 && s01 == 0) ? 1.0 : 0.0;
    } else {
        out.ari = (s11 - expected) / (maximum - expected);
    }
    out.jaccard = (s11 + s10 + s01 == 0) ? 1.0 : s11 / (s11 + s10 + s01);
    return out;
}

}  // namespace oracle
