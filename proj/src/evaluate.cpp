#include "ftsclust/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "ftsclust/errors.hpp"
#include "ftsclust/parallel.hpp"
#include "ftsclust/rng.hpp"

namespace ftsclust {

namespace {

void check_pair_inputs(const std::vector<int>& reference, const Eigen::MatrixXd& memberships) {
    const std::size_t n = reference.size();
    if (n < 2) throw DimensionError("need at least 2 objects");
    if (static_cast<std::size_t>(memberships.rows()) != n) {
        throw DimensionError("reference and memberships disagree on n");
    }
    std::set<int> distinct(reference.begin(), reference.end());
    if (distinct.size() < 2) {
        throw DomainError("reference partition has a single label; index undefined");
    }
}

struct PairCounts {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

PairCounts accumulate_pairs(const std::vector<int>& reference,
                            const Eigen::MatrixXd& memberships) {
    const Eigen::Index n = memberships.rows();
    const Eigen::Index C = memberships.cols();
    PairCounts acc;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double s_q = 0.0, d_q = 0.0;
            for (Eigen::Index c = 0; c < C; ++c) {
                s_q = std::max(s_q, std::min(memberships(i, c), memberships(j, c)));
                for (Eigen::Index k = 0; k < C; ++k) {
                    if (k == c) continue;
                    d_q = std::max(d_q, std::min(memberships(i, c), memberships(j, k)));
                }
            }
            const bool same = reference[static_cast<std::size_t>(i)] ==
                              reference[static_cast<std::size_t>(j)];
            const double s_r = same ? 1.0 : 0.0;
            const double d_r = 1.0 - s_r;
            acc.a += std::min(s_r, s_q);
            acc.b += std::min(s_r, d_q);
            acc.c += std::min(d_r, s_q);
            acc.d += std::min(d_r, d_q);
        }
    }
    return acc;
}

FuzzyIndexPair indices_from_counts(const PairCounts& pc) {
    FuzzyIndexPair out;
    const double denom = (pc.a + pc.b) * (pc.b + pc.d) + (pc.a + pc.c) * (pc.c + pc.d);
    if (denom == 0.0) {
        // Both partitions are trivial in the same way (e.g. all singletons on
        // both sides): agreement iff no cross terms.
        out.arif = (pc.b == 0.0 && pc.c == 0.0) ? 1.0 : 0.0;
    } else {
        out.arif = 2.0 * (pc.a * pc.d - pc.b * pc.c) / denom;
    }
    const double abc = pc.a + pc.b + pc.c;
    out.jif = abc == 0.0 ? 1.0 : pc.a / abc;
    return out;
}

}  // namespace

FuzzyIndexPair arif_jif(const std::vector<int>& reference, const Eigen::MatrixXd& memberships) {
    check_pair_inputs(reference, memberships);
    return indices_from_counts(accumulate_pairs(reference, memberships));
}

std::vector<int> harden(const Eigen::MatrixXd& memberships) {
    std::vector<int> out(static_cast<std::size_t>(memberships.rows()));
    for (Eigen::Index i = 0; i < memberships.rows(); ++i) {
        int best = 0;
        for (Eigen::Index c = 1; c < memberships.cols(); ++c) {
            if (memberships(i, c) > memberships(i, best)) best = static_cast<int>(c);
        }
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

CrispIndexPair ari_ji(const std::vector<int>& reference, const Eigen::MatrixXd& memberships) {
    check_pair_inputs(reference, memberships);
    const std::vector<int> hard = harden(memberships);
    // Crisp one-hot candidate through the same pair-counting path.
    const Eigen::Index n = memberships.rows();
    const Eigen::Index C = memberships.cols();
    Eigen::MatrixXd crisp = Eigen::MatrixXd::Zero(n, C);
    for (Eigen::Index i = 0; i < n; ++i) {
        crisp(i, hard[static_cast<std::size_t>(i)]) = 1.0;
    }
    const FuzzyIndexPair f = indices_from_counts(accumulate_pairs(reference, crisp));
    return CrispIndexPair{f.arif, f.jif};
}

bool uncertain_success(const Eigen::MatrixXd& memberships, const std::vector<int>& labels,
                       double threshold) {
    const std::size_t n = labels.size();
    if (static_cast<std::size_t>(memberships.rows()) != n) {
        throw DimensionError("labels and memberships disagree on n");
    }
    if (memberships.cols() != 2) throw DomainError("uncertain success rule needs C = 2");
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw DomainError("threshold must lie in (0, 1)");
    }
    std::vector<Eigen::Index> block1, block2, isolated;
    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] == 1) block1.push_back(static_cast<Eigen::Index>(i));
        else if (labels[i] == 2) block2.push_back(static_cast<Eigen::Index>(i));
        else if (labels[i] == 0) isolated.push_back(static_cast<Eigen::Index>(i));
        else throw DomainError("labels must be 1, 2 or 0 (isolated)");
    }
    if (block1.size() != 5 || block2.size() != 5 || isolated.size() != 1) {
        throw DomainError("expected the 5 + 5 + 1 shape");
    }
    for (int cluster1 = 0; cluster1 < 2; ++cluster1) {
        const Eigen::Index c1 = cluster1;
        const Eigen::Index c2 = 1 - cluster1;
        bool ok = true;
        for (Eigen::Index i : block1) ok = ok && memberships(i, c1) > threshold;
        for (Eigen::Index i : block2) ok = ok && memberships(i, c2) > threshold;
        ok = ok && memberships(isolated[0], 0) <= threshold &&
             memberships(isolated[0], 1) <= threshold;
        if (ok) return true;
    }
    return false;
}

double area_under_fuzziness_curve(const std::vector<double>& m_values,
                                  const std::vector<double>& rates) {
    if (m_values.size() != rates.size()) {
        throw DimensionError("m values and rates must have equal length");
    }
    if (m_values.size() < 2) throw DimensionError("need at least 2 points to integrate");
    double area = 0.0;
    for (std::size_t k = 0; k + 1 < m_values.size(); ++k) {
        const double h = m_values[k + 1] - m_values[k];
        if (!(h > 0.0)) throw DomainError("m values must be strictly increasing");
        area += h * (rates[k] + rates[k + 1]) / 2.0;
    }
    return area;
}

Eigen::MatrixXd cluster_summary(const Eigen::MatrixXd& features,
                                const Eigen::MatrixXd& memberships) {
    if (features.rows() != memberships.rows()) {
        throw DimensionError("features and memberships disagree on n");
    }
    const Eigen::Index C = memberships.cols();
    Eigen::MatrixXd out(C, features.cols());
    for (Eigen::Index c = 0; c < C; ++c) {
        const double denom = memberships.col(c).sum();
        if (denom == 0.0) {
            throw DomainError("cluster " + std::to_string(c) + " has zero total membership");
        }
        out.row(c) = (memberships.col(c).transpose() * features) / denom;
    }
    return out;
}

namespace {

double configuration_stress(const Eigen::MatrixXd& coords, const Eigen::MatrixXd& D) {
    const Eigen::Index n = D.rows();
    double num = 0.0;
    double den = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            const double fitted = (coords.row(i) - coords.row(j)).norm();
            const double r = fitted - D(i, j);
            num += r * r;
            den += D(i, j) * D(i, j);
        }
    }
    if (den == 0.0) throw DomainError("all dissimilarities are zero");
    return std::sqrt(num / den);
}

}  // namespace

MdsResult mds_2d(const Eigen::MatrixXd& D) {
    const Eigen::Index n = D.rows();
    if (D.cols() != n) throw DimensionError("dissimilarity matrix must be square");
    if (n < 3) throw DimensionError("2-D scaling needs at least 3 objects");
    Eigen::MatrixXd D2 = D.array().square();
    Eigen::VectorXd row_mean = D2.rowwise().mean();
    const double total_mean = D2.mean();
    // B = -1/2 J D2 J expressed entrywise via the centering means.
    Eigen::MatrixXd B(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            B(i, j) = -0.5 * (D2(i, j) - row_mean[i] - row_mean[j] + total_mean);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(B);
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
    const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
    const double positive_floor = 1e-12 * std::max(std::abs(values[n - 1]), 1.0);
    MdsResult result;
    result.coords = Eigen::MatrixXd::Zero(n, 2);
    for (Eigen::Index k = 0; k < 2; ++k) {
        const Eigen::Index idx = n - 1 - k;
        if (values[idx] > positive_floor) {
            result.coords.col(k) = std::sqrt(values[idx]) * solver.eigenvectors().col(idx);
            ++result.positive_eigenvalues;
        }
    }
    result.rank_deficient = result.positive_eigenvalues < 2;
    for (Eigen::Index k = 0; k < 2; ++k) {
        const double colmax = result.coords.col(k).cwiseAbs().maxCoeff();
        if (colmax == 0.0) continue;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(result.coords(i, k)) > 1e-12 * colmax) {
                if (result.coords(i, k) < 0.0) result.coords.col(k) = -result.coords.col(k);
                break;
            }
        }
    }
    result.stress = configuration_stress(result.coords, D);
    return result;
}

MdsPermutationResult mds_permutation_test(const Eigen::MatrixXd& D, int n_perms,
                                          std::uint64_t seed, int threads) {
    if (n_perms < 99) throw DomainError("need at least 99 permutations");
    const Eigen::Index n = D.rows();
    MdsPermutationResult result;
    result.observed_stress = mds_2d(D).stress;
    const std::size_t n_off = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<double> pool;
    pool.reserve(n_off);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) pool.push_back(D(i, j));
    }
    std::vector<std::uint8_t> leq(static_cast<std::size_t>(n_perms), 0);
    parallel_for(static_cast<std::size_t>(n_perms), threads, [&](std::size_t r) {
        Rng rng(derive_seed(seed, r));
        std::vector<double> shuffled = pool;
        for (std::size_t k = 0; k + 1 < shuffled.size(); ++k) {
            const std::size_t j = k + rng.below(shuffled.size() - k);
            std::swap(shuffled[k], shuffled[j]);
        }
        Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
        std::size_t pos = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                P(i, j) = shuffled[pos];
                P(j, i) = shuffled[pos];
                ++pos;
            }
        }
        if (mds_2d(P).stress <= result.observed_stress) leq[r] = 1;
    });
    int count = 0;
    for (std::uint8_t flag : leq) count += flag;
    result.p_value = (1.0 + count) / (static_cast<double>(n_perms) + 1.0);
    return result;
}

}  // namespace ftsclust
