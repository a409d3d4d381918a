#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace ftsclust {

struct FuzzyIndexPair {
    double arif = 0.0;  // in [-1, 1]
    double jif = 0.0;   // in [0, 1]
};

// Pair-counting agreement between a hard reference and a fuzzy candidate:
// same-cluster degree s = max_c min(u_ic, u_jc), different-cluster degree
// d = max_{c != c'} min(u_ic, u_jc'). Reference needs >= 2 distinct labels.
FuzzyIndexPair arif_jif(const std::vector<int>& reference, const Eigen::MatrixXd& memberships);

// Argmax hardening (ties to the lowest cluster index).
std::vector<int> harden(const Eigen::MatrixXd& memberships);

struct CrispIndexPair {
    double ari = 0.0;
    double ji = 0.0;
};

// Classical adjusted Rand and Jaccard after hardening the candidate.
CrispIndexPair ari_ji(const std::vector<int>& reference, const Eigen::MatrixXd& memberships);

// Two-cluster success rule for the 5+5+1 collections: each block of five
// concentrated above `threshold` in opposite clusters, the isolated series
// (label 0) at most `threshold` in both.
bool uncertain_success(const Eigen::MatrixXd& memberships, const std::vector<int>& labels,
                       double threshold);

// Trapezoid integral of success rate over the fuzziness exponent.
double area_under_fuzziness_curve(const std::vector<double>& m_values,
                                  const std::vector<double>& rates);

// Membership-weighted per-cluster means of the feature rows (weights enter
// unexponentiated). Returns C x F.
Eigen::MatrixXd cluster_summary(const Eigen::MatrixXd& features,
                                const Eigen::MatrixXd& memberships);

struct MdsResult {
    Eigen::MatrixXd coords;  // n x 2, centered, sign-normalized
    double stress = 0.0;
    int positive_eigenvalues = 0;
    bool rank_deficient = false;  // fewer than 2 informative axes; zeros padded
};

// Classical (double-centering) 2-D scaling with the normalized residual
// stress of the configuration against the input dissimilarities.
MdsResult mds_2d(const Eigen::MatrixXd& D);

struct MdsPermutationResult {
    double observed_stress = 0.0;
    double p_value = 1.0;
};

// Shuffles the off-diagonal dissimilarities (symmetry preserved) n_perms
// times; small p means the observed configuration fits better than chance.
MdsPermutationResult mds_permutation_test(const Eigen::MatrixXd& D, int n_perms,
                                          std::uint64_t seed, int threads = 1);

}  // namespace ftsclust
