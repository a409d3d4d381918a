#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ftsclust/dissimilarity.hpp"

namespace ftsclust {

enum class ClusterAlgorithm { CMedoids, CMeans };

std::string algorithm_name(ClusterAlgorithm a);
ClusterAlgorithm parse_algorithm(const std::string& name);  // c_medoids, c_means

struct SolverConfig {
    int n_clusters = 2;
    double fuzziness = 2.0;  // m > 1
    int max_iter = 100000;
    int n_starts = 200;
    std::uint64_t seed = 0;
    double tol = 1e-6;  // C-means stopping rule, max-abs membership change
    int threads = 1;

    void validate(std::size_t n) const;
};

struct FuzzyPartition {
    Eigen::MatrixXd memberships;  // n x C, rows sum to 1
    std::vector<int> medoids;     // C-medoids prototypes (empty for C-means)
    Eigen::MatrixXd centroids;    // C x dim C-means prototypes (0x0 for C-medoids)
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    int best_start = -1;
    std::vector<double> objective_trace;   // winning start, one value per iteration
    std::vector<double> start_objectives;  // final objective of every start
};

// Membership row for one object given its distances to the C prototypes.
// Zero distances take the crisp limit (equal split if several).
Eigen::VectorXd membership_from_distances(const Eigen::Ref<const Eigen::VectorXd>& distances,
                                          double m);

// Alternates membership updates and weighted-argmin medoid updates until the
// medoid vector repeats or max_iter; best of n_starts random initializations
// by final objective, ties to the smaller start index.
FuzzyPartition fuzzy_c_medoids(const DissimilarityMatrix& D, const SolverConfig& config);

// Alternates power-weighted centroid updates and membership updates on
// squared Euclidean distances until the membership matrix moves less than
// tol in max-abs norm; same multi-start protocol. `features` rows are
// observations.
FuzzyPartition fuzzy_c_means(const Eigen::MatrixXd& features, const SolverConfig& config);

// The C-means centroid formula applied to an arbitrary membership matrix;
// bridges medoid partitions into centroid space for validity indices.
Eigen::MatrixXd centroids_from_memberships(const Eigen::MatrixXd& features,
                                           const Eigen::MatrixXd& memberships, double m);

// Compactness over separation; small is good. Membership exponent is fixed
// at 2. Throws DegenerateSeparation when two centroids coincide.
double xie_beni(const Eigen::MatrixXd& features, const Eigen::MatrixXd& memberships,
                const Eigen::MatrixXd& centroids);

struct ModelSelection {
    int n_clusters = 0;
    double fuzziness = 0.0;
    double best_index = 0.0;
    std::vector<int> C_grid;
    std::vector<double> m_grid;
    Eigen::MatrixXd index_table;  // |C_grid| x |m_grid|, NaN where degenerate
    FuzzyPartition best_partition;
};

// Grid search minimizing the Xie-Beni index; ties toward smaller C, then
// smaller m. Degenerate cells stay in the table as NaN; if every cell is
// degenerate the search fails.
ModelSelection select_C_m(const FeatureSet& features, ClusterAlgorithm algorithm,
                          const std::vector<int>& C_grid, const std::vector<double>& m_grid,
                          const SolverConfig& base);

}  // namespace ftsclust
