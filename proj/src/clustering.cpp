#include "ftsclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ftsclust/errors.hpp"
#include "ftsclust/parallel.hpp"
#include "ftsclust/rng.hpp"

namespace ftsclust {

std::string algorithm_name(ClusterAlgorithm a) {
    return a == ClusterAlgorithm::CMedoids ? "c_medoids" : "c_means";
}

ClusterAlgorithm parse_algorithm(const std::string& name) {
    if (name == "c_medoids") return ClusterAlgorithm::CMedoids;
    if (name == "c_means") return ClusterAlgorithm::CMeans;
    throw DomainError("unknown algorithm '" + name + "' (expected c_medoids or c_means)");
}

void SolverConfig::validate(std::size_t n) const {
    if (n_clusters < 2) throw DomainError("need at least 2 clusters");
    if (static_cast<std::size_t>(n_clusters) > n) {
        throw DomainError("cannot form " + std::to_string(n_clusters) + " clusters from " +
                          std::to_string(n) + " objects");
    }
    if (!(fuzziness > 1.0)) throw DomainError("fuzziness exponent must be > 1");
    if (max_iter < 1) throw DomainError("max_iter must be >= 1");
    if (n_starts < 1) throw DomainError("n_starts must be >= 1");
    if (!(tol > 0.0)) throw DomainError("tol must be > 0");
}

Eigen::VectorXd membership_from_distances(const Eigen::Ref<const Eigen::VectorXd>& distances,
                                          double m) {
    if (!(m > 1.0)) throw DomainError("fuzziness exponent must be > 1");
    const Eigen::Index C = distances.size();
    if (C < 1) throw DimensionError("need at least one prototype distance");
    Eigen::VectorXd u = Eigen::VectorXd::Zero(C);
    Eigen::Index zeros = 0;
    for (Eigen::Index c = 0; c < C; ++c) {
        if (!(distances[c] >= 0.0)) throw DomainError("distances must be nonnegative");
        if (distances[c] == 0.0) ++zeros;
    }
    if (zeros > 0) {
        // Limit of the update as d -> 0: all mass on the zero-distance
        // prototypes, split equally if several coincide.
        const double share = 1.0 / static_cast<double>(zeros);
        for (Eigen::Index c = 0; c < C; ++c) {
            if (distances[c] == 0.0) u[c] = share;
        }
        return u;
    }
    const double exponent = 1.0 / (m - 1.0);
    for (Eigen::Index c = 0; c < C; ++c) {
        double z = 0.0;
        for (Eigen::Index k = 0; k < C; ++k) {
            z += std::pow(distances[c] / distances[k], exponent);
        }
        // z >= 1 (the k = c term is 1); overflow to inf just means u -> 0.
        u[c] = 1.0 / z;
    }
    const double total = u.sum();
    u /= total;
    return u;
}

namespace {

struct StartResult {
    Eigen::MatrixXd memberships;
    std::vector<int> medoids;
    Eigen::MatrixXd centroids;
    double objective = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

std::vector<int> sample_distinct(std::size_t n, int count, Rng& rng) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int k = 0; k < count; ++k) {
        const std::size_t j = static_cast<std::size_t>(k) +
                              rng.below(n - static_cast<std::size_t>(k));
        std::swap(idx[static_cast<std::size_t>(k)], idx[j]);
    }
    idx.resize(static_cast<std::size_t>(count));
    return idx;
}

Eigen::MatrixXd memberships_for_medoids(const Eigen::MatrixXd& D, const std::vector<int>& medoids,
                                        double m) {
    const Eigen::Index n = D.rows();
    const Eigen::Index C = static_cast<Eigen::Index>(medoids.size());
    Eigen::MatrixXd U(n, C);
    Eigen::VectorXd d(C);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index c = 0; c < C; ++c) d[c] = D(i, medoids[static_cast<std::size_t>(c)]);
        U.row(i) = membership_from_distances(d, m).transpose();
    }
    return U;
}

double medoid_objective(const Eigen::MatrixXd& D, const Eigen::MatrixXd& W,
                        const std::vector<int>& medoids) {
    double J = 0.0;
    for (Eigen::Index c = 0; c < W.cols(); ++c) {
        J += W.col(c).dot(D.col(medoids[static_cast<std::size_t>(c)]));
    }
    return J;
}

StartResult run_medoid_start(const Eigen::MatrixXd& D, const SolverConfig& config,
                             std::uint64_t start_seed) {
    const std::size_t n = static_cast<std::size_t>(D.rows());
    const int C = config.n_clusters;
    Rng rng(start_seed);
    StartResult result;
    std::vector<int> medoids = sample_distinct(n, C, rng);
    Eigen::MatrixXd U, W;
    std::vector<char> taken(n);
    for (int iter = 1; iter <= config.max_iter; ++iter) {
        U = memberships_for_medoids(D, medoids, config.fuzziness);
        W = U.array().pow(config.fuzziness);
        // Weighted-cost argmin per cluster; a candidate already claimed by an
        // earlier cluster of this update is skipped so medoids stay distinct.
        std::fill(taken.begin(), taken.end(), 0);
        std::vector<int> next(static_cast<std::size_t>(C));
        for (int c = 0; c < C; ++c) {
            Eigen::VectorXd cost = D * W.col(c);
            int best = -1;
            for (Eigen::Index j = 0; j < cost.size(); ++j) {
                if (taken[static_cast<std::size_t>(j)]) continue;
                if (best < 0 || cost[j] < cost[best]) best = static_cast<int>(j);
            }
            next[static_cast<std::size_t>(c)] = best;
            taken[static_cast<std::size_t>(best)] = 1;
        }
        result.iterations = iter;
        result.trace.push_back(medoid_objective(D, W, next));
        if (next == medoids) {
            result.converged = true;
            break;
        }
        medoids = std::move(next);
    }
    // Refresh so memberships, medoids, and objective describe one state.
    result.memberships = memberships_for_medoids(D, medoids, config.fuzziness);
    Eigen::MatrixXd Wf = result.memberships.array().pow(config.fuzziness);
    result.objective = medoid_objective(D, Wf, medoids);
    result.medoids = std::move(medoids);
    return result;
}

// Centroid update: power-weighted means of the feature rows. A cluster whose
// total weight underflowed to zero keeps its previous centroid.
void update_centroids(const Eigen::MatrixXd& X, const Eigen::MatrixXd& U, double m,
                      Eigen::MatrixXd& V) {
    const Eigen::Index C = U.cols();
    Eigen::MatrixXd W = U.array().pow(m);
    for (Eigen::Index c = 0; c < C; ++c) {
        const double denom = W.col(c).sum();
        if (denom > 0.0) {
            V.row(c) = (W.col(c).transpose() * X) / denom;
        }
    }
}

StartResult run_means_start(const Eigen::MatrixXd& X, const SolverConfig& config,
                            std::uint64_t start_seed) {
    const Eigen::Index n = X.rows();
    const Eigen::Index C = config.n_clusters;
    Rng rng(start_seed);
    StartResult result;
    Eigen::MatrixXd U(n, C);
    for (Eigen::Index i = 0; i < n; ++i) {
        double total = 0.0;
        for (Eigen::Index c = 0; c < C; ++c) {
            const double e = -std::log(rng.uniform());
            U(i, c) = e;
            total += e;
        }
        if (total == 0.0) {
            U.row(i).setConstant(1.0 / static_cast<double>(C));
        } else {
            U.row(i) /= total;
        }
    }
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(C, X.cols());
    Eigen::MatrixXd d2(n, C);
    Eigen::VectorXd row(C);
    for (int iter = 1; iter <= config.max_iter; ++iter) {
        update_centroids(X, U, config.fuzziness, V);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index c = 0; c < C; ++c) {
                d2(i, c) = (X.row(i) - V.row(c)).squaredNorm();
            }
        }
        double delta = 0.0;
        double J = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::VectorXd u = membership_from_distances(d2.row(i).transpose(),
                                                          config.fuzziness);
            for (Eigen::Index c = 0; c < C; ++c) {
                delta = std::max(delta, std::abs(u[c] - U(i, c)));
                J += std::pow(u[c], config.fuzziness) * d2(i, c);
                U(i, c) = u[c];
            }
        }
        result.iterations = iter;
        result.trace.push_back(J);
        if (delta < config.tol) {
            result.converged = true;
            break;
        }
    }
    result.objective = result.trace.back();
    update_centroids(X, U, config.fuzziness, V);
    result.centroids = std::move(V);
    result.memberships = std::move(U);
    return result;
}

template <typename RunStart>
FuzzyPartition multi_start(std::size_t n_objects, const SolverConfig& config, RunStart&& run) {
    const std::size_t S = static_cast<std::size_t>(config.n_starts);
    std::vector<StartResult> results(S);
    parallel_for(S, config.threads, [&](std::size_t s) {
        results[s] = run(derive_seed(config.seed, s));
    });
    std::size_t best = 0;
    for (std::size_t s = 1; s < S; ++s) {
        if (results[s].objective < results[best].objective) best = s;
    }
    FuzzyPartition part;
    part.memberships = std::move(results[best].memberships);
    part.medoids = std::move(results[best].medoids);
    part.centroids = std::move(results[best].centroids);
    part.objective = results[best].objective;
    part.iterations = results[best].iterations;
    part.converged = results[best].converged;
    part.best_start = static_cast<int>(best);
    part.objective_trace = std::move(results[best].trace);
    part.start_objectives.reserve(S);
    for (const auto& r : results) part.start_objectives.push_back(r.objective);
    (void)n_objects;
    return part;
}

}  // namespace

FuzzyPartition fuzzy_c_medoids(const DissimilarityMatrix& D, const SolverConfig& config) {
    validate_dissimilarity(D.values);
    const std::size_t n = static_cast<std::size_t>(D.values.rows());
    config.validate(n);
    return multi_start(n, config, [&](std::uint64_t s) {
        return run_medoid_start(D.values, config, s);
    });
}

FuzzyPartition fuzzy_c_means(const Eigen::MatrixXd& features, const SolverConfig& config) {
    if (features.rows() < 2) throw DimensionError("need at least 2 feature vectors");
    if (!features.allFinite()) throw DomainError("features contain non-finite values");
    const std::size_t n = static_cast<std::size_t>(features.rows());
    config.validate(n);
    return multi_start(n, config, [&](std::uint64_t s) {
        return run_means_start(features, config, s);
    });
}

Eigen::MatrixXd centroids_from_memberships(const Eigen::MatrixXd& features,
                                           const Eigen::MatrixXd& memberships, double m) {
    if (features.rows() != memberships.rows()) {
        throw DimensionError("features and memberships disagree on n");
    }
    if (!(m > 1.0)) throw DomainError("fuzziness exponent must be > 1");
    const Eigen::Index C = memberships.cols();
    Eigen::MatrixXd W = memberships.array().pow(m);
    Eigen::MatrixXd V(C, features.cols());
    for (Eigen::Index c = 0; c < C; ++c) {
        const double denom = W.col(c).sum();
        if (denom == 0.0) {
            throw DomainError("cluster " + std::to_string(c) +
                              " has zero total membership weight");
        }
        V.row(c) = (W.col(c).transpose() * features) / denom;
    }
    return V;
}

double xie_beni(const Eigen::MatrixXd& features, const Eigen::MatrixXd& memberships,
                const Eigen::MatrixXd& centroids) {
    const Eigen::Index n = features.rows();
    const Eigen::Index C = centroids.rows();
    if (memberships.rows() != n || memberships.cols() != C ||
        centroids.cols() != features.cols()) {
        throw DimensionError("xie_beni: inconsistent shapes");
    }
    if (C < 2) throw DomainError("xie_beni needs at least 2 centroids");
    double min_sep = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < C; ++c) {
        for (Eigen::Index k = c + 1; k < C; ++k) {
            min_sep = std::min(min_sep, (centroids.row(c) - centroids.row(k)).squaredNorm());
        }
    }
    if (min_sep == 0.0) throw DegenerateSeparation("coincident centroids");
    double numerator = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index c = 0; c < C; ++c) {
            numerator += memberships(i, c) * memberships(i, c) *
                         (features.row(i) - centroids.row(c)).squaredNorm();
        }
    }
    return numerator / (static_cast<double>(n) * min_sep);
}

ModelSelection select_C_m(const FeatureSet& features, ClusterAlgorithm algorithm,
                          const std::vector<int>& C_grid, const std::vector<double>& m_grid,
                          const SolverConfig& base) {
    const Eigen::Index n = features.unscaled.rows();
    if (C_grid.empty() || m_grid.empty()) throw DomainError("selection grids must be non-empty");
    for (std::size_t k = 0; k < C_grid.size(); ++k) {
        if (C_grid[k] < 2 || static_cast<Eigen::Index>(C_grid[k]) > n - 1) {
            throw DomainError("candidate C must satisfy 2 <= C <= n-1");
        }
        if (k > 0 && C_grid[k] <= C_grid[k - 1]) {
            throw DomainError("C grid must be strictly increasing");
        }
    }
    for (std::size_t k = 0; k < m_grid.size(); ++k) {
        if (!(m_grid[k] > 1.0)) throw DomainError("candidate m must be > 1");
        if (k > 0 && !(m_grid[k] > m_grid[k - 1])) {
            throw DomainError("m grid must be strictly increasing");
        }
    }
    const Eigen::MatrixXd X = features.scaled();
    DissimilarityMatrix D;
    if (algorithm == ClusterAlgorithm::CMedoids) D = pairwise_from_features(features);
    ModelSelection sel;
    sel.C_grid = C_grid;
    sel.m_grid = m_grid;
    sel.index_table.setConstant(static_cast<Eigen::Index>(C_grid.size()),
                                static_cast<Eigen::Index>(m_grid.size()),
                                std::numeric_limits<double>::quiet_NaN());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < C_grid.size(); ++a) {
        for (std::size_t b = 0; b < m_grid.size(); ++b) {
            SolverConfig cfg = base;
            cfg.n_clusters = C_grid[a];
            cfg.fuzziness = m_grid[b];
            double xbi;
            FuzzyPartition part;
            try {
                if (algorithm == ClusterAlgorithm::CMedoids) {
                    part = fuzzy_c_medoids(D, cfg);
                    Eigen::MatrixXd V =
                        centroids_from_memberships(X, part.memberships, cfg.fuzziness);
                    xbi = xie_beni(X, part.memberships, V);
                } else {
                    part = fuzzy_c_means(X, cfg);
                    xbi = xie_beni(X, part.memberships, part.centroids);
                }
            } catch (const DegenerateSeparation&) {
                continue;  // cell stays NaN
            } catch (const DomainError&) {
                continue;  // zero-weight cluster in the bridge
            }
            sel.index_table(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = xbi;
            // Strict < plus ascending grids = ties resolve to smaller C, then m.
            if (xbi < best) {
                best = xbi;
                sel.n_clusters = C_grid[a];
                sel.fuzziness = m_grid[b];
                sel.best_index = xbi;
                sel.best_partition = std::move(part);
            }
        }
    }
    if (!std::isfinite(best)) {
        throw DegenerateSeparation("every (C, m) candidate produced coincident centroids");
    }
    return sel;
}

}  // namespace ftsclust
