#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "ftsclust/clustering.hpp"
#include "ftsclust/dissimilarity.hpp"

namespace ftsclust {

using ojson = nlohmann::ordered_json;

ojson fqa_params_to_json(const FqaParams& params);
FqaParams fqa_params_from_json(const nlohmann::json& j);

ojson metric_config_to_json(const MetricConfig& config);
MetricConfig metric_config_from_json(const nlohmann::json& j);

ojson solver_config_to_json(const SolverConfig& config);

// Partition document: C, m, memberships, prototypes, objective; plus run
// metadata that evaluation and reproducibility checks consume.
ojson partition_to_json(const FuzzyPartition& partition, ClusterAlgorithm algorithm,
                        const SolverConfig& config);
Eigen::MatrixXd memberships_from_json(const nlohmann::json& j);

ojson feature_set_to_json(const FeatureSet& features, const MetricConfig& config,
                          const std::vector<std::string>& ids);
FeatureSet feature_set_from_json(const nlohmann::json& j);

ojson labels_to_json(const std::vector<int>& labels);
std::vector<int> labels_from_json(const nlohmann::json& j);

ojson matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

void save_matrix_csv(const Eigen::MatrixXd& m, const std::filesystem::path& path);
Eigen::MatrixXd load_matrix_csv(const std::filesystem::path& path);

void write_json_file(const ojson& doc, const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace ftsclust
