#include "ftsclust/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "ftsclust/errors.hpp"

namespace ftsclust {

namespace {

std::vector<std::vector<double>> matrix_rows(const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        rows[static_cast<std::size_t>(i)].assign(m.row(i).begin(), m.row(i).end());
    }
    return rows;
}

Eigen::MatrixXd rows_to_matrix(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw ParseError("empty matrix");
    const std::size_t cols = rows[0].size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw ParseError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

}  // namespace

ojson fqa_params_to_json(const FqaParams& params) {
    ojson j;
    j["lags"] = params.lags;
    j["levels"] = params.levels;
    if (!params.thresholds.empty()) j["thresholds"] = params.thresholds;
    j["reduced"] = params.reduced_mode();
    return j;
}

FqaParams fqa_params_from_json(const nlohmann::json& j) {
    std::vector<int> lags = j.at("lags").get<std::vector<int>>();
    std::vector<double> levels = j.at("levels").get<std::vector<double>>();
    if (j.contains("thresholds") && !j["thresholds"].is_null()) {
        return FqaParams::with_thresholds(std::move(lags), std::move(levels),
                                          j["thresholds"].get<std::vector<double>>());
    }
    return FqaParams::reduced(std::move(lags), std::move(levels));
}

ojson metric_config_to_json(const MetricConfig& config) {
    ojson j;
    j["metric"] = metric_name(config.metric);
    j["lags"] = config.fqa.lags;
    if (config.metric == Metric::FQA) {
        j["levels"] = config.fqa.levels;
        if (!config.fqa.thresholds.empty()) j["thresholds"] = config.fqa.thresholds;
        j["reduced"] = config.fqa.reduced_mode();
    }
    j["allow_degenerate"] = config.policy == DegeneratePolicy::Zero;
    return j;
}

MetricConfig metric_config_from_json(const nlohmann::json& j) {
    MetricConfig config;
    config.metric = parse_metric(j.at("metric").get<std::string>());
    std::vector<int> lags = j.at("lags").get<std::vector<int>>();
    std::vector<double> levels = j.contains("levels")
                                     ? j["levels"].get<std::vector<double>>()
                                     : std::vector<double>{0.1, 0.5, 0.9};
    if (j.contains("thresholds") && !j["thresholds"].is_null()) {
        config.fqa = FqaParams::with_thresholds(std::move(lags), std::move(levels),
                                                j["thresholds"].get<std::vector<double>>());
    } else {
        config.fqa = FqaParams::reduced(std::move(lags), std::move(levels));
    }
    if (j.contains("allow_degenerate") && j["allow_degenerate"].get<bool>()) {
        config.policy = DegeneratePolicy::Zero;
    }
    return config;
}

ojson solver_config_to_json(const SolverConfig& config) {
    ojson j;
    j["C"] = config.n_clusters;
    j["m"] = config.fuzziness;
    j["max_iter"] = config.max_iter;
    j["n_starts"] = config.n_starts;
    j["seed"] = config.seed;
    j["tol"] = config.tol;
    return j;
}

ojson partition_to_json(const FuzzyPartition& partition, ClusterAlgorithm algorithm,
                        const SolverConfig& config) {
    ojson j;
    j["C"] = config.n_clusters;
    j["m"] = config.fuzziness;
    j["algorithm"] = algorithm_name(algorithm);
    j["memberships"] = matrix_rows(partition.memberships);
    if (algorithm == ClusterAlgorithm::CMedoids) {
        j["prototypes"] = partition.medoids;
    } else {
        j["prototypes"] = matrix_rows(partition.centroids);
    }
    j["objective"] = partition.objective;
    j["iterations"] = partition.iterations;
    j["converged"] = partition.converged;
    j["best_start"] = partition.best_start;
    j["start_objectives"] = partition.start_objectives;
    return j;
}

Eigen::MatrixXd memberships_from_json(const nlohmann::json& j) {
    return rows_to_matrix(j.at("memberships").get<std::vector<std::vector<double>>>());
}

ojson feature_set_to_json(const FeatureSet& features, const MetricConfig& config,
                          const std::vector<std::string>& ids) {
    ojson j;
    j["config"] = metric_config_to_json(config);
    j["ids"] = ids;
    j["scale"] = features.scale;
    j["degenerate_count"] = features.degenerate_count;
    j["features_unscaled"] = matrix_rows(features.unscaled);
    return j;
}

FeatureSet feature_set_from_json(const nlohmann::json& j) {
    FeatureSet features;
    features.metric = parse_metric(j.at("config").at("metric").get<std::string>());
    features.scale = j.at("scale").get<double>();
    features.degenerate_count = j.value("degenerate_count", 0);
    features.unscaled =
        rows_to_matrix(j.at("features_unscaled").get<std::vector<std::vector<double>>>());
    return features;
}

ojson labels_to_json(const std::vector<int>& labels) {
    ojson j;
    j["labels"] = labels;
    return j;
}

std::vector<int> labels_from_json(const nlohmann::json& j) {
    return j.at("labels").get<std::vector<int>>();
}

ojson matrix_to_json(const Eigen::MatrixXd& m) {
    return ojson(matrix_rows(m));
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    return rows_to_matrix(j.get<std::vector<std::vector<double>>>());
}

void save_matrix_csv(const Eigen::MatrixXd& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    char buf[40];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw Error("write failed for " + path.string());
}

Eigen::MatrixXd load_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            std::string field = line.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) {
                field.pop_back();
            }
            // strtod instead of stod: stod throws on subnormal results, which
            // a bit-exact round trip must accept.
            char* tail = nullptr;
            const double v = std::strtod(field.c_str(), &tail);
            if (field.empty() || tail != field.c_str() + field.size() || !std::isfinite(v)) {
                throw ParseError(path.string() + ": row " + std::to_string(lineno) +
                                 ": cannot parse '" + field + "'");
            }
            row.push_back(v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows_to_matrix(rows);
}

void write_json_file(const ojson& doc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw Error("write failed for " + path.string());
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace ftsclust
