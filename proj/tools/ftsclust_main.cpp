#include <CLI11.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "ftsclust/clustering.hpp"
#include "ftsclust/csv.hpp"
#include "ftsclust/dissimilarity.hpp"
#include "ftsclust/errors.hpp"
#include "ftsclust/evaluate.hpp"
#include "ftsclust/lag_selection.hpp"
#include "ftsclust/parallel.hpp"
#include "ftsclust/rng.hpp"
#include "ftsclust/serialize.hpp"
#include "ftsclust/simulate.hpp"
#include "ftsclust/version.hpp"

namespace fs = std::filesystem;
using ftsclust::ojson;

namespace {

ojson envelope(const std::string& command) {
    ojson j;
    j["tool"] = "ftsclust";
    j["version"] = ftsclust::kVersion;
    j["command"] = command;
    return j;
}

std::string format_level(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

struct MetricOptions {
    std::string metric = "FQA";
    std::vector<int> lags{1};
    std::vector<double> levels{0.1, 0.5, 0.9};
    std::vector<double> thresholds;
    bool allow_degenerate = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--metric", metric, "Dissimilarity: FQA, FACF, FSACF, K_m, K_i")
            ->capture_default_str();
        cmd->add_option("--lags", lags, "Lags, ascending")->delimiter(',')->capture_default_str();
        cmd->add_option("--levels", levels, "Quantile levels in (0,1), ascending")
            ->delimiter(',')
            ->capture_default_str();
        cmd->add_option("--thresholds", thresholds,
                        "Explicit indicator thresholds in (0,1]; omit for the reduced mode")
            ->delimiter(',');
        cmd->add_flag("--allow-degenerate", allow_degenerate,
                      "Emit 0 (with a warning) for undefined autocorrelations instead of failing");
    }

    ftsclust::MetricConfig resolve() const {
        ftsclust::MetricConfig config;
        config.metric = ftsclust::parse_metric(metric);
        config.fqa = thresholds.empty()
                         ? ftsclust::FqaParams::reduced(lags, levels)
                         : ftsclust::FqaParams::with_thresholds(lags, levels, thresholds);
        config.policy = allow_degenerate ? ftsclust::DegeneratePolicy::Zero
                                         : ftsclust::DegeneratePolicy::Error;
        return config;
    }
};

struct SolverOptions {
    int C = 2;
    double m = 2.0;
    int starts = 200;
    std::uint64_t seed = 0;
    int max_iter = 100000;
    double tol = 1e-6;
    int threads = 1;
    std::string algorithm = "c_medoids";

    void attach(CLI::App* cmd, bool with_C = true) {
        if (with_C) cmd->add_option("-C,--clusters", C, "Number of clusters")->capture_default_str();
        cmd->add_option("-m,--fuzziness", m, "Fuzziness exponent > 1")->capture_default_str();
        cmd->add_option("--algorithm", algorithm, "c_medoids or c_means")->capture_default_str();
        cmd->add_option("--starts", starts, "Random initializations")->capture_default_str();
        cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
        cmd->add_option("--max-iter", max_iter, "Iteration cap per start")->capture_default_str();
        cmd->add_option("--tol", tol, "C-means membership stopping tolerance")
            ->capture_default_str();
        cmd->add_option("--threads", threads, "Worker threads (0 = hardware)")
            ->capture_default_str();
    }

    ftsclust::SolverConfig resolve() const {
        ftsclust::SolverConfig config;
        config.n_clusters = C;
        config.fuzziness = m;
        config.n_starts = starts;
        config.seed = seed;
        config.max_iter = max_iter;
        config.tol = tol;
        config.threads = threads;
        return config;
    }
};

void warn_degenerate(const ftsclust::FeatureSet& features) {
    if (features.degenerate_count > 0) {
        std::cerr << "warning: " << features.degenerate_count
                  << " undefined autocorrelation feature(s) were set to 0\n";
    }
}

std::vector<std::string> fqa_feature_labels(const ftsclust::MetricConfig& config) {
    std::vector<std::string> labels;
    const auto& fqa = config.fqa;
    for (int lag : fqa.lags) {
        if (config.metric != ftsclust::Metric::FQA) {
            labels.push_back("lag" + std::to_string(lag));
            continue;
        }
        for (double t1 : fqa.levels) {
            for (double t2 : fqa.levels) {
                if (fqa.reduced_mode()) {
                    labels.push_back("lag" + std::to_string(lag) + "|tau" + format_level(t1) +
                                     "|tau" + format_level(t2));
                } else {
                    for (double b1 : fqa.thresholds) {
                        for (double b2 : fqa.thresholds) {
                            labels.push_back("lag" + std::to_string(lag) + "|tau" +
                                             format_level(t1) + "|tau" + format_level(t2) +
                                             "|beta" + format_level(b1) + "|beta" +
                                             format_level(b2));
                        }
                    }
                }
            }
        }
    }
    return labels;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    int scenario = 1;
    std::size_t T = 200;
    std::size_t p = 100;
    std::uint64_t seed = 0;
    bool unequal_lengths = false;
    std::string out;
};

void run_simulate(const SimulateOptions& opt) {
    const ftsclust::ScenarioDataset dataset =
        ftsclust::make_scenario(opt.scenario, opt.T, opt.p, opt.seed, opt.unequal_lengths);
    const fs::path dir(opt.out);
    fs::create_directories(dir);
    ftsclust::Manifest manifest;
    for (std::size_t i = 0; i < dataset.series.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "series_%03zu", i);
        const fs::path csv = dir / (std::string(name) + ".csv");
        ftsclust::save_csv(dataset.series[i], csv);
        ftsclust::ManifestEntry entry;
        entry.id = name;
        entry.path = csv;
        entry.label = std::to_string(dataset.labels[i]);
        manifest.series.push_back(std::move(entry));
    }
    ftsclust::save_manifest(manifest, dir / "manifest.json");
    ftsclust::write_json_file(ftsclust::labels_to_json(dataset.labels), dir / "labels.json");
    ojson run = envelope("simulate");
    run["config"] = {{"scenario", opt.scenario},
                     {"T", opt.T},
                     {"p", opt.p},
                     {"seed", opt.seed},
                     {"unequal_lengths", opt.unequal_lengths}};
    run["series_count"] = dataset.series.size();
    run["lengths"] = [&] {
        std::vector<std::size_t> lengths;
        for (const auto& s : dataset.series) lengths.push_back(s.length());
        return lengths;
    }();
    ftsclust::write_json_file(run, dir / "run.json");
    std::cout << "wrote " << dataset.series.size() << " series to " << dir.string() << "\n";
}

// ---------------------------------------------------------------- features

struct FeaturesOptions {
    std::string manifest;
    MetricOptions metric;
    bool header = false;
    int threads = 1;
    std::string out;
};

void run_features(const FeaturesOptions& opt) {
    const auto collection = ftsclust::load_collection(opt.manifest, opt.header);
    const auto config = opt.metric.resolve();
    const auto features = ftsclust::extract_features(collection.series, config, opt.threads);
    warn_degenerate(features);
    ojson doc = envelope("features");
    doc["config"] = ftsclust::metric_config_to_json(config);
    doc["config"]["manifest"] = opt.manifest;
    doc.update(ftsclust::feature_set_to_json(features, config, collection.ids));
    doc["feature_labels"] = fqa_feature_labels(config);
    ftsclust::write_json_file(doc, opt.out);
}

// ---------------------------------------------------------------- cluster

struct ClusterOptions {
    std::string manifest;
    MetricOptions metric;
    SolverOptions solver;
    bool header = false;
    std::string out;
};

void run_cluster(const ClusterOptions& opt) {
    const auto collection = ftsclust::load_collection(opt.manifest, opt.header);
    const auto metric_config = opt.metric.resolve();
    const auto solver_config = opt.solver.resolve();
    const auto algorithm = ftsclust::parse_algorithm(opt.solver.algorithm);
    const auto features =
        ftsclust::extract_features(collection.series, metric_config, opt.solver.threads);
    warn_degenerate(features);
    const auto D = ftsclust::pairwise_from_features(features);
    ftsclust::FuzzyPartition partition;
    if (algorithm == ftsclust::ClusterAlgorithm::CMedoids) {
        partition = ftsclust::fuzzy_c_medoids(D, solver_config);
    } else {
        partition = ftsclust::fuzzy_c_means(features.scaled(), solver_config);
    }
    const fs::path dir(opt.out);
    fs::create_directories(dir);
    ftsclust::save_matrix_csv(D.values, dir / "distances.csv");
    ojson pj = partition_to_json(partition, algorithm, solver_config);
    pj["ids"] = collection.ids;
    ftsclust::write_json_file(pj, dir / "partition.json");
    ojson log = envelope("cluster");
    log["config"] = ftsclust::metric_config_to_json(metric_config);
    log["config"]["manifest"] = opt.manifest;
    log["config"]["algorithm"] = opt.solver.algorithm;
    log["config"].update(ftsclust::solver_config_to_json(solver_config));
    log["objective"] = partition.objective;
    log["iterations"] = partition.iterations;
    log["converged"] = partition.converged;
    log["best_start"] = partition.best_start;
    ftsclust::write_json_file(log, dir / "run_log.json");
    std::cout << "objective " << partition.objective << ", best start " << partition.best_start
              << "\n";
}

// ---------------------------------------------------------------- select

struct SelectOptions {
    std::string manifest;
    MetricOptions metric;
    SolverOptions solver;
    double alpha = 0.05;
    int max_lag = 10;
    std::vector<int> C_grid{2, 3, 4, 5, 6};
    std::vector<double> m_grid{1.5, 2.0};
    bool permutation = false;
    int n_perms = 999;
    bool header = false;
    std::string out;
};

void run_select(const SelectOptions& opt) {
    if (opt.C_grid.empty() || opt.m_grid.empty()) {
        throw CLI::ValidationError("--C-grid/--m-grid must be non-empty");
    }
    const auto collection = ftsclust::load_collection(opt.manifest, opt.header);
    const auto report = ftsclust::select_lags(collection.series, opt.alpha, opt.max_lag,
                                              opt.permutation, opt.n_perms, opt.solver.seed);
    auto metric_config = opt.metric.resolve();
    metric_config.fqa.lags = report.lags;
    metric_config.fqa.validate();
    const auto features =
        ftsclust::extract_features(collection.series, metric_config, opt.solver.threads);
    warn_degenerate(features);
    const auto algorithm = ftsclust::parse_algorithm(opt.solver.algorithm);
    const auto selection = ftsclust::select_C_m(features, algorithm, opt.C_grid, opt.m_grid,
                                                opt.solver.resolve());
    ojson doc = envelope("select");
    doc["config"] = ftsclust::metric_config_to_json(metric_config);
    doc["config"]["manifest"] = opt.manifest;
    doc["config"]["alpha"] = opt.alpha;
    doc["config"]["max_lag"] = opt.max_lag;
    doc["config"]["algorithm"] = opt.solver.algorithm;
    doc["config"]["C_grid"] = opt.C_grid;
    doc["config"]["m_grid"] = opt.m_grid;
    doc["config"].update(ftsclust::solver_config_to_json(opt.solver.resolve()));
    doc["corrected_alpha"] = report.corrected_alpha;
    doc["lags"] = report.lags;
    doc["lag_fallback"] = report.fallback;
    doc["per_series_lag"] = report.per_series_lag;
    doc["per_series_p"] = report.per_series_p;
    doc["C"] = selection.n_clusters;
    doc["m"] = selection.fuzziness;
    doc["xie_beni"] = selection.best_index;
    doc["xbi_table"] = ftsclust::matrix_to_json(selection.index_table);
    ftsclust::write_json_file(doc, opt.out);
    std::cout << "selected lags {1.." << report.lags.back() << "}, C = " << selection.n_clusters
              << ", m = " << selection.fuzziness << "\n";
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOptions {
    std::string partition;
    std::string labels;
    std::string mode = "crisp";
    double threshold = 0.7;
    std::string out;
};

void run_evaluate(const EvaluateOptions& opt) {
    const auto pj = ftsclust::read_json_file(opt.partition);
    const Eigen::MatrixXd U = ftsclust::memberships_from_json(pj);
    const std::vector<int> labels =
        ftsclust::labels_from_json(ftsclust::read_json_file(opt.labels));
    ojson doc = envelope("evaluate");
    doc["config"] = {{"partition", opt.partition},
                     {"labels", opt.labels},
                     {"mode", opt.mode},
                     {"threshold", opt.threshold}};
    if (opt.mode == "crisp") {
        const auto fuzzy = ftsclust::arif_jif(labels, U);
        const auto crisp = ftsclust::ari_ji(labels, U);
        doc["arif"] = fuzzy.arif;
        doc["jif"] = fuzzy.jif;
        doc["ari"] = crisp.ari;
        doc["ji"] = crisp.ji;
    } else if (opt.mode == "uncertain") {
        doc["success"] = ftsclust::uncertain_success(U, labels, opt.threshold);
        doc["memberships"] = ftsclust::matrix_to_json(U);
    } else {
        throw CLI::ValidationError("--mode must be crisp or uncertain");
    }
    ftsclust::write_json_file(doc, opt.out);
}

// ---------------------------------------------------------------- mds

struct MdsOptions {
    std::string distances;
    int perms = 999;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
};

void run_mds(const MdsOptions& opt) {
    const Eigen::MatrixXd D = ftsclust::load_matrix_csv(opt.distances);
    ftsclust::validate_dissimilarity(D);
    const auto mds = ftsclust::mds_2d(D);
    if (mds.rank_deficient) {
        std::cerr << "warning: fewer than 2 informative axes; padded with zeros\n";
    }
    const auto perm = ftsclust::mds_permutation_test(D, opt.perms, opt.seed, opt.threads);
    const fs::path dir(opt.out);
    fs::create_directories(dir);
    ftsclust::save_matrix_csv(mds.coords, dir / "coords.csv");
    ojson doc = envelope("mds");
    doc["config"] = {{"distances", opt.distances}, {"perms", opt.perms}, {"seed", opt.seed}};
    doc["stress"] = mds.stress;
    doc["positive_eigenvalues"] = mds.positive_eigenvalues;
    doc["rank_deficient"] = mds.rank_deficient;
    doc["p_value"] = perm.p_value;
    ftsclust::write_json_file(doc, dir / "mds.json");
    std::cout << "stress " << mds.stress << ", permutation p = " << perm.p_value << "\n";
}

// ---------------------------------------------------------------- summarize

struct SummarizeOptions {
    std::string manifest;
    std::string partition;
    MetricOptions metric;
    bool header = false;
    int threads = 1;
    std::string out;
    std::string csv_out;
};

void run_summarize(const SummarizeOptions& opt) {
    const auto collection = ftsclust::load_collection(opt.manifest, opt.header);
    const auto config = opt.metric.resolve();
    const auto features = ftsclust::extract_features(collection.series, config, opt.threads);
    warn_degenerate(features);
    const Eigen::MatrixXd U =
        ftsclust::memberships_from_json(ftsclust::read_json_file(opt.partition));
    // Weighted summaries live on the raw (unscaled) autocorrelations.
    const Eigen::MatrixXd summary = ftsclust::cluster_summary(features.unscaled, U);
    ojson doc = envelope("summarize");
    doc["config"] = ftsclust::metric_config_to_json(config);
    doc["config"]["manifest"] = opt.manifest;
    doc["config"]["partition"] = opt.partition;
    doc["feature_labels"] = fqa_feature_labels(config);
    doc["cluster_means"] = ftsclust::matrix_to_json(summary);
    ftsclust::write_json_file(doc, opt.out);
    if (!opt.csv_out.empty()) ftsclust::save_matrix_csv(summary, opt.csv_out);
}

// ---------------------------------------------------------------- replicate

struct ReplicateOptions {
    int scenario = 1;
    int replicates = 50;
    std::size_t T = 200;
    std::size_t p = 100;
    std::uint64_t seed = 0;
    bool unequal_lengths = false;
    MetricOptions metric;
    SolverOptions solver;
    std::vector<double> m_grid;
    std::string mode = "crisp";
    double threshold = 0.7;
    std::string out;
    bool c_explicit = false;
};

void run_replicate(const ReplicateOptions& opt) {
    if (opt.mode != "crisp" && opt.mode != "uncertain") {
        throw CLI::ValidationError("--mode must be crisp or uncertain");
    }
    const int C = opt.c_explicit ? opt.solver.C : (opt.scenario <= 2 ? 4 : 2);
    std::vector<double> m_grid = opt.m_grid.empty() ? std::vector<double>{opt.solver.m}
                                                    : opt.m_grid;
    const auto metric_config = opt.metric.resolve();
    const auto algorithm = ftsclust::parse_algorithm(opt.solver.algorithm);
    const std::size_t R = static_cast<std::size_t>(opt.replicates);
    const std::size_t M = m_grid.size();
    // score layout: [replicate][m][field]; crisp fields arif/jif/ari/ji,
    // uncertain field success.
    std::vector<std::vector<std::vector<double>>> scores(
        R, std::vector<std::vector<double>>(M));
    ftsclust::parallel_for(R, opt.solver.threads, [&](std::size_t r) {
        const auto dataset = ftsclust::make_scenario(
            opt.scenario, opt.T, opt.p, ftsclust::derive_seed(opt.seed, r),
            opt.unequal_lengths);
        const auto features = ftsclust::extract_features(dataset.series, metric_config, 1);
        ftsclust::DissimilarityMatrix D;
        if (algorithm == ftsclust::ClusterAlgorithm::CMedoids) {
            D = ftsclust::pairwise_from_features(features);
        }
        for (std::size_t k = 0; k < M; ++k) {
            ftsclust::SolverConfig cfg = opt.solver.resolve();
            cfg.n_clusters = C;
            cfg.fuzziness = m_grid[k];
            cfg.seed = ftsclust::derive_seed(opt.seed, (r << 8) + k + 1);
            cfg.threads = 1;
            ftsclust::FuzzyPartition part;
            if (algorithm == ftsclust::ClusterAlgorithm::CMedoids) {
                part = ftsclust::fuzzy_c_medoids(D, cfg);
            } else {
                part = ftsclust::fuzzy_c_means(features.scaled(), cfg);
            }
            if (opt.mode == "crisp") {
                const auto fuzzy = ftsclust::arif_jif(dataset.labels, part.memberships);
                const auto crisp = ftsclust::ari_ji(dataset.labels, part.memberships);
                scores[r][k] = {fuzzy.arif, fuzzy.jif, crisp.ari, crisp.ji};
            } else {
                scores[r][k] = {
                    ftsclust::uncertain_success(part.memberships, dataset.labels, opt.threshold)
                        ? 1.0
                        : 0.0};
            }
        }
    });
    ojson doc = envelope("replicate");
    doc["config"] = ftsclust::metric_config_to_json(metric_config);
    doc["config"]["scenario"] = opt.scenario;
    doc["config"]["replicates"] = opt.replicates;
    doc["config"]["T"] = opt.T;
    doc["config"]["p"] = opt.p;
    doc["config"]["seed"] = opt.seed;
    doc["config"]["unequal_lengths"] = opt.unequal_lengths;
    doc["config"]["algorithm"] = opt.solver.algorithm;
    doc["config"]["C"] = C;
    doc["config"]["m_grid"] = m_grid;
    doc["config"]["mode"] = opt.mode;
    doc["config"]["threshold"] = opt.threshold;
    doc["config"]["starts"] = opt.solver.starts;
    const std::vector<std::string> fields =
        opt.mode == "crisp" ? std::vector<std::string>{"arif", "jif", "ari", "ji"}
                            : std::vector<std::string>{"success"};
    doc["fields"] = fields;
    ojson per_m = ojson::array();
    std::vector<double> rates;
    for (std::size_t k = 0; k < M; ++k) {
        ojson entry;
        entry["m"] = m_grid[k];
        ojson means;
        for (std::size_t f = 0; f < fields.size(); ++f) {
            double total = 0.0;
            for (std::size_t r = 0; r < R; ++r) total += scores[r][k][f];
            means[fields[f]] = total / static_cast<double>(R);
        }
        if (opt.mode == "uncertain") rates.push_back(means["success"].get<double>());
        entry["mean"] = means;
        ojson rep_scores = ojson::array();
        for (std::size_t r = 0; r < R; ++r) rep_scores.push_back(scores[r][k]);
        entry["replicates"] = rep_scores;
        per_m.push_back(std::move(entry));
    }
    doc["per_m"] = std::move(per_m);
    if (opt.mode == "uncertain" && M >= 2) {
        doc["area_under_fuzziness_curve"] =
            ftsclust::area_under_fuzziness_curve(m_grid, rates);
        doc["peak_success_rate"] = *std::max_element(rates.begin(), rates.end());
    }
    ftsclust::write_json_file(doc, opt.out);
    std::cout << "wrote " << opt.out << "\n";
}

// ---------------------------------------------------------------- compare

struct CompareOptions {
    std::vector<std::string> scores;
    std::string field = "arif";
    int bonferroni = 1;
    std::string out;
};

void run_compare(const CompareOptions& opt) {
    if (opt.scores.size() != 2) {
        throw CLI::ValidationError("--scores needs exactly two replicate files");
    }
    const auto a = ftsclust::read_json_file(opt.scores[0]);
    const auto b = ftsclust::read_json_file(opt.scores[1]);
    auto field_index = [&](const nlohmann::json& doc) {
        const auto fields = doc.at("fields").get<std::vector<std::string>>();
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (fields[i] == opt.field) return i;
        }
        throw ftsclust::DomainError("field '" + opt.field + "' not present in score file");
    };
    const std::size_t fa = field_index(a);
    const std::size_t fb = field_index(b);
    const auto& pa = a.at("per_m");
    const auto& pb = b.at("per_m");
    if (pa.size() != pb.size()) {
        throw ftsclust::DimensionError("score files have different m grids");
    }
    ojson doc = envelope("compare");
    doc["config"] = {{"scores", opt.scores},
                     {"field", opt.field},
                     {"bonferroni", opt.bonferroni}};
    ojson tests = ojson::array();
    for (std::size_t k = 0; k < pa.size(); ++k) {
        const double ma = pa[k].at("m").get<double>();
        const double mb = pb[k].at("m").get<double>();
        if (ma != mb) throw ftsclust::DimensionError("score files have different m grids");
        const auto& ra = pa[k].at("replicates");
        const auto& rb = pb[k].at("replicates");
        if (ra.size() != rb.size() || ra.size() < 2) {
            throw ftsclust::DimensionError("replicate counts differ or are too small");
        }
        const std::size_t R = ra.size();
        double mean = 0.0;
        std::vector<double> diff(R);
        for (std::size_t r = 0; r < R; ++r) {
            diff[r] = ra[r][fa].get<double>() - rb[r][fb].get<double>();
            mean += diff[r];
        }
        mean /= static_cast<double>(R);
        double ss = 0.0;
        for (double d : diff) ss += (d - mean) * (d - mean);
        const double sd = std::sqrt(ss / static_cast<double>(R - 1));
        ojson test;
        test["m"] = ma;
        test["mean_difference"] = mean;
        if (sd == 0.0) {
            test["t"] = mean == 0.0 ? 0.0 : (mean > 0 ? 1e308 : -1e308);
            test["p_value"] = mean == 0.0 ? 1.0 : 0.0;
        } else {
            const double t = mean / (sd / std::sqrt(static_cast<double>(R)));
            boost::math::students_t dist(static_cast<double>(R - 1));
            double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
            p = std::min(1.0, p * opt.bonferroni);
            test["t"] = t;
            test["p_value"] = p;
        }
        tests.push_back(std::move(test));
    }
    doc["paired_t_tests"] = std::move(tests);
    ftsclust::write_json_file(doc, opt.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial-dependence clustering of functional time series"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ftsclust::kVersion));

    SimulateOptions sim;
    auto* c_sim = app.add_subcommand("simulate", "Generate a benchmark scenario to disk");
    c_sim->add_option("--scenario", sim.scenario, "Scenario id")
        ->required()
        ->check(CLI::Range(1, 4));
    c_sim->add_option("--T", sim.T, "Series length")->capture_default_str();
    c_sim->add_option("--p", sim.p, "Grid points per curve")->capture_default_str();
    c_sim->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    c_sim->add_flag("--unequal-lengths", sim.unequal_lengths,
                    "Draw per-series lengths from {200,...,600} (ignores --T)");
    c_sim->add_option("--out", sim.out, "Output directory")->required();
    c_sim->callback([&] { run_simulate(sim); });

    FeaturesOptions feat;
    auto* c_feat = app.add_subcommand("features", "Extract per-series dependence features");
    c_feat->add_option("--manifest", feat.manifest, "Input manifest JSON")->required();
    feat.metric.attach(c_feat);
    c_feat->add_flag("--header", feat.header, "Input CSVs carry a header row");
    c_feat->add_option("--threads", feat.threads, "Worker threads")->capture_default_str();
    c_feat->add_option("--out", feat.out, "Output JSON path")->required();
    c_feat->callback([&] { run_features(feat); });

    ClusterOptions clus;
    auto* c_clus = app.add_subcommand("cluster", "Cluster a collection");
    c_clus->add_option("--manifest", clus.manifest, "Input manifest JSON")->required();
    clus.metric.attach(c_clus);
    clus.solver.attach(c_clus);
    c_clus->add_flag("--header", clus.header, "Input CSVs carry a header row");
    c_clus->add_option("--out", clus.out, "Output directory")->required();
    c_clus->callback([&] { run_cluster(clus); });

    SelectOptions sel;
    auto* c_sel = app.add_subcommand("select", "Choose lags, C and m for a collection");
    c_sel->add_option("--manifest", sel.manifest, "Input manifest JSON")->required();
    sel.metric.attach(c_sel);
    sel.solver.attach(c_sel, false);
    c_sel->add_option("--alpha", sel.alpha, "Family significance level")->capture_default_str();
    c_sel->add_option("--max-lag", sel.max_lag, "Largest lag to test")->capture_default_str();
    c_sel->add_option("--C-grid", sel.C_grid, "Candidate cluster counts, ascending")
        ->delimiter(',')
        ->capture_default_str();
    c_sel->add_option("--m-grid", sel.m_grid, "Candidate fuzziness values, ascending")
        ->delimiter(',')
        ->capture_default_str();
    c_sel->add_flag("--permutation", sel.permutation,
                    "Use the permutation independence test instead of the t-test");
    c_sel->add_option("--perms", sel.n_perms, "Permutations for --permutation")
        ->capture_default_str();
    c_sel->add_flag("--header", sel.header, "Input CSVs carry a header row");
    c_sel->add_option("--out", sel.out, "Output JSON path")->required();
    c_sel->callback([&] { run_select(sel); });

    EvaluateOptions eval;
    auto* c_eval = app.add_subcommand("evaluate", "Score a partition against reference labels");
    c_eval->add_option("--partition", eval.partition, "Partition JSON")->required();
    c_eval->add_option("--labels", eval.labels, "Labels JSON")->required();
    c_eval->add_option("--mode", eval.mode, "crisp or uncertain")->capture_default_str();
    c_eval->add_option("--threshold", eval.threshold, "Membership threshold (uncertain mode)")
        ->capture_default_str();
    c_eval->add_option("--out", eval.out, "Output JSON path")->required();
    c_eval->callback([&] { run_evaluate(eval); });

    MdsOptions mds;
    auto* c_mds = app.add_subcommand("mds", "2-D scaling diagnostics of a distance matrix");
    c_mds->add_option("--distances", mds.distances, "Distance matrix CSV")->required();
    c_mds->add_option("--perms", mds.perms, "Permutations")->capture_default_str();
    c_mds->add_option("--seed", mds.seed, "RNG seed")->capture_default_str();
    c_mds->add_option("--threads", mds.threads, "Worker threads")->capture_default_str();
    c_mds->add_option("--out", mds.out, "Output directory")->required();
    c_mds->callback([&] { run_mds(mds); });

    SummarizeOptions summ;
    auto* c_summ = app.add_subcommand("summarize", "Membership-weighted per-cluster features");
    c_summ->add_option("--manifest", summ.manifest, "Input manifest JSON")->required();
    c_summ->add_option("--partition", summ.partition, "Partition JSON")->required();
    summ.metric.attach(c_summ);
    c_summ->add_flag("--header", summ.header, "Input CSVs carry a header row");
    c_summ->add_option("--threads", summ.threads, "Worker threads")->capture_default_str();
    c_summ->add_option("--out", summ.out, "Output JSON path")->required();
    c_summ->add_option("--csv", summ.csv_out, "Also write the table as CSV");
    c_summ->callback([&] { run_summarize(summ); });

    ReplicateOptions rep;
    auto* c_rep = app.add_subcommand("replicate", "Seeded scenario replication with score tables");
    c_rep->add_option("--scenario", rep.scenario, "Scenario id")
        ->required()
        ->check(CLI::Range(1, 4));
    c_rep->add_option("--replicates", rep.replicates, "Number of replicates")
        ->capture_default_str();
    c_rep->add_option("--T", rep.T, "Series length")->capture_default_str();
    c_rep->add_option("--p", rep.p, "Grid points per curve")->capture_default_str();
    c_rep->add_flag("--unequal-lengths", rep.unequal_lengths,
                    "Draw per-series lengths from {200,...,600}");
    rep.metric.attach(c_rep);
    rep.solver.attach(c_rep, false);
    auto* copt = c_rep->add_option("-C,--clusters", rep.solver.C,
                                   "Clusters (default: 4 for scenarios 1-2, else 2)");
    c_rep->add_option("--m-grid", rep.m_grid, "Fuzziness sweep (default: just -m)")
        ->delimiter(',');
    c_rep->add_option("--mode", rep.mode, "crisp or uncertain")->capture_default_str();
    c_rep->add_option("--threshold", rep.threshold, "Membership threshold (uncertain mode)")
        ->capture_default_str();
    c_rep->add_option("--rep-seed", rep.seed, "Base seed for the replicate stream")
        ->capture_default_str();
    c_rep->add_option("--out", rep.out, "Output JSON path")->required();
    c_rep->callback([&] {
        rep.c_explicit = copt->count() > 0;
        run_replicate(rep);
    });

    CompareOptions cmp;
    auto* c_cmp = app.add_subcommand("compare", "Paired t-tests between two replicate score files");
    c_cmp->add_option("--scores", cmp.scores, "Two replicate JSON files")
        ->required()
        ->expected(2);
    c_cmp->add_option("--field", cmp.field, "Score field to compare")->capture_default_str();
    c_cmp->add_option("--bonferroni", cmp.bonferroni, "Multiply p-values by this factor")
        ->capture_default_str();
    c_cmp->add_option("--out", cmp.out, "Output JSON path")->required();
    c_cmp->callback([&] { run_compare(cmp); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ftsclust::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
