#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "ftsclust/errors.hpp"
#include "ftsclust/serialize.hpp"

using namespace ftsclust;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ftsclust_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Eigen::MatrixXd awkward_matrix() {
    Eigen::MatrixXd m(3, 4);
    m << 1.0, -2.5, 1e-300, 0.1 + 0.2,  //
        3.141592653589793, -1e300, 0.0, -0.0,  //
        1.0 / 3.0, 2.0 / 3.0, 123456789.123456789, 5e-324;
    return m;
}

}  // namespace

TEST_CASE("fqa parameter round trip") {
    FqaParams reduced = FqaParams::reduced({1, 2, 5}, {0.1, 0.5, 0.9});
    FqaParams back = fqa_params_from_json(fqa_params_to_json(reduced));
    CHECK(back.lags == reduced.lags);
    CHECK(back.levels == reduced.levels);
    CHECK(back.thresholds.empty());

    FqaParams ext = FqaParams::with_thresholds({1}, {0.25, 0.75}, {0.3, 0.7});
    FqaParams eback = fqa_params_from_json(fqa_params_to_json(ext));
    CHECK(eback.thresholds == ext.thresholds);
    CHECK(eback.feature_count() == ext.feature_count());
}

TEST_CASE("metric config round trip covers every metric") {
    for (Metric m : {Metric::FQA, Metric::FACF, Metric::FSACF, Metric::KendallMax,
                     Metric::KendallIntegral}) {
        MetricConfig cfg;
        cfg.metric = m;
        cfg.fqa = FqaParams::reduced({1, 3}, {0.2, 0.8});
        cfg.policy = DegeneratePolicy::Zero;
        MetricConfig back = metric_config_from_json(metric_config_to_json(cfg));
        CHECK(back.metric == m);
        CHECK(back.policy == DegeneratePolicy::Zero);
        CHECK(back.fqa.lags == cfg.fqa.lags);
    }
    CHECK_THROWS_AS(parse_metric("fqa"), DomainError);  // tags are case-sensitive
}

TEST_CASE("solver config serializes its resolved values") {
    SolverConfig cfg;
    cfg.n_clusters = 4;
    cfg.fuzziness = 1.2;
    cfg.n_starts = 17;
    cfg.seed = 12345;
    ojson j = solver_config_to_json(cfg);
    CHECK(j["C"] == 4);
    CHECK(j["m"] == 1.2);
    CHECK(j["n_starts"] == 17);
    CHECK(j["seed"] == 12345);
}

TEST_CASE("partition documents round trip memberships") {
    FuzzyPartition part;
    part.memberships = Eigen::MatrixXd(3, 2);
    part.memberships << 0.9, 0.1, 0.3, 0.7, 0.5, 0.5;
    part.medoids = {0, 2};
    part.objective = 1.25;
    part.iterations = 4;
    part.converged = true;
    part.best_start = 3;
    SolverConfig cfg;
    cfg.n_clusters = 2;
    ojson doc = partition_to_json(part, ClusterAlgorithm::CMedoids, cfg);
    CHECK(doc["algorithm"] == "c_medoids");
    CHECK(doc["prototypes"].size() == 2);
    Eigen::MatrixXd back = memberships_from_json(doc);
    CHECK((back - part.memberships).cwiseAbs().maxCoeff() == 0.0);

    FuzzyPartition means;
    means.memberships = part.memberships;
    means.centroids = Eigen::MatrixXd::Random(2, 5);
    ojson mdoc = partition_to_json(means, ClusterAlgorithm::CMeans, cfg);
    CHECK(mdoc["algorithm"] == "c_means");
    CHECK(mdoc["prototypes"].size() == 2);
    CHECK(memberships_from_json(mdoc).rows() == 3);
}

TEST_CASE("feature sets round trip exactly") {
    FeatureSet fset;
    fset.unscaled = awkward_matrix();
    fset.scale = 1.0 / 6.0;
    fset.metric = Metric::FSACF;
    fset.degenerate_count = 2;
    MetricConfig cfg;
    cfg.metric = Metric::FSACF;
    ojson doc = feature_set_to_json(fset, cfg, {"a", "b", "c"});
    FeatureSet back = feature_set_from_json(doc);
    CHECK(back.metric == Metric::FSACF);
    CHECK(back.scale == fset.scale);
    CHECK(back.degenerate_count == 2);
    CHECK((back.unscaled - fset.unscaled).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("labels round trip") {
    std::vector<int> labels{1, 1, 2, 0, 4};
    CHECK(labels_from_json(labels_to_json(labels)) == labels);
}

TEST_CASE("matrix json round trip is bit exact") {
    Eigen::MatrixXd m = awkward_matrix();
    Eigen::MatrixXd back = matrix_from_json(matrix_to_json(m));
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            CHECK(back(i, j) == m(i, j));
        }
    }
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("[[1,2],[3]]")), ParseError);
}

TEST_CASE("matrix csv round trip preserves 17 significant digits") {
    TempDir tmp;
    Eigen::MatrixXd m = awkward_matrix();
    const fs::path file = tmp.path / "m.csv";
    save_matrix_csv(m, file);
    Eigen::MatrixXd back = load_matrix_csv(file);
    REQUIRE(back.rows() == m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            CHECK(back(i, j) == m(i, j));
        }
    }
    CHECK_THROWS_AS(load_matrix_csv(tmp.path / "missing.csv"), ParseError);
}

TEST_CASE("json files round trip through disk") {
    TempDir tmp;
    ojson doc;
    doc["alpha"] = 0.05;
    doc["lags"] = {1, 2};
    doc["nested"]["value"] = "x";
    const fs::path file = tmp.path / "doc.json";
    write_json_file(doc, file);
    nlohmann::json back = read_json_file(file);
    CHECK(back["alpha"] == 0.05);
    CHECK(back["lags"].size() == 2);
    CHECK(back["nested"]["value"] == "x");
    CHECK_THROWS_AS(read_json_file(tmp.path / "absent.json"), ParseError);
}

TEST_CASE("dissimilarity validation") {
    Eigen::MatrixXd good = Eigen::MatrixXd::Zero(3, 3);
    good(0, 1) = good(1, 0) = 0.5;
    good(0, 2) = good(2, 0) = 0.25;
    good(1, 2) = good(2, 1) = 0.75;
    CHECK_NOTHROW(validate_dissimilarity(good));

    Eigen::MatrixXd asym = good;
    asym(0, 1) = 0.6;
    CHECK_THROWS_AS(validate_dissimilarity(asym), DomainError);

    Eigen::MatrixXd diag = good;
    diag(1, 1) = 0.1;
    CHECK_THROWS_AS(validate_dissimilarity(diag), DomainError);

    Eigen::MatrixXd neg = good;
    neg(0, 1) = neg(1, 0) = -0.5;
    CHECK_THROWS_AS(validate_dissimilarity(neg), DomainError);

    Eigen::MatrixXd rect = Eigen::MatrixXd::Zero(2, 3);
    CHECK_THROWS_AS(validate_dissimilarity(rect), DimensionError);
}
