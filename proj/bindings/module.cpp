#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ftsclust/clustering.hpp"
#include "ftsclust/dissimilarity.hpp"
#include "ftsclust/errors.hpp"
#include "ftsclust/evaluate.hpp"
#include "ftsclust/fqa.hpp"
#include "ftsclust/lag_selection.hpp"
#include "ftsclust/simulate.hpp"
#include "ftsclust/version.hpp"

namespace py = pybind11;
using ftsclust::FunctionalTimeSeries;
using ftsclust::Grid;

namespace {

FunctionalTimeSeries to_series(const Eigen::MatrixXd& values) {
    return FunctionalTimeSeries(values, Grid::uniform(static_cast<std::size_t>(values.cols())));
}

std::vector<FunctionalTimeSeries> to_collection(const std::vector<Eigen::MatrixXd>& arrays) {
    std::vector<FunctionalTimeSeries> out;
    out.reserve(arrays.size());
    for (const auto& a : arrays) out.push_back(to_series(a));
    return out;
}

ftsclust::MetricConfig make_config(const std::string& metric, const std::vector<int>& lags,
                                   const std::vector<double>& levels,
                                   const std::vector<double>& thresholds,
                                   bool allow_degenerate) {
    ftsclust::MetricConfig config;
    config.metric = ftsclust::parse_metric(metric);
    config.fqa = thresholds.empty()
                     ? ftsclust::FqaParams::reduced(lags, levels)
                     : ftsclust::FqaParams::with_thresholds(lags, levels, thresholds);
    config.policy = allow_degenerate ? ftsclust::DegeneratePolicy::Zero
                                     : ftsclust::DegeneratePolicy::Error;
    return config;
}

py::dict partition_dict(const ftsclust::FuzzyPartition& p) {
    py::dict d;
    d["memberships"] = p.memberships;
    d["medoids"] = p.medoids;
    d["centroids"] = p.centroids;
    d["objective"] = p.objective;
    d["iterations"] = p.iterations;
    d["converged"] = p.converged;
    d["best_start"] = p.best_start;
    return d;
}

ftsclust::SolverConfig make_solver(int C, double m, int starts, std::uint64_t seed, int max_iter,
                                   double tol, int threads) {
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

}  // namespace

PYBIND11_MODULE(_ftsclust, mod) {
    mod.doc() = "Serial-dependence clustering of functional time series";
    mod.attr("__version__") = ftsclust::kVersion;

    py::register_exception<ftsclust::Error>(mod, "FtsclustError");

    mod.def(
        "quantile_autocorrelation",
        [](const Eigen::MatrixXd& x, double tau1, double tau2, int lag, double beta1,
           double beta2) {
            return ftsclust::fqa_autocorrelation(to_series(x), tau1, tau2, lag, beta1, beta2);
        },
        py::arg("x"), py::arg("tau1"), py::arg("tau2"), py::arg("lag"), py::arg("beta1"),
        py::arg("beta2"),
        "Lagged autocorrelation of the quantile-threshold indicator series of one "
        "functional time series (rows = time, columns = grid points on [0, 1]).");

    mod.def(
        "pairwise_distances",
        [](const std::vector<Eigen::MatrixXd>& arrays, const std::string& metric,
           const std::vector<int>& lags, const std::vector<double>& levels,
           const std::vector<double>& thresholds, bool allow_degenerate, int threads) {
            const auto config =
                make_config(metric, lags, levels, thresholds, allow_degenerate);
            return ftsclust::pairwise_matrix(to_collection(arrays), config, threads).values;
        },
        py::arg("arrays"), py::arg("metric") = "FQA",
        py::arg("lags") = std::vector<int>{1},
        py::arg("levels") = std::vector<double>{0.1, 0.5, 0.9},
        py::arg("thresholds") = std::vector<double>{}, py::arg("allow_degenerate") = false,
        py::arg("threads") = 1,
        "Symmetric dissimilarity matrix between functional time series under the "
        "chosen dependence metric (FQA, FACF, FSACF, K_m or K_i).");

    mod.def(
        "features",
        [](const std::vector<Eigen::MatrixXd>& arrays, const std::string& metric,
           const std::vector<int>& lags, const std::vector<double>& levels,
           const std::vector<double>& thresholds, bool allow_degenerate, int threads) {
            const auto config =
                make_config(metric, lags, levels, thresholds, allow_degenerate);
            const auto set =
                ftsclust::extract_features(to_collection(arrays), config, threads);
            py::dict d;
            d["unscaled"] = set.unscaled;
            d["scale"] = set.scale;
            d["scaled"] = set.scaled();
            d["degenerate_count"] = set.degenerate_count;
            return d;
        },
        py::arg("arrays"), py::arg("metric") = "FQA",
        py::arg("lags") = std::vector<int>{1},
        py::arg("levels") = std::vector<double>{0.1, 0.5, 0.9},
        py::arg("thresholds") = std::vector<double>{}, py::arg("allow_degenerate") = false,
        py::arg("threads") = 1,
        "Per-series dependence feature rows; the squared Euclidean distance of two "
        "scaled rows equals the pairwise dissimilarity.");

    mod.def(
        "fuzzy_c_medoids",
        [](const Eigen::MatrixXd& D, int C, double m, int starts, std::uint64_t seed,
           int max_iter, int threads) {
            ftsclust::DissimilarityMatrix dm;
            dm.values = D;
            return partition_dict(ftsclust::fuzzy_c_medoids(
                dm, make_solver(C, m, starts, seed, max_iter, 1e-6, threads)));
        },
        py::arg("distances"), py::arg("C"), py::arg("m") = 2.0, py::arg("starts") = 200,
        py::arg("seed") = 0, py::arg("max_iter") = 100000, py::arg("threads") = 1,
        "Fuzzy C-medoids on a precomputed dissimilarity matrix.");

    mod.def(
        "fuzzy_c_means",
        [](const Eigen::MatrixXd& X, int C, double m, int starts, std::uint64_t seed,
           int max_iter, double tol, int threads) {
            return partition_dict(ftsclust::fuzzy_c_means(
                X, make_solver(C, m, starts, seed, max_iter, tol, threads)));
        },
        py::arg("features"), py::arg("C"), py::arg("m") = 2.0, py::arg("starts") = 200,
        py::arg("seed") = 0, py::arg("max_iter") = 100000, py::arg("tol") = 1e-6,
        py::arg("threads") = 1, "Fuzzy C-means on feature rows.");

    mod.def(
        "xie_beni",
        [](const Eigen::MatrixXd& X, const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) {
            return ftsclust::xie_beni(X, U, V);
        },
        py::arg("features"), py::arg("memberships"), py::arg("centroids"),
        "Xie-Beni validity index (small is good).");

    mod.def(
        "select_lags",
        [](const std::vector<Eigen::MatrixXd>& arrays, double alpha, int max_lag,
           bool permutation, int n_perms, std::uint64_t seed) {
            const auto report = ftsclust::select_lags(to_collection(arrays), alpha, max_lag,
                                                      permutation, n_perms, seed);
            py::dict d;
            d["lags"] = report.lags;
            d["corrected_alpha"] = report.corrected_alpha;
            d["per_series_lag"] = report.per_series_lag;
            d["per_series_p"] = report.per_series_p;
            d["fallback"] = report.fallback;
            return d;
        },
        py::arg("arrays"), py::arg("alpha") = 0.05, py::arg("max_lag") = 10,
        py::arg("permutation") = false, py::arg("n_perms") = 999, py::arg("seed") = 0,
        "Distance-correlation lag screen pooled across the collection.");

    mod.def(
        "make_scenario",
        [](int id, std::size_t T, std::size_t p, std::uint64_t seed, bool unequal_lengths) {
            const auto dataset = ftsclust::make_scenario(id, T, p, seed, unequal_lengths);
            std::vector<Eigen::MatrixXd> arrays;
            arrays.reserve(dataset.series.size());
            for (const auto& s : dataset.series) arrays.push_back(s.values());
            return py::make_tuple(arrays, dataset.labels);
        },
        py::arg("id"), py::arg("T") = 200, py::arg("p") = 100, py::arg("seed") = 0,
        py::arg("unequal_lengths") = false,
        "One of the four benchmark collections; returns (arrays, labels).");

    mod.def(
        "arif_jif",
        [](const std::vector<int>& labels, const Eigen::MatrixXd& U) {
            const auto pair = ftsclust::arif_jif(labels, U);
            return py::make_tuple(pair.arif, pair.jif);
        },
        py::arg("labels"), py::arg("memberships"),
        "Fuzzy agreement indices of a membership matrix against reference labels.");

    mod.def(
        "mds_2d",
        [](const Eigen::MatrixXd& D) {
            const auto r = ftsclust::mds_2d(D);
            py::dict d;
            d["coords"] = r.coords;
            d["stress"] = r.stress;
            d["rank_deficient"] = r.rank_deficient;
            return d;
        },
        py::arg("distances"), "Classical 2-D scaling of a dissimilarity matrix.");
}
