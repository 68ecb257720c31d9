#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <vector>

#include "somm/baselines.hpp"
#include "somm/dataset.hpp"
#include "somm/metrics.hpp"
#include "somm/somm.hpp"
#include "somm/synthetic.hpp"
#include "somm/version.hpp"

namespace py = pybind11;

namespace {

using Rows = std::vector<std::vector<double>>;

somm::Dataset make_dataset(const Rows& features, const std::vector<int>& labels) {
    somm::Dataset data;
    data.features = somm::Matrix::from_rows(features);
    data.labels = labels;
    somm::validate(data);
    return data;
}

Rows to_rows(const somm::Matrix& m) {
    Rows out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        out[r].assign(m.row(r).begin(), m.row(r).end());
    return out;
}

Rows oversample(const Rows& features, const std::vector<int>& labels,
                int minority_label, const std::string& method, int k,
                std::optional<std::size_t> n, std::uint64_t seed) {
    const somm::Dataset data = make_dataset(features, labels);
    if (method == "somm") {
        somm::SommConfig config;
        if (k > 0) config.k = k;
        config.n_synthetic = n;
        config.seed = seed;
        return to_rows(somm::somm_oversample(data, minority_label, config).synthetic);
    }
    if (method == "smote") {
        somm::SmoteConfig config;
        if (k > 0) config.k = k;
        config.n_synthetic = n;
        config.seed = seed;
        return to_rows(somm::smote_oversample(data, minority_label, config).synthetic);
    }
    if (method == "random") {
        if (!n) throw std::invalid_argument("random oversampling needs n");
        return to_rows(
            somm::random_oversample(data, minority_label, *n, seed).synthetic);
    }
    throw std::invalid_argument("unknown method '" + method + "'");
}

std::pair<Rows, std::vector<int>> balance(const Rows& features,
                                          const std::vector<int>& labels,
                                          int k, std::uint64_t seed) {
    somm::SommConfig config;
    if (k > 0) config.k = k;
    config.seed = seed;
    const somm::Dataset out =
        somm::somm_multiclass(make_dataset(features, labels), config);
    return {to_rows(out.features), out.labels};
}

std::pair<Rows, std::vector<int>> gen_synthetic(const std::string& family,
                                                std::size_t n_majority,
                                                std::size_t n_minority,
                                                std::uint64_t seed) {
    const auto parsed = somm::parse_family(family);
    if (!parsed) throw std::invalid_argument("unknown family '" + family + "'");
    somm::SyntheticSpec spec;
    spec.family = *parsed;
    spec.n_majority = n_majority;
    spec.n_minority = n_minority;
    spec.seed = seed;
    const somm::Dataset data = somm::generate(spec);
    return {to_rows(data.features), data.labels};
}

double g_mean_py(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                 int n_classes) {
    return somm::g_mean(somm::confusion(y_true, y_pred, n_classes));
}

double mg_py(const std::vector<int>& y_true, const std::vector<int>& y_pred,
             int n_classes) {
    return somm::mg(somm::confusion(y_true, y_pred, n_classes));
}

double imbalance_ratio_py(std::vector<std::int64_t> counts) {
    return somm::imbalance_ratio(somm::ClassDistribution(std::move(counts)));
}

double covdiv_py(const Rows& reference, const Rows& synthetic, int cells) {
    return somm::covdiv(somm::Matrix::from_rows(reference),
                        somm::Matrix::from_rows(synthetic), cells)
        .covdiv;
}

std::pair<double, double> mann_whitney_py(const std::vector<double>& a,
                                          const std::vector<double>& b) {
    const auto result = somm::mann_whitney_u(a, b);
    return {result.u, result.p_value};
}

}  // namespace

PYBIND11_MODULE(_somm, m) {
    m.doc() = "Minority over-sampling toolkit";
    m.attr("__version__") = somm::kVersion;

    m.def("oversample", &oversample, py::arg("features"), py::arg("labels"),
          py::arg("minority_label"), py::arg("method") = "somm",
          py::arg("k") = 0, py::arg("n") = std::nullopt, py::arg("seed") = 0,
          "Generate synthetic minority rows; returns only the new rows.");
    m.def("balance", &balance, py::arg("features"), py::arg("labels"),
          py::arg("k") = 0, py::arg("seed") = 0,
          "Balance every class up to the largest one; returns (features, labels).");
    m.def("generate_synthetic", &gen_synthetic, py::arg("family"),
          py::arg("n_majority") = 100, py::arg("n_minority") = 20,
          py::arg("seed") = 0,
          "Built-in 2-d benchmark data; returns (features, labels).");
    m.def("g_mean", &g_mean_py, py::arg("y_true"), py::arg("y_pred"),
          py::arg("n_classes") = 2);
    m.def("mg", &mg_py, py::arg("y_true"), py::arg("y_pred"),
          py::arg("n_classes"));
    m.def("imbalance_ratio", &imbalance_ratio_py, py::arg("class_counts"));
    m.def("covdiv", &covdiv_py, py::arg("reference"), py::arg("synthetic"),
          py::arg("cells") = 10);
    m.def("mann_whitney_u", &mann_whitney_py, py::arg("a"), py::arg("b"));
}
