#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "somm/dataset.hpp"

namespace somm {

enum class ClassifierKind { Knn, LogReg, Gnb };

struct ClassifierHyperparams {
    int knn_k = 5;
    int logreg_epochs = 500;
    double logreg_rate = 0.1;
};

struct KnnModel {
    NormalizationParams norm;
    Matrix train_norm;
    std::vector<int> labels;
    int k = 5;
};

struct LogRegModel {
    NormalizationParams norm;
    std::vector<int> classes;  // ascending ids
    // One weight row per one-vs-rest model (a single row when binary),
    // layout: one weight per feature then the bias.
    std::vector<std::vector<double>> weights;
};

struct GnbModel {
    std::vector<int> classes;
    Matrix means;      // class x feature
    Matrix variances;  // floored, class x feature
    std::vector<double> log_priors;
};

struct TrainedModel {
    ClassifierKind kind;
    std::variant<KnnModel, LogRegModel, GnbModel> state;
};

/// Train one of the built-in classifiers. All three are deterministic; the
/// seed parameter is accepted for interface stability and currently unused.
TrainedModel fit(const Dataset& train, ClassifierKind kind,
                 const ClassifierHyperparams& params = {}, std::uint64_t seed = 0);

/// One label per row. Ties (vote or score) resolve to the lowest class id.
std::vector<int> predict(const TrainedModel& model, const Matrix& features);

/// Mean cross-entropy of a single binary logistic model; weights are laid out
/// feature weights first, bias last. Exposed for gradient checks.
double logreg_loss(std::span<const double> weights_bias, const Matrix& x,
                   const std::vector<int>& y01);

/// Analytic gradient of logreg_loss, same layout.
std::vector<double> logreg_gradient(std::span<const double> weights_bias,
                                    const Matrix& x, const std::vector<int>& y01);

}  // namespace somm
