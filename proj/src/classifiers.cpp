#include "somm/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace somm {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(t)) without overflow
double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double raw_score(std::span<const double> weights_bias, std::span<const double> x) {
    double z = weights_bias[x.size()];  // bias last
    for (std::size_t f = 0; f < x.size(); ++f) z += weights_bias[f] * x[f];
    return z;
}

std::vector<double> train_binary_logreg(const Matrix& x, const std::vector<int>& y01,
                                        int epochs, double rate) {
    std::vector<double> wb(x.cols() + 1, 0.0);
    for (int e = 0; e < epochs; ++e) {
        const std::vector<double> grad = logreg_gradient(wb, x, y01);
        for (std::size_t i = 0; i < wb.size(); ++i) wb[i] -= rate * grad[i];
    }
    return wb;
}

KnnModel fit_knn(const Dataset& train, int k) {
    auto [train_norm, params] = normalize(train);
    return KnnModel{std::move(params), std::move(train_norm.features),
                    train.labels, k};
}

LogRegModel fit_logreg(const Dataset& train, const std::vector<int>& classes,
                       const ClassifierHyperparams& hp) {
    auto [train_norm, params] = normalize(train);
    LogRegModel model;
    model.norm = std::move(params);
    model.classes = classes;

    std::vector<int> y(train.size());
    if (classes.size() == 2) {
        // Single model scoring the higher class id as positive.
        for (std::size_t r = 0; r < train.size(); ++r)
            y[r] = train.labels[r] == classes[1] ? 1 : 0;
        model.weights.push_back(train_binary_logreg(
            train_norm.features, y, hp.logreg_epochs, hp.logreg_rate));
    } else {
        for (int c : classes) {
            for (std::size_t r = 0; r < train.size(); ++r)
                y[r] = train.labels[r] == c ? 1 : 0;
            model.weights.push_back(train_binary_logreg(
                train_norm.features, y, hp.logreg_epochs, hp.logreg_rate));
        }
    }
    return model;
}

GnbModel fit_gnb(const Dataset& train, const std::vector<int>& classes) {
    const std::size_t n = train.size();
    const std::size_t f = train.n_features();

    // Variance floor scales with the global spread of each feature.
    std::vector<double> global_mean(f, 0.0), global_var(f, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < f; ++c) global_mean[c] += train.features.at(r, c);
    for (double& v : global_mean) v /= static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < f; ++c) {
            const double d = train.features.at(r, c) - global_mean[c];
            global_var[c] += d * d;
        }
    for (double& v : global_var) v /= static_cast<double>(n);

    GnbModel model;
    model.classes = classes;
    model.means = Matrix(classes.size(), f);
    model.variances = Matrix(classes.size(), f);
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        std::size_t count = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (train.labels[r] != classes[ci]) continue;
            ++count;
            for (std::size_t c = 0; c < f; ++c)
                model.means.at(ci, c) += train.features.at(r, c);
        }
        for (std::size_t c = 0; c < f; ++c)
            model.means.at(ci, c) /= static_cast<double>(count);
        for (std::size_t r = 0; r < n; ++r) {
            if (train.labels[r] != classes[ci]) continue;
            for (std::size_t c = 0; c < f; ++c) {
                const double d = train.features.at(r, c) - model.means.at(ci, c);
                model.variances.at(ci, c) += d * d;
            }
        }
        for (std::size_t c = 0; c < f; ++c) {
            const double floor = 1e-9 + 1e-6 * global_var[c];
            model.variances.at(ci, c) =
                std::max(model.variances.at(ci, c) / static_cast<double>(count), floor);
        }
        model.log_priors.push_back(
            std::log(static_cast<double>(count) / static_cast<double>(n)));
    }
    return model;
}

std::size_t expected_width(const KnnModel& m) { return m.train_norm.cols(); }
std::size_t expected_width(const LogRegModel& m) { return m.norm.size(); }
std::size_t expected_width(const GnbModel& m) { return m.means.cols(); }

std::vector<int> predict_knn(const KnnModel& model, const Matrix& queries) {
    const Matrix q = apply_normalization(queries, model.norm);
    const std::size_t n = model.train_norm.rows();
    const int k = std::min<std::size_t>(model.k, n);

    std::vector<int> out;
    out.reserve(q.rows());
    std::vector<double> dist(n);
    std::vector<int> order(n);
    for (std::size_t r = 0; r < q.rows(); ++r) {
        const auto query = q.row(r);
        for (std::size_t t = 0; t < n; ++t) {
            double sum = 0.0;
            const auto row = model.train_norm.row(t);
            for (std::size_t c = 0; c < query.size(); ++c) {
                const double d = query[c] - row[c];
                sum += d * d;
            }
            dist[t] = sum;
        }
        for (std::size_t t = 0; t < n; ++t) order[t] = static_cast<int>(t);
        std::partial_sort(order.begin(), order.begin() + k, order.end(),
                          [&](int a, int b) {
                              if (dist[a] != dist[b]) return dist[a] < dist[b];
                              return a < b;
                          });
        std::map<int, int> votes;
        for (int i = 0; i < k; ++i) ++votes[model.labels[order[i]]];
        int best = -1, best_votes = -1;
        for (const auto& [label, count] : votes)  // ascending ids, ties keep the first
            if (count > best_votes) { best = label; best_votes = count; }
        out.push_back(best);
    }
    return out;
}

std::vector<int> predict_logreg(const LogRegModel& model, const Matrix& queries) {
    const Matrix q = apply_normalization(queries, model.norm);
    std::vector<int> out;
    out.reserve(q.rows());
    for (std::size_t r = 0; r < q.rows(); ++r) {
        if (model.classes.size() == 2) {
            const double p = sigmoid(raw_score(model.weights[0], q.row(r)));
            out.push_back(p > 0.5 ? model.classes[1] : model.classes[0]);
        } else {
            int best = model.classes[0];
            double best_score = raw_score(model.weights[0], q.row(r));
            for (std::size_t ci = 1; ci < model.classes.size(); ++ci) {
                const double score = raw_score(model.weights[ci], q.row(r));
                if (score > best_score) { best = model.classes[ci]; best_score = score; }
            }
            out.push_back(best);
        }
    }
    return out;
}

std::vector<int> predict_gnb(const GnbModel& model, const Matrix& queries) {
    constexpr double two_pi = 2.0 * 3.14159265358979323846;
    std::vector<int> out;
    out.reserve(queries.rows());
    for (std::size_t r = 0; r < queries.rows(); ++r) {
        int best = model.classes[0];
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t ci = 0; ci < model.classes.size(); ++ci) {
            double score = model.log_priors[ci];
            for (std::size_t c = 0; c < queries.cols(); ++c) {
                const double var = model.variances.at(ci, c);
                const double d = queries.at(r, c) - model.means.at(ci, c);
                score += -0.5 * std::log(two_pi * var) - d * d / (2.0 * var);
            }
            if (score > best_score) { best = model.classes[ci]; best_score = score; }
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace

double logreg_loss(std::span<const double> weights_bias, const Matrix& x,
                   const std::vector<int>& y01) {
    double total = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const double z = raw_score(weights_bias, x.row(r));
        total += y01[r] == 1 ? softplus(-z) : softplus(z);
    }
    return total / static_cast<double>(x.rows());
}

std::vector<double> logreg_gradient(std::span<const double> weights_bias,
                                    const Matrix& x, const std::vector<int>& y01) {
    std::vector<double> grad(weights_bias.size(), 0.0);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto row = x.row(r);
        const double err = sigmoid(raw_score(weights_bias, row)) - y01[r];
        for (std::size_t f = 0; f < row.size(); ++f) grad[f] += err * row[f];
        grad[row.size()] += err;
    }
    for (double& g : grad) g /= static_cast<double>(x.rows());
    return grad;
}

TrainedModel fit(const Dataset& train, ClassifierKind kind,
                 const ClassifierHyperparams& params, std::uint64_t) {
    validate(train);
    const std::vector<int> classes = class_ids(train);
    if (classes.size() < 2)
        throw std::invalid_argument("fit: training data has a single class");

    switch (kind) {
    case ClassifierKind::Knn:
        return {kind, fit_knn(train, params.knn_k)};
    case ClassifierKind::LogReg:
        return {kind, fit_logreg(train, classes, params)};
    case ClassifierKind::Gnb:
        return {kind, fit_gnb(train, classes)};
    }
    throw std::invalid_argument("fit: unknown classifier kind");
}

std::vector<int> predict(const TrainedModel& model, const Matrix& features) {
    return std::visit(
        [&](const auto& state) -> std::vector<int> {
            using T = std::decay_t<decltype(state)>;
            if (features.cols() != expected_width(state))
                throw std::invalid_argument("predict: feature width mismatch");
            if constexpr (std::is_same_v<T, KnnModel>)
                return predict_knn(state, features);
            else if constexpr (std::is_same_v<T, LogRegModel>)
                return predict_logreg(state, features);
            else
                return predict_gnb(state, features);
        },
        model.state);
}

}  // namespace somm
