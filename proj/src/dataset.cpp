#include "somm/dataset.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace somm {

void validate(const Dataset& data) {
    if (data.features.rows() < 2)
        throw std::invalid_argument("dataset needs at least 2 rows");
    if (data.features.cols() < 1)
        throw std::invalid_argument("dataset needs at least 1 feature column");
    if (data.labels.size() != data.features.rows())
        throw std::invalid_argument("label count does not match row count");
    for (std::size_t r = 0; r < data.features.rows(); ++r)
        for (std::size_t c = 0; c < data.features.cols(); ++c)
            if (!std::isfinite(data.features.at(r, c)))
                throw std::invalid_argument(
                    "non-finite feature value at row " + std::to_string(r) +
                    ", column " + std::to_string(c));
}

std::pair<Dataset, NormalizationParams> normalize(const Dataset& data) {
    validate(data);
    const std::size_t n = data.features.rows();
    const std::size_t f = data.features.cols();

    NormalizationParams params;
    params.min_per_feature.assign(f, std::numeric_limits<double>::infinity());
    params.max_per_feature.assign(f, -std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < f; ++c) {
            const double v = data.features.at(r, c);
            if (v < params.min_per_feature[c]) params.min_per_feature[c] = v;
            if (v > params.max_per_feature[c]) params.max_per_feature[c] = v;
        }
    }
    params.constant_feature.resize(f);
    for (std::size_t c = 0; c < f; ++c)
        params.constant_feature[c] =
            params.max_per_feature[c] == params.min_per_feature[c];

    Dataset out = data;
    out.features = apply_normalization(data.features, params);
    return {std::move(out), std::move(params)};
}

Matrix apply_normalization(const Matrix& features, const NormalizationParams& params) {
    if (features.cols() != params.size())
        throw std::invalid_argument("normalization parameter width mismatch");
    Matrix out(features.rows(), features.cols());
    for (std::size_t r = 0; r < features.rows(); ++r) {
        for (std::size_t c = 0; c < features.cols(); ++c) {
            if (params.constant_feature[c]) {
                out.at(r, c) = 0.0;
            } else {
                const double range =
                    params.max_per_feature[c] - params.min_per_feature[c];
                out.at(r, c) = (features.at(r, c) - params.min_per_feature[c]) / range;
            }
        }
    }
    return out;
}

Matrix denormalize(const Matrix& features_norm, const NormalizationParams& params) {
    if (features_norm.cols() != params.size())
        throw std::invalid_argument("normalization parameter width mismatch");
    for (std::size_t r = 0; r < features_norm.rows(); ++r)
        for (std::size_t c = 0; c < features_norm.cols(); ++c)
            if (!std::isfinite(features_norm.at(r, c)))
                throw std::invalid_argument("non-finite value in normalized matrix");

    Matrix out(features_norm.rows(), features_norm.cols());
    for (std::size_t r = 0; r < features_norm.rows(); ++r) {
        for (std::size_t c = 0; c < features_norm.cols(); ++c) {
            if (params.constant_feature[c]) {
                out.at(r, c) = params.min_per_feature[c];
            } else {
                const double range =
                    params.max_per_feature[c] - params.min_per_feature[c];
                out.at(r, c) = features_norm.at(r, c) * range + params.min_per_feature[c];
            }
        }
    }
    return out;
}

std::pair<Dataset, Dataset> split_by_class(const Dataset& data, int minority_label) {
    bool present = false;
    for (int l : data.labels)
        if (l == minority_label) { present = true; break; }
    if (!present)
        throw std::invalid_argument("minority label " +
                                    std::to_string(minority_label) +
                                    " not present in dataset");

    Dataset majority, minority;
    majority.feature_names = minority.feature_names = data.feature_names;
    majority.class_names = minority.class_names = data.class_names;
    for (std::size_t r = 0; r < data.size(); ++r) {
        Dataset& side = data.labels[r] == minority_label ? minority : majority;
        side.features.append_row(data.features.row(r));
        side.labels.push_back(data.labels[r]);
    }
    return {std::move(majority), std::move(minority)};
}

FeatureBounds feature_bounds(const Dataset& minority_norm) {
    if (minority_norm.size() == 0)
        throw std::invalid_argument("feature_bounds: empty minority subset");
    const std::size_t f = minority_norm.n_features();
    FeatureBounds bounds;
    bounds.lower.assign(f, std::numeric_limits<double>::infinity());
    bounds.upper.assign(f, -std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r < minority_norm.size(); ++r) {
        for (std::size_t c = 0; c < f; ++c) {
            const double v = minority_norm.features.at(r, c);
            if (v < bounds.lower[c]) bounds.lower[c] = v;
            if (v > bounds.upper[c]) bounds.upper[c] = v;
        }
    }
    return bounds;
}

std::vector<int> class_ids(const Dataset& data) {
    std::set<int> ids(data.labels.begin(), data.labels.end());
    return {ids.begin(), ids.end()};
}

std::map<int, std::size_t> class_counts(const Dataset& data) {
    std::map<int, std::size_t> counts;
    for (int l : data.labels) ++counts[l];
    return counts;
}

}  // namespace somm
