#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "somm/matrix.hpp"

namespace somm {

/// Feature matrix plus integer class labels. Immutable by convention once
/// built; all operations below are pure functions of their inputs.
struct Dataset {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> feature_names;  // optional, empty when unnamed
    std::map<int, std::string> class_names;  // optional id -> display name

    std::size_t size() const { return features.rows(); }
    std::size_t n_features() const { return features.cols(); }
};

/// Per-feature min/max captured at normalization time, plus the mask of
/// constant features (max == min), which normalize maps to 0.0 and
/// denormalize restores to the stored constant.
struct NormalizationParams {
    std::vector<double> min_per_feature;
    std::vector<double> max_per_feature;
    std::vector<bool> constant_feature;

    std::size_t size() const { return min_per_feature.size(); }
};

/// Axis-aligned per-feature box, lower[f] <= upper[f].
struct FeatureBounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t size() const { return lower.size(); }
};

/// Throws std::invalid_argument unless the dataset has >= 2 rows, >= 1
/// feature, matching label length, and only finite feature values.
void validate(const Dataset& data);

/// Min-max scale every feature column into [0, 1]; constant columns map to
/// 0.0. Labels and names pass through unchanged.
std::pair<Dataset, NormalizationParams> normalize(const Dataset& data);

/// Scale a matrix with previously captured parameters (used to place query
/// rows into the training scale; results may fall outside [0, 1]).
Matrix apply_normalization(const Matrix& features, const NormalizationParams& params);

/// Inverse of normalize: x * (max - min) + min, constants restored verbatim.
Matrix denormalize(const Matrix& features_norm, const NormalizationParams& params);

/// Partition into (majority, minority): the minority subset holds exactly the
/// rows labelled minority_label, the majority subset pools everything else.
/// Row order is preserved within each subset.
std::pair<Dataset, Dataset> split_by_class(const Dataset& data, int minority_label);

/// Column-wise min/max over a (normalized) minority subset.
FeatureBounds feature_bounds(const Dataset& minority_norm);

/// Sorted distinct class ids.
std::vector<int> class_ids(const Dataset& data);

/// Instance count per class id.
std::map<int, std::size_t> class_counts(const Dataset& data);

}  // namespace somm
