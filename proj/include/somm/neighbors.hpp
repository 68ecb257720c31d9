#pragma once

#include <optional>
#include <span>
#include <vector>

#include "somm/dataset.hpp"

namespace somm {

/// The k nearest training rows of a query point, ascending by distance with
/// ties broken by lower row index. first_minority is the position of the
/// closest minority-class neighbor in the ordered lists, if any.
struct NeighborSet {
    std::vector<int> indices;
    std::vector<double> distances;
    std::vector<bool> is_minority;
    std::optional<int> first_minority;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Exact brute-force k-NN over the full training set (both classes).
NeighborSet k_nearest(std::span<const double> query, const Dataset& train_norm,
                      int minority_label, int k);

}  // namespace somm
