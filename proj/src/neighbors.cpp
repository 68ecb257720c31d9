#include "somm/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace somm {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("euclidean_distance: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

NeighborSet k_nearest(std::span<const double> query, const Dataset& train_norm,
                      int minority_label, int k) {
    if (k < 1) throw std::invalid_argument("k_nearest: k must be >= 1");
    const std::size_t n = train_norm.size();
    if (static_cast<std::size_t>(k) > n)
        throw std::invalid_argument("k_nearest: k exceeds training size");
    if (query.size() != train_norm.n_features())
        throw std::invalid_argument("k_nearest: query width mismatch");

    std::vector<double> dist(n);
    for (std::size_t r = 0; r < n; ++r)
        dist[r] = euclidean_distance(query, train_norm.features.row(r));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](int a, int b) {
                          if (dist[a] != dist[b]) return dist[a] < dist[b];
                          return a < b;
                      });

    NeighborSet nn;
    nn.indices.reserve(k);
    nn.distances.reserve(k);
    nn.is_minority.reserve(k);
    for (int i = 0; i < k; ++i) {
        const int row = order[i];
        nn.indices.push_back(row);
        nn.distances.push_back(dist[row]);
        const bool minority = train_norm.labels[row] == minority_label;
        nn.is_minority.push_back(minority);
        if (minority && !nn.first_minority) nn.first_minority = i;
    }
    return nn;
}

}  // namespace somm
