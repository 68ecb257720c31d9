#include "somm/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "somm/neighbors.hpp"
#include "somm/rng.hpp"

namespace somm {

SommOutput random_oversample(const Dataset& train, int minority_label,
                             std::size_t n, std::uint64_t seed) {
    auto [majority, minority] = split_by_class(train, minority_label);
    (void)majority;
    if (minority.size() == 0)
        throw std::invalid_argument("random_oversample: minority class is empty");

    Rng rng(seed);
    SommOutput out;
    out.assigned_label = minority_label;
    out.synthetic = Matrix(0, train.n_features());
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pick = rng.uniform_index(minority.size());
        out.synthetic.append_row(minority.features.row(pick));
    }
    out.attempts_used = n;
    return out;
}

SommOutput smote_oversample(const Dataset& train, int minority_label,
                            const SmoteConfig& config) {
    if (config.k < 1) throw std::invalid_argument("smote: k must be >= 1");
    auto [majority, minority] = split_by_class(train, minority_label);
    const std::size_t m = minority.size();
    if (m <= static_cast<std::size_t>(config.k))
        throw std::invalid_argument(
            "smote: minority count must exceed k (" + std::to_string(m) +
            " <= " + std::to_string(config.k) + ")");

    std::size_t n;
    if (config.n_synthetic) {
        n = *config.n_synthetic;
    } else {
        if (m >= majority.size())
            throw std::invalid_argument(
                "smote: auto count needs minority smaller than majority");
        n = majority.size() - m;
    }

    // k nearest minority neighbors of each minority row, self excluded,
    // distance ties broken by lower row index.
    std::vector<std::vector<std::size_t>> neighbor_table(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> dist(m);
        for (std::size_t j = 0; j < m; ++j)
            dist[j] = euclidean_distance(minority.features.row(i),
                                         minority.features.row(j));
        std::vector<std::size_t> order;
        order.reserve(m - 1);
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) order.push_back(j);
        std::partial_sort(order.begin(), order.begin() + config.k, order.end(),
                          [&](std::size_t a, std::size_t b) {
                              if (dist[a] != dist[b]) return dist[a] < dist[b];
                              return a < b;
                          });
        order.resize(config.k);
        neighbor_table[i] = std::move(order);
    }

    Rng rng(config.seed);
    SommOutput out;
    out.assigned_label = minority_label;
    out.synthetic = Matrix(0, train.n_features());
    std::vector<double> row(train.n_features());
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t base = i % m;
        const std::size_t partner =
            neighbor_table[base][rng.uniform_index(config.k)];
        const double gap = rng.uniform();
        const auto base_row = minority.features.row(base);
        const auto partner_row = minority.features.row(partner);
        for (std::size_t f = 0; f < row.size(); ++f)
            row[f] = base_row[f] + gap * (partner_row[f] - base_row[f]);
        out.synthetic.append_row(row);
    }
    out.attempts_used = n;
    return out;
}

}  // namespace somm
