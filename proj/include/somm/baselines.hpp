#pragma once

#include <cstdint>
#include <optional>

#include "somm/somm.hpp"

namespace somm {

struct SmoteConfig {
    int k = 5;                               // minority neighbors per base row
    std::optional<std::size_t> n_synthetic;  // empty = balance to majority size
    std::uint64_t seed = 0;
};

/// Duplicate n minority rows drawn uniformly with replacement.
SommOutput random_oversample(const Dataset& train, int minority_label,
                             std::size_t n, std::uint64_t seed);

/// Classic linear interpolation: base rows cycle round-robin through the
/// minority subset, the partner is drawn uniformly from the base row's k
/// nearest minority neighbors, and the synthetic lands uniformly on the
/// segment between them. Majority rows are never consulted.
SommOutput smote_oversample(const Dataset& train, int minority_label,
                            const SmoteConfig& config = {});

}  // namespace somm
