#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "somm/dataset.hpp"

namespace somm {

/// Six 2-d benchmark geometries. Majority is labelled 0, minority 1.
///   SD1: unimodal majority splitting a two-cluster minority, small overlap
///   SD2: bi-modal majority with the minority between the modes
///   SD3: linearly separated classes
///   SD4: convex minority inside a uniform-disk majority
///   SD5: crescent minority inside a broad majority
///   SD6: minority sitting on the majority high-density core
enum class SyntheticFamily { SD1, SD2, SD3, SD4, SD5, SD6 };

std::optional<SyntheticFamily> parse_family(std::string_view name);
const char* family_name(SyntheticFamily family);

struct SyntheticSpec {
    SyntheticFamily family = SyntheticFamily::SD1;
    std::size_t n_majority = 100;
    std::size_t n_minority = 20;
    std::uint64_t seed = 0;
};

/// Deterministic per seed; exactly the requested counts, majority rows first.
Dataset generate(const SyntheticSpec& spec);

}  // namespace somm
