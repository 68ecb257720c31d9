#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "somm/dataset.hpp"
#include "somm/neighbors.hpp"
#include "somm/rng.hpp"

namespace somm {

struct SommConfig {
    int k = 15;                          // neighbors examined per candidate
    std::optional<std::size_t> n_synthetic;  // empty = balance to majority size
    int max_attempts_factor = 50;        // total candidate cap = n * factor
    std::uint64_t seed = 0;
};

enum class CandidateStatus { Generated, Removed, Kept, Updated };

/// A random draw from the minority bounding box, in normalized space.
struct CandidateInstance {
    std::vector<double> position;
    CandidateStatus status = CandidateStatus::Generated;
};

enum class CandidateAction { Remove, Keep, Update };

/// Geometry of one candidate update: the unit direction toward the closest
/// minority neighbor, the scalar projections of the closer majority neighbors
/// onto it, and the movement magnitude drawn past the projection frontier.
struct UpdateGeometry {
    std::vector<double> direction;           // unit vector toward the minority neighbor
    double minority_distance = 0.0;          // distance to that neighbor
    std::vector<double> majority_distances;  // per preceding majority neighbor
    std::vector<double> cosines;             // angle cosine per majority neighbor
    std::vector<double> projected;           // signed projected distance, elementwise
    double max_projected = 0.0;
    double magnitude = 0.0;                  // drawn from (clamped frontier, minority_distance)
};

struct SommOutput {
    Matrix synthetic;          // synthetic rows in the original feature space
    int assigned_label = 0;
    std::size_t attempts_used = 0;   // all candidates generated, removed included
    std::size_t removed_count = 0;
};

/// Raised when the candidate cap is reached before the requested count; the
/// synthetics produced so far ride along.
class PartialResultError : public std::runtime_error {
public:
    PartialResultError(std::string message, SommOutput produced)
        : std::runtime_error(std::move(message)), partial(std::move(produced)) {}

    SommOutput partial;
};

/// Per-candidate record emitted to trace callbacks, all in normalized space.
struct SommTrace {
    CandidateInstance candidate;
    NeighborSet neighbors;
    CandidateAction action = CandidateAction::Remove;
    std::optional<UpdateGeometry> geometry;
    std::vector<double> final_position;  // empty when removed
};

using SommTraceFn = std::function<void(const SommTrace&)>;

/// One coordinate per feature, uniform within the box.
CandidateInstance generate_candidate(const FeatureBounds& bounds, Rng& rng);

/// Neighborhood rules: Remove when no minority neighbor is present, Keep when
/// the closest neighbor is minority, Update otherwise.
CandidateAction classify_candidate(const NeighborSet& neighbors);

/// Projection geometry for an Update decision. The magnitude is drawn
/// uniformly from the open interval between the clamped majority projection
/// frontier and the minority-neighbor distance. Returns empty when the
/// candidate coincides with its minority neighbor (kept unchanged).
std::optional<UpdateGeometry> compute_update_geometry(const CandidateInstance& candidate,
                                                      const NeighborSet& neighbors,
                                                      const Dataset& train_norm,
                                                      Rng& rng);

/// Move the candidate along the unit direction by the drawn magnitude.
std::vector<double> apply_update(const CandidateInstance& candidate,
                                 const UpdateGeometry& geometry);

/// Full pipeline: normalize, split, bound, then generate/filter/update
/// candidates until the requested count is retained, and de-normalize.
/// Deterministic for a fixed config; candidate i draws from rng.child(i).
SommOutput somm_oversample(const Dataset& train, int minority_label,
                           const SommConfig& config = {},
                           const SommTraceFn& trace = nullptr);

/// Balance every class up to the largest class count, treating each deficit
/// class in ascending id order as the minority against the pooled rest.
/// Original rows are preserved verbatim, synthetics appended.
Dataset somm_multiclass(const Dataset& train, const SommConfig& config = {});

}  // namespace somm
