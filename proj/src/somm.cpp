#include "somm/somm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace somm {

namespace {

void check_config(const SommConfig& config) {
    if (config.k < 1)
        throw std::invalid_argument("somm: k must be >= 1");
    if (config.max_attempts_factor < 1)
        throw std::invalid_argument("somm: max_attempts_factor must be >= 1");
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

CandidateInstance generate_candidate(const FeatureBounds& bounds, Rng& rng) {
    CandidateInstance cand;
    cand.position.resize(bounds.size());
    for (std::size_t f = 0; f < bounds.size(); ++f)
        cand.position[f] = rng.uniform_in(bounds.lower[f], bounds.upper[f]);
    return cand;
}

CandidateAction classify_candidate(const NeighborSet& neighbors) {
    if (!neighbors.first_minority) return CandidateAction::Remove;
    if (*neighbors.first_minority == 0) return CandidateAction::Keep;
    return CandidateAction::Update;
}

std::optional<UpdateGeometry> compute_update_geometry(const CandidateInstance& candidate,
                                                      const NeighborSet& neighbors,
                                                      const Dataset& train_norm,
                                                      Rng& rng) {
    if (!neighbors.first_minority || *neighbors.first_minority < 1)
        throw std::invalid_argument(
            "compute_update_geometry: needs a minority neighbor preceded by "
            "majority neighbors");

    const int cut = *neighbors.first_minority;
    const std::size_t width = candidate.position.size();
    const auto minority_row = train_norm.features.row(neighbors.indices[cut]);

    UpdateGeometry geom;
    geom.minority_distance = neighbors.distances[cut];
    if (geom.minority_distance == 0.0) return std::nullopt;  // coincides with a minority point

    geom.direction.resize(width);
    for (std::size_t f = 0; f < width; ++f)
        geom.direction[f] =
            (minority_row[f] - candidate.position[f]) / geom.minority_distance;

    std::vector<double> offset(width);
    for (int j = 0; j < cut; ++j) {
        const auto majority_row = train_norm.features.row(neighbors.indices[j]);
        for (std::size_t f = 0; f < width; ++f)
            offset[f] = majority_row[f] - candidate.position[f];
        const double dist = neighbors.distances[j];
        const double cosine = dist > 0.0 ? dot(offset, geom.direction) / dist : 0.0;
        geom.majority_distances.push_back(dist);
        geom.cosines.push_back(cosine);
        geom.projected.push_back(dist * cosine);
    }
    geom.max_projected =
        *std::max_element(geom.projected.begin(), geom.projected.end());

    // Negative projections (neighbors behind the candidate) floor at zero; a
    // projection at or beyond the minority neighbor would empty the interval,
    // so the frontier caps just short of it.
    const double frontier =
        std::min(std::max(geom.max_projected, 0.0),
                 geom.minority_distance * (1.0 - 1e-6));
    geom.magnitude = rng.uniform_in_open(frontier, geom.minority_distance);
    return geom;
}

std::vector<double> apply_update(const CandidateInstance& candidate,
                                 const UpdateGeometry& geometry) {
    std::vector<double> updated(candidate.position.size());
    for (std::size_t f = 0; f < updated.size(); ++f)
        updated[f] = candidate.position[f] + geometry.direction[f] * geometry.magnitude;
    return updated;
}

SommOutput somm_oversample(const Dataset& train, int minority_label,
                           const SommConfig& config, const SommTraceFn& trace) {
    check_config(config);
    validate(train);

    auto [train_norm, params] = normalize(train);
    auto [majority_norm, minority_norm] = split_by_class(train_norm, minority_label);
    if (majority_norm.size() == 0)
        throw std::invalid_argument("somm: majority class is empty");

    std::size_t n_requested;
    if (config.n_synthetic) {
        n_requested = *config.n_synthetic;
    } else {
        if (minority_norm.size() >= majority_norm.size())
            throw std::invalid_argument(
                "somm: auto count needs minority smaller than majority");
        n_requested = majority_norm.size() - minority_norm.size();
    }

    const FeatureBounds bounds = feature_bounds(minority_norm);
    const int k = std::min<std::size_t>(config.k, train_norm.size());
    const std::size_t attempt_cap =
        n_requested * static_cast<std::size_t>(config.max_attempts_factor);

    const Rng parent(config.seed);
    SommOutput out;
    out.assigned_label = minority_label;
    Matrix retained_norm(0, 0);

    for (std::size_t attempt = 0;
         retained_norm.rows() < n_requested && attempt < attempt_cap; ++attempt) {
        Rng rng = parent.child(attempt);
        ++out.attempts_used;

        CandidateInstance cand = generate_candidate(bounds, rng);
        NeighborSet nn = k_nearest(cand.position, train_norm, minority_label, k);
        const CandidateAction action = classify_candidate(nn);

        SommTrace record;
        if (trace) {
            record.candidate = cand;
            record.neighbors = nn;
            record.action = action;
        }

        switch (action) {
        case CandidateAction::Remove:
            cand.status = CandidateStatus::Removed;
            ++out.removed_count;
            break;
        case CandidateAction::Keep:
            cand.status = CandidateStatus::Kept;
            retained_norm.append_row(cand.position);
            if (trace) record.final_position = cand.position;
            break;
        case CandidateAction::Update: {
            auto geom = compute_update_geometry(cand, nn, train_norm, rng);
            std::vector<double> position;
            if (geom) {
                cand.status = CandidateStatus::Updated;
                position = apply_update(cand, *geom);
            } else {
                // Zero distance to the minority neighbor: already a minority
                // point, retain as generated.
                cand.status = CandidateStatus::Kept;
                position = cand.position;
            }
            retained_norm.append_row(position);
            if (trace) {
                record.geometry = std::move(geom);
                record.final_position = std::move(position);
            }
            break;
        }
        }

        if (trace) {
            record.candidate.status = cand.status;
            trace(record);
        }
    }

    out.synthetic = retained_norm.rows() > 0
                        ? denormalize(retained_norm, params)
                        : Matrix(0, train.n_features());
    if (retained_norm.rows() < n_requested) {
        throw PartialResultError(
            "somm: candidate cap of " + std::to_string(attempt_cap) +
                " reached with " + std::to_string(retained_norm.rows()) + " of " +
                std::to_string(n_requested) + " synthetic instances retained",
            std::move(out));
    }
    return out;
}

Dataset somm_multiclass(const Dataset& train, const SommConfig& config) {
    check_config(config);
    validate(train);
    const auto counts = class_counts(train);
    if (counts.size() < 2)
        throw std::invalid_argument("somm_multiclass: needs at least 2 classes");

    std::size_t max_count = 0;
    for (const auto& [id, count] : counts) max_count = std::max(max_count, count);

    Dataset balanced = train;
    const Rng parent(config.seed);
    for (const auto& [id, count] : counts) {  // std::map iterates ids ascending
        if (count == max_count) continue;
        SommConfig class_config = config;
        class_config.n_synthetic = max_count - count;
        class_config.seed = parent.child(static_cast<std::uint64_t>(id)).seed();
        try {
            SommOutput out = somm_oversample(train, id, class_config);
            balanced.features.append_rows(out.synthetic);
            balanced.labels.insert(balanced.labels.end(), out.synthetic.rows(), id);
        } catch (const PartialResultError& e) {
            throw PartialResultError(
                "class " + std::to_string(id) + ": " + e.what(), e.partial);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("class " + std::to_string(id) + ": " + e.what());
        }
    }
    return balanced;
}

}  // namespace somm
