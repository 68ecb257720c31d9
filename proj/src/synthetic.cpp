#include "somm/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "somm/rng.hpp"

namespace somm {

namespace {

void push_point(Matrix& m, double x, double y) {
    m.append_row({x, y});
}

void gaussian_blob(Matrix& out, Rng& rng, std::size_t n,
                   double cx, double cy, double sigma) {
    for (std::size_t i = 0; i < n; ++i) {
        push_point(out, cx + sigma * rng.normal(), cy + sigma * rng.normal());
    }
}

// Equal-weight mixture of two isotropic gaussians; the component is chosen
// by a fair coin per point.
void gaussian_pair(Matrix& out, Rng& rng, std::size_t n,
                   double cx1, double cy1, double cx2, double cy2,
                   double sigma) {
    for (std::size_t i = 0; i < n; ++i) {
        const bool first = rng.uniform() < 0.5;
        const double cx = first ? cx1 : cx2;
        const double cy = first ? cy1 : cy2;
        push_point(out, cx + sigma * rng.normal(), cy + sigma * rng.normal());
    }
}

void uniform_disk(Matrix& out, Rng& rng, std::size_t n, double radius) {
    for (std::size_t i = 0; i < n; ++i) {
        const double r = radius * std::sqrt(rng.uniform());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        push_point(out, r * std::cos(theta), r * std::sin(theta));
    }
}

void crescent(Matrix& out, Rng& rng, std::size_t n,
              double mean_radius, double radius_sigma) {
    for (std::size_t i = 0; i < n; ++i) {
        const double angle = rng.uniform() * std::numbers::pi;
        const double r = mean_radius + radius_sigma * rng.normal();
        push_point(out, r * std::cos(angle), r * std::sin(angle));
    }
}

}  // namespace

std::optional<SyntheticFamily> parse_family(std::string_view name) {
    if (name == "sd1" || name == "SD1") return SyntheticFamily::SD1;
    if (name == "sd2" || name == "SD2") return SyntheticFamily::SD2;
    if (name == "sd3" || name == "SD3") return SyntheticFamily::SD3;
    if (name == "sd4" || name == "SD4") return SyntheticFamily::SD4;
    if (name == "sd5" || name == "SD5") return SyntheticFamily::SD5;
    if (name == "sd6" || name == "SD6") return SyntheticFamily::SD6;
    return std::nullopt;
}

const char* family_name(SyntheticFamily family) {
    switch (family) {
        case SyntheticFamily::SD1: return "sd1";
        case SyntheticFamily::SD2: return "sd2";
        case SyntheticFamily::SD3: return "sd3";
        case SyntheticFamily::SD4: return "sd4";
        case SyntheticFamily::SD5: return "sd5";
        case SyntheticFamily::SD6: return "sd6";
    }
    throw std::invalid_argument("unknown synthetic family");
}

Dataset generate(const SyntheticSpec& spec) {
    if (spec.n_majority == 0 || spec.n_minority == 0) {
        throw std::invalid_argument("synthetic datasets need at least one point per class");
    }

    // Independent streams so the minority draw does not shift when the
    // majority count changes.
    const Rng parent(spec.seed);
    Rng maj_rng = parent.child(0);
    Rng min_rng = parent.child(1);

    Matrix majority;
    Matrix minority;

    switch (spec.family) {
        case SyntheticFamily::SD1:
            gaussian_blob(majority, maj_rng, spec.n_majority, 0.0, 0.0, 1.0);
            gaussian_pair(minority, min_rng, spec.n_minority,
                          -2.5, 0.0, 2.5, 0.0, 0.45);
            break;
        case SyntheticFamily::SD2:
            gaussian_pair(majority, maj_rng, spec.n_majority,
                          -3.0, 0.0, 3.0, 0.0, 0.8);
            gaussian_blob(minority, min_rng, spec.n_minority, 0.0, 0.0, 0.6);
            break;
        case SyntheticFamily::SD3:
            gaussian_blob(majority, maj_rng, spec.n_majority, 0.0, 0.0, 1.0);
            gaussian_blob(minority, min_rng, spec.n_minority, 4.0, 4.0, 0.7);
            break;
        case SyntheticFamily::SD4:
            uniform_disk(majority, maj_rng, spec.n_majority, 3.0);
            gaussian_blob(minority, min_rng, spec.n_minority, 0.8, 0.8, 0.4);
            break;
        case SyntheticFamily::SD5:
            gaussian_blob(majority, maj_rng, spec.n_majority, 0.0, 0.0, 2.0);
            crescent(minority, min_rng, spec.n_minority, 1.5, 0.15);
            break;
        case SyntheticFamily::SD6:
            gaussian_blob(majority, maj_rng, spec.n_majority, 0.0, 0.0, 1.5);
            gaussian_blob(minority, min_rng, spec.n_minority, 0.0, 0.0, 0.4);
            break;
    }

    Dataset out;
    out.features = std::move(majority);
    out.features.append_rows(minority);
    out.labels.assign(spec.n_majority, 0);
    out.labels.insert(out.labels.end(), spec.n_minority, 1);
    out.feature_names = {"x", "y"};
    out.class_names = {{0, "0"}, {1, "1"}};
    return out;
}

}  // namespace somm
