#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "somm/matrix.hpp"

namespace somm {

/// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
    std::size_t n_classes = 0;
    std::vector<std::int64_t> counts;

    explicit ConfusionMatrix(std::size_t classes = 0)
        : n_classes(classes), counts(classes * classes, 0) {}

    std::int64_t& at(std::size_t t, std::size_t p) { return counts[t * n_classes + p]; }
    std::int64_t at(std::size_t t, std::size_t p) const { return counts[t * n_classes + p]; }

    std::int64_t total() const {
        std::int64_t sum = 0;
        for (auto c : counts) sum += c;
        return sum;
    }
};

/// A metric is requested for a class with no true instances.
class UndefinedMetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ConfusionMatrix confusion(const std::vector<int>& true_labels,
                          const std::vector<int>& pred_labels, std::size_t n_classes);

/// Per-class recall (diagonal over row sum); throws UndefinedMetricError on an
/// empty class.
std::vector<double> per_class_recall(const ConfusionMatrix& cm);

/// Geometric mean of the two class recalls; binary matrices only.
double g_mean(const ConfusionMatrix& cm);

/// Geometric mean of per-class recalls; coincides with g_mean when C = 2.
double mg(const ConfusionMatrix& cm);

/// Per-class counts held in descending order.
class ClassDistribution {
public:
    explicit ClassDistribution(std::vector<std::int64_t> counts);
    const std::vector<std::int64_t>& counts() const { return counts_; }

private:
    std::vector<std::int64_t> counts_;
};

/// Sum over ordered pairs of (N_i / N_j - 1); zero when balanced.
double imbalance_ratio(const ClassDistribution& dist);

/// Cell grid spanned by the reference minority instances; only cells occupied
/// by a reference point participate in coverage.
struct CovDivGrid {
    std::vector<double> lower;
    std::vector<double> upper;
    int cells_per_dim = 10;
    std::set<std::vector<int>> minority_cells;
};

struct CovDivReport {
    std::size_t ncc = 0;         // minority cells with no synthetic instance
    std::size_t total_cells = 0;  // occupied minority cells
    double covdiv = 0.0;          // 1 - ncc / total_cells
};

CovDivGrid make_covdiv_grid(const Matrix& reference_minority, int cells_per_dim);

/// Cell coordinates of a point, or empty when it falls outside the grid.
std::optional<std::vector<int>> grid_cell(const CovDivGrid& grid,
                                          std::span<const double> point);

/// Coverage diversity of synthetic instances over the reference minority
/// space. Synthetics outside the grid or in cells no reference point occupies
/// are ignored.
CovDivReport covdiv(const Matrix& reference_minority, const Matrix& synthetic,
                    int cells_per_dim = 10);

struct MannWhitneyResult {
    double u = 0.0;        // for the first sample (wins over b, ties half)
    double p_value = 1.0;  // two-sided, normal approximation
};

/// Rank-sum test with midrank ties, tie-corrected variance and continuity
/// correction. Degenerate all-equal input yields p = 1.
MannWhitneyResult mann_whitney_u(std::span<const double> sample_a,
                                 std::span<const double> sample_b);

}  // namespace somm
