#include "somm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace somm {

ConfusionMatrix confusion(const std::vector<int>& true_labels,
                          const std::vector<int>& pred_labels, std::size_t n_classes) {
    if (true_labels.size() != pred_labels.size())
        throw std::invalid_argument("confusion: label vectors differ in length");
    ConfusionMatrix cm(n_classes);
    for (std::size_t i = 0; i < true_labels.size(); ++i) {
        const int t = true_labels[i];
        const int p = pred_labels[i];
        if (t < 0 || p < 0 || static_cast<std::size_t>(t) >= n_classes ||
            static_cast<std::size_t>(p) >= n_classes)
            throw std::invalid_argument("confusion: label out of range at index " +
                                        std::to_string(i));
        ++cm.at(t, p);
    }
    return cm;
}

std::vector<double> per_class_recall(const ConfusionMatrix& cm) {
    std::vector<double> recalls(cm.n_classes);
    for (std::size_t t = 0; t < cm.n_classes; ++t) {
        std::int64_t row = 0;
        for (std::size_t p = 0; p < cm.n_classes; ++p) row += cm.at(t, p);
        if (row == 0)
            throw UndefinedMetricError("class " + std::to_string(t) +
                                       " has no true instances");
        recalls[t] = static_cast<double>(cm.at(t, t)) / static_cast<double>(row);
    }
    return recalls;
}

double g_mean(const ConfusionMatrix& cm) {
    if (cm.n_classes != 2)
        throw std::invalid_argument("g_mean: binary confusion matrix required");
    const auto recalls = per_class_recall(cm);
    return std::sqrt(recalls[0] * recalls[1]);
}

double mg(const ConfusionMatrix& cm) {
    if (cm.n_classes < 2)
        throw std::invalid_argument("mg: need at least 2 classes");
    const auto recalls = per_class_recall(cm);
    double product = 1.0;
    for (double r : recalls) product *= r;
    return std::pow(product, 1.0 / static_cast<double>(cm.n_classes));
}

ClassDistribution::ClassDistribution(std::vector<std::int64_t> counts)
    : counts_(std::move(counts)) {
    if (counts_.empty())
        throw std::invalid_argument("ClassDistribution: empty counts");
    for (auto c : counts_)
        if (c <= 0)
            throw std::invalid_argument("ClassDistribution: counts must be positive");
    std::sort(counts_.begin(), counts_.end(), std::greater<>());
}

double imbalance_ratio(const ClassDistribution& dist) {
    const auto& n = dist.counts();
    double total = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i)
        for (std::size_t j = i + 1; j < n.size(); ++j)
            total += static_cast<double>(n[i]) / static_cast<double>(n[j]) - 1.0;
    return total;
}

CovDivGrid make_covdiv_grid(const Matrix& reference_minority, int cells_per_dim) {
    if (reference_minority.rows() == 0)
        throw std::invalid_argument("covdiv: empty reference minority set");
    if (cells_per_dim < 1)
        throw std::invalid_argument("covdiv: cells_per_dim must be >= 1");

    const std::size_t d = reference_minority.cols();
    CovDivGrid grid;
    grid.cells_per_dim = cells_per_dim;
    grid.lower.assign(d, std::numeric_limits<double>::infinity());
    grid.upper.assign(d, -std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r < reference_minority.rows(); ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const double v = reference_minority.at(r, c);
            grid.lower[c] = std::min(grid.lower[c], v);
            grid.upper[c] = std::max(grid.upper[c], v);
        }
    }
    for (std::size_t r = 0; r < reference_minority.rows(); ++r) {
        auto cell = grid_cell(grid, reference_minority.row(r));
        grid.minority_cells.insert(std::move(*cell));
    }
    return grid;
}

std::optional<std::vector<int>> grid_cell(const CovDivGrid& grid,
                                          std::span<const double> point) {
    std::vector<int> cell(point.size());
    for (std::size_t c = 0; c < point.size(); ++c) {
        const double lo = grid.lower[c];
        const double hi = grid.upper[c];
        if (point[c] < lo || point[c] > hi) return std::nullopt;
        if (hi == lo) {
            cell[c] = 0;
            continue;
        }
        const double t = (point[c] - lo) / (hi - lo);
        cell[c] = std::min(static_cast<int>(t * grid.cells_per_dim),
                           grid.cells_per_dim - 1);
    }
    return cell;
}

CovDivReport covdiv(const Matrix& reference_minority, const Matrix& synthetic,
                    int cells_per_dim) {
    if (synthetic.rows() > 0 && synthetic.cols() != reference_minority.cols())
        throw std::invalid_argument("covdiv: dimension mismatch");
    const CovDivGrid grid = make_covdiv_grid(reference_minority, cells_per_dim);

    std::set<std::vector<int>> covered;
    for (std::size_t r = 0; r < synthetic.rows(); ++r) {
        auto cell = grid_cell(grid, synthetic.row(r));
        if (cell && grid.minority_cells.count(*cell)) covered.insert(std::move(*cell));
    }

    CovDivReport report;
    report.total_cells = grid.minority_cells.size();
    report.ncc = report.total_cells - covered.size();
    report.covdiv = 1.0 - static_cast<double>(report.ncc) /
                              static_cast<double>(report.total_cells);
    return report;
}

MannWhitneyResult mann_whitney_u(std::span<const double> sample_a,
                                 std::span<const double> sample_b) {
    if (sample_a.empty() || sample_b.empty())
        throw std::invalid_argument("mann_whitney_u: empty sample");

    const std::size_t na = sample_a.size();
    const std::size_t nb = sample_b.size();
    const std::size_t n = na + nb;

    struct Entry { double value; bool from_a; };
    std::vector<Entry> pooled;
    pooled.reserve(n);
    for (double v : sample_a) pooled.push_back({v, true});
    for (double v : sample_b) pooled.push_back({v, false});
    std::sort(pooled.begin(), pooled.end(),
              [](const Entry& x, const Entry& y) { return x.value < y.value; });

    // Midranks plus the tie term sum(t^3 - t) per tie group.
    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && pooled[j].value == pooled[i].value) ++j;
        const double t = static_cast<double>(j - i);
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t m = i; m < j; ++m)
            if (pooled[m].from_a) rank_sum_a += midrank;
        tie_term += t * t * t - t;
        i = j;
    }

    MannWhitneyResult result;
    result.u = rank_sum_a - static_cast<double>(na) * (static_cast<double>(na) + 1.0) / 2.0;

    const double mean_u = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
    const double nn = static_cast<double>(n);
    const double variance =
        static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
        ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
    if (variance <= 0.0) {
        result.p_value = 1.0;  // every value tied across both samples
        return result;
    }
    const double z =
        std::max(std::abs(result.u - mean_u) - 0.5, 0.0) / std::sqrt(variance);
    result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return result;
}

}  // namespace somm
