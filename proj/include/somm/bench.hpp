#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "somm/classifiers.hpp"
#include "somm/dataset.hpp"
#include "somm/synthetic.hpp"

namespace somm::bench {

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SamplerKind { None, Random, Smote, Somm };
enum class TaskKind { Diversity, Classification };

std::optional<SamplerKind> parse_sampler(std::string_view name);
const char* sampler_name(SamplerKind kind);
std::optional<ClassifierKind> parse_classifier(std::string_view name);
const char* classifier_name(ClassifierKind kind);

/// How far to thin the minority class before resampling.
///   Fraction: keep enough rows for the minority to be this share of the
///             training set, with a floor of 8 rows at the 1% level and 2
///             otherwise.
///   Absolute: keep exactly this many rows.
///   AsIs:     leave the training set alone.
struct ImbalanceLevel {
    enum class Kind { Fraction, Absolute, AsIs };
    Kind kind = Kind::AsIs;
    double fraction = 0.0;
    std::size_t count = 0;

    static ImbalanceLevel as_is() { return {}; }
    static ImbalanceLevel from_fraction(double f);
    static ImbalanceLevel from_count(std::size_t n);
};

struct ExperimentSpec {
    TaskKind task = TaskKind::Classification;
    std::optional<std::string> csv_path;
    std::optional<SyntheticFamily> family;
    std::vector<SamplerKind> samplers;
    std::vector<ClassifierKind> classifiers;
    ImbalanceLevel imbalance_level;
    int repeats = 30;
    double split = 0.75;
    int k_somm = 15;
    int k_smote = 5;
    std::uint64_t base_seed = 0;

    // synthetic-source sizes: classification draws one fixed dataset,
    // diversity redraws 100 majority plus a minority reference pool
    // every repeat
    std::size_t synthetic_majority = 1000;
    std::size_t synthetic_minority = 100;
    std::size_t diversity_pool = 1000;
    int covdiv_cells = 10;

    // non-empty k_sweep turns a classification run into a k study over
    // `families` (all six when empty)
    std::vector<int> k_sweep;
    std::vector<SyntheticFamily> families;
};

/// Parses snake_case JSON keys, fills defaults, rejects unknown keys and
/// out-of-range values. `imbalance_level` accepts a number (< 1 reads as a
/// fraction, an integer >= 1 as an absolute count) or the string "as_is".
ExperimentSpec parse_spec(const nlohmann::json& j, TaskKind task);
nlohmann::json spec_to_json(const ExperimentSpec& spec);

struct RepeatRecord {
    int repeat = 0;
    std::string sampler;
    std::string classifier;  // empty for diversity rows
    std::string metric;
    double value = 0.0;  // NaN when the sampler or metric failed
};

struct AggregateRecord {
    std::string sampler;
    std::string classifier;
    std::string metric;
    double mean = 0.0;
    double sd = 0.0;
    int n = 0;  // values that were not NaN
};

struct BestClassifierRecord {
    std::string sampler;
    std::string classifier;
    double mean = 0.0;
    double sd = 0.0;
};

struct SignificanceRecord {
    std::string metric;
    std::string classifier;  // empty for diversity
    std::string sampler_a;
    std::string sampler_b;
    double u = 0.0;
    double p_value = 1.0;
};

struct RunResult {
    std::vector<RepeatRecord> repeats;
    std::vector<AggregateRecord> aggregates;
    std::vector<BestClassifierRecord> best_classifier;
    std::vector<SignificanceRecord> significance;
    std::vector<std::uint64_t> repeat_seeds;
};

/// Test-hygiene instrumentation. Callbacks may fire from worker threads
/// (serialized internally). `provenance` holds one source-row index per
/// training row handed to fit, -1 for synthetic rows.
struct RunObserver {
    std::function<void(int repeat, const std::vector<int>& train_rows,
                       const std::vector<int>& test_rows)>
        on_split;
    std::function<void(int repeat, const std::string& sampler,
                       const std::string& classifier,
                       const std::vector<int>& provenance)>
        on_fit;
};

/// Proportional per-class split; every class lands on both sides.
std::pair<std::vector<int>, std::vector<int>> stratified_split_indices(
    const std::vector<int>& labels, double train_fraction, std::uint64_t seed);
std::pair<Dataset, Dataset> stratified_split(const Dataset& data,
                                             double train_fraction,
                                             std::uint64_t seed);

Dataset take_rows(const Dataset& data, const std::vector<int>& rows);

/// Positions within `labels` to keep, ascending; majority rows always stay.
std::vector<int> downsample_minority_keep(const std::vector<int>& labels,
                                          int minority_label,
                                          ImbalanceLevel level,
                                          std::uint64_t seed);
Dataset downsample_minority(const Dataset& train, int minority_label,
                            ImbalanceLevel level, std::uint64_t seed);

struct BalancedTrain {
    Dataset data;                // train rows first, synthetics appended
    std::size_t n_synthetic = 0;
};

/// Brings every class up to the size of the largest one. Deficit classes
/// are resampled in ascending label order, each against the original train
/// rows, with a child seed per class.
BalancedTrain balance_with_sampler(const Dataset& train, SamplerKind kind,
                                   int k_somm, int k_smote,
                                   std::uint64_t seed);

RunResult run_diversity(const ExperimentSpec& spec);
RunResult run_classification(const ExperimentSpec& spec,
                             const RunObserver* observer = nullptr);

struct KSweepRow {
    std::string family;
    int k = 0;
    std::string sampler;
    std::string classifier;
    std::string metric;
    double mean = 0.0;
    double sd = 0.0;
};

struct KSweepWinner {
    std::string family;
    int best_k = 0;
    double mean = 0.0;
};

struct KSweepResult {
    std::vector<KSweepRow> rows;
    std::vector<KSweepWinner> winners;
};

/// One classification run per (family, k); the winner per family is the k
/// with the highest mean metric for the somm sampler's best classifier.
KSweepResult run_k_sweep(const ExperimentSpec& spec);

/// Writes repeats.csv, aggregates.csv, significance.csv, manifest.json and,
/// for classification, best_classifier.csv into `out_dir`.
void write_results(const RunResult& result, const ExperimentSpec& spec,
                   const std::string& out_dir);
/// Writes ksweep.csv, ksweep_winners.csv and manifest.json.
void write_k_sweep(const KSweepResult& result, const ExperimentSpec& spec,
                   const std::string& out_dir);

}  // namespace somm::bench
