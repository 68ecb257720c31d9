#include "somm/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "somm/baselines.hpp"
#include "somm/csv.hpp"
#include "somm/metrics.hpp"
#include "somm/rng.hpp"
#include "somm/somm.hpp"
#include "somm/version.hpp"

namespace somm::bench {

namespace {

// per-repeat stage streams (D-22 style): one child per pipeline stage so a
// change in one stage never shifts the draws of another
constexpr std::uint64_t kStageData = 0;        // generation or split
constexpr std::uint64_t kStageDownsample = 1;
constexpr std::uint64_t kStageSampler = 2;     // + sampler id

constexpr std::size_t kDiversityMajority = 100;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

void shuffle_indices(std::vector<int>& idx, Rng& rng) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        const std::size_t j = rng.uniform_index(i);
        std::swap(idx[i - 1], idx[j]);
    }
}

int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const char* env = std::getenv("SOMM_THREADS");
    if (!env || !*env) return static_cast<int>(hw);
    int value = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
    if (ec != std::errc() || ptr != env + std::strlen(env) || value < 0)
        return static_cast<int>(hw);
    return value == 0 ? static_cast<int>(hw) : value;
}

// Runs body(0..n-1) across the SOMM_THREADS budget; the first exception wins
// and is rethrown after all workers drain.
void run_parallel(int n, const std::function<void(int)>& body) {
    const int threads = std::min(thread_budget(), n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (error) return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

Dataset load_source(const ExperimentSpec& spec) {
    if (spec.csv_path) return read_csv(*spec.csv_path);
    SyntheticSpec gen;
    gen.family = *spec.family;
    gen.n_majority = spec.synthetic_majority;
    gen.n_minority = spec.synthetic_minority;
    gen.seed = spec.base_seed;
    return generate(gen);
}

int least_frequent_class(const Dataset& data) {
    const auto counts = class_counts(data);
    int label = counts.begin()->first;
    std::size_t best = counts.begin()->second;
    for (const auto& [id, count] : counts) {
        if (count < best) {
            best = count;
            label = id;
        }
    }
    return label;
}

std::vector<AggregateRecord> aggregate_records(
    const std::vector<RepeatRecord>& rows) {
    struct Group {
        AggregateRecord rec;
        std::vector<double> values;
    };
    std::vector<Group> groups;
    std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
    for (const auto& row : rows) {
        const auto key = std::make_tuple(row.sampler, row.classifier, row.metric);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, groups.size()).first;
            groups.push_back({{row.sampler, row.classifier, row.metric}, {}});
        }
        if (!std::isnan(row.value)) groups[it->second].values.push_back(row.value);
    }

    std::vector<AggregateRecord> out;
    out.reserve(groups.size());
    for (auto& g : groups) {
        auto& rec = g.rec;
        rec.n = static_cast<int>(g.values.size());
        if (rec.n == 0) {
            rec.mean = nan_value();
            rec.sd = nan_value();
        } else {
            double sum = 0.0;
            for (double v : g.values) sum += v;
            rec.mean = sum / rec.n;
            double ss = 0.0;
            for (double v : g.values) ss += (v - rec.mean) * (v - rec.mean);
            rec.sd = rec.n > 1 ? std::sqrt(ss / (rec.n - 1)) : 0.0;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<double> values_for(const std::vector<RepeatRecord>& rows,
                               const std::string& sampler,
                               const std::string& classifier) {
    std::vector<double> out;
    for (const auto& row : rows) {
        if (row.sampler == sampler && row.classifier == classifier &&
            !std::isnan(row.value))
            out.push_back(row.value);
    }
    return out;
}

// somm against each other sampler, one row per classifier context
std::vector<SignificanceRecord> somm_significance(
    const ExperimentSpec& spec, const std::vector<RepeatRecord>& rows,
    const std::string& metric, const std::vector<std::string>& classifiers) {
    std::vector<SignificanceRecord> out;
    const bool has_somm =
        std::find(spec.samplers.begin(), spec.samplers.end(),
                  SamplerKind::Somm) != spec.samplers.end();
    if (!has_somm) return out;
    for (const auto& classifier : classifiers) {
        const auto somm_values = values_for(rows, "somm", classifier);
        for (SamplerKind other : spec.samplers) {
            if (other == SamplerKind::Somm) continue;
            const auto other_values =
                values_for(rows, sampler_name(other), classifier);
            SignificanceRecord rec;
            rec.metric = metric;
            rec.classifier = classifier;
            rec.sampler_a = "somm";
            rec.sampler_b = sampler_name(other);
            if (somm_values.empty() || other_values.empty()) {
                rec.u = nan_value();
                rec.p_value = nan_value();
            } else {
                const auto mw = mann_whitney_u(somm_values, other_values);
                rec.u = mw.u;
                rec.p_value = mw.p_value;
            }
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<BestClassifierRecord> best_per_sampler(
    const ExperimentSpec& spec, const std::vector<AggregateRecord>& aggregates) {
    std::vector<BestClassifierRecord> out;
    for (SamplerKind s : spec.samplers) {
        BestClassifierRecord rec;
        rec.sampler = sampler_name(s);
        rec.classifier = "";
        rec.mean = nan_value();
        rec.sd = nan_value();
        for (const auto& agg : aggregates) {
            if (agg.sampler != rec.sampler || std::isnan(agg.mean)) continue;
            if (std::isnan(rec.mean) || agg.mean > rec.mean) {
                rec.classifier = agg.classifier;
                rec.mean = agg.mean;
                rec.sd = agg.sd;
            }
        }
        out.push_back(std::move(rec));
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_manifest(const ExperimentSpec& spec,
                    const std::vector<std::uint64_t>& repeat_seeds,
                    const std::filesystem::path& path) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["spec"] = spec_to_json(spec);
    j["base_seed"] = spec.base_seed;
    j["repeat_seeds"] = repeat_seeds;
    write_file(path, j.dump(2) + "\n");
}

}  // namespace

std::optional<SamplerKind> parse_sampler(std::string_view name) {
    if (name == "none") return SamplerKind::None;
    if (name == "random") return SamplerKind::Random;
    if (name == "smote") return SamplerKind::Smote;
    if (name == "somm") return SamplerKind::Somm;
    return std::nullopt;
}

const char* sampler_name(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::None: return "none";
        case SamplerKind::Random: return "random";
        case SamplerKind::Smote: return "smote";
        case SamplerKind::Somm: return "somm";
    }
    throw std::invalid_argument("unknown sampler");
}

std::optional<ClassifierKind> parse_classifier(std::string_view name) {
    if (name == "knn") return ClassifierKind::Knn;
    if (name == "logreg") return ClassifierKind::LogReg;
    if (name == "gnb") return ClassifierKind::Gnb;
    return std::nullopt;
}

const char* classifier_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::Knn: return "knn";
        case ClassifierKind::LogReg: return "logreg";
        case ClassifierKind::Gnb: return "gnb";
    }
    throw std::invalid_argument("unknown classifier");
}

ImbalanceLevel ImbalanceLevel::from_fraction(double f) {
    if (!(f > 0.0 && f <= 0.5))
        throw SpecError("imbalance fraction must lie in (0, 0.5]");
    ImbalanceLevel level;
    level.kind = Kind::Fraction;
    level.fraction = f;
    return level;
}

ImbalanceLevel ImbalanceLevel::from_count(std::size_t n) {
    if (n < 1) throw SpecError("absolute imbalance level must be at least 1");
    ImbalanceLevel level;
    level.kind = Kind::Absolute;
    level.count = n;
    return level;
}

ExperimentSpec parse_spec(const nlohmann::json& j, TaskKind task) {
    if (!j.is_object()) throw SpecError("experiment spec must be a JSON object");

    static const std::set<std::string> known = {
        "data_source", "task", "samplers", "classifiers", "imbalance_level",
        "repeats", "split", "k_somm", "k_smote", "base_seed",
        "synthetic_majority", "synthetic_minority", "diversity_pool",
        "covdiv_cells", "k_sweep", "families"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key()))
            throw SpecError("unknown key '" + it.key() + "' in experiment spec");
    }

    ExperimentSpec spec;
    spec.task = task;

    if (j.contains("task")) {
        const auto& t = j.at("task");
        if (!t.is_string()) throw SpecError("'task' must be a string");
        const std::string name = t.get<std::string>();
        const std::string expected =
            task == TaskKind::Diversity ? "diversity" : "classification";
        if (name != expected)
            throw SpecError("spec task '" + name + "' does not match the '" +
                            expected + "' run");
    }

    if (!j.contains("data_source"))
        throw SpecError("experiment spec needs a 'data_source'");
    const auto& src = j.at("data_source");
    if (!src.is_object() || src.size() != 1 ||
        !(src.contains("csv") || src.contains("synthetic")))
        throw SpecError("'data_source' must be {\"csv\": path} or {\"synthetic\": family}");
    if (src.contains("csv")) {
        if (!src.at("csv").is_string()) throw SpecError("'data_source.csv' must be a string");
        spec.csv_path = src.at("csv").get<std::string>();
    } else {
        if (!src.at("synthetic").is_string())
            throw SpecError("'data_source.synthetic' must be a string");
        const std::string name = src.at("synthetic").get<std::string>();
        const auto family = parse_family(name);
        if (!family) throw SpecError("unknown synthetic family '" + name + "'");
        spec.family = *family;
    }

    if (j.contains("samplers")) {
        const auto& arr = j.at("samplers");
        if (!arr.is_array() || arr.empty())
            throw SpecError("'samplers' must be a non-empty array");
        for (const auto& item : arr) {
            if (!item.is_string()) throw SpecError("'samplers' entries must be strings");
            const auto kind = parse_sampler(item.get<std::string>());
            if (!kind)
                throw SpecError("unknown sampler '" + item.get<std::string>() + "'");
            if (std::find(spec.samplers.begin(), spec.samplers.end(), *kind) !=
                spec.samplers.end())
                throw SpecError("duplicate sampler '" + item.get<std::string>() + "'");
            spec.samplers.push_back(*kind);
        }
    } else if (task == TaskKind::Diversity) {
        spec.samplers = {SamplerKind::Somm, SamplerKind::Smote, SamplerKind::Random};
    } else {
        spec.samplers = {SamplerKind::None, SamplerKind::Random,
                         SamplerKind::Smote, SamplerKind::Somm};
    }

    if (j.contains("classifiers")) {
        const auto& arr = j.at("classifiers");
        if (!arr.is_array() || arr.empty())
            throw SpecError("'classifiers' must be a non-empty array");
        for (const auto& item : arr) {
            if (!item.is_string()) throw SpecError("'classifiers' entries must be strings");
            const auto kind = parse_classifier(item.get<std::string>());
            if (!kind)
                throw SpecError("unknown classifier '" + item.get<std::string>() + "'");
            if (std::find(spec.classifiers.begin(), spec.classifiers.end(),
                          *kind) != spec.classifiers.end())
                throw SpecError("duplicate classifier '" + item.get<std::string>() + "'");
            spec.classifiers.push_back(*kind);
        }
    } else {
        spec.classifiers = {ClassifierKind::Knn, ClassifierKind::LogReg,
                            ClassifierKind::Gnb};
    }

    if (j.contains("imbalance_level")) {
        const auto& level = j.at("imbalance_level");
        if (level.is_string()) {
            if (level.get<std::string>() != "as_is")
                throw SpecError("'imbalance_level' string form must be \"as_is\"");
            spec.imbalance_level = ImbalanceLevel::as_is();
        } else if (level.is_number()) {
            const double v = level.get<double>();
            if (v < 1.0) {
                spec.imbalance_level = ImbalanceLevel::from_fraction(v);
            } else {
                if (v != std::floor(v))
                    throw SpecError("absolute 'imbalance_level' must be an integer");
                spec.imbalance_level =
                    ImbalanceLevel::from_count(static_cast<std::size_t>(v));
            }
        } else {
            throw SpecError("'imbalance_level' must be a number or \"as_is\"");
        }
    }

    auto read_int = [&j](const char* key, int fallback, int min_value) {
        if (!j.contains(key)) return fallback;
        const auto& v = j.at(key);
        if (!v.is_number_integer())
            throw SpecError(std::string("'") + key + "' must be an integer");
        const int value = v.get<int>();
        if (value < min_value)
            throw SpecError(std::string("'") + key + "' must be at least " +
                            std::to_string(min_value));
        return value;
    };

    spec.repeats = read_int("repeats", spec.repeats, 1);
    spec.k_somm = read_int("k_somm", spec.k_somm, 1);
    spec.k_smote = read_int("k_smote", spec.k_smote, 1);
    spec.covdiv_cells = read_int("covdiv_cells", spec.covdiv_cells, 1);
    spec.synthetic_majority = static_cast<std::size_t>(
        read_int("synthetic_majority", static_cast<int>(spec.synthetic_majority), 2));
    spec.synthetic_minority = static_cast<std::size_t>(
        read_int("synthetic_minority", static_cast<int>(spec.synthetic_minority), 2));
    spec.diversity_pool = static_cast<std::size_t>(
        read_int("diversity_pool", static_cast<int>(spec.diversity_pool), 1));

    if (j.contains("split")) {
        const auto& v = j.at("split");
        if (!v.is_number()) throw SpecError("'split' must be a number");
        spec.split = v.get<double>();
        if (!(spec.split > 0.0 && spec.split < 1.0))
            throw SpecError("'split' must lie in (0, 1)");
    }

    if (j.contains("base_seed")) {
        const auto& v = j.at("base_seed");
        if (!v.is_number_integer() ||
            (!v.is_number_unsigned() && v.get<long long>() < 0))
            throw SpecError("'base_seed' must be a non-negative integer");
        spec.base_seed = v.get<std::uint64_t>();
    }

    if (j.contains("k_sweep")) {
        const auto& arr = j.at("k_sweep");
        if (!arr.is_array() || arr.empty())
            throw SpecError("'k_sweep' must be a non-empty array of integers");
        for (const auto& item : arr) {
            if (!item.is_number_integer() || item.get<int>() < 1)
                throw SpecError("'k_sweep' entries must be integers >= 1");
            spec.k_sweep.push_back(item.get<int>());
        }
        std::sort(spec.k_sweep.begin(), spec.k_sweep.end());
        spec.k_sweep.erase(
            std::unique(spec.k_sweep.begin(), spec.k_sweep.end()),
            spec.k_sweep.end());
    }

    if (j.contains("families")) {
        const auto& arr = j.at("families");
        if (!arr.is_array() || arr.empty())
            throw SpecError("'families' must be a non-empty array");
        for (const auto& item : arr) {
            if (!item.is_string()) throw SpecError("'families' entries must be strings");
            const auto family = parse_family(item.get<std::string>());
            if (!family)
                throw SpecError("unknown synthetic family '" +
                                item.get<std::string>() + "'");
            spec.families.push_back(*family);
        }
    }

    if (task == TaskKind::Diversity) {
        if (!spec.family)
            throw SpecError("diversity runs need a synthetic data source");
        if (spec.imbalance_level.kind == ImbalanceLevel::Kind::AsIs)
            throw SpecError("diversity runs need an imbalance level to set the minority count");
    }
    if (!spec.k_sweep.empty()) {
        if (task != TaskKind::Classification)
            throw SpecError("'k_sweep' applies to classification runs only");
        if (!spec.family)
            throw SpecError("'k_sweep' needs a synthetic data source");
        if (std::find(spec.samplers.begin(), spec.samplers.end(),
                      SamplerKind::Somm) == spec.samplers.end())
            throw SpecError("'k_sweep' needs the somm sampler");
    }
    if (!spec.families.empty() && spec.k_sweep.empty())
        throw SpecError("'families' is only meaningful together with 'k_sweep'");

    return spec;
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
    nlohmann::json j;
    j["task"] = spec.task == TaskKind::Diversity ? "diversity" : "classification";
    if (spec.csv_path)
        j["data_source"] = {{"csv", *spec.csv_path}};
    else
        j["data_source"] = {{"synthetic", family_name(*spec.family)}};

    auto samplers = nlohmann::json::array();
    for (SamplerKind s : spec.samplers) samplers.push_back(sampler_name(s));
    j["samplers"] = std::move(samplers);

    auto classifiers = nlohmann::json::array();
    for (ClassifierKind c : spec.classifiers)
        classifiers.push_back(classifier_name(c));
    j["classifiers"] = std::move(classifiers);

    switch (spec.imbalance_level.kind) {
        case ImbalanceLevel::Kind::AsIs:
            j["imbalance_level"] = "as_is";
            break;
        case ImbalanceLevel::Kind::Fraction:
            j["imbalance_level"] = spec.imbalance_level.fraction;
            break;
        case ImbalanceLevel::Kind::Absolute:
            j["imbalance_level"] = spec.imbalance_level.count;
            break;
    }

    j["repeats"] = spec.repeats;
    j["split"] = spec.split;
    j["k_somm"] = spec.k_somm;
    j["k_smote"] = spec.k_smote;
    j["base_seed"] = spec.base_seed;
    j["synthetic_majority"] = spec.synthetic_majority;
    j["synthetic_minority"] = spec.synthetic_minority;
    j["diversity_pool"] = spec.diversity_pool;
    j["covdiv_cells"] = spec.covdiv_cells;
    if (!spec.k_sweep.empty()) j["k_sweep"] = spec.k_sweep;
    if (!spec.families.empty()) {
        auto families = nlohmann::json::array();
        for (SyntheticFamily f : spec.families) families.push_back(family_name(f));
        j["families"] = std::move(families);
    }
    return j;
}

std::pair<std::vector<int>, std::vector<int>> stratified_split_indices(
    const std::vector<int>& labels, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train fraction must lie in (0, 1)");

    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_class[labels[i]].push_back(static_cast<int>(i));

    Rng rng(seed);
    std::vector<int> train;
    std::vector<int> test;
    for (auto& [label, idx] : by_class) {
        if (idx.size() < 2)
            throw std::invalid_argument("class " + std::to_string(label) +
                                        " has fewer than two rows; cannot split");
        shuffle_indices(idx, rng);
        auto n_train = static_cast<std::size_t>(
            std::llround(train_fraction * static_cast<double>(idx.size())));
        n_train = std::clamp<std::size_t>(n_train, 1, idx.size() - 1);
        train.insert(train.end(), idx.begin(), idx.begin() + n_train);
        test.insert(test.end(), idx.begin() + n_train, idx.end());
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {std::move(train), std::move(test)};
}

Dataset take_rows(const Dataset& data, const std::vector<int>& rows) {
    Dataset out;
    out.feature_names = data.feature_names;
    out.class_names = data.class_names;
    out.labels.reserve(rows.size());
    for (int r : rows) {
        if (r < 0 || static_cast<std::size_t>(r) >= data.size())
            throw std::out_of_range("row index out of range");
        out.features.append_row(data.features.row(r));
        out.labels.push_back(data.labels[r]);
    }
    return out;
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& data,
                                             double train_fraction,
                                             std::uint64_t seed) {
    auto [train_idx, test_idx] =
        stratified_split_indices(data.labels, train_fraction, seed);
    return {take_rows(data, train_idx), take_rows(data, test_idx)};
}

std::vector<int> downsample_minority_keep(const std::vector<int>& labels,
                                          int minority_label,
                                          ImbalanceLevel level,
                                          std::uint64_t seed) {
    std::vector<int> keep;
    if (level.kind == ImbalanceLevel::Kind::AsIs) {
        keep.resize(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) keep[i] = static_cast<int>(i);
        return keep;
    }

    std::vector<int> minority;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == minority_label)
            minority.push_back(static_cast<int>(i));
        else
            keep.push_back(static_cast<int>(i));
    }
    if (minority.empty())
        throw std::invalid_argument("minority label " +
                                    std::to_string(minority_label) + " not present");

    std::size_t target = 0;
    if (level.kind == ImbalanceLevel::Kind::Absolute) {
        target = level.count;
    } else {
        const double L = level.fraction;
        const auto n_majority = static_cast<double>(keep.size());
        const std::size_t floor_rows = std::abs(L - 0.01) < 1e-12 ? 8 : 2;
        const auto computed = static_cast<std::size_t>(
            std::llround(L * n_majority / (1.0 - L)));
        target = std::max(computed, floor_rows);
    }
    if (target > minority.size())
        throw std::invalid_argument(
            "downsample target " + std::to_string(target) + " exceeds the " +
            std::to_string(minority.size()) + " minority rows available");

    Rng rng(seed);
    shuffle_indices(minority, rng);
    keep.insert(keep.end(), minority.begin(), minority.begin() + target);
    std::sort(keep.begin(), keep.end());
    return keep;
}

Dataset downsample_minority(const Dataset& train, int minority_label,
                            ImbalanceLevel level, std::uint64_t seed) {
    return take_rows(train,
                     downsample_minority_keep(train.labels, minority_label,
                                              level, seed));
}

BalancedTrain balance_with_sampler(const Dataset& train, SamplerKind kind,
                                   int k_somm, int k_smote,
                                   std::uint64_t seed) {
    BalancedTrain out;
    out.data = train;
    if (kind == SamplerKind::None) return out;

    if (kind == SamplerKind::Somm) {
        SommConfig config;
        config.k = k_somm;
        config.seed = seed;
        out.data = somm_multiclass(train, config);
        out.n_synthetic = out.data.size() - train.size();
        return out;
    }

    const auto counts = class_counts(train);
    std::size_t max_count = 0;
    for (const auto& [label, count] : counts) max_count = std::max(max_count, count);

    const Rng parent(seed);
    for (const auto& [label, count] : counts) {
        if (count == max_count) continue;
        const std::size_t deficit = max_count - count;
        const std::uint64_t child_seed =
            parent.child(static_cast<std::uint64_t>(label)).seed();
        SommOutput produced;
        if (kind == SamplerKind::Random) {
            produced = random_oversample(train, label, deficit, child_seed);
        } else {
            SmoteConfig config;
            config.k = k_smote;
            config.n_synthetic = deficit;
            config.seed = child_seed;
            produced = smote_oversample(train, label, config);
        }
        out.data.features.append_rows(produced.synthetic);
        out.data.labels.insert(out.data.labels.end(), produced.synthetic.rows(),
                               label);
        out.n_synthetic += produced.synthetic.rows();
    }
    return out;
}

RunResult run_diversity(const ExperimentSpec& spec) {
    if (!spec.family)
        throw SpecError("diversity runs need a synthetic data source");

    RunResult result;
    result.repeat_seeds.reserve(spec.repeats);
    for (int r = 0; r < spec.repeats; ++r)
        result.repeat_seeds.push_back(spec.base_seed + static_cast<std::uint64_t>(r));

    std::vector<std::vector<RepeatRecord>> per_repeat(spec.repeats);
    run_parallel(spec.repeats, [&](int r) {
        const Rng parent(spec.base_seed + static_cast<std::uint64_t>(r));

        SyntheticSpec gen;
        gen.family = *spec.family;
        gen.n_majority = kDiversityMajority;
        gen.n_minority = spec.diversity_pool;
        gen.seed = parent.child(kStageData).seed();
        const Dataset data = generate(gen);

        Matrix pool;
        for (std::size_t i = 0; i < data.size(); ++i)
            if (data.labels[i] == 1) pool.append_row(data.features.row(i));

        const auto keep = downsample_minority_keep(
            data.labels, 1, spec.imbalance_level,
            parent.child(kStageDownsample).seed());
        const Dataset train = take_rows(data, keep);
        const auto counts = class_counts(train);
        const std::size_t n_majority = counts.at(0);
        const std::size_t n_minority = counts.at(1);

        auto& rows = per_repeat[r];
        for (SamplerKind s : spec.samplers) {
            RepeatRecord rec;
            rec.repeat = r;
            rec.sampler = sampler_name(s);
            rec.metric = "covdiv";
            rec.value = nan_value();

            const std::uint64_t sampler_seed =
                parent.child(kStageSampler + static_cast<std::uint64_t>(s)).seed();
            try {
                Matrix synthetic;
                switch (s) {
                    case SamplerKind::None:
                        break;
                    case SamplerKind::Random:
                        synthetic = random_oversample(train, 1,
                                                      n_majority - n_minority,
                                                      sampler_seed)
                                        .synthetic;
                        break;
                    case SamplerKind::Smote: {
                        SmoteConfig config;
                        config.k = spec.k_smote;
                        config.seed = sampler_seed;
                        synthetic = smote_oversample(train, 1, config).synthetic;
                        break;
                    }
                    case SamplerKind::Somm: {
                        SommConfig config;
                        config.k = spec.k_somm;
                        config.seed = sampler_seed;
                        synthetic = somm_oversample(train, 1, config).synthetic;
                        break;
                    }
                }
                rec.value = covdiv(pool, synthetic, spec.covdiv_cells).covdiv;
            } catch (const std::exception&) {
                // precondition failures stay as missing values
            }
            rows.push_back(std::move(rec));
        }
    });

    for (auto& rows : per_repeat)
        result.repeats.insert(result.repeats.end(),
                              std::make_move_iterator(rows.begin()),
                              std::make_move_iterator(rows.end()));
    result.aggregates = aggregate_records(result.repeats);
    result.significance = somm_significance(spec, result.repeats, "covdiv", {""});
    return result;
}

RunResult run_classification(const ExperimentSpec& spec,
                             const RunObserver* observer) {
    const Dataset source = load_source(spec);
    const auto ids = class_ids(source);
    if (ids.size() < 2)
        throw std::invalid_argument("classification needs at least two classes");
    const int n_classes = static_cast<int>(ids.size());
    const int minority_label = least_frequent_class(source);
    const std::string metric_name = n_classes == 2 ? "g_mean" : "mg";

    RunResult result;
    result.repeat_seeds.reserve(spec.repeats);
    for (int r = 0; r < spec.repeats; ++r)
        result.repeat_seeds.push_back(spec.base_seed + static_cast<std::uint64_t>(r));

    std::vector<std::vector<RepeatRecord>> per_repeat(spec.repeats);
    std::mutex observer_mutex;

    run_parallel(spec.repeats, [&](int r) {
        const Rng parent(spec.base_seed + static_cast<std::uint64_t>(r));

        auto [train_idx, test_idx] = stratified_split_indices(
            source.labels, spec.split, parent.child(kStageData).seed());
        if (observer && observer->on_split) {
            std::lock_guard<std::mutex> lock(observer_mutex);
            observer->on_split(r, train_idx, test_idx);
        }
        const Dataset test = take_rows(source, test_idx);

        std::vector<int> train_labels;
        train_labels.reserve(train_idx.size());
        for (int i : train_idx) train_labels.push_back(source.labels[i]);
        const auto keep = downsample_minority_keep(
            train_labels, minority_label, spec.imbalance_level,
            parent.child(kStageDownsample).seed());
        std::vector<int> down_idx;
        down_idx.reserve(keep.size());
        for (int p : keep) down_idx.push_back(train_idx[p]);
        const Dataset train = take_rows(source, down_idx);

        auto& rows = per_repeat[r];
        for (SamplerKind s : spec.samplers) {
            const std::uint64_t sampler_seed =
                parent.child(kStageSampler + static_cast<std::uint64_t>(s)).seed();
            bool sampler_ok = true;
            BalancedTrain balanced;
            try {
                balanced = balance_with_sampler(train, s, spec.k_somm,
                                                spec.k_smote, sampler_seed);
            } catch (const std::exception&) {
                sampler_ok = false;
            }

            for (ClassifierKind c : spec.classifiers) {
                RepeatRecord rec;
                rec.repeat = r;
                rec.sampler = sampler_name(s);
                rec.classifier = classifier_name(c);
                rec.metric = metric_name;
                rec.value = nan_value();
                if (sampler_ok) {
                    if (observer && observer->on_fit) {
                        std::vector<int> provenance = down_idx;
                        provenance.insert(provenance.end(), balanced.n_synthetic, -1);
                        std::lock_guard<std::mutex> lock(observer_mutex);
                        observer->on_fit(r, rec.sampler, rec.classifier, provenance);
                    }
                    try {
                        const TrainedModel model = fit(balanced.data, c);
                        const auto pred = predict(model, test.features);
                        const ConfusionMatrix cm =
                            confusion(test.labels, pred, n_classes);
                        rec.value = n_classes == 2 ? g_mean(cm) : mg(cm);
                    } catch (const UndefinedMetricError&) {
                        // empty test class: missing value for this repeat
                    }
                }
                rows.push_back(std::move(rec));
            }
        }
    });

    for (auto& rows : per_repeat)
        result.repeats.insert(result.repeats.end(),
                              std::make_move_iterator(rows.begin()),
                              std::make_move_iterator(rows.end()));
    result.aggregates = aggregate_records(result.repeats);
    result.best_classifier = best_per_sampler(spec, result.aggregates);
    std::vector<std::string> classifier_names;
    for (ClassifierKind c : spec.classifiers)
        classifier_names.emplace_back(classifier_name(c));
    result.significance =
        somm_significance(spec, result.repeats, metric_name, classifier_names);
    return result;
}

KSweepResult run_k_sweep(const ExperimentSpec& spec) {
    if (spec.k_sweep.empty())
        throw SpecError("k sweep requested without 'k_sweep' values");
    std::vector<SyntheticFamily> families = spec.families;
    if (families.empty())
        families = {SyntheticFamily::SD1, SyntheticFamily::SD2,
                    SyntheticFamily::SD3, SyntheticFamily::SD4,
                    SyntheticFamily::SD5, SyntheticFamily::SD6};

    KSweepResult result;
    for (SyntheticFamily family : families) {
        KSweepWinner winner;
        winner.family = family_name(family);
        winner.best_k = spec.k_sweep.front();
        winner.mean = nan_value();

        for (int k : spec.k_sweep) {
            ExperimentSpec inner = spec;
            inner.csv_path.reset();
            inner.family = family;
            inner.k_somm = k;
            inner.k_sweep.clear();
            inner.families.clear();
            const RunResult run = run_classification(inner);

            for (const auto& agg : run.aggregates) {
                KSweepRow row;
                row.family = winner.family;
                row.k = k;
                row.sampler = agg.sampler;
                row.classifier = agg.classifier;
                row.metric = agg.metric;
                row.mean = agg.mean;
                row.sd = agg.sd;
                result.rows.push_back(std::move(row));
            }
            for (const auto& best : run.best_classifier) {
                if (best.sampler != "somm" || std::isnan(best.mean)) continue;
                if (std::isnan(winner.mean) || best.mean > winner.mean) {
                    winner.mean = best.mean;
                    winner.best_k = k;
                }
            }
        }
        result.winners.push_back(std::move(winner));
    }
    return result;
}

void write_results(const RunResult& result, const ExperimentSpec& spec,
                   const std::string& out_dir) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);

    std::string repeats = "repeat,sampler,classifier,metric,value\n";
    for (const auto& row : result.repeats) {
        repeats += std::to_string(row.repeat);
        repeats += ',';
        repeats += row.sampler;
        repeats += ',';
        repeats += row.classifier;
        repeats += ',';
        repeats += row.metric;
        repeats += ',';
        repeats += format_number(row.value);
        repeats += '\n';
    }
    write_file(dir / "repeats.csv", repeats);

    std::string aggregates = "sampler,classifier,metric,mean,sd,n\n";
    for (const auto& agg : result.aggregates) {
        aggregates += agg.sampler;
        aggregates += ',';
        aggregates += agg.classifier;
        aggregates += ',';
        aggregates += agg.metric;
        aggregates += ',';
        aggregates += format_number(agg.mean);
        aggregates += ',';
        aggregates += format_number(agg.sd);
        aggregates += ',';
        aggregates += std::to_string(agg.n);
        aggregates += '\n';
    }
    write_file(dir / "aggregates.csv", aggregates);

    if (spec.task == TaskKind::Classification) {
        std::string best = "sampler,classifier,mean,sd\n";
        for (const auto& rec : result.best_classifier) {
            best += rec.sampler;
            best += ',';
            best += rec.classifier;
            best += ',';
            best += format_number(rec.mean);
            best += ',';
            best += format_number(rec.sd);
            best += '\n';
        }
        write_file(dir / "best_classifier.csv", best);
    }

    std::string significance = "metric,classifier,sampler_a,sampler_b,u,p_value\n";
    for (const auto& rec : result.significance) {
        significance += rec.metric;
        significance += ',';
        significance += rec.classifier;
        significance += ',';
        significance += rec.sampler_a;
        significance += ',';
        significance += rec.sampler_b;
        significance += ',';
        significance += format_number(rec.u);
        significance += ',';
        significance += format_number(rec.p_value);
        significance += '\n';
    }
    write_file(dir / "significance.csv", significance);

    write_manifest(spec, result.repeat_seeds, dir / "manifest.json");
}

void write_k_sweep(const KSweepResult& result, const ExperimentSpec& spec,
                   const std::string& out_dir) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);

    std::string rows = "family,k,sampler,classifier,metric,mean,sd\n";
    for (const auto& row : result.rows) {
        rows += row.family;
        rows += ',';
        rows += std::to_string(row.k);
        rows += ',';
        rows += row.sampler;
        rows += ',';
        rows += row.classifier;
        rows += ',';
        rows += row.metric;
        rows += ',';
        rows += format_number(row.mean);
        rows += ',';
        rows += format_number(row.sd);
        rows += '\n';
    }
    write_file(dir / "ksweep.csv", rows);

    std::string winners = "family,best_k,mean\n";
    for (const auto& rec : result.winners) {
        winners += rec.family;
        winners += ',';
        winners += std::to_string(rec.best_k);
        winners += ',';
        winners += format_number(rec.mean);
        winners += '\n';
    }
    write_file(dir / "ksweep_winners.csv", winners);

    std::vector<std::uint64_t> repeat_seeds;
    repeat_seeds.reserve(spec.repeats);
    for (int r = 0; r < spec.repeats; ++r)
        repeat_seeds.push_back(spec.base_seed + static_cast<std::uint64_t>(r));
    write_manifest(spec, repeat_seeds, dir / "manifest.json");
}

}  // namespace somm::bench
