// End-to-end acceptance checks. Each numbered check prints one [PASS]/[FAIL]
// line; the process exits nonzero if any check fails. argv[1] must point at
// the somm CLI binary for the determinism checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "somm/baselines.hpp"
#include "somm/bench.hpp"
#include "somm/csv.hpp"
#include "somm/metrics.hpp"
#include "somm/neighbors.hpp"
#include "somm/rng.hpp"
#include "somm/somm.hpp"
#include "somm/synthetic.hpp"

using namespace somm;
using json = nlohmann::json;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << id << ". " << name;
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << '\n';
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string fmt(double v, int precision = 4) {
    std::ostringstream out;
    out.precision(precision);
    out << std::fixed << v;
    return out.str();
}

const bench::AggregateRecord* find_aggregate(
    const std::vector<bench::AggregateRecord>& aggs, const std::string& sampler) {
    for (const auto& a : aggs)
        if (a.sampler == sampler) return &a;
    return nullptr;
}

const bench::BestClassifierRecord* find_best(
    const std::vector<bench::BestClassifierRecord>& best,
    const std::string& sampler) {
    for (const auto& b : best)
        if (b.sampler == sampler) return &b;
    return nullptr;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

Dataset blended_blobs(std::size_t n_major, std::size_t n_minor, bool nested,
                      std::uint64_t seed) {
    Rng rng(seed);
    Dataset d;
    const double major_sigma = nested ? 1.5 : 1.0;
    for (std::size_t i = 0; i < n_major; ++i) {
        std::vector<double> row{rng.normal(0.0, major_sigma),
                                rng.normal(0.0, major_sigma)};
        d.features.append_row(row);
        d.labels.push_back(0);
    }
    const double cx = nested ? 0.0 : 4.0;
    const double minor_sigma = nested ? 0.5 : 0.8;
    for (std::size_t i = 0; i < n_minor; ++i) {
        std::vector<double> row{rng.normal(cx, minor_sigma),
                                rng.normal(cx, minor_sigma)};
        d.features.append_row(row);
        d.labels.push_back(1);
    }
    return d;
}

double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

// ---- 1: diversity reproduction ---------------------------------------------

void check_diversity() {
    const auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    for (const char* family : {"sd1", "sd2", "sd3"}) {
        const json j{{"task", "diversity"},
                     {"data_source", {{"synthetic", family}}},
                     {"samplers", {"smote", "somm"}},
                     {"imbalance_level", 20},
                     {"repeats", 30}};
        const bench::ExperimentSpec spec =
            bench::parse_spec(j, bench::TaskKind::Diversity);
        const bench::RunResult result = bench::run_diversity(spec);

        const bench::AggregateRecord* somm_agg = find_aggregate(result.aggregates, "somm");
        const bench::AggregateRecord* smote_agg = find_aggregate(result.aggregates, "smote");
        double p = 1.0;
        for (const auto& sig : result.significance)
            if (sig.sampler_b == "smote") p = sig.p_value;

        const bool ok = somm_agg && smote_agg && somm_agg->n == 30 &&
                        smote_agg->n == 30 && somm_agg->mean > smote_agg->mean &&
                        p < 0.05;
        pass = pass && ok;
        detail += std::string(family) + " somm=" + fmt(somm_agg ? somm_agg->mean : -1) +
                  " smote=" + fmt(smote_agg ? smote_agg->mean : -1) +
                  " p=" + fmt(p) + "; ";
    }
    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 120.0;
    report(1, "diversity: somm covdiv beats smote on sd1/sd2/sd3, p<0.05", pass,
           detail + fmt(elapsed, 1) + "s of 120s");
}

// ---- 2: classification reproduction ----------------------------------------

void check_extreme_imbalance() {
    const auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    for (const char* family : {"sd5", "sd6"}) {
        const json j{{"task", "classification"},
                     {"data_source", {{"synthetic", family}}},
                     {"samplers", {"none", "somm"}},
                     {"imbalance_level", 0.01},
                     {"repeats", 30}};
        const bench::ExperimentSpec spec =
            bench::parse_spec(j, bench::TaskKind::Classification);
        const bench::RunResult result = bench::run_classification(spec);

        const auto* base = find_best(result.best_classifier, "none");
        const auto* somm_best = find_best(result.best_classifier, "somm");
        const bool ok = base && somm_best && !std::isnan(base->mean) &&
                        !std::isnan(somm_best->mean) &&
                        somm_best->mean - base->mean >= 0.2;
        pass = pass && ok;
        detail += std::string(family) +
                  " base=" + fmt(base ? base->mean : -1) +
                  " somm=" + fmt(somm_best ? somm_best->mean : -1) + "; ";
    }
    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 300.0;
    report(2, "classification: somm best g-mean >= base + 0.2 at the 1% level",
           pass, detail + fmt(elapsed, 1) + "s of 300s");
}

// ---- 3: separable sanity ----------------------------------------------------

void check_separable_sanity() {
    const json j{{"task", "classification"},
                 {"data_source", {{"synthetic", "sd3"}}},
                 {"imbalance_level", 0.05},
                 {"repeats", 30}};
    const bench::ExperimentSpec spec =
        bench::parse_spec(j, bench::TaskKind::Classification);
    const bench::RunResult result = bench::run_classification(spec);

    bool pass = result.best_classifier.size() == 4;
    std::string detail;
    for (const auto& best : result.best_classifier) {
        pass = pass && !std::isnan(best.mean) && best.mean >= 0.97;
        detail += best.sampler + "=" + fmt(best.mean) + "; ";
    }
    report(3, "sanity: every sampler reaches best g-mean >= 0.97 on sd3 at 5%",
           pass, detail);
}

// ---- 4: imbalance-ratio oracle ----------------------------------------------

void check_ir_oracle() {
    const double ir =
        imbalance_ratio(ClassDistribution(std::vector<std::int64_t>{431, 220, 195}));
    const bool pass = std::abs(ir - 2.30) <= 0.01;
    report(4, "imbalance ratio of (431,220,195) equals 2.30 +/- 0.01", pass,
           "ir=" + fmt(ir));
}

// ---- 5: geometry property suite ----------------------------------------------

void check_geometry_properties() {
    std::size_t contained = 0, rule1 = 0, rule3 = 0, nonrep = 0;
    std::size_t violations = 0;
    std::string first;
    const auto violate = [&](const std::string& what) {
        ++violations;
        if (first.empty()) first = what;
    };

    for (std::uint64_t seed = 0;
         seed < 400 && (contained < 1000 || rule1 < 1000 || rule3 < 1000 ||
                        nonrep < 1000);
         ++seed) {
        const bool nested = seed % 2 == 0;  // nested geometry forces updates
        const Dataset train = blended_blobs(60, 12, nested, 9000 + seed);
        const auto [train_norm, params] = normalize(train);
        const auto [majority_norm, minority_norm] = split_by_class(train_norm, 1);
        const FeatureBounds bounds = feature_bounds(minority_norm);

        SommConfig config;
        config.seed = seed;
        const SommTraceFn trace = [&](const SommTrace& rec) {
            if (rec.action == CandidateAction::Remove) return;
            ++rule1;
            if (!rec.neighbors.first_minority.has_value())
                violate("retained candidate with no minority neighbor");
            if (rec.action != CandidateAction::Update || !rec.geometry) return;
            const UpdateGeometry& geom = *rec.geometry;
            ++rule3;
            ++nonrep;
            double proj = 0.0;
            for (std::size_t f = 0; f < geom.direction.size(); ++f)
                proj += (rec.final_position[f] - rec.candidate.position[f]) *
                        geom.direction[f];
            if (std::abs(proj - geom.magnitude) > 1e-9)
                violate("projection of update differs from drawn magnitude");
            const double frontier =
                std::min(std::max(geom.max_projected, 0.0),
                         geom.minority_distance * (1.0 - 1e-6));
            if (!(geom.magnitude > frontier))
                violate("magnitude does not clear the majority frontier");
            const int cut = *rec.neighbors.first_minority;
            const auto nn_b = train_norm.features.row(rec.neighbors.indices[cut]);
            if (!(distance(rec.final_position, nn_b) > 0.0))
                violate("updated instance replicated its minority neighbor");
        };

        const SommOutput out = somm_oversample(train, 1, config, trace);
        const Matrix renorm = apply_normalization(out.synthetic, params);
        for (std::size_t r = 0; r < renorm.rows(); ++r) {
            ++contained;
            for (std::size_t c = 0; c < renorm.cols(); ++c)
                if (renorm.at(r, c) < bounds.lower[c] - 1e-9 ||
                    renorm.at(r, c) > bounds.upper[c] + 1e-9)
                    violate("synthetic row left the minority bounding box");
        }
    }

    std::size_t roundtrips = 0;
    Rng rng(51);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t rows = 2 + rng.uniform_index(30);
        const std::size_t cols = 1 + rng.uniform_index(5);
        Dataset d;
        const double scale = rng.uniform_in(0.5, 200.0);
        const double shift = rng.uniform_in(-100.0, 100.0);
        const bool constant_column = rng.uniform() < 0.2;
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<double> row(cols);
            for (std::size_t c = 0; c < cols; ++c)
                row[c] = constant_column && c == 0 ? shift
                                                   : shift + scale * rng.uniform();
            d.features.append_row(row);
            d.labels.push_back(static_cast<int>(rng.uniform_index(2)));
        }
        const auto [norm, params] = normalize(d);
        const Matrix back = denormalize(norm.features, params);
        ++roundtrips;
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (std::abs(back.at(r, c) - d.features.at(r, c)) > 1e-9)
                    violate("normalization round trip drifted past 1e-9");
    }

    const bool pass = violations == 0 && contained >= 1000 && rule1 >= 1000 &&
                      rule3 >= 1000 && nonrep >= 1000 && roundtrips >= 1000;
    std::string detail = "cases: containment=" + std::to_string(contained) +
                         " rule1=" + std::to_string(rule1) +
                         " rule3=" + std::to_string(rule3) +
                         " nonrep=" + std::to_string(nonrep) +
                         " roundtrip=" + std::to_string(roundtrips);
    if (violations > 0)
        detail += "; " + std::to_string(violations) + " violations, first: " + first;
    report(5, "geometry properties hold over 1000+ random cases each", pass, detail);
}

// ---- 6: oracle equivalences ---------------------------------------------------

void check_oracles() {
    std::size_t violations = 0;
    std::string first;
    const auto violate = [&](const std::string& what) {
        ++violations;
        if (first.empty()) first = what;
    };

    // nearest neighbors against a full sort with the same tie rule
    Rng rng(61);
    std::size_t nn_queries = 0;
    while (nn_queries < 200) {
        const std::size_t rows = 5 + rng.uniform_index(60);
        Dataset train;
        for (std::size_t r = 0; r < rows; ++r) {
            // snapped coordinates produce genuine distance ties
            std::vector<double> row{std::round(rng.uniform() * 8.0) / 8.0,
                                    std::round(rng.uniform() * 8.0) / 8.0};
            train.features.append_row(row);
            train.labels.push_back(rng.uniform() < 0.3 ? 1 : 0);
        }
        const int k = 1 + static_cast<int>(rng.uniform_index(rows));
        for (int q = 0; q < 5 && nn_queries < 200; ++q, ++nn_queries) {
            const std::vector<double> query{rng.uniform(), rng.uniform()};
            const NeighborSet nn = k_nearest(query, train, 1, k);

            std::vector<int> order(rows);
            std::iota(order.begin(), order.end(), 0);
            std::vector<double> dist(rows);
            for (std::size_t r = 0; r < rows; ++r)
                dist[r] = euclidean_distance(query, train.features.row(r));
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (dist[a] != dist[b]) return dist[a] < dist[b];
                return a < b;
            });
            order.resize(k);
            if (nn.indices != order) violate("k_nearest order diverged from full sort");
            for (int i = 0; i < k; ++i)
                if (std::abs(nn.distances[i] - dist[order[i]]) > 1e-12)
                    violate("k_nearest distance diverged from oracle");
        }
    }

    // Mann-Whitney U against the pairwise win count
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t na = 2 + rng.uniform_index(12);
        const std::size_t nb = 2 + rng.uniform_index(12);
        std::vector<double> a(na), b(nb);
        for (auto& v : a) v = static_cast<double>(rng.uniform_index(8));
        for (auto& v : b) v = static_cast<double>(rng.uniform_index(8));
        const MannWhitneyResult r = mann_whitney_u(a, b);
        double wins = 0.0;
        for (double x : a)
            for (double y : b) {
                if (x > y) wins += 1.0;
                else if (x == y) wins += 0.5;
            }
        if (std::abs(r.u - wins) > 1e-12) violate("U diverged from pairwise count");
    }

    // g-mean and MG against direct recall products
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t classes = 2 + rng.uniform_index(3);
        ConfusionMatrix cm(classes);
        std::vector<double> recalls(classes);
        for (std::size_t t = 0; t < classes; ++t) {
            std::int64_t row_total = 0;
            for (std::size_t p = 0; p < classes; ++p) {
                cm.at(t, p) = static_cast<std::int64_t>(rng.uniform_index(20));
                row_total += cm.at(t, p);
            }
            if (row_total == 0) {
                cm.at(t, t) = 1;
                row_total = 1;
            }
            recalls[t] = static_cast<double>(cm.at(t, t)) /
                         static_cast<double>(row_total);
        }
        double product = 1.0;
        for (double r : recalls) product *= r;
        const double expected =
            std::pow(product, 1.0 / static_cast<double>(classes));
        if (std::abs(mg(cm) - expected) > 1e-12)
            violate("mg diverged from the direct recall product");
        if (classes == 2 &&
            std::abs(g_mean(cm) - std::sqrt(recalls[0] * recalls[1])) > 1e-12)
            violate("g_mean diverged from sqrt of the recall product");
    }

    report(6, "nearest-neighbor, rank-sum and recall-product oracles agree",
           violations == 0,
           violations == 0 ? "200 nn queries, 100 rank tests, 100 matrices"
                           : first);
}

// ---- 7: smote baseline properties ---------------------------------------------

void check_smote_properties() {
    std::size_t violations = 0;
    std::size_t checked = 0;
    std::string first;
    const auto violate = [&](const std::string& what) {
        ++violations;
        if (first.empty()) first = what;
    };

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dataset train = blended_blobs(40, 10 + seed % 5, false, 700 + seed);
        const auto [majority, minority] = split_by_class(train, 1);
        const std::size_t m = minority.size();

        SmoteConfig config;
        config.n_synthetic = 60;
        config.seed = seed;
        const SommOutput out = smote_oversample(train, 1, config);

        // the k-neighbor relation among minority rows, brute forced
        std::vector<std::vector<std::size_t>> neighbor_table(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<std::size_t> order;
            for (std::size_t j = 0; j < m; ++j)
                if (j != i) order.push_back(j);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                const double da = distance(minority.features.row(i),
                                           minority.features.row(a));
                const double db = distance(minority.features.row(i),
                                           minority.features.row(b));
                if (da != db) return da < db;
                return a < b;
            });
            order.resize(config.k);
            neighbor_table[i] = std::move(order);
        }

        for (std::size_t r = 0; r < out.synthetic.rows(); ++r) {
            ++checked;
            const std::size_t base = r % m;
            bool matched = false;
            for (std::size_t nn : neighbor_table[base]) {
                const auto a = minority.features.row(base);
                const auto b = minority.features.row(nn);
                double seg_sq = 0.0, dot = 0.0;
                for (std::size_t f = 0; f < a.size(); ++f) {
                    const double d = b[f] - a[f];
                    seg_sq += d * d;
                    dot += (out.synthetic.at(r, f) - a[f]) * d;
                }
                const double t = seg_sq > 0.0 ? dot / seg_sq : 0.0;
                if (t < -1e-9 || t > 1.0 + 1e-9) continue;
                double residual = 0.0;
                for (std::size_t f = 0; f < a.size(); ++f)
                    residual = std::max(
                        residual, std::abs(out.synthetic.at(r, f) -
                                           (a[f] + t * (b[f] - a[f]))));
                if (residual < 1e-9) {
                    matched = true;
                    break;
                }
            }
            if (!matched)
                violate("synthetic row off every base-to-neighbor segment");
        }

        // majority rows contribute nothing
        Dataset minority_only;
        for (std::size_t r = 0; r < train.size(); ++r) {
            if (train.labels[r] != 1) continue;
            minority_only.features.append_row(train.features.row(r));
            minority_only.labels.push_back(1);
        }
        if (smote_oversample(minority_only, 1, config).synthetic != out.synthetic)
            violate("deleting majority rows changed smote output");
    }

    report(7, "smote stays on minority neighbor segments, majority-blind",
           violations == 0,
           violations == 0 ? std::to_string(checked) + " synthetics checked"
                           : first);
}

// ---- 8: CLI determinism ---------------------------------------------------------

void check_cli_determinism(const std::string& cli) {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "somm_acceptance";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);

    bool pass = true;
    std::string detail;

    if (cli.empty() || !std::filesystem::exists(cli)) {
        report(8, "cli determinism: classify and oversample repeat bytewise", false,
               "cli binary not supplied as argv[1]");
        return;
    }

    const json spec{{"task", "classification"},
                    {"data_source", {{"synthetic", "sd1"}}},
                    {"samplers", {"none", "somm"}},
                    {"classifiers", {"knn", "gnb"}},
                    {"imbalance_level", 10},
                    {"repeats", 3},
                    {"synthetic_majority", 80},
                    {"synthetic_minority", 20}};
    const std::filesystem::path spec_path = dir / "spec.json";
    std::ofstream(spec_path) << spec.dump(2) << '\n';

    for (const char* run : {"c1", "c2"}) {
        const std::string cmd = "\"" + cli + "\" classify --spec \"" +
                                spec_path.string() + "\" --out-dir \"" +
                                (dir / run).string() + "\" > /dev/null";
        if (std::system(cmd.c_str()) != 0) {
            pass = false;
            detail += "classify exited nonzero; ";
        }
    }
    for (const char* name :
         {"repeats.csv", "aggregates.csv", "best_classifier.csv",
          "significance.csv", "manifest.json"}) {
        const std::string a = slurp(dir / "c1" / name);
        const std::string b = slurp(dir / "c2" / name);
        if (a.empty() || a != b) {
            pass = false;
            detail += std::string(name) + " differs; ";
        }
    }

    SyntheticSpec gen;
    gen.family = SyntheticFamily::SD1;
    gen.n_majority = 60;
    gen.n_minority = 15;
    gen.seed = 77;
    write_csv(generate(gen), (dir / "data.csv").string());
    for (const char* run : {"o1.csv", "o2.csv"}) {
        const std::string cmd = "\"" + cli + "\" oversample --in \"" +
                                (dir / "data.csv").string() + "\" --out \"" +
                                (dir / run).string() +
                                "\" --method somm --minority-label 1 --seed 7"
                                " > /dev/null";
        if (std::system(cmd.c_str()) != 0) {
            pass = false;
            detail += "oversample exited nonzero; ";
        }
    }
    const std::string o1 = slurp(dir / "o1.csv");
    if (o1.empty() || o1 != slurp(dir / "o2.csv")) {
        pass = false;
        detail += "oversample outputs differ; ";
    }

    std::filesystem::remove_all(dir);
    report(8, "cli determinism: classify and oversample repeat bytewise", pass,
           pass ? "5 result files and 2 synthetic csvs identical" : detail);
}

// ---- 9: multiclass balance -------------------------------------------------------

void check_multiclass() {
    Rng rng(81);
    Dataset train;
    const std::vector<std::pair<double, double>> centers{
        {0.0, 0.0}, {5.0, 0.0}, {0.0, 5.0}};
    const std::vector<std::size_t> sizes{50, 30, 20};
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < sizes[static_cast<std::size_t>(c)]; ++i) {
            std::vector<double> row{rng.normal(centers[c].first, 0.6),
                                    rng.normal(centers[c].second, 0.6)};
            train.features.append_row(row);
            train.labels.push_back(c);
        }

    const Dataset balanced = somm_multiclass(train);
    const auto counts = class_counts(balanced);
    bool pass = counts.size() == 3 && counts.at(0) == 50 && counts.at(1) == 50 &&
                counts.at(2) == 50;

    // one class never predicted: its zero recall must zero the whole MG
    const std::vector<int> truth{0, 0, 1, 1, 2, 2};
    const std::vector<int> pred{0, 0, 1, 1, 0, 1};
    const double metric = mg(confusion(truth, pred, 3));
    pass = pass && metric == 0.0;

    report(9, "multiclass: (50,30,20) balances to (50,50,50); silent class zeroes MG",
           pass,
           "counts=" + std::to_string(counts.at(0)) + "/" +
               std::to_string(counts.at(1)) + "/" + std::to_string(counts.at(2)) +
               " mg=" + fmt(metric));
}

// ---- 10: k sweep harness -----------------------------------------------------------

void check_k_sweep() {
    const json j{{"task", "classification"},
                 {"data_source", {{"synthetic", "sd1"}}},
                 {"samplers", {"none", "somm"}},
                 {"classifiers", {"knn", "gnb"}},
                 {"imbalance_level", 0.05},
                 {"repeats", 5},
                 {"synthetic_majority", 400},
                 {"synthetic_minority", 40},
                 {"k_sweep", {5, 10, 15}}};
    const bench::ExperimentSpec spec =
        bench::parse_spec(j, bench::TaskKind::Classification);
    const bench::KSweepResult result = bench::run_k_sweep(spec);

    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "somm_acceptance_sweep";
    std::filesystem::remove_all(dir);
    bench::write_k_sweep(result, spec, dir.string());

    bool pass = result.rows.size() == 6 * 3 * 2 * 2 && result.winners.size() == 6;
    std::string detail;
    for (const auto& row : result.rows)
        pass = pass && (row.k == 5 || row.k == 10 || row.k == 15) &&
               row.metric == "g_mean" && !row.family.empty();
    for (const auto& winner : result.winners) {
        pass = pass &&
               (winner.best_k == 5 || winner.best_k == 10 || winner.best_k == 15) &&
               !std::isnan(winner.mean) && winner.mean >= 0.0 && winner.mean <= 1.0;
        detail += winner.family + ":k=" + std::to_string(winner.best_k) + "; ";
    }

    std::ifstream rows_csv(dir / "ksweep.csv");
    std::string header;
    std::getline(rows_csv, header);
    pass = pass && header == "family,k,sampler,classifier,metric,mean,sd";
    std::size_t lines = 0;
    for (std::string line; std::getline(rows_csv, line);) ++lines;
    pass = pass && lines == result.rows.size();

    std::ifstream winners_csv(dir / "ksweep_winners.csv");
    std::getline(winners_csv, header);
    pass = pass && header == "family,best_k,mean";

    std::ifstream manifest(dir / "manifest.json");
    pass = pass && json::parse(manifest, nullptr, false).is_object();

    std::filesystem::remove_all(dir);
    report(10, "k sweep over sd1..sd6 completes with a valid report schema", pass,
           detail);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    check_diversity();
    check_extreme_imbalance();
    check_separable_sanity();
    check_ir_oracle();
    check_geometry_properties();
    check_oracles();
    check_smote_properties();
    check_cli_determinism(cli);
    check_multiclass();
    check_k_sweep();

    if (failures > 0) {
        std::cout << failures << " acceptance check(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance checks passed\n";
    return 0;
}
