#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "somm/baselines.hpp"
#include "somm/bench.hpp"
#include "somm/csv.hpp"
#include "somm/somm.hpp"
#include "somm/synthetic.hpp"
#include "somm/version.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitPartial = 3;

int resolve_label(const somm::Dataset& data, const std::string& wanted) {
    for (const auto& [id, name] : data.class_names) {
        if (name == wanted) return id;
    }
    std::string available;
    for (const auto& [id, name] : data.class_names) {
        if (!available.empty()) available += ", ";
        available += name;
    }
    throw somm::CsvError("label '" + wanted + "' not found; labels present: " +
                         available);
}

void append_synthetic(somm::Dataset& data, const somm::Matrix& synthetic,
                      int label) {
    data.features.append_rows(synthetic);
    data.labels.insert(data.labels.end(), synthetic.rows(), label);
}

int run_oversample(const std::string& in_path, const std::string& out_path,
                   const std::string& method, const std::string& label_name,
                   int k, std::uint64_t seed,
                   const std::optional<std::size_t>& n) {
    somm::Dataset data;
    int minority_label = 0;
    try {
        data = somm::read_csv(in_path);
        minority_label = resolve_label(data, label_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }

    try {
        somm::Matrix synthetic;
        if (method == "somm") {
            somm::SommConfig config;
            if (k > 0) config.k = k;
            config.n_synthetic = n;
            config.seed = seed;
            synthetic = somm::somm_oversample(data, minority_label, config).synthetic;
        } else if (method == "smote") {
            somm::SmoteConfig config;
            if (k > 0) config.k = k;
            config.n_synthetic = n;
            config.seed = seed;
            synthetic = somm::smote_oversample(data, minority_label, config).synthetic;
        } else {  // random
            std::size_t count = 0;
            if (n) {
                count = *n;
            } else {
                const auto counts = somm::class_counts(data);
                const std::size_t minority = counts.at(minority_label);
                const std::size_t rest = data.size() - minority;
                if (minority >= rest)
                    throw std::invalid_argument(
                        "minority class is not smaller than the rest; pass --n");
                count = rest - minority;
            }
            synthetic =
                somm::random_oversample(data, minority_label, count, seed).synthetic;
        }
        append_synthetic(data, synthetic, minority_label);
        somm::write_csv(data, out_path);
        std::cout << "wrote " << data.size() << " rows (" << synthetic.rows()
                  << " synthetic) to " << out_path << "\n";
        return 0;
    } catch (const somm::PartialResultError& e) {
        append_synthetic(data, e.partial.synthetic, minority_label);
        somm::write_csv(data, out_path);
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "partial output written to " << out_path << " ("
                  << e.partial.synthetic.rows() << " synthetic rows)\n";
        return kExitPartial;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}

int run_experiment(const std::string& spec_path, const std::string& out_dir,
                   somm::bench::TaskKind task) {
    try {
        std::ifstream in(spec_path);
        if (!in) {
            std::cerr << "error: cannot open " << spec_path << "\n";
            return kExitData;
        }
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "error: " << spec_path << " is not valid JSON: "
                      << e.what() << "\n";
            return kExitData;
        }
        const somm::bench::ExperimentSpec spec = somm::bench::parse_spec(j, task);

        if (task == somm::bench::TaskKind::Classification &&
            !spec.k_sweep.empty()) {
            const auto result = somm::bench::run_k_sweep(spec);
            somm::bench::write_k_sweep(result, spec, out_dir);
            std::cout << "wrote k-sweep reports (" << result.rows.size()
                      << " rows) to " << out_dir << "\n";
            return 0;
        }

        const auto result = task == somm::bench::TaskKind::Diversity
                                ? somm::bench::run_diversity(spec)
                                : somm::bench::run_classification(spec);
        somm::bench::write_results(result, spec, out_dir);
        std::cout << "wrote " << result.repeats.size() << " repeat rows to "
                  << out_dir << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}

int run_gen_synthetic(const std::string& family_name, std::size_t n_majority,
                      std::size_t n_minority, std::uint64_t seed,
                      const std::string& out_path) {
    try {
        somm::SyntheticSpec spec;
        spec.family = *somm::parse_family(family_name);
        spec.n_majority = n_majority;
        spec.n_minority = n_minority;
        spec.seed = seed;
        const somm::Dataset data = somm::generate(spec);
        somm::write_csv(data, out_path);
        std::cout << "wrote " << data.size() << " rows to " << out_path << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"somm: minority over-sampling and benchmark runner"};
    app.set_version_flag("--version", somm::kVersion);
    app.require_subcommand(1);

    // oversample
    auto* oversample = app.add_subcommand(
        "oversample", "Balance a CSV dataset by generating synthetic minority rows");
    std::string in_path, out_path, method = "somm", label_name;
    int k = 0;
    std::uint64_t seed = 0;
    std::optional<std::size_t> n_synthetic;
    oversample->add_option("--in", in_path, "input CSV (header, label last)")
        ->required();
    oversample->add_option("--out", out_path, "output CSV")->required();
    oversample
        ->add_option("--method", method, "sampler: somm, smote or random")
        ->check(CLI::IsMember({"somm", "smote", "random"}));
    oversample
        ->add_option("--minority-label", label_name,
                     "class label to over-sample, as written in the CSV")
        ->required();
    oversample->add_option(
        "--k", k, "neighbor count (default: 15 for somm, 5 for smote)");
    oversample->add_option("--seed", seed, "random seed");
    oversample->add_option(
        "--n", n_synthetic,
        "synthetic rows to generate (default: balance to the rest)");

    // diversity / classify
    std::string spec_path, out_dir;
    auto* diversity = app.add_subcommand(
        "diversity", "Coverage-diversity experiment from a JSON spec");
    diversity->add_option("--spec", spec_path, "experiment spec JSON")->required();
    diversity->add_option("--out-dir", out_dir, "report directory")->required();
    auto* classify = app.add_subcommand(
        "classify", "Classification experiment from a JSON spec");
    classify->add_option("--spec", spec_path, "experiment spec JSON")->required();
    classify->add_option("--out-dir", out_dir, "report directory")->required();

    // gen-synthetic
    auto* gen = app.add_subcommand("gen-synthetic",
                                   "Write one of the built-in 2-d benchmark datasets");
    std::string family = "sd1";
    std::size_t n_majority = 100, n_minority = 20;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--family", family, "sd1 .. sd6")
        ->check(CLI::IsMember({"sd1", "sd2", "sd3", "sd4", "sd5", "sd6"}));
    gen->add_option("--nmaj", n_majority, "majority rows")
        ->check(CLI::PositiveNumber);
    gen->add_option("--nmin", n_minority, "minority rows")
        ->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.get_name() << ": " << e.what() << "\n\n"
                  << app.help() << std::flush;
        return kExitUsage;
    }

    if (oversample->parsed())
        return run_oversample(in_path, out_path, method, label_name, k, seed,
                              n_synthetic);
    if (diversity->parsed())
        return run_experiment(spec_path, out_dir, somm::bench::TaskKind::Diversity);
    if (classify->parsed())
        return run_experiment(spec_path, out_dir,
                              somm::bench::TaskKind::Classification);
    if (gen->parsed())
        return run_gen_synthetic(family, n_majority, n_minority, gen_seed, gen_out);
    return kExitUsage;
}
