// simbias: sampling, fitting and prediction experiments on input-output maps.
//
// Exit codes: 0 success, 2 usage or config error, 3 runtime error. Errors
// are printed to stderr as lines starting with "error:".

#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "simbias/analysis.hpp"
#include "simbias/config.hpp"
#include "simbias/error.hpp"
#include "simbias/pipeline.hpp"
#include "simbias/predictor.hpp"
#include "simbias/sampling.hpp"

namespace {

using namespace simbias;

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

config::ExperimentConfig load_or_usage(const std::string& path) {
    auto result = config::load_config(path);
    if (!result.ok()) {
        std::cerr << config::format_errors(result.errors);
        throw UsageError("invalid config: " + path);
    }
    return *result.config;
}

void write_file(const std::string& path, const std::string& contents) {
    if (path.empty() || path == "-") {
        std::cout << contents;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cli", "cannot write " + path);
    out << contents;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cli", "cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::optional<double> parse_k(const std::string& text) {
    if (text == "auto") return std::nullopt;
    try {
        std::size_t used = 0;
        const double k = std::stod(text, &used);
        if (used != text.size() || k < 0.0) throw std::invalid_argument(text);
        return k;
    } catch (const std::exception&) {
        throw UsageError("--k must be 'auto' or a non-negative number, got \"" + text + "\"");
    }
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            grid.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw UsageError("--deltas: not a number: \"" + item + "\"");
        }
    }
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simplicity-bias experiments on input-output maps"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "simbias 0.1.0");

    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads for sampling/enumeration (0 = all cores)");

    // sample
    auto* sample = app.add_subcommand("sample", "Monte Carlo output distribution of a map");
    std::string map_config, out_path;
    std::uint64_t n_samples = 1'000'000, seed = 0;
    std::uint32_t shards = 1;
    sample->add_option("--map", map_config, "Config file with a [map] section")->required()->check(CLI::ExistingFile);
    sample->add_option("--n", n_samples, "Number of draws")->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "Master seed");
    sample->add_option("--shards", shards, "Shard count (does not change the result)")->check(CLI::PositiveNumber);
    sample->add_option("--out", out_path, "Distribution file (default stdout)");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "Exact output distribution over the full input space");
    std::uint64_t budget = sampling::kDefaultEnumerationBudget;
    enumerate->add_option("--map", map_config, "Config file with a [map] section")->required()->check(CLI::ExistingFile);
    enumerate->add_option("--budget", budget, "Maximum number of inputs");
    enumerate->add_option("--out", out_path, "Distribution file (default stdout)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Bound fit, scatter, rank groups, mass profile and LKLP list");
    std::string dist_path, fit_path, out_dir = ".", fit_mode = "envelope", deltas_text;
    double lklp_delta = 5.0, lklp_quantile = 0.5;
    analyze->add_option("--dist", dist_path, "Distribution file")->required()->check(CLI::ExistingFile);
    analyze->add_option("--out-dir", out_dir, "Directory for fit.json, scatter.csv, rank.csv, ...");
    analyze->add_option("--fit-mode", fit_mode, "apriori | envelope")->check(CLI::IsMember({"apriori", "envelope"}));
    analyze->add_option("--fit", fit_path, "Reuse a bound-fit record instead of fitting")->check(CLI::ExistingFile);
    analyze->add_option("--deltas", deltas_text, "Comma-separated deficit grid (default 0..ceil(max deficit))");
    analyze->add_option("--lklp-delta", lklp_delta, "LKLP deficit threshold, bits");
    analyze->add_option("--lklp-quantile", lklp_quantile, "LKLP complexity quantile");

    // pairs
    auto* pairs = app.add_subcommand("pairs", "Pairwise probability prediction from complexity");
    std::string pair_mode = "weighted";
    std::uint64_t n_pairs = analysis::kDefaultPairs, pair_seed = 1;
    pairs->add_option("--dist", dist_path, "Distribution file")->required()->check(CLI::ExistingFile);
    pairs->add_option("--mode", pair_mode, "weighted | uniform")->check(CLI::IsMember({"weighted", "uniform"}));
    pairs->add_option("--n", n_pairs, "Number of pairs")->check(CLI::PositiveNumber);
    pairs->add_option("--seed", pair_seed, "Experiment seed");
    pairs->add_option("--out", out_path, "Report file (default stdout)");

    // correlate
    auto* correlate = app.add_subcommand("correlate", "Changes/ones vs log2 P within one complexity group");
    std::string stat = "changes", k_text = "auto";
    correlate->add_option("--dist", dist_path, "Distribution file")->required()->check(CLI::ExistingFile);
    correlate->add_option("--stat", stat, "changes | ones")->check(CLI::IsMember({"changes", "ones"}));
    correlate->add_option("--k", k_text, "Complexity group, or 'auto' for the second-lowest");
    correlate->add_option("--out", out_path, "Report file (default stdout)");

    // predict
    auto* predict = app.add_subcommand("predict", "Complexity-based next-bit forecast and greedy extrapolation");
    std::string history;
    std::size_t horizon = 1;
    predict->add_option("--history", history, "Observed bits")->required();
    predict->add_option("--horizon", horizon, "Bits to extrapolate")->check(CLI::PositiveNumber);

    // rank
    auto* rank = app.add_subcommand("rank", "Order candidate strings by complexity (guessing order)");
    std::string candidates_path;
    rank->add_option("--candidates", candidates_path, "One bit string per line")->required()->check(CLI::ExistingFile);

    // run
    auto* run = app.add_subcommand("run", "Full pipeline from an experiment config");
    std::string config_path;
    run->add_option("--config", config_path, "Experiment config")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Override the config's output directory");

    // validate
    auto* validate = app.add_subcommand("validate", "Check a config without running it");
    validate->add_option("--config", config_path, "Experiment config")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (sample->parsed() || enumerate->parsed()) {
            auto cfg = load_or_usage(map_config);
            if (sample->parsed()) {
                cfg.sampling.mode = config::SamplingMode::sample;
                cfg.sampling.n_samples = n_samples;
                cfg.sampling.master_seed = seed;
                cfg.sampling.n_shards = shards;
            } else {
                if (std::holds_alternative<maps::PolynomialSpec>(cfg.map)) {
                    throw UsageError("the polynomial map cannot be enumerated");
                }
                cfg.sampling.mode = config::SamplingMode::enumerate;
                cfg.sampling.budget = budget;
            }
            const auto dist = pipeline::build_distribution(cfg, threads);
            std::ostringstream buffer;
            sampling::write_distribution(buffer, dist);
            write_file(out_path, buffer.str());
        } else if (analyze->parsed()) {
            const auto dist = sampling::load_distribution(dist_path);
            const auto ctx = pipeline::context_of(dist);
            analysis::BoundFit fit;
            if (!fit_path.empty()) {
                std::string fit_config;
                fit = pipeline::parse_fit_json(read_file(fit_path), &fit_config);
                pipeline::require_same_config({ctx.config_digest, fit_config});
            } else {
                fit = analysis::fit_bound(dist, analysis::parse_fit_mode(fit_mode));
            }
            const auto envelope =
                fit.mode == analysis::FitMode::envelope ? fit : analysis::fit_bound(dist, analysis::FitMode::envelope);
            const auto grid = deltas_text.empty() ? analysis::default_delta_grid(dist, envelope) : parse_grid(deltas_text);
            std::filesystem::create_directories(out_dir);
            const auto at = [&](const char* name) { return (std::filesystem::path(out_dir) / name).string(); };
            write_file(at("fit.json"), pipeline::fit_json(fit, ctx));
            write_file(at("scatter.csv"), pipeline::scatter_csv(analysis::scatter(dist, fit), ctx));
            write_file(at("rank.csv"), pipeline::rank_csv(analysis::rank_groups(dist), ctx));
            write_file(at("mass_profile.csv"),
                       pipeline::mass_profile_csv(analysis::mass_deficit_profile(dist, envelope, grid), ctx));
            write_file(at("lklp.txt"),
                       pipeline::lklp_text(analysis::lklp_select(dist, envelope, lklp_delta, lklp_quantile), envelope,
                                           lklp_delta, lklp_quantile, ctx));
            fmt::print("a={} b={} fit_mode={} outputs={}\n", fit.a, fit.b, analysis::to_string(fit.mode),
                       dist.distinct());
        } else if (pairs->parsed()) {
            const auto dist = sampling::load_distribution(dist_path);
            const auto report =
                analysis::pair_prediction_experiment(dist, analysis::parse_pair_mode(pair_mode), n_pairs, pair_seed);
            write_file(out_path, pipeline::pair_report_json(report, pipeline::context_of(dist)));
        } else if (correlate->parsed()) {
            const auto dist = sampling::load_distribution(dist_path);
            const auto report = analysis::correlation_report(dist, parse_k(k_text), analysis::parse_statistic(stat));
            write_file(out_path, pipeline::correlation_json(report, pipeline::context_of(dist)));
        } else if (predict->parsed()) {
            BitString h = [&] {
                try {
                    return BitString(history);
                } catch (const InvalidArgument& e) {
                    throw UsageError(std::string("--history: ") + e.what());
                }
            }();
            const auto f = predict::next_bit(h);
            const auto ext = predict::extrapolate(h, horizon);
            fmt::print("p0={} p1={} k0={} k1={}\n", f.p0, f.p1, f.k0.bits(), f.k1.bits());
            fmt::print("extrapolation={}\n", ext.str());
        } else if (rank->parsed()) {
            std::vector<BitString> candidates;
            std::istringstream in(read_file(candidates_path));
            std::string line;
            std::size_t line_no = 0;
            while (std::getline(in, line)) {
                ++line_no;
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.empty()) continue;
                try {
                    candidates.emplace_back(line);
                } catch (const InvalidArgument& e) {
                    throw UsageError(fmt::format("{}:{}: {}", candidates_path, line_no, e.what()));
                }
            }
            for (const auto& c : predict::guess_order(std::move(candidates))) {
                fmt::print("{}\t{}\n", c.str(), ktilde(c).bits());
            }
        } else if (run->parsed()) {
            const auto cfg = load_or_usage(config_path);
            pipeline::RunOptions options;
            options.threads = threads;
            if (!run->get_option("--out")->empty()) options.output_override = out_dir;
            const auto result = pipeline::run_pipeline(cfg, options);
            fmt::print("config={} artifacts={} dir={}\n", result.config_digest, result.artifacts.size() + 1,
                       result.directory);
        } else if (validate->parsed()) {
            const auto errors = config::validate_config(config_path);
            if (!errors.empty()) {
                std::cerr << config::format_errors(errors);
                return kExitUsage;
            }
            fmt::print("ok\n");
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const simbias::Error& e) {
        std::cerr << "error: " << e.module() << ": " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
