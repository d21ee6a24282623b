#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "simbias/analysis.hpp"
#include "simbias/maps.hpp"

namespace simbias::config {

struct FstConfig {
    std::size_t states = 5;
    std::size_t input_length = 30;
    std::uint64_t fst_seed = 0;  // seed of the random transition table

    friend bool operator==(const FstConfig&, const FstConfig&) = default;
};

struct TimeSeriesConfig {
    std::string file;  // relative paths resolve against the config file's directory
    std::size_t window_length = 16;
    std::size_t stride = 16;
    char delimiter = ',';
    bool skip_header = false;

    friend bool operator==(const TimeSeriesConfig&, const TimeSeriesConfig&) = default;
};

using MapConfig = std::variant<FstConfig, maps::PolynomialSpec, maps::RnaSpec, maps::BernoulliSpec, TimeSeriesConfig>;

enum class SamplingMode { sample, enumerate };

struct SamplingConfig {
    SamplingMode mode = SamplingMode::sample;
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t master_seed = 0;
    std::uint32_t n_shards = 1;
    std::uint64_t budget = std::uint64_t{1} << 26;

    friend bool operator==(const SamplingConfig&, const SamplingConfig&) = default;
};

struct AnalysisConfig {
    analysis::FitMode fit_mode = analysis::FitMode::envelope;
    std::vector<analysis::PairMode> pair_modes{analysis::PairMode::weighted, analysis::PairMode::uniform};
    std::uint64_t n_pairs = analysis::kDefaultPairs;
    std::uint64_t pair_seed = 1;
    std::vector<analysis::Statistic> correlation_stats{analysis::Statistic::changes, analysis::Statistic::ones};
    std::optional<double> correlation_k;  // nullopt: second-lowest complexity
    std::optional<std::vector<double>> deltas;  // nullopt: 0..ceil(max deficit)
    double lklp_delta = 5.0;
    double lklp_quantile = 0.5;

    friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

struct OutputConfig {
    std::string directory = "simbias-out";
    bool csv = true;
    bool json = true;

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ExperimentConfig {
    MapConfig map = FstConfig{};
    SamplingConfig sampling;
    AnalysisConfig analysis;
    OutputConfig output;
    // Directory of the file the config was read from; not serialized.
    std::string base_dir;

    bool operator==(const ExperimentConfig& o) const {
        return map == o.map && sampling == o.sampling && analysis == o.analysis && output == o.output;
    }
};

struct FieldError {
    std::string path;  // e.g. "map.p", "sampling.n_shards"
    std::string message;
};

struct ParseResult {
    std::optional<ExperimentConfig> config;
    std::vector<FieldError> errors;

    bool ok() const noexcept { return config.has_value() && errors.empty(); }
};

// INI text with [map], [sampling], [analysis] and [output] sections; lines
// starting with ';' are comments. Every problem is reported, not just the first.
ParseResult parse_config(const std::string& text);

// Reads and parses `path`. Throws simbias::Error if the file is unreadable.
ParseResult load_config(const std::string& path);

// Full validation without execution.
std::vector<FieldError> validate_config(const std::string& path);

// Canonical text; parse_config(serialize_config(c)).config == c.
std::string serialize_config(const ExperimentConfig& config);

// Short digest of serialize_config(config), ignoring sampling.n_shards.
std::string config_digest(const ExperimentConfig& config);

// Builds the runtime map; loads time-series data.
maps::InputOutputMap build_map(const ExperimentConfig& config);

std::string format_errors(const std::vector<FieldError>& errors);

}  // namespace simbias::config
