#pragma once

#include <string>
#include <vector>

#include "simbias/analysis.hpp"
#include "simbias/config.hpp"
#include "simbias/distribution.hpp"

namespace simbias::pipeline {

// ---------------------------------------------------------------------------
// Artifact renderers. Every artifact carries the config digest that produced
// it; JSON reports also carry the map digest.

struct ArtifactContext {
    std::string config_digest;
    std::string map_digest;
    sampling::Mode mode = sampling::Mode::sampled;
};

ArtifactContext context_of(const sampling::OutputDistribution& dist);

std::string scatter_csv(const std::vector<analysis::ScatterPoint>& points, const ArtifactContext& ctx);
std::string rank_csv(const std::map<double, std::vector<analysis::RankEntry>>& groups, const ArtifactContext& ctx);
std::string mass_profile_csv(const analysis::MassProfile& profile, const ArtifactContext& ctx);
std::string lklp_text(const std::vector<BitString>& outputs, const analysis::BoundFit& fit,
                      double delta_threshold, double k_quantile, const ArtifactContext& ctx);

std::string fit_json(const analysis::BoundFit& fit, const ArtifactContext& ctx);
std::string pair_report_json(const analysis::PairPredictionReport& report, const ArtifactContext& ctx);
std::string correlation_json(const analysis::CorrelationReport& report, const ArtifactContext& ctx);
// Report for a statistic whose group could not be analysed.
std::string correlation_unavailable_json(analysis::Statistic statistic, const std::string& reason,
                                         const ArtifactContext& ctx);

analysis::BoundFit parse_fit_json(const std::string& text, std::string* config_digest = nullptr);

// Throws InvalidArgument when non-empty digests disagree; artifacts from
// different configs must not be combined.
void require_same_config(const std::vector<std::string>& digests);

// ---------------------------------------------------------------------------

struct RunOptions {
    unsigned threads = 0;       // 0 = hardware concurrency
    std::string output_override;  // replaces config.output.directory when set
};

struct Artifact {
    std::string name;    // file name inside the output directory
    std::string sha256;
};

struct RunResult {
    std::string directory;
    std::string config_digest;
    std::vector<Artifact> artifacts;  // sorted by name; excludes the manifest
};

// sample|enumerate -> fit -> scatter, rank, pairs, correlations, mass
// profile, LKLP -> manifest. On failure every file written so far is removed
// and the error is rethrown.
RunResult run_pipeline(const config::ExperimentConfig& config, const RunOptions& options = {});

// Produces the distribution described by the config's map and sampling sections.
sampling::OutputDistribution build_distribution(const config::ExperimentConfig& config, unsigned threads);

}  // namespace simbias::pipeline
