#include "simbias/pipeline.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "simbias/digest.hpp"
#include "simbias/error.hpp"
#include "simbias/sampling.hpp"

namespace simbias::pipeline {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

ArtifactContext context_of(const sampling::OutputDistribution& dist) {
    return {dist.provenance().config_digest, dist.provenance().map_digest, dist.mode()};
}

namespace {

std::string header(const ArtifactContext& ctx) {
    return fmt::format("# config={} map={} mode={}\n", ctx.config_digest.empty() ? "none" : ctx.config_digest,
                       ctx.map_digest, sampling::to_string(ctx.mode));
}

ordered_json json_header(const char* report, const ArtifactContext& ctx) {
    ordered_json j;
    j["report"] = report;
    j["config_digest"] = ctx.config_digest;
    j["map_digest"] = ctx.map_digest;
    j["distribution_mode"] = sampling::to_string(ctx.mode);
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string scatter_csv(const std::vector<analysis::ScatterPoint>& points, const ArtifactContext& ctx) {
    std::string out = header(ctx) + "output,k,log2p,deficit\n";
    for (const auto& pt : points) {
        out += fmt::format("{},{},{},{}\n", pt.output.str(), pt.k.bits(), pt.log2p, pt.deficit);
    }
    return out;
}

std::string rank_csv(const std::map<double, std::vector<analysis::RankEntry>>& groups, const ArtifactContext& ctx) {
    std::string out = header(ctx) + "k,rank,log2p\n";
    for (const auto& [k, group] : groups) {
        for (const auto& e : group) out += fmt::format("{},{},{}\n", k, e.rank, std::log2(e.p));
    }
    return out;
}

std::string mass_profile_csv(const analysis::MassProfile& profile, const ArtifactContext& ctx) {
    std::string out = header(ctx) + fmt::format("# c={}\n", profile.c) + "delta,mass\n";
    for (const auto& pt : profile.points) out += fmt::format("{},{}\n", pt.delta, pt.mass);
    return out;
}

std::string lklp_text(const std::vector<BitString>& outputs, const analysis::BoundFit& fit, double delta_threshold,
                      double k_quantile, const ArtifactContext& ctx) {
    std::string out = header(ctx);
    out += fmt::format("# a={} b={} delta_threshold={} k_quantile={} count={}\n", fit.a, fit.b, delta_threshold,
                       k_quantile, outputs.size());
    for (const auto& x : outputs) out += x.str() + "\n";
    return out;
}

std::string fit_json(const analysis::BoundFit& fit, const ArtifactContext& ctx) {
    auto j = json_header("bound_fit", ctx);
    j["fit_mode"] = analysis::to_string(fit.mode);
    j["a"] = fit.a;
    j["b"] = fit.b;
    j["distinct_outputs"] = fit.distinct_outputs;
    j["k_max"] = fit.k_max;
    j["note"] = "slope a = log2(distinct outputs) / max complexity; one reading of estimating a from the number of "
                "possible outputs";
    return dump(j);
}

std::string pair_report_json(const analysis::PairPredictionReport& report, const ArtifactContext& ctx) {
    auto j = json_header("pair_prediction", ctx);
    j["sampling_mode"] = analysis::to_string(report.mode);
    j["n_pairs"] = report.n_pairs;
    j["correct"] = report.correct;
    j["ties"] = report.ties;
    j["probability_ties"] = report.probability_ties;
    j["accuracy"] = report.accuracy;
    j["seed"] = report.seed;
    j["caveat"] = analysis::pair_report_caveat(report, ctx.mode);
    return dump(j);
}

std::string correlation_json(const analysis::CorrelationReport& report, const ArtifactContext& ctx) {
    auto j = json_header("correlation", ctx);
    j["statistic"] = analysis::to_string(report.statistic);
    j["k"] = report.k;
    j["status"] = report.status == analysis::CorrelationStatus::ok ? "ok" : "insufficient_variance";
    j["r"] = report.r ? ordered_json(*report.r) : ordered_json(nullptr);
    j["p_value"] = report.p_value ? ordered_json(*report.p_value) : ordered_json(nullptr);
    j["n"] = report.n;
    return dump(j);
}

std::string correlation_unavailable_json(analysis::Statistic statistic, const std::string& reason,
                                         const ArtifactContext& ctx) {
    auto j = json_header("correlation", ctx);
    j["statistic"] = analysis::to_string(statistic);
    j["status"] = "insufficient_data";
    j["reason"] = reason;
    return dump(j);
}

analysis::BoundFit parse_fit_json(const std::string& text, std::string* config_digest) {
    try {
        const auto j = nlohmann::json::parse(text);
        analysis::BoundFit fit;
        fit.mode = analysis::parse_fit_mode(j.at("fit_mode").get<std::string>());
        fit.a = j.at("a").get<double>();
        fit.b = j.at("b").get<double>();
        fit.distinct_outputs = j.at("distinct_outputs").get<std::size_t>();
        fit.k_max = j.at("k_max").get<double>();
        if (config_digest) *config_digest = j.value("config_digest", std::string{});
        return fit;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("analysis", std::string("malformed bound-fit record: ") + e.what());
    }
}

void require_same_config(const std::vector<std::string>& digests) {
    std::string seen;
    for (const auto& d : digests) {
        if (d.empty()) continue;
        if (seen.empty()) {
            seen = d;
        } else if (d != seen) {
            throw InvalidArgument("cli", "artifacts come from different configs (" + seen + " vs " + d + ")");
        }
    }
}

sampling::OutputDistribution build_distribution(const config::ExperimentConfig& config, unsigned threads) {
    const auto map = config::build_map(config);
    const auto& s = config.sampling;
    auto dist = s.mode == config::SamplingMode::enumerate
                    ? sampling::enumerate_distribution(map, s.budget, threads)
                    : sampling::sample_distribution(map, s.n_samples, s.master_seed, s.n_shards, threads);
    return dist.with_config_digest(config::config_digest(config));
}

namespace {

class ArtifactWriter {
public:
    explicit ArtifactWriter(fs::path dir) : dir_(std::move(dir)) {}

    ~ArtifactWriter() {
        if (committed_) return;
        std::error_code ec;
        for (const auto& f : written_) fs::remove(f, ec);
    }

    void write(const std::string& name, const std::string& contents) {
        const auto path = dir_ / name;
        written_.push_back(path);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cli", "cannot write " + path.string());
        out << contents;
        out.close();
        if (!out) throw Error("cli", "write failed: " + path.string());
        artifacts_.push_back({name, sha256_hex(contents)});
    }

    std::vector<Artifact> commit() {
        committed_ = true;
        auto out = artifacts_;
        std::sort(out.begin(), out.end(), [](const Artifact& a, const Artifact& b) { return a.name < b.name; });
        return out;
    }

    const std::vector<Artifact>& artifacts() const { return artifacts_; }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
    std::vector<Artifact> artifacts_;
    bool committed_ = false;
};

}  // namespace

RunResult run_pipeline(const config::ExperimentConfig& config, const RunOptions& options) {
    RunResult result;
    result.config_digest = config::config_digest(config);
    const fs::path dir = options.output_override.empty() ? fs::path(config.output.directory)
                                                         : fs::path(options.output_override);
    result.directory = dir.string();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cli", "cannot create output directory " + dir.string() + ": " + ec.message());

    ArtifactWriter writer(dir);
    const auto& a = config.analysis;
    const bool csv = config.output.csv;
    const bool json = config.output.json;

    const auto dist = build_distribution(config, options.threads);
    const auto ctx = context_of(dist);
    {
        std::ostringstream buffer;
        sampling::write_distribution(buffer, dist);
        writer.write("distribution.txt", buffer.str());
    }

    const auto fit = analysis::fit_bound(dist, a.fit_mode);
    if (json) writer.write("fit.json", fit_json(fit, ctx));
    if (csv) {
        writer.write("scatter.csv", scatter_csv(analysis::scatter(dist, fit), ctx));
        writer.write("rank.csv", rank_csv(analysis::rank_groups(dist), ctx));
    }

    for (const auto mode : a.pair_modes) {
        const auto report = analysis::pair_prediction_experiment(dist, mode, a.n_pairs, a.pair_seed);
        if (json) writer.write("pairs_" + analysis::to_string(mode) + ".json", pair_report_json(report, ctx));
    }

    for (const auto stat : a.correlation_stats) {
        std::string body;
        try {
            body = correlation_json(analysis::correlation_report(dist, a.correlation_k, stat), ctx);
        } catch (const InsufficientData& e) {
            body = correlation_unavailable_json(stat, e.what(), ctx);
        }
        if (json) writer.write("correlation_" + analysis::to_string(stat) + ".json", body);
    }

    // Mass profile and LKLP selection are defined against the envelope.
    const auto envelope = a.fit_mode == analysis::FitMode::envelope
                              ? fit
                              : analysis::fit_bound(dist, analysis::FitMode::envelope);
    const auto deltas = a.deltas ? *a.deltas : analysis::default_delta_grid(dist, envelope);
    if (csv) {
        writer.write("mass_profile.csv",
                     mass_profile_csv(analysis::mass_deficit_profile(dist, envelope, deltas), ctx));
    }
    writer.write("lklp.txt", lklp_text(analysis::lklp_select(dist, envelope, a.lklp_delta, a.lklp_quantile),
                                       envelope, a.lklp_delta, a.lklp_quantile, ctx));

    std::string manifest = fmt::format("# config={}\n", result.config_digest);
    auto sorted = writer.artifacts();
    std::sort(sorted.begin(), sorted.end(), [](const Artifact& x, const Artifact& y) { return x.name < y.name; });
    for (const auto& art : sorted) manifest += art.sha256 + "  " + art.name + "\n";
    writer.write("manifest.txt", manifest);

    result.artifacts = writer.commit();
    std::erase_if(result.artifacts, [](const Artifact& art) { return art.name == "manifest.txt"; });
    return result;
}

}  // namespace simbias::pipeline
