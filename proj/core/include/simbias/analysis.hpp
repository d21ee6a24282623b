#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simbias/bitstring.hpp"
#include "simbias/complexity.hpp"
#include "simbias/distribution.hpp"

namespace simbias::analysis {

using sampling::OutputDistribution;

// Slack allowed when checking points against a fitted bound.
inline constexpr double kBoundEpsilon = 1e-9;

enum class FitMode { apriori, envelope };
std::string to_string(FitMode mode);
FitMode parse_fit_mode(const std::string& text);

// Upper bound log2 P(x) <= -a * K(x) - b.
struct BoundFit {
    double a = 1.0;
    double b = 0.0;
    FitMode mode = FitMode::envelope;
    // Inputs of the slope estimate a = log2(distinct_outputs) / k_max.
    std::size_t distinct_outputs = 0;
    double k_max = 0.0;

    double log2_bound(double k) const noexcept { return -a * k - b; }
};

// apriori: a = log2(N_O) / K_max, b = 0.
// envelope: same a; b = min_x(-a K(x) - log2 P(x)), so the bound touches the
// highest point and no observed point lies above it.
// Throws DegenerateFit for a single output or when all outputs share one
// complexity value.
BoundFit fit_bound(const OutputDistribution& dist, FitMode mode);

struct ScatterPoint {
    BitString output;
    ComplexityValue k;
    double p = 0.0;
    double log2p = 0.0;
    double deficit = 0.0;  // log2_bound(k) - log2 p, bits
};

// One point per distinct output, in output order.
std::vector<ScatterPoint> scatter(const OutputDistribution& dist, const BoundFit& fit);

struct RankEntry {
    BitString output;
    double p = 0.0;
    std::size_t rank = 0;  // 1-based within its complexity group
};

// Outputs grouped by exact complexity, each group sorted by descending
// probability (ties by output string). Keyed by the complexity in bits.
std::map<double, std::vector<RankEntry>> rank_groups(const OutputDistribution& dist);

// ---------------------------------------------------------------------------
// Pairwise prediction: guess P(x) > P(y) iff K(x) < K(y).

enum class PairMode { weighted, uniform };
std::string to_string(PairMode mode);
PairMode parse_pair_mode(const std::string& text);

inline constexpr std::uint64_t kDefaultPairs = 10'000;

struct PairPredictionReport {
    PairMode mode = PairMode::weighted;
    std::uint64_t n_pairs = 0;
    std::uint64_t correct = 0;
    std::uint64_t ties = 0;              // equal complexity, prediction by coin
    std::uint64_t probability_ties = 0;  // equal probability, truth by coin
    double accuracy = 0.0;
    std::uint64_t seed = 0;
};

// Weighted mode draws each output in proportion to its count, redrawing the
// second when it repeats the first. Uniform mode draws two distinct outputs
// uniformly from the observed set. Complexity ties are predicted by a seeded
// fair coin; probability ties have their order decided by another coin.
// Throws InvalidArgument with fewer than 2 distinct outputs.
PairPredictionReport pair_prediction_experiment(const OutputDistribution& dist, PairMode mode,
                                                std::uint64_t n_pairs, std::uint64_t seed);

// Uniform mode over a partially sampled output set overestimates accuracy
// relative to uniform sampling over all possible outputs.
std::string pair_report_caveat(const PairPredictionReport& report, sampling::Mode dist_mode);

// ---------------------------------------------------------------------------
// Changes / ones against probability within one complexity group.

enum class Statistic { changes, ones };
std::string to_string(Statistic s);
Statistic parse_statistic(const std::string& text);

enum class CorrelationStatus { ok, insufficient_variance };

struct CorrelationReport {
    double k = 0.0;
    Statistic statistic = Statistic::changes;
    CorrelationStatus status = CorrelationStatus::ok;
    std::optional<double> r;
    std::optional<double> p_value;
    std::size_t n = 0;
};

// Second-lowest distinct complexity among the observed outputs. Throws
// InsufficientData when fewer than two complexity values exist.
double second_lowest_k(const OutputDistribution& dist);

// Pearson r between the statistic and log2 P over outputs whose complexity
// equals k (within 1e-9). k defaults to second_lowest_k. Throws
// InsufficientData when the group has fewer than 3 members.
CorrelationReport correlation_report(const OutputDistribution& dist, std::optional<double> k, Statistic statistic);

// ---------------------------------------------------------------------------
// Mass below the bound.

struct MassPoint {
    double delta = 0.0;
    double mass = 0.0;
};

struct MassProfile {
    std::vector<MassPoint> points;
    // Smallest c >= 0 with mass(delta) <= 2^(-delta + 1 + c) on the grid.
    double c = 0.0;
};

// mass(delta) = sum of P(x) over outputs with deficit >= delta. Requires an
// envelope fit (InvalidArgument otherwise).
MassProfile mass_deficit_profile(const OutputDistribution& dist, const BoundFit& fit, std::span<const double> deltas);

// Integer grid 0, 1, ..., ceil(max deficit).
std::vector<double> default_delta_grid(const OutputDistribution& dist, const BoundFit& fit);

// Low-complexity, low-probability outputs: deficit >= delta_threshold and
// complexity at or below the k_quantile (nearest-rank) of the per-output
// complexities. Sorted by descending deficit. Requires an envelope fit.
std::vector<BitString> lklp_select(const OutputDistribution& dist, const BoundFit& fit, double delta_threshold,
                                   double k_quantile);

}  // namespace simbias::analysis
