// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "simbias/analysis.hpp"
#include "simbias/complexity.hpp"
#include "simbias/config.hpp"
#include "simbias/maps.hpp"
#include "simbias/pipeline.hpp"
#include "simbias/rna.hpp"
#include "simbias/rng.hpp"
#include "simbias/sampling.hpp"
#include "simbias/stats.hpp"

namespace {

using namespace simbias;
namespace fs = std::filesystem;

// Pinned tolerances and limits.
constexpr double kLz76Seconds = 10.0;
constexpr double kNussinovSeconds = 120.0;
constexpr double kPolynomialSeconds = 300.0;
constexpr double kBernoulliExactTol = 1e-12;
constexpr double kBernoulliSigmas = 4.0;
constexpr double kBernoulliCoverage = 0.99;
constexpr double kNullLow = 0.48;
constexpr double kNullHigh = 0.52;
constexpr double kPolyCorrMax = -0.7;
constexpr double kPolyWeightedLow = 0.70;
constexpr double kPolyWeightedHigh = 0.92;
constexpr double kPairFloor = 0.55;
constexpr double kFstWeightedFloor = 0.65;
constexpr double kCorrAlpha = 0.05;
constexpr std::size_t kCorrMinGroup = 10;
constexpr double kMassTol = 1e-9;
constexpr double kMassDecayPerBit = 0.5;

constexpr std::size_t kFstStates = 5;
constexpr std::size_t kFstLength = 16;
constexpr std::uint64_t kFstSeed = 0;
constexpr std::uint64_t kPairSeed = 1;
constexpr std::uint64_t kPairs = 10'000;

struct MassPointRef {
    double delta = 0.0;
    double mass = 0.0;
};

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string bits_of(std::uint64_t v, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t j = 0; j < n; ++j) s[j] = ((v >> (n - 1 - j)) & 1U) ? '1' : '0';
    return s;
}

const sampling::OutputDistribution& fst_run(std::uint64_t fst_seed) {
    static std::map<std::uint64_t, sampling::OutputDistribution> cache;
    auto it = cache.find(fst_seed);
    if (it == cache.end()) {
        const maps::InputOutputMap m(maps::fst_random(kFstStates, kFstLength, fst_seed));
        it = cache.emplace(fst_seed, sampling::enumerate_distribution(m)).first;
    }
    return it->second;
}

Outcome lz76_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t checked = 0, mismatches = 0;
    for (std::size_t n = 1; n <= 12; ++n) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            const auto s = bits_of(v, n);
            mismatches += lz76_phrase_count(s) != oracle::lz76_words(s);
            ++checked;
        }
    }
    const double t = seconds_since(t0);
    return {checked == 8190 && mismatches == 0 && t < kLz76Seconds,
            fmt::format("{} strings, {} mismatches, {:.2f} s (limit {} s)", checked, mismatches, t, kLz76Seconds)};
}

Outcome estimator_identities() {
    SplitMix64 rng(20240601);
    std::size_t violations = 0;
    const double floor30 = ktilde(BitString::zeros(30)).bits();
    for (int i = 0; i < 10'000; ++i) {
        std::string s(30, '0');
        for (auto& c : s) c = fair_coin(rng) ? '1' : '0';
        const BitString x(s);
        const double k = ktilde(x).bits();
        violations += k != ktilde(x.reversed()).bits();
        violations += k != ktilde(x.complemented()).bits();
        violations += k < floor30;
    }
    // Per-length minimum, exhaustively for lengths 1-16.
    std::size_t min_violations = 0;
    for (std::size_t n = 1; n <= 16; ++n) {
        const double floor = ktilde(BitString::zeros(n)).bits();
        if (ktilde(BitString::ones(n)).bits() != floor) ++min_violations;
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
            min_violations += ktilde(BitString(bits_of(v, n))).bits() < floor;
    }
    return {violations == 0 && min_violations == 0,
            fmt::format("10000 random length-30 strings, {} identity violations; {} strings below the uniform "
                        "minimum (lengths 1-16 exhaustive)",
                        violations, min_violations)};
}

Outcome nussinov_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    static constexpr char kNuc[] = "ACGU";
    constexpr std::size_t kLoop = 3;
    std::size_t mismatches = 0, invalid = 0, checked = 0;
    auto check = [&](const std::string& seq) {
        const auto s = maps::nussinov_fold(seq, kLoop);
        invalid += !maps::is_valid_structure(seq, s, kLoop);
        mismatches += maps::pair_count(s) != oracle::max_pairs_brute_force(seq, kLoop);
        ++checked;
    };
    std::string seq(8, 'A');
    for (std::uint32_t v = 0; v < (1U << 16); ++v) {
        for (int j = 0; j < 8; ++j) seq[j] = kNuc[(v >> (2 * j)) & 3];
        check(seq);
    }
    for (std::uint64_t i = 0; i < 1000; ++i) check(maps::random_rna_sequence(12, derive_seed(12, i)));
    const double t = seconds_since(t0);
    return {mismatches == 0 && invalid == 0 && checked == 66536 && t < kNussinovSeconds,
            fmt::format("{} sequences, {} pair-count mismatches, {} invalid structures, {:.1f} s (limit {} s)", checked,
                        mismatches, invalid, t, kNussinovSeconds)};
}

Outcome bernoulli_exactness() {
    double worst = 0.0;
    for (double p : {0.5, 0.3, 0.1, 0.9, 0.01}) {
        const maps::BernoulliSpec spec{8, p};
        const auto d = sampling::enumerate_distribution(maps::InputOutputMap(spec));
        for (std::uint64_t v = 0; v < 256; ++v) {
            const BitString x(bits_of(v, 8));
            worst = std::max(worst, std::abs(d.probability(x) - maps::bernoulli_exact(spec, x)));
        }
    }
    const maps::BernoulliSpec spec{8, 0.3};
    constexpr std::uint64_t n = 1'000'000;
    const auto sampled = sampling::sample_distribution(maps::InputOutputMap(spec), n, 4);
    std::size_t within = 0;
    for (std::uint64_t v = 0; v < 256; ++v) {
        const BitString x(bits_of(v, 8));
        const double px = maps::bernoulli_exact(spec, x);
        within += std::abs(sampled.probability(x) - px) <= kBernoulliSigmas * std::sqrt(px * (1 - px) / n);
    }
    const double coverage = within / 256.0;
    return {worst <= kBernoulliExactTol && coverage >= kBernoulliCoverage,
            fmt::format("max enumeration error {:.2e} over p in {{0.5,0.3,0.1,0.9,0.01}}; p=0.3 sampled 1e6: {}/256 "
                        "strings within 4 sigma",
                        worst, within)};
}

Outcome uniform_null() {
    const auto d = sampling::enumerate_distribution(maps::InputOutputMap(maps::BernoulliSpec{8, 0.5}));
    const auto w = analysis::pair_prediction_experiment(d, analysis::PairMode::weighted, kPairs, kPairSeed);
    const auto u = analysis::pair_prediction_experiment(d, analysis::PairMode::uniform, kPairs, kPairSeed);
    auto in_band = [](double a) { return a >= kNullLow && a <= kNullHigh; };
    return {in_band(w.accuracy) && in_band(u.accuracy),
            fmt::format("weighted {:.4f}, uniform {:.4f} (band [{}, {}])", w.accuracy, u.accuracy, kNullLow,
                        kNullHigh)};
}

Outcome polynomial_bias() {
    const auto t0 = std::chrono::steady_clock::now();
    const maps::InputOutputMap m(maps::PolynomialSpec{14, 1.0, 17});
    const auto d = sampling::sample_distribution(m, 100'000, 7, 8);
    const auto fit = analysis::fit_bound(d, analysis::FitMode::envelope);
    std::size_t above = 0;
    std::map<double, double> max_log2p;
    for (const auto& pt : analysis::scatter(d, fit)) {
        above += pt.deficit < -analysis::kBoundEpsilon;
        auto [it, fresh] = max_log2p.emplace(pt.k.bits(), pt.log2p);
        if (!fresh) it->second = std::max(it->second, pt.log2p);
    }
    std::vector<double> ks, ps;
    for (const auto& [k, lp] : max_log2p) {
        ks.push_back(k);
        ps.push_back(lp);
    }
    const auto corr = stats::pearson(ks, ps);
    const auto w = analysis::pair_prediction_experiment(d, analysis::PairMode::weighted, kPairs, kPairSeed);
    const auto u = analysis::pair_prediction_experiment(d, analysis::PairMode::uniform, kPairs, kPairSeed);
    const double t = seconds_since(t0);
    const bool ok = above == 0 && corr && corr->r <= kPolyCorrMax && w.accuracy > u.accuracy &&
                    u.accuracy > kPairFloor && w.accuracy >= kPolyWeightedLow && w.accuracy <= kPolyWeightedHigh &&
                    t < kPolynomialSeconds;
    return {ok, fmt::format("{} outputs, {} above bound, r(K, log2 max P) = {:.3f}, weighted {:.4f} > uniform {:.4f}, "
                            "{:.1f} s (limit {} s)",
                            d.distinct(), above, corr ? corr->r : NAN, w.accuracy, u.accuracy, t, kPolynomialSeconds)};
}

Outcome fst_orderings() {
    const auto& d = fst_run(kFstSeed);
    const auto w = analysis::pair_prediction_experiment(d, analysis::PairMode::weighted, kPairs, kPairSeed);
    const auto u = analysis::pair_prediction_experiment(d, analysis::PairMode::uniform, kPairs, kPairSeed);
    return {w.accuracy > u.accuracy && u.accuracy > 0.5 && w.accuracy >= kFstWeightedFloor,
            fmt::format("fst_seed {}: {} outputs, weighted {:.4f} > uniform {:.4f} > 0.5", kFstSeed, d.distinct(),
                        w.accuracy, u.accuracy)};
}

Outcome changes_bias() {
    std::vector<std::string> skipped;
    for (std::uint64_t seed = kFstSeed; seed < kFstSeed + 1000; ++seed) {
        const auto& d = fst_run(seed);
        const double k2 = analysis::second_lowest_k(d);
        std::size_t group = 0;
        for (const auto& [x, c] : d.counts()) group += std::abs(ktilde(x).bits() - k2) <= 1e-9;
        if (group < kCorrMinGroup) {
            skipped.push_back(fmt::format("{}(n={})", seed, group));
            continue;
        }
        const auto rep = analysis::correlation_report(d, k2, analysis::Statistic::changes);
        std::string log = skipped.empty() ? "" : fmt::format("seeds skipped for group size < {}: ", kCorrMinGroup);
        for (std::size_t i = 0; i < skipped.size(); ++i) log += (i ? " " : "") + skipped[i];
        if (rep.status != analysis::CorrelationStatus::ok) {
            return {false, fmt::format("fst_seed {}: k={} n={} zero variance; {}", seed, k2, rep.n, log)};
        }
        return {*rep.r < 0 && *rep.p_value < kCorrAlpha,
                fmt::format("fst_seed {}: k={} n={} r={:.3f} p={:.2e}; {}", seed, k2, rep.n, *rep.r, *rep.p_value,
                            log)};
    }
    return {false, "no seed in range met the group-size precondition"};
}

Outcome mass_decay() {
    const auto& d = fst_run(kFstSeed);
    const auto fit = analysis::fit_bound(d, analysis::FitMode::envelope);
    const auto grid = analysis::default_delta_grid(d, fit);
    const auto prof = analysis::mass_deficit_profile(d, fit, grid);
    bool monotone = true;
    for (std::size_t i = 1; i < prof.points.size(); ++i) monotone &= prof.points[i].mass <= prof.points[i - 1].mass;
    const double m0 = prof.points.front().mass;
    // Average decay over the observed range: from delta 0 to the last delta
    // that still carries mass.
    const MassPointRef last = [&] {
        MassPointRef r{0.0, m0};
        for (const auto& pt : prof.points)
            if (pt.mass > 0) r = {pt.delta, pt.mass};
        return r;
    }();
    const double decay = last.delta > 0 ? (std::log2(m0) - std::log2(last.mass)) / last.delta : 0.0;
    return {monotone && std::abs(m0 - 1.0) <= kMassTol && decay >= kMassDecayPerBit,
            fmt::format("monotone={}, mass(0)={:.12f}, log2 mass falls {:.3f} bits per bit over [0, {}], c={:.3f}",
                        monotone, m0, decay, last.delta, prof.c)};
}

Outcome reproducibility() {
    const fs::path work = fs::temp_directory_path() / "simbias_acceptance";
    fs::remove_all(work);
    auto r = config::load_config(std::string(SIMBIAS_SOURCE_DIR) + "/configs/fst5.ini");
    if (!r.ok()) return {false, "cannot load configs/fst5.ini"};
    const auto& cfg = *r.config;
    pipeline::run_pipeline(cfg, {0, (work / "a").string()});
    pipeline::run_pipeline(cfg, {0, (work / "b").string()});
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    const bool manifests = slurp(work / "a" / "manifest.txt") == slurp(work / "b" / "manifest.txt") &&
                           !slurp(work / "a" / "manifest.txt").empty();

    auto sample_cfg = *config::load_config(std::string(SIMBIAS_SOURCE_DIR) + "/configs/rna.ini").config;
    sample_cfg.sampling.n_shards = 1;
    std::ostringstream one, eight;
    sampling::write_distribution(one, pipeline::build_distribution(sample_cfg, 0));
    sample_cfg.sampling.n_shards = 8;
    sampling::write_distribution(eight, pipeline::build_distribution(sample_cfg, 0));
    fs::remove_all(work);
    return {manifests && one.str() == eight.str(),
            fmt::format("run twice: manifests {}; rna 1e5 samples, 8 shards vs 1: distribution files {}",
                        manifests ? "identical" : "differ", one.str() == eight.str() ? "identical" : "differ")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"lz76 oracle equivalence", lz76_oracle},
        {"estimator identities", estimator_identities},
        {"nussinov oracle equivalence", nussinov_oracle},
        {"bernoulli exactness", bernoulli_exactness},
        {"uniform-case prediction null", uniform_null},
        {"polynomial simplicity bias", polynomial_bias},
        {"fst directional orderings", fst_orderings},
        {"changes bias at second-lowest k", changes_bias},
        {"mass-deficit monotonicity and decay", mass_decay},
        {"end-to-end reproducibility", reproducibility},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        fmt::print("{} {:2} {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
        std::fflush(stdout);
    }
    fmt::print("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
