#include "simbias/analysis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "simbias/error.hpp"
#include "simbias/rng.hpp"
#include "simbias/stats.hpp"

namespace simbias::analysis {

std::string to_string(FitMode mode) { return mode == FitMode::apriori ? "apriori" : "envelope"; }

FitMode parse_fit_mode(const std::string& text) {
    if (text == "apriori") return FitMode::apriori;
    if (text == "envelope") return FitMode::envelope;
    throw InvalidArgument("analysis", "unknown fit mode: " + text);
}

std::string to_string(PairMode mode) { return mode == PairMode::weighted ? "weighted" : "uniform"; }

PairMode parse_pair_mode(const std::string& text) {
    if (text == "weighted") return PairMode::weighted;
    if (text == "uniform") return PairMode::uniform;
    throw InvalidArgument("analysis", "unknown pair mode: " + text);
}

std::string to_string(Statistic s) { return s == Statistic::changes ? "changes" : "ones"; }

Statistic parse_statistic(const std::string& text) {
    if (text == "changes") return Statistic::changes;
    if (text == "ones") return Statistic::ones;
    throw InvalidArgument("analysis", "unknown statistic: " + text);
}

namespace {

struct Row {
    const BitString* output;
    double k;
    double count;
};

std::vector<Row> rows_of(const OutputDistribution& dist) {
    std::vector<Row> rows;
    rows.reserve(dist.distinct());
    for (const auto& [x, c] : dist.counts()) rows.push_back({&x, ktilde(x).bits(), c});
    return rows;
}

void require_envelope(const BoundFit& fit, const char* op) {
    if (fit.mode != FitMode::envelope) {
        throw InvalidArgument("analysis", std::string(op) + " requires an envelope fit");
    }
}

}  // namespace

BoundFit fit_bound(const OutputDistribution& dist, FitMode mode) {
    if (dist.distinct() < 2) {
        throw DegenerateFit("analysis", fmt::format("cannot fit a bound to {} distinct output(s)", dist.distinct()));
    }
    const auto rows = rows_of(dist);
    const auto [lo, hi] = std::minmax_element(rows.begin(), rows.end(),
                                              [](const Row& a, const Row& b) { return a.k < b.k; });
    if (lo->k == hi->k) throw DegenerateFit("analysis", "all outputs share one complexity value");

    BoundFit fit;
    fit.mode = mode;
    fit.distinct_outputs = rows.size();
    fit.k_max = hi->k;
    fit.a = std::log2(static_cast<double>(rows.size())) / fit.k_max;
    fit.b = 0.0;
    if (mode == FitMode::envelope) {
        double b = std::numeric_limits<double>::infinity();
        for (const auto& r : rows) b = std::min(b, -fit.a * r.k - std::log2(r.count / dist.total()));
        fit.b = b;
    }
    return fit;
}

std::vector<ScatterPoint> scatter(const OutputDistribution& dist, const BoundFit& fit) {
    std::vector<ScatterPoint> points;
    points.reserve(dist.distinct());
    for (const auto& [x, c] : dist.counts()) {
        ScatterPoint pt{x, ktilde(x), c / dist.total(), 0.0, 0.0};
        pt.log2p = std::log2(pt.p);
        pt.deficit = fit.log2_bound(pt.k.bits()) - pt.log2p;
        points.push_back(std::move(pt));
    }
    return points;
}

std::map<double, std::vector<RankEntry>> rank_groups(const OutputDistribution& dist) {
    std::map<double, std::vector<RankEntry>> groups;
    for (const auto& [x, c] : dist.counts()) groups[ktilde(x).bits()].push_back({x, c / dist.total(), 0});
    for (auto& [k, group] : groups) {
        std::sort(group.begin(), group.end(), [](const RankEntry& a, const RankEntry& b) {
            return a.p != b.p ? a.p > b.p : a.output < b.output;
        });
        for (std::size_t i = 0; i < group.size(); ++i) group[i].rank = i + 1;
    }
    return groups;
}

PairPredictionReport pair_prediction_experiment(const OutputDistribution& dist, PairMode mode, std::uint64_t n_pairs,
                                                std::uint64_t seed) {
    if (dist.distinct() < 2) throw InvalidArgument("analysis", "pair prediction needs at least 2 distinct outputs");
    if (n_pairs < 1) throw InvalidArgument("analysis", "n_pairs must be >= 1");

    const auto rows = rows_of(dist);
    const std::size_t n = rows.size();
    std::vector<double> cumulative(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) cumulative[i] = (acc += rows[i].count);

    SplitMix64 rng(seed);
    auto weighted_index = [&] {
        const double u = uniform01(rng) * acc;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), n - 1);
    };

    PairPredictionReport report;
    report.mode = mode;
    report.n_pairs = n_pairs;
    report.seed = seed;
    for (std::uint64_t t = 0; t < n_pairs; ++t) {
        std::size_t x = 0;
        std::size_t y = 0;
        if (mode == PairMode::weighted) {
            x = weighted_index();
            do {
                y = weighted_index();
            } while (y == x);
        } else {
            x = uniform_below(rng, n);
            y = uniform_below(rng, n - 1);
            if (y >= x) ++y;
        }

        // true: x is predicted / found to be the more probable of the two.
        bool predicted;
        if (rows[x].k == rows[y].k) {
            ++report.ties;
            predicted = fair_coin(rng);
        } else {
            predicted = rows[x].k < rows[y].k;
        }
        bool truth;
        if (rows[x].count == rows[y].count) {
            ++report.probability_ties;
            truth = fair_coin(rng);
        } else {
            truth = rows[x].count > rows[y].count;
        }
        if (predicted == truth) ++report.correct;
    }
    report.accuracy = static_cast<double>(report.correct) / static_cast<double>(report.n_pairs);
    return report;
}

std::string pair_report_caveat(const PairPredictionReport& report, sampling::Mode dist_mode) {
    if (report.mode == PairMode::uniform && dist_mode == sampling::Mode::sampled) {
        return "uniform pairs are drawn from the observed outputs of a sampled run; accuracy is likely an "
               "overestimate of uniform sampling over all possible outputs";
    }
    return "";
}

double second_lowest_k(const OutputDistribution& dist) {
    std::vector<double> ks;
    ks.reserve(dist.distinct());
    for (const auto& [x, c] : dist.counts()) ks.push_back(ktilde(x).bits());
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    if (ks.size() < 2) throw InsufficientData("analysis", "fewer than two distinct complexity values observed");
    return ks[1];
}

CorrelationReport correlation_report(const OutputDistribution& dist, std::optional<double> k, Statistic statistic) {
    CorrelationReport report;
    report.statistic = statistic;
    report.k = k ? *k : second_lowest_k(dist);

    std::vector<double> stat;
    std::vector<double> log2p;
    for (const auto& [x, c] : dist.counts()) {
        if (std::abs(ktilde(x).bits() - report.k) > 1e-9) continue;
        stat.push_back(static_cast<double>(statistic == Statistic::changes ? changes_count(x) : ones_count(x)));
        log2p.push_back(std::log2(c / dist.total()));
    }
    report.n = stat.size();
    if (report.n < 3) {
        throw InsufficientData("analysis", fmt::format("complexity group k={} has {} member(s); need at least 3",
                                                       report.k, report.n));
    }
    if (const auto res = stats::pearson(stat, log2p)) {
        report.r = res->r;
        report.p_value = res->p_value;
    } else {
        report.status = CorrelationStatus::insufficient_variance;
    }
    return report;
}

MassProfile mass_deficit_profile(const OutputDistribution& dist, const BoundFit& fit, std::span<const double> deltas) {
    require_envelope(fit, "mass_deficit_profile");
    const auto points = scatter(dist, fit);

    MassProfile profile;
    profile.points.reserve(deltas.size());
    for (double delta : deltas) {
        if (!(delta >= 0.0)) throw InvalidArgument("analysis", "deficit grid values must be non-negative");
        double mass = 0.0;
        for (const auto& pt : points) {
            if (pt.deficit >= delta - kBoundEpsilon) mass += pt.p;
        }
        profile.points.push_back({delta, mass});
        if (mass > 0.0) profile.c = std::max(profile.c, std::log2(mass) + delta - 1.0);
    }
    return profile;
}

std::vector<double> default_delta_grid(const OutputDistribution& dist, const BoundFit& fit) {
    double max_deficit = 0.0;
    for (const auto& pt : scatter(dist, fit)) max_deficit = std::max(max_deficit, pt.deficit);
    std::vector<double> grid;
    for (int d = 0; d <= static_cast<int>(std::ceil(max_deficit)); ++d) grid.push_back(d);
    return grid;
}

std::vector<BitString> lklp_select(const OutputDistribution& dist, const BoundFit& fit, double delta_threshold,
                                   double k_quantile) {
    require_envelope(fit, "lklp_select");
    if (!(k_quantile > 0.0 && k_quantile <= 1.0)) {
        throw InvalidArgument("analysis", "k_quantile must lie in (0, 1]");
    }
    auto points = scatter(dist, fit);
    if (points.empty()) return {};

    std::vector<double> ks;
    ks.reserve(points.size());
    for (const auto& pt : points) ks.push_back(pt.k.bits());
    std::sort(ks.begin(), ks.end());
    const auto idx = static_cast<std::size_t>(std::ceil(k_quantile * static_cast<double>(ks.size()))) - 1;
    const double k_cut = ks[std::min(idx, ks.size() - 1)];

    std::erase_if(points, [&](const ScatterPoint& pt) {
        return pt.deficit < delta_threshold - kBoundEpsilon || pt.k.bits() > k_cut;
    });
    std::sort(points.begin(), points.end(), [](const ScatterPoint& a, const ScatterPoint& b) {
        return a.deficit != b.deficit ? a.deficit > b.deficit : a.output < b.output;
    });
    std::vector<BitString> out;
    out.reserve(points.size());
    for (auto& pt : points) out.push_back(std::move(pt.output));
    return out;
}

}  // namespace simbias::analysis
