#include "simbias/predictor.hpp"

#include <algorithm>
#include <cmath>

#include "simbias/error.hpp"

namespace simbias::predict {

NextBitForecast next_bit(const BitString& history) {
    NextBitForecast f;
    f.k0 = ktilde(history.appended(false));
    f.k1 = ktilde(history.appended(true));
    // Normalize 2^-k0 / (2^-k0 + 2^-k1) in the log domain to avoid underflow
    // on long histories.
    const double diff = f.k0.bits() - f.k1.bits();
    f.p1 = 1.0 / (1.0 + std::exp2(-diff));
    f.p0 = 1.0 / (1.0 + std::exp2(diff));
    if (diff == 0.0) f.p0 = f.p1 = 0.5;
    return f;
}

BitString extrapolate(const BitString& history, std::size_t horizon) {
    if (horizon == 0) throw InvalidArgument("predictor", "extrapolate: horizon must be >= 1");
    BitString current = history;
    std::string appended;
    appended.reserve(horizon);
    for (std::size_t step = 0; step < horizon; ++step) {
        const bool bit = next_bit(current).argmax();
        current = current.appended(bit);
        appended.push_back(bit ? '1' : '0');
    }
    return BitString(std::move(appended));
}

std::vector<BitString> guess_order(std::vector<BitString> candidates) {
    if (candidates.empty()) throw InvalidArgument("predictor", "guess_order: no candidates");
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<std::pair<double, BitString>> keyed;
    keyed.reserve(candidates.size());
    for (auto& c : candidates) {
        const double k = ktilde(c).bits();
        keyed.emplace_back(k, std::move(c));
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<BitString> out;
    out.reserve(keyed.size());
    for (auto& [k, c] : keyed) out.push_back(std::move(c));
    return out;
}

stats::Concordance complexity_probability_concordance(const sampling::OutputDistribution& dist) {
    std::vector<double> neg_k;
    std::vector<double> p;
    neg_k.reserve(dist.distinct());
    p.reserve(dist.distinct());
    for (const auto& [x, c] : dist.counts()) {
        neg_k.push_back(-ktilde(x).bits());
        p.push_back(c);
    }
    return stats::concordance(neg_k, p);
}

}  // namespace simbias::predict
