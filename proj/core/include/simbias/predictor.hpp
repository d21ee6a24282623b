#pragma once

#include <cstddef>
#include <vector>

#include "simbias/bitstring.hpp"
#include "simbias/complexity.hpp"
#include "simbias/distribution.hpp"
#include "simbias/stats.hpp"

namespace simbias::predict {

// Computable stand-in for the universal conditional semimeasure: each
// continuation is weighted by 2^-K(history + bit) and the pair normalized.
struct NextBitForecast {
    double p0 = 0.5;
    double p1 = 0.5;
    ComplexityValue k0;
    ComplexityValue k1;

    // 0 or 1; ties go to 0.
    bool argmax() const noexcept { return p1 > p0; }
};

NextBitForecast next_bit(const BitString& history);

// Greedy: appends argmax of next_bit `horizon` times. Returns only the
// appended bits. Throws InvalidArgument if horizon is 0.
BitString extrapolate(const BitString& history, std::size_t horizon);

// Candidates in ascending complexity (descending 2^-K), ties broken
// lexicographically. Duplicates are removed. Throws InvalidArgument on an
// empty list.
std::vector<BitString> guess_order(std::vector<BitString> candidates);

// Agreement between ranking outputs by low complexity and by high empirical
// probability, over all pairs of distinct outputs.
stats::Concordance complexity_probability_concordance(const sampling::OutputDistribution& dist);

}  // namespace simbias::predict
