#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace simbias::stats {

struct PearsonResult {
    double r = 0.0;
    double p_value = 1.0;  // two-sided, Student t with n-2 degrees of freedom
    std::size_t n = 0;
};

// nullopt when either sample has zero variance. Requires x.size() == y.size()
// and n >= 3, otherwise throws InvalidArgument.
std::optional<PearsonResult> pearson(std::span<const double> x, std::span<const double> y);

// Two-sided p-value of a sample correlation r over n points.
double pearson_p_value(double r, std::size_t n);

struct Concordance {
    std::uint64_t concordant = 0;
    std::uint64_t discordant = 0;
    std::uint64_t tied = 0;  // pairs tied in either coordinate

    // (C - D) / (C + D); 0 when there are no untied pairs.
    double gamma() const noexcept;
};

// Pair counts over all i < j, comparing the ordering of x with that of y.
// O(n log n).
Concordance concordance(std::span<const double> x, std::span<const double> y);

}  // namespace simbias::stats
