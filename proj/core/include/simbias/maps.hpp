#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "simbias/bitstring.hpp"
#include "simbias/rna.hpp"
#include "simbias/timeseries.hpp"

namespace simbias::maps {

// ---------------------------------------------------------------------------
// Finite state transducer: one output bit per input bit.

struct FstTransition {
    std::uint32_t next_state = 0;
    bool output = false;

    friend bool operator==(const FstTransition&, const FstTransition&) = default;
};

struct FstSpec {
    std::size_t num_states = 1;
    std::size_t start_state = 0;
    // transitions[state][bit]
    std::vector<std::array<FstTransition, 2>> transitions;
    std::size_t input_length = 30;

    void validate() const;
    friend bool operator==(const FstSpec&, const FstSpec&) = default;
};

// Uniformly random transition table, deterministic in `seed`; start state 0.
FstSpec fst_random(std::size_t num_states, std::size_t input_length, std::uint64_t seed);

// Throws InvalidArgument if |input| != spec.input_length.
BitString fst_apply(const FstSpec& spec, const BitString& input);

// ---------------------------------------------------------------------------
// Random polynomial y = sum_{i=1..degree} a_i x^i, a_i ~ N(0, std^2), sampled
// at x_j = (j+1)/(grid_points+1) and discretized by the up/down rule.

struct PolynomialSpec {
    std::size_t degree = 14;
    double coefficient_std = 1.0;
    std::size_t grid_points = 17;

    void validate() const;
    friend bool operator==(const PolynomialSpec&, const PolynomialSpec&) = default;
};

std::vector<double> polynomial_coefficients(const PolynomialSpec& spec, std::uint64_t seed);
BitString polynomial_map(const PolynomialSpec& spec, std::uint64_t seed);

// ---------------------------------------------------------------------------
// RNA: uniform random sequence -> Nussinov fold -> 2-bit dot-bracket code.

std::string random_rna_sequence(std::size_t length, std::uint64_t seed);
BitString rna_map(const RnaSpec& spec, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Bernoulli process: n i.i.d. bits, each 1 with probability p.

struct BernoulliSpec {
    std::size_t n = 8;
    double p = 0.5;

    void validate() const;
    friend bool operator==(const BernoulliSpec&, const BernoulliSpec&) = default;
};

BitString bernoulli_map(const BernoulliSpec& spec, std::uint64_t seed);

// p^ones * (1-p)^(n-ones). Throws InvalidArgument if |x| != spec.n.
double bernoulli_exact(const BernoulliSpec& spec, const BitString& x);

// ---------------------------------------------------------------------------
// Time series windows read from a CSV file and mean-discretized.

struct TimeSeriesSource {
    std::string path;
    TimeSeriesSpec window;
    IngestOptions ingest;
};

// ---------------------------------------------------------------------------

using MapSpec = std::variant<FstSpec, PolynomialSpec, RnaSpec, BernoulliSpec, TimeSeriesSource>;

std::string map_type_name(const MapSpec& spec);

// Runtime view of a map. Immutable after construction and safe to share
// across threads. Time-series data is loaded here.
class InputOutputMap {
public:
    explicit InputOutputMap(MapSpec spec);

    const MapSpec& spec() const noexcept { return spec_; }

    // Canonical one-line description; identical specs give identical text.
    const std::string& description() const noexcept { return description_; }
    // Short SHA-256 digest of description().
    const std::string& digest() const noexcept { return digest_; }

    std::size_t output_length() const noexcept { return output_length_; }

    // Draw a random input from `seed` and apply the map.
    BitString draw(std::uint64_t seed) const;

    // log2 of the input-space cardinality, or nullopt when the input space is
    // not finite (polynomial).
    std::optional<double> log2_input_space() const;

    // Exact cardinality; only meaningful when log2_input_space() <= 62.
    std::uint64_t input_count() const;

    // Output for input `index` in [0, input_count()).
    BitString at(std::uint64_t index) const;

    // Probability mass of input `index` scaled by input_count(); 1 for maps
    // with uniformly distributed inputs.
    double input_weight(std::uint64_t index) const;
    bool weighted_inputs() const noexcept;

    // Loaded time-series windows (empty for other maps).
    const std::vector<std::vector<double>>& windows() const noexcept { return windows_; }
    std::size_t series_too_short() const noexcept { return too_short_; }
    const std::vector<InvalidRow>& invalid_rows() const noexcept { return invalid_rows_; }

private:
    MapSpec spec_;
    std::string description_;
    std::string digest_;
    std::size_t output_length_ = 0;
    std::vector<std::vector<double>> windows_;
    std::size_t too_short_ = 0;
    std::vector<InvalidRow> invalid_rows_;
};

}  // namespace simbias::maps
