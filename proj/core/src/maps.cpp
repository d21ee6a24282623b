#include "simbias/maps.hpp"

#include <fmt/format.h>

#include <cmath>

#include "simbias/complexity.hpp"
#include "simbias/digest.hpp"
#include "simbias/error.hpp"
#include "simbias/rng.hpp"

namespace simbias::maps {

namespace {

std::string bits_from_rng(SplitMix64& rng, std::size_t n) {
    std::string bits(n, '0');
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % 64 == 0) word = rng();
        if ((word >> 63) != 0) bits[i] = '1';
        word <<= 1;
    }
    return bits;
}

std::string index_bits(std::uint64_t index, std::size_t n) {
    std::string bits(n, '0');
    for (std::size_t j = 0; j < n; ++j) {
        if ((index >> (n - 1 - j)) & 1U) bits[j] = '1';
    }
    return bits;
}

std::string index_rna(std::uint64_t index, std::size_t n) {
    std::string seq(n, 'A');
    for (std::size_t j = 0; j < n; ++j) seq[j] = kRnaAlphabet[(index >> (2 * (n - 1 - j))) & 3U];
    return seq;
}

std::string fst_run(const FstSpec& spec, std::string_view input) {
    std::string out(input.size(), '0');
    std::size_t state = spec.start_state;
    for (std::size_t i = 0; i < input.size(); ++i) {
        const auto& t = spec.transitions[state][input[i] == '1' ? 1 : 0];
        if (t.output) out[i] = '1';
        state = t.next_state;
    }
    return out;
}

}  // namespace

void FstSpec::validate() const {
    if (num_states < 1) throw InvalidArgument("maps", "fst: num_states must be >= 1");
    if (input_length < 1) throw InvalidArgument("maps", "fst: input_length must be >= 1");
    if (start_state >= num_states) throw InvalidArgument("maps", "fst: start_state out of range");
    if (transitions.size() != num_states) {
        throw InvalidArgument("maps", "fst: transition table must have one row per state");
    }
    for (std::size_t s = 0; s < transitions.size(); ++s) {
        for (const auto& t : transitions[s]) {
            if (t.next_state >= num_states) {
                throw InvalidArgument("maps", fmt::format("fst: state {} references missing state {}", s,
                                                          t.next_state));
            }
        }
    }
}

FstSpec fst_random(std::size_t num_states, std::size_t input_length, std::uint64_t seed) {
    if (num_states < 1) throw InvalidArgument("maps", "fst_random: num_states must be >= 1");
    FstSpec spec;
    spec.num_states = num_states;
    spec.input_length = input_length;
    spec.transitions.resize(num_states);
    SplitMix64 rng(seed);
    for (auto& row : spec.transitions) {
        for (auto& t : row) {
            t.next_state = static_cast<std::uint32_t>(uniform_below(rng, num_states));
            t.output = fair_coin(rng);
        }
    }
    spec.validate();
    return spec;
}

BitString fst_apply(const FstSpec& spec, const BitString& input) {
    if (input.size() != spec.input_length) {
        throw InvalidArgument("maps", fmt::format("fst_apply: input length {} != spec input_length {}",
                                                  input.size(), spec.input_length));
    }
    return BitString(fst_run(spec, input.view()));
}

void PolynomialSpec::validate() const {
    if (degree < 1) throw InvalidArgument("maps", "polynomial: degree must be >= 1");
    if (!(coefficient_std > 0.0) || !std::isfinite(coefficient_std)) {
        throw InvalidArgument("maps", "polynomial: coefficient_std must be > 0");
    }
    if (grid_points < 2) throw InvalidArgument("maps", "polynomial: grid_points must be >= 2");
}

std::vector<double> polynomial_coefficients(const PolynomialSpec& spec, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> alpha(spec.degree);
    for (auto& a : alpha) a = spec.coefficient_std * standard_normal(rng);
    return alpha;
}

BitString polynomial_map(const PolynomialSpec& spec, std::uint64_t seed) {
    const auto alpha = polynomial_coefficients(spec, seed);
    std::vector<double> y(spec.grid_points);
    const double denom = static_cast<double>(spec.grid_points + 1);
    for (std::size_t j = 0; j < spec.grid_points; ++j) {
        const double x = static_cast<double>(j + 1) / denom;
        double acc = 0.0;
        for (auto it = alpha.rbegin(); it != alpha.rend(); ++it) acc = (acc + *it) * x;
        y[j] = acc;
    }
    return updown_discretize(y);
}

std::string random_rna_sequence(std::size_t length, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::string seq(length, 'A');
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < length; ++i) {
        if (i % 32 == 0) word = rng();
        seq[i] = kRnaAlphabet[word & 3U];
        word >>= 2;
    }
    return seq;
}

BitString rna_map(const RnaSpec& spec, std::uint64_t seed) {
    return encode_dotbracket(nussinov_fold(random_rna_sequence(spec.seq_length, seed), spec.min_loop));
}

void BernoulliSpec::validate() const {
    if (n < 1) throw InvalidArgument("maps", "bernoulli: n must be >= 1");
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("maps", "bernoulli: p must lie in (0, 1)");
}

BitString bernoulli_map(const BernoulliSpec& spec, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::string bits(spec.n, '0');
    for (auto& b : bits) {
        if (uniform01(rng) < spec.p) b = '1';
    }
    return BitString(std::move(bits));
}

double bernoulli_exact(const BernoulliSpec& spec, const BitString& x) {
    if (x.size() != spec.n) {
        throw InvalidArgument("maps", fmt::format("bernoulli_exact: string length {} != n {}", x.size(), spec.n));
    }
    const auto k = static_cast<double>(ones_count(x));
    return std::pow(spec.p, k) * std::pow(1.0 - spec.p, static_cast<double>(spec.n) - k);
}

std::string map_type_name(const MapSpec& spec) {
    static constexpr const char* kNames[] = {"fst", "polynomial", "rna", "bernoulli", "timeseries"};
    return kNames[spec.index()];
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string describe(const MapSpec& spec, const std::string& data_digest) {
    return std::visit(
        overloaded{
            [](const FstSpec& s) {
                std::string table;
                for (std::size_t q = 0; q < s.transitions.size(); ++q) {
                    if (q) table += ';';
                    const auto& row = s.transitions[q];
                    table += fmt::format("{}/{},{}/{}", row[0].next_state, int(row[0].output), row[1].next_state,
                                         int(row[1].output));
                }
                return fmt::format("fst states={} start={} input_length={} table={}", s.num_states, s.start_state,
                                   s.input_length, table);
            },
            [](const PolynomialSpec& s) {
                return fmt::format("polynomial degree={} coefficient_std={} grid_points={}", s.degree,
                                   s.coefficient_std, s.grid_points);
            },
            [](const RnaSpec& s) { return fmt::format("rna seq_length={} min_loop={}", s.seq_length, s.min_loop); },
            [](const BernoulliSpec& s) { return fmt::format("bernoulli n={} p={}", s.n, s.p); },
            [&](const TimeSeriesSource& s) {
                return fmt::format("timeseries window_length={} stride={} data={}", s.window.window_length,
                                   s.window.stride, data_digest);
            },
        },
        spec);
}

}  // namespace

InputOutputMap::InputOutputMap(MapSpec spec) : spec_(std::move(spec)) {
    std::string data_digest;
    std::visit(overloaded{
                   [&](const FstSpec& s) {
                       s.validate();
                       output_length_ = s.input_length;
                   },
                   [&](const PolynomialSpec& s) {
                       s.validate();
                       output_length_ = s.grid_points - 1;
                   },
                   [&](const RnaSpec& s) {
                       s.validate();
                       output_length_ = 2 * s.seq_length;
                   },
                   [&](const BernoulliSpec& s) {
                       s.validate();
                       output_length_ = s.n;
                   },
                   [&](const TimeSeriesSource& s) {
                       s.window.validate();
                       output_length_ = s.window.window_length;
                       data_digest = file_sha256_hex(s.path).substr(0, 16);
                       auto ingested = timeseries_ingest(s.path, s.window.window_length, s.ingest);
                       too_short_ = ingested.too_short;
                       invalid_rows_ = std::move(ingested.invalid_rows);
                       for (const auto& series : ingested.series) {
                           const auto& v = series.values;
                           for (std::size_t off = 0; off + s.window.window_length <= v.size();
                                off += s.window.stride) {
                               windows_.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(off),
                                                     v.begin() + static_cast<std::ptrdiff_t>(off + s.window.window_length));
                           }
                       }
                       if (windows_.empty()) {
                           throw InvalidArgument("maps", "timeseries: no series of at least window_length values in " +
                                                             s.path);
                       }
                   },
               },
               spec_);
    description_ = describe(spec_, data_digest);
    digest_ = short_digest(description_);
}

BitString InputOutputMap::draw(std::uint64_t seed) const {
    return std::visit(overloaded{
                          [&](const FstSpec& s) {
                              SplitMix64 rng(seed);
                              return BitString(fst_run(s, bits_from_rng(rng, s.input_length)));
                          },
                          [&](const PolynomialSpec& s) { return polynomial_map(s, seed); },
                          [&](const RnaSpec& s) { return rna_map(s, seed); },
                          [&](const BernoulliSpec& s) { return bernoulli_map(s, seed); },
                          [&](const TimeSeriesSource& s) {
                              SplitMix64 rng(seed);
                              return mean_discretize(windows_[uniform_below(rng, windows_.size())], s.window);
                          },
                      },
                      spec_);
}

std::optional<double> InputOutputMap::log2_input_space() const {
    return std::visit(overloaded{
                          [](const FstSpec& s) -> std::optional<double> { return double(s.input_length); },
                          [](const PolynomialSpec&) -> std::optional<double> { return std::nullopt; },
                          [](const RnaSpec& s) -> std::optional<double> { return 2.0 * double(s.seq_length); },
                          [](const BernoulliSpec& s) -> std::optional<double> { return double(s.n); },
                          [&](const TimeSeriesSource&) -> std::optional<double> {
                              return std::log2(double(windows_.size()));
                          },
                      },
                      spec_);
}

std::uint64_t InputOutputMap::input_count() const {
    if (std::holds_alternative<TimeSeriesSource>(spec_)) return windows_.size();
    const auto bits = log2_input_space();
    if (!bits || *bits > 62.0) throw UnsupportedOperation("maps", "input space is not enumerable");
    return std::uint64_t{1} << static_cast<unsigned>(*bits);
}

BitString InputOutputMap::at(std::uint64_t index) const {
    return std::visit(
        overloaded{
            [&](const FstSpec& s) { return BitString(fst_run(s, index_bits(index, s.input_length))); },
            [&](const PolynomialSpec&) -> BitString {
                throw UnsupportedOperation("maps", "polynomial map has a real-valued input space");
            },
            [&](const RnaSpec& s) {
                return encode_dotbracket(nussinov_fold(index_rna(index, s.seq_length), s.min_loop));
            },
            [&](const BernoulliSpec& s) { return BitString(index_bits(index, s.n)); },
            [&](const TimeSeriesSource& s) { return mean_discretize(windows_.at(index), s.window); },
        },
        spec_);
}

double InputOutputMap::input_weight(std::uint64_t index) const {
    const auto* bern = std::get_if<BernoulliSpec>(&spec_);
    if (bern == nullptr) return 1.0;
    // Product of per-bit probabilities, scaled by 2^n (an exact power-of-two
    // scaling), so weight / 2^n is the exact input probability.
    double w = 1.0;
    for (std::size_t j = 0; j < bern->n; ++j) {
        const bool one = (index >> (bern->n - 1 - j)) & 1U;
        w *= 2.0 * (one ? bern->p : 1.0 - bern->p);
    }
    return w;
}

bool InputOutputMap::weighted_inputs() const noexcept { return std::holds_alternative<BernoulliSpec>(spec_); }

}  // namespace simbias::maps
