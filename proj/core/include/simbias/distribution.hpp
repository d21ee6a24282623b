#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "simbias/bitstring.hpp"

namespace simbias::sampling {

enum class Mode { sampled, enumerated };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

// Half-open interval of global draw indices.
struct DrawRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;

    friend bool operator==(const DrawRange&, const DrawRange&) = default;
};

struct Provenance {
    std::string map_digest;
    std::uint64_t master_seed = 0;
    Mode mode = Mode::sampled;
    // Sorted, coalesced draw ranges covered (sampled mode only).
    std::vector<DrawRange> ranges;
    // Digest of the experiment config that produced this, if any.
    std::string config_digest;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Output -> count store. In sampled mode counts are integers summing to
// total. In enumerated mode total is the input-space cardinality; counts are
// integers for uniformly distributed inputs, and input-probability mass times
// the cardinality for weighted inputs (Bernoulli), so counts/total is exact.
class OutputDistribution {
public:
    using Counts = std::map<BitString, double>;

    // Throws InvalidArgument if a count is not positive or the counts do not
    // sum to total (relative tolerance 1e-9).
    OutputDistribution(Provenance provenance, Counts counts, double total);

    // Merge identity: no draws, no outputs.
    static OutputDistribution empty(std::string map_digest, std::uint64_t master_seed);

    const Provenance& provenance() const noexcept { return provenance_; }
    const Counts& counts() const noexcept { return counts_; }
    double total() const noexcept { return total_; }
    Mode mode() const noexcept { return provenance_.mode; }
    std::size_t distinct() const noexcept { return counts_.size(); }
    bool is_empty() const noexcept { return counts_.empty(); }

    // counts/total; 0 for unobserved outputs.
    double probability(const BitString& x) const;

    OutputDistribution with_config_digest(std::string digest) const;

    friend bool operator==(const OutputDistribution&, const OutputDistribution&) = default;

private:
    Provenance provenance_;
    Counts counts_;
    double total_ = 0.0;
};

// Text format:
//   # map=<digest> seed=<s> mode=<m> total=<t>
//   # range=<b>:<e>[,<b>:<e>...]      (sampled mode)
//   # config=<digest>                 (when set)
//   <bitstring>,<count>               sorted lexicographically
void write_distribution(std::ostream& out, const OutputDistribution& dist);
OutputDistribution read_distribution(std::istream& in);

void save_distribution(const std::string& path, const OutputDistribution& dist);
OutputDistribution load_distribution(const std::string& path);

// Integral values print as integers; others with 17 significant digits.
std::string format_count(double value);

}  // namespace simbias::sampling
