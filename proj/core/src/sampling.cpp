#include "simbias/sampling.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "simbias/error.hpp"
#include "simbias/rng.hpp"

namespace simbias::sampling {

namespace {

using HashCounts = std::unordered_map<BitString, double>;

// floor(n * part / parts) without overflow for parts < 2^32.
std::uint64_t split_point(std::uint64_t n, std::uint64_t part, std::uint64_t parts) {
    return n / parts * part + n % parts * part / parts;
}

unsigned resolve_threads(unsigned requested, std::uint64_t work_items) {
    unsigned n = requested == 0 ? std::max(1U, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(1, work_items)));
}

// Runs body(worker) on `workers` threads (inline when there is only one).
void fan_out(unsigned workers, const std::function<void(unsigned)>& body) {
    if (workers <= 1) {
        body(0);
        return;
    }
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                body(w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    pool.clear();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

OutputDistribution::Counts to_sorted(const HashCounts& counts) {
    return {counts.begin(), counts.end()};
}

std::vector<DrawRange> coalesce(std::vector<DrawRange> ranges) {
    std::erase_if(ranges, [](const DrawRange& r) { return r.begin == r.end; });
    std::sort(ranges.begin(), ranges.end(), [](const DrawRange& a, const DrawRange& b) { return a.begin < b.begin; });
    std::vector<DrawRange> out;
    for (const auto& r : ranges) {
        if (!out.empty() && out.back().end == r.begin) {
            out.back().end = r.end;
        } else {
            out.push_back(r);
        }
    }
    return out;
}

bool overlaps(const std::vector<DrawRange>& a, const std::vector<DrawRange>& b) {
    for (const auto& x : a) {
        for (const auto& y : b) {
            if (x.begin < y.end && y.begin < x.end) return true;
        }
    }
    return false;
}

}  // namespace

DrawRange shard_range(std::uint64_t n_samples, std::uint32_t shard, std::uint32_t n_shards) {
    if (n_shards == 0 || shard >= n_shards) throw InvalidArgument("sampling", "shard index out of range");
    return {split_point(n_samples, shard, n_shards), split_point(n_samples, shard + std::uint64_t{1}, n_shards)};
}

OutputDistribution sample_shard(const maps::InputOutputMap& map, std::uint64_t n_samples, std::uint64_t master_seed,
                                std::uint32_t shard, std::uint32_t n_shards) {
    const auto range = shard_range(n_samples, shard, n_shards);
    HashCounts counts;
    for (std::uint64_t i = range.begin; i < range.end; ++i) counts[map.draw(derive_seed(master_seed, i))] += 1.0;

    Provenance prov;
    prov.map_digest = map.digest();
    prov.master_seed = master_seed;
    prov.mode = Mode::sampled;
    prov.ranges = coalesce({range});
    return {std::move(prov), to_sorted(counts), static_cast<double>(range.end - range.begin)};
}

OutputDistribution sample_distribution(const maps::InputOutputMap& map, std::uint64_t n_samples,
                                       std::uint64_t master_seed, std::uint32_t n_shards, unsigned n_threads) {
    if (n_samples < 1) throw InvalidArgument("sampling", "n_samples must be >= 1");
    if (n_shards < 1) throw InvalidArgument("sampling", "n_shards must be >= 1");

    std::vector<std::optional<OutputDistribution>> shards(n_shards);
    const unsigned workers = resolve_threads(n_threads, n_shards);
    fan_out(workers, [&](unsigned w) {
        for (std::uint32_t s = w; s < n_shards; s += workers) {
            shards[s] = sample_shard(map, n_samples, master_seed, s, n_shards);
        }
    });

    auto result = OutputDistribution::empty(map.digest(), master_seed);
    for (auto& s : shards) result = merge(result, *s);
    return result;
}

OutputDistribution enumerate_distribution(const maps::InputOutputMap& map, std::uint64_t budget, unsigned n_threads) {
    const auto log2_size = map.log2_input_space();
    if (!log2_size) {
        throw UnsupportedOperation("sampling", "map '" + maps::map_type_name(map.spec()) +
                                                   "' has an infinite (real-valued) input space");
    }
    if (*log2_size > 62.0 || map.input_count() > budget) {
        throw UnsupportedOperation("sampling", fmt::format("input space of 2^{:.4g} inputs exceeds the enumeration "
                                                           "budget of {}",
                                                           *log2_size, budget));
    }
    const std::uint64_t n = map.input_count();
    const unsigned workers = resolve_threads(n_threads, n / 4096 + 1);
    std::vector<HashCounts> partial(workers);
    fan_out(workers, [&](unsigned w) {
        const auto begin = split_point(n, w, workers);
        const auto end = split_point(n, w + std::uint64_t{1}, workers);
        auto& counts = partial[w];
        if (map.weighted_inputs()) {
            for (std::uint64_t i = begin; i < end; ++i) counts[map.at(i)] += map.input_weight(i);
        } else {
            for (std::uint64_t i = begin; i < end; ++i) counts[map.at(i)] += 1.0;
        }
    });

    // Fixed worker order keeps floating-point sums reproducible for a given
    // thread count; integer counts are exact regardless.
    HashCounts total_counts;
    for (const auto& part : partial) {
        for (const auto& [x, c] : part) total_counts[x] += c;
    }
    auto sorted = to_sorted(total_counts);
    double sum = 0.0;
    for (const auto& [x, c] : sorted) sum += c;

    Provenance prov;
    prov.map_digest = map.digest();
    prov.mode = Mode::enumerated;
    // Weighted inputs: input weights sum to the cardinality only up to
    // rounding; use the exact cardinality and require agreement.
    if (map.weighted_inputs() && std::abs(sum - static_cast<double>(n)) > 1e-9 * static_cast<double>(n)) {
        throw Error("sampling", "enumerated input weights do not sum to the input-space size");
    }
    return {std::move(prov), std::move(sorted), map.weighted_inputs() ? static_cast<double>(n) : sum};
}

OutputDistribution merge(const OutputDistribution& a, const OutputDistribution& b) {
    const auto& pa = a.provenance();
    const auto& pb = b.provenance();
    if (pa.mode != Mode::sampled || pb.mode != Mode::sampled) {
        throw InvalidArgument("sampling", "merge: only sampled distributions can be merged");
    }
    if (pa.map_digest != pb.map_digest) {
        throw InvalidArgument("sampling", "merge: map digest mismatch (" + pa.map_digest + " vs " + pb.map_digest + ")");
    }
    if (pa.master_seed != pb.master_seed) throw InvalidArgument("sampling", "merge: master seed mismatch");
    if (!a.is_empty() && !b.is_empty() && pa.config_digest != pb.config_digest) {
        throw InvalidArgument("sampling", "merge: config digest mismatch");
    }
    if (overlaps(pa.ranges, pb.ranges)) throw InvalidArgument("sampling", "merge: draw ranges overlap");

    auto counts = a.counts();
    for (const auto& [x, c] : b.counts()) counts[x] += c;

    Provenance prov = pa;
    if (prov.config_digest.empty()) prov.config_digest = pb.config_digest;
    auto ranges = pa.ranges;
    ranges.insert(ranges.end(), pb.ranges.begin(), pb.ranges.end());
    prov.ranges = coalesce(std::move(ranges));
    return {std::move(prov), std::move(counts), a.total() + b.total()};
}

}  // namespace simbias::sampling
