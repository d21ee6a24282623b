#pragma once

#include <cstdint>

#include "simbias/distribution.hpp"
#include "simbias/maps.hpp"

namespace simbias::sampling {

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 26;

// Draws global indices [begin, end) of shard `shard` out of `n_shards`:
// begin = floor(shard * n / n_shards).
DrawRange shard_range(std::uint64_t n_samples, std::uint32_t shard, std::uint32_t n_shards);

// One shard of a sampling run. Draw i uses derive_seed(master_seed, i).
OutputDistribution sample_shard(const maps::InputOutputMap& map, std::uint64_t n_samples, std::uint64_t master_seed,
                                std::uint32_t shard, std::uint32_t n_shards);

// n_samples draws split into n_shards shards, run on up to n_threads worker
// threads (0 = hardware concurrency) and merged. The result does not depend
// on n_shards or n_threads.
OutputDistribution sample_distribution(const maps::InputOutputMap& map, std::uint64_t n_samples,
                                       std::uint64_t master_seed, std::uint32_t n_shards = 1,
                                       unsigned n_threads = 0);

// Exact distribution over the full input space. Throws UnsupportedOperation
// for non-enumerable maps or when the cardinality exceeds `budget`.
OutputDistribution enumerate_distribution(const maps::InputOutputMap& map,
                                          std::uint64_t budget = kDefaultEnumerationBudget, unsigned n_threads = 0);

// Pointwise sum of two sampled distributions of the same run. Throws
// InvalidArgument on a provenance mismatch or overlapping draw ranges.
OutputDistribution merge(const OutputDistribution& a, const OutputDistribution& b);

}  // namespace simbias::sampling
