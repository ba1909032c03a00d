#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spe/dataset.hpp"
#include "spe/hardness.hpp"
#include "spe/random.hpp"

namespace spe {

inline constexpr double kDefaultAlphaCap = 1e9;
/// Stand-in for h + alpha when both are zero, so a zero-hardness bin
/// dominates without producing an infinite weight.
inline constexpr double kZeroHardnessEpsilon = 1e-12;

/// k equal-width hardness bins over the majority rows.
///
/// Edges span the observed [min, max] hardness. Bin l holds values in
/// [edges[l], edges[l+1]); the last bin is closed on the right. With a
/// degenerate range every value lands in the first bin.
struct BinPartition {
  std::size_t k = 0;
  std::vector<double> edges;
  std::vector<IndexList> members;
  std::vector<double> mean_hardness;  // NaN for empty bins

  std::vector<std::size_t> sizes() const;
  bool nonempty(std::size_t bin) const { return !members[bin].empty(); }
};

BinPartition partition_bins(std::span<const HardnessValue> values, std::size_t k);

/// tan(((i - 1) / n) * pi / 2) for 1 <= i <= n, clamped to `alpha_cap`.
double self_paced_alpha(std::size_t i, std::size_t n, double alpha_cap = kDefaultAlphaCap);

/// Normalized 1 / (h + alpha) over nonempty bins; empty bins get 0.
std::vector<double> bin_sampling_weights(const BinPartition& partition, double alpha);

/// Integer quotas summing to `target` (or to the total capacity, if smaller).
///
/// Largest-remainder apportionment of weights[l] * target, ties to the lowest
/// bin index. A quota above its bin's capacity is capped and the deficit is
/// re-apportioned by weight over bins with room left; when those bins all
/// carry zero weight, by their remaining capacity instead.
std::vector<std::size_t> apportion_quotas(std::span<const double> weights,
                                          std::span<const std::size_t> capacities,
                                          std::size_t target);

struct SampleDraw {
  IndexList indices;
  std::vector<std::size_t> quotas;  // per bin; empty for the plain samplers
  bool with_replacement = false;    // set when the pool was too small
};

/// `count` distinct elements of `pool`, uniformly (partial Fisher-Yates).
IndexList sample_without_replacement(std::span<const std::size_t> pool, std::size_t count,
                                     RandomSource& rng);
IndexList sample_with_replacement(std::span<const std::size_t> pool, std::size_t count,
                                  RandomSource& rng);

/// Draws exactly `target` majority rows following per-bin weights. Within a
/// bin draws are uniform without replacement. When the bins together hold
/// fewer than `target` rows, all are taken and the shortfall is drawn with
/// replacement.
SampleDraw self_paced_undersample(const BinPartition& partition, std::span<const double> weights,
                                  std::size_t target, RandomSource& rng);

/// `target` rows from `pool`, without replacement when the pool is large
/// enough, otherwise with replacement (flagged).
SampleDraw random_undersample(std::span<const std::size_t> pool, std::size_t target,
                              RandomSource& rng);

/// |P| majority rows of `data`.
SampleDraw random_undersample(const Dataset& data, RandomSource& rng);

/// |N| minority rows: every minority row once plus uniform draws with
/// replacement for the remainder.
SampleDraw random_oversample(const Dataset& data, RandomSource& rng);

}  // namespace spe
