#include "spe/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "spe/errors.hpp"

namespace spe {

std::vector<std::size_t> BinPartition::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.size());
  return out;
}

BinPartition partition_bins(std::span<const HardnessValue> values, std::size_t k) {
  if (k == 0) throw ParameterError("bin count k must be >= 1");
  if (values.empty()) throw InvalidInputError("cannot partition an empty hardness set");

  double lo = values.front().value, hi = lo;
  for (const auto& v : values) {
    if (!std::isfinite(v.value)) throw InvalidInputError("hardness values must be finite");
    lo = std::min(lo, v.value);
    hi = std::max(hi, v.value);
  }

  BinPartition p;
  p.k = k;
  p.edges.resize(k + 1);
  const double width = (hi - lo) / static_cast<double>(k);
  for (std::size_t l = 0; l <= k; ++l) p.edges[l] = lo + width * static_cast<double>(l);
  p.edges[k] = hi;
  p.members.resize(k);

  std::vector<double> sums(k, 0.0);
  for (const auto& v : values) {
    std::size_t bin = 0;
    if (hi > lo) {
      bin = std::min(k - 1, static_cast<std::size_t>((v.value - lo) / width));
      // The arithmetic guess can be off by one next to an edge; the edge
      // comparisons are authoritative.
      while (bin > 0 && v.value < p.edges[bin]) --bin;
      while (bin + 1 < k && v.value >= p.edges[bin + 1]) ++bin;
    }
    p.members[bin].push_back(v.index);
    sums[bin] += v.value;
  }

  p.mean_hardness.assign(k, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t l = 0; l < k; ++l)
    if (!p.members[l].empty()) p.mean_hardness[l] = sums[l] / static_cast<double>(p.members[l].size());
  return p;
}

double self_paced_alpha(std::size_t i, std::size_t n, double alpha_cap) {
  if (n == 0 || i < 1 || i > n)
    throw RangeError("iteration " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
  const double theta =
      static_cast<double>(i - 1) / static_cast<double>(n) * (std::numbers::pi / 2.0);
  return std::min(std::tan(theta), alpha_cap);
}

std::vector<double> bin_sampling_weights(const BinPartition& partition, double alpha) {
  if (!(alpha >= 0.0)) throw ParameterError("self-paced factor must be nonnegative");
  std::vector<double> w(partition.k, 0.0);
  double total = 0.0;
  for (std::size_t l = 0; l < partition.k; ++l) {
    if (!partition.nonempty(l)) continue;
    const double denom = partition.mean_hardness[l] + alpha;
    w[l] = 1.0 / (denom > 0.0 ? denom : kZeroHardnessEpsilon);
    total += w[l];
  }
  if (total <= 0.0) throw InvalidInputError("all hardness bins are empty");
  for (double& v : w) v /= total;
  return w;
}

std::vector<std::size_t> apportion_quotas(std::span<const double> weights,
                                          std::span<const std::size_t> capacities,
                                          std::size_t target) {
  if (weights.size() != capacities.size())
    throw InvalidInputError("weights and capacities differ in length");
  const std::size_t k = weights.size();
  std::vector<std::size_t> quota(k, 0);

  // Each pass apportions what is still missing over the bins with room left.
  // Capping deficits carry over to the next pass.
  for (std::size_t remaining = target; remaining > 0;) {
    std::vector<std::size_t> open;
    double wsum = 0.0;
    for (std::size_t l = 0; l < k; ++l)
      if (quota[l] < capacities[l]) {
        open.push_back(l);
        wsum += std::max(weights[l], 0.0);
      }
    if (open.empty()) break;

    std::vector<double> share(k, 0.0);
    double ssum = 0.0;
    for (std::size_t l : open) {
      share[l] = wsum > 0.0 ? std::max(weights[l], 0.0)
                            : static_cast<double>(capacities[l] - quota[l]);
      ssum += share[l];
    }

    std::vector<double> frac(k, 0.0);
    std::size_t floors = 0;
    for (std::size_t l : open) {
      const double raw = share[l] / ssum * static_cast<double>(remaining);
      const auto base = std::min(static_cast<std::size_t>(std::floor(raw)), remaining);
      frac[l] = raw - static_cast<double>(base);
      floors += base;
      quota[l] += std::min(base, capacities[l] - quota[l]);
    }

    std::size_t leftover = remaining - std::min(remaining, floors);
    std::vector<std::size_t> order;
    for (std::size_t l : open)
      if (quota[l] < capacities[l]) order.push_back(l);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    for (std::size_t l : order) {
      if (leftover == 0) break;
      ++quota[l];
      --leftover;
    }

    const std::size_t assigned = std::accumulate(quota.begin(), quota.end(), std::size_t{0});
    remaining = target - std::min(target, assigned);
  }
  return quota;
}

IndexList sample_without_replacement(std::span<const std::size_t> pool, std::size_t count,
                                     RandomSource& rng) {
  if (count > pool.size()) throw ParameterError("sample larger than pool without replacement");
  IndexList work(pool.begin(), pool.end());
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.uniform_index(work.size() - i);
    std::swap(work[i], work[j]);
  }
  work.resize(count);
  return work;
}

IndexList sample_with_replacement(std::span<const std::size_t> pool, std::size_t count,
                                  RandomSource& rng) {
  if (pool.empty() && count > 0) throw InvalidInputError("cannot sample from an empty pool");
  IndexList out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(pool[rng.uniform_index(pool.size())]);
  return out;
}

SampleDraw self_paced_undersample(const BinPartition& partition, std::span<const double> weights,
                                  std::size_t target, RandomSource& rng) {
  if (target == 0) throw ParameterError("under-sampling target must be >= 1");
  if (weights.size() != partition.k) throw InvalidInputError("one weight per bin required");
  const auto sizes = partition.sizes();
  const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  if (total == 0) throw InvalidInputError("all hardness bins are empty");

  SampleDraw draw;
  draw.quotas = apportion_quotas(weights, sizes, target);
  for (std::size_t l = 0; l < partition.k; ++l) {
    auto picked = sample_without_replacement(partition.members[l], draw.quotas[l], rng);
    draw.indices.insert(draw.indices.end(), picked.begin(), picked.end());
  }
  if (draw.indices.size() < target) {
    IndexList all;
    all.reserve(total);
    for (const auto& m : partition.members) all.insert(all.end(), m.begin(), m.end());
    auto extra = sample_with_replacement(all, target - draw.indices.size(), rng);
    draw.indices.insert(draw.indices.end(), extra.begin(), extra.end());
    draw.with_replacement = true;
  }
  return draw;
}

SampleDraw random_undersample(std::span<const std::size_t> pool, std::size_t target,
                              RandomSource& rng) {
  if (pool.empty()) throw InvalidInputError("no majority samples to under-sample");
  SampleDraw draw;
  if (pool.size() >= target) {
    draw.indices = sample_without_replacement(pool, target, rng);
  } else {
    draw.indices = sample_with_replacement(pool, target, rng);
    draw.with_replacement = true;
  }
  return draw;
}

SampleDraw random_undersample(const Dataset& data, RandomSource& rng) {
  return random_undersample(data.majority_indices(), data.n_minority(), rng);
}

SampleDraw random_oversample(const Dataset& data, RandomSource& rng) {
  const auto& pos = data.minority_indices();
  if (pos.empty()) throw InvalidInputError("no minority samples to over-sample");
  const std::size_t target = data.n_majority();
  SampleDraw draw;
  if (target <= pos.size()) {
    draw.indices = sample_without_replacement(pos, target, rng);
    return draw;
  }
  draw.indices = pos;
  auto extra = sample_with_replacement(pos, target - pos.size(), rng);
  draw.indices.insert(draw.indices.end(), extra.begin(), extra.end());
  draw.with_replacement = true;
  return draw;
}

}  // namespace spe
