/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_LABELING_HPP
#define METRICDECOMP_LABELING_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "metricdecomp/partition.hpp"

namespace mdc {

// Multi-scale scheme: for each level i a (beta, 4*beta*2^i)-Lipschitz
// decomposition sampled k times, one random bit per cluster. A pair's
// distance is decoded from the smallest level where their bits agree at
// least 5k/8 times.
struct LabelSchemeMeta {
  double beta = 1.0;        // beta of the driving decomposer
  double delta_max = 1.0;   // distances live in [1, delta_max]
  std::int32_t k = 8;       // repetitions per level, >= 8
  std::int32_t level_count = 1;
  std::uint64_t seed = 0;

  double level_delta(std::int32_t level) const {
    return 4.0 * beta * std::pow(2.0, static_cast<double>(level));
  }
};

LabelSchemeMeta make_label_meta(double beta, double delta_max, std::int32_t k,
                                std::uint64_t seed);
std::int32_t default_label_repetitions(std::int32_t n);  // max(8, ceil(48 ln n))

// One point's bit matrix, level-major and little-endian packed per level.
struct Label {
  std::vector<std::uint8_t> packed;

  bool bit(std::int32_t level, std::int32_t rep, std::int32_t k) const {
    const std::int64_t pos = static_cast<std::int64_t>(level) * k + rep;
    return (packed[pos >> 3] >> (pos & 7)) & 1;
  }
};

struct LabelSet {
  LabelSchemeMeta meta;
  std::vector<Label> labels;

  std::int64_t bits_per_label() const {
    return static_cast<std::int64_t>(meta.level_count) * meta.k;
  }
};

// Sampler factory for the driving decomposition, one sampler per level scale.
using LevelSamplerFactory = std::function<std::unique_ptr<PartitionSampler>(double delta)>;

// Requires all pairwise distances in [1, delta_max].
LabelSet label_encode(const FiniteMetric& m, const LevelSamplerFactory& factory,
                      const LabelSchemeMeta& meta);

// Distance estimate 4*beta*2^i for the smallest qualifying level, or the
// 4*beta*delta_max sentinel when no level qualifies.
double label_decode(const Label& a, const Label& b, const LabelSchemeMeta& meta);

// Binary file: header {n u64, level_count u32, k u32, beta f64,
// delta_max f64, seed u64} little-endian, then n packed bit matrices.
void save_labels(const LabelSet& ls, const std::string& path);
LabelSet load_labels(const std::string& path);

// Hex dump for debugging: {"meta": {...}, "labels": ["..hex..", ...]}
std::string labels_to_hex_json(const LabelSet& ls);

}  // namespace mdc

#endif
