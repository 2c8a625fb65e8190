/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "metricdecomp/labeling.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "metricdecomp/rng.hpp"

namespace mdc {

std::int32_t default_label_repetitions(std::int32_t n) {
  const double ln_n = std::log(static_cast<double>(std::max(n, 2)));
  return std::max<std::int32_t>(8, static_cast<std::int32_t>(std::ceil(48.0 * ln_n)));
}

LabelSchemeMeta make_label_meta(double beta, double delta_max, std::int32_t k,
                                std::uint64_t seed) {
  if (!(beta > 0.0)) throw std::invalid_argument("labeling: beta must be positive");
  if (!(delta_max >= 1.0)) throw std::invalid_argument("labeling: delta_max must be >= 1");
  if (k < 8) throw std::invalid_argument("labeling: k must be >= 8");
  LabelSchemeMeta meta;
  meta.beta = beta;
  meta.delta_max = delta_max;
  meta.k = k;
  meta.level_count =
      static_cast<std::int32_t>(std::ceil(std::log2(std::max(delta_max, 1.0)))) + 1;
  meta.seed = seed;
  return meta;
}

LabelSet label_encode(const FiniteMetric& m, const LevelSamplerFactory& factory,
                      const LabelSchemeMeta& meta) {
  const std::int32_t n = m.size();
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = i + 1; j < n; ++j) {
      const double r = m(i, j);
      if (r < 1.0 - 1e-9 || r > meta.delta_max * (1.0 + 1e-9))
        throw std::invalid_argument("labeling: distances must lie in [1, delta_max]");
    }

  LabelSet ls;
  ls.meta = meta;
  const std::int64_t bits = static_cast<std::int64_t>(meta.level_count) * meta.k;
  const std::size_t bytes = static_cast<std::size_t>((bits + 7) / 8);
  ls.labels.assign(n, Label{std::vector<std::uint8_t>(bytes, 0)});

  for (std::int32_t level = 0; level < meta.level_count; ++level) {
    const auto sampler = factory(meta.level_delta(level));
    for (std::int32_t rep = 0; rep < meta.k; ++rep) {
      const Partition p = sampler->sample(
          derive_seed(meta.seed, static_cast<std::uint64_t>(level), static_cast<std::uint64_t>(rep)));
      // one uniform bit per cluster
      Rng bit_rng(derive_seed(meta.seed, 0xB175ull, static_cast<std::uint64_t>(level),
                              static_cast<std::uint64_t>(rep)));
      std::vector<std::uint8_t> cluster_bit(p.cluster_count);
      for (auto& b : cluster_bit) b = static_cast<std::uint8_t>(bit_rng.next_u64() & 1);
      const std::int64_t pos = static_cast<std::int64_t>(level) * meta.k + rep;
      for (std::int32_t i = 0; i < n; ++i) {
        if (cluster_bit[p.assignment[i]])
          ls.labels[i].packed[pos >> 3] |= static_cast<std::uint8_t>(1u << (pos & 7));
      }
    }
  }
  return ls;
}

double label_decode(const Label& a, const Label& b, const LabelSchemeMeta& meta) {
  if (a.packed.size() != b.packed.size())
    throw std::invalid_argument("labeling: labels come from different schemes");
  for (std::int32_t level = 0; level < meta.level_count; ++level) {
    // agreement count over the k repetitions of this level
    std::int64_t agree = 0;
    const std::int64_t base = static_cast<std::int64_t>(level) * meta.k;
    for (std::int32_t rep = 0; rep < meta.k; ++rep) {
      const std::int64_t pos = base + rep;
      const bool ba = (a.packed[pos >> 3] >> (pos & 7)) & 1;
      const bool bb = (b.packed[pos >> 3] >> (pos & 7)) & 1;
      agree += ba == bb;
    }
    if (8 * agree >= 5 * static_cast<std::int64_t>(meta.k)) return meta.level_delta(level);
  }
  return 4.0 * meta.beta * meta.delta_max;  // no qualifying level
}

namespace {

template <typename T>
void write_le(std::ofstream& out, T v) {
  static_assert(std::endian::native == std::endian::little);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

void save_labels(const LabelSet& ls, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_le<std::uint64_t>(out, static_cast<std::uint64_t>(ls.labels.size()));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(ls.meta.level_count));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(ls.meta.k));
  write_le<double>(out, ls.meta.beta);
  write_le<double>(out, ls.meta.delta_max);
  write_le<std::uint64_t>(out, ls.meta.seed);
  for (const auto& label : ls.labels)
    out.write(reinterpret_cast<const char*>(label.packed.data()),
              static_cast<std::streamsize>(label.packed.size()));
}

LabelSet load_labels(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  const auto n = read_le<std::uint64_t>(in);
  LabelSet ls;
  ls.meta.level_count = static_cast<std::int32_t>(read_le<std::uint32_t>(in));
  ls.meta.k = static_cast<std::int32_t>(read_le<std::uint32_t>(in));
  ls.meta.beta = read_le<double>(in);
  ls.meta.delta_max = read_le<double>(in);
  ls.meta.seed = read_le<std::uint64_t>(in);
  const std::int64_t bits = static_cast<std::int64_t>(ls.meta.level_count) * ls.meta.k;
  const std::size_t bytes = static_cast<std::size_t>((bits + 7) / 8);
  ls.labels.assign(n, Label{std::vector<std::uint8_t>(bytes, 0)});
  for (auto& label : ls.labels)
    in.read(reinterpret_cast<char*>(label.packed.data()), static_cast<std::streamsize>(bytes));
  if (!in) throw std::runtime_error("label file truncated: " + path);
  return ls;
}

std::string labels_to_hex_json(const LabelSet& ls) {
  static const char* hex = "0123456789abcdef";
  nlohmann::json j;
  j["meta"] = {{"beta", ls.meta.beta},
               {"delta_max", ls.meta.delta_max},
               {"k", ls.meta.k},
               {"level_count", ls.meta.level_count},
               {"seed", ls.meta.seed}};
  auto arr = nlohmann::json::array();
  for (const auto& label : ls.labels) {
    std::string s;
    s.reserve(label.packed.size() * 2);
    for (std::uint8_t b : label.packed) {
      s.push_back(hex[b >> 4]);
      s.push_back(hex[b & 15]);
    }
    arr.push_back(std::move(s));
  }
  j["labels"] = std::move(arr);
  return j.dump();
}

}  // namespace mdc
