#include <cmath>
#include <memory>

#include "doctest.h"
#include "metricdecomp/gen.hpp"
#include "metricdecomp/labeling.hpp"
#include "metricdecomp/lipschitz.hpp"
#include "metricdecomp/verify.hpp"

using namespace mdc;

TEST_CASE("always-separated pairs agree with frequency one half" * doctest::timeout(300)) {
  // two points at distance 10 with beta = 1: levels 0 and 1 have scales 4 and
  // 8 < 10, so the pair is always split there and the bits are fair coins
  const PointSet two = make_point_set({0.0, 10.0}, 2, 1, 2.0);
  const auto m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(two));
  const LevelSamplerFactory factory = [&](double delta) -> std::unique_ptr<PartitionSampler> {
    return std::make_unique<CkrSampler>(m, delta);
  };
  const std::int32_t k = 8;
  long agree = 0, total = 0;
  for (std::uint64_t enc = 0; enc < 10000; ++enc) {
    const LabelSet ls = label_encode(*m, factory, make_label_meta(1.0, 16.0, k, enc));
    for (std::int32_t level = 0; level < 2; ++level)
      for (std::int32_t rep = 0; rep < k; ++rep) {
        agree += ls.labels[0].bit(level, rep, k) == ls.labels[1].bit(level, rep, k);
        ++total;
      }
  }
  const double rate = static_cast<double>(agree) / static_cast<double>(total);
  CHECK(rate == doctest::Approx(0.5).epsilon(0.04));  // 0.5 +- 0.02
}

TEST_CASE("end-to-end decode bracket on a small l_2 instance" * doctest::timeout(600)) {
  const auto s =
      std::make_shared<PointSet>(normalize_min_distance(gen_gaussian(64, 8, 2.0, 55)));
  const auto m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(*s));
  const double delta_max = std::pow(2.0, std::ceil(std::log2(m->diameter())));

  // beta of the driving sampler, measured at a mid scale
  const double mid = 0.25 * m->diameter();
  const L2LipschitzSampler probe(s, mid);
  const auto pairs = sample_pairs(*m, 32, 3);
  const double beta_hat =
      std::max(estimate_beta(probe, *m, mid, pairs, 1000, 21, 2).aggregate, 1.0);

  const LevelSamplerFactory factory = [&](double delta) -> std::unique_ptr<PartitionSampler> {
    return std::make_unique<L2LipschitzSampler>(s, delta);
  };
  const LabelSchemeMeta meta =
      make_label_meta(beta_hat, delta_max, default_label_repetitions(64), 77);
  const LabelSet ls = label_encode(*m, factory, meta);
  CHECK(ls.bits_per_label() == static_cast<std::int64_t>(meta.level_count) * meta.k);

  long ok = 0, total = 0;
  for (std::int32_t i = 0; i < 64; ++i) {
    for (std::int32_t j = i + 1; j < 64; ++j) {
      const double est = label_decode(ls.labels[i], ls.labels[j], meta);
      const double rho = (*m)(i, j);
      ok += est >= rho && est <= 8.0 * beta_hat * rho;
      ++total;
    }
  }
  CHECK(static_cast<double>(ok) / static_cast<double>(total) >= 0.99);
}
