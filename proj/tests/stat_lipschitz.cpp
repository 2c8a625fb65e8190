#include <cmath>
#include <memory>

#include "doctest.h"
#include "metricdecomp/gen.hpp"
#include "metricdecomp/lipschitz.hpp"
#include "metricdecomp/verify.hpp"

using namespace mdc;

TEST_CASE("ckr matches the two-point closed form" * doctest::timeout(120)) {
  const double delta = 1.0;
  for (double rho : {delta / 8.0, delta / 4.0, 3.0 * delta / 8.0}) {
    const PointSet two = make_point_set({0.0, rho}, 2, 1, 2.0);
    const auto m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(two));
    const CkrSampler sampler(m, delta);
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs{{0, 1}};
    const EstimationReport rep = estimate_beta(sampler, *m, delta, pairs, 100000, 40, 2);
    const double want = ckr_two_point_separation(rho, delta);
    CHECK(std::abs(rep.pairs[0].p_hat - want) <= 3.0 * rep.pairs[0].half_width);
    // the coarse bound c * ln(n+1) * rho / delta with c <= 4 also holds
    CHECK(rep.pairs[0].p_hat <= 4.0 * std::log(3.0) * rho / delta + rep.pairs[0].half_width);
  }
}

TEST_CASE("euclidean carve separation rate for a close planar pair" * doctest::timeout(120)) {
  // d = 2, distance delta/10: rate <= c * sqrt(2)/10 with c <= 4
  const double delta = 1.0;
  const PointSet two = make_point_set({0.0, 0.0, 0.1, 0.0}, 2, 2, 2.0);
  const auto pts = std::make_shared<PointSet>(two);
  const auto m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(two));
  const EuclideanCarveSampler sampler(pts, delta);
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs{{0, 1}};
  const EstimationReport rep = estimate_beta(sampler, *m, delta, pairs, 100000, 17, 2);
  CHECK(rep.pairs[0].p_hat <= 4.0 * std::sqrt(2.0) / 10.0);
}

TEST_CASE("separation probability is monotone in distance (3 hw slack)" * doctest::timeout(180)) {
  const PointSet line = gen_line(16, 2.0);
  const auto m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(line));
  const double delta = 12.0;
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs{{0, 1}, {0, 2}, {0, 4}};
  const CkrSampler sampler(m, delta);
  const EstimationReport rep = estimate_beta(sampler, *m, delta, pairs, 20000, 23, 2);
  const double hw = rep.pairs[0].half_width;
  CHECK(rep.pairs[0].p_hat <= rep.pairs[1].p_hat + 3.0 * hw);
  CHECK(rep.pairs[1].p_hat <= rep.pairs[2].p_hat + 3.0 * hw);
}

TEST_CASE("l2 decomposition beta on the high-dimensional reference instance" *
          doctest::timeout(600)) {
  // n = 1024, d = 256: beta_hat <= 4 sqrt(ln n) at a scale 4x the median
  const auto s = std::make_shared<PointSet>(gen_gaussian(1024, 256, 2.0, 77));
  const auto m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(*s));
  std::vector<double> sample;
  for (std::int32_t i = 0; i < 200; ++i) sample.push_back((*m)(i, (i * 31 + 5) % 1024));
  std::sort(sample.begin(), sample.end());
  const double delta = 4.0 * sample[sample.size() / 2];

  const L2LipschitzSampler sampler(s, delta);
  const auto pairs = sample_pairs(*m, 48, 7);
  const EstimationReport rep = estimate_beta(sampler, *m, delta, pairs, 2000, 5, 2);
  CHECK(rep.aggregate <= 4.0 * std::sqrt(std::log(1024.0)));
}

TEST_CASE("lp pipeline: absolute diameter cap on a mid-size instance" * doctest::timeout(300)) {
  const auto s = std::make_shared<PointSet>(gen_gaussian(256, 32, 4.0, 41));
  const auto m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(*s));
  const LpLipschitzSampler sampler(s, 0.5 * m->diameter());
  const EstimationReport rep = check_diameter_over_samples(sampler, *m, 400, 11, 2);
  CHECK(rep.violations == 0);
  CHECK(rep.max_diameter <= sampler.delta());
}

TEST_CASE("lp pipeline: beta growth across n is sublinear in ln n" * doctest::timeout(900)) {
  // beta_hat(2048)/beta_hat(128) <= ln(2048)/ln(128), the trend the
  // composition is built for (measured with 1000 samples per instance)
  double beta_small = 0.0, beta_big = 0.0;
  for (std::int32_t n : {128, 2048}) {
    const auto s = std::make_shared<PointSet>(gen_gaussian(n, 32, 4.0, 1000 + n));
    const auto m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(*s));
    std::vector<double> sample;
    for (std::int32_t i = 0; i < 200; ++i) sample.push_back((*m)(i, (i * 37 + 11) % n));
    std::sort(sample.begin(), sample.end());
    const double delta = 2.0 * sample[sample.size() / 2];
    const LpLipschitzSampler sampler(s, delta);
    const auto pairs = sample_pairs(*m, 48, 7);
    const EstimationReport rep = estimate_beta(sampler, *m, delta, pairs, 1000, 3, 2);
    (n == 128 ? beta_small : beta_big) = rep.aggregate;
  }
  CHECK(beta_big / beta_small <= std::log(2048.0) / std::log(128.0));
}
