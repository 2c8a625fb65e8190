/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_VERIFY_HPP
#define METRICDECOMP_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "metricdecomp/lsh.hpp"
#include "metricdecomp/partition.hpp"

namespace mdc {

// Two-sided 99% Hoeffding confidence radius for an empirical probability.
double hoeffding_half_width(long trials, double confidence_delta = 0.01);

struct PairStat {
  std::int32_t i = 0, j = 0;
  double rho = 0.0;
  double p_hat = 0.0;       // estimated separation / togetherness / collision rate
  double half_width = 0.0;
};

struct EstimationReport {
  std::string kind;          // "beta", "eta", "lsh", "diameter"
  std::vector<PairStat> pairs;
  double aggregate = 0.0;    // beta_hat or eta_hat
  long trials = 0;
  std::uint64_t seed_lo = 0, seed_hi = 0;

  // lsh-only extras
  double p1_hat = 0.0, p2_hat = 0.0, gamma_hat = 0.0;
  double gamma_lo = 0.0, gamma_hi = 0.0;
  bool p2_zero = false;      // far pairs never collided; gamma reported as 0

  // diameter-only extras
  long violations = 0;
  double max_diameter = 0.0;

  std::string to_json() const;
};

// Deterministic pair sample: m distinct index pairs drawn from the seed, the
// globally closest pair always included.
std::vector<std::pair<std::int32_t, std::int32_t>> sample_pairs(const FiniteMetric& m,
                                                                std::int32_t count,
                                                                std::uint64_t seed);

// beta_hat = max over sampled pairs with 0 < rho <= delta of
// (p_sep + hw) * delta / rho. Pairs with rho > delta are reported but
// excluded: the separation bound is vacuous there.
EstimationReport estimate_beta(const PartitionSampler& sampler, const FiniteMetric& m,
                               double delta,
                               std::span<const std::pair<std::int32_t, std::int32_t>> pairs,
                               long trials, std::uint64_t seed_lo, std::int32_t threads = 0);

// eta_hat = min over qualifying pairs (rho <= delta/t) of max(p_together - hw, 0).
EstimationReport estimate_eta(const PartitionSampler& sampler, const FiniteMetric& m,
                              double delta, double t, long trials, std::uint64_t seed_lo,
                              std::int32_t threads = 0, std::int32_t max_pairs = 128);

// Collision rates over the given near (rho <= r) and far (rho > t*r) pairs;
// p1_hat is the worst near rate, p2_hat the worst far rate,
// gamma_hat = ln(1/p1_hat)/ln(1/p2_hat) with a flagged zero when far pairs
// never collide. Throws if either class is empty or far pairs always collide.
EstimationReport estimate_lsh_rates(const LshFamily& family, const FiniteMetric& m,
                                    std::span<const std::pair<std::int32_t, std::int32_t>> near_pairs,
                                    std::span<const std::pair<std::int32_t, std::int32_t>> far_pairs,
                                    long draws, std::uint64_t seed_lo, std::int32_t threads = 0);

// Counts diameter-cap violations over sampled partitions (expected: zero).
EstimationReport check_diameter_over_samples(const PartitionSampler& sampler,
                                             const FiniteMetric& m, long trials,
                                             std::uint64_t seed_lo, std::int32_t threads = 0);

// High-trial reference table of all pairwise separation probabilities for
// tiny instances (n <= 8); the regression fixture generator.
EstimationReport brute_force_partition_stats(const PartitionSampler& sampler,
                                             const FiniteMetric& m, long trials = 1000000,
                                             std::uint64_t seed_lo = 0, std::int32_t threads = 0);

// Exact separation probability of the permutation/uniform-radius sampler on a
// two-point instance: P[R < rho] with R ~ U[delta/4, delta/2].
double ckr_two_point_separation(double rho, double delta);

}  // namespace mdc

#endif
