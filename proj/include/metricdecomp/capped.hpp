/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_CAPPED_HPP
#define METRICDECOMP_CAPPED_HPP

#include <cstdint>
#include <memory>
#include <optional>

#include "metricdecomp/lsh.hpp"
#include "metricdecomp/partition.hpp"

namespace mdc {

struct CappedSpec {
  double t = 2.0;
  double delta = 1.0;
  std::uint64_t seed = 0;
  double eta_claim = 0.0;  // claimed eta for reporting; 0 = unset
};

// Exponential ball carving for arbitrary finite metrics: centers visited in a
// uniformly random order, radii truncated-exponential on [0, delta/2] with
// rate 2 ln n / delta. Memoryless radii give the multiplicative survival
// bound; diameter <= delta always.
class GeneralCappedSampler final : public PartitionSampler {
 public:
  GeneralCappedSampler(std::shared_ptr<const FiniteMetric> m, double t, double delta);
  Partition sample(std::uint64_t seed) const override;
  double delta() const override { return delta_; }
  std::int32_t size() const override { return m_->size(); }
  double rate() const { return theta_; }

 private:
  std::shared_ptr<const FiniteMetric> m_;
  double t_, delta_, theta_;
};

// Buckets of k concatenated hash draws, with oversize buckets split by CKR
// carving so the diameter cap is absolute. k is calibrated from the measured
// far-pair collision rate: k = ceil(2 ln n / ln(1/p2_hat)), k = 1 when far
// pairs never collide. Requires r = delta/t and t*r = delta.
class LshCappedSampler final : public PartitionSampler {
 public:
  LshCappedSampler(LshFamily family, std::shared_ptr<const FiniteMetric> m, double t,
                   double delta, std::optional<std::int32_t> fixed_k = std::nullopt);
  Partition sample(std::uint64_t seed) const override;
  double delta() const override { return delta_; }
  std::int32_t size() const override { return m_->size(); }
  std::int32_t hash_count() const { return k_; }
  double calibrated_p2() const { return p2_hat_; }

  // bucket partition from exactly k concatenated draws, no split pass;
  // exposed because refinement in k is an exact invariant worth testing
  Partition bucket_partition(std::uint64_t seed, std::int32_t k) const;

 private:
  LshFamily family_;
  std::shared_ptr<const FiniteMetric> m_;
  double t_, delta_;
  std::int32_t k_ = 1;
  double p2_hat_ = 0.0;
};

// Composed capped decomposition for p in (2, inf):
//   1. general carving at (t1 = t^q/4, delta1 = delta/(4 t^{1-q}))
//   2. per cluster, scaled Mazur map with c0 = delta1
//   3. per embedded cluster, l_2 LSH carving at (t2 = t^{q/2}/2,
//      delta2 = delta/(2 t^{1-q/2}))
//   4. preimage
// Stages keep delta_i / t_i = delta / t exactly. For small t the paper's
// t_i fall below 1, which makes a stage's cap vacuous; stages are clamped to
// t_i >= 1 preserving the ratio, and a final split pass keeps the diameter
// absolute in the rare configurations where the contraction bound alone
// does not.
class LpCappedSampler final : public PartitionSampler {
 public:
  LpCappedSampler(std::shared_ptr<const PointSet> s, double t, double delta);
  Partition sample(std::uint64_t seed) const override;
  double delta() const override { return delta_; }
  std::int32_t size() const override { return s_->n; }

  double t1() const { return t1_; }
  double t2() const { return t2_; }
  double delta1() const { return delta1_; }
  double delta2() const { return delta2_; }

 private:
  std::shared_ptr<const PointSet> s_;
  std::shared_ptr<const FiniteMetric> m_;
  double t_, delta_;
  double t1_, delta1_, t2_, delta2_;
  std::int32_t stage2_k_ = 1;
};

Partition general_capped_partition(const FiniteMetric& m, const CappedSpec& spec);
Partition lsh_to_capped_partition(const LshFamily& family, const FiniteMetric& m,
                                  const CappedSpec& spec);
Partition l2_capped_partition(const PointSet& s, const CappedSpec& spec);
Partition lp_capped_partition(const PointSet& s, const CappedSpec& spec);

// Route by exponent: p == 2 -> ball-lattice LSH, p in (1,2) -> snowflake LSH,
// p in (2, inf) -> composed, otherwise general carving.
std::unique_ptr<PartitionSampler> make_capped_sampler(std::shared_ptr<const PointSet> s, double t,
                                                      double delta);

}  // namespace mdc

#endif
