/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_LIPSCHITZ_HPP
#define METRICDECOMP_LIPSCHITZ_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>

#include "metricdecomp/partition.hpp"
#include "metricdecomp/point_set.hpp"

namespace mdc {

struct LipschitzSpec {
  double delta = 1.0;
  std::uint64_t seed = 0;
  double beta_claim = 0.0;  // claimed beta for reporting; 0 = unset
};

// log in parameter formulas means natural log, floored at 1 for tiny n
inline double ln_floor(std::int32_t n) {
  return std::max(std::log(static_cast<double>(std::max(n, 1))), 1.0);
}

// Random-permutation / uniform-radius decomposition for arbitrary finite
// metrics: R ~ U[delta/4, delta/2], each point joins the first point in the
// permutation within distance R. Diameter <= 2R <= delta always; separation
// probability O(log n * rho / delta).
class CkrSampler final : public PartitionSampler {
 public:
  CkrSampler(std::shared_ptr<const FiniteMetric> m, double delta);
  Partition sample(std::uint64_t seed) const override;
  double delta() const override { return delta_; }
  std::int32_t size() const override { return m_->size(); }

 private:
  std::shared_ptr<const FiniteMetric> m_;
  double delta_;
};

// Iterative ball carving in l_2: centers drawn uniformly from the
// delta/2-neighborhood of the remaining points (the union of their
// delta/2-balls, sampled exactly via multiplicity-corrected rejection), each
// carve removes the ball of radius delta/2. Diameter <= delta always.
class EuclideanCarveSampler final : public PartitionSampler {
 public:
  EuclideanCarveSampler(std::shared_ptr<const PointSet> s, double delta);
  Partition sample(std::uint64_t seed) const override;
  double delta() const override { return delta_; }
  std::int32_t size() const override { return s_->n; }

 private:
  std::shared_ptr<const PointSet> s_;
  double delta_;
};

// Tunable constants of the l_2 pipeline. The projection dimension is
// ceil(kL2JlDimFactor * ln n) and the projected carving scale is
// delta * (1 - eps) / (1 + eps).
inline constexpr double kL2JlDimFactor = 1.0;
inline constexpr std::int32_t kL2JlDimMin = 3;
inline constexpr double kL2MarginEps = 1.0 / 3.0;

// l_2 decomposition: JL-project to O(log n) dimensions, carve at the shrunk
// scale, then split any cluster whose original-space diameter exceeds delta
// by re-carving it at delta/2. When the input dimension is already at most
// the projection target the projection is skipped and no split can occur.
class L2LipschitzSampler final : public PartitionSampler {
 public:
  L2LipschitzSampler(std::shared_ptr<const PointSet> s, double delta);
  Partition sample(std::uint64_t seed) const override;
  double delta() const override { return delta_; }
  std::int32_t size() const override { return s_->n; }
  std::int32_t projection_dim() const { return jl_dim_; }

 private:
  std::shared_ptr<const PointSet> s_;
  double delta_;
  std::int32_t jl_dim_;
  bool project_;
};

// Composed decomposition for p in (2, inf):
//   1. CKR at delta_init = ln^{1/p} n * delta / 4
//   2. per cluster, scaled Mazur map with c0 = delta_init
//   3. per embedded cluster, l_2 decomposition at delta_2 = delta / (2 ln^{1/2 - 1/p} n)
//   4. preimage
// Cluster diameter <= delta holds deterministically by the contraction bound.
class LpLipschitzSampler final : public PartitionSampler {
 public:
  LpLipschitzSampler(std::shared_ptr<const PointSet> s, double delta);
  Partition sample(std::uint64_t seed) const override;
  double delta() const override { return delta_; }
  std::int32_t size() const override { return s_->n; }

  struct Stages {
    Partition initial;  // stage-1 partition at delta_init
    Partition composed;
  };
  Stages sample_stages(std::uint64_t seed) const;

  double delta_init() const { return delta_init_; }
  double delta_stage2() const { return delta2_; }

 private:
  std::shared_ptr<const PointSet> s_;
  std::shared_ptr<const FiniteMetric> m_;
  double delta_, delta_init_, delta2_;
};

// One-shot wrappers matching the sampler constructors.
Partition ckr_partition(const FiniteMetric& m, const LipschitzSpec& spec);
Partition euclidean_carve_partition(const PointSet& s, const LipschitzSpec& spec);
Partition l2_lipschitz_partition(const PointSet& s, const LipschitzSpec& spec);
Partition lp_lipschitz_partition(const PointSet& s, const LipschitzSpec& spec);

// Route by exponent: p == 2 -> L2, p in (2, inf) -> Lp, otherwise CKR.
std::unique_ptr<PartitionSampler> make_lipschitz_sampler(std::shared_ptr<const PointSet> s,
                                                         double delta);

}  // namespace mdc

#endif
