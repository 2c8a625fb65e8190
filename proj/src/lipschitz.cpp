/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "metricdecomp/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "metricdecomp/embeddings.hpp"
#include "metricdecomp/rng.hpp"

namespace mdc {

// ---------------------------------------------------------------- CKR

CkrSampler::CkrSampler(std::shared_ptr<const FiniteMetric> m, double delta)
    : m_(std::move(m)), delta_(delta) {
  if (!(delta_ > 0.0)) throw std::invalid_argument("ckr: delta must be positive");
}

Partition CkrSampler::sample(std::uint64_t seed) const {
  const FiniteMetric& m = *m_;
  const std::int32_t n = m.size();
  Rng rng(seed);
  const double radius = rng.uniform(delta_ / 4.0, delta_ / 2.0);
  const auto perm = rng.permutation(n);

  std::vector<std::int32_t> owner(n, -1);
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t j = 0; j < n; ++j) {
      if (m(i, perm[j]) <= radius) {
        owner[i] = perm[j];
        break;
      }
    }
  }
  Partition p = make_partition(delta_, std::span<const std::int32_t>(owner));
  return p;
}

Partition ckr_partition(const FiniteMetric& m, const LipschitzSpec& spec) {
  return CkrSampler(std::make_shared<FiniteMetric>(m), spec.delta).sample(spec.seed);
}

// ------------------------------------------------- Euclidean ball carving

EuclideanCarveSampler::EuclideanCarveSampler(std::shared_ptr<const PointSet> s, double delta)
    : s_(std::move(s)), delta_(delta) {
  if (!(delta_ > 0.0)) throw std::invalid_argument("carve: delta must be positive");
  if (s_->p != 2.0) throw std::invalid_argument("carve: input must be an l_2 point set");
}

namespace {

double l2_dist_sq(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

// Carves `points` (restricted to `alive` indices into the point set) into
// balls of radius delta/2 around centers drawn uniformly from the union of
// the delta/2-balls of the still-remaining points. Sampling a point uniformly
// and a uniform offset in the ball, then accepting with probability
// 1/multiplicity, is exactly uniform over the union.
void carve_l2(const PointSet& s, std::vector<std::int32_t> alive, double delta, Rng& rng,
              std::vector<std::int32_t>& owner_out, std::int32_t& next_label) {
  const std::int32_t d = s.d;
  const double radius = delta / 2.0;
  std::vector<double> center(d);
  std::vector<std::int32_t> captured;

  while (!alive.empty()) {
    if (alive.size() == 1) {
      owner_out[alive[0]] = next_label++;
      break;
    }
    // uniform point of the union of balls
    const auto pick = alive[static_cast<std::size_t>(rng.below(alive.size()))];
    double norm2 = 0.0;
    for (std::int32_t k = 0; k < d; ++k) {
      center[k] = rng.normal();
      norm2 += center[k] * center[k];
    }
    const double norm = std::sqrt(std::max(norm2, 1e-300));
    const double rr = radius * std::pow(rng.next_open(), 1.0 / d);
    const auto base = s.row(pick);
    for (std::int32_t k = 0; k < d; ++k) center[k] = base[k] + rr * center[k] / norm;

    captured.clear();
    const double r2 = radius * radius;
    for (std::int32_t idx : alive)
      if (l2_dist_sq(center, s.row(idx)) <= r2) captured.push_back(idx);
    // multiplicity correction keeps the center distribution uniform
    if (captured.size() > 1 && rng.next_double() * static_cast<double>(captured.size()) >= 1.0)
      continue;

    const std::int32_t label = next_label++;
    for (std::int32_t idx : captured) owner_out[idx] = label;
    std::erase_if(alive, [&](std::int32_t idx) { return owner_out[idx] >= 0; });
  }
}

}  // namespace

Partition EuclideanCarveSampler::sample(std::uint64_t seed) const {
  const PointSet& s = *s_;
  Rng rng(seed);
  std::vector<std::int32_t> owner(s.n, -1);
  std::vector<std::int32_t> alive(s.n);
  for (std::int32_t i = 0; i < s.n; ++i) alive[i] = i;
  std::int32_t next = 0;
  carve_l2(s, std::move(alive), delta_, rng, owner, next);
  return make_partition(delta_, std::span<const std::int32_t>(owner));
}

Partition euclidean_carve_partition(const PointSet& s, const LipschitzSpec& spec) {
  return EuclideanCarveSampler(std::make_shared<PointSet>(s), spec.delta).sample(spec.seed);
}

// ---------------------------------------------------------- l_2 pipeline

L2LipschitzSampler::L2LipschitzSampler(std::shared_ptr<const PointSet> s, double delta)
    : s_(std::move(s)), delta_(delta) {
  if (!(delta_ > 0.0)) throw std::invalid_argument("l2 decomposition: delta must be positive");
  if (s_->p != 2.0) throw std::invalid_argument("l2 decomposition: input must be l_2");
  jl_dim_ = std::max(kL2JlDimMin,
                     static_cast<std::int32_t>(std::ceil(kL2JlDimFactor * ln_floor(s_->n))));
  project_ = s_->d > jl_dim_;
}

Partition L2LipschitzSampler::sample(std::uint64_t seed) const {
  const PointSet& s = *s_;
  if (s.n == 1) {
    Partition p;
    p.delta = delta_;
    p.cluster_count = 1;
    p.assignment = {0};
    return p;
  }

  if (!project_) {
    // dimension is already O(log n); carve in the true space, no split needed
    return EuclideanCarveSampler(s_, delta_).sample(derive_seed(seed, 2));
  }

  const PointSet proj = jl_project(s, JlConfig{jl_dim_, derive_seed(seed, 1)});
  const double shrink = (1.0 - kL2MarginEps) / (1.0 + kL2MarginEps);
  Rng carve_rng(derive_seed(seed, 2));
  std::vector<std::int32_t> owner(s.n, -1);
  std::vector<std::int32_t> alive(s.n);
  for (std::int32_t i = 0; i < s.n; ++i) alive[i] = i;
  std::int32_t next = 0;
  carve_l2(proj, std::move(alive), delta_ * shrink, carve_rng, owner, next);
  Partition p = make_partition(delta_, std::span<const std::int32_t>(owner));

  // split pass: the diameter cap binds in the original space
  std::vector<std::vector<std::int32_t>> members(p.cluster_count);
  for (std::int32_t i = 0; i < s.n; ++i) members[p.assignment[i]].push_back(i);
  std::vector<std::int32_t> final_owner(s.n, -1);
  std::int32_t label = 0;
  for (std::int32_t c = 0; c < p.cluster_count; ++c) {
    const auto& idx = members[c];
    double diam = 0.0;
    for (std::size_t a = 0; a < idx.size() && diam <= delta_; ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        diam = std::max(diam, lp_distance(s, idx[a], idx[b]));
    if (diam <= delta_) {
      const std::int32_t l = label++;
      for (std::int32_t i : idx) final_owner[i] = l;
      continue;
    }
    PointSet sub = make_point_set([&] {
      std::vector<double> coords;
      coords.reserve(idx.size() * s.d);
      for (std::int32_t i : idx)
        coords.insert(coords.end(), s.row(i).begin(), s.row(i).end());
      return coords;
    }(), static_cast<std::int32_t>(idx.size()), s.d, 2.0, false);
    Rng split_rng(derive_seed(seed, 3, static_cast<std::uint64_t>(c)));
    std::vector<std::int32_t> sub_owner(sub.n, -1);
    std::vector<std::int32_t> sub_alive(sub.n);
    for (std::int32_t i = 0; i < sub.n; ++i) sub_alive[i] = i;
    std::int32_t sub_next = 0;
    carve_l2(sub, std::move(sub_alive), delta_ / 2.0, split_rng, sub_owner, sub_next);
    std::vector<std::int32_t> remap(sub_next, -1);
    for (std::int32_t i = 0; i < sub.n; ++i) {
      if (remap[sub_owner[i]] == -1) remap[sub_owner[i]] = label++;
      final_owner[idx[i]] = remap[sub_owner[i]];
    }
  }
  return make_partition(delta_, std::span<const std::int32_t>(final_owner));
}

Partition l2_lipschitz_partition(const PointSet& s, const LipschitzSpec& spec) {
  return L2LipschitzSampler(std::make_shared<PointSet>(s), spec.delta).sample(spec.seed);
}

// ---------------------------------------------------------- l_p pipeline

LpLipschitzSampler::LpLipschitzSampler(std::shared_ptr<const PointSet> s, double delta)
    : s_(std::move(s)), delta_(delta) {
  if (!(delta_ > 0.0)) throw std::invalid_argument("lp decomposition: delta must be positive");
  if (!(s_->p > 2.0) || s_->p == kInfExponent)
    throw std::invalid_argument("lp decomposition: exponent must be in (2, inf)");
  m_ = std::make_shared<FiniteMetric>(FiniteMetric::from_points(*s_));
  const double p = s_->p;
  const double ln_n = ln_floor(s_->n);
  delta_init_ = std::pow(ln_n, 1.0 / p) * delta_ / 4.0;
  delta2_ = 0.5 * delta_ / std::pow(ln_n, 0.5 - 1.0 / p);
}

LpLipschitzSampler::Stages LpLipschitzSampler::sample_stages(std::uint64_t seed) const {
  const PointSet& s = *s_;
  Stages out;
  out.initial = CkrSampler(m_, delta_init_).sample(derive_seed(seed, 1));
  if (s.n == 1) {
    out.composed = out.initial;
    out.composed.delta = delta_;
    return out;
  }

  std::vector<std::vector<std::int32_t>> members(out.initial.cluster_count);
  for (std::int32_t i = 0; i < s.n; ++i) members[out.initial.assignment[i]].push_back(i);

  std::vector<std::int64_t> owner(s.n, -1);
  std::int64_t offset = 0;
  for (std::int32_t c = 0; c < out.initial.cluster_count; ++c) {
    const auto& idx = members[c];
    if (idx.size() == 1) {
      owner[idx[0]] = offset++;
      continue;
    }
    std::vector<double> coords;
    coords.reserve(idx.size() * s.d);
    for (std::int32_t i : idx) coords.insert(coords.end(), s.row(i).begin(), s.row(i).end());
    PointSet cluster = make_point_set(std::move(coords), static_cast<std::int32_t>(idx.size()),
                                      s.d, s.p, false);
    // translate by the cluster's first point so norms <= diameter <= c0
    MazurConfig mz{s.p, delta_init_,
                   std::vector<double>(cluster.row(0).begin(), cluster.row(0).end())};
    const PointSet embedded = mazur_map(cluster, mz);
    const Partition sub =
        L2LipschitzSampler(std::make_shared<PointSet>(embedded), delta2_)
            .sample(derive_seed(seed, 2, static_cast<std::uint64_t>(c)));
    for (std::size_t i = 0; i < idx.size(); ++i) owner[idx[i]] = offset + sub.assignment[i];
    offset += sub.cluster_count;
  }
  out.composed = make_partition(delta_, std::span<const std::int64_t>(owner));
  return out;
}

Partition LpLipschitzSampler::sample(std::uint64_t seed) const {
  return sample_stages(seed).composed;
}

Partition lp_lipschitz_partition(const PointSet& s, const LipschitzSpec& spec) {
  return LpLipschitzSampler(std::make_shared<PointSet>(s), spec.delta).sample(spec.seed);
}

std::unique_ptr<PartitionSampler> make_lipschitz_sampler(std::shared_ptr<const PointSet> s,
                                                         double delta) {
  if (s->p == 2.0) return std::make_unique<L2LipschitzSampler>(std::move(s), delta);
  if (s->p > 2.0 && s->p != kInfExponent)
    return std::make_unique<LpLipschitzSampler>(std::move(s), delta);
  auto m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(*s));
  return std::make_unique<CkrSampler>(std::move(m), delta);
}

}  // namespace mdc
