/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "metricdecomp/capped.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "metricdecomp/embeddings.hpp"
#include "metricdecomp/lipschitz.hpp"
#include "metricdecomp/rng.hpp"

namespace mdc {

// ------------------------------------------------------- general metrics

GeneralCappedSampler::GeneralCappedSampler(std::shared_ptr<const FiniteMetric> m, double t,
                                           double delta)
    : m_(std::move(m)), t_(t), delta_(delta) {
  if (!(t_ >= 1.0)) throw std::invalid_argument("capped: t must be >= 1");
  if (!(delta_ > 0.0)) throw std::invalid_argument("capped: delta must be positive");
  theta_ = 2.0 * std::log(static_cast<double>(std::max(m_->size(), 2))) / delta_;
}

Partition GeneralCappedSampler::sample(std::uint64_t seed) const {
  const FiniteMetric& m = *m_;
  const std::int32_t n = m.size();
  Rng rng(seed);
  const auto order = rng.permutation(n);
  const double cap = delta_ / 2.0;
  const double trunc_mass = 1.0 - std::exp(-theta_ * cap);

  std::vector<std::int32_t> owner(n, -1);
  std::int32_t assigned = 0;
  for (std::int32_t j = 0; j < n && assigned < n; ++j) {
    const std::int32_t c = order[j];
    // inverse-cdf draw of the exponential truncated to [0, delta/2]
    const double radius = -std::log1p(-rng.next_double() * trunc_mass) / theta_;
    if (owner[c] != -1) continue;
    for (std::int32_t i = 0; i < n; ++i) {
      if (owner[i] == -1 && m(c, i) <= radius) {
        owner[i] = c;
        ++assigned;
      }
    }
  }
  return make_partition(delta_, std::span<const std::int32_t>(owner));
}

Partition general_capped_partition(const FiniteMetric& m, const CappedSpec& spec) {
  return GeneralCappedSampler(std::make_shared<FiniteMetric>(m), spec.t, spec.delta)
      .sample(spec.seed);
}

// ----------------------------------------------------------- LSH buckets

namespace {

constexpr std::int32_t kCalibrationDraws = 10000;
constexpr std::int32_t kCalibrationMaxPairs = 64;
constexpr std::int32_t kMaxHashCount = 64;

// far pairs (> delta) used to calibrate the concatenation depth
std::vector<std::pair<std::int32_t, std::int32_t>> far_pairs(const FiniteMetric& m,
                                                             double delta) {
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (std::int32_t i = 0; i < m.size(); ++i)
    for (std::int32_t j = i + 1; j < m.size(); ++j)
      if (m(i, j) > delta) pairs.emplace_back(i, j);
  if (static_cast<std::int32_t>(pairs.size()) > kCalibrationMaxPairs) {
    std::vector<std::pair<std::int32_t, std::int32_t>> picked;
    const double stride = static_cast<double>(pairs.size()) / kCalibrationMaxPairs;
    for (std::int32_t k = 0; k < kCalibrationMaxPairs; ++k)
      picked.push_back(pairs[static_cast<std::size_t>(k * stride)]);
    pairs = std::move(picked);
  }
  return pairs;
}

}  // namespace

LshCappedSampler::LshCappedSampler(LshFamily family, std::shared_ptr<const FiniteMetric> m,
                                   double t, double delta, std::optional<std::int32_t> fixed_k)
    : family_(std::move(family)), m_(std::move(m)), t_(t), delta_(delta) {
  if (!(t_ >= 1.0)) throw std::invalid_argument("capped: t must be >= 1");
  if (!(delta_ > 0.0)) throw std::invalid_argument("capped: delta must be positive");
  const double tol = 1e-9 * delta_;
  if (std::abs(family_.r - delta_ / t_) > tol || std::abs(family_.r * family_.t - delta_) > tol)
    throw std::invalid_argument("lsh capped: family thresholds must align (r = delta/t, tr = delta)");
  if (family_.points->n != m_->size())
    throw std::invalid_argument("lsh capped: family and metric sizes differ");

  if (fixed_k) {
    k_ = std::max(*fixed_k, 1);
    return;
  }
  if (family_.exact_diameter) {
    k_ = 1;  // buckets cannot span beyond t*r, so far pairs never collide
    return;
  }
  const auto pairs = far_pairs(*m_, delta_);
  if (pairs.empty()) {
    k_ = 1;  // no far pair exists, a single draw satisfies the far contract vacuously
    return;
  }
  std::vector<std::int64_t> collisions(pairs.size(), 0);
  for (std::int32_t d = 0; d < kCalibrationDraws; ++d) {
    const LshFunction fn(family_, derive_seed(0xCA11B8ull, static_cast<std::uint64_t>(d)));
    for (std::size_t q = 0; q < pairs.size(); ++q)
      if (fn.bucket(pairs[q].first) == fn.bucket(pairs[q].second)) ++collisions[q];
  }
  std::int64_t worst = 0;
  for (std::int64_t c : collisions) worst = std::max(worst, c);
  p2_hat_ = static_cast<double>(worst) / kCalibrationDraws;
  if (p2_hat_ >= 1.0)
    throw std::runtime_error("lsh capped: far pairs always collide, family is broken");
  if (p2_hat_ == 0.0) {
    k_ = 1;
  } else {
    const double ln_n = std::log(static_cast<double>(std::max(m_->size(), 2)));
    k_ = static_cast<std::int32_t>(std::ceil(2.0 * ln_n / std::log(1.0 / p2_hat_)));
    k_ = std::clamp(k_, 1, kMaxHashCount);
  }
}

Partition LshCappedSampler::bucket_partition(std::uint64_t seed, std::int32_t k) const {
  const std::int32_t n = m_->size();
  std::vector<std::uint64_t> ids(n, 0x42554Bull);
  for (std::int32_t j = 0; j < k; ++j) {
    const LshFunction fn(family_, derive_seed(seed, static_cast<std::uint64_t>(j)));
    for (std::int32_t i = 0; i < n; ++i) ids[i] = mix64(ids[i] ^ mix64(fn.bucket(i)));
  }
  std::vector<std::int64_t> labels(n);
  for (std::int32_t i = 0; i < n; ++i) labels[i] = static_cast<std::int64_t>(ids[i]);
  return make_partition(delta_, std::span<const std::int64_t>(labels));
}

Partition LshCappedSampler::sample(std::uint64_t seed) const {
  Partition p = bucket_partition(seed, k_);
  const FiniteMetric& m = *m_;
  const std::int32_t n = m.size();

  // split any bucket whose diameter exceeds delta; the cap is absolute
  std::vector<std::vector<std::int32_t>> members(p.cluster_count);
  for (std::int32_t i = 0; i < n; ++i) members[p.assignment[i]].push_back(i);
  std::vector<std::int64_t> owner(n, -1);
  std::int64_t label = 0;
  for (std::int32_t c = 0; c < p.cluster_count; ++c) {
    const auto& idx = members[c];
    double diam = 0.0;
    for (std::size_t a = 0; a < idx.size() && diam <= delta_; ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        diam = std::max(diam, m(idx[a], idx[b]));
    if (diam <= delta_) {
      for (std::int32_t i : idx) owner[i] = label;
      ++label;
      continue;
    }
    const FiniteMetric sub = m.restrict(idx);
    const Partition split = CkrSampler(std::make_shared<FiniteMetric>(sub), delta_)
                                .sample(derive_seed(seed, 0x5AB17ull, static_cast<std::uint64_t>(c)));
    for (std::size_t i = 0; i < idx.size(); ++i) owner[idx[i]] = label + split.assignment[i];
    label += split.cluster_count;
  }
  return make_partition(delta_, std::span<const std::int64_t>(owner));
}

Partition lsh_to_capped_partition(const LshFamily& family, const FiniteMetric& m,
                                  const CappedSpec& spec) {
  return LshCappedSampler(family, std::make_shared<FiniteMetric>(m), spec.t, spec.delta)
      .sample(spec.seed);
}

Partition l2_capped_partition(const PointSet& s, const CappedSpec& spec) {
  auto pts = std::make_shared<PointSet>(s);
  auto m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(s));
  LshFamily fam = make_ball_lattice_family(pts, spec.delta / spec.t, spec.t,
                                           derive_seed(spec.seed, 0xFA111ull));
  return LshCappedSampler(std::move(fam), std::move(m), spec.t, spec.delta).sample(spec.seed);
}

// ------------------------------------------------------------ composed lp

LpCappedSampler::LpCappedSampler(std::shared_ptr<const PointSet> s, double t, double delta)
    : s_(std::move(s)), t_(t), delta_(delta) {
  if (!(t_ >= 1.0)) throw std::invalid_argument("capped: t must be >= 1");
  if (!(delta_ > 0.0)) throw std::invalid_argument("capped: delta must be positive");
  const double p = s_->p;
  if (!(p > 2.0) || p == kInfExponent)
    throw std::invalid_argument("lp capped: exponent must be in (2, inf)");
  m_ = std::make_shared<FiniteMetric>(FiniteMetric::from_points(*s_));

  const double q = p / (p - 1.0);
  t1_ = std::max(std::pow(t_, q) / 4.0, 1.0);
  t2_ = std::max(std::pow(t_, q / 2.0) / 2.0, 1.0);
  delta1_ = t1_ * (delta_ / t_);
  delta2_ = t2_ * (delta_ / t_);
  // the stage invariant: both stages keep the same cap delta/t
  if (std::abs(delta1_ / t1_ - delta_ / t_) > 1e-12 * (delta_ / t_) ||
      std::abs(delta2_ / t2_ - delta_ / t_) > 1e-12 * (delta_ / t_))
    throw std::logic_error("lp capped: stage cap invariant broken");

  // calibrate the stage-2 hash depth once, on a representative stage-1 draw
  const Partition probe =
      GeneralCappedSampler(m_, t1_, delta1_).sample(derive_seed(0xCA1Bull, 1));
  std::vector<std::vector<std::int32_t>> members(probe.cluster_count);
  for (std::int32_t i = 0; i < s_->n; ++i) members[probe.assignment[i]].push_back(i);
  std::size_t best = 0;
  for (std::size_t c = 0; c < members.size(); ++c)
    if (members[c].size() > members[best].size()) best = c;
  if (members[best].size() >= 2) {
    const auto& idx = members[best];
    std::vector<double> coords;
    coords.reserve(idx.size() * s_->d);
    for (std::int32_t i : idx) coords.insert(coords.end(), s_->row(i).begin(), s_->row(i).end());
    PointSet cluster =
        make_point_set(std::move(coords), static_cast<std::int32_t>(idx.size()), s_->d, p, false);
    MazurConfig mz{p, delta1_,
                   std::vector<double>(cluster.row(0).begin(), cluster.row(0).end())};
    auto embedded = std::make_shared<PointSet>(mazur_map(cluster, mz));
    auto sub_m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(*embedded));
    LshFamily fam = make_ball_lattice_family(embedded, delta2_ / t2_, t2_,
                                             derive_seed(0xCA1Bull, 2));
    LshCappedSampler calib(std::move(fam), std::move(sub_m), t2_, delta2_);
    stage2_k_ = calib.hash_count();
  }
}

Partition LpCappedSampler::sample(std::uint64_t seed) const {
  const PointSet& s = *s_;
  const Partition initial = GeneralCappedSampler(m_, t1_, delta1_).sample(derive_seed(seed, 1));
  if (s.n == 1) {
    Partition p = initial;
    p.delta = delta_;
    return p;
  }

  std::vector<std::vector<std::int32_t>> members(initial.cluster_count);
  for (std::int32_t i = 0; i < s.n; ++i) members[initial.assignment[i]].push_back(i);

  std::vector<std::int64_t> owner(s.n, -1);
  std::int64_t offset = 0;
  for (std::int32_t c = 0; c < initial.cluster_count; ++c) {
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
    MazurConfig mz{s.p, delta1_,
                   std::vector<double>(cluster.row(0).begin(), cluster.row(0).end())};
    auto embedded = std::make_shared<PointSet>(mazur_map(cluster, mz));
    auto sub_m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(*embedded));
    LshFamily fam = make_ball_lattice_family(
        embedded, delta2_ / t2_, t2_, derive_seed(seed, 2, static_cast<std::uint64_t>(c)));
    const Partition sub =
        LshCappedSampler(std::move(fam), std::move(sub_m), t2_, delta2_, stage2_k_)
            .sample(derive_seed(seed, 3, static_cast<std::uint64_t>(c)));
    for (std::size_t i = 0; i < idx.size(); ++i) owner[idx[i]] = offset + sub.assignment[i];
    offset += sub.cluster_count;
  }
  Partition out = make_partition(delta_, std::span<const std::int64_t>(owner));

  // with clamped stages the contraction bound can fall just short of delta;
  // split the rare oversize cluster with the general carving at (t, delta)
  const FiniteMetric& m = *m_;
  std::vector<std::vector<std::int32_t>> fin(out.cluster_count);
  for (std::int32_t i = 0; i < s.n; ++i) fin[out.assignment[i]].push_back(i);
  bool violated = false;
  for (const auto& idx : fin) {
    double diam = 0.0;
    for (std::size_t a = 0; a < idx.size() && diam <= delta_; ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b) diam = std::max(diam, m(idx[a], idx[b]));
    if (diam > delta_) {
      violated = true;
      break;
    }
  }
  if (!violated) return out;

  std::vector<std::int64_t> fixed(s.n, -1);
  std::int64_t label = 0;
  for (std::size_t c = 0; c < fin.size(); ++c) {
    const auto& idx = fin[c];
    double diam = 0.0;
    for (std::size_t a = 0; a < idx.size() && diam <= delta_; ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b) diam = std::max(diam, m(idx[a], idx[b]));
    if (diam <= delta_) {
      for (std::int32_t i : idx) fixed[i] = label;
      ++label;
      continue;
    }
    const FiniteMetric sub = m.restrict(idx);
    const Partition split =
        GeneralCappedSampler(std::make_shared<FiniteMetric>(sub), t_, delta_)
            .sample(derive_seed(seed, 4, static_cast<std::uint64_t>(c)));
    for (std::size_t i = 0; i < idx.size(); ++i) fixed[idx[i]] = label + split.assignment[i];
    label += split.cluster_count;
  }
  return make_partition(delta_, std::span<const std::int64_t>(fixed));
}

Partition lp_capped_partition(const PointSet& s, const CappedSpec& spec) {
  return LpCappedSampler(std::make_shared<PointSet>(s), spec.t, spec.delta).sample(spec.seed);
}

std::unique_ptr<PartitionSampler> make_capped_sampler(std::shared_ptr<const PointSet> s, double t,
                                                      double delta) {
  const double p = s->p;
  auto m = std::make_shared<FiniteMetric>(FiniteMetric::from_points(*s));
  if (p == 2.0) {
    LshFamily fam = make_ball_lattice_family(s, delta / t, t, 0xFA111ull);
    return std::make_unique<LshCappedSampler>(std::move(fam), std::move(m), t, delta);
  }
  if (p > 1.0 && p < 2.0) {
    LshFamily fam = snowflake_lsh_family(s, delta / t, t, 0xFA112ull);
    return std::make_unique<LshCappedSampler>(std::move(fam), std::move(m), t, delta);
  }
  if (p > 2.0 && p != kInfExponent) return std::make_unique<LpCappedSampler>(std::move(s), t, delta);
  return std::make_unique<GeneralCappedSampler>(std::move(m), t, delta);
}

}  // namespace mdc
