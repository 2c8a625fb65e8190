/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "metricdecomp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "metricdecomp/rng.hpp"

namespace mdc {

double hoeffding_half_width(long trials, double confidence_delta) {
  return std::sqrt(std::log(2.0 / confidence_delta) / (2.0 * static_cast<double>(trials)));
}

namespace {

std::int32_t resolve_threads(std::int32_t threads) {
  if (threads > 0) return threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<std::int32_t>(hc);
}

// Trials are partitioned by seed index; workers accumulate integer counters
// that merge by summation, so results are independent of the thread count.
template <typename PerTrial>
std::vector<std::int64_t> run_counting_trials(long trials, std::uint64_t seed_lo,
                                              std::size_t counters, std::int32_t threads,
                                              PerTrial per_trial) {
  threads = std::min<std::int64_t>(resolve_threads(threads), std::max<long>(trials, 1));
  std::vector<std::vector<std::int64_t>> partial(
      threads, std::vector<std::int64_t>(counters, 0));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::int32_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (long trial = w; trial < trials; trial += threads)
        per_trial(seed_lo + static_cast<std::uint64_t>(trial), partial[w]);
    });
  }
  for (auto& th : pool) th.join();
  std::vector<std::int64_t> total(counters, 0);
  for (const auto& part : partial)
    for (std::size_t c = 0; c < counters; ++c) total[c] += part[c];
  return total;
}

}  // namespace

std::vector<std::pair<std::int32_t, std::int32_t>> sample_pairs(const FiniteMetric& m,
                                                                std::int32_t count,
                                                                std::uint64_t seed) {
  const std::int32_t n = m.size();
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  if (n < 2) return pairs;

  std::pair<std::int32_t, std::int32_t> closest{0, 1};
  double best = std::numeric_limits<double>::infinity();
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = i + 1; j < n; ++j)
      if (m(i, j) < best) {
        best = m(i, j);
        closest = {i, j};
      }

  const long all = static_cast<long>(n) * (n - 1) / 2;
  if (all <= count) {
    for (std::int32_t i = 0; i < n; ++i)
      for (std::int32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    return pairs;
  }
  pairs.push_back(closest);
  Rng rng(derive_seed(seed, 0x5041ull));
  while (static_cast<std::int32_t>(pairs.size()) < count) {
    const auto i = static_cast<std::int32_t>(rng.below(n));
    const auto j = static_cast<std::int32_t>(rng.below(n));
    if (i == j) continue;
    auto pr = std::minmax(i, j);
    if (std::find(pairs.begin(), pairs.end(), std::make_pair(pr.first, pr.second)) == pairs.end())
      pairs.emplace_back(pr.first, pr.second);
  }
  return pairs;
}

EstimationReport estimate_beta(const PartitionSampler& sampler, const FiniteMetric& m,
                               double delta,
                               std::span<const std::pair<std::int32_t, std::int32_t>> pairs,
                               long trials, std::uint64_t seed_lo, std::int32_t threads) {
  if (trials < 1000) throw std::invalid_argument("estimate_beta: need at least 1000 trials");
  const auto counts = run_counting_trials(
      trials, seed_lo, pairs.size(), threads,
      [&](std::uint64_t seed, std::vector<std::int64_t>& acc) {
        const Partition p = sampler.sample(seed);
        for (std::size_t q = 0; q < pairs.size(); ++q)
          if (p.assignment[pairs[q].first] != p.assignment[pairs[q].second]) ++acc[q];
      });

  EstimationReport rep;
  rep.kind = "beta";
  rep.trials = trials;
  rep.seed_lo = seed_lo;
  rep.seed_hi = seed_lo + static_cast<std::uint64_t>(trials);
  const double hw = hoeffding_half_width(trials);
  double beta_hat = 0.0;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    PairStat st;
    st.i = pairs[q].first;
    st.j = pairs[q].second;
    st.rho = m(st.i, st.j);
    st.p_hat = static_cast<double>(counts[q]) / static_cast<double>(trials);
    st.half_width = hw;
    rep.pairs.push_back(st);
    if (st.rho > 0.0 && st.rho <= delta)
      beta_hat = std::max(beta_hat, (st.p_hat + hw) * delta / st.rho);
  }
  rep.aggregate = beta_hat;
  return rep;
}

EstimationReport estimate_eta(const PartitionSampler& sampler, const FiniteMetric& m,
                              double delta, double t, long trials, std::uint64_t seed_lo,
                              std::int32_t threads, std::int32_t max_pairs) {
  // Definition-faithful qualification: only pairs with rho <= delta/t enter.
  const double cap = delta / t;
  std::vector<std::pair<std::int32_t, std::int32_t>> qualifying;
  for (std::int32_t i = 0; i < m.size(); ++i)
    for (std::int32_t j = i + 1; j < m.size(); ++j)
      if (m(i, j) <= cap) qualifying.emplace_back(i, j);
  if (qualifying.empty())
    throw std::invalid_argument("estimate_eta: no qualifying pairs at delta/t");

  if (static_cast<std::int32_t>(qualifying.size()) > max_pairs) {
    // keep the extremes (closest and farthest qualifying) plus an even stride
    std::sort(qualifying.begin(), qualifying.end(),
              [&](const auto& a, const auto& b) { return m(a.first, a.second) < m(b.first, b.second); });
    std::vector<std::pair<std::int32_t, std::int32_t>> picked;
    picked.push_back(qualifying.front());
    const double stride = static_cast<double>(qualifying.size() - 1) / (max_pairs - 1);
    for (std::int32_t k = 1; k < max_pairs; ++k)
      picked.push_back(qualifying[static_cast<std::size_t>(std::llround(k * stride))]);
    qualifying = std::move(picked);
  }

  const auto counts = run_counting_trials(
      trials, seed_lo, qualifying.size(), threads,
      [&](std::uint64_t seed, std::vector<std::int64_t>& acc) {
        const Partition p = sampler.sample(seed);
        for (std::size_t q = 0; q < qualifying.size(); ++q)
          if (p.assignment[qualifying[q].first] == p.assignment[qualifying[q].second]) ++acc[q];
      });

  EstimationReport rep;
  rep.kind = "eta";
  rep.trials = trials;
  rep.seed_lo = seed_lo;
  rep.seed_hi = seed_lo + static_cast<std::uint64_t>(trials);
  const double hw = hoeffding_half_width(trials);
  double eta_hat = 1.0;
  for (std::size_t q = 0; q < qualifying.size(); ++q) {
    PairStat st;
    st.i = qualifying[q].first;
    st.j = qualifying[q].second;
    st.rho = m(st.i, st.j);
    st.p_hat = static_cast<double>(counts[q]) / static_cast<double>(trials);
    st.half_width = hw;
    rep.pairs.push_back(st);
    eta_hat = std::min(eta_hat, std::max(st.p_hat - hw, 0.0));
  }
  rep.aggregate = eta_hat;
  return rep;
}

EstimationReport estimate_lsh_rates(const LshFamily& family, const FiniteMetric& m,
                                    std::span<const std::pair<std::int32_t, std::int32_t>> near_pairs,
                                    std::span<const std::pair<std::int32_t, std::int32_t>> far_pairs,
                                    long draws, std::uint64_t seed_lo, std::int32_t threads) {
  if (near_pairs.empty() || far_pairs.empty())
    throw std::invalid_argument("estimate_lsh_rates: both pair classes must be nonempty");
  if (draws < 10000) throw std::invalid_argument("estimate_lsh_rates: need at least 10^4 draws");

  const std::size_t total = near_pairs.size() + far_pairs.size();
  const auto counts = run_counting_trials(
      draws, seed_lo, total, threads, [&](std::uint64_t seed, std::vector<std::int64_t>& acc) {
        const LshFunction fn(family, seed);
        std::size_t slot = 0;
        for (const auto& pr : near_pairs) {
          if (fn.bucket(pr.first) == fn.bucket(pr.second)) ++acc[slot];
          ++slot;
        }
        for (const auto& pr : far_pairs) {
          if (fn.bucket(pr.first) == fn.bucket(pr.second)) ++acc[slot];
          ++slot;
        }
      });

  EstimationReport rep;
  rep.kind = "lsh";
  rep.trials = draws;
  rep.seed_lo = seed_lo;
  rep.seed_hi = seed_lo + static_cast<std::uint64_t>(draws);
  const double hw = hoeffding_half_width(draws);

  double p1 = 1.0, p2 = 0.0;
  std::size_t slot = 0;
  for (const auto& pr : near_pairs) {
    PairStat st{pr.first, pr.second, m(pr.first, pr.second),
                static_cast<double>(counts[slot]) / draws, hw};
    rep.pairs.push_back(st);
    p1 = std::min(p1, st.p_hat);
    ++slot;
  }
  for (const auto& pr : far_pairs) {
    PairStat st{pr.first, pr.second, m(pr.first, pr.second),
                static_cast<double>(counts[slot]) / draws, hw};
    rep.pairs.push_back(st);
    p2 = std::max(p2, st.p_hat);
    ++slot;
  }
  rep.p1_hat = p1;
  rep.p2_hat = p2;
  if (p2 >= 1.0) throw std::runtime_error("estimate_lsh_rates: far pairs always collide");
  if (p2 == 0.0) {
    rep.p2_zero = true;
    rep.gamma_hat = 0.0;
    rep.gamma_lo = 0.0;
    // upper interval endpoint from the most pessimistic in-CI rates
    const double p1_lo = std::max(p1 - hw, 1e-12);
    rep.gamma_hi = std::log(1.0 / p1_lo) / std::log(1.0 / hw);
  } else {
    const auto gamma = [](double a, double b) { return std::log(1.0 / a) / std::log(1.0 / b); };
    rep.gamma_hat = p1 >= 1.0 ? 0.0 : gamma(p1, p2);
    const double p1_lo = std::clamp(p1 - hw, 1e-12, 1.0 - 1e-12);
    const double p1_hi = std::clamp(p1 + hw, 1e-12, 1.0 - 1e-12);
    const double p2_lo = std::clamp(p2 - hw, 1e-12, 1.0 - 1e-12);
    const double p2_hi = std::clamp(p2 + hw, 1e-12, 1.0 - 1e-12);
    rep.gamma_lo = gamma(p1_hi, p2_lo);
    rep.gamma_hi = gamma(p1_lo, p2_hi);
  }
  rep.aggregate = rep.gamma_hat;
  return rep;
}

EstimationReport check_diameter_over_samples(const PartitionSampler& sampler,
                                             const FiniteMetric& m, long trials,
                                             std::uint64_t seed_lo, std::int32_t threads) {
  const std::int32_t workers =
      std::min<std::int64_t>(resolve_threads(threads), std::max<long>(trials, 1));
  std::vector<std::int64_t> violations(workers, 0);
  std::vector<double> max_diam(workers, 0.0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::int32_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (long trial = w; trial < trials; trial += workers) {
        const Partition p = sampler.sample(seed_lo + static_cast<std::uint64_t>(trial));
        const DiameterCheck chk = check_partition_diameter(m, p);
        if (!chk.ok) ++violations[w];
        max_diam[w] = std::max(max_diam[w], chk.max_diameter);
      }
    });
  }
  for (auto& th : pool) th.join();

  EstimationReport rep;
  rep.kind = "diameter";
  rep.trials = trials;
  rep.seed_lo = seed_lo;
  rep.seed_hi = seed_lo + static_cast<std::uint64_t>(trials);
  for (std::int32_t w = 0; w < workers; ++w) {
    rep.violations += violations[w];
    rep.max_diameter = std::max(rep.max_diameter, max_diam[w]);
  }
  rep.aggregate = static_cast<double>(rep.violations);
  return rep;
}

EstimationReport brute_force_partition_stats(const PartitionSampler& sampler,
                                             const FiniteMetric& m, long trials,
                                             std::uint64_t seed_lo, std::int32_t threads) {
  if (m.size() > 8)
    throw std::invalid_argument("brute_force_partition_stats: n must be <= 8");
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (std::int32_t i = 0; i < m.size(); ++i)
    for (std::int32_t j = i + 1; j < m.size(); ++j) pairs.emplace_back(i, j);
  if (pairs.empty()) {
    EstimationReport rep;
    rep.kind = "beta";
    rep.trials = trials;
    rep.seed_lo = seed_lo;
    rep.seed_hi = seed_lo + static_cast<std::uint64_t>(trials);
    return rep;
  }
  EstimationReport rep =
      estimate_beta(sampler, m, std::numeric_limits<double>::infinity(), pairs, trials, seed_lo,
                    threads);
  rep.kind = "brute_force";
  rep.aggregate = 0.0;
  return rep;
}

double ckr_two_point_separation(double rho, double delta) {
  const double lo = delta / 4.0, hi = delta / 2.0;
  if (rho <= lo) return 0.0;
  if (rho >= hi) return 1.0;
  return (rho - lo) / (hi - lo);
}

std::string EstimationReport::to_json() const {
  nlohmann::json j;
  j["kind"] = kind;
  j["aggregate"] = aggregate;
  j["trials"] = trials;
  j["seed_lo"] = seed_lo;
  j["seed_hi"] = seed_hi;
  auto arr = nlohmann::json::array();
  for (const auto& st : pairs) {
    arr.push_back({{"i", st.i},
                   {"j", st.j},
                   {"rho", st.rho},
                   {"p_hat", st.p_hat},
                   {"hw", st.half_width}});
  }
  j["pairs"] = std::move(arr);
  if (kind == "lsh") {
    j["p1_hat"] = p1_hat;
    j["p2_hat"] = p2_hat;
    j["gamma_hat"] = gamma_hat;
    j["gamma_lo"] = gamma_lo;
    j["gamma_hi"] = gamma_hi;
    j["p2_zero"] = p2_zero;
  }
  if (kind == "diameter") {
    j["violations"] = violations;
    j["max_diameter"] = max_diameter;
  }
  return j.dump();
}

}  // namespace mdc
