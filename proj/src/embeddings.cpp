/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "metricdecomp/embeddings.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "metricdecomp/rng.hpp"

namespace mdc {

PointSet mazur_map(const PointSet& s, const MazurConfig& cfg) {
  if (!(cfg.p > 2.0)) throw std::invalid_argument("mazur_map: p must be > 2");
  if (!(cfg.c0 > 0.0)) throw std::invalid_argument("mazur_map: c0 must be positive");
  if (static_cast<std::int32_t>(cfg.base_point.size()) != s.d)
    throw std::invalid_argument("mazur_map: base point dimension mismatch");

  const double half_p = cfg.p / 2.0;
  const double scale = half_p * std::pow(cfg.c0, half_p - 1.0);
  const double norm_tol = cfg.c0 * (1.0 + 1e-9);

  std::vector<double> coords(s.coords.size());
  std::vector<double> shifted(s.d);
  const std::vector<double> origin(s.d, 0.0);
  for (std::int32_t i = 0; i < s.n; ++i) {
    const auto row = s.row(i);
    for (std::int32_t k = 0; k < s.d; ++k) shifted[k] = row[k] - cfg.base_point[k];
    const double norm = lp_distance(shifted, origin, cfg.p);
    if (norm > norm_tol)
      throw std::invalid_argument("mazur_map: translated point exceeds the c0 norm bound");
    for (std::int32_t k = 0; k < s.d; ++k) {
      const double t = shifted[k];
      const double v = std::pow(std::abs(t), half_p) / scale;
      coords[static_cast<std::size_t>(i) * s.d + k] = t < 0 ? -v : v;
    }
  }
  return make_point_set(std::move(coords), s.n, s.d, 2.0, false);
}

double mazur_lower_bound(double rho, double p, double c0) {
  return (2.0 / p) * std::pow(2.0 * c0, 1.0 - p / 2.0) * std::pow(rho, p / 2.0);
}

std::int32_t jl_default_dim(std::int32_t n, double eps) {
  const double ln_n = std::log(static_cast<double>(std::max(n, 2)));
  return static_cast<std::int32_t>(std::ceil(8.0 * ln_n / (eps * eps)));
}

PointSet jl_project(const PointSet& s, const JlConfig& cfg) {
  if (s.p != 2.0) throw std::invalid_argument("jl_project: input must be an l_2 point set");
  const std::int32_t k = cfg.target_dim;
  if (k < 1) throw std::invalid_argument("jl_project: target dimension must be >= 1");

  // G is materialized row-major in one stream so the map is a fixed function
  // of (seed, d, k) regardless of how callers parallelize the projection.
  Rng rng(derive_seed(cfg.seed, 0x6A6Cu));
  std::vector<double> g(static_cast<std::size_t>(k) * s.d);
  for (double& v : g) v = rng.normal();

  const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
  std::vector<double> coords(static_cast<std::size_t>(s.n) * k);
  for (std::int32_t i = 0; i < s.n; ++i) {
    const auto row = s.row(i);
    for (std::int32_t r = 0; r < k; ++r) {
      double acc = 0.0;
      const double* grow = g.data() + static_cast<std::size_t>(r) * s.d;
      for (std::int32_t c = 0; c < s.d; ++c) acc += grow[c] * row[c];
      coords[static_cast<std::size_t>(i) * k + r] = acc * inv_sqrt_k;
    }
  }
  return make_point_set(std::move(coords), s.n, k, 2.0, false);
}

PointSet snowflake_embed(const PointSet& s) {
  if (!(s.p > 1.0 && s.p < 2.0))
    throw std::invalid_argument("snowflake_embed: p must be in (1, 2)");
  if (s.n < 2) throw std::invalid_argument("snowflake_embed: need at least 2 points");

  const std::int32_t n = s.n;
  const double alpha = s.p / 2.0;

  Eigen::MatrixXd d2(n, n);  // squared snowflake distances
  for (std::int32_t i = 0; i < n; ++i) {
    d2(i, i) = 0.0;
    for (std::int32_t j = i + 1; j < n; ++j) {
      const double r = std::pow(lp_distance(s, i, j), alpha);
      d2(i, j) = d2(j, i) = r * r;
    }
  }

  // double centering: B = -1/2 J d2 J
  const Eigen::VectorXd row_mean = d2.rowwise().mean();
  const double total_mean = row_mean.mean();
  Eigen::MatrixXd b(n, n);
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = 0; j < n; ++j)
      b(i, j) = -0.5 * (d2(i, j) - row_mean(i) - row_mean(j) + total_mean);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("snowflake_embed: eigendecomposition failed");
  const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending
  const double lambda_max = std::max(evals(n - 1), 0.0);
  if (evals(0) < -1e-8 * lambda_max)
    throw std::runtime_error("snowflake_embed: significantly negative eigenvalue, input is not "
                             "of negative type");

  std::vector<std::int32_t> keep;
  for (std::int32_t m = n - 1; m >= 0; --m)
    if (evals(m) > 0.0) keep.push_back(m);  // descending order; clamp the rest to zero
  if (keep.empty()) keep.push_back(n - 1);

  const std::int32_t dim = static_cast<std::int32_t>(keep.size());
  std::vector<double> coords(static_cast<std::size_t>(n) * dim, 0.0);
  for (std::int32_t c = 0; c < dim; ++c) {
    const std::int32_t m = keep[c];
    const double f = std::sqrt(std::max(evals(m), 0.0));
    for (std::int32_t i = 0; i < n; ++i)
      coords[static_cast<std::size_t>(i) * dim + c] = f * solver.eigenvectors()(i, m);
  }
  return make_point_set(std::move(coords), n, dim, 2.0, false);
}

}  // namespace mdc
