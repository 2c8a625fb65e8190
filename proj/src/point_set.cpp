/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "metricdecomp/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mdc {

double lp_distance(std::span<const double> u, std::span<const double> v, double p) {
  if (u.size() != v.size()) throw std::invalid_argument("lp_distance: dimension mismatch");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_distance: p must be >= 1");
  const std::size_t d = u.size();
  if (p == kInfExponent) {
    double m = 0.0;
    for (std::size_t i = 0; i < d; ++i) m = std::max(m, std::abs(u[i] - v[i]));
    return m;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double t = u[i] - v[i];
      s += t * t;
    }
    return std::sqrt(s);
  }
  if (p == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += std::abs(u[i] - v[i]);
    return s;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) s += std::pow(std::abs(u[i] - v[i]), p);
  return std::pow(s, 1.0 / p);
}

PointSet make_point_set(std::vector<double> coords, std::int32_t n, std::int32_t d, double p,
                        bool check_duplicates) {
  if (n < 1) throw std::invalid_argument("point set needs n >= 1");
  if (d < 1) throw std::invalid_argument("point set needs d >= 1");
  if (!(p >= 1.0)) throw std::invalid_argument("point set needs p >= 1");
  if (coords.size() != static_cast<std::size_t>(n) * d)
    throw std::invalid_argument("coordinate buffer size does not match n*d");
  for (double c : coords)
    if (!std::isfinite(c)) throw std::invalid_argument("coordinates must be finite");

  PointSet s{n, d, p, std::move(coords)};
  if (check_duplicates) {
    for (std::int32_t i = 0; i < n; ++i) {
      for (std::int32_t j = i + 1; j < n; ++j) {
        if (std::equal(s.row(i).begin(), s.row(i).end(), s.row(j).begin()))
          throw duplicate_points_error("duplicate points at indices " + std::to_string(i) +
                                       " and " + std::to_string(j));
      }
    }
  }
  return s;
}

double min_pairwise_distance(const PointSet& s) {
  double m = std::numeric_limits<double>::infinity();
  for (std::int32_t i = 0; i < s.n; ++i)
    for (std::int32_t j = i + 1; j < s.n; ++j) m = std::min(m, lp_distance(s, i, j));
  return m;
}

double diameter(const PointSet& s) {
  double m = 0.0;
  for (std::int32_t i = 0; i < s.n; ++i)
    for (std::int32_t j = i + 1; j < s.n; ++j) m = std::max(m, lp_distance(s, i, j));
  return m;
}

PointSet normalize_min_distance(const PointSet& s, double target) {
  if (s.n < 2) return s;
  const double m = min_pairwise_distance(s);
  if (m == 0.0) throw duplicate_points_error("cannot normalize: zero minimum distance");
  PointSet out = s;
  const double f = target / m;
  for (double& c : out.coords) c *= f;
  return out;
}

PointSet point_set_from_json(const std::string& text, bool check_duplicates) {
  const auto j = nlohmann::json::parse(text);
  if (!j.contains("points")) throw std::invalid_argument("point set json: missing \"points\"");
  double p = 2.0;
  if (j.contains("p")) {
    if (j["p"].is_string()) {
      if (j["p"].get<std::string>() != "inf")
        throw std::invalid_argument("point set json: p must be a number or \"inf\"");
      p = kInfExponent;
    } else {
      p = j["p"].get<double>();
    }
  }
  const auto& pts = j["points"];
  if (!pts.is_array() || pts.empty()) throw std::invalid_argument("point set json: empty points");
  const std::int32_t n = static_cast<std::int32_t>(pts.size());
  const std::int32_t d = static_cast<std::int32_t>(pts[0].size());
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(n) * d);
  for (const auto& row : pts) {
    if (static_cast<std::int32_t>(row.size()) != d)
      throw std::invalid_argument("point set json: ragged rows");
    for (const auto& c : row) coords.push_back(c.get<double>());
  }
  return make_point_set(std::move(coords), n, d, p, check_duplicates);
}

std::string point_set_to_json(const PointSet& s) {
  nlohmann::json j;
  if (s.p == kInfExponent)
    j["p"] = "inf";
  else
    j["p"] = s.p;
  auto pts = nlohmann::json::array();
  for (std::int32_t i = 0; i < s.n; ++i) {
    auto row = nlohmann::json::array();
    for (double c : s.row(i)) row.push_back(c);
    pts.push_back(std::move(row));
  }
  j["points"] = std::move(pts);
  return j.dump();
}

PointSet load_point_set(const std::string& path, bool check_duplicates) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return point_set_from_json(ss.str(), check_duplicates);
}

void save_point_set(const PointSet& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << point_set_to_json(s) << "\n";
}

}  // namespace mdc
