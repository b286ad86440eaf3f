#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "axlab/error.hpp"
#include "axlab/random.hpp"
#include "axlab/types.hpp"

namespace axlab {

enum class MarginMode { Confirmable, GreyZone, Rejected };

inline const char* to_string(MarginMode m) {
  switch (m) {
    case MarginMode::Confirmable: return "confirmable";
    case MarginMode::GreyZone: return "greyzone";
    case MarginMode::Rejected: return "rejected";
  }
  return "?";
}

inline MarginMode margin_mode_from_string(const std::string& s) {
  if (s == "confirmable") return MarginMode::Confirmable;
  if (s == "greyzone") return MarginMode::GreyZone;
  if (s == "rejected") return MarginMode::Rejected;
  fail(Errc::InvalidSpec, "unknown margin mode '" + s + "'");
}

struct GaussianMixtureSpec {
  std::size_t k = 8;
  std::size_t per_cluster_n = 50;
  std::size_t dim = 2;
  double center_gap = 10.0;  // minimum distance between component means
  double sigma = 1.0;
};

/// Clusters are flat discs of diameter drawn from [1, 1.5], laid out along
/// the first axis with gaps chosen by `mode`.
struct PlantedSuperballSpec {
  std::size_t k = 3;
  double s = 1.5;
  std::size_t dim = 2;
  std::size_t per_cluster_n = 8;
  MarginMode mode = MarginMode::Confirmable;
};

struct UniformBallSpec {
  std::size_t n = 20;
  std::size_t dim = 2;
  double radius = 1.0;
};

using GeneratorKind = std::variant<GaussianMixtureSpec, PlantedSuperballSpec, UniformBallSpec>;

struct GeneratorSpec {
  GeneratorKind kind;
  std::uint64_t seed = 1;
};

struct Generated {
  DataSet data;
  std::optional<Partition> truth;
};

inline void validate(const GeneratorSpec& spec) {
  std::visit(
      [](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, GaussianMixtureSpec>) {
          require(g.k >= 1 && g.per_cluster_n >= 1 && g.dim >= 1, "gaussian: counts must be positive",
                  Errc::InvalidSpec);
          require(g.sigma > 0.0 && g.center_gap >= 0.0, "gaussian: need sigma > 0 and gap >= 0", Errc::InvalidSpec);
        } else if constexpr (std::is_same_v<T, PlantedSuperballSpec>) {
          require(g.k >= 1 && g.dim >= 1, "planted: counts must be positive", Errc::InvalidSpec);
          require(g.per_cluster_n >= 2, "planted: clusters need at least two points", Errc::InvalidSpec);
          require(g.s > 1.0, "planted: s must exceed 1", Errc::InvalidSpec);
        } else {
          require(g.n >= 1 && g.dim >= 1 && g.radius > 0.0, "uniform: need n, dim, radius positive",
                  Errc::InvalidSpec);
        }
      },
      spec.kind);
}

namespace detail {

inline Generated gen_gaussian(const GaussianMixtureSpec& g, Rng& rng) {
  // Means by rejection sampling in a box that comfortably fits k gaps.
  const double side = g.center_gap * 2.0 * std::ceil(std::pow(static_cast<double>(g.k), 1.0 / g.dim)) + 1.0;
  std::vector<Point> means;
  for (std::size_t tries = 0; means.size() < g.k; ++tries) {
    if (tries > 100000) fail(Errc::InvalidSpec, "gaussian: could not place separated means");
    Point c(g.dim);
    for (double& x : c) x = rng.uniform(0.0, side);
    bool ok = true;
    for (const auto& m : means) ok = ok && distance(m, c) >= g.center_gap;
    if (ok) means.push_back(std::move(c));
  }
  std::vector<Point> pts;
  std::vector<std::size_t> labels;
  for (std::size_t c = 0; c < g.k; ++c)
    for (std::size_t i = 0; i < g.per_cluster_n; ++i) {
      Point p = means[c];
      for (double& x : p) x += g.sigma * rng.normal();
      pts.push_back(std::move(p));
      labels.push_back(c);
    }
  DataSet ds = DataSet::from_points(std::move(pts));
  return {ds, Partition::from_labels<std::size_t>(ds.ids(), labels)};
}

// Longest edge of a Euclidean minimum spanning tree (Prim).
inline double mst_longest_edge(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> done(n, false);
  best[0] = 0.0;
  double longest = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && (u == n || best[i] < best[u])) u = i;
    done[u] = true;
    longest = std::max(longest, best[u]);
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i]) best[i] = std::min(best[i], distance(pts[i], pts[u]));
  }
  return longest;
}

// One flat cluster centred at the origin with exact diameter `diam`.
// Shapes are redrawn until the longest spanning-tree edge is below 2s times
// the closest pair: then no split of the cluster into parts of two or more
// points can be s-separated or pass the second-pass confirmation.
inline std::vector<Point> planted_shape(std::size_t n, std::size_t dim, double diam, double s, Rng& rng) {
  constexpr double kThickness = 0.02;
  const std::size_t free_dims = dim == 1 ? 1 : dim - 1;
  const double spacing = 0.8 * std::pow(1.0 / static_cast<double>(n), 1.0 / static_cast<double>(free_dims));
  std::vector<Point> pts;
  for (;;) {
    pts.clear();
    for (std::size_t guard = 0; pts.size() < n && guard < 100000; ++guard) {
      Point p(dim, 0.0);
      if (dim == 1) {
        p[0] = rng.uniform(-0.5, 0.5);
      } else {
        p[0] = kThickness * rng.uniform(-0.5, 0.5);
        const Point disc = rng.in_ball(dim - 1, 0.5);
        std::copy(disc.begin(), disc.end(), p.begin() + 1);
      }
      bool spaced = true;
      for (const auto& q : pts) spaced = spaced && distance(p, q) >= spacing;
      if (spaced) pts.push_back(std::move(p));
    }
    if (pts.size() < n) continue;
    const Point c = centroid(pts);
    for (auto& p : pts)
      for (std::size_t j = 0; j < dim; ++j) p[j] -= c[j];
    double d = 0.0, closest = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        d = std::max(d, distance(pts[a], pts[b]));
        closest = std::min(closest, distance(pts[a], pts[b]));
      }
    if (d <= 1e-6 || (n >= 4 && !(mst_longest_edge(pts) < 2.0 * s * closest))) continue;
    for (auto& p : pts)
      for (double& x : p) x *= diam / d;
    return pts;
  }
}

inline Generated gen_planted(const PlantedSuperballSpec& g, Rng& rng) {
  struct Shape {
    std::vector<Point> pts;
    double diam, radius, lo, hi;  // radius: furthest point from centroid; lo/hi: extent on axis 0
  };
  std::vector<Shape> shapes;
  for (std::size_t c = 0; c < g.k; ++c) {
    Shape sh;
    sh.diam = rng.uniform(1.0, 1.5);
    sh.pts = planted_shape(g.per_cluster_n, g.dim, sh.diam, g.s, rng);
    sh.radius = 0.0;
    sh.lo = sh.hi = 0.0;
    for (const auto& p : sh.pts) {
      sh.radius = std::max(sh.radius, std::sqrt(squared_distance(p, Point(g.dim, 0.0))));
      sh.lo = std::min(sh.lo, p[0]);
      sh.hi = std::max(sh.hi, p[0]);
    }
    shapes.push_back(std::move(sh));
  }

  std::vector<double> offset(g.k, 0.0);
  for (std::size_t c = 1; c < g.k; ++c) {
    const Shape& a = shapes[c - 1];
    const Shape& b = shapes[c];
    const double ext = a.hi - b.lo;
    double gap = 0.0;
    switch (g.mode) {
      case MarginMode::Confirmable:
        gap = std::max(ext + 1.1 * g.s * (a.diam + b.diam), 1.1 * (2.0 * g.s + 1.0) * (a.radius + b.radius));
        break;
      case MarginMode::GreyZone:
        gap = ext + 1.02 * g.s * (a.diam + b.diam);
        break;
      case MarginMode::Rejected:
        gap = 0.6 * g.s * (a.radius + b.radius);
        break;
    }
    offset[c] = offset[c - 1] + gap;
  }

  std::vector<Point> pts;
  std::vector<std::size_t> labels;
  for (std::size_t c = 0; c < g.k; ++c)
    for (auto p : shapes[c].pts) {
      p[0] += offset[c];
      pts.push_back(std::move(p));
      labels.push_back(c);
    }
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  std::vector<Point> shuffled;
  std::vector<std::size_t> shuffled_labels;
  for (std::size_t i : order) {
    shuffled.push_back(pts[i]);
    shuffled_labels.push_back(labels[i]);
  }
  DataSet ds = DataSet::from_points(std::move(shuffled));
  return {ds, Partition::from_labels<std::size_t>(ds.ids(), shuffled_labels)};
}

inline Generated gen_uniform(const UniformBallSpec& g, Rng& rng) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < g.n; ++i) pts.push_back(rng.in_ball(g.dim, g.radius));
  return {DataSet::from_points(std::move(pts)), std::nullopt};
}

}  // namespace detail

inline Generated generate(const GeneratorSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  return std::visit(
      [&](const auto& g) -> Generated {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, GaussianMixtureSpec>)
          return detail::gen_gaussian(g, rng);
        else if constexpr (std::is_same_v<T, PlantedSuperballSpec>)
          return detail::gen_planted(g, rng);
        else
          return detail::gen_uniform(g, rng);
      },
      spec.kind);
}

/// The ten two-dimensional points used for the prime-modulus quality table.
inline DataSet table1() {
  return DataSet::from_points({
      {4.022346, 5.142886},
      {3.745942, 4.646777},
      {4.442992, 5.164956},
      {3.616975, 5.188107},
      {3.807503, 5.010183},
      {4.169602, 4.874328},
      {3.557578, 5.248182},
      {3.876208, 4.507264},
      {4.102748, 5.073515},
      {3.895329, 4.878176},
  });
}

/// First n rows of table1().
inline DataSet table1_prefix(std::size_t n) {
  require(n >= 1 && n <= 10, "table1_prefix: n must lie in [1, 10]");
  auto pts = table1().points();
  pts.resize(n);
  return DataSet::from_points(std::move(pts));
}

}  // namespace axlab
