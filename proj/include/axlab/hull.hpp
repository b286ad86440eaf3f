#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "axlab/types.hpp"

namespace axlab {

struct HullDistanceResult {
  double distance = 0.0;
  double gap = 0.0;          // final Frank-Wolfe duality gap (squared-distance units)
  std::size_t iterations = 0;
};

namespace detail {

// Solves the small dense system A x = b in place (partial pivoting). Returns
// false when the matrix is numerically singular.
inline bool solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-300) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * b[c];
    b[i] = s / a[i * n + i];
  }
  return true;
}

// Affine minimizer of ||sum w_i v_i|| subject to sum w_i = 1.
inline bool affine_minimizer(const std::vector<Point>& vs, std::vector<double>& w) {
  const std::size_t m = vs.size();
  const std::size_t n = m + 1;
  std::vector<double> a(n * n, 0.0), b(n, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double dot = 0.0;
      for (std::size_t d = 0; d < vs[i].size(); ++d) dot += vs[i][d] * vs[j][d];
      a[i * n + j] = dot;
      scale = std::max(scale, std::abs(dot));
    }
  if (scale == 0.0) scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    a[i * n + m] = scale;
    a[m * n + i] = scale;
  }
  b[m] = scale;
  if (!solve_dense(a, b, n)) return false;
  w.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(m));
  return true;
}

}  // namespace detail

/// Minimum Euclidean distance between conv(a) and conv(b).
///
/// Runs Wolfe's minimum-norm-point method on the Minkowski difference
/// conv(a) - conv(b); its vertices a_i - b_j are never materialized, the
/// linear minimization oracle splits into an argmin over a and an argmax
/// over b. Stops when the Frank-Wolfe duality gap falls under
/// tol * (largest squared vertex norm).
inline HullDistanceResult hull_distance_points(std::span<const Point> a, std::span<const Point> b, double tol = 1e-9) {
  require(!a.empty() && !b.empty(), "hull_distance: empty point set");
  const std::size_t dim = a.front().size();

  auto vertex = [&](std::size_t i, std::size_t j) {
    Point v(dim);
    for (std::size_t d = 0; d < dim; ++d) v[d] = a[i][d] - b[j][d];
    return v;
  };
  auto dot = [](const Point& x, const Point& y) {
    double s = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) s += x[d] * y[d];
    return s;
  };

  // Start at the closest vertex pair; also gives the vertex-distance bound.
  std::size_t bi = 0, bj = 0;
  double best = std::numeric_limits<double>::infinity();
  double vmax2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d2 = squared_distance(a[i], b[j]);
      vmax2 = std::max(vmax2, d2);
      if (d2 < best) {
        best = d2;
        bi = i;
        bj = j;
      }
    }
  HullDistanceResult res;
  if (best == 0.0) return res;

  std::vector<Point> corral{vertex(bi, bj)};
  std::vector<double> lambda{1.0};
  Point x = corral.front();
  const double stop = tol * std::max(vmax2, std::numeric_limits<double>::min());

  for (std::size_t major = 0; major < 1000; ++major) {
    res.iterations = major + 1;
    std::size_t ai = 0, bk = 0;
    double amin = std::numeric_limits<double>::infinity(), bmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double v = dot(x, a[i]);
      if (v < amin) {
        amin = v;
        ai = i;
      }
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double v = dot(x, b[j]);
      if (v > bmax) {
        bmax = v;
        bk = j;
      }
    }
    const double xx = dot(x, x);
    res.gap = xx - (amin - bmax);
    if (res.gap <= stop || xx <= stop) break;

    Point v = vertex(ai, bk);
    bool duplicate = false;
    for (const auto& c : corral)
      if (c == v) duplicate = true;
    if (duplicate) break;
    corral.push_back(std::move(v));
    lambda.push_back(0.0);

    bool stalled = false;
    for (std::size_t minor = 0; minor < 100; ++minor) {
      std::vector<double> w;
      if (!detail::affine_minimizer(corral, w)) {
        stalled = true;  // affinely dependent corral at machine precision
        break;
      }
      bool interior = true;
      for (double wi : w)
        if (wi <= 1e-14) interior = false;
      if (interior) {
        lambda = w;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] <= 1e-14 && lambda[i] - w[i] > 0.0) theta = std::min(theta, lambda[i] / (lambda[i] - w[i]));
      for (std::size_t i = 0; i < w.size(); ++i) lambda[i] = (1.0 - theta) * lambda[i] + theta * w[i];
      std::size_t keep = 0;
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] > 1e-14) {
          if (keep != i) corral[keep] = std::move(corral[i]);
          lambda[keep] = lambda[i];
          ++keep;
        }
      }
      corral.resize(keep);
      lambda.resize(keep);
      if (keep == 0) {
        stalled = true;
        break;
      }
      double total = 0.0;
      for (double l : lambda) total += l;
      for (double& l : lambda) l /= total;
    }

    if (stalled) break;
    Point nx(dim, 0.0);
    for (std::size_t i = 0; i < corral.size(); ++i)
      for (std::size_t d = 0; d < dim; ++d) nx[d] += lambda[i] * corral[i][d];
    if (dot(nx, nx) >= xx) break;  // no progress at machine precision
    x = std::move(nx);
  }

  const double d2 = std::min(dot(x, x), best);
  res.distance = d2 <= stop ? 0.0 : std::sqrt(d2);
  return res;
}

/// Whether p lies in conv(pts) up to tol (relative to the set's extent).
inline bool in_convex_hull(const Point& p, std::span<const Point> pts, double tol = 1e-9) {
  const Point single[] = {p};
  const auto r = hull_distance_points(single, pts, tol * tol);
  double extent = 0.0;
  for (const auto& q : pts) extent = std::max(extent, distance(p, q));
  return r.distance <= tol * std::max(extent, 1e-300);
}

}  // namespace axlab
