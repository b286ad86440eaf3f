#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "axlab/core.hpp"
#include "axlab/hull.hpp"
#include "axlab/quality.hpp"
#include "axlab/random.hpp"

namespace axlab {

// ---------------------------------------------------------------------------
// Transform descriptions

struct ScaleSpec {
  double alpha = 1.0;
};
struct CentricSpec {
  std::optional<std::size_t> cluster;  // empty: every cluster
  double lambda = 1.0;
};
struct KleinbergRandomSpec {
  double beta = 1.0;   // intra factors drawn from [beta, 1]
  double gamma = 1.0;  // inter factors drawn from [1, gamma]
  std::uint64_t seed = 1;
};
struct MoveInSimplexSpec {
  std::size_t cluster = 0;
  double s = 1.5;
  std::size_t steps = 10;
  std::uint64_t seed = 1;
};

using TransformSpec = std::variant<ScaleSpec, CentricSpec, KleinbergRandomSpec, MoveInSimplexSpec>;

inline void validate(const TransformSpec& spec) {
  std::visit(
      [](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ScaleSpec>) {
          require(t.alpha > 0.0, "scale: alpha must be positive", Errc::InvalidSpec);
        } else if constexpr (std::is_same_v<T, CentricSpec>) {
          require(t.lambda > 0.0 && t.lambda <= 1.0, "centric: lambda must lie in (0, 1]", Errc::InvalidSpec);
        } else if constexpr (std::is_same_v<T, KleinbergRandomSpec>) {
          require(t.beta > 0.0 && t.beta <= 1.0 && t.gamma >= 1.0, "kleinberg: need 0 < beta <= 1 <= gamma",
                  Errc::InvalidSpec);
        } else {
          require(t.s > 1.0, "moveinsimplex: s must exceed 1", Errc::InvalidSpec);
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// Scale and centric transforms

inline DistanceMatrix scale_transform(const DistanceMatrix& m, double alpha) {
  require(alpha > 0.0, "scale_transform: alpha must be positive");
  std::vector<double> e = m.entries();
  for (double& v : e) v *= alpha;
  return DistanceMatrix(m.ids(), std::move(e));
}

inline DataSet scale_points(const DataSet& ds, double alpha) {
  require(alpha > 0.0, "scale_points: alpha must be positive");
  std::vector<Point> pts = ds.points();
  for (auto& p : pts)
    for (double& x : p) x *= alpha;
  return ds.with_points(std::move(pts));
}

/// Contracts the selected cluster(s) toward their centroid:
/// x -> centroid + lambda (x - centroid).
inline DataSet centric_transform(const DataSet& ds, const Partition& g, std::optional<std::size_t> cluster_index,
                                 double lambda) {
  require(lambda > 0.0 && lambda <= 1.0, "centric_transform: lambda must lie in (0, 1]");
  require_same_ground(g, ds.ids());
  if (cluster_index) require(*cluster_index < g.size(), "centric_transform: cluster index out of range");
  std::vector<Point> pts = ds.points();
  if (lambda == 1.0) return ds.with_points(std::move(pts));
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (cluster_index && *cluster_index != c) continue;
    const auto idx = ds.indices_of(g[c]);
    const Point ctr = centroid(ds, idx);
    for (std::size_t i : idx)
      for (std::size_t d = 0; d < ds.dim(); ++d) pts[i][d] = ctr[d] + lambda * (ds.point(i)[d] - ctr[d]);
  }
  return ds.with_points(std::move(pts));
}

// ---------------------------------------------------------------------------
// Consistency predicates

/// Euclidean distance matrix without the distinct-points check.
inline DistanceMatrix pairwise_distances(const DataSet& ds) {
  const std::size_t n = ds.size();
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e[i * n + j] = e[j * n + i] = distance(ds.point(i), ds.point(j));
  return DistanceMatrix(ds.ids(), std::move(e));
}

/// Within-cluster distances may only shrink and cross-cluster distances may
/// only grow (weak inequalities, so the identity qualifies).
inline bool is_consistency_transform(const DistanceMatrix& before, const DistanceMatrix& after, const Partition& g) {
  if (before.size() != after.size() || before.ids() != after.ids())
    fail(Errc::SizeMismatch, "is_consistency_transform: matrices over different ids");
  require_same_ground(g, before.ids());
  std::vector<std::size_t> label(before.size());
  for (std::size_t c = 0; c < g.size(); ++c)
    for (Id id : g[c]) label[before.index_of(id)] = c;
  for (std::size_t i = 0; i < before.size(); ++i)
    for (std::size_t j = i + 1; j < before.size(); ++j) {
      if (label[i] == label[j]) {
        if (after(i, j) > before(i, j)) return false;
      } else if (after(i, j) < before(i, j)) {
        return false;
      }
    }
  return true;
}

/// Consistency plus: the scatter of the union of any two clusters does not
/// decrease.
inline bool is_variance_consistency_transform(const DataSet& before, const DataSet& after, const Partition& g) {
  if (before.ids() != after.ids() || before.dim() != after.dim())
    fail(Errc::SizeMismatch, "is_variance_consistency_transform: datasets differ in ids or dimension");
  if (!is_consistency_transform(pairwise_distances(before), pairwise_distances(after), g)) return false;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      IdSet u = g[a];
      u.insert(u.end(), g[b].begin(), g[b].end());
      const double sb = scatter(before, u), sa = scatter(after, u);
      if (sa < sb - 1e-9 * std::max(1.0, sb)) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Moving clusters apart

struct SeparationMove {
  DataSet data;
  double t = 0.0;  // clusters moved by t (centroid - global centroid)
};

/// Translates every cluster of `after` radially away from the global
/// centroid, c_i -> c_i + t (c_i - G), with the smallest t on the grid
/// {0, 2^-20, 2^-19, ...} for which all cross-cluster distances are back at
/// or above their `before` values and no pairwise union scatter is lower
/// than before.
inline SeparationMove separate_clusters(const DataSet& before, const DataSet& after, const Partition& g) {
  require_same_ground(g, after.ids());
  std::vector<std::size_t> all(after.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const Point G = centroid(after, all);
  std::vector<Point> shift(g.size());
  std::vector<std::vector<std::size_t>> members(g.size());
  for (std::size_t c = 0; c < g.size(); ++c) {
    members[c] = after.indices_of(g[c]);
    const Point ctr = centroid(after, members[c]);
    shift[c].resize(after.dim());
    for (std::size_t d = 0; d < after.dim(); ++d) shift[c][d] = ctr[d] - G[d];
  }
  const DistanceMatrix db = pairwise_distances(before);

  // A translated cluster is also contracted by 1 - 1e-9 about its centroid:
  // translation alone can lengthen internal distances by an ulp.
  auto moved = [&](double t) {
    constexpr double kShrink = 1.0 - 1e-9;
    std::vector<Point> pts = after.points();
    for (std::size_t c = 0; c < g.size(); ++c) {
      Point ctr = centroid(after, members[c]);
      for (std::size_t d = 0; d < after.dim(); ++d) ctr[d] += t * shift[c][d];
      for (std::size_t i : members[c])
        for (std::size_t d = 0; d < after.dim(); ++d)
          pts[i][d] = ctr[d] + kShrink * (after.point(i)[d] - (ctr[d] - t * shift[c][d]));
    }
    return after.with_points(std::move(pts));
  };
  auto acceptable = [&](const DataSet& cand) {
    const DistanceMatrix da = pairwise_distances(cand);
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = a + 1; b < g.size(); ++b)
        for (std::size_t i : members[a])
          for (std::size_t j : members[b])
            if (da(i, j) < db(i, j)) return false;
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = a + 1; b < g.size(); ++b) {
        IdSet u = g[a];
        u.insert(u.end(), g[b].begin(), g[b].end());
        if (scatter(cand, u) < scatter(before, u)) return false;
      }
    return true;
  };

  if (acceptable(after)) return {after, 0.0};
  for (int e = -20; e <= 60; ++e) {
    const double t = std::ldexp(1.0, e);
    DataSet cand = moved(t);
    if (acceptable(cand)) return {std::move(cand), t};
  }
  fail(Errc::InvalidArgument, "separate_clusters: clusters share a centroid and cannot be pushed apart");
}

// ---------------------------------------------------------------------------
// Random Kleinberg consistency transform

inline DistanceMatrix random_consistency_transform(const DistanceMatrix& m, const Partition& g, double beta,
                                                   double gamma, std::uint64_t seed) {
  require(beta > 0.0 && beta <= 1.0 && gamma >= 1.0, "random_consistency_transform: need 0 < beta <= 1 <= gamma");
  require_same_ground(g, m.ids());
  std::vector<std::size_t> label(m.size());
  for (std::size_t c = 0; c < g.size(); ++c)
    for (Id id : g[c]) label[m.index_of(id)] = c;
  Rng rng(seed);
  DistanceMatrix out = m;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const double u = rng.uniform();
      const double f = label[i] == label[j] ? beta + (1.0 - beta) * u : 1.0 + (gamma - 1.0) * u;
      double v = m(i, j) * f;
      if (label[i] == label[j] && v > m(i, j)) v = m(i, j);
      if (label[i] != label[j] && v < m(i, j)) v = m(i, j);
      out.set(i, j, v);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Embedding a partition into Euclidean space

struct EmbedOptions {
  /// Ball radius of singleton clusters, as a fraction of the largest distance.
  double singleton_eps = 1e-6;
};

/// Places cluster i inside a ball of radius half its smallest internal
/// distance. Ball 1 sits at the origin; ball i is put on the sphere of
/// radius R_{1..i-1} + dmax + r_i around the center of the ball enclosing
/// balls 1..i-1, in a seeded direction. Within-cluster distances end up no
/// larger than before and cross-cluster distances exceed dmax.
inline DataSet embed_partition(const DistanceMatrix& m, const Partition& g, std::size_t dim, std::uint64_t seed,
                               const EmbedOptions& opt = {}) {
  require(dim >= 1, "embed_partition: dim must be positive");
  require_same_ground(g, m.ids());
  double dmax = m.max_entry();
  if (m.size() == 1) dmax = 1.0;
  require(dmax > 0.0, "embed_partition: all distances are zero");
  Rng rng(seed);

  // Slack keeps the strict/weak inequalities intact after rounding.
  constexpr double kInner = 1.0 - 1e-9;
  const double gap = dmax * (1.0 + 1e-9);

  std::vector<Point> pts(m.size(), Point(dim, 0.0));
  Point encl_center(dim, 0.0);
  double encl_radius = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) {
    const auto idx = [&] {
      std::vector<std::size_t> v;
      for (Id id : g[c]) v.push_back(m.index_of(id));
      return v;
    }();
    double r = opt.singleton_eps * dmax;
    if (idx.size() >= 2) {
      double mn = std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) mn = std::min(mn, m(idx[a], idx[b]));
      r = 0.5 * mn;
    }
    Point center(dim, 0.0);
    if (c == 0) {
      encl_radius = r;
    } else {
      const Point u = rng.unit_vector(dim);
      const double dist = encl_radius + gap + r;
      for (std::size_t d = 0; d < dim; ++d) center[d] = encl_center[d] + dist * u[d];
      // Smallest ball enclosing the previous enclosure and the new ball.
      const double new_radius = 0.5 * (dist + encl_radius + r);
      for (std::size_t d = 0; d < dim; ++d) encl_center[d] += (new_radius - encl_radius) * u[d];
      encl_radius = new_radius;
    }
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt > 100)
        fail(Errc::DimTooSmallForDistinctPlacement, "embed_partition: could not place distinct points");
      std::vector<Point> placed;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        Point off = rng.in_ball(dim, r * kInner);
        for (std::size_t d = 0; d < dim; ++d) off[d] += center[d];
        placed.push_back(std::move(off));
      }
      bool distinct = true;
      for (std::size_t a = 0; a < placed.size() && distinct; ++a)
        for (std::size_t b = a + 1; b < placed.size(); ++b)
          if (placed[a] == placed[b]) distinct = false;
      if (!distinct) continue;
      for (std::size_t k = 0; k < idx.size(); ++k) pts[idx[k]] = std::move(placed[k]);
      break;
    }
  }
  return DataSet(m.ids(), std::move(pts));
}

// ---------------------------------------------------------------------------
// Move-in-simplex

struct MoveInSimplexResult {
  DataSet data;
  std::vector<Id> moved;
  double rescale = 1.0;     // uniform factor applied to the cluster about its centroid
  double separation = 0.0;  // radial push applied to all clusters afterwards
};

/// For `steps` seeded picks P of the cluster with nearest neighbour Q: let
/// Z be the other members within s|PQ| of Q and W the members within
/// 2s|PQ| of Q. If P lies inside conv(Z), P is moved along a seeded
/// direction that increases |PQ|, staying inside conv(Z) and no closer to
/// any W member than to Q. Afterwards the cluster is shrunk uniformly so no
/// internal distance exceeds its original value, and clusters are pushed
/// apart until the result is a variance-consistency transform.
inline MoveInSimplexResult move_in_simplex_transform(const DataSet& ds, const Partition& g, std::size_t cluster_index,
                                                     double s, std::size_t steps, std::uint64_t seed) {
  require(s > 1.0, "move_in_simplex_transform: s must exceed 1");
  require_same_ground(g, ds.ids());
  require(cluster_index < g.size(), "move_in_simplex_transform: cluster index out of range");
  const auto members = ds.indices_of(g[cluster_index]);
  require(members.size() >= ds.dim() + 2, "move_in_simplex_transform: cluster needs at least dim+2 points");
  const std::size_t dim = ds.dim();

  MoveInSimplexResult res{ds, {}, 1.0, 0.0};
  std::vector<Point> pts = ds.points();
  Rng rng(seed);

  auto dot = [](const Point& a, const Point& b) {
    double v = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) v += a[d] * b[d];
    return v;
  };

  for (std::size_t step = 0; step < steps; ++step) {
    const std::size_t p = members[static_cast<std::size_t>(rng.below(members.size()))];
    const Point dir = rng.unit_vector(dim);
    std::size_t q = SIZE_MAX;
    double dpq = std::numeric_limits<double>::infinity();
    for (std::size_t i : members)
      if (i != p && distance(pts[i], pts[p]) < dpq) {
        dpq = distance(pts[i], pts[p]);
        q = i;
      }
    if (dpq <= 0.0) continue;
    std::vector<Point> z;
    std::vector<std::size_t> w;
    for (std::size_t i : members) {
      if (i == p) continue;
      const double dq = distance(pts[i], pts[q]);
      if (dq <= s * dpq) z.push_back(pts[i]);
      if (i != q && dq <= 2.0 * s * dpq) w.push_back(i);
    }
    if (z.size() < dim + 1 || !in_convex_hull(pts[p], z)) continue;

    Point u = dir;
    Point away(dim);
    for (std::size_t d = 0; d < dim; ++d) away[d] = pts[p][d] - pts[q][d];
    if (dot(u, away) < 0.0)
      for (double& x : u) x = -x;

    // |P'w| >= |P'Q| is a half-space in P'; along the ray it caps t.
    double t_cap = 2.0 * s * dpq;
    for (std::size_t i : w) {
      Point wq(dim);
      for (std::size_t d = 0; d < dim; ++d) wq[d] = pts[i][d] - pts[q][d];
      const double slope = 2.0 * dot(u, wq);
      if (slope <= 0.0) continue;
      const double rhs = dot(pts[i], pts[i]) - dot(pts[q], pts[q]) - 2.0 * dot(pts[p], wq);
      t_cap = std::min(t_cap, std::max(0.0, rhs / slope) * (1.0 - 1e-9));
    }
    // Hull membership along the ray is an interval containing 0.
    double lo = 0.0, hi = t_cap;
    auto at = [&](double t) {
      Point x = pts[p];
      for (std::size_t d = 0; d < dim; ++d) x[d] += t * u[d];
      return x;
    };
    if (in_convex_hull(at(hi), z)) {
      lo = hi;
    } else {
      for (int it = 0; it < 16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (in_convex_hull(at(mid), z))
          lo = mid;
        else
          hi = mid;
      }
    }
    if (lo <= 0.0) continue;
    pts[p] = at(lo);
    res.moved.push_back(ds.id(p));
  }

  // Shrink the cluster so no internal distance exceeds its original value.
  double f = 1.0;
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const double now = distance(pts[members[a]], pts[members[b]]);
      const double was = distance(ds.point(members[a]), ds.point(members[b]));
      if (now > was) f = std::min(f, was / now);
    }
  if (f < 1.0) {
    f *= 1.0 - 1e-12;
    const Point ctr = centroid(ds.with_points(pts), members);
    for (std::size_t i : members)
      for (std::size_t d = 0; d < dim; ++d) pts[i][d] = ctr[d] + f * (pts[i][d] - ctr[d]);
  }
  res.rescale = f;
  auto sep = separate_clusters(ds, ds.with_points(std::move(pts)), g);
  res.data = std::move(sep.data);
  res.separation = sep.t;
  return res;
}

// ---------------------------------------------------------------------------
// Applying a spec

inline DistanceMatrix apply_transform(const TransformSpec& spec, const DistanceMatrix& m, const Partition& g) {
  validate(spec);
  if (auto* sc = std::get_if<ScaleSpec>(&spec)) return scale_transform(m, sc->alpha);
  if (auto* kr = std::get_if<KleinbergRandomSpec>(&spec))
    return random_consistency_transform(m, g, kr->beta, kr->gamma, kr->seed);
  fail(Errc::InvalidSpec, "transform: this kind needs point data");
}

inline DataSet apply_transform(const TransformSpec& spec, const DataSet& ds, const Partition& g) {
  validate(spec);
  if (auto* sc = std::get_if<ScaleSpec>(&spec)) return scale_points(ds, sc->alpha);
  if (auto* ce = std::get_if<CentricSpec>(&spec)) return centric_transform(ds, g, ce->cluster, ce->lambda);
  if (auto* mv = std::get_if<MoveInSimplexSpec>(&spec))
    return move_in_simplex_transform(ds, g, mv->cluster, mv->s, mv->steps, mv->seed).data;
  fail(Errc::InvalidSpec, "transform: kleinberg random transform needs distance data");
}

}  // namespace axlab
