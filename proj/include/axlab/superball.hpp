#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "axlab/core.hpp"
#include "axlab/hull.hpp"

namespace axlab {

/// Cluster diameter: the least r such that every member lies within r of
/// every other member. Zero for singletons.
inline double cluster_radius(const DataSet& ds, std::span<const Id> cluster) {
  require(!cluster.empty(), "cluster_radius: empty cluster");
  const auto idx = ds.indices_of(cluster);
  double r = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) r = std::max(r, distance(ds.point(idx[a]), ds.point(idx[b])));
  return r;
}

inline double hull_distance(const DataSet& ds, std::span<const Id> a, std::span<const Id> b) {
  require(!a.empty() && !b.empty(), "hull_distance: empty cluster");
  std::vector<Point> pa, pb;
  for (Id i : a) pa.push_back(ds.at(i));
  for (Id i : b) {
    require(std::find(a.begin(), a.end(), i) == a.end(), "hull_distance: clusters must be disjoint");
    pb.push_back(ds.at(i));
  }
  return hull_distance_points(pa, pb).distance;
}

struct SeparationReport {
  std::vector<double> radii;
  std::vector<std::vector<double>> pairwise_hull_distances;
  bool is_separated = false;
  /// min over pairs of hull_dist - s (r_i + r_j); +inf for a single cluster.
  double margin = std::numeric_limits<double>::infinity();
};

/// s-super-ball separation: every cluster has at least two points and a
/// positive diameter, and every pair of convex hulls is at least
/// s (r_i + r_j) apart.
inline SeparationReport is_superball_clustering(const DataSet& ds, const Partition& g, double s) {
  require(s > 0.0, "is_superball_clustering: s must be positive");
  require_same_ground(g, ds.ids());
  SeparationReport rep;
  const std::size_t k = g.size();
  bool shapes_ok = true;
  for (const auto& c : g) {
    rep.radii.push_back(cluster_radius(ds, c));
    if (c.size() < 2 || rep.radii.back() <= 0.0) shapes_ok = false;
  }
  rep.pairwise_hull_distances.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const double h = hull_distance(ds, g[i], g[j]);
      rep.pairwise_hull_distances[i][j] = rep.pairwise_hull_distances[j][i] = h;
      rep.margin = std::min(rep.margin, h - s * (rep.radii[i] + rep.radii[j]));
    }
  rep.is_separated = shapes_ok && rep.margin >= 0.0;
  return rep;
}

namespace detail {

// Memoized per-subset diameters and per-pair hull distances for exhaustive
// searches over one small dataset (n <= 16, subsets as bitmasks).
class SubsetGeometry {
 public:
  explicit SubsetGeometry(const DataSet& ds) : ds_(ds), diam_(std::size_t{1} << ds.size(), -1.0) {}

  double diameter(std::uint32_t mask) {
    double& d = diam_[mask];
    if (d >= 0.0) return d;
    d = 0.0;
    for (std::size_t a = 0; a < ds_.size(); ++a) {
      if (!(mask >> a & 1u)) continue;
      for (std::size_t b = a + 1; b < ds_.size(); ++b)
        if (mask >> b & 1u) d = std::max(d, distance(ds_.point(a), ds_.point(b)));
    }
    return d;
  }

  double min_point_distance(std::uint32_t a, std::uint32_t b) const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ds_.size(); ++i) {
      if (!(a >> i & 1u)) continue;
      for (std::size_t j = 0; j < ds_.size(); ++j)
        if (b >> j & 1u) m = std::min(m, distance(ds_.point(i), ds_.point(j)));
    }
    return m;
  }

  double hull(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    const std::uint64_t key = (std::uint64_t{a} << 32) | b;
    auto it = hull_.find(key);
    if (it != hull_.end()) return it->second;
    std::vector<Point> pa, pb;
    for (std::size_t i = 0; i < ds_.size(); ++i) {
      if (a >> i & 1u) pa.push_back(ds_.point(i));
      if (b >> i & 1u) pb.push_back(ds_.point(i));
    }
    const double h = hull_distance_points(pa, pb).distance;
    hull_.emplace(key, h);
    return h;
  }

  bool separated(std::span<const std::uint32_t> masks, double s) {
    for (auto m : masks)
      if (std::popcount(m) < 2 || diameter(m) <= 0.0) return false;
    for (std::size_t i = 0; i < masks.size(); ++i)
      for (std::size_t j = i + 1; j < masks.size(); ++j) {
        const double need = s * (diameter(masks[i]) + diameter(masks[j]));
        // hull distance never exceeds the closest point pair
        if (min_point_distance(masks[i], masks[j]) < need) return false;
        if (hull(masks[i], masks[j]) < need) return false;
      }
    return true;
  }

 private:
  const DataSet& ds_;
  std::vector<double> diam_;
  std::map<std::uint64_t, double> hull_;
};

}  // namespace detail

struct SuperballSearchOptions {
  std::size_t max_n = 10;
  std::size_t min_clusters = 1;
  std::size_t max_clusters = 0;  // 0 = n / 2
};

/// Every s-super-ball clustering of ds (clusters of at least two points), in
/// canonical order.
inline std::vector<Partition> find_all_superball_clusterings(const DataSet& ds, double s,
                                                             const SuperballSearchOptions& opt = {}) {
  const std::size_t n = ds.size();
  if (n > opt.max_n)
    fail(Errc::TooLarge, "find_all_superball_clusterings: " + std::to_string(n) + " points exceeds " +
                             std::to_string(opt.max_n));
  require(n <= 16, "find_all_superball_clusterings: at most 16 points supported", Errc::TooLarge);
  std::vector<Partition> out;
  if (n < 2) return out;
  const std::size_t kmax = std::min(opt.max_clusters == 0 ? n / 2 : opt.max_clusters, n / 2);
  if (opt.min_clusters > kmax) return out;
  detail::SubsetGeometry geo(ds);
  PartitionEnumerator e(n, std::max<std::size_t>(opt.min_clusters, 1), kmax);
  std::vector<std::uint32_t> masks;
  while (e.next()) {
    const auto& code = e.code();
    int blocks = 0;
    for (int c : code) blocks = std::max(blocks, c + 1);
    masks.assign(static_cast<std::size_t>(blocks), 0u);
    for (std::size_t i = 0; i < n; ++i) masks[static_cast<std::size_t>(code[i])] |= 1u << i;
    if (geo.separated(masks, s)) out.push_back(partition_from_code(code, ds.ids()));
  }
  return out;
}

struct CrossingWitness {
  std::size_t first = 0;   // index of the partition holding C_a and C_b
  std::size_t second = 0;  // index of the partition holding C_c
  IdSet a, b, c;
};

struct LaminarResult {
  bool laminar = true;
  std::optional<CrossingWitness> witness;
  explicit operator bool() const noexcept { return laminar; }
};

/// Checks that no two partitions cross: there are no clusters C_a, C_b of
/// one partition and C_c of another with C_a meeting C_c, C_a not inside
/// C_c, and C_b meeting C_c.
inline LaminarResult check_laminar(const std::vector<Partition>& partitions) {
  LaminarResult res;
  if (partitions.empty()) return res;
  const IdSet ground = partitions.front().ground();
  for (const auto& p : partitions)
    if (p.ground() != ground) fail(Errc::GroundSetMismatch, "check_laminar: partitions over different ground sets");

  auto meets = [](const IdSet& x, const IdSet& y) {
    for (Id i : x)
      if (std::binary_search(y.begin(), y.end(), i)) return true;
    return false;
  };
  auto inside = [](const IdSet& x, const IdSet& y) { return std::includes(y.begin(), y.end(), x.begin(), x.end()); };

  for (std::size_t p1 = 0; p1 < partitions.size(); ++p1)
    for (std::size_t p2 = 0; p2 < partitions.size(); ++p2) {
      if (p1 == p2) continue;
      for (const auto& cc : partitions[p2])
        for (const auto& ca : partitions[p1]) {
          if (!meets(ca, cc) || inside(ca, cc)) continue;
          for (const auto& cb : partitions[p1]) {
            if (&cb == &ca || !meets(cb, cc)) continue;
            res.laminar = false;
            res.witness = CrossingWitness{p1, p2, ca, cb, cc};
            return res;
          }
        }
    }
  return res;
}

}  // namespace axlab
