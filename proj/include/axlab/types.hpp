#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "axlab/error.hpp"

namespace axlab {

using Id = std::int64_t;
using Point = std::vector<double>;
using IdSet = std::vector<Id>;

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

/// Points in R^dim with unique ids kept in ascending order.
class DataSet {
 public:
  DataSet() = default;

  DataSet(std::vector<Id> ids, std::vector<Point> points) {
    require(ids.size() == points.size(), "DataSet: ids and points differ in length", Errc::SizeMismatch);
    require(!points.empty(), "DataSet: no points");
    dim_ = points.front().size();
    require(dim_ >= 1, "DataSet: dimension must be positive");
    std::vector<std::size_t> order(ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
    ids_.reserve(ids.size());
    points_.reserve(points.size());
    for (std::size_t i : order) {
      require(points[i].size() == dim_, "DataSet: inconsistent point dimension", Errc::SizeMismatch);
      if (!ids_.empty()) require(ids_.back() != ids[i], "DataSet: duplicate id " + std::to_string(ids[i]));
      ids_.push_back(ids[i]);
      points_.push_back(std::move(points[i]));
    }
  }

  /// Ids 1..n in the given order.
  static DataSet from_points(std::vector<Point> points) {
    std::vector<Id> ids(points.size());
    std::iota(ids.begin(), ids.end(), Id{1});
    return DataSet(std::move(ids), std::move(points));
  }

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return ids_.empty(); }

  Id id(std::size_t i) const { return ids_[i]; }
  const Point& point(std::size_t i) const { return points_[i]; }
  const std::vector<Id>& ids() const noexcept { return ids_; }
  const std::vector<Point>& points() const noexcept { return points_; }

  std::optional<std::size_t> find(Id id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
  }

  std::size_t index_of(Id id) const {
    auto idx = find(id);
    if (!idx) fail(Errc::UnknownId, "id " + std::to_string(id) + " not in dataset");
    return *idx;
  }

  std::vector<std::size_t> indices_of(std::span<const Id> ids) const {
    std::vector<std::size_t> out;
    out.reserve(ids.size());
    for (Id i : ids) out.push_back(index_of(i));
    return out;
  }

  const Point& at(Id id) const { return points_[index_of(id)]; }

  /// Same ids, new coordinates (same order as points()).
  DataSet with_points(std::vector<Point> points) const { return DataSet(ids_, std::move(points)); }

  /// Sub-dataset restricted to the given ids.
  DataSet subset(std::span<const Id> ids) const {
    std::vector<Point> pts;
    pts.reserve(ids.size());
    for (Id i : ids) pts.push_back(at(i));
    return DataSet(std::vector<Id>(ids.begin(), ids.end()), std::move(pts));
  }

  friend bool operator==(const DataSet&, const DataSet&) = default;

 private:
  std::vector<Id> ids_;
  std::vector<Point> points_;
  std::size_t dim_ = 0;
};

/// Dense symmetric dissimilarity matrix. Entries are not validated on
/// construction; see validate_distances().
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  explicit DistanceMatrix(std::size_t n, double fill = 0.0) : n_(n), entries_(n * n, fill) {
    ids_.resize(n);
    std::iota(ids_.begin(), ids_.end(), Id{1});
    for (std::size_t i = 0; i < n; ++i) entries_[i * n + i] = 0.0;
  }

  DistanceMatrix(std::vector<Id> ids, std::vector<double> entries)
      : n_(ids.size()), ids_(std::move(ids)), entries_(std::move(entries)) {
    require(entries_.size() == n_ * n_, "DistanceMatrix: entries must be n*n", Errc::SizeMismatch);
    require(std::is_sorted(ids_.begin(), ids_.end()) &&
                std::adjacent_find(ids_.begin(), ids_.end()) == ids_.end(),
            "DistanceMatrix: ids must be unique and ascending");
  }

  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    DistanceMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      require(rows[i].size() == n, "DistanceMatrix: ragged rows", Errc::SizeMismatch);
      for (std::size_t j = 0; j < n; ++j) m.entries_[i * n + j] = rows[i][j];
    }
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

  /// Writes both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double v) {
    entries_[i * n_ + j] = v;
    entries_[j * n_ + i] = v;
  }

  const std::vector<Id>& ids() const noexcept { return ids_; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  std::size_t index_of(Id id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) fail(Errc::UnknownId, "id " + std::to_string(id) + " not in matrix");
    return static_cast<std::size_t>(it - ids_.begin());
  }

  double max_entry() const {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, v);
    return m;
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Id> ids_;
  std::vector<double> entries_;
};

/// Set partition of a ground set of ids, always held in canonical form:
/// each cluster sorted ascending, clusters ordered by smallest member.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<IdSet> clusters) : clusters_(std::move(clusters)) {
    for (auto& c : clusters_) {
      require(!c.empty(), "Partition: empty cluster");
      std::sort(c.begin(), c.end());
    }
    std::sort(clusters_.begin(), clusters_.end(),
              [](const IdSet& a, const IdSet& b) { return a.front() < b.front(); });
    IdSet all;
    for (const auto& c : clusters_) all.insert(all.end(), c.begin(), c.end());
    std::sort(all.begin(), all.end());
    require(std::adjacent_find(all.begin(), all.end()) == all.end(), "Partition: clusters overlap");
  }

  /// labels[i] is the cluster label of ids[i]; labels need not be contiguous.
  template <class Label>
  static Partition from_labels(std::span<const Id> ids, std::span<const Label> labels) {
    require(ids.size() == labels.size(), "Partition: ids/labels length mismatch", Errc::SizeMismatch);
    std::vector<std::pair<Label, Id>> tagged;
    tagged.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) tagged.emplace_back(labels[i], ids[i]);
    std::sort(tagged.begin(), tagged.end());
    std::vector<IdSet> clusters;
    for (std::size_t i = 0; i < tagged.size(); ++i) {
      if (i == 0 || tagged[i].first != tagged[i - 1].first) clusters.emplace_back();
      clusters.back().push_back(tagged[i].second);
    }
    return Partition(std::move(clusters));
  }

  static Partition single_cluster(std::span<const Id> ids) { return Partition({IdSet(ids.begin(), ids.end())}); }

  static Partition singletons(std::span<const Id> ids) {
    std::vector<IdSet> c;
    for (Id i : ids) c.push_back({i});
    return Partition(std::move(c));
  }

  std::size_t size() const noexcept { return clusters_.size(); }
  const IdSet& operator[](std::size_t i) const { return clusters_[i]; }
  const std::vector<IdSet>& clusters() const noexcept { return clusters_; }
  auto begin() const noexcept { return clusters_.begin(); }
  auto end() const noexcept { return clusters_.end(); }

  IdSet ground() const {
    IdSet all;
    for (const auto& c : clusters_) all.insert(all.end(), c.begin(), c.end());
    std::sort(all.begin(), all.end());
    return all;
  }

  std::size_t element_count() const {
    std::size_t n = 0;
    for (const auto& c : clusters_) n += c.size();
    return n;
  }

  /// Index of the cluster holding id, if any.
  std::optional<std::size_t> cluster_of(Id id) const {
    for (std::size_t i = 0; i < clusters_.size(); ++i)
      if (std::binary_search(clusters_[i].begin(), clusters_[i].end(), id)) return i;
    return std::nullopt;
  }

  std::size_t min_cluster_size() const {
    std::size_t m = clusters_.empty() ? 0 : clusters_.front().size();
    for (const auto& c : clusters_) m = std::min(m, c.size());
    return m;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& c : clusters_) {
      if (!s.empty()) s += ' ';
      s += '{';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
      }
      s += '}';
    }
    return s;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<IdSet> clusters_;
};

/// Per-point cluster label aligned with ds order; throws unless g partitions ds.
inline std::vector<std::size_t> labels_for(const DataSet& ds, const Partition& g) {
  require(g.element_count() == ds.size(), "partition does not cover the dataset", Errc::GroundSetMismatch);
  std::vector<std::size_t> labels(ds.size(), SIZE_MAX);
  for (std::size_t c = 0; c < g.size(); ++c) {
    for (Id id : g[c]) {
      auto idx = ds.find(id);
      if (!idx) fail(Errc::GroundSetMismatch, "partition id " + std::to_string(id) + " not in dataset");
      labels[*idx] = c;
    }
  }
  return labels;
}

inline void require_same_ground(const Partition& g, std::span<const Id> ids) {
  const IdSet ground = g.ground();
  if (!std::equal(ground.begin(), ground.end(), ids.begin(), ids.end()))
    fail(Errc::GroundSetMismatch, "partition ground set differs from the data ids");
}

inline Point centroid(const DataSet& ds, std::span<const std::size_t> members) {
  Point c(ds.dim(), 0.0);
  for (std::size_t i : members)
    for (std::size_t d = 0; d < ds.dim(); ++d) c[d] += ds.point(i)[d];
  for (auto& x : c) x /= static_cast<double>(members.size());
  return c;
}

inline Point centroid(std::span<const Point> pts) {
  Point c(pts.front().size(), 0.0);
  for (const auto& p : pts)
    for (std::size_t d = 0; d < c.size(); ++d) c[d] += p[d];
  for (auto& x : c) x /= static_cast<double>(pts.size());
  return c;
}

}  // namespace axlab
