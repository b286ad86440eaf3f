#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <numeric>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "axlab/core.hpp"

namespace axlab {

/// Sum of squared distances of the members to their centroid.
inline double scatter_of(const DataSet& ds, std::span<const std::size_t> members) {
  if (members.size() <= 1) return 0.0;
  const Point c = centroid(ds, members);
  double s = 0.0;
  for (std::size_t i : members) s += squared_distance(ds.point(i), c);
  return s;
}

inline double scatter(const DataSet& ds, std::span<const Id> cluster) {
  require(!cluster.empty(), "scatter: empty cluster");
  const auto idx = ds.indices_of(cluster);
  return scatter_of(ds, idx);
}

struct VarianceReport {
  double total_scatter = 0.0;
  double explained = 0.0;
  double explained_pct = 0.0;
};

inline VarianceReport variance_explained(const DataSet& ds, const Partition& g) {
  require_same_ground(g, ds.ids());
  std::vector<std::size_t> all(ds.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  VarianceReport r;
  r.total_scatter = scatter_of(ds, all);
  double within = 0.0;
  for (const auto& c : g) within += scatter(ds, c);
  r.explained = r.total_scatter - within;
  r.explained_pct = r.total_scatter > 0.0 ? 100.0 * r.explained / r.total_scatter : 0.0;
  return r;
}

/// Ratio of the Var_RE gain into the middle clustering over the gain out of it.
inline double riv_from_values(double before_pct, double mid_pct, double after_pct) {
  const double den = after_pct - mid_pct;
  if (den == 0.0) fail(Errc::ZeroDenominator, "riv: flat elbow, Var_RE(after) == Var_RE(mid)");
  return (mid_pct - before_pct) / den;
}

inline double riv(const DataSet& ds, const Partition& before, const Partition& mid, const Partition& after) {
  return riv_from_values(variance_explained(ds, before).explained_pct, variance_explained(ds, mid).explained_pct,
                         variance_explained(ds, after).explained_pct);
}

// ---------------------------------------------------------------------------
// Prime-modulus quality

enum class Rounding { HalfEven, HalfAwayFromZero };
enum class QsCenter { Centroid, Medoid };

inline const char* to_string(Rounding r) { return r == Rounding::HalfEven ? "half-even" : "half-away"; }
inline const char* to_string(QsCenter c) { return c == QsCenter::Centroid ? "centroid" : "medoid"; }

struct QsParams {
  std::int64_t scale = 10000;
  std::int64_t modulus = 3041;
  Rounding rounding = Rounding::HalfEven;
  QsCenter center = QsCenter::Centroid;
  /// Constant added to q before the modulus. 0 is the literal construction;
  /// 17 reproduces the published Table 2 row for row.
  std::int64_t q_offset = 0;
};

inline std::int64_t round_with(double x, Rounding mode) {
  if (mode == Rounding::HalfEven) return static_cast<std::int64_t>(std::nearbyint(x));
  return static_cast<std::int64_t>(std::round(x));
}

namespace detail {

inline Point medoid(const DataSet& ds, std::span<const std::size_t> members) {
  std::size_t best = members.front();
  double best_sum = std::numeric_limits<double>::infinity();
  for (std::size_t a : members) {
    double s = 0.0;
    for (std::size_t b : members) s += distance(ds.point(a), ds.point(b));
    if (s < best_sum) {
      best_sum = s;
      best = a;
    }
  }
  return ds.point(best);
}

// d_i for every point, from per-point labels over positions.
inline std::vector<double> center_distances(const DataSet& ds, std::span<const int> labels, int blocks,
                                            QsCenter center) {
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(blocks));
  for (std::size_t i = 0; i < labels.size(); ++i) members[static_cast<std::size_t>(labels[i])].push_back(i);
  std::vector<double> d(ds.size(), 0.0);
  for (const auto& m : members) {
    if (m.size() <= 1) continue;
    const Point c = center == QsCenter::Centroid ? centroid(ds, m) : medoid(ds, m);
    for (std::size_t i : m) d[i] = distance(ds.point(i), c);
  }
  return d;
}

inline std::int64_t qs_from_labels(const DataSet& ds, std::span<const int> labels, int blocks, const QsParams& p) {
  const auto d = center_distances(ds, labels, blocks, p.center);
  double dmx = 0.0;
  for (double x : d) dmx = std::max(dmx, x);
  if (dmx == 0.0) fail(Errc::DegenerateAllCentered, "qs_quality: every point coincides with its center");
  std::int64_t q = p.q_offset;
  for (double x : d) q += round_with(static_cast<double>(p.scale) * x / dmx, p.rounding);
  const std::int64_t r = ((q % p.modulus) + p.modulus) % p.modulus;
  return p.modulus - r;
}

}  // namespace detail

inline std::int64_t qs_quality(const DataSet& ds, const Partition& g, const QsParams& params = {}) {
  require(params.modulus >= 2 && params.scale >= 1, "qs_quality: need modulus >= 2 and scale >= 1");
  const auto labels = labels_for(ds, g);
  std::vector<int> lab(labels.begin(), labels.end());
  return detail::qs_from_labels(ds, lab, static_cast<int>(g.size()), params);
}

// ---------------------------------------------------------------------------
// Exhaustive search

enum class Direction { Minimize, Maximize };

struct BruteForceOptions {
  std::size_t limit = 13;
  std::size_t threads = 1;
  /// Upper bound on cluster count; 0 means n.
  std::size_t max_clusters = 0;
  /// Skip partitions for which the quality throws (e.g. degenerate ones).
  bool skip_errors = true;
};

template <class Value>
struct BestPartition {
  Partition partition;
  Value value{};
  std::uint64_t index = 0;  // position in the canonical enumeration
  std::uint64_t evaluated = 0;
};

/// Exhaustive optimum of `quality(ds, partition)` over every partition of
/// ds with at least min_clusters clusters. Ties go to the earliest partition
/// in canonical order, independent of the thread count.
template <class Quality>
auto brute_force_best(const DataSet& ds, Quality&& quality, std::size_t min_clusters, Direction direction,
                      const BruteForceOptions& opt = {})
    -> BestPartition<std::decay_t<std::invoke_result_t<Quality&, const DataSet&, const Partition&>>> {
  using Value = std::decay_t<std::invoke_result_t<Quality&, const DataSet&, const Partition&>>;
  const std::size_t n = ds.size();
  if (n > opt.limit)
    fail(Errc::TooLarge, "brute_force_best: " + std::to_string(n) + " points exceeds limit " +
                             std::to_string(opt.limit));
  const std::size_t kmax = opt.max_clusters == 0 ? n : std::min(opt.max_clusters, n);
  PartitionEnumerator proto(n, min_clusters, kmax);
  const std::uint64_t total = proto.total();
  const std::size_t threads = std::max<std::size_t>(1, std::min<std::uint64_t>(opt.threads, total));

  struct Local {
    bool found = false;
    Value value{};
    std::uint64_t index = 0;
    RgsCode code;
    std::uint64_t evaluated = 0;
    std::exception_ptr error;
  };
  std::vector<Local> locals(threads);

  auto better = [&](const Value& a, const Value& b) { return direction == Direction::Minimize ? a < b : b < a; };

  auto work = [&](std::size_t t) {
    Local& L = locals[t];
    try {
      PartitionEnumerator e(n, min_clusters, kmax);
      e.set_range(total * t / threads, total * (t + 1) / threads);
      while (e.next()) {
        const Partition p = partition_from_code(e.code(), ds.ids());
        Value v{};
        try {
          v = quality(ds, p);
        } catch (const Error&) {
          if (!opt.skip_errors) throw;
          continue;
        }
        ++L.evaluated;
        if (!L.found || better(v, L.value)) {
          L.found = true;
          L.value = v;
          L.index = e.index();
          L.code = e.code();
        }
      }
    } catch (...) {
      L.error = std::current_exception();
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  BestPartition<Value> best;
  bool found = false;
  for (const auto& L : locals) {
    if (L.error) std::rethrow_exception(L.error);
    best.evaluated += L.evaluated;
    if (!L.found) continue;
    if (!found || better(L.value, best.value) || (!better(best.value, L.value) && L.index < best.index)) {
      found = true;
      best.value = L.value;
      best.index = L.index;
      best.partition = partition_from_code(L.code, ds.ids());
    }
  }
  if (!found) fail(Errc::InvalidArgument, "brute_force_best: no partition could be evaluated");
  return best;
}

/// qs_quality as a callable for brute_force_best.
inline auto qs_quality_fn(QsParams params = {}) {
  return [params](const DataSet& ds, const Partition& g) { return qs_quality(ds, g, params); };
}

}  // namespace axlab
