#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "axlab/quality.hpp"
#include "axlab/random.hpp"

namespace axlab {

enum class Verdict { Confirmed, Rejected, Indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Confirmed: return "Confirmed";
    case Verdict::Rejected: return "Rejected";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

struct ClusterModel {
  std::vector<Point> centers;
  std::vector<std::size_t> counts;
  std::optional<std::vector<double>> radii;
  std::optional<Verdict> verdict;
};

/// Nearest center; ties go to the lowest index.
inline std::size_t nearest_center(std::span<const Point> centers, std::span<const double> x) {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = squared_distance(centers[c], x);
    if (d < bd) {
      bd = d;
      best = c;
    }
  }
  return best;
}

inline Partition assign_to_centers(const DataSet& ds, const ClusterModel& model) {
  require(!model.centers.empty(), "assign_to_centers: no centers");
  std::vector<std::size_t> labels(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) labels[i] = nearest_center(model.centers, ds.point(i));
  return Partition::from_labels<std::size_t>(ds.ids(), labels);
}

// ---------------------------------------------------------------------------
// Lloyd

enum class LloydInit { PlusPlus, RandomDistinct, Farthest };

struct LloydOptions {
  std::size_t restarts = 10;
  std::uint64_t seed = 1;
  LloydInit init = LloydInit::PlusPlus;
  std::size_t max_iterations = 300;
};

struct LloydResult {
  Partition partition;
  ClusterModel model;
  double sse = 0.0;
};

namespace detail {

inline std::vector<Point> lloyd_seed_centers(const DataSet& ds, std::size_t k, LloydInit init, Rng& rng) {
  const std::size_t n = ds.size();
  std::vector<std::size_t> chosen;
  if (init == LloydInit::RandomDistinct) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    rng.shuffle(idx);
    chosen.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  } else {
    chosen.push_back(static_cast<std::size_t>(rng.below(n)));
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    while (chosen.size() < k) {
      const Point& last = ds.point(chosen.back());
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        d2[i] = std::min(d2[i], squared_distance(ds.point(i), last));
        total += d2[i];
      }
      std::size_t pick = 0;
      if (init == LloydInit::Farthest || total == 0.0) {
        for (std::size_t i = 1; i < n; ++i)
          if (d2[i] > d2[pick]) pick = i;
      } else {
        const double u = rng.uniform() * total;
        double acc = 0.0;
        pick = n;
        for (std::size_t i = 0; i < n; ++i) {
          acc += d2[i];
          if (d2[i] > 0.0 && u < acc) {
            pick = i;
            break;
          }
        }
        if (pick == n)
          for (std::size_t i = n; i-- > 0;)
            if (d2[i] > 0.0) {
              pick = i;
              break;
            }
      }
      chosen.push_back(pick);
    }
  }
  std::vector<Point> centers;
  for (std::size_t i : chosen) centers.push_back(ds.point(i));
  return centers;
}

inline LloydResult lloyd_once(const DataSet& ds, std::size_t k, std::vector<Point> centers, std::size_t max_iter) {
  const std::size_t n = ds.size(), dim = ds.dim();
  std::vector<std::size_t> labels(n, SIZE_MAX);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = nearest_center(centers, ds.point(i));
      if (c != labels[i]) {
        labels[i] = c;
        changed = true;
      }
    }
    // Repair empty clusters with the point farthest from its own center.
    std::vector<std::size_t> counts(k, 0);
    for (auto l : labels) ++counts[l];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      std::size_t far = SIZE_MAX;
      double fd = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[labels[i]] <= 1) continue;
        const double d = squared_distance(ds.point(i), centers[labels[i]]);
        if (d > fd) {
          fd = d;
          far = i;
        }
      }
      if (far == SIZE_MAX) break;
      --counts[labels[far]];
      labels[far] = c;
      counts[c] = 1;
      changed = true;
    }
    if (!changed && iter > 0) break;
    std::vector<Point> sums(k, Point(dim, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < dim; ++d) sums[labels[i]][d] += ds.point(i)[d];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t d = 0; d < dim; ++d) centers[c][d] = sums[c][d] / static_cast<double>(counts[c]);
    }
  }
  LloydResult r;
  r.model.centers = centers;
  r.model.counts.assign(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    ++r.model.counts[labels[i]];
    r.sse += squared_distance(ds.point(i), centers[labels[i]]);
  }
  r.partition = Partition::from_labels<std::size_t>(ds.ids(), labels);
  return r;
}

}  // namespace detail

/// Best-of-restarts Lloyd k-means. Restart r is seeded from (seed, r); the
/// lowest SSE wins, ties to the lowest restart index.
inline LloydResult lloyd_kmeans(const DataSet& ds, std::size_t k, const LloydOptions& opt = {}) {
  require(k >= 1 && k <= ds.size(), "lloyd_kmeans: need 1 <= k <= n");
  std::optional<LloydResult> best;
  for (std::size_t r = 0; r < std::max<std::size_t>(opt.restarts, 1); ++r) {
    Rng rng(mix_seed(opt.seed, r));
    auto res = detail::lloyd_once(ds, k, detail::lloyd_seed_centers(ds, k, opt.init, rng), opt.max_iterations);
    if (!best || res.sse < best->sse) best = std::move(res);
  }
  return std::move(*best);
}

inline LloydResult lloyd_kmeans(const DataSet& ds, std::size_t k, std::size_t restarts, std::uint64_t seed) {
  LloydOptions opt;
  opt.restarts = restarts;
  opt.seed = seed;
  return lloyd_kmeans(ds, k, opt);
}

// ---------------------------------------------------------------------------
// Sequential k-means with pairwise merging, and its verification pass

/// Streaming form: seed with the first k points, then for every arriving
/// point merge the closest of the k+1 centers (lexicographically smallest
/// pair on ties) into the lower slot and move the newcomer into the freed
/// slot.
class IncrementalKMeans {
 public:
  explicit IncrementalKMeans(std::size_t k) : k_(k) { require(k >= 1, "incremental_kmeans: k must be positive"); }

  void observe(std::span<const double> x) {
    ++consumed_;
    centers_.emplace_back(x.begin(), x.end());
    counts_.push_back(1);
    if (centers_.size() <= k_) return;

    std::size_t bi = 0, bj = 1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers_.size(); ++i)
      for (std::size_t j = i + 1; j < centers_.size(); ++j) {
        const double d = squared_distance(centers_[i], centers_[j]);
        if (d < bd) {
          bd = d;
          bi = i;
          bj = j;
        }
      }
    const double ni = static_cast<double>(counts_[bi]), nj = static_cast<double>(counts_[bj]);
    for (std::size_t d = 0; d < centers_[bi].size(); ++d)
      centers_[bi][d] = (centers_[bi][d] * ni + centers_[bj][d] * nj) / (ni + nj);
    counts_[bi] += counts_[bj];
    if (bj != k_) {
      centers_[bj] = std::move(centers_[k_]);
      counts_[bj] = counts_[k_];
    }
    centers_.pop_back();
    counts_.pop_back();
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t consumed() const noexcept { return consumed_; }
  const std::vector<Point>& centers() const noexcept { return centers_; }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }

  ClusterModel model() const {
    ClusterModel m;
    m.centers = centers_;
    m.counts = counts_;
    return m;
  }

 private:
  std::size_t k_;
  std::size_t consumed_ = 0;
  std::vector<Point> centers_;
  std::vector<std::size_t> counts_;
};

inline ClusterModel incremental_kmeans(std::span<const Point> stream, std::size_t k) {
  if (stream.size() < k)
    fail(Errc::StreamTooShort,
         "incremental_kmeans: " + std::to_string(stream.size()) + " points for k = " + std::to_string(k));
  IncrementalKMeans km(k);
  for (const auto& x : stream) km.observe(x);
  return km.model();
}

/// Second pass: radii are the distances to the furthest point assigned to
/// each center. Confirmed iff (2s+1)(r_i+r_j) < d_ij for all pairs, Rejected
/// iff s(r_i+r_j) > d_ij for some pair, otherwise Indeterminate.
inline ClusterModel verify_superball(std::span<const Point> stream, ClusterModel model, double s) {
  require(s > 1.0, "verify_superball: s must exceed 1");
  require(!model.centers.empty(), "verify_superball: no centers");
  const std::size_t k = model.centers.size();
  std::vector<double> r(k, 0.0);
  for (const auto& x : stream) {
    const std::size_t c = nearest_center(model.centers, x);
    r[c] = std::max(r[c], distance(model.centers[c], x));
  }
  bool all_confirm = true, any_reject = false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const double dij = distance(model.centers[i], model.centers[j]);
      if (s * r[i] + s * r[j] > dij) any_reject = true;
      if (!((2 * s + 1) * r[i] + (2 * s + 1) * r[j] < dij)) all_confirm = false;
    }
  model.radii = r;
  model.verdict = all_confirm ? Verdict::Confirmed : any_reject ? Verdict::Rejected : Verdict::Indeterminate;
  return model;
}

struct MaxKResult {
  std::size_t k = 0;
  Partition partition;
  ClusterModel model;
};

/// Tries k = k1 down to k0 and returns the largest k whose sequential
/// clustering is Confirmed with every cluster holding at least two points
/// and a positive radius.
inline std::optional<MaxKResult> max_k_s_means(const DataSet& ds, std::size_t k0, std::size_t k1, double s) {
  require(k0 >= 1 && k0 <= k1 && k1 <= ds.size() / 2, "max_k_s_means: need 1 <= k0 <= k1 <= n/2");
  require(s > 1.0, "max_k_s_means: s must exceed 1");
  for (std::size_t k = k1; k >= k0; --k) {
    auto model = verify_superball(ds.points(), incremental_kmeans(ds.points(), k), s);
    if (model.verdict == Verdict::Confirmed) {
      Partition g = assign_to_centers(ds, model);
      bool ok = g.size() == k && g.min_cluster_size() >= 2;
      for (double r : *model.radii) ok = ok && r > 0.0;
      if (ok) return MaxKResult{k, std::move(g), std::move(model)};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Choosing k by the relative increase of variance explained

struct RivRow {
  std::size_t k = 0;
  double var_re = 0.0;
  std::optional<double> riv;  // empty: outside [kmin, kmax] or flat elbow
  bool selectable = false;
};

struct RivSelection {
  std::optional<std::size_t> k;
  std::vector<RivRow> rows;  // k = kmin-1 .. kmax+1
  std::vector<Partition> partitions;
};

inline RivSelection select_k_by_riv(const DataSet& ds, std::size_t kmin, std::size_t kmax, std::uint64_t seed,
                                    std::size_t restarts = 10) {
  require(kmin >= 2 && kmin <= kmax && kmax + 1 <= ds.size(), "select_k_by_riv: need 2 <= kmin <= kmax <= n-1");
  RivSelection sel;
  for (std::size_t k = kmin - 1; k <= kmax + 1; ++k) {
    auto res = lloyd_kmeans(ds, k, restarts, seed);
    RivRow row;
    row.k = k;
    row.var_re = variance_explained(ds, res.partition).explained_pct;
    sel.rows.push_back(row);
    sel.partitions.push_back(std::move(res.partition));
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < sel.rows.size(); ++i) {
    try {
      sel.rows[i].riv = riv_from_values(sel.rows[i - 1].var_re, sel.rows[i].var_re, sel.rows[i + 1].var_re);
      sel.rows[i].selectable = true;
    } catch (const Error& e) {
      if (e.code() != Errc::ZeroDenominator) throw;
      continue;
    }
    if (*sel.rows[i].riv > best) {
      best = *sel.rows[i].riv;
      sel.k = sel.rows[i].k;
    }
  }
  return sel;
}

}  // namespace axlab
