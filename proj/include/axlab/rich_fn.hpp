#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "axlab/core.hpp"

namespace axlab {

/// Ranking behind the pathological rich clustering function. Every
/// partition of the ground set gets a unique rank in [0, M]; `ranked[r]`
/// holds the RGS code of rank r.
struct RichFnTables {
  std::size_t M = 0;
  std::size_t max_i = 0, max_j = 1;  // the pair (P, R) with the largest distance
  std::vector<RgsCode> ranked;

  std::size_t rank_of(const RgsCode& code) const {
    for (std::size_t r = 0; r < ranked.size(); ++r)
      if (ranked[r] == code) return r;
    fail(Errc::InvalidArgument, "RichFnTables: unknown partition code");
  }
};

struct RichFnOptions {
  std::size_t limit = 10;
};

/// Ranks partitions by pooled mean intra-cluster distance (the (P, R) pair is
/// left out when co-clustered), then by mean squared intra-cluster distance,
/// then by canonical order.
inline RichFnTables build_rich_tables(const DistanceMatrix& m, const RichFnOptions& opt = {}) {
  const std::size_t n = m.size();
  require(n >= 2, "pathological_rich_fn: need at least two points");
  if (n > opt.limit)
    fail(Errc::TooLarge, "pathological_rich_fn: " + std::to_string(n) + " points exceeds limit " +
                             std::to_string(opt.limit));
  validate_distances(m);

  RichFnTables t;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) > best) {
        best = m(i, j);
        t.max_i = i;
        t.max_j = j;
      }

  struct Entry {
    double mean, mean_sq;
    std::uint64_t index;
    RgsCode code;
  };
  std::vector<Entry> entries;
  PartitionEnumerator e(n, 1, n);
  entries.reserve(static_cast<std::size_t>(e.total()));
  while (e.next()) {
    const auto& code = e.code();
    double sum = 0.0, sum_sq = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (code[i] != code[j] || (i == t.max_i && j == t.max_j)) continue;
        sum += m(i, j);
        sum_sq += m(i, j) * m(i, j);
        ++count;
      }
    const double c = count ? static_cast<double>(count) : 1.0;
    entries.push_back({sum / c, sum_sq / c, e.index(), code});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.mean != b.mean) return a.mean < b.mean;
    if (a.mean_sq != b.mean_sq) return a.mean_sq < b.mean_sq;
    return a.index < b.index;
  });
  t.M = entries.size() - 1;
  t.ranked.reserve(entries.size());
  for (auto& en : entries) t.ranked.push_back(std::move(en.code));
  return t;
}

/// Smallest over largest off-diagonal distance.
inline double distance_quotient(const DistanceMatrix& m) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      lo = std::min(lo, m(i, j));
      hi = std::max(hi, m(i, j));
    }
  return lo / hi;
}

/// Rank selected by quotient q in (0, 1]. The M+1 ranks get M+1 equal
/// intervals ((r)/(M+1), (r+1)/(M+1)], so every rank is reachable and q = 1
/// selects rank M.
inline std::size_t rank_for_quotient(double q, std::size_t M) {
  const double scaled = std::ceil(q * static_cast<double>(M + 1)) - 1.0;
  if (scaled <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(scaled), M);
}

/// The scale-invariant, rich, and practically unlearnable clustering
/// function: it returns the partition whose rank interval contains the
/// min/max distance quotient.
inline Partition pathological_rich_fn(const DistanceMatrix& m, const RichFnOptions& opt = {}) {
  const auto t = build_rich_tables(m, opt);
  const std::size_t r = rank_for_quotient(distance_quotient(m), t.M);
  return partition_from_code(t.ranked[r], m.ids());
}

}  // namespace axlab
