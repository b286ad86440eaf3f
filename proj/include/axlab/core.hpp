#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "axlab/types.hpp"

namespace axlab {

using BigInt = boost::multiprecision::cpp_int;

inline void validate_distances(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) != 0.0)
      throw Error(Errc::NonZeroDiagonal, "diagonal entry " + std::to_string(i) + " is not zero", std::pair{i, i});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) != m(j, i))
        throw Error(Errc::AsymmetricEntry,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from its transpose",
                    std::pair{i, j});
      if (!(m(i, j) > 0.0))
        throw Error(Errc::NonPositiveOffDiagonal,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not positive", std::pair{i, j});
    }
  }
}

inline DistanceMatrix euclidean_distances(const DataSet& ds) {
  const std::size_t n = ds.size();
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(ds.point(i), ds.point(j));
      if (d == 0.0)
        throw Error(Errc::DuplicatePoint,
                    "ids " + std::to_string(ds.id(i)) + " and " + std::to_string(ds.id(j)) + " coincide",
                    std::pair{i, j});
      e[i * n + j] = d;
      e[j * n + i] = d;
    }
  }
  return DistanceMatrix(ds.ids(), std::move(e));
}

/// True iff every cluster of `fine` lies inside some cluster of `coarse`.
inline bool is_refinement(const Partition& fine, const Partition& coarse) {
  if (fine.ground() != coarse.ground()) fail(Errc::GroundSetMismatch, "is_refinement: different ground sets");
  for (const auto& c : fine) {
    auto home = coarse.cluster_of(c.front());
    const auto& target = coarse[*home];
    for (Id id : c)
      if (!std::binary_search(target.begin(), target.end(), id)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Partition enumeration over restricted growth strings.
//
// A restricted growth string (RGS) of length n has code[0] = 0 and
// code[i] <= 1 + max(code[0..i-1]); it encodes the partition that puts
// position i into block code[i]. Lexicographic RGS order is the canonical
// enumeration order used everywhere for tie-breaking.

using RgsCode = std::vector<int>;

inline bool is_valid_rgs(const RgsCode& code) {
  if (code.empty() || code[0] != 0) return false;
  int mx = 0;
  for (std::size_t i = 1; i < code.size(); ++i) {
    if (code[i] < 0 || code[i] > mx + 1) return false;
    mx = std::max(mx, code[i]);
  }
  return true;
}

inline Partition partition_from_code(const RgsCode& code, std::span<const Id> ids) {
  require(code.size() == ids.size(), "partition_from_code: size mismatch", Errc::SizeMismatch);
  int blocks = 0;
  for (int c : code) blocks = std::max(blocks, c + 1);
  std::vector<IdSet> clusters(static_cast<std::size_t>(blocks));
  for (std::size_t i = 0; i < code.size(); ++i) clusters[static_cast<std::size_t>(code[i])].push_back(ids[i]);
  return Partition(std::move(clusters));
}

inline std::vector<Id> iota_ids(std::size_t n) {
  std::vector<Id> ids(n);
  std::iota(ids.begin(), ids.end(), Id{1});
  return ids;
}

/// Canonical RGS of a partition over the given ordered ids.
inline RgsCode code_from_partition(const Partition& g, std::span<const Id> ids) {
  RgsCode code(ids.size(), -1);
  // Clusters are ordered by smallest member, which is also first-appearance
  // order along ascending ids.
  for (std::size_t c = 0; c < g.size(); ++c)
    for (Id id : g[c]) {
      auto it = std::lower_bound(ids.begin(), ids.end(), id);
      if (it == ids.end() || *it != id) fail(Errc::GroundSetMismatch, "code_from_partition: unknown id");
      code[static_cast<std::size_t>(it - ids.begin())] = static_cast<int>(c);
    }
  for (int c : code)
    if (c < 0) fail(Errc::GroundSetMismatch, "code_from_partition: partition misses ids");
  return code;
}

/// Lazy stream of the partitions of n positions with block count in
/// [min_clusters, max_clusters], in lexicographic RGS order. A stream can be
/// restricted to the index range [begin, end) so disjoint ranges can be
/// consumed in parallel.
class PartitionEnumerator {
 public:
  static constexpr std::size_t kMaxN = 25;

  PartitionEnumerator(std::size_t n, std::size_t min_clusters, std::size_t max_clusters)
      : n_(n), kmin_(min_clusters), kmax_(max_clusters) {
    require(n >= 1 && min_clusters >= 1 && min_clusters <= max_clusters && max_clusters <= n,
            "enumerate_partitions: need 1 <= min_clusters <= max_clusters <= n");
    require(n <= kMaxN, "enumerate_partitions: n too large for indexed enumeration", Errc::TooLarge);
    build_table();
    end_ = total();
  }

  /// Number of partitions in the full stream.
  std::uint64_t total() const { return completions(n_ - 1, 1); }

  /// Restrict to the index range [begin, end).
  void set_range(std::uint64_t begin, std::uint64_t end) {
    require(begin <= end && end <= total(), "PartitionEnumerator: bad range");
    begin_ = begin;
    end_ = end;
    next_index_ = begin;
    started_ = false;
  }

  /// Advances to the next code; false when the range is exhausted.
  bool next() {
    if (next_index_ >= end_) return false;
    if (!started_) {
      code_ = unrank(next_index_);
      started_ = true;
    } else {
      advance();
    }
    ++next_index_;
    return true;
  }

  const RgsCode& code() const noexcept { return code_; }
  std::uint64_t index() const noexcept { return next_index_ - 1; }

  std::optional<Partition> next_partition(std::span<const Id> ids) {
    if (!next()) return std::nullopt;
    return partition_from_code(code_, ids);
  }

  RgsCode unrank(std::uint64_t idx) const {
    RgsCode code(n_, 0);
    std::size_t blocks = 1;
    for (std::size_t pos = 1; pos < n_; ++pos) {
      const std::size_t rem = n_ - 1 - pos;
      const std::uint64_t stay = completions(rem, blocks);
      bool placed = false;
      for (std::size_t v = 0; v < blocks; ++v) {
        if (idx < stay) {
          code[pos] = static_cast<int>(v);
          placed = true;
          break;
        }
        idx -= stay;
      }
      if (!placed) {
        code[pos] = static_cast<int>(blocks);
        ++blocks;
      }
    }
    return code;
  }

 private:
  std::uint64_t completions(std::size_t remaining, std::size_t blocks) const {
    if (blocks > kmax_ + 1) return 0;
    return table_[remaining * (n_ + 2) + blocks];
  }

  void build_table() {
    table_.assign((n_ + 1) * (n_ + 2), 0);
    for (std::size_t b = 0; b <= n_ + 1; ++b) table_[b] = (b >= kmin_ && b <= kmax_) ? 1 : 0;
    for (std::size_t r = 1; r <= n_; ++r)
      for (std::size_t b = 0; b <= n_; ++b) {
        if (b > kmax_) continue;
        table_[r * (n_ + 2) + b] = b * table_[(r - 1) * (n_ + 2) + b] + table_[(r - 1) * (n_ + 2) + b + 1];
      }
  }

  void advance() {
    std::vector<std::size_t> prefix_blocks(n_);
    int mx = -1;
    for (std::size_t i = 0; i < n_; ++i) {
      prefix_blocks[i] = static_cast<std::size_t>(mx + 1);
      mx = std::max(mx, code_[i]);
    }
    for (std::size_t pos = n_ - 1; pos >= 1; --pos) {
      const std::size_t pb = prefix_blocks[pos];
      for (std::size_t v = static_cast<std::size_t>(code_[pos]) + 1; v <= pb; ++v) {
        const std::size_t nb = std::max(pb, v + 1);
        if (completions(n_ - 1 - pos, nb) > 0) {
          code_[pos] = static_cast<int>(v);
          fill_minimal(pos + 1, nb);
          return;
        }
      }
    }
  }

  void fill_minimal(std::size_t from, std::size_t blocks) {
    for (std::size_t q = from; q < n_; ++q) {
      const std::size_t rem = n_ - 1 - q;
      if (completions(rem, blocks) > 0) {
        code_[q] = 0;
      } else {
        code_[q] = static_cast<int>(blocks);
        ++blocks;
      }
    }
  }

  std::size_t n_, kmin_, kmax_;
  std::vector<std::uint64_t> table_;
  std::uint64_t begin_ = 0, end_ = 0, next_index_ = 0;
  bool started_ = false;
  RgsCode code_;
};

/// Every partition of {1..n} with cluster count in range, in canonical order.
inline std::vector<Partition> enumerate_partitions(std::size_t n, std::size_t min_clusters, std::size_t max_clusters) {
  PartitionEnumerator e(n, min_clusters, max_clusters);
  const auto ids = iota_ids(n);
  std::vector<Partition> out;
  while (auto p = e.next_partition(ids)) out.push_back(std::move(*p));
  return out;
}

/// Stirling numbers of the second kind S(n, k) for k = 0..n.
inline std::vector<BigInt> stirling2_row(std::size_t n) {
  std::vector<BigInt> row{1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<BigInt> next(m + 1, 0);
    for (std::size_t k = 1; k <= m; ++k) {
      next[k] = row.size() > k ? BigInt(k) * row[k] : BigInt(0);
      next[k] += row[k - 1];
    }
    row = std::move(next);
  }
  return row;
}

inline BigInt bell_number(std::size_t n) {
  // Bell triangle: each row starts with the last entry of the previous row.
  std::vector<BigInt> row{1};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<BigInt> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (const auto& v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

/// Number of partitions of n elements into at least min_clusters blocks.
inline BigInt count_partitions(std::size_t n, std::size_t min_clusters = 1) {
  require(n >= 1, "count_partitions: n must be positive");
  BigInt total = bell_number(n);
  if (min_clusters > 1) {
    const auto s = stirling2_row(n);
    for (std::size_t k = 1; k < min_clusters && k <= n; ++k) total -= s[k];
  }
  return total < 0 ? BigInt(0) : total;
}

/// Sum over k in [min_clusters, n] of (1/k!) * sum_j (-1)^(k-j) C(k,j) j^n,
/// evaluated in exact integer arithmetic.
inline BigInt count_partitions_stirling_sum(std::size_t n, std::size_t min_clusters = 1) {
  require(n >= 1, "count_partitions_stirling_sum: n must be positive");
  BigInt total = 0;
  for (std::size_t k = std::max<std::size_t>(min_clusters, 1); k <= n; ++k) {
    BigInt inner = 0;
    BigInt binom = 1;  // C(k, j), updated incrementally
    for (std::size_t j = 0; j <= k; ++j) {
      if (j > 0) binom = binom * (k - j + 1) / j;
      BigInt term = binom * boost::multiprecision::pow(BigInt(j), static_cast<unsigned>(n));
      if ((k - j) % 2 == 0)
        inner += term;
      else
        inner -= term;
    }
    BigInt fact = 1;
    for (std::size_t i = 2; i <= k; ++i) fact *= i;
    total += inner / fact;
  }
  return total;
}

}  // namespace axlab
