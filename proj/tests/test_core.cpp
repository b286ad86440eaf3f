#include <gtest/gtest.h>

#include <set>

#include "axlab/axlab.hpp"

using namespace axlab;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return Errc::InvalidArgument;
}

std::pair<std::size_t, std::size_t> cell_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_TRUE(e.cell().has_value());
    return e.cell().value_or(std::pair<std::size_t, std::size_t>{99, 99});
  }
  ADD_FAILURE() << "no exception";
  return {99, 99};
}

Partition P(std::vector<IdSet> c) { return Partition(std::move(c)); }

}  // namespace

TEST(ValidateDistances, AcceptsMinimalMatrix) {
  EXPECT_NO_THROW(validate_distances(DistanceMatrix::from_rows({{0, 1}, {1, 0}})));
}

TEST(ValidateDistances, FlagsAsymmetricCell) {
  auto m = DistanceMatrix::from_rows({{0, 1}, {2, 0}});
  EXPECT_EQ(code_of([&] { validate_distances(m); }), Errc::AsymmetricEntry);
  EXPECT_EQ(cell_of([&] { validate_distances(m); }), std::make_pair(std::size_t{0}, std::size_t{1}));
}

TEST(ValidateDistances, FlagsZeroOffDiagonal) {
  auto m = DistanceMatrix::from_rows({{0, 0}, {0, 0}});
  EXPECT_EQ(code_of([&] { validate_distances(m); }), Errc::NonPositiveOffDiagonal);
  EXPECT_EQ(cell_of([&] { validate_distances(m); }), std::make_pair(std::size_t{0}, std::size_t{1}));
}

TEST(ValidateDistances, FlagsDiagonal) {
  auto m = DistanceMatrix::from_rows({{0, 1}, {1, 0.5}});
  EXPECT_EQ(code_of([&] { validate_distances(m); }), Errc::NonZeroDiagonal);
}

TEST(EuclideanDistances, ThreeFourFive) {
  auto m = euclidean_distances(DataSet::from_points({{0, 0}, {3, 4}}));
  EXPECT_DOUBLE_EQ(m(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(m(1, 0), 5.0);
}

TEST(EuclideanDistances, TableOnePairMatchesHandComputation) {
  const DataSet t = table1();
  const double dx = 4.022346 - 3.745942, dy = 5.142886 - 4.646777;
  const auto m = euclidean_distances(t);
  EXPECT_NEAR(m(0, 1), std::sqrt(dx * dx + dy * dy), 1e-15);
  EXPECT_NEAR(m(0, 1), 0.567911, 5e-7);
}

TEST(EuclideanDistances, DuplicatePointRejected) {
  auto ds = DataSet::from_points({{1, 1}, {0, 0}, {1, 1}});
  EXPECT_EQ(code_of([&] { euclidean_distances(ds); }), Errc::DuplicatePoint);
}

TEST(EuclideanDistances, OutputAlwaysValid) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    std::vector<Point> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(rng.in_ball(3, 5.0));
    EXPECT_NO_THROW(validate_distances(euclidean_distances(DataSet::from_points(pts))));
  }
}

TEST(Refinement, Examples) {
  EXPECT_TRUE(is_refinement(P({{1}, {2}, {3}}), P({{1, 2}, {3}})));
  EXPECT_FALSE(is_refinement(P({{1, 2}, {3}}), P({{1, 3}, {2}})));
  const auto g = P({{1, 4}, {2, 3}});
  EXPECT_TRUE(is_refinement(g, g));
}

TEST(Refinement, GroundSetMismatch) {
  EXPECT_EQ(code_of([] { is_refinement(P({{1, 2}}), P({{1, 3}})); }), Errc::GroundSetMismatch);
}

TEST(Refinement, OrderLawsExhaustiveUpToSix) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto all = enumerate_partitions(n, 1, n);
    for (const auto& a : all)
      for (const auto& b : all) {
        const bool ab = is_refinement(a, b), ba = is_refinement(b, a);
        if (ab && ba) EXPECT_EQ(a, b);
        if (!ab) continue;
        if (n <= 5)
          for (const auto& c : all)
            if (is_refinement(b, c)) EXPECT_TRUE(is_refinement(a, c));
      }
  }
}

TEST(Enumeration, SmallCounts) {
  EXPECT_EQ(enumerate_partitions(3, 1, 3).size(), 5u);
  EXPECT_EQ(enumerate_partitions(3, 2, 3).size(), 4u);
  const auto one = enumerate_partitions(1, 1, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], P({{1}}));
}

TEST(Enumeration, CanonicalOrderAndNoDuplicates) {
  const auto all = enumerate_partitions(4, 1, 4);
  ASSERT_EQ(all.size(), 15u);
  EXPECT_EQ(all.front(), P({{1, 2, 3, 4}}));
  EXPECT_EQ(all.back(), P({{1}, {2}, {3}, {4}}));
  std::set<Partition> seen(all.begin(), all.end());
  EXPECT_EQ(seen.size(), all.size());
  const auto ids = iota_ids(4);
  for (const auto& g : all) EXPECT_EQ(partition_from_code(code_from_partition(g, ids), ids), g);
}

TEST(Enumeration, CodesAreValidRestrictedGrowthStrings) {
  PartitionEnumerator e(6, 1, 6);
  RgsCode prev;
  while (e.next()) {
    EXPECT_TRUE(is_valid_rgs(e.code()));
    if (!prev.empty()) EXPECT_LT(prev, e.code());
    prev = e.code();
  }
}

TEST(Enumeration, RangesSplitTheStream) {
  const std::size_t n = 7;
  PartitionEnumerator whole(n, 2, 4);
  std::vector<RgsCode> expect;
  while (whole.next()) expect.push_back(whole.code());
  PartitionEnumerator probe(n, 2, 4);
  const auto total = probe.total();
  ASSERT_EQ(total, expect.size());
  std::vector<RgsCode> got;
  for (std::uint64_t b = 0; b < total; b += 37) {
    PartitionEnumerator e(n, 2, 4);
    e.set_range(b, std::min<std::uint64_t>(total, b + 37));
    while (e.next()) got.push_back(e.code());
  }
  EXPECT_EQ(got, expect);
}

TEST(Counting, MatchesEnumerationUpToTwelve) {
  for (std::size_t n = 1; n <= 12; ++n)
    for (std::size_t m = 1; m <= std::min<std::size_t>(n, 3); ++m) {
      PartitionEnumerator e(n, m, n);
      EXPECT_EQ(count_partitions(n, m), BigInt(e.total())) << n << "," << m;
    }
}

TEST(Counting, Examples) {
  EXPECT_EQ(count_partitions(10, 1), BigInt(115975));
  EXPECT_EQ(count_partitions(10, 2), BigInt(115974));
  EXPECT_EQ(count_partitions(2, 2), BigInt(1));
}

TEST(Counting, StirlingSumAgreesIncludingLargeN) {
  for (std::size_t n : {1, 2, 5, 10, 21, 30, 45})
    for (std::size_t m : {1, 2, 4}) EXPECT_EQ(count_partitions(n, m), count_partitions_stirling_sum(n, m)) << n;
  EXPECT_EQ(bell_number(25), BigInt("4638590332229999353"));
}

TEST(Partition, CanonicalForm) {
  const auto g = P({{5, 3}, {2, 1}, {4}});
  EXPECT_EQ(g.to_string(), "{1,2} {3,5} {4}");
  EXPECT_THROW(P({{1, 2}, {2, 3}}), Error);
}

TEST(DataSetCsv, RoundTripIsExact) {
  Rng rng(3);
  std::vector<Point> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({rng.normal() * 1e-7, rng.normal() * 1e9, rng.uniform()});
  const auto ds = DataSet::from_points(pts);
  const auto back = from_csv(to_csv(ds));
  EXPECT_EQ(back.ids(), ds.ids());
  EXPECT_EQ(back.points(), ds.points());
}

TEST(PartitionJson, RoundTrip) {
  const auto g = P({{1, 4}, {2}, {3, 5}});
  EXPECT_EQ(to_json(g).dump(), R"({"n":5,"clusters":[[1,4],[2],[3,5]]})");
  EXPECT_EQ(partition_from_json(to_json(g)), g);
}
