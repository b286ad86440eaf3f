#include <gtest/gtest.h>

#include "axlab/axlab.hpp"

using namespace axlab;

namespace {

Partition P(std::vector<IdSet> c) { return Partition(std::move(c)); }

double brute_scatter(const std::vector<Point>& pts) {
  Point m(pts.front().size(), 0.0);
  for (const auto& p : pts)
    for (std::size_t d = 0; d < m.size(); ++d) m[d] += p[d] / static_cast<double>(pts.size());
  double s = 0.0;
  for (const auto& p : pts) s += squared_distance(p, m);
  return s;
}

}  // namespace

TEST(Scatter, Examples) {
  const auto ds = DataSet::from_points({{0, 0}, {3, 4}, {1, 7}, {-2, 2}, {5, -1}});
  EXPECT_EQ(scatter(ds, IdSet{3}), 0.0);
  EXPECT_NEAR(scatter(ds, IdSet{1, 2}), 25.0 / 2.0, 1e-12);
  EXPECT_NEAR(scatter(ds, IdSet{1, 2, 3, 4, 5}), brute_scatter(ds.points()), 1e-12);
  EXPECT_THROW(scatter(ds, IdSet{1, 9}), Error);
}

TEST(VarianceExplained, Extremes) {
  const auto ds = table1();
  const auto one = variance_explained(ds, Partition::single_cluster(ds.ids()));
  EXPECT_NEAR(one.explained, 0.0, 1e-12);
  EXPECT_NEAR(one.explained_pct, 0.0, 1e-10);
  const auto all = variance_explained(ds, Partition::singletons(ds.ids()));
  EXPECT_NEAR(all.explained, all.total_scatter, 1e-12);
  EXPECT_NEAR(all.explained_pct, 100.0, 1e-10);
}

TEST(VarianceExplained, SeparatedPairOfBlobs) {
  Rng rng(5);
  std::vector<Point> pts;
  std::vector<int> lab;
  for (int i = 0; i < 40; ++i) {
    const int c = i % 2;
    pts.push_back({20.0 * c + rng.normal(), rng.normal()});
    lab.push_back(c);
  }
  const auto ds = DataSet::from_points(pts);
  const auto g = Partition::from_labels<int>(ds.ids(), lab);
  EXPECT_GT(variance_explained(ds, g).explained_pct, 90.0);
}

TEST(VarianceExplained, DecompositionAndMonotonicity) {
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    std::vector<Point> pts;
    for (int i = 0; i < 7; ++i) pts.push_back(rng.in_ball(2, 3.0));
    const auto ds = DataSet::from_points(pts);
    const auto parts = enumerate_partitions(7, 1, 7);
    const auto& coarse = parts[rng.below(parts.size())];
    double within = 0.0;
    for (const auto& c : coarse) within += scatter(ds, c);
    const auto r = variance_explained(ds, coarse);
    EXPECT_NEAR(r.total_scatter, r.explained + within, 1e-12 * r.total_scatter);
    for (const auto& fine : parts)
      if (is_refinement(fine, coarse)) EXPECT_GE(variance_explained(ds, fine).explained, r.explained - 1e-12);
  }
}

TEST(VarianceExplained, GroundSetMismatch) {
  const auto ds = table1_prefix(3);
  EXPECT_THROW(variance_explained(ds, P({{1, 2}})), Error);
}

TEST(Riv, Arithmetic) {
  EXPECT_DOUBLE_EQ(riv_from_values(10, 20, 30), 1.0);
  EXPECT_DOUBLE_EQ(riv_from_values(0, 90, 91), 90.0);
  try {
    riv_from_values(0, 50, 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroDenominator);
  }
}

TEST(Qs, LiteralTwoPointValue) {
  const auto ds = table1_prefix(2);
  EXPECT_EQ(qs_quality(ds, P({{1, 2}})), 3041 - (20000 % 3041));
  EXPECT_EQ(qs_quality(ds, P({{1, 2}})), 1287);
}

TEST(Qs, SingletonAddsNothing) {
  EXPECT_EQ(qs_quality(table1_prefix(3), P({{1, 2}, {3}})), qs_quality(table1_prefix(2), P({{1, 2}})));
}

TEST(Qs, AllSingletonsDegenerate) {
  const auto ds = table1_prefix(4);
  try {
    qs_quality(ds, Partition::singletons(ds.ids()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateAllCentered);
  }
}

TEST(Qs, ValueInRange) {
  const auto ds = table1_prefix(6);
  for (const auto& g : enumerate_partitions(6, 1, 5)) {
    const auto q = qs_quality(ds, g);
    EXPECT_GE(q, 1);
    EXPECT_LE(q, 3041);
  }
}

TEST(Qs, RoundingModes) {
  EXPECT_EQ(round_with(2.5, Rounding::HalfEven), 2);
  EXPECT_EQ(round_with(2.5, Rounding::HalfAwayFromZero), 3);
  EXPECT_EQ(round_with(3.5, Rounding::HalfEven), 4);
}

TEST(Qs, OffsetShiftsModularResidue) {
  const auto ds = table1_prefix(2);
  QsParams p;
  p.q_offset = 17;
  EXPECT_EQ(qs_quality(ds, P({{1, 2}}), p), 1270);
}

TEST(BruteForce, TwoPointsPicksSingleClusterOnTie) {
  const auto ds = DataSet::from_points({{0.0}, {1.0}});
  const auto best = brute_force_best(ds, [](const DataSet&, const Partition&) { return 0; }, 1, Direction::Minimize);
  EXPECT_EQ(best.partition, P({{1, 2}}));
  EXPECT_EQ(best.evaluated, 2u);
}

TEST(BruteForce, RefusesTooLarge) {
  std::vector<Point> pts;
  for (int i = 0; i < 14; ++i) pts.push_back({double(i)});
  try {
    brute_force_best(DataSet::from_points(pts), qs_quality_fn(), 1, Direction::Minimize);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
}

TEST(BruteForce, ThreadCountDoesNotChangeResult) {
  const auto ds = table1_prefix(8);
  BruteForceOptions one, many;
  many.threads = 7;
  const auto a = brute_force_best(ds, qs_quality_fn(), 1, Direction::Minimize, one);
  const auto b = brute_force_best(ds, qs_quality_fn(), 1, Direction::Minimize, many);
  EXPECT_EQ(a.partition, b.partition);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.index, b.index);
  const auto c = brute_force_best(ds, qs_quality_fn(), 2, Direction::Maximize, many);
  const auto d = brute_force_best(ds, qs_quality_fn(), 2, Direction::Maximize, one);
  EXPECT_EQ(c.partition, d.partition);
}

// Literal reading of the construction: centroid, half-even, no offset.
TEST(BruteForce, LiteralPrefixOptimaFrozen) {
  const std::vector<std::pair<std::int64_t, std::string>> frozen{
      {1287, "{1,2}"},
      {1287, "{1,2} {3}"},
      {840, "{1,3,4} {2}"},
      {332, "{1,4} {2,3,5}"},
      {30, "{1,5} {2,4,6} {3}"},
      {2, "{1,2} {3} {4} {5,6,7}"},
      {1, "{1,6,8} {2} {3} {4,5,7}"},
  };
  BruteForceOptions opt;
  opt.threads = 4;
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto best = brute_force_best(table1_prefix(n), qs_quality_fn(), 1, Direction::Minimize, opt);
    EXPECT_EQ(best.value, frozen[n - 2].first) << n;
    EXPECT_EQ(best.partition.to_string(), frozen[n - 2].second) << n;
  }
}

TEST(BruteForce, PublishedRowsUnderOffset) {
  QsParams p;
  p.q_offset = 17;
  BruteForceOptions opt;
  opt.threads = 4;
  for (const auto& row : published_table2()) {
    if (row.n > 8) continue;
    const auto best = brute_force_best(table1_prefix(row.n), qs_quality_fn(p), 1, Direction::Minimize, opt);
    EXPECT_EQ(best.value, row.quality) << row.n;
    EXPECT_EQ(best.partition.to_string(), row.partition) << row.n;
  }
}

TEST(BruteForce, PrefixRestrictionUnstable) {
  BruteForceOptions opt;
  opt.threads = 4;
  bool unstable = false;
  Partition prev = brute_force_best(table1_prefix(2), qs_quality_fn(), 1, Direction::Minimize, opt).partition;
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto cur = brute_force_best(table1_prefix(n), qs_quality_fn(), 1, Direction::Minimize, opt).partition;
    if (restrict_without(cur, static_cast<Id>(n)) != prev) unstable = true;
    prev = cur;
  }
  EXPECT_TRUE(unstable);
}
