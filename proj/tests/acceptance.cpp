// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include "axlab/axlab.hpp"

using namespace axlab;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << detail << std::endl;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x, int prec = 3) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << x;
  return os.str();
}

std::string fmt_sci(double x) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << x;
  return os.str();
}

std::size_t hw_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// 1 ------------------------------------------------------------------------
void criterion_counting() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string bad;
  for (std::size_t n = 1; n <= 12; ++n) {
    PartitionEnumerator e(n, 1, n);
    std::uint64_t c = 0;
    while (e.next()) ++c;
    if (BigInt(c) != count_partitions(n, 1)) {
      ok = false;
      bad += " n=" + std::to_string(n);
    }
  }
  const auto c10 = count_partitions(10, 1);
  ok = ok && c10 == 115975;
  const double secs = seconds_since(t0);
  ok = ok && secs < 10.0;
  report(1, ok,
         "partition counts equal enumeration for n<=12" + bad + "; count(10)=" + c10.str() + "; " + fmt(secs) + " s");
}

// 2 ------------------------------------------------------------------------
void criterion_table2() {
  const auto t0 = std::chrono::steady_clock::now();
  const Table2Report rep = reproduce_table2(hw_threads(), true);
  const double secs = seconds_since(t0);

  bool exact = false;
  std::string matching;
  for (std::size_t c = 0; c < 4; ++c)
    if (rep.convention_matches[c]) {
      exact = true;
      matching += " " + rep.conventions[c].name;
    }

  // Literal reading (centroid, half-even, no offset) frozen as the oracle.
  const std::vector<std::int64_t> frozen_q{1287, 1287, 840, 332, 30, 2, 1, 1, 1};
  const std::vector<std::string> frozen_p{"{1,2}",
                                          "{1,2} {3}",
                                          "{1,3,4} {2}",
                                          "{1,4} {2,3,5}",
                                          "{1,5} {2,4,6} {3}",
                                          "{1,2} {3} {4} {5,6,7}",
                                          "{1,6,8} {2} {3} {4,5,7}",
                                          "{1,3,6,9} {2,8} {4} {5,7}",
                                          "{1,2,3} {4,10} {5,6,7,8,9}"};
  bool frozen_ok = true, range_ok = true;
  for (std::size_t r = 0; r < rep.rows.size(); ++r) {
    const auto& lit = rep.rows[r].cells[0];
    frozen_ok = frozen_ok && lit.quality == frozen_q[r] && lit.partition.to_string() == frozen_p[r];
    for (const auto& cell : rep.rows[r].cells) range_ok = range_ok && cell.quality >= 1 && cell.quality <= 3041;
  }
  const bool q23 = rep.rows[0].cells[0].quality == rep.rows[1].cells[0].quality;
  const bool unstable = !rep.unstable_at.empty();
  const bool structural = q23 && unstable && range_ok && frozen_ok;
  const bool ok = secs < 300.0 && (exact || structural);

  std::string detail = exact ? "exact match under" + matching
                             : "no center/rounding convention matches exactly; structural checks: Q(2)==Q(3) " +
                                   std::string(q23 ? "yes" : "no") + ", unstable at " +
                                   std::to_string(rep.unstable_at.size()) + " n, range " +
                                   (range_ok ? "ok" : "bad") + ", frozen literal oracle " + (frozen_ok ? "ok" : "bad");
  detail += "; offset-17 column matches every row: " + std::string(rep.convention_matches[4] ? "yes" : "no");
  report(2, ok, detail + "; " + fmt(secs) + " s");
}

// 3, 4 -----------------------------------------------------------------------
PlantedSuperballSpec planted_case(std::size_t i, MarginMode mode) {
  static const double ss[] = {1.25, 1.5, 2.0};
  static const std::size_t dims[] = {2, 3, 5};
  PlantedSuperballSpec p;
  p.s = ss[i % 3];
  p.k = 2 + (i / 3) % 5;
  p.dim = dims[(i / 15) % 3];
  p.per_cluster_n = 5 + (i * 7) % 8;
  p.mode = mode;
  return p;
}

void criterion_algorithms_1_2() {
  const auto t0 = std::chrono::steady_clock::now();
  int recovered = 0, confirmed = 0, grey = 0, rejected_confirmed = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    {
      const auto spec = planted_case(i, MarginMode::Confirmable);
      const auto g = generate({spec, 1000 + i});
      const auto model = verify_superball(g.data.points(), incremental_kmeans(g.data.points(), spec.k), spec.s);
      recovered += assign_to_centers(g.data, model) == *g.truth;
      confirmed += model.verdict == Verdict::Confirmed;
    }
    {
      const auto spec = planted_case(i, MarginMode::GreyZone);
      const auto g = generate({spec, 2000 + i});
      const auto model = verify_superball(g.data.points(), incremental_kmeans(g.data.points(), spec.k), spec.s);
      grey += model.verdict == Verdict::Indeterminate;
    }
    {
      const auto spec = planted_case(i, MarginMode::Rejected);
      const auto g = generate({spec, 3000 + i});
      const auto model = verify_superball(g.data.points(), incremental_kmeans(g.data.points(), spec.k), spec.s);
      rejected_confirmed += model.verdict == Verdict::Confirmed;
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = recovered == 100 && confirmed == 100 && grey >= 95 && rejected_confirmed == 0 && secs < 30.0;
  report(3, ok,
         "confirmable: recovered " + std::to_string(recovered) + "/100, confirmed " + std::to_string(confirmed) +
             "/100; grey zone indeterminate " + std::to_string(grey) + "/100; rejected-mode confirmed " +
             std::to_string(rejected_confirmed) + "/100; " + fmt(secs) + " s");
}

void criterion_max_k() {
  int hits = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto spec = planted_case(i, MarginMode::Confirmable);
    const auto g = generate({spec, 1000 + i});
    const auto r = max_k_s_means(g.data, 2, g.data.size() / 2, spec.s);
    hits += r && r->k == spec.k;
  }
  report(4, hits == 100, "max-k-s-means returned the planted k on " + std::to_string(hits) + "/100");
}

// 5 ------------------------------------------------------------------------
DataSet random_blobby(Rng& rng, std::size_t n) {
  const std::size_t blobs = 1 + static_cast<std::size_t>(rng.below(4));
  std::vector<Point> centers;
  std::vector<double> spread;
  for (std::size_t b = 0; b < blobs; ++b) {
    centers.push_back({rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)});
    spread.push_back(std::exp(rng.uniform(std::log(0.05), std::log(2.0))));
  }
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t b = static_cast<std::size_t>(rng.below(blobs));
    Point off = rng.in_ball(2, spread[b]);
    pts.push_back({centers[b][0] + off[0], centers[b][1] + off[1]});
  }
  return DataSet::from_points(std::move(pts));
}

void criterion_laminarity() {
  Rng rng(5);
  int pass = 0, nontrivial = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 4 + static_cast<std::size_t>(rng.below(6));
    const DataSet ds = random_blobby(rng, n);
    bool ok = true;
    for (double s : {1.1, 1.5, 2.0}) {
      const auto all = find_all_superball_clusterings(ds, s);
      if (all.size() >= 2) ++nontrivial;
      ok = ok && check_laminar(all).laminar;
    }
    pass += ok;
  }
  report(5, pass == 200,
         "laminar " + std::to_string(pass) + "/200 datasets (s in {1.1,1.5,2}; " + std::to_string(nontrivial) +
             " (dataset, s) cases had two or more separated clusterings)");
}

// 6 ------------------------------------------------------------------------
void criterion_embedding() {
  Rng rng(6);
  int pass = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.below(10));
    DistanceMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, rng.uniform(0.5, 10.0));
    std::vector<std::size_t> labels(n);
    const std::size_t k = 1 + static_cast<std::size_t>(rng.below(n));
    for (auto& l : labels) l = static_cast<std::size_t>(rng.below(k));
    const Partition g = Partition::from_labels<std::size_t>(m.ids(), labels);
    bool ok = true;
    for (std::size_t dim : {1, 2, 5}) {
      const DataSet e = embed_partition(m, g, dim, rng.bits());
      ok = ok && is_consistency_transform(m, pairwise_distances(e), g);
    }
    pass += ok;
  }
  report(6, pass == 200, "embedding is a consistency transform for " + std::to_string(pass) + "/200 pairs at dims 1,2,5");
}

// 7 ------------------------------------------------------------------------
// Every cluster of mid meeting c lies inside c, and c lies inside a cluster of before.
bool nested_cluster(const IdSet& c, const Partition& before, const Partition& after) {
  bool inside_before = false;
  for (const auto& b : before) inside_before = inside_before || std::includes(b.begin(), b.end(), c.begin(), c.end());
  if (!inside_before) return false;
  for (const auto& a : after) {
    bool meets = false;
    for (Id id : a) meets = meets || std::binary_search(c.begin(), c.end(), id);
    if (meets && !std::includes(c.begin(), c.end(), a.begin(), a.end())) return false;
  }
  return true;
}

void criterion_centric() {
  Rng rng(7);
  double worst_rel = 0.0;
  bool identity = true;
  for (int t = 0; t < 50; ++t) {
    const auto g = generate({GaussianMixtureSpec{3, 10, 2, 8.0, 1.0}, static_cast<std::uint64_t>(700 + t)});
    const double lambda = rng.uniform(0.1, 1.0);
    const std::size_t c = static_cast<std::size_t>(rng.below(3));
    const DataSet out = centric_transform(g.data, *g.truth, c, lambda);
    const double before = scatter(g.data, (*g.truth)[c]);
    const double after = scatter(out, (*g.truth)[c]);
    worst_rel = std::max(worst_rel, std::abs(after - lambda * lambda * before) / before);
    identity = identity && centric_transform(g.data, *g.truth, std::nullopt, 1.0) == g.data;
  }

  int instances_ok = 0, checked_clusters = 0;
  double worst_drop = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t k = 3 + static_cast<std::size_t>(t % 6);
    const auto gen = generate({GaussianMixtureSpec{k, 20, 2, 10.0, 1.0}, static_cast<std::uint64_t>(7000 + t)});
    const DataSet& ds = gen.data;
    const Partition lo = lloyd_kmeans(ds, k - 1, 10, 1).partition;
    const Partition mid = lloyd_kmeans(ds, k, 10, 1).partition;
    const Partition hi = lloyd_kmeans(ds, k + 1, 10, 1).partition;
    const double riv0 = riv(ds, lo, mid, hi);
    int qualifying = 0;
    bool ok = true;
    for (std::size_t c = 0; c < mid.size(); ++c) {
      if (!nested_cluster(mid[c], lo, hi)) continue;
      ++qualifying;
      for (double lambda : {0.25, 0.5, 0.9}) {
        const DataSet out = centric_transform(ds, mid, c, lambda);
        const double riv1 = riv(out, lo, mid, hi);
        worst_drop = std::max(worst_drop, riv0 - riv1);
        ok = ok && riv1 >= riv0 - 1e-9;
      }
    }
    checked_clusters += qualifying;
    instances_ok += ok && qualifying > 0;
  }
  const bool ok = worst_rel <= 1e-12 && identity && instances_ok == 50;
  report(7, ok,
         "scatter ratio error " + fmt_sci(worst_rel) + "; lambda=1 identity " + (identity ? "exact" : "differs") +
             "; RIV not decreased on " + std::to_string(instances_ok) + "/50 nested instances (" +
             std::to_string(checked_clusters) + " nested clusters, worst drop " + fmt_sci(worst_drop) + ")");
}

// 8 ------------------------------------------------------------------------
void criterion_riv() {
  int hits = 0;
  std::string picks;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = generate({GaussianMixtureSpec{8, 50, 2, 10.0, 1.0}, seed});
    const auto sel = select_k_by_riv(g.data, 3, 11, seed);
    const double v8 = sel.rows[8 - 2].var_re;
    picks += " " + (sel.k ? std::to_string(*sel.k) : std::string("-"));
    hits += sel.k == 8u && v8 >= 90.0;
  }
  report(8, hits >= 8, "k=8 with Var_RE>=90% on " + std::to_string(hits) + "/10 seeds (picks:" + picks + ")");
}

// 9 ------------------------------------------------------------------------
void criterion_scale() {
  const std::vector<double> alphas{0.5, 2.0, 10.0};
  std::vector<Instance> points, matrices;
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    if (t % 2 == 0) {
      points.push_back(generate({GaussianMixtureSpec{3, 8, 2, 6.0, 1.0}, static_cast<std::uint64_t>(900 + t)}).data);
    } else {
      PlantedSuperballSpec p;
      p.k = 2 + t % 3;
      points.push_back(generate({p, static_cast<std::uint64_t>(900 + t)}).data);
    }
    const std::size_t n = 3 + static_cast<std::size_t>(rng.below(6));
    DistanceMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, rng.uniform(1.0, 10.0));
    matrices.push_back(m);
  }
  std::string detail;
  bool ok = true;
  for (const auto& [h, inst] : {std::pair{lloyd_handle(3, 5, 42), &points}, std::pair{incremental_handle(3), &points},
                                std::pair{maxks_handle(1.5), &points}, std::pair{rich_handle(), &matrices}}) {
    const auto rep = check_scale_invariance(h, *inst, alphas);
    ok = ok && rep.passed() && rep.instances_tested == 50;
    detail += " " + h.name + ":" + std::to_string(rep.violations.size());
  }
  report(9, ok, "scale-invariance violations over 50 instances x 3 alphas:" + detail);
}

// 10 -----------------------------------------------------------------------
void criterion_half_richness() {
  const auto maxks = half_richness_search(maxks_handle(1.5), 6, 40, 10);
  bool via_embed = true;
  for (const auto& w : maxks.witnesses) via_embed = via_embed && w.input && w.strategy == "embed";
  HalfRichnessOptions all;
  all.all_targets = true;
  const auto rich = half_richness_search(rich_handle(), 5, 40, 10, all);
  bool via_q = true;
  for (const auto& w : rich.witnesses) via_q = via_q && w.input && w.strategy == "q-sweep";
  // replay every witness
  bool replay = true;
  for (const auto* rep : {&maxks, &rich}) {
    const auto h = rep == &maxks ? maxks_handle(1.5) : rich_handle();
    for (const auto& w : rep->witnesses)
      if (w.input) replay = replay && h(*w.input) == w.target;
  }
  const bool ok = maxks.passed() && via_embed && rich.passed() && via_q && replay;
  report(10, ok,
         "max-k-s-means n=6: " + std::to_string(maxks.witnesses_found()) + "/" + std::to_string(maxks.witnesses.size()) +
             " targets via embedding; rich function n=5: " + std::to_string(rich.witnesses_found()) + "/" +
             std::to_string(rich.witnesses.size()) + " via q-targeting; replay " + (replay ? "ok" : "mismatch"));
}

// 11 -----------------------------------------------------------------------
void criterion_move_in_simplex() {
  Rng rng(11);
  int split_free = 0, consistent = 0, moved = 0, draws = 0;
  SuperballSearchOptions two;
  two.min_clusters = two.max_clusters = 2;
  for (int t = 0; t < 50; ++t) {
    // Below s = sqrt(2) no point can lie inside the hull of its Z set, so the
    // method never moves anything there.
    const double s = std::array{2.0, 2.5, 3.0}[t % 3];
    // Draw clusters until the original admits no 2-split and at least one
    // point actually moves; a run that moves nothing tests nothing.
    for (int attempt = 0; attempt < 2000; ++attempt) {
      ++draws;
      const std::size_t n = 6 + static_cast<std::size_t>(rng.below(5));
      std::vector<Point> pts;
      std::vector<std::size_t> labels;
      for (std::size_t i = 0; i < n; ++i) {
        pts.push_back(rng.in_ball(2, 1.0));
        labels.push_back(0);
      }
      if (!find_all_superball_clusterings(DataSet::from_points(pts), s, two).empty()) continue;
      for (std::size_t i = 0; i < 6; ++i) {
        Point p = rng.in_ball(2, 1.0);
        p[0] += 10.0;
        pts.push_back(p);
        labels.push_back(1);
      }
      const DataSet ds = DataSet::from_points(pts);
      const Partition g = Partition::from_labels<std::size_t>(ds.ids(), labels);
      const auto res = move_in_simplex_transform(ds, g, 0, s, 20, rng.bits());
      if (res.moved.empty()) continue;
      ++moved;
      split_free += find_all_superball_clusterings(res.data.subset(g[0]), s, two).empty();
      consistent += is_consistency_transform(pairwise_distances(ds), pairwise_distances(res.data), g);
      break;
    }
  }
  report(11, moved == 50 && split_free == 50 && consistent == 50,
         "no 2-split after transform " + std::to_string(split_free) + "/50; consistency transform " +
             std::to_string(consistent) + "/50; clusters with a moved point " + std::to_string(moved) + "/50 (" +
             std::to_string(draws) + " draws)");
}

// 12 -----------------------------------------------------------------------
#ifndef AXLAB_CLI_PATH
#define AXLAB_CLI_PATH "axlab"
#endif

std::string run_digest(const std::string& args, const std::string& out_file) {
  const std::string cmd = std::string(AXLAB_CLI_PATH) + " " + args + " --out " + out_file + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  // 3 = axiom violations found, still a complete output
  const int status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  if (status != 0 && status != 3) return "exit:" + std::to_string(rc);
  return digest(read_file(out_file));
}

void criterion_determinism() {
  const std::string dir = "acceptance_cli";
  const std::string cli = AXLAB_CLI_PATH;
  int setup = std::system(("mkdir -p " + dir).c_str());
  const std::string data = dir + "/planted.csv", truth = dir + "/truth.json", gauss = dir + "/gauss.csv",
                    mat = dir + "/matrix.csv";
  setup |= std::system((cli + " gen --kind planted --k 3 --n 8 --dim 2 --s 1.5 --seed 4 --truth " + truth + " --out " +
                        data + " > /dev/null")
                           .c_str());
  setup |= std::system((cli + " gen --kind gaussian --k 4 --n 20 --dim 2 --seed 2 --out " + gauss + " > /dev/null").c_str());
  setup |= std::system((cli + " gen --kind matrix --n 6 --seed 3 --out " + mat + " > /dev/null").c_str());
  if (setup != 0) {
    report(12, false, "could not prepare inputs with " + cli);
    return;
  }

  const std::vector<std::string> commands{
      "gen --kind gaussian --k 8 --n 50 --dim 2 --seed 1",
      "gen --kind planted --k 4 --n 10 --dim 3 --s 2 --mode greyzone --seed 9",
      "gen --kind uniform --n 30 --dim 2 --seed 5",
      "gen --kind table1",
      "cluster lloyd --in " + gauss + " --k 4 --seed 7",
      "cluster incremental --in " + data + " --k 3 --s 1.5",
      "cluster maxks --in " + data + " --kmin 2 --kmax 12 --s 1.5",
      "quality var --in " + data + " --partition " + truth,
      "quality riv --in " + gauss + " --kmin 2 --kmax 6 --seed 3",
      "quality qs --table1 8",
      "transform scale --in " + data + " --alpha 2.5",
      "transform centric --in " + data + " --partition " + truth + " --cluster 1 --lambda 0.5",
      "transform kleinberg --matrix " + mat + " --partition " + truth.substr(0, 0) + dir + "/mpart.json --seed 4",
      "transform moveinsimplex --in " + data + " --partition " + truth + " --cluster 0 --s 1.5 --steps 5 --seed 2",
      "superball check --in " + data + " --partition " + truth + " --s 1.5",
      "superball enumerate --in " + data.substr(0, 0) + dir + "/small.csv --s 1.5",
      "axioms scale --function rich --instances 5 --seed 3",
      "axioms consistency --function lloyd --k 3 --instances 4 --seed 3 --mode refinement",
      "axioms halfrichness --function maxks --n 4 --budget 10 --seed 1",
      "reproduce table2 --format json",
  };
  write_file(dir + "/mpart.json", "{\"n\":6,\"clusters\":[[1,2,3],[4,5,6]]}");
  write_file(dir + "/small.csv", "id,x1,x2\n1,0,0\n2,0.5,0\n3,10,0\n4,10.5,0\n5,0,0.3\n");

  int stable = 0;
  std::string bad;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const std::string a = run_digest(commands[i], dir + "/a.out");
    const std::string b = run_digest(commands[i], dir + "/b.out");
    if (a == b && a.rfind("exit:", 0) != 0)
      ++stable;
    else
      bad += " #" + std::to_string(i) + "(" + a + "/" + b + ")";
  }
  report(12, stable == 20, "identical output digests on " + std::to_string(stable) + "/20 CLI commands" + bad);
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const std::vector<std::pair<int, std::function<void()>>> all{
      {1, criterion_counting},   {2, criterion_table2},          {3, criterion_algorithms_1_2},
      {4, criterion_max_k},      {5, criterion_laminarity},      {6, criterion_embedding},
      {7, criterion_centric},    {8, criterion_riv},             {9, criterion_scale},
      {10, criterion_half_richness}, {11, criterion_move_in_simplex}, {12, criterion_determinism},
  };
  for (const auto& [id, fn] : all) {
    if (!only.empty() && !only.count(id)) continue;
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, std::string("exception: ") + e.what());
    }
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
