#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "axlab/clusterers.hpp"
#include "axlab/generators.hpp"
#include "axlab/io.hpp"
#include "axlab/quality.hpp"
#include "axlab/transforms.hpp"

namespace axlab {

// ---------------------------------------------------------------------------
// Prime-modulus quality table over the table1() prefixes

struct PublishedRow {
  std::size_t n;
  std::int64_t quality;
  const char* partition;
};

/// Published best qualities and partitions for prefixes n = 2..10.
inline const std::array<PublishedRow, 9>& published_table2() {
  static const std::array<PublishedRow, 9> rows{{
      {2, 1270, "{1,2}"},
      {3, 1270, "{1,2} {3}"},
      {4, 823, "{1,3,4} {2}"},
      {5, 315, "{1,4} {2,3,5}"},
      {6, 13, "{1,5} {2,4,6} {3}"},
      {7, 3, "{1,6} {2,7} {3,5} {4}"},
      {8, 2, "{1,2,4,5,6,8} {3} {7}"},
      {9, 1, "{1,2,4,5} {3,8} {6,9} {7}"},
      {10, 1, "{1,2,3,5,9} {4,6} {7,10} {8}"},
  }};
  return rows;
}

struct Convention {
  std::string name;
  QsParams params;
};

/// The four center/rounding combinations, plus the offset-calibrated one.
inline std::vector<Convention> table2_conventions(bool with_calibrated = true) {
  std::vector<Convention> out;
  for (auto center : {QsCenter::Centroid, QsCenter::Medoid})
    for (auto rounding : {Rounding::HalfEven, Rounding::HalfAwayFromZero}) {
      QsParams p;
      p.center = center;
      p.rounding = rounding;
      out.push_back({std::string(to_string(center)) + "/" + to_string(rounding), p});
    }
  if (with_calibrated) {
    QsParams p;
    p.q_offset = 17;
    out.push_back({"centroid/half-even/offset17", p});
  }
  return out;
}

struct Table2Cell {
  std::int64_t quality = 0;
  Partition partition;
  bool quality_match = false;
  bool partition_match = false;
};

struct Table2Row {
  std::size_t n = 0;
  PublishedRow published{};
  std::vector<Table2Cell> cells;  // aligned with conventions
};

struct Table2Report {
  std::vector<Convention> conventions;
  std::vector<Table2Row> rows;
  std::vector<bool> convention_matches;  // every row, quality and partition
  /// n values for which best(n) restricted to ids 1..n-1 differs from best(n-1)
  /// (literal convention).
  std::vector<std::size_t> unstable_at;
};

/// Drops `id` from every cluster, removing clusters that become empty.
inline Partition restrict_without(const Partition& g, Id id) {
  std::vector<IdSet> out;
  for (auto c : g) {
    c.erase(std::remove(c.begin(), c.end(), id), c.end());
    if (!c.empty()) out.push_back(std::move(c));
  }
  return Partition(std::move(out));
}

inline Table2Report reproduce_table2(std::size_t threads = 1, bool with_calibrated = true) {
  Table2Report rep;
  rep.conventions = table2_conventions(with_calibrated);
  rep.convention_matches.assign(rep.conventions.size(), true);
  BruteForceOptions opt;
  opt.threads = threads;
  for (const auto& pub : published_table2()) {
    const DataSet ds = table1_prefix(pub.n);
    Table2Row row;
    row.n = pub.n;
    row.published = pub;
    for (std::size_t c = 0; c < rep.conventions.size(); ++c) {
      auto best = brute_force_best(ds, qs_quality_fn(rep.conventions[c].params), 1, Direction::Minimize, opt);
      Table2Cell cell{best.value, best.partition, best.value == pub.quality,
                      best.partition.to_string() == pub.partition};
      if (!cell.quality_match || !cell.partition_match) rep.convention_matches[c] = false;
      row.cells.push_back(std::move(cell));
    }
    rep.rows.push_back(std::move(row));
  }
  for (std::size_t r = 1; r < rep.rows.size(); ++r) {
    const Partition restricted = restrict_without(rep.rows[r].cells[0].partition, static_cast<Id>(rep.rows[r].n));
    if (restricted != rep.rows[r - 1].cells[0].partition) rep.unstable_at.push_back(rep.rows[r].n);
  }
  return rep;
}

inline Json to_json(const Table2Report& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json cells = Json::object();
    for (std::size_t c = 0; c < rep.conventions.size(); ++c)
      cells[rep.conventions[c].name] = Json{{"quality", r.cells[c].quality},
                                            {"partition", r.cells[c].partition.to_string()},
                                            {"quality_match", r.cells[c].quality_match},
                                            {"partition_match", r.cells[c].partition_match}};
    rows.push_back(Json{{"n", r.n},
                        {"published", Json{{"quality", r.published.quality}, {"partition", r.published.partition}}},
                        {"computed", cells}});
  }
  Json matches = Json::object();
  for (std::size_t c = 0; c < rep.conventions.size(); ++c) matches[rep.conventions[c].name] = bool(rep.convention_matches[c]);
  return Json{{"rows", rows}, {"convention_matches", matches}, {"unstable_at", rep.unstable_at}};
}

inline std::string to_text(const Table2Report& rep) {
  std::ostringstream os;
  for (const auto& r : rep.rows) {
    os << "n=" << r.n << "  published " << r.published.quality << " " << r.published.partition << '\n';
    for (std::size_t c = 0; c < rep.conventions.size(); ++c)
      os << "    " << rep.conventions[c].name << ": " << r.cells[c].quality << " " << r.cells[c].partition.to_string()
         << (r.cells[c].quality_match && r.cells[c].partition_match ? "  [match]" : "  [differs]") << '\n';
  }
  for (std::size_t c = 0; c < rep.conventions.size(); ++c)
    os << rep.conventions[c].name << (rep.convention_matches[c] ? " matches every row\n" : " does not match\n");
  os << "best partition unstable under prefix restriction at n =";
  for (auto n : rep.unstable_at) os << ' ' << n;
  os << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Var_RE / RIV table

struct RivTableReport {
  RivSelection before;
  std::optional<RivSelection> after;
  std::optional<TransformSpec> transform;
  DataSet data;
  std::optional<DataSet> transformed;
  std::string table_csv;
  std::string points_csv;
  std::string gnuplot;
};

/// Per-k Var_RE and RIV table for `ds` over [kmin, kmax]; with a centric spec the selected
/// k's Lloyd partition is contracted and the table recomputed.
inline RivTableReport riv_table(const DataSet& ds, std::size_t kmin, std::size_t kmax, std::uint64_t seed,
                                std::optional<CentricSpec> centric = std::nullopt, std::size_t restarts = 10) {
  RivTableReport rep;
  rep.data = ds;
  rep.before = select_k_by_riv(ds, kmin, kmax, seed, restarts);
  std::optional<Partition> picked;
  if (rep.before.k) picked = rep.before.partitions[*rep.before.k - (kmin - 1)];
  if (centric && picked) {
    rep.transform = *centric;
    rep.transformed = centric_transform(ds, *picked, centric->cluster, centric->lambda);
    rep.after = select_k_by_riv(*rep.transformed, kmin, kmax, seed, restarts);
  }

  std::ostringstream t;
  t << "k,var_re,riv";
  if (rep.after) t << ",var_re_after,riv_after";
  t << '\n';
  auto opt_real = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string("NA"); };
  for (std::size_t i = 0; i < rep.before.rows.size(); ++i) {
    const auto& r = rep.before.rows[i];
    if (r.k < kmin || r.k > kmax) continue;
    t << r.k << ',' << format_real(r.var_re) << ',' << opt_real(r.riv);
    if (rep.after) t << ',' << format_real(rep.after->rows[i].var_re) << ',' << opt_real(rep.after->rows[i].riv);
    t << '\n';
  }
  rep.table_csv = t.str();

  std::ostringstream p;
  p << "id";
  for (std::size_t d = 0; d < ds.dim(); ++d) p << ",x" << d + 1;
  p << ",cluster";
  if (rep.transformed) {
    for (std::size_t d = 0; d < ds.dim(); ++d) p << ",after_x" << d + 1;
  }
  p << '\n';
  const auto labels = picked ? labels_for(ds, *picked) : std::vector<std::size_t>(ds.size(), 0);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    p << ds.id(i);
    for (double x : ds.point(i)) p << ',' << format_real(x);
    p << ',' << labels[i];
    if (rep.transformed)
      for (double x : rep.transformed->point(i)) p << ',' << format_real(x);
    p << '\n';
  }
  rep.points_csv = p.str();

  std::ostringstream g;
  g << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set terminal pngcairo size 1200,500\n"
    << "set output 'rivtable.png'\n"
    << "set multiplot layout 1,2\n"
    << "set xlabel 'k'\nset ylabel 'Var_RE (%)'\n"
    << "plot 'rivtable.csv' using 1:2 with linespoints";
  if (rep.after) g << ", '' using 1:4 with linespoints";
  g << "\nset ylabel 'RIV'\n"
    << "plot 'rivtable.csv' using 1:3 with linespoints";
  if (rep.after) g << ", '' using 1:5 with linespoints";
  g << "\nunset multiplot\n"
    << "set terminal pngcairo size 600,600\n"
    << "set output 'points.png'\n"
    << "unset xlabel\nunset ylabel\n"
    << "plot 'points.csv' using 2:3:4 with points palette pt 7 ps 0.5\n";
  rep.gnuplot = g.str();
  return rep;
}

}  // namespace axlab
