#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "axlab/clusterers.hpp"
#include "axlab/generators.hpp"
#include "axlab/quality.hpp"
#include "axlab/superball.hpp"
#include "axlab/transforms.hpp"
#include "axlab/types.hpp"

namespace axlab {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Numbers and digests

/// 17 significant digits: enough for an exact double round trip.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_real(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    fail(Errc::ParseError, "not a number: '" + std::string(s) + "'");
  return v;
}

inline Id parse_id(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  Id v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    fail(Errc::ParseError, "not an integer id: '" + std::string(s) + "'");
  return v;
}

/// 64-bit FNV-1a, as 16 hex digits.
inline std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dataset CSV: header id,x1,...,xd

inline void write_csv(std::ostream& os, const DataSet& ds) {
  os << "id";
  for (std::size_t d = 0; d < ds.dim(); ++d) os << ",x" << d + 1;
  os << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    os << ds.id(i);
    for (double x : ds.point(i)) os << ',' << format_real(x);
    os << '\n';
  }
}

inline std::string to_csv(const DataSet& ds) {
  std::ostringstream os;
  write_csv(os, ds);
  return os.str();
}

inline DataSet read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) fail(Errc::ParseError, "csv: empty input");
  const auto header = split_commas(line);
  if (header.size() < 2 || header[0].substr(0, 2) != "id")
    fail(Errc::ParseError, "csv: header must be id,x1,...,xd");
  const std::size_t dim = header.size() - 1;
  std::vector<Id> ids;
  std::vector<Point> pts;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_commas(line);
    if (cells.size() != dim + 1)
      fail(Errc::ParseError, "csv line " + std::to_string(lineno) + ": expected " + std::to_string(dim + 1) + " cells");
    ids.push_back(parse_id(cells[0]));
    Point p(dim);
    for (std::size_t d = 0; d < dim; ++d) p[d] = parse_real(cells[d + 1]);
    pts.push_back(std::move(p));
  }
  return DataSet(std::move(ids), std::move(pts));
}

inline DataSet from_csv(const std::string& text) {
  std::istringstream is(text);
  return read_csv(is);
}

// Distance matrix CSV: header id,<id_1>,...,<id_n>, then one row per id.
inline void write_matrix_csv(std::ostream& os, const DistanceMatrix& m) {
  os << "id";
  for (Id id : m.ids()) os << ',' << id;
  os << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << m.ids()[i];
    for (std::size_t j = 0; j < m.size(); ++j) os << ',' << format_real(m(i, j));
    os << '\n';
  }
}

inline DistanceMatrix read_matrix_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) fail(Errc::ParseError, "matrix csv: empty input");
  const auto header = split_commas(line);
  if (header.empty() || header[0] != "id") fail(Errc::ParseError, "matrix csv: header must start with id");
  std::vector<Id> ids;
  for (std::size_t j = 1; j < header.size(); ++j) ids.push_back(parse_id(header[j]));
  const std::size_t n = ids.size();
  std::vector<double> e(n * n);
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_commas(line);
    if (row >= n || cells.size() != n + 1 || parse_id(cells[0]) != ids[row])
      fail(Errc::ParseError, "matrix csv: row " + std::to_string(row + 1) + " malformed");
    for (std::size_t j = 0; j < n; ++j) e[row * n + j] = parse_real(cells[j + 1]);
    ++row;
  }
  if (row != n) fail(Errc::ParseError, "matrix csv: expected " + std::to_string(n) + " rows");
  return DistanceMatrix(std::move(ids), std::move(e));
}

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const Partition& g) {
  Json clusters = Json::array();
  for (const auto& c : g) clusters.push_back(c);
  return Json{{"n", g.element_count()}, {"clusters", clusters}};
}

inline Partition partition_from_json(const Json& j) {
  try {
    std::vector<IdSet> clusters = j.at("clusters").get<std::vector<IdSet>>();
    Partition g(std::move(clusters));
    if (j.contains("n") && j.at("n").get<std::size_t>() != g.element_count())
      fail(Errc::ParseError, "partition json: n does not match the clusters");
    return g;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("partition json: ") + e.what());
  }
}

inline Json to_json(const ClusterModel& m) {
  Json j;
  j["centers"] = m.centers;
  j["counts"] = m.counts;
  if (m.radii) j["radii"] = *m.radii;
  if (m.verdict) j["verdict"] = to_string(*m.verdict);
  return j;
}

inline Json to_json(const SeparationReport& r, double s) {
  Json j;
  j["s"] = s;
  j["radii"] = r.radii;
  j["pairwise_hull_distances"] = r.pairwise_hull_distances;
  j["is_separated"] = r.is_separated;
  j["margin"] = std::isfinite(r.margin) ? Json(r.margin) : Json(nullptr);
  j["verdict"] = r.is_separated ? "separated" : "not-separated";
  return j;
}

inline Json to_json(const VarianceReport& r) {
  return Json{{"total_scatter", r.total_scatter}, {"explained", r.explained}, {"explained_pct", r.explained_pct}};
}

inline Json to_json(const QsParams& p) {
  return Json{{"scale", p.scale},
              {"modulus", p.modulus},
              {"rounding", to_string(p.rounding)},
              {"center", to_string(p.center)},
              {"q_offset", p.q_offset}};
}

inline Json quality_report_json(std::size_t n, std::int64_t quality, const Partition& g, const QsParams& p) {
  return Json{{"n", n}, {"quality", quality}, {"partition", to_json(g)["clusters"]}, {"params", to_json(p)}};
}

inline Json to_json(const RivSelection& sel) {
  Json rows = Json::array();
  for (const auto& r : sel.rows) {
    rows.push_back(Json{{"k", r.k},
                        {"var_re", r.var_re},
                        {"riv", r.riv ? Json(*r.riv) : Json(nullptr)},
                        {"selectable", r.selectable}});
  }
  return Json{{"k", sel.k ? Json(*sel.k) : Json(nullptr)}, {"rows", rows}};
}

inline Json to_json(const TransformSpec& spec) {
  return std::visit(
      [](const auto& t) -> Json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ScaleSpec>) {
          return Json{{"kind", "scale"}, {"alpha", t.alpha}};
        } else if constexpr (std::is_same_v<T, CentricSpec>) {
          return Json{{"kind", "centric"}, {"cluster", t.cluster ? Json(*t.cluster) : Json("all")}, {"lambda", t.lambda}};
        } else if constexpr (std::is_same_v<T, KleinbergRandomSpec>) {
          return Json{{"kind", "kleinberg"}, {"beta", t.beta}, {"gamma", t.gamma}, {"seed", t.seed}};
        } else {
          return Json{{"kind", "moveinsimplex"}, {"cluster", t.cluster}, {"s", t.s}, {"steps", t.steps}, {"seed", t.seed}};
        }
      },
      spec);
}

inline TransformSpec transform_spec_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    TransformSpec spec;
    if (kind == "scale") {
      spec = ScaleSpec{j.at("alpha").get<double>()};
    } else if (kind == "centric") {
      CentricSpec c;
      if (j.contains("cluster") && !(j["cluster"].is_string() && j["cluster"] == "all"))
        c.cluster = j["cluster"].get<std::size_t>();
      c.lambda = j.value("lambda", 1.0);
      spec = c;
    } else if (kind == "kleinberg") {
      spec = KleinbergRandomSpec{j.value("beta", 1.0), j.value("gamma", 1.0), j.value("seed", std::uint64_t{1})};
    } else if (kind == "moveinsimplex") {
      spec = MoveInSimplexSpec{j.at("cluster").get<std::size_t>(), j.value("s", 1.5), j.value("steps", std::size_t{10}),
                               j.value("seed", std::uint64_t{1})};
    } else {
      fail(Errc::InvalidSpec, "transform spec: unknown kind '" + kind + "'");
    }
    validate(spec);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("transform spec: ") + e.what());
  }
}

inline Json to_json(const GeneratorSpec& spec) {
  Json j = std::visit(
      [](const auto& g) -> Json {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, GaussianMixtureSpec>)
          return Json{{"kind", "gaussian"}, {"k", g.k}, {"per_cluster_n", g.per_cluster_n}, {"dim", g.dim},
                      {"center_gap", g.center_gap}, {"sigma", g.sigma}};
        else if constexpr (std::is_same_v<T, PlantedSuperballSpec>)
          return Json{{"kind", "planted"}, {"k", g.k}, {"s", g.s}, {"dim", g.dim},
                      {"per_cluster_n", g.per_cluster_n}, {"mode", to_string(g.mode)}};
        else
          return Json{{"kind", "uniform"}, {"n", g.n}, {"dim", g.dim}, {"radius", g.radius}};
      },
      spec.kind);
  j["seed"] = spec.seed;
  return j;
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::InvalidArgument, "cannot write '" + path + "'");
  out << content;
}

inline DataSet load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  return read_csv(in);
}

inline DistanceMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  return read_matrix_csv(in);
}

inline Partition load_partition(const std::string& path) {
  try {
    return partition_from_json(Json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("partition json: ") + e.what());
  }
}

}  // namespace axlab
