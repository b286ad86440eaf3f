// axlab: command-line front end to the clustering-axioms library.
//
// Exit codes: 0 success, 2 validation or input error, 3 axiom violations.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "axlab/axlab.hpp"

namespace {

using namespace axlab;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitViolations = 3;

struct Options {
  // common
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  std::string report;
  std::size_t threads = 0;

  // inputs
  std::string in;
  std::string matrix;
  std::string partition;
  std::string spec;

  // gen
  std::string kind = "gaussian";
  std::string truth;
  std::size_t k = 3;
  std::size_t n = 0;
  std::size_t dim = 2;
  double gap = 10.0;
  double sigma = 1.0;
  double radius = 1.0;
  std::string mode = "confirmable";

  // algorithms
  double s = 1.5;
  std::size_t kmin = 0, kmax = 0;
  std::size_t restarts = 10;
  bool shuffle = false;
  std::size_t table1 = 0;
  std::string center = "centroid";
  std::string rounding = "half-even";
  std::int64_t q_offset = 0;

  // transforms
  double alpha = 1.0;
  double lambda = 1.0;
  std::optional<std::size_t> cluster;
  double beta = 0.5, gamma = 2.0;
  std::size_t steps = 10;

  // superball
  std::size_t max_n = 12;

  // axioms
  std::string function = "lloyd";
  std::size_t instances = 10;
  std::size_t transforms = 3;
  std::string consistency_mode = "strict";
  std::size_t budget = 64;
  std::vector<double> alphas{0.5, 2.0, 10.0};
  bool all_targets = false;
  bool identity = false;

  // rivtable
  std::string dir;
  bool with_calibrated = true;
};

// Output sink plus the bookkeeping for --report.
struct Run {
  Options& o;
  std::vector<std::string> argv;
  Json inputs = Json::object();
  Json outputs = Json::object();
  int exit_code = kExitOk;

  DataSet dataset(const std::string& path) {
    require(!path.empty(), "--in is required", Errc::InvalidArgument);
    inputs[path] = digest(read_file(path));
    return load_dataset(path);
  }
  DistanceMatrix distances(const std::string& path) {
    inputs[path] = digest(read_file(path));
    return load_matrix(path);
  }
  Partition partition(const std::string& path) {
    require(!path.empty(), "--partition is required", Errc::InvalidArgument);
    inputs[path] = digest(read_file(path));
    return load_partition(path);
  }

  void emit(const std::string& text) { emit_to(o.out, text); }
  void emit_to(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
      std::cout << text;
      outputs["stdout"] = digest(text);
    } else {
      write_file(path, text);
      outputs[path] = digest(text);
    }
  }
  void emit(const Json& j) { emit(j.dump(2) + "\n"); }

  bool json(const char* fallback) const { return (o.format.empty() ? std::string(fallback) : o.format) == "json"; }
};

std::size_t worker_count(const Options& o) {
  if (o.threads) return o.threads;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

Json dataset_json(const DataSet& ds) {
  return Json{{"ids", ds.ids()}, {"points", ds.points()}};
}

void emit_dataset(Run& r, const DataSet& ds) {
  if (r.json("csv"))
    r.emit(dataset_json(ds));
  else
    r.emit(to_csv(ds));
}

void emit_matrix(Run& r, const DistanceMatrix& m) {
  if (r.json("csv")) {
    std::vector<std::vector<double>> rows(m.size(), std::vector<double>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) rows[i][j] = m(i, j);
    r.emit(Json{{"ids", m.ids()}, {"entries", rows}});
  } else {
    std::ostringstream os;
    write_matrix_csv(os, m);
    r.emit(os.str());
  }
}

void emit_partition(Run& r, const DataSet& ds, const Partition& g, Json extra) {
  if (r.json("json")) {
    extra["partition"] = to_json(g)["clusters"];
    r.emit(extra);
    return;
  }
  std::ostringstream os;
  os << "id,cluster\n";
  const auto labels = labels_for(ds, g);
  for (std::size_t i = 0; i < ds.size(); ++i) os << ds.id(i) << ',' << labels[i] << '\n';
  r.emit(os.str());
}

DistanceMatrix random_matrix(std::size_t n, Rng& rng) {
  DistanceMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, rng.uniform(1.0, 10.0));
  return m;
}

// ---------------------------------------------------------------------------
// gen

void cmd_gen(Run& r) {
  auto& o = r.o;
  if (o.kind == "table1") {
    const DataSet t = table1();
    emit_dataset(r, o.n ? table1_prefix(o.n) : t);
    return;
  }
  if (o.kind == "matrix") {
    Rng rng(o.seed);
    emit_matrix(r, random_matrix(o.n ? o.n : 6, rng));
    return;
  }
  GeneratorSpec spec;
  spec.seed = o.seed;
  if (o.kind == "gaussian") {
    spec.kind = GaussianMixtureSpec{o.k, o.n ? o.n : 50, o.dim, o.gap, o.sigma};
  } else if (o.kind == "planted") {
    spec.kind = PlantedSuperballSpec{o.k, o.s, o.dim, o.n ? o.n : 8, margin_mode_from_string(o.mode)};
  } else if (o.kind == "uniform") {
    spec.kind = UniformBallSpec{o.n ? o.n : 20, o.dim, o.radius};
  } else {
    fail(Errc::InvalidSpec, "gen: unknown kind '" + o.kind + "'");
  }
  const Generated g = generate(spec);
  emit_dataset(r, g.data);
  if (!o.truth.empty()) {
    require(g.truth.has_value(), "gen: --truth needs a kind with planted clusters", Errc::InvalidSpec);
    r.emit_to(o.truth, to_json(*g.truth).dump(2) + "\n");
  }
}

// ---------------------------------------------------------------------------
// cluster

void cmd_lloyd(Run& r) {
  const DataSet ds = r.dataset(r.o.in);
  const auto res = lloyd_kmeans(ds, r.o.k, r.o.restarts, r.o.seed);
  emit_partition(r, ds, res.partition, Json{{"algorithm", "lloyd"}, {"k", r.o.k}, {"seed", r.o.seed}});
}

void cmd_incremental(Run& r) {
  const DataSet ds = r.dataset(r.o.in);
  std::vector<Point> stream = ds.points();
  if (r.o.shuffle) {
    Rng rng(r.o.seed);
    rng.shuffle(stream);
  }
  ClusterModel model = incremental_kmeans(stream, r.o.k);
  model = verify_superball(stream, std::move(model), r.o.s);
  const Partition g = assign_to_centers(ds, model);
  emit_partition(r, ds, g, Json{{"algorithm", "incremental"}, {"k", r.o.k}, {"s", r.o.s}, {"model", to_json(model)}});
}

void cmd_maxks(Run& r) {
  const DataSet ds = r.dataset(r.o.in);
  const std::size_t k0 = r.o.kmin ? r.o.kmin : 1;
  const std::size_t k1 = std::min(r.o.kmax ? r.o.kmax : ds.size() / 2, ds.size() / 2);
  const auto res = max_k_s_means(ds, k0, k1, r.o.s);
  Json j{{"algorithm", "maxks"}, {"s", r.o.s}, {"kmin", k0}, {"kmax", k1}};
  if (!res) {
    j["k"] = nullptr;
    j["partition"] = nullptr;
    r.emit(j);
    return;
  }
  j["k"] = res->k;
  j["model"] = to_json(res->model);
  emit_partition(r, ds, res->partition, j);
}

// ---------------------------------------------------------------------------
// quality

void cmd_var(Run& r) {
  const DataSet ds = r.dataset(r.o.in);
  const Partition g = r.partition(r.o.partition);
  Json j = to_json(variance_explained(ds, g));
  j["k"] = g.size();
  r.emit(j);
}

void cmd_riv(Run& r) {
  const DataSet ds = r.dataset(r.o.in);
  const std::size_t kmin = r.o.kmin ? r.o.kmin : 2;
  const std::size_t kmax = r.o.kmax ? r.o.kmax : std::min<std::size_t>(10, ds.size() - 1);
  const auto sel = select_k_by_riv(ds, kmin, kmax, r.o.seed, r.o.restarts);
  if (r.json("json")) {
    r.emit(to_json(sel));
    return;
  }
  std::ostringstream os;
  os << "k,var_re,riv\n";
  for (const auto& row : sel.rows)
    os << row.k << ',' << format_real(row.var_re) << ',' << (row.riv ? format_real(*row.riv) : "NA") << '\n';
  r.emit(os.str());
}

QsParams qs_params(const Options& o) {
  QsParams p;
  if (o.center == "centroid")
    p.center = QsCenter::Centroid;
  else if (o.center == "medoid")
    p.center = QsCenter::Medoid;
  else
    fail(Errc::InvalidArgument, "--center must be centroid or medoid");
  if (o.rounding == "half-even")
    p.rounding = Rounding::HalfEven;
  else if (o.rounding == "half-away")
    p.rounding = Rounding::HalfAwayFromZero;
  else
    fail(Errc::InvalidArgument, "--rounding must be half-even or half-away");
  p.q_offset = o.q_offset;
  return p;
}

void cmd_qs(Run& r) {
  const QsParams p = qs_params(r.o);
  DataSet ds;
  if (r.o.table1) {
    ds = table1_prefix(r.o.table1);
  } else {
    ds = r.dataset(r.o.in);
  }
  if (!r.o.partition.empty()) {
    const Partition g = r.partition(r.o.partition);
    r.emit(quality_report_json(ds.size(), qs_quality(ds, g, p), g, p));
    return;
  }
  BruteForceOptions opt;
  opt.threads = worker_count(r.o);
  const auto best = brute_force_best(ds, qs_quality_fn(p), 1, Direction::Minimize, opt);
  Json j = quality_report_json(ds.size(), best.value, best.partition, p);
  j["evaluated"] = best.evaluated;
  r.emit(j);
}

// ---------------------------------------------------------------------------
// transform

std::optional<TransformSpec> spec_override(Run& r) {
  if (r.o.spec.empty()) return std::nullopt;
  const std::string text = r.o.spec.front() == '{' ? r.o.spec : read_file(r.o.spec);
  try {
    return transform_spec_from_json(Json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("--spec: ") + e.what());
  }
}

void run_transform(Run& r, TransformSpec spec) {
  if (auto s = spec_override(r)) spec = *s;
  validate(spec);
  if (!r.o.matrix.empty()) {
    const DistanceMatrix m = r.distances(r.o.matrix);
    const Partition g = r.o.partition.empty() ? Partition::single_cluster(m.ids()) : r.partition(r.o.partition);
    emit_matrix(r, apply_transform(spec, m, g));
    return;
  }
  const DataSet ds = r.dataset(r.o.in);
  const Partition g = r.o.partition.empty() ? Partition::single_cluster(ds.ids()) : r.partition(r.o.partition);
  if (auto* mis = std::get_if<MoveInSimplexSpec>(&spec)) {
    const auto res = move_in_simplex_transform(ds, g, mis->cluster, mis->s, mis->steps, mis->seed);
    if (r.json("csv")) {
      r.emit(Json{{"spec", to_json(spec)},
                  {"moved", res.moved},
                  {"rescale", res.rescale},
                  {"separation", res.separation},
                  {"data", dataset_json(res.data)}});
      return;
    }
    emit_dataset(r, res.data);
    return;
  }
  emit_dataset(r, apply_transform(spec, ds, g));
}

// ---------------------------------------------------------------------------
// superball

void cmd_check(Run& r) {
  const DataSet ds = r.dataset(r.o.in);
  const Partition g = r.partition(r.o.partition);
  Json j = to_json(is_superball_clustering(ds, g, r.o.s), r.o.s);
  j["partition"] = to_json(g)["clusters"];
  r.emit(j);
}

void cmd_enumerate(Run& r) {
  const DataSet ds = r.dataset(r.o.in);
  SuperballSearchOptions opt;
  opt.max_n = r.o.max_n;
  const auto all = find_all_superball_clusterings(ds, r.o.s, opt);
  const auto lam = check_laminar(all);
  Json parts = Json::array();
  for (const auto& p : all) parts.push_back(to_json(p)["clusters"]);
  Json j{{"s", r.o.s}, {"count", all.size()}, {"partitions", parts}, {"laminar", lam.laminar}};
  if (lam.witness)
    j["crossing"] = Json{{"first", lam.witness->first},
                         {"second", lam.witness->second},
                         {"a", lam.witness->a},
                         {"b", lam.witness->b},
                         {"c", lam.witness->c}};
  r.emit(j);
}

// ---------------------------------------------------------------------------
// axioms

std::vector<Instance> make_instances(const Options& o, const ClusteringFunctionHandle& f) {
  std::vector<Instance> out;
  for (std::size_t i = 0; i < o.instances; ++i) {
    const std::uint64_t seed = mix_seed(o.seed, i);
    if (f.domain == Domain::DistanceData) {
      Rng rng(seed);
      out.emplace_back(random_matrix(o.n ? o.n : 6, rng));
    } else {
      GeneratorSpec spec{PlantedSuperballSpec{o.k, std::max(o.s, 1.5), o.dim, o.n ? o.n : 6, MarginMode::Confirmable},
                         seed};
      out.emplace_back(generate(spec).data);
    }
  }
  return out;
}

void finish_axioms(Run& r, const AxiomReport& rep, Json params) {
  Json j = to_json(rep);
  j["params"] = std::move(params);
  r.emit(j);
  if (!rep.passed()) r.exit_code = kExitViolations;
}

void cmd_axiom_scale(Run& r) {
  const auto f = handle_by_name(r.o.function, r.o.k, r.o.s, r.o.seed);
  const auto rep = check_scale_invariance(f, make_instances(r.o, f), r.o.alphas);
  finish_axioms(r, rep, Json{{"instances", r.o.instances}, {"alphas", r.o.alphas}, {"seed", r.o.seed}});
}

void cmd_axiom_consistency(Run& r) {
  const auto f = handle_by_name(r.o.function, r.o.k, r.o.s, r.o.seed);
  ConsistencyOptions opt;
  if (r.o.consistency_mode == "strict")
    opt.mode = ConsistencyMode::Strict;
  else if (r.o.consistency_mode == "refinement")
    opt.mode = ConsistencyMode::Refinement;
  else
    fail(Errc::InvalidArgument, "--mode must be strict or refinement");
  opt.s = r.o.s;
  opt.include_identity = r.o.identity;
  const auto rep = check_consistency(f, make_instances(r.o, f), r.o.transforms, r.o.seed, opt);
  finish_axioms(r, rep,
                Json{{"instances", r.o.instances}, {"transforms", r.o.transforms}, {"mode", r.o.consistency_mode},
                     {"seed", r.o.seed}});
}

void cmd_axiom_halfrichness(Run& r) {
  const auto f = handle_by_name(r.o.function, r.o.k, r.o.s, r.o.seed);
  HalfRichnessOptions opt;
  opt.all_targets = r.o.all_targets;
  opt.dim = r.o.dim;
  const std::size_t n = r.o.n ? r.o.n : 5;
  const auto rep = half_richness_search(f, n, r.o.budget, r.o.seed, opt);
  finish_axioms(r, rep, Json{{"n", n}, {"budget", r.o.budget}, {"seed", r.o.seed}, {"all_targets", r.o.all_targets}});
}

// ---------------------------------------------------------------------------
// reproduce

void cmd_table2(Run& r) {
  const auto rep = reproduce_table2(worker_count(r.o), r.o.with_calibrated);
  if (r.json("text"))
    r.emit(to_json(rep));
  else
    r.emit(to_text(rep));
}

void cmd_rivtable(Run& r) {
  auto& o = r.o;
  DataSet ds;
  if (!o.in.empty()) {
    ds = r.dataset(o.in);
  } else {
    GeneratorSpec spec{GaussianMixtureSpec{o.k ? o.k : 8, o.n ? o.n : 50, o.dim, o.gap, o.sigma}, o.seed};
    ds = generate(spec).data;
  }
  std::optional<CentricSpec> centric;
  if (o.lambda != 1.0) centric = CentricSpec{o.cluster, o.lambda};
  const std::size_t kmin = o.kmin ? o.kmin : 2;
  const std::size_t kmax = o.kmax ? o.kmax : 12;
  const auto rep = riv_table(ds, kmin, kmax, o.seed, centric, o.restarts);
  if (r.json("csv")) {
    Json j{{"before", to_json(rep.before)}};
    if (rep.after) j["after"] = to_json(*rep.after);
    if (rep.transform) j["transform"] = to_json(*rep.transform);
    r.emit(j);
  } else {
    r.emit(rep.table_csv);
  }
  if (!o.dir.empty()) {
    r.emit_to(o.dir + "/rivtable.csv", rep.table_csv);
    r.emit_to(o.dir + "/points.csv", rep.points_csv);
    r.emit_to(o.dir + "/rivtable.gp", rep.gnuplot);
  }
}

// ---------------------------------------------------------------------------
// wiring

void add_common(CLI::App* c, Options& o) {
  c->add_option("--seed", o.seed, "random seed");
  c->add_option("--out", o.out, "output file (stdout when omitted)");
  c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json", "text"}));
  c->add_option("--report", o.report, "write a run report (command, digests, wall time) here");
  c->add_option("--threads", o.threads, "worker threads (0: all cores)");
}

void add_alg(CLI::App* c, Options& o) {
  c->add_option("--in", o.in, "dataset CSV");
  c->add_option("--k", o.k, "number of clusters");
  c->add_option("--kmin", o.kmin);
  c->add_option("--kmax", o.kmax);
  c->add_option("--s", o.s, "separation factor");
  c->add_option("--restarts", o.restarts, "Lloyd restarts");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"axlab: clustering axioms laboratory"};
  app.require_subcommand(1);
  std::function<void(Run&)> action;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<void(Run&)> fn) {
    CLI::App* c = parent->add_subcommand(name, help);
    add_common(c, o);
    c->callback([&action, fn] { action = fn; });
    return c;
  };

  auto* gen = leaf(&app, "gen", "generate a dataset", cmd_gen);
  gen->add_option("--kind", o.kind)->check(CLI::IsMember({"gaussian", "planted", "uniform", "table1", "matrix"}));
  gen->add_option("--k", o.k, "clusters");
  gen->add_option("--n", o.n, "points per cluster (gaussian, planted) or in total (uniform, matrix, table1)");
  gen->add_option("--dim", o.dim);
  gen->add_option("--gap", o.gap, "minimum distance between gaussian means");
  gen->add_option("--sigma", o.sigma);
  gen->add_option("--radius", o.radius);
  gen->add_option("--s", o.s);
  gen->add_option("--mode", o.mode)->check(CLI::IsMember({"confirmable", "greyzone", "rejected"}));
  gen->add_option("--truth", o.truth, "write the planted partition JSON here");

  auto* cluster = app.add_subcommand("cluster", "run a clustering algorithm");
  cluster->require_subcommand(1);
  add_alg(leaf(cluster, "lloyd", "Lloyd k-means with k-means++ restarts", cmd_lloyd), o);
  auto* inc = leaf(cluster, "incremental", "sequential k-means with super-ball verification", cmd_incremental);
  add_alg(inc, o);
  inc->add_flag("--shuffle", o.shuffle, "seeded shuffle of the stream order");
  add_alg(leaf(cluster, "maxks", "largest k with a confirmed s-super-ball clustering", cmd_maxks), o);

  auto* quality = app.add_subcommand("quality", "clustering quality measures");
  quality->require_subcommand(1);
  auto* var = leaf(quality, "var", "variance explained by a partition", cmd_var);
  var->add_option("--in", o.in);
  var->add_option("--partition", o.partition);
  add_alg(leaf(quality, "riv", "Var_RE and RIV per k, with the selected k", cmd_riv), o);
  auto* qs = leaf(quality, "qs", "prime-modulus quality; best partition unless --partition", cmd_qs);
  qs->add_option("--in", o.in);
  qs->add_option("--table1", o.table1, "use the first N built-in points");
  qs->add_option("--partition", o.partition);
  qs->add_option("--center", o.center)->check(CLI::IsMember({"centroid", "medoid"}));
  qs->add_option("--rounding", o.rounding)->check(CLI::IsMember({"half-even", "half-away"}));
  qs->add_option("--q-offset", o.q_offset);

  auto* transform = app.add_subcommand("transform", "apply a transform");
  transform->require_subcommand(1);
  auto tr = [&](const std::string& name, const std::string& help, std::function<TransformSpec()> make) {
    auto* c = leaf(transform, name, help, [make](Run& r) { run_transform(r, make()); });
    c->add_option("--in", o.in, "dataset CSV");
    c->add_option("--matrix", o.matrix, "distance matrix CSV");
    c->add_option("--partition", o.partition);
    c->add_option("--spec", o.spec, "transform spec JSON (inline or file), overrides flags");
    return c;
  };
  tr("scale", "multiply all distances by alpha", [&] { return TransformSpec{ScaleSpec{o.alpha}}; })
      ->add_option("--alpha", o.alpha);
  auto* centric = tr("centric", "contract clusters towards their centroids",
                     [&] { return TransformSpec{CentricSpec{o.cluster, o.lambda}}; });
  centric->add_option("--lambda", o.lambda);
  centric->add_option("--cluster", o.cluster, "cluster index (all when omitted)");
  auto* kb = tr("kleinberg", "random consistency transform of a distance matrix",
                [&] { return TransformSpec{KleinbergRandomSpec{o.beta, o.gamma, o.seed}}; });
  kb->add_option("--beta", o.beta);
  kb->add_option("--gamma", o.gamma);
  auto* mis = tr("moveinsimplex", "move points inside the simplex of their neighbours", [&] {
    return TransformSpec{MoveInSimplexSpec{o.cluster.value_or(0), o.s, o.steps, o.seed}};
  });
  mis->add_option("--cluster", o.cluster);
  mis->add_option("--s", o.s);
  mis->add_option("--steps", o.steps);

  auto* superball = app.add_subcommand("superball", "s-super-ball separation");
  superball->require_subcommand(1);
  auto* check = leaf(superball, "check", "separation report for a partition", cmd_check);
  check->add_option("--in", o.in);
  check->add_option("--partition", o.partition);
  check->add_option("--s", o.s);
  auto* en = leaf(superball, "enumerate", "every s-super-ball clustering and a laminarity check", cmd_enumerate);
  en->add_option("--in", o.in);
  en->add_option("--s", o.s);
  en->add_option("--max-n", o.max_n);

  auto* axioms = app.add_subcommand("axioms", "axiom checks");
  axioms->require_subcommand(1);
  auto ax = [&](const std::string& name, const std::string& help, std::function<void(Run&)> fn) {
    auto* c = leaf(axioms, name, help, fn);
    c->add_option("--function", o.function)->check(CLI::IsMember({"lloyd", "incremental", "maxks", "rich", "constant"}));
    c->add_option("--k", o.k);
    c->add_option("--s", o.s);
    c->add_option("--n", o.n, "points per instance (per cluster for point functions)");
    c->add_option("--dim", o.dim);
    return c;
  };
  auto* asc = ax("scale", "scale invariance", cmd_axiom_scale);
  asc->add_option("--instances", o.instances);
  asc->add_option("--alphas", o.alphas)->delimiter(',');
  auto* aco = ax("consistency", "consistency under realizable transforms", cmd_axiom_consistency);
  aco->add_option("--instances", o.instances);
  aco->add_option("--transforms", o.transforms, "transforms per instance");
  aco->add_option("--mode", o.consistency_mode)->check(CLI::IsMember({"strict", "refinement"}));
  aco->add_flag("--identity", o.identity, "also test the identity transform");
  auto* ahr = ax("halfrichness", "witness search over target partitions", cmd_axiom_halfrichness);
  ahr->add_option("--budget", o.budget);
  ahr->add_flag("--all-targets", o.all_targets, "include targets with singleton clusters");

  auto* reproduce = app.add_subcommand("reproduce", "reproduce tables");
  reproduce->require_subcommand(1);
  auto* t2 = leaf(reproduce, "table2", "best prime-modulus partitions of the built-in prefixes", cmd_table2);
  t2->add_flag("!--no-calibrated", o.with_calibrated, "omit the offset-calibrated convention");
  auto* rt = leaf(reproduce, "rivtable", "Var_RE/RIV table, point CSV and gnuplot script", cmd_rivtable);
  add_alg(rt, o);
  rt->add_option("--n", o.n, "points per gaussian component");
  rt->add_option("--dim", o.dim);
  rt->add_option("--gap", o.gap);
  rt->add_option("--sigma", o.sigma);
  rt->add_option("--lambda", o.lambda, "centric contraction of the selected partition");
  rt->add_option("--cluster", o.cluster);
  rt->add_option("--dir", o.dir, "directory for rivtable.csv, points.csv and rivtable.gp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  Run run{o, std::vector<std::string>(argv, argv + argc)};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    action(run);
  } catch (const Error& e) {
    std::cerr << "axlab: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "axlab: " << e.what() << '\n';
    return kExitInvalid;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!o.report.empty()) {
    Json rep{{"command", run.argv}, {"inputs", run.inputs}, {"outputs", run.outputs}, {"exit_code", run.exit_code},
             {"wall_time_s", wall}};
    write_file(o.report, rep.dump(2) + "\n");
  }
  return run.exit_code;
}
