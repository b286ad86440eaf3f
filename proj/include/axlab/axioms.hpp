#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "axlab/clusterers.hpp"
#include "axlab/core.hpp"
#include "axlab/io.hpp"
#include "axlab/rich_fn.hpp"
#include "axlab/transforms.hpp"

namespace axlab {

enum class Domain { PointData, DistanceData };

using Instance = std::variant<DataSet, DistanceMatrix>;

inline const std::vector<Id>& instance_ids(const Instance& x) {
  return std::visit([](const auto& v) -> const std::vector<Id>& { return v.ids(); }, x);
}

inline std::string instance_digest(const Instance& x) {
  std::ostringstream os;
  if (auto* ds = std::get_if<DataSet>(&x))
    write_csv(os, *ds);
  else
    write_matrix_csv(os, std::get<DistanceMatrix>(x));
  return digest(os.str());
}

/// A clustering function: data in, partition of the data's ids out. Point
/// functions only accept point data; distance functions accept either
/// (points are turned into their Euclidean matrix).
struct ClusteringFunctionHandle {
  std::string name;
  Domain domain = Domain::PointData;
  std::function<Partition(const DataSet&)> on_points;
  std::function<Partition(const DistanceMatrix&)> on_matrix;

  Partition operator()(const Instance& x) const {
    if (auto* ds = std::get_if<DataSet>(&x)) {
      if (domain == Domain::PointData) return on_points(*ds);
      return on_matrix(euclidean_distances(*ds));
    }
    if (domain == Domain::PointData) fail(Errc::InvalidArgument, name + ": needs point data");
    return on_matrix(std::get<DistanceMatrix>(x));
  }
};

inline ClusteringFunctionHandle lloyd_handle(std::size_t k, std::size_t restarts = 10, std::uint64_t seed = 1) {
  return {"lloyd", Domain::PointData,
          [=](const DataSet& ds) { return lloyd_kmeans(ds, std::min(k, ds.size()), restarts, seed).partition; }, {}};
}

inline ClusteringFunctionHandle incremental_handle(std::size_t k) {
  return {"incremental", Domain::PointData,
          [=](const DataSet& ds) {
            return assign_to_centers(ds, incremental_kmeans(ds.points(), std::min(k, ds.size())));
          },
          {}};
}

/// k1 = 0 means n/2. When nothing is confirmed the whole set is one cluster.
inline ClusteringFunctionHandle maxks_handle(double s, std::size_t k0 = 1, std::size_t k1 = 0) {
  return {"maxks", Domain::PointData,
          [=](const DataSet& ds) {
            const std::size_t hi = k1 == 0 ? ds.size() / 2 : std::min(k1, ds.size() / 2);
            if (hi < k0) return Partition::single_cluster(ds.ids());
            auto r = max_k_s_means(ds, k0, hi, s);
            return r ? r->partition : Partition::single_cluster(ds.ids());
          },
          {}};
}

inline ClusteringFunctionHandle rich_handle(std::size_t limit = 10) {
  return {"rich", Domain::DistanceData, {},
          [=](const DistanceMatrix& m) { return pathological_rich_fn(m, RichFnOptions{limit}); }};
}

/// Test double: links points closer than an absolute threshold (single
/// linkage). Not scale-invariant.
inline ClusteringFunctionHandle threshold_handle(double threshold) {
  return {"threshold", Domain::DistanceData, {},
          [=](const DistanceMatrix& m) {
            const std::size_t n = m.size();
            std::vector<std::size_t> parent(n);
            std::iota(parent.begin(), parent.end(), std::size_t{0});
            std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
              return parent[x] == x ? x : parent[x] = find(parent[x]);
            };
            for (std::size_t i = 0; i < n; ++i)
              for (std::size_t j = i + 1; j < n; ++j)
                if (m(i, j) < threshold) parent[find(i)] = find(j);
            std::vector<std::size_t> labels(n);
            for (std::size_t i = 0; i < n; ++i) labels[i] = find(i);
            return Partition::from_labels<std::size_t>(m.ids(), labels);
          }};
}

/// Test double: always the single cluster.
inline ClusteringFunctionHandle constant_handle() {
  return {"constant", Domain::DistanceData, {},
          [](const DistanceMatrix& m) { return Partition::single_cluster(m.ids()); }};
}

inline ClusteringFunctionHandle handle_by_name(const std::string& name, std::size_t k, double s, std::uint64_t seed) {
  if (name == "lloyd") return lloyd_handle(k, 10, seed);
  if (name == "incremental") return incremental_handle(k);
  if (name == "maxks") return maxks_handle(s);
  if (name == "rich") return rich_handle();
  if (name == "constant") return constant_handle();
  fail(Errc::InvalidArgument, "unknown clustering function '" + name + "'");
}

// ---------------------------------------------------------------------------
// Reports

enum class Axiom { ScaleInvariance, Consistency, RefinementConsistency, HalfRichness };

inline const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::ScaleInvariance: return "scale-invariance";
    case Axiom::Consistency: return "consistency";
    case Axiom::RefinementConsistency: return "refinement-consistency";
    case Axiom::HalfRichness: return "half-richness";
  }
  return "?";
}

struct Violation {
  std::size_t instance = 0;
  std::string input_digest;
  Json transform;
  Partition before, after;
};

struct Witness {
  Partition target;
  std::optional<Instance> input;  // empty: not found within budget
  std::string strategy;
  std::size_t evaluations = 0;
};

struct AxiomReport {
  Axiom axiom = Axiom::ScaleInvariance;
  std::string function;
  std::size_t instances_tested = 0;
  std::vector<Violation> violations;
  std::vector<Witness> witnesses;  // half-richness only

  std::size_t witnesses_found() const {
    std::size_t c = 0;
    for (const auto& w : witnesses) c += w.input.has_value();
    return c;
  }
  bool passed() const { return violations.empty() && witnesses_found() == witnesses.size(); }
};

inline Json to_json(const AxiomReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back(Json{{"instance", x.instance},
                     {"input_digest", x.input_digest},
                     {"transform", x.transform},
                     {"before", to_json(x.before)["clusters"]},
                     {"after", to_json(x.after)["clusters"]}});
  Json j{{"axiom", to_string(r.axiom)},
         {"function", r.function},
         {"instances_tested", r.instances_tested},
         {"violations", v},
         {"passed", r.passed()}};
  if (r.axiom == Axiom::HalfRichness) {
    Json w = Json::array();
    for (const auto& x : r.witnesses) {
      Json e{{"target", to_json(x.target)["clusters"]},
             {"found", x.input.has_value()},
             {"strategy", x.strategy},
             {"evaluations", x.evaluations}};
      if (x.input) e["input_digest"] = instance_digest(*x.input);
      w.push_back(std::move(e));
    }
    j["targets"] = r.witnesses.size();
    j["witnesses_found"] = r.witnesses_found();
    j["witnesses"] = std::move(w);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Scale invariance

inline Instance scale_instance(const Instance& x, double alpha) {
  if (auto* ds = std::get_if<DataSet>(&x)) return scale_points(*ds, alpha);
  return scale_transform(std::get<DistanceMatrix>(x), alpha);
}

inline AxiomReport check_scale_invariance(const ClusteringFunctionHandle& f, const std::vector<Instance>& instances,
                                          const std::vector<double>& alphas) {
  for (double a : alphas) require(a > 0.0, "check_scale_invariance: alphas must be positive");
  AxiomReport rep{Axiom::ScaleInvariance, f.name, 0, {}, {}};
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Partition base = f(instances[i]);
    ++rep.instances_tested;
    for (double a : alphas) {
      const Partition scaled = f(scale_instance(instances[i], a));
      if (scaled != base)
        rep.violations.push_back({i, instance_digest(instances[i]), to_json(TransformSpec{ScaleSpec{a}}), base, scaled});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Consistency

enum class ConsistencyMode { Strict, Refinement };

struct ConsistencyOptions {
  ConsistencyMode mode = ConsistencyMode::Strict;
  double s = 1.5;             // move-in-simplex parameter for point data
  bool include_identity = false;
};

/// One seeded consistency transform of x with respect to g. Distance data
/// gets a random Kleinberg transform; point data gets a centric contraction
/// of one cluster (clusters then pushed apart) or a move-in-simplex, both
/// realised in point space.
inline std::pair<Instance, Json> realizable_consistency_transform(const Instance& x, const Partition& g,
                                                                  std::uint64_t seed, std::size_t variant, double s) {
  Rng rng(seed);
  if (auto* m = std::get_if<DistanceMatrix>(&x)) {
    KleinbergRandomSpec spec{rng.uniform(0.3, 1.0), rng.uniform(1.0, 3.0), rng.bits()};
    return {random_consistency_transform(*m, g, spec.beta, spec.gamma, spec.seed), to_json(TransformSpec{spec})};
  }
  const DataSet& ds = std::get<DataSet>(x);
  const std::size_t c = static_cast<std::size_t>(rng.below(g.size()));
  if (variant % 2 == 1 && g[c].size() >= ds.dim() + 2 && s > 1.0) {
    MoveInSimplexSpec spec{c, s, 10, rng.bits()};
    auto r = move_in_simplex_transform(ds, g, c, s, spec.steps, spec.seed);
    return {std::move(r.data), to_json(TransformSpec{spec})};
  }
  CentricSpec spec{c, rng.uniform(0.3, 1.0)};
  auto shrunk = centric_transform(ds, g, spec.cluster, spec.lambda);
  auto sep = separate_clusters(ds, shrunk, g);
  Json j = to_json(TransformSpec{spec});
  j["separation"] = sep.t;
  return {std::move(sep.data), j};
}

inline AxiomReport check_consistency(const ClusteringFunctionHandle& f, const std::vector<Instance>& instances,
                                     std::size_t per_instance_transforms, std::uint64_t seed,
                                     const ConsistencyOptions& opt = {}) {
  AxiomReport rep{opt.mode == ConsistencyMode::Strict ? Axiom::Consistency : Axiom::RefinementConsistency, f.name, 0,
                  {}, {}};
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Partition g = f(instances[i]);
    ++rep.instances_tested;
    const std::size_t total = per_instance_transforms + (opt.include_identity ? 1 : 0);
    for (std::size_t t = 0; t < total; ++t) {
      Instance y;
      Json spec;
      if (opt.include_identity && t == 0) {
        y = instances[i];
        spec = Json{{"kind", "identity"}};
      } else {
        std::tie(y, spec) = realizable_consistency_transform(instances[i], g, mix_seed(seed, i * 1000 + t), t, opt.s);
      }
      const Partition h = f(y);
      const bool bad = opt.mode == ConsistencyMode::Strict ? h != g : !is_refinement(h, g);
      if (bad) rep.violations.push_back({i, instance_digest(instances[i]), spec, g, h});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Half-richness witness search

struct HalfRichnessOptions {
  bool all_targets = false;  // include targets with singleton clusters
  std::size_t dim = 2;       // embedding dimension for point functions
  std::size_t sweep_budget = 4096;
};

/// Matrix with intra distances near 1 and inter distances near 100.
inline DistanceMatrix target_shaped_matrix(const Partition& target, Rng& rng) {
  const IdSet ids = target.ground();
  DistanceMatrix m(ids, std::vector<double>(ids.size() * ids.size(), 0.0));
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const bool same = target.cluster_of(ids[i]) == target.cluster_of(ids[j]);
      m.set(i, j, (same ? 1.0 : 100.0) * (1.0 + 0.1 * rng.uniform()));
    }
  return m;
}

/// Equidistant matrix with the (first, second) pair stretched to 1/q.
inline DistanceMatrix stretched_matrix(std::size_t n, double q) {
  DistanceMatrix m(n, 1.0);
  m.set(0, 1, 1.0 / q);
  return m;
}

inline AxiomReport half_richness_search(const ClusteringFunctionHandle& f, std::size_t n, std::size_t budget,
                                        std::uint64_t seed, const HalfRichnessOptions& opt = {}) {
  require(n >= 2 && n <= 8, "half_richness_search: n must lie in [2, 8]");
  AxiomReport rep{Axiom::HalfRichness, f.name, 0, {}, {}};
  const auto ids = iota_ids(n);
  std::map<Partition, std::size_t> slot;
  for (const auto& p : enumerate_partitions(n, 1, n)) {
    if (!opt.all_targets && p.min_cluster_size() < 2) continue;
    slot.emplace(p, rep.witnesses.size());
    rep.witnesses.push_back({p, std::nullopt, "", 0});
  }
  std::size_t open = rep.witnesses.size();

  auto record = [&](const Partition& out, const Instance& input, const char* strategy) {
    auto it = slot.find(out);
    if (it == slot.end()) return;
    auto& w = rep.witnesses[it->second];
    if (w.input) return;
    w.input = input;
    w.strategy = strategy;
    --open;
  };
  auto evaluate = [&](const Instance& input, const char* strategy) {
    ++rep.instances_tested;
    Partition out;
    try {
      out = f(input);
    } catch (const Error&) {
      return;
    }
    record(out, input, strategy);
  };

  // q-sweep over stretched equidistant matrices (distance functions only).
  if (f.domain == Domain::DistanceData) {
    std::size_t evals = 0;
    std::map<double, Partition> seen;
    auto at = [&](double q) -> const Partition& {
      auto it = seen.find(q);
      if (it != seen.end()) return it->second;
      ++evals;
      const DistanceMatrix m = stretched_matrix(n, q);
      ++rep.instances_tested;
      Partition out = f(Instance{m});
      record(out, Instance{m}, "q-sweep");
      return seen.emplace(q, std::move(out)).first->second;
    };
    std::vector<std::pair<double, double>> stack{{1e-6, 1.0}};
    while (!stack.empty() && open > 0 && evals < opt.sweep_budget) {
      auto [lo, hi] = stack.back();
      stack.pop_back();
      if (at(lo) == at(hi) || hi - lo < 1e-9) continue;
      const double mid = 0.5 * (lo + hi);
      at(mid);
      stack.emplace_back(mid, hi);
      stack.emplace_back(lo, mid);
    }
  }

  for (std::size_t t = 0; t < rep.witnesses.size() && open > 0; ++t) {
    auto& w = rep.witnesses[t];
    if (w.input) continue;
    Rng rng(mix_seed(seed, t));
    std::size_t used = 0;
    // (a) embedding of a target-shaped matrix, several seeds
    for (; used < budget / 2 + 1 && !w.input; ++used) {
      const DistanceMatrix m = target_shaped_matrix(w.target, rng);
      if (f.domain == Domain::DistanceData && used == 0) {
        evaluate(m, "target-matrix");
        continue;
      }
      evaluate(embed_partition(m, w.target, opt.dim, rng.bits()), "embed");
    }
    // (b) random instances
    for (; used < budget && !w.input; ++used) {
      if (f.domain == Domain::DistanceData) {
        DistanceMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, rng.uniform(1.0, 10.0));
        evaluate(m, "random");
      } else {
        std::vector<Point> pts;
        for (std::size_t i = 0; i < n; ++i) pts.push_back(rng.in_ball(opt.dim, 10.0));
        evaluate(DataSet(ids, std::move(pts)), "random");
      }
    }
    w.evaluations = used;
  }
  return rep;
}

}  // namespace axlab
