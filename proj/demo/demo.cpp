// Walk-through: plant separated clusters, recover them with the sequential
// k-means and its verification pass, perturb them with a consistency
// transform, and probe the rich clustering function.

#include <iostream>

#include "axlab/axlab.hpp"

using namespace axlab;

int main() {
  const GeneratorSpec spec{PlantedSuperballSpec{3, 2.0, 2, 8, MarginMode::Confirmable}, 7};
  const Generated g = generate(spec);
  std::cout << "planted: " << g.truth->to_string() << "\n";

  const auto sep = is_superball_clustering(g.data, *g.truth, 2.0);
  std::cout << "separated at s=2: " << std::boolalpha << sep.is_separated << " (margin " << sep.margin << ")\n";

  const auto model = verify_superball(g.data.points(), incremental_kmeans(g.data.points(), 3), 2.0);
  const Partition found = assign_to_centers(g.data, model);
  std::cout << "sequential k-means: " << to_string(*model.verdict) << ", recovers planted: " << (found == *g.truth)
            << "\n";

  if (auto best = max_k_s_means(g.data, 1, g.data.size() / 2, 2.0))
    std::cout << "largest confirmed k: " << best->k << "\n";

  const auto moved = move_in_simplex_transform(g.data, *g.truth, 0, 2.0, 10, 3);
  std::cout << "move-in-simplex moved " << moved.moved.size() << " point(s); variance-consistent: "
            << is_variance_consistency_transform(g.data, moved.data, *g.truth) << "\n";

  const auto shrunk = centric_transform(g.data, *g.truth, 1, 0.5);
  const auto pushed = separate_clusters(g.data, shrunk, *g.truth);
  std::cout << "centric 0.5 then push apart by t=" << pushed.t
            << "; still separated: " << is_superball_clustering(pushed.data, *g.truth, 2.0).is_separated << "\n";

  std::cout << "\nrich function on a 4-point equidistant matrix, stretching one pair:\n";
  for (double q : {1.0, 0.5, 0.2, 0.05}) {
    const auto m = stretched_matrix(4, q);
    std::cout << "  q=" << q << " -> " << pathological_rich_fn(m).to_string() << "\n";
  }

  std::cout << "\nbest prime-modulus partition of the first 6 built-in points: ";
  const auto best6 = brute_force_best(table1_prefix(6), qs_quality_fn(), 1, Direction::Minimize);
  std::cout << best6.partition.to_string() << " quality " << best6.value << "\n";
  return 0;
}
