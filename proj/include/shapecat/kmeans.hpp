#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shapecat/matrix.hpp"
#include "shapecat/metrics.hpp"

namespace shapecat {

struct ClusterModel {
  std::size_t k = 0;
  FeatureMatrix centroids;  // k rows
  double inertia = 0.0;     // sum of squared point-to-centroid distances
};

struct ClusteringRun {
  ClusterModel model;
  std::vector<int> assignments;
  std::uint64_t seed = 0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> inertia_trace;  // one entry per assignment step
};

// Lloyd iteration with seeded distinct-sample initialization. Stops when the
// largest centroid displacement is <= tol or after max_iter rounds. An
// emptied cluster is reseeded with the point farthest from its currently
// assigned centroid.
ClusteringRun kmeans_fit(const FeatureMatrix& data, std::size_t k, std::uint64_t seed,
                         int max_iter = 300, double tol = 1e-6);

struct BestClustering {
  ClusteringRun run;
  ClusterAlignment alignment;
  ScoreReport report;
};

// Restarts with seeds base_seed .. base_seed + n_init - 1, scores each run
// through align_clusters, and keeps the highest f1 (ties: lower seed).
// Requires k == 2 so cluster-to-class alignment is defined.
BestClustering kmeans_best_of(const FeatureMatrix& data, std::span<const ClassLabel> truth,
                              std::size_t k, int n_init, std::uint64_t base_seed);

}  // namespace shapecat
