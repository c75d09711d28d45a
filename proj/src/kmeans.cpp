#include "shapecat/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "shapecat/error.hpp"
#include "shapecat/kernels.hpp"
#include "shapecat/parallel.hpp"
#include "shapecat/rng.hpp"

namespace shapecat {
namespace {

// Seeded Forgy start: k rows drawn uniformly, redrawing duplicates of
// already-picked coordinates so the centroids begin distinct.
FeatureMatrix initial_centroids(const FeatureMatrix& data, std::size_t k, Rng& rng) {
  FeatureMatrix centroids(k, data.cols);
  std::vector<std::size_t> chosen;
  std::set<std::size_t> used;
  auto equals_row = [&](std::size_t a, std::size_t b) {
    const double* ra = data.row(a);
    const double* rb = data.row(b);
    for (std::size_t j = 0; j < data.cols; ++j)
      if (ra[j] != rb[j]) return false;
    return true;
  };
  while (chosen.size() < k) {
    if (used.size() == data.rows) fail(Err::KTooLarge, "fewer distinct points than k");
    const std::size_t idx = rng.uniform_index(data.rows);
    if (used.count(idx)) continue;
    used.insert(idx);
    bool duplicate = false;
    for (std::size_t prev : chosen) {
      if (equals_row(prev, idx)) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    chosen.push_back(idx);
  }
  for (std::size_t c = 0; c < k; ++c) {
    const double* src = data.row(chosen[c]);
    std::copy(src, src + data.cols, centroids.row(c));
  }
  return centroids;
}

double max_displacement(const FeatureMatrix& a, const FeatureMatrix& b) {
  double worst = 0.0;
  for (std::size_t c = 0; c < a.rows; ++c) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) {
      const double diff = a.at(c, j) - b.at(c, j);
      d += diff * diff;
    }
    worst = std::max(worst, std::sqrt(d));
  }
  return worst;
}

}  // namespace

ClusteringRun kmeans_fit(const FeatureMatrix& data, std::size_t k, std::uint64_t seed,
                         int max_iter, double tol) {
  if (data.rows == 0) fail(Err::EmptyInput, "kmeans on empty data");
  if (k < 1 || k > data.rows) fail(Err::KTooLarge, "k out of range");
  if (max_iter < 1) fail(Err::InvalidArgument, "max_iter must be >= 1");

  Rng rng(seed);
  FeatureMatrix centroids = initial_centroids(data, k, rng);

  ClusteringRun run;
  run.seed = seed;
  std::vector<int> assignments;
  std::vector<double> sqdist;

  for (int iter = 0; iter < max_iter; ++iter) {
    kernels::assign_points(data, centroids, assignments, sqdist);

    double inertia = 0.0;
    for (double d : sqdist) inertia += d;
    run.inertia_trace.push_back(inertia);
    run.iterations = iter + 1;

    // Means per cluster; the sums run in sample order.
    FeatureMatrix next(k, data.cols);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < data.rows; ++i) {
      const std::size_t c = static_cast<std::size_t>(assignments[i]);
      ++counts[c];
      const double* src = data.row(i);
      double* dst = next.row(c);
      for (std::size_t j = 0; j < data.cols; ++j) dst[j] += src[j];
    }

    // Reseed any emptied cluster with the point farthest from its centroid.
    std::vector<bool> reseeded(data.rows, false);
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        for (std::size_t j = 0; j < data.cols; ++j) next.at(c, j) /= counts[c];
        continue;
      }
      std::size_t farthest = 0;
      double worst = -1.0;
      for (std::size_t i = 0; i < data.rows; ++i) {
        if (reseeded[i]) continue;
        if (sqdist[i] > worst) {
          worst = sqdist[i];
          farthest = i;
        }
      }
      reseeded[farthest] = true;
      const double* src = data.row(farthest);
      std::copy(src, src + data.cols, next.row(c));
    }

    const double moved = max_displacement(next, centroids);
    centroids = std::move(next);
    if (moved <= tol) {
      run.converged = true;
      break;
    }
  }

  // Final assignment against the settled centroids.
  kernels::assign_points(data, centroids, assignments, sqdist);
  double inertia = 0.0;
  for (double d : sqdist) inertia += d;

  run.model.k = k;
  run.model.centroids = std::move(centroids);
  run.model.inertia = inertia;
  run.assignments = std::move(assignments);
  run.inertia_trace.push_back(inertia);
  return run;
}

BestClustering kmeans_best_of(const FeatureMatrix& data, std::span<const ClassLabel> truth,
                              std::size_t k, int n_init, std::uint64_t base_seed) {
  if (k != 2) fail(Err::InvalidArgument, "cluster-to-class scoring needs k = 2");
  if (n_init < 1) fail(Err::InvalidArgument, "n_init must be >= 1");
  if (truth.size() != data.rows) fail(Err::LengthMismatch, "truth/data lengths differ");

  std::vector<ClusteringRun> runs(n_init);
  par::parallel_for(static_cast<std::size_t>(n_init), [&](std::size_t i) {
    runs[i] = kmeans_fit(data, k, base_seed + i);
  });

  BestClustering best;
  bool have_best = false;
  for (ClusteringRun& run : runs) {  // ascending seed; ties keep the earlier run
    ClusterAlignment alignment = align_clusters(run.assignments, truth, ClassLabel::Animal);
    const ScoreReport report = score(alignment.counts);
    if (!have_best || report.f1 > best.report.f1) {
      best.run = std::move(run);
      best.alignment = alignment;
      best.report = report;
      have_best = true;
    }
  }
  return best;
}

}  // namespace shapecat
