#pragma once

#include <array>
#include <span>

#include "shapecat/taxonomy.hpp"

namespace shapecat {

struct ConfusionCounts {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  long long tn = 0;

  long long total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionCounts&) const = default;
};

// All four measures in percent. Zero-denominator precision/recall and the
// f1 of a (0, 0) pair are defined as 0 so degenerate predictors stay scoreable.
struct ScoreReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
};

ConfusionCounts confusion(std::span<const ClassLabel> predicted,
                          std::span<const ClassLabel> truth, ClassLabel positive);

ScoreReport score(const ConfusionCounts& counts);

struct ClusterAlignment {
  std::array<ClassLabel, 2> mapping{};  // mapping[cluster_id] = class
  ConfusionCounts counts;
};

// Tries both bijective cluster-to-class mappings and keeps the one with the
// higher f1 (ties: higher accuracy, then cluster 0 -> positive).
ClusterAlignment align_clusters(std::span<const int> assignments,
                                std::span<const ClassLabel> truth, ClassLabel positive);

}  // namespace shapecat
