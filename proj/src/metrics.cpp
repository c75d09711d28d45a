#include "shapecat/metrics.hpp"

#include <vector>

#include "shapecat/error.hpp"

namespace shapecat {

ConfusionCounts confusion(std::span<const ClassLabel> predicted,
                          std::span<const ClassLabel> truth, ClassLabel positive) {
  if (predicted.size() != truth.size())
    fail(Err::LengthMismatch, "prediction/truth lengths differ");
  if (predicted.empty()) fail(Err::EmptyInput, "nothing to score");

  ConfusionCounts counts;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool pred_pos = predicted[i] == positive;
    const bool true_pos = truth[i] == positive;
    if (pred_pos && true_pos) ++counts.tp;
    else if (pred_pos && !true_pos) ++counts.fp;
    else if (!pred_pos && true_pos) ++counts.fn;
    else ++counts.tn;
  }
  return counts;
}

ScoreReport score(const ConfusionCounts& counts) {
  if (counts.total() <= 0) fail(Err::EmptyCounts, "confusion counts are empty");

  ScoreReport report;
  const double tp = static_cast<double>(counts.tp);
  if (counts.tp + counts.fp > 0) report.precision = 100.0 * tp / (counts.tp + counts.fp);
  if (counts.tp + counts.fn > 0) report.recall = 100.0 * tp / (counts.tp + counts.fn);
  if (report.precision + report.recall > 0.0) {
    report.f1 = 2.0 * report.precision * report.recall / (report.precision + report.recall);
  }
  report.accuracy = 100.0 * (counts.tp + counts.tn) / static_cast<double>(counts.total());
  return report;
}

ClusterAlignment align_clusters(std::span<const int> assignments,
                                std::span<const ClassLabel> truth, ClassLabel positive) {
  if (assignments.size() != truth.size())
    fail(Err::LengthMismatch, "assignment/truth lengths differ");
  if (assignments.empty()) fail(Err::EmptyInput, "nothing to align");
  for (int id : assignments) {
    if (id != 0 && id != 1) fail(Err::InvalidArgument, "cluster ids must be 0 or 1");
  }

  const ClassLabel negative =
      positive == ClassLabel::Animal ? ClassLabel::Plant : ClassLabel::Animal;

  ClusterAlignment best;
  ScoreReport best_report;
  bool have_best = false;
  for (int flip = 0; flip < 2; ++flip) {
    ClusterAlignment candidate;
    candidate.mapping = flip == 0 ? std::array{positive, negative}
                                  : std::array{negative, positive};
    std::vector<ClassLabel> predicted(assignments.size());
    for (std::size_t i = 0; i < assignments.size(); ++i) {
      predicted[i] = candidate.mapping[static_cast<std::size_t>(assignments[i])];
    }
    candidate.counts = confusion(predicted, truth, positive);
    const ScoreReport report = score(candidate.counts);
    const bool better =
        !have_best || report.f1 > best_report.f1 ||
        (report.f1 == best_report.f1 && report.accuracy > best_report.accuracy);
    // Remaining tie keeps flip == 0, the cluster-0-to-positive mapping.
    if (better) {
      best = candidate;
      best_report = report;
      have_best = true;
    }
  }
  return best;
}

}  // namespace shapecat
