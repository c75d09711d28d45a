#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "shapecat/matrix.hpp"
#include "shapecat/taxonomy.hpp"

namespace shapecat {

struct SvmHyper {
  double c = 1.0;
  int epochs = 200;
  std::uint64_t seed = 0;
};

struct SvmModel {
  std::vector<double> weights;
  double bias = 0.0;
  SvmHyper hyper;
};

// Primal stochastic subgradient descent on the L2-regularized hinge loss
//   (lambda/2)||w||^2 + (1/N) sum max(0, 1 - y_i (w.x_i + b))
// with lambda = 1/(c*N) and step 1/(lambda*t). One sample per step, visited
// in seeded shuffled order each epoch. Deterministic for fixed inputs.
SvmModel svm_train(const FeatureMatrix& x, std::span<const int> y, double c, int epochs,
                   std::uint64_t seed);

double svm_decision(const SvmModel& model, std::span<const double> x);
int svm_predict(const SvmModel& model, std::span<const double> x);  // sign; 0 -> +1

// Training-set value of the regularized hinge objective.
double hinge_objective(const SvmModel& model, const FeatureMatrix& x, std::span<const int> y,
                       double c);

struct SplitSpec {
  double train_fraction = 0.6;
  std::uint64_t seed = 0;
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Seeded uniform shuffle; the first ceil(fraction*N) indices train, the rest
// test. Both sides stay non-empty (N >= 2 required).
Split split_train_test(std::size_t n, const SplitSpec& spec);

struct RepeatedEvalReport {
  std::vector<double> per_run_accuracy;  // percent, ordered by run index
  double mean = 0.0;
  double stddev = 0.0;  // population
};

// Optional per-run feature mapping: receives the run index and the row
// indices of the two sides, returns replacement train/test matrices. Used to
// interpose learned-feature transforms between splitting and training.
using SplitTransform = std::function<std::pair<FeatureMatrix, FeatureMatrix>(
    int run, const FeatureMatrix& train_x, const FeatureMatrix& test_x)>;

// Runs split(seed = base_seed + r) / train / test-accuracy for each r and
// reports per-run accuracies with mean and population standard deviation.
RepeatedEvalReport repeated_eval(const FeatureMatrix& x, std::span<const ClassLabel> labels,
                                 ClassLabel positive, int n_runs, std::uint64_t base_seed,
                                 double c, int epochs,
                                 const SplitTransform& transform = nullptr);

// JSON round-trip with 17-significant-digit numbers.
std::string svm_to_json(const SvmModel& model);
SvmModel svm_from_json(const std::string& text);

}  // namespace shapecat
