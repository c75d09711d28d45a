#pragma once

#include <span>
#include <vector>

#include "shapecat/matrix.hpp"
#include "shapecat/rbm.hpp"

namespace shapecat {

// Exact quantities for tiny models (n_visible + n_hidden <= 20), computed by
// enumerating all visible states at extended precision. Independent of the
// contrastive-divergence code path; exists to validate it.

struct RbmGradient {
  std::vector<double> weights;       // n_visible * n_hidden
  std::vector<double> visible_bias;  // n_visible
  std::vector<double> hidden_bias;   // n_hidden
};

double exact_log_partition(const RbmModel& model);

// Gradient of log Z: model expectations of v_i h_j, v_i, h_j.
RbmGradient exact_model_expectation(const RbmModel& model);

// Exact gradient of the mean log-likelihood of `data` (binary visible rows):
// data expectations minus model expectations.
RbmGradient exact_gradient(const RbmModel& model, const FeatureMatrix& data);

}  // namespace shapecat
