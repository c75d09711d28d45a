#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shapecat/matrix.hpp"
#include "shapecat/rng.hpp"

namespace shapecat {

struct RbmHyper {
  double learning_rate = 0.1;
  int batch_size = 50;
  int epochs = 100;
  std::uint64_t seed = 0;
};

// Two-layer energy model: visible x hidden weight matrix (row-major by
// visible index) plus one bias per unit.
struct RbmModel {
  std::size_t n_visible = 0;
  std::size_t n_hidden = 0;
  std::vector<double> weights;       // n_visible * n_hidden
  std::vector<double> visible_bias;  // n_visible
  std::vector<double> hidden_bias;   // n_hidden
  RbmHyper hyper;
};

// Weights ~ Gaussian(0, 0.01^2) from the seed, biases zero.
RbmModel rbm_init(std::size_t n_visible, std::size_t n_hidden, std::uint64_t seed);

// p(h_j = 1 | v) and p(v_i = 1 | h).
std::vector<double> hidden_probabilities(const RbmModel& model, std::span<const double> v);
std::vector<double> visible_probabilities(const RbmModel& model, std::span<const double> h);

// One CD-1 step, averaged over the batch: positive statistics from the data,
// one sampled hidden state, then a probability (not sampled) reconstruction.
// When recon_error_sum is given, accumulates sum ||v - v_recon||^2 / n_visible
// over the batch rows. In-place model update.
void cd1_batch_update(RbmModel& model, const FeatureMatrix& batch, double learning_rate,
                      Rng& rng, double* recon_error_sum = nullptr);

struct TrainTrace {
  std::vector<double> per_epoch_reconstruction_error;  // mean squared, per epoch
};

// Seeded shuffle each epoch, batches of <= hyper.batch_size applied in order.
std::pair<RbmModel, TrainTrace> rbm_train(const FeatureMatrix& data, std::size_t n_hidden,
                                          const RbmHyper& hyper);

// Deterministic hidden probabilities as learned features (no sampling).
std::vector<double> rbm_transform(const RbmModel& model, std::span<const double> v);
FeatureMatrix rbm_transform_batch(const RbmModel& model, const FeatureMatrix& v);

// JSON round-trip with 17-significant-digit numbers.
std::string rbm_to_json(const RbmModel& model);
RbmModel rbm_from_json(const std::string& text);

}  // namespace shapecat
