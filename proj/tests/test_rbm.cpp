#include <cmath>
#include <vector>

#include "doctest.h"
#include "shapecat/error.hpp"
#include "shapecat/rbm.hpp"
#include "shapecat/rbm_oracle.hpp"
#include "shapecat/rng.hpp"

using namespace shapecat;

namespace {

FeatureMatrix all_binary_vectors(std::size_t bits) {
  FeatureMatrix m(1u << bits, bits);
  for (std::size_t mask = 0; mask < m.rows; ++mask) {
    for (std::size_t i = 0; i < bits; ++i) m.at(mask, i) = (mask >> i) & 1 ? 1.0 : 0.0;
  }
  return m;
}

RbmModel random_model(std::size_t nv, std::size_t nh, Rng& rng, double scale) {
  RbmModel model = rbm_init(nv, nh, 1);
  for (double& w : model.weights) w = rng.normal(0.0, scale);
  for (double& b : model.visible_bias) b = rng.normal(0.0, scale);
  for (double& c : model.hidden_bias) c = rng.normal(0.0, scale);
  return model;
}

// Mean log-likelihood of binary rows, computed directly for FD checks.
double mean_log_likelihood(const RbmModel& model, const FeatureMatrix& data) {
  const double log_z = exact_log_partition(model);
  double total = 0.0;
  for (std::size_t s = 0; s < data.rows; ++s) {
    double term = 0.0;
    for (std::size_t i = 0; i < model.n_visible; ++i) {
      term += model.visible_bias[i] * data.at(s, i);
    }
    for (std::size_t j = 0; j < model.n_hidden; ++j) {
      double act = model.hidden_bias[j];
      for (std::size_t i = 0; i < model.n_visible; ++i) {
        act += data.at(s, i) * model.weights[i * model.n_hidden + j];
      }
      term += act > 0 ? act + std::log1p(std::exp(-act)) : std::log1p(std::exp(act));
    }
    total += term - log_z;
  }
  return total / static_cast<double>(data.rows);
}

}  // namespace

TEST_CASE("rbm_init: deterministic Gaussian weights, zero biases") {
  const RbmModel a = rbm_init(100, 64, 0);
  const RbmModel b = rbm_init(100, 64, 0);
  CHECK(a.weights == b.weights);

  for (double bias : a.visible_bias) CHECK(bias == 0.0);
  for (double bias : a.hidden_bias) CHECK(bias == 0.0);

  double mean = 0.0;
  for (double w : a.weights) mean += w;
  mean /= static_cast<double>(a.weights.size());
  double var = 0.0;
  for (double w : a.weights) var += (w - mean) * (w - mean);
  const double sample_std = std::sqrt(var / static_cast<double>(a.weights.size() - 1));
  CHECK(sample_std > 0.008);
  CHECK(sample_std < 0.012);

  CHECK_THROWS_WITH_AS(rbm_init(0, 3, 1), doctest::Contains("ZeroUnits"), Error);
}

TEST_CASE("conditional probabilities") {
  RbmModel zero = rbm_init(4, 3, 2);
  std::fill(zero.weights.begin(), zero.weights.end(), 0.0);

  const std::vector<double> v{0.2, 0.8, 0.5, 1.0};
  for (double p : hidden_probabilities(zero, v)) CHECK(p == 0.5);
  const std::vector<double> h{1.0, 0.0, 0.5};
  for (double q : visible_probabilities(zero, h)) CHECK(q == 0.5);

  RbmModel biased = zero;
  biased.hidden_bias[1] = 10.0;
  CHECK(hidden_probabilities(biased, v)[1] == doctest::Approx(0.9999546).epsilon(1e-6));
  biased.visible_bias[2] = -10.0;
  CHECK(visible_probabilities(biased, h)[2] == doctest::Approx(4.5398e-5).epsilon(1e-4));

  // 2 visible, 1 hidden, W = (1, -1): activations cancel on v = (1, 1)
  RbmModel tiny = rbm_init(2, 1, 3);
  tiny.weights = {1.0, -1.0};
  std::fill(tiny.visible_bias.begin(), tiny.visible_bias.end(), 0.0);
  std::fill(tiny.hidden_bias.begin(), tiny.hidden_bias.end(), 0.0);
  CHECK(hidden_probabilities(tiny, std::vector<double>{1.0, 1.0})[0] == 0.5);

  // symmetric square model: the two conditionals coincide
  RbmModel sym = rbm_init(2, 2, 4);
  sym.weights = {0.7, -0.3, -0.3, 1.1};  // symmetric 2x2
  sym.visible_bias = {0.25, -0.5};
  sym.hidden_bias = {0.25, -0.5};
  const std::vector<double> probe{0.9, 0.1};
  const std::vector<double> as_hidden = hidden_probabilities(sym, probe);
  const std::vector<double> as_visible = visible_probabilities(sym, probe);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(as_hidden[i] == doctest::Approx(as_visible[i]).epsilon(1e-15));
  }

  CHECK_THROWS_WITH_AS(hidden_probabilities(zero, h), doctest::Contains("DimensionMismatch"),
                       Error);
}

TEST_CASE("cd1 update: zero rate, saturation, magnitude bound") {
  Rng data_rng(5);
  FeatureMatrix batch(6, 5);
  for (double& v : batch.data) v = data_rng.uniform01();

  RbmModel model = rbm_init(5, 4, 6);
  const RbmModel before = model;
  Rng rng(7);
  cd1_batch_update(model, batch, 0.0, rng);
  CHECK(model.weights == before.weights);
  CHECK(model.visible_bias == before.visible_bias);
  CHECK(model.hidden_bias == before.hidden_bias);

  // saturated 2x2 model reconstructs (1, 0) exactly; the update stays tiny
  RbmModel sat = rbm_init(2, 2, 8);
  sat.visible_bias = {40.0, -40.0};
  FeatureMatrix fixed(1, 2);
  fixed.at(0, 0) = 1.0;
  fixed.at(0, 1) = 0.0;
  Rng rng2(9);
  cd1_batch_update(sat, fixed, 0.1, rng2);
  for (std::size_t k = 0; k < sat.weights.size(); ++k) {
    CHECK(std::abs(sat.weights[k] - rbm_init(2, 2, 8).weights[k]) < 1e-3);
  }

  // every weight step is bounded by the learning rate
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    RbmModel m = random_model(5, 4, data_rng, 0.8);
    const std::vector<double> w0 = m.weights;
    Rng r(trial);
    cd1_batch_update(m, batch, 0.1, r);
    for (std::size_t k = 0; k < m.weights.size(); ++k) {
      CHECK(std::abs(m.weights[k] - w0[k]) <= 0.1 + 1e-15);
    }
  }

  CHECK_THROWS_WITH_AS(cd1_batch_update(model, FeatureMatrix{}, 0.1, rng),
                       doctest::Contains("EmptyBatch"), Error);
}

TEST_CASE("rbm_train: reconstruction improves on a repeated vector") {
  Rng rng(123);
  std::vector<double> proto(20);
  for (double& v : proto) v = rng.uniform01();
  FeatureMatrix data(200, 20);
  for (std::size_t s = 0; s < data.rows; ++s) {
    std::copy(proto.begin(), proto.end(), data.row(s));
  }

  RbmHyper hyper;
  hyper.learning_rate = 0.1;
  hyper.batch_size = 50;
  hyper.epochs = 100;
  hyper.seed = 3;
  const auto [model, trace] = rbm_train(data, 10, hyper);
  REQUIRE(trace.per_epoch_reconstruction_error.size() == 100);
  CHECK(trace.per_epoch_reconstruction_error.back() <
        trace.per_epoch_reconstruction_error.front());
  for (double err : trace.per_epoch_reconstruction_error) CHECK(err >= 0.0);
}

TEST_CASE("rbm_train: zero epochs returns the initial model") {
  FeatureMatrix data(10, 6);
  RbmHyper hyper;
  hyper.epochs = 0;
  hyper.seed = 77;
  const auto [model, trace] = rbm_train(data, 4, hyper);
  CHECK(trace.per_epoch_reconstruction_error.empty());
  CHECK(model.weights == rbm_init(6, 4, 77).weights);
  for (double b : model.visible_bias) CHECK(b == 0.0);
}

TEST_CASE("rbm_train determinism") {
  Rng rng(31);
  FeatureMatrix data(60, 12);
  for (double& v : data.data) v = rng.uniform01();
  RbmHyper hyper;
  hyper.epochs = 15;
  hyper.batch_size = 16;
  hyper.seed = 5;

  const auto [m1, t1] = rbm_train(data, 7, hyper);
  const auto [m2, t2] = rbm_train(data, 7, hyper);
  CHECK(m1.weights == m2.weights);
  CHECK(m1.visible_bias == m2.visible_bias);
  CHECK(m1.hidden_bias == m2.hidden_bias);
  CHECK(t1.per_epoch_reconstruction_error == t2.per_epoch_reconstruction_error);
}

TEST_CASE("transform: zero model gives 0.5 everywhere, batch keeps order") {
  RbmModel zero = rbm_init(6, 9, 1);
  std::fill(zero.weights.begin(), zero.weights.end(), 0.0);
  const std::vector<double> v{1, 0, 1, 0, 1, 0};
  const std::vector<double> out = rbm_transform(zero, v);
  REQUIRE(out.size() == 9);
  for (double p : out) CHECK(p == 0.5);

  Rng rng(2);
  FeatureMatrix data(15, 6);
  for (double& x : data.data) x = rng.uniform01();
  const RbmModel model = rbm_init(6, 4, 12);
  const FeatureMatrix batch = rbm_transform_batch(model, data);
  REQUIRE(batch.rows == 15);
  REQUIRE(batch.cols == 4);
  for (std::size_t s = 0; s < data.rows; ++s) {
    const std::vector<double> single = rbm_transform(model, data.row_span(s));
    for (std::size_t j = 0; j < 4; ++j) CHECK(batch.at(s, j) == single[j]);
  }
}

TEST_CASE("exact oracle: uniform model on the full cube has zero gradient") {
  RbmModel zero = rbm_init(3, 2, 1);
  std::fill(zero.weights.begin(), zero.weights.end(), 0.0);
  const FeatureMatrix data = all_binary_vectors(3);
  const RbmGradient grad = exact_gradient(zero, data);
  for (double g : grad.weights) CHECK(g == doctest::Approx(0.0).epsilon(1e-12));
  for (double g : grad.visible_bias) CHECK(g == doctest::Approx(0.0).epsilon(1e-12));
  for (double g : grad.hidden_bias) CHECK(g == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("exact oracle: hand-checked visible bias gradient") {
  RbmModel zero = rbm_init(2, 1, 1);
  std::fill(zero.weights.begin(), zero.weights.end(), 0.0);
  FeatureMatrix data(1, 2);
  data.at(0, 0) = 1.0;
  data.at(0, 1) = 1.0;
  const RbmGradient grad = exact_gradient(zero, data);
  CHECK(grad.visible_bias[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(grad.visible_bias[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("exact oracle: log Z gradient matches finite differences") {
  Rng rng(404);
  RbmModel model = random_model(3, 2, rng, 1.0);
  const RbmGradient expect = exact_model_expectation(model);
  const double step = 1e-4;

  auto fd = [&](double* param) {
    const double saved = *param;
    *param = saved + step;
    const double up = exact_log_partition(model);
    *param = saved - step;
    const double down = exact_log_partition(model);
    *param = saved;
    return (up - down) / (2.0 * step);
  };

  for (std::size_t k = 0; k < model.weights.size(); ++k) {
    CHECK(fd(&model.weights[k]) == doctest::Approx(expect.weights[k]).epsilon(1e-6));
  }
  for (std::size_t i = 0; i < model.visible_bias.size(); ++i) {
    CHECK(fd(&model.visible_bias[i]) == doctest::Approx(expect.visible_bias[i]).epsilon(1e-6));
  }
  for (std::size_t j = 0; j < model.hidden_bias.size(); ++j) {
    CHECK(fd(&model.hidden_bias[j]) == doctest::Approx(expect.hidden_bias[j]).epsilon(1e-6));
  }

  CHECK_THROWS_WITH_AS(exact_log_partition(rbm_init(15, 15, 0)), doctest::Contains("TooLarge"),
                       Error);
}

TEST_CASE("exact oracle: data gradient matches finite differences") {
  Rng rng(808);
  RbmModel model = random_model(3, 2, rng, 0.7);
  FeatureMatrix data(4, 3);
  for (double& v : data.data) v = rng.bernoulli(0.5) ? 1.0 : 0.0;

  const RbmGradient grad = exact_gradient(model, data);
  const double step = 1e-4;
  auto fd = [&](double* param) {
    const double saved = *param;
    *param = saved + step;
    const double up = mean_log_likelihood(model, data);
    *param = saved - step;
    const double down = mean_log_likelihood(model, data);
    *param = saved;
    return (up - down) / (2.0 * step);
  };
  for (std::size_t k = 0; k < model.weights.size(); ++k) {
    CHECK(fd(&model.weights[k]) == doctest::Approx(grad.weights[k]).epsilon(1e-6));
  }
  for (std::size_t i = 0; i < model.visible_bias.size(); ++i) {
    CHECK(fd(&model.visible_bias[i]) == doctest::Approx(grad.visible_bias[i]).epsilon(1e-6));
  }
}

TEST_CASE("expected CD-1 update points along the exact gradient") {
  Rng rng(20240818);
  for (int setting = 0; setting < 20; ++setting) {
    const RbmModel model = random_model(4, 3, rng, 0.8);
    FeatureMatrix data(6, 4);
    for (double& v : data.data) v = rng.bernoulli(0.5) ? 1.0 : 0.0;

    const RbmGradient exact = exact_gradient(model, data);

    std::vector<double> mean_update(model.weights.size(), 0.0);
    Rng sampler(mix_seed(999, setting));
    const int draws = 10000;
    for (int it = 0; it < draws; ++it) {
      RbmModel work = model;
      cd1_batch_update(work, data, 1.0, sampler);
      for (std::size_t k = 0; k < mean_update.size(); ++k) {
        mean_update[k] += work.weights[k] - model.weights[k];
      }
    }
    for (double& u : mean_update) u /= draws;

    double dot = 0.0, nu = 0.0, ng = 0.0;
    for (std::size_t k = 0; k < mean_update.size(); ++k) {
      dot += mean_update[k] * exact.weights[k];
      nu += mean_update[k] * mean_update[k];
      ng += exact.weights[k] * exact.weights[k];
    }
    const double cosine = dot / (std::sqrt(nu) * std::sqrt(ng) + 1e-300);
    CHECK(cosine > 0.5);
  }
}

TEST_CASE("rbm JSON round-trips bit-exactly") {
  Rng rng(55);
  RbmModel model = random_model(5, 3, rng, 1.5);
  model.hyper = {0.1, 50, 100, 42};
  const RbmModel back = rbm_from_json(rbm_to_json(model));
  CHECK(back.n_visible == model.n_visible);
  CHECK(back.n_hidden == model.n_hidden);
  CHECK(back.weights == model.weights);
  CHECK(back.visible_bias == model.visible_bias);
  CHECK(back.hidden_bias == model.hidden_bias);
  CHECK(back.hyper.learning_rate == model.hyper.learning_rate);
  CHECK(back.hyper.seed == model.hyper.seed);
}
