#include "shapecat/rbm.hpp"

#include <algorithm>
#include <cmath>

#include "shapecat/error.hpp"
#include "shapecat/kernels.hpp"
#include "shapecat/util.hpp"

#include "json.hpp"

namespace shapecat {

RbmModel rbm_init(std::size_t n_visible, std::size_t n_hidden, std::uint64_t seed) {
  if (n_visible == 0 || n_hidden == 0) fail(Err::ZeroUnits, "layer sizes must be >= 1");
  RbmModel model;
  model.n_visible = n_visible;
  model.n_hidden = n_hidden;
  model.weights.resize(n_visible * n_hidden);
  model.visible_bias.assign(n_visible, 0.0);
  model.hidden_bias.assign(n_hidden, 0.0);
  model.hyper.seed = seed;
  Rng rng(seed);
  for (double& w : model.weights) w = rng.normal(0.0, 0.01);
  return model;
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

FeatureMatrix single_row(std::span<const double> v) {
  FeatureMatrix m(1, v.size());
  std::copy(v.begin(), v.end(), m.row(0));
  return m;
}

}  // namespace

std::vector<double> hidden_probabilities(const RbmModel& model, std::span<const double> v) {
  if (v.size() != model.n_visible) fail(Err::DimensionMismatch, "visible dimension");
  std::vector<double> p(model.n_hidden);
  for (std::size_t j = 0; j < model.n_hidden; ++j) {
    double act = model.hidden_bias[j];
    for (std::size_t i = 0; i < model.n_visible; ++i) {
      act += v[i] * model.weights[i * model.n_hidden + j];
    }
    p[j] = sigmoid(act);
  }
  return p;
}

std::vector<double> visible_probabilities(const RbmModel& model, std::span<const double> h) {
  if (h.size() != model.n_hidden) fail(Err::DimensionMismatch, "hidden dimension");
  std::vector<double> q(model.n_visible);
  for (std::size_t i = 0; i < model.n_visible; ++i) {
    double act = model.visible_bias[i];
    for (std::size_t j = 0; j < model.n_hidden; ++j) {
      act += h[j] * model.weights[i * model.n_hidden + j];
    }
    q[i] = sigmoid(act);
  }
  return q;
}

void cd1_batch_update(RbmModel& model, const FeatureMatrix& batch, double learning_rate,
                      Rng& rng, double* recon_error_sum) {
  if (batch.rows == 0) fail(Err::EmptyBatch, "CD-1 on an empty batch");
  if (batch.cols != model.n_visible) fail(Err::DimensionMismatch, "visible dimension");

  const std::size_t bs = batch.rows;
  const std::size_t nv = model.n_visible;
  const std::size_t nh = model.n_hidden;

  // Positive phase.
  FeatureMatrix hidden_pos(bs, nh);
  kernels::affine_sigmoid_batch(batch, model.weights, model.hidden_bias, false, hidden_pos);

  // Hidden samples draw from the generator in fixed row-major order, so the
  // stream is independent of how later stages are parallelized.
  FeatureMatrix hidden_sample(bs, nh);
  for (std::size_t s = 0; s < bs; ++s) {
    for (std::size_t j = 0; j < nh; ++j) {
      hidden_sample.at(s, j) = rng.uniform01() < hidden_pos.at(s, j) ? 1.0 : 0.0;
    }
  }

  // Negative phase: probability reconstruction, then its hidden conditional.
  FeatureMatrix visible_neg(bs, nv);
  kernels::affine_sigmoid_batch(hidden_sample, model.weights, model.visible_bias, true,
                                visible_neg);
  FeatureMatrix hidden_neg(bs, nh);
  kernels::affine_sigmoid_batch(visible_neg, model.weights, model.hidden_bias, false,
                                hidden_neg);

  if (recon_error_sum) {
    double err = 0.0;
    for (std::size_t s = 0; s < bs; ++s) {
      const double* v = batch.row(s);
      const double* r = visible_neg.row(s);
      double row_err = 0.0;
      for (std::size_t i = 0; i < nv; ++i) {
        const double diff = v[i] - r[i];
        row_err += diff * diff;
      }
      err += row_err / static_cast<double>(nv);
    }
    *recon_error_sum += err;
  }

  const double coeff = learning_rate / static_cast<double>(bs);
  kernels::accumulate_outer(batch, hidden_pos, coeff, model.weights);
  kernels::accumulate_outer(visible_neg, hidden_neg, -coeff, model.weights);

  for (std::size_t i = 0; i < nv; ++i) {
    double delta = 0.0;
    for (std::size_t s = 0; s < bs; ++s) delta += batch.at(s, i) - visible_neg.at(s, i);
    model.visible_bias[i] += coeff * delta;
  }
  for (std::size_t j = 0; j < nh; ++j) {
    double delta = 0.0;
    for (std::size_t s = 0; s < bs; ++s) delta += hidden_pos.at(s, j) - hidden_neg.at(s, j);
    model.hidden_bias[j] += coeff * delta;
  }
}

std::pair<RbmModel, TrainTrace> rbm_train(const FeatureMatrix& data, std::size_t n_hidden,
                                          const RbmHyper& hyper) {
  if (data.rows == 0) fail(Err::EmptyInput, "empty training data");
  if (hyper.batch_size < 1) fail(Err::InvalidArgument, "batch_size must be >= 1");
  if (hyper.epochs < 0) fail(Err::InvalidArgument, "epochs must be >= 0");
  for (double v : data.data) {
    if (v < 0.0 || v > 1.0) fail(Err::OutOfRange, "visible values must lie in [0, 1]");
  }

  RbmModel model = rbm_init(data.cols, n_hidden, hyper.seed);
  model.hyper = hyper;
  TrainTrace trace;

  Rng rng(mix_seed(hyper.seed, 0x7261696e));  // training stream, separate from init
  std::vector<std::size_t> order(data.rows);
  for (std::size_t i = 0; i < data.rows; ++i) order[i] = i;

  const std::size_t bs = static_cast<std::size_t>(hyper.batch_size);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_error = 0.0;
    for (std::size_t start = 0; start < data.rows; start += bs) {
      const std::size_t count = std::min(bs, data.rows - start);
      FeatureMatrix batch(count, data.cols);
      for (std::size_t s = 0; s < count; ++s) {
        const double* src = data.row(order[start + s]);
        std::copy(src, src + data.cols, batch.row(s));
      }
      cd1_batch_update(model, batch, hyper.learning_rate, rng, &epoch_error);
    }
    trace.per_epoch_reconstruction_error.push_back(epoch_error /
                                                   static_cast<double>(data.rows));
  }
  return {std::move(model), std::move(trace)};
}

std::vector<double> rbm_transform(const RbmModel& model, std::span<const double> v) {
  FeatureMatrix out(1, model.n_hidden);
  kernels::affine_sigmoid_batch(single_row(v), model.weights, model.hidden_bias, false, out);
  return {out.row(0), out.row(0) + model.n_hidden};
}

FeatureMatrix rbm_transform_batch(const RbmModel& model, const FeatureMatrix& v) {
  FeatureMatrix out(v.rows, model.n_hidden);
  kernels::affine_sigmoid_batch(v, model.weights, model.hidden_bias, false, out);
  return out;
}

namespace {

std::string doubles_to_json(std::span<const double> values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt_sig(values[i], 17);
  }
  out += "]";
  return out;
}

}  // namespace

std::string rbm_to_json(const RbmModel& model) {
  std::string out = "{\n  \"n_visible\": " + std::to_string(model.n_visible);
  out += ",\n  \"n_hidden\": " + std::to_string(model.n_hidden);
  out += ",\n  \"weights\": " + doubles_to_json(model.weights);
  out += ",\n  \"visible_bias\": " + doubles_to_json(model.visible_bias);
  out += ",\n  \"hidden_bias\": " + doubles_to_json(model.hidden_bias);
  out += ",\n  \"hyper\": {\"learning_rate\": " + fmt_sig(model.hyper.learning_rate, 17);
  out += ", \"batch_size\": " + std::to_string(model.hyper.batch_size);
  out += ", \"epochs\": " + std::to_string(model.hyper.epochs);
  out += ", \"seed\": " + std::to_string(model.hyper.seed);
  out += "}\n}\n";
  return out;
}

RbmModel rbm_from_json(const std::string& text) {
  const nlohmann::json parsed = nlohmann::json::parse(text);
  RbmModel model;
  model.n_visible = parsed.at("n_visible").get<std::size_t>();
  model.n_hidden = parsed.at("n_hidden").get<std::size_t>();
  model.weights = parsed.at("weights").get<std::vector<double>>();
  model.visible_bias = parsed.at("visible_bias").get<std::vector<double>>();
  model.hidden_bias = parsed.at("hidden_bias").get<std::vector<double>>();
  if (model.weights.size() != model.n_visible * model.n_hidden ||
      model.visible_bias.size() != model.n_visible ||
      model.hidden_bias.size() != model.n_hidden) {
    fail(Err::DimensionMismatch, "model arrays disagree with layer sizes");
  }
  const auto& hyper = parsed.at("hyper");
  model.hyper.learning_rate = hyper.at("learning_rate").get<double>();
  model.hyper.batch_size = hyper.at("batch_size").get<int>();
  model.hyper.epochs = hyper.at("epochs").get<int>();
  model.hyper.seed = hyper.at("seed").get<std::uint64_t>();
  return model;
}

}  // namespace shapecat
