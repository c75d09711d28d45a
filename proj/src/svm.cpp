#include "shapecat/svm.hpp"

#include <algorithm>
#include <cmath>

#include "shapecat/error.hpp"
#include "shapecat/parallel.hpp"
#include "shapecat/rng.hpp"
#include "shapecat/util.hpp"

#include "json.hpp"

namespace shapecat {

SvmModel svm_train(const FeatureMatrix& x, std::span<const int> y, double c, int epochs,
                   std::uint64_t seed) {
  if (x.rows == 0) fail(Err::EmptyInput, "empty training set");
  if (y.size() != x.rows) fail(Err::DimensionMismatch, "label count != sample count");
  if (c <= 0.0) fail(Err::InvalidArgument, "c must be positive");
  if (epochs < 0) fail(Err::InvalidArgument, "epochs must be >= 0");

  bool has_pos = false, has_neg = false;
  for (int label : y) {
    if (label == 1) has_pos = true;
    else if (label == -1) has_neg = true;
    else fail(Err::InvalidArgument, "labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) fail(Err::SingleClass, "training needs both classes");

  const std::size_t n = x.rows;
  const double lambda = 1.0 / (c * static_cast<double>(n));

  SvmModel model;
  model.weights.assign(x.cols, 0.0);
  model.bias = 0.0;
  model.hyper = {c, epochs, seed};

  Rng rng(seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  long long t = 0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t pick = 0; pick < n; ++pick) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const std::size_t i = order[pick];
      const double* xi = x.row(i);
      const double yi = static_cast<double>(y[i]);

      double margin = model.bias;
      for (std::size_t j = 0; j < x.cols; ++j) margin += model.weights[j] * xi[j];
      margin *= yi;

      const double shrink = 1.0 - eta * lambda;  // = 1 - 1/t
      if (margin < 1.0) {
        for (std::size_t j = 0; j < x.cols; ++j) {
          model.weights[j] = shrink * model.weights[j] + eta * yi * xi[j];
        }
        model.bias += eta * yi;
      } else {
        for (std::size_t j = 0; j < x.cols; ++j) model.weights[j] *= shrink;
      }
    }
  }
  return model;
}

double svm_decision(const SvmModel& model, std::span<const double> x) {
  if (x.size() != model.weights.size()) fail(Err::DimensionMismatch, "feature dimension");
  double value = model.bias;
  for (std::size_t j = 0; j < x.size(); ++j) value += model.weights[j] * x[j];
  return value;
}

int svm_predict(const SvmModel& model, std::span<const double> x) {
  return svm_decision(model, x) >= 0.0 ? 1 : -1;
}

double hinge_objective(const SvmModel& model, const FeatureMatrix& x, std::span<const int> y,
                       double c) {
  const double lambda = 1.0 / (c * static_cast<double>(x.rows));
  double norm_sq = 0.0;
  for (double w : model.weights) norm_sq += w * w;
  double loss = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double margin = static_cast<double>(y[i]) * svm_decision(model, x.row_span(i));
    loss += std::max(0.0, 1.0 - margin);
  }
  return 0.5 * lambda * norm_sq + loss / static_cast<double>(x.rows);
}

Split split_train_test(std::size_t n, const SplitSpec& spec) {
  if (n < 2) fail(Err::TooFewSamples, "need at least 2 samples to split");
  if (spec.train_fraction <= 0.0 || spec.train_fraction >= 1.0)
    fail(Err::InvalidArgument, "train_fraction must lie in (0, 1)");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(spec.seed);
  rng.shuffle(order);

  std::size_t train_size =
      static_cast<std::size_t>(std::ceil(spec.train_fraction * static_cast<double>(n)));
  train_size = std::clamp<std::size_t>(train_size, 1, n - 1);

  Split split;
  split.train.assign(order.begin(), order.begin() + train_size);
  split.test.assign(order.begin() + train_size, order.end());
  return split;
}

namespace {

FeatureMatrix take_rows(const FeatureMatrix& x, std::span<const std::size_t> rows) {
  FeatureMatrix out(rows.size(), x.cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double* src = x.row(rows[i]);
    std::copy(src, src + x.cols, out.row(i));
  }
  return out;
}

}  // namespace

RepeatedEvalReport repeated_eval(const FeatureMatrix& x, std::span<const ClassLabel> labels,
                                 ClassLabel positive, int n_runs, std::uint64_t base_seed,
                                 double c, int epochs, const SplitTransform& transform) {
  if (labels.size() != x.rows) fail(Err::LengthMismatch, "labels/data lengths differ");
  if (n_runs < 1) fail(Err::InvalidArgument, "n_runs must be >= 1");

  std::vector<int> y(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == positive ? 1 : -1;

  RepeatedEvalReport report;
  report.per_run_accuracy.assign(n_runs, 0.0);

  par::parallel_for(static_cast<std::size_t>(n_runs), [&](std::size_t r) {
    const std::uint64_t run_seed = base_seed + r;
    const Split split = split_train_test(x.rows, {0.6, run_seed});

    FeatureMatrix train_x = take_rows(x, split.train);
    FeatureMatrix test_x = take_rows(x, split.test);
    if (transform) {
      auto mapped = transform(static_cast<int>(r), train_x, test_x);
      train_x = std::move(mapped.first);
      test_x = std::move(mapped.second);
    }

    std::vector<int> train_y(split.train.size());
    for (std::size_t i = 0; i < split.train.size(); ++i) train_y[i] = y[split.train[i]];

    const SvmModel model = svm_train(train_x, train_y, c, epochs, run_seed);

    std::size_t hits = 0;
    for (std::size_t i = 0; i < split.test.size(); ++i) {
      const int predicted = svm_predict(model, test_x.row_span(i));
      if (predicted == y[split.test[i]]) ++hits;
    }
    report.per_run_accuracy[r] =
        100.0 * static_cast<double>(hits) / static_cast<double>(split.test.size());
  });

  report.mean = mean_of(report.per_run_accuracy);
  report.stddev = population_stddev(report.per_run_accuracy);
  return report;
}

std::string svm_to_json(const SvmModel& model) {
  std::string out = "{\n  \"dimension\": " + std::to_string(model.weights.size()) +
                    ",\n  \"weights\": [";
  for (std::size_t j = 0; j < model.weights.size(); ++j) {
    if (j) out += ", ";
    out += fmt_sig(model.weights[j], 17);
  }
  out += "],\n  \"bias\": " + fmt_sig(model.bias, 17);
  out += ",\n  \"c\": " + fmt_sig(model.hyper.c, 17);
  out += ",\n  \"epochs\": " + std::to_string(model.hyper.epochs);
  out += ",\n  \"seed\": " + std::to_string(model.hyper.seed);
  out += "\n}\n";
  return out;
}

SvmModel svm_from_json(const std::string& text) {
  const nlohmann::json parsed = nlohmann::json::parse(text);
  SvmModel model;
  model.weights = parsed.at("weights").get<std::vector<double>>();
  if (parsed.at("dimension").get<std::size_t>() != model.weights.size())
    fail(Err::DimensionMismatch, "dimension field disagrees with weights length");
  model.bias = parsed.at("bias").get<double>();
  model.hyper.c = parsed.at("c").get<double>();
  model.hyper.epochs = parsed.at("epochs").get<int>();
  model.hyper.seed = parsed.at("seed").get<std::uint64_t>();
  return model;
}

}  // namespace shapecat
