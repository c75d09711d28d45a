#include "shapecat/rbm_oracle.hpp"

#include <cmath>
#include <vector>

#include "shapecat/error.hpp"

namespace shapecat {
namespace {

void check_size(const RbmModel& model) {
  if (model.n_visible + model.n_hidden > 20)
    fail(Err::TooLarge, "exact enumeration capped at 20 total units");
}

long double softplus(long double x) {
  // log(1 + e^x), stable on both tails.
  if (x > 0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

long double sigmoid_l(long double x) { return 1.0L / (1.0L + std::exp(-x)); }

// Unnormalized log-weight of a visible state with hidden units summed out:
// b.v + sum_j softplus(c_j + v.W_j).
long double visible_log_term(const RbmModel& model, const std::vector<long double>& acts,
                             long double bias_dot) {
  long double term = bias_dot;
  for (std::size_t j = 0; j < model.n_hidden; ++j) term += softplus(acts[j]);
  return term;
}

// Hidden pre-activations for one visible state.
void hidden_acts(const RbmModel& model, unsigned long mask, std::vector<long double>& acts) {
  for (std::size_t j = 0; j < model.n_hidden; ++j) acts[j] = model.hidden_bias[j];
  for (std::size_t i = 0; i < model.n_visible; ++i) {
    if (!(mask & (1ul << i))) continue;
    for (std::size_t j = 0; j < model.n_hidden; ++j) {
      acts[j] += model.weights[i * model.n_hidden + j];
    }
  }
}

long double visible_bias_dot(const RbmModel& model, unsigned long mask) {
  long double dot = 0.0L;
  for (std::size_t i = 0; i < model.n_visible; ++i) {
    if (mask & (1ul << i)) dot += model.visible_bias[i];
  }
  return dot;
}

}  // namespace

double exact_log_partition(const RbmModel& model) {
  check_size(model);
  const unsigned long states = 1ul << model.n_visible;
  std::vector<long double> acts(model.n_hidden);

  long double max_term = -1e300L;
  std::vector<long double> terms(states);
  for (unsigned long mask = 0; mask < states; ++mask) {
    hidden_acts(model, mask, acts);
    terms[mask] = visible_log_term(model, acts, visible_bias_dot(model, mask));
    if (terms[mask] > max_term) max_term = terms[mask];
  }
  long double sum = 0.0L;
  for (long double t : terms) sum += std::exp(t - max_term);
  return static_cast<double>(max_term + std::log(sum));
}

RbmGradient exact_model_expectation(const RbmModel& model) {
  check_size(model);
  const unsigned long states = 1ul << model.n_visible;
  const long double log_z = exact_log_partition(model);
  std::vector<long double> acts(model.n_hidden);

  std::vector<long double> w(model.n_visible * model.n_hidden, 0.0L);
  std::vector<long double> vb(model.n_visible, 0.0L);
  std::vector<long double> hb(model.n_hidden, 0.0L);

  for (unsigned long mask = 0; mask < states; ++mask) {
    hidden_acts(model, mask, acts);
    const long double log_term =
        visible_log_term(model, acts, visible_bias_dot(model, mask));
    const long double p = std::exp(log_term - log_z);
    for (std::size_t j = 0; j < model.n_hidden; ++j) {
      hb[j] += p * sigmoid_l(acts[j]);
    }
    for (std::size_t i = 0; i < model.n_visible; ++i) {
      if (!(mask & (1ul << i))) continue;
      vb[i] += p;
      for (std::size_t j = 0; j < model.n_hidden; ++j) {
        w[i * model.n_hidden + j] += p * sigmoid_l(acts[j]);
      }
    }
  }

  RbmGradient grad;
  grad.weights.assign(w.begin(), w.end());
  grad.visible_bias.assign(vb.begin(), vb.end());
  grad.hidden_bias.assign(hb.begin(), hb.end());
  return grad;
}

RbmGradient exact_gradient(const RbmModel& model, const FeatureMatrix& data) {
  check_size(model);
  if (data.rows == 0) fail(Err::EmptyInput, "no data rows");
  if (data.cols != model.n_visible) fail(Err::DimensionMismatch, "visible dimension");

  std::vector<long double> acts(model.n_hidden);
  std::vector<long double> w(model.n_visible * model.n_hidden, 0.0L);
  std::vector<long double> vb(model.n_visible, 0.0L);
  std::vector<long double> hb(model.n_hidden, 0.0L);

  for (std::size_t s = 0; s < data.rows; ++s) {
    const double* v = data.row(s);
    for (std::size_t j = 0; j < model.n_hidden; ++j) acts[j] = model.hidden_bias[j];
    for (std::size_t i = 0; i < model.n_visible; ++i) {
      if (v[i] == 0.0) continue;
      for (std::size_t j = 0; j < model.n_hidden; ++j) {
        acts[j] += v[i] * model.weights[i * model.n_hidden + j];
      }
    }
    for (std::size_t j = 0; j < model.n_hidden; ++j) {
      const long double h = sigmoid_l(acts[j]);
      hb[j] += h;
      for (std::size_t i = 0; i < model.n_visible; ++i) {
        w[i * model.n_hidden + j] += v[i] * h;
      }
    }
    for (std::size_t i = 0; i < model.n_visible; ++i) vb[i] += v[i];
  }

  const long double inv_n = 1.0L / static_cast<long double>(data.rows);
  const RbmGradient model_term = exact_model_expectation(model);

  RbmGradient grad;
  grad.weights.resize(w.size());
  grad.visible_bias.resize(vb.size());
  grad.hidden_bias.resize(hb.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    grad.weights[k] = static_cast<double>(w[k] * inv_n) - model_term.weights[k];
  for (std::size_t i = 0; i < vb.size(); ++i)
    grad.visible_bias[i] = static_cast<double>(vb[i] * inv_n) - model_term.visible_bias[i];
  for (std::size_t j = 0; j < hb.size(); ++j)
    grad.hidden_bias[j] = static_cast<double>(hb[j] * inv_n) - model_term.hidden_bias[j];
  return grad;
}

}  // namespace shapecat
