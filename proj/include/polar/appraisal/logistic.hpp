#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polar/appraisal/features.hpp"
#include "polar/appraisal/loss.hpp"
#include "polar/core/random.hpp"
#include "polar/score/predictions.hpp"

namespace polar::appraisal {

// Stand-in for the reference library defaults: L2 penalty equivalent to C = 1,
// deterministic full-batch gradient descent.
struct LRConfig {
  std::uint64_t seed = rng::kDefaultSeed;
  double l2 = 1.0;
  int max_epochs = 100;
  // Initial step; 0 selects 1/L from a bound on the loss curvature.
  double step = 0.0;
  // Stop once every gradient component is below this in magnitude.
  double tolerance = 1e-6;

  friend bool operator==(const LRConfig&, const LRConfig&) = default;
};

// One independent binary classifier per schema label (one-vs-rest).
struct LRModel {
  Subtask subtask = Subtask::S1;
  std::size_t dimension = 0;
  std::vector<std::vector<double>> weights;  // labels x dimension
  std::vector<double> bias;
  // Labels whose training data held a single class; they predict the
  // observed prevalence.
  std::vector<bool> skipped;
  LRConfig config;
  std::vector<std::vector<double>> loss_history;  // per label, loss after each epoch

  friend bool operator==(const LRModel&, const LRModel&) = default;
};

namespace detail {

// Mean log-loss plus (l2 / 2n) * ||w||^2; the bias is not penalised.
inline double objective(std::span<const FeatureVector> x, std::span<const int> y,
                        const std::vector<double>& w, double b, double l2) {
  const auto n = static_cast<double>(x.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = std::inner_product(w.begin(), w.end(), x[i].values.begin(), b);
    loss += bce_with_logit(z, y[i] != 0);
  }
  double norm2 = 0.0;
  for (double wi : w) norm2 += wi * wi;
  return loss / n + 0.5 * l2 * norm2 / n;
}

inline void gradient(std::span<const FeatureVector> x, std::span<const int> y,
                     const std::vector<double>& w, double b, double l2, std::vector<double>& gw,
                     double& gb) {
  const auto n = static_cast<double>(x.size());
  std::fill(gw.begin(), gw.end(), 0.0);
  gb = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = std::inner_product(w.begin(), w.end(), x[i].values.begin(), b);
    const double r = sigmoid(z) - (y[i] != 0 ? 1.0 : 0.0);
    for (std::size_t k = 0; k < w.size(); ++k) gw[k] += r * x[i].values[k];
    gb += r;
  }
  for (std::size_t k = 0; k < w.size(); ++k) gw[k] = gw[k] / n + l2 * w[k] / n;
  gb /= n;
}

// 1/L with L = max eigenvalue bound of the Hessian: 0.25 * mean ||(x, 1)||^2 + l2 / n.
inline double auto_step(std::span<const FeatureVector> x, double l2) {
  double sq = 0.0;
  for (const auto& v : x) {
    double s = 1.0;
    for (double xi : v.values) s += xi * xi;
    sq += s;
  }
  const auto n = static_cast<double>(x.size());
  return 1.0 / (0.25 * sq / n + l2 / n);
}

struct BinaryFit {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> losses;
};

// Gradient descent from zero. A step that would raise the loss is halved
// and retried, so recorded losses never increase.
inline BinaryFit fit_binary(std::span<const FeatureVector> x, std::span<const int> y,
                            const LRConfig& cfg, std::size_t dim) {
  BinaryFit fit;
  fit.weights.assign(dim, 0.0);
  double step = cfg.step > 0.0 ? cfg.step : auto_step(x, cfg.l2);
  double loss = objective(x, y, fit.weights, fit.bias, cfg.l2);
  fit.losses.push_back(loss);

  std::vector<double> gw(dim);
  std::vector<double> trial(dim);
  double gb = 0.0;
  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    gradient(x, y, fit.weights, fit.bias, cfg.l2, gw, gb);
    double gmax = std::abs(gb);
    for (double g : gw) gmax = std::max(gmax, std::abs(g));
    if (gmax < cfg.tolerance) break;

    bool accepted = false;
    for (int halvings = 0; halvings < 60 && !accepted; ++halvings) {
      for (std::size_t k = 0; k < dim; ++k) trial[k] = fit.weights[k] - step * gw[k];
      const double trial_bias = fit.bias - step * gb;
      const double trial_loss = objective(x, y, trial, trial_bias, cfg.l2);
      if (trial_loss <= loss) {
        fit.weights.swap(trial);
        fit.bias = trial_bias;
        loss = trial_loss;
        accepted = true;
      } else {
        step *= 0.5;
      }
    }
    if (!accepted) break;
    fit.losses.push_back(loss);
  }
  return fit;
}

inline double logit(double p) { return std::log(p / (1.0 - p)); }

}  // namespace detail

inline LRModel lr_train(std::span<const FeatureVector> features, std::span<const SubtaskLabels> labels,
                        Subtask subtask, const LRConfig& cfg, std::vector<std::string>* warnings = nullptr) {
  if (features.size() != labels.size()) throw ValidationError("features and labels differ in length");
  if (features.empty()) throw ValidationError("cannot train on an empty set");
  validate_features(features);
  if (cfg.max_epochs < 0 || !(cfg.l2 >= 0.0) || !(cfg.step >= 0.0)) {
    throw ValidationError("invalid logistic regression configuration");
  }
  const std::size_t width = schema_for(subtask).width();
  for (const auto& l : labels) {
    if (l.subtask() != subtask) throw SchemaError("label of another subtask in training data");
  }

  LRModel model;
  model.subtask = subtask;
  model.dimension = features.front().values.size();
  model.config = cfg;
  for (std::size_t j = 0; j < width; ++j) {
    std::vector<int> y(labels.size());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      y[i] = labels[i].test(j) ? 1 : 0;
      positives += static_cast<std::size_t>(y[i]);
    }
    if (positives == 0 || positives == labels.size()) {
      if (warnings != nullptr) {
        warnings->push_back("label '" + schema_for(subtask).label_names[j] +
                            "' has a single class in the training data; skipped");
      }
      const double prevalence = std::clamp(static_cast<double>(positives) / static_cast<double>(labels.size()),
                                           1e-6, 1.0 - 1e-6);
      model.weights.emplace_back(model.dimension, 0.0);
      model.bias.push_back(detail::logit(prevalence));
      model.skipped.push_back(true);
      model.loss_history.emplace_back();
      continue;
    }
    auto fit = detail::fit_binary(features, y, cfg, model.dimension);
    model.weights.push_back(std::move(fit.weights));
    model.bias.push_back(fit.bias);
    model.skipped.push_back(false);
    model.loss_history.push_back(std::move(fit.losses));
  }
  return model;
}

inline std::vector<double> lr_probabilities(const LRModel& model, const FeatureVector& v) {
  if (v.values.size() != model.dimension) {
    throw ValidationError("feature '" + v.id + "' has dimension " + std::to_string(v.values.size()) +
                          ", model expects " + std::to_string(model.dimension));
  }
  std::vector<double> out;
  for (std::size_t j = 0; j < model.weights.size(); ++j) {
    const auto& w = model.weights[j];
    out.push_back(sigmoid(std::inner_product(w.begin(), w.end(), v.values.begin(), model.bias[j])));
  }
  return out;
}

inline score::PredictionSet lr_predict(const LRModel& model, std::span<const FeatureVector> features) {
  score::PredictionSet preds(model.subtask);
  for (const auto& v : features) preds.add(v.id, lr_probabilities(model, v));
  return preds;
}

// Seeded shuffle; the first ceil(0.8 n) examples train, the rest test.
inline std::pair<LabeledExamples, LabeledExamples> split_80_20(const LabeledExamples& data,
                                                               std::uint64_t seed,
                                                               std::string_view stream_tag = {}) {
  if (data.features.size() != data.labels.size()) throw ValidationError("features and labels differ in length");
  if (data.size() == 0) throw ValidationError("cannot split an empty set");
  const std::size_t n = data.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng::Stream stream(seed, {"appraisal", "split", stream_tag});
  stream.shuffle(std::span<std::size_t>(order));
  const std::size_t n_train = (4 * n + 4) / 5;  // ceil(0.8 n)

  std::pair<LabeledExamples, LabeledExamples> out;
  for (std::size_t k = 0; k < n; ++k) {
    auto& side = k < n_train ? out.first : out.second;
    side.features.push_back(data.features[order[k]]);
    side.labels.push_back(data.labels[order[k]]);
  }
  return out;
}

}  // namespace polar::appraisal
