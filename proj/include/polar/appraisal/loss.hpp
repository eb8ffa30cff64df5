#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string_view>

#include "polar/core/error.hpp"

namespace polar::appraisal {

inline constexpr std::size_t kEmotionCount = 7;
inline constexpr std::size_t kAppraisalCount = 5;
inline constexpr std::size_t kEventCount = 4;

inline constexpr std::array<std::string_view, kEmotionCount> kEmotionNames = {
    "anger", "disgust", "fear", "sadness", "shame", "joy", "guilt"};
inline constexpr std::array<std::string_view, kAppraisalCount> kAppraisalNames = {
    "consequences to self", "consequences to others", "degree of control",
    "degree of responsibility", "alignment with social values"};
inline constexpr std::array<std::string_view, kEventCount> kEventNames = {
    "general", "past", "future", "prospective"};

// Raw outputs of the three heads: emotion intensities (regression) and
// logits of the binary appraisal and event heads.
struct AppraisalOutputs {
  std::array<double, kEmotionCount> emotions{};
  std::array<double, kAppraisalCount> appraisal_logits{};
  std::array<double, kEventCount> event_logits{};
};

struct AppraisalTargets {
  std::array<double, kEmotionCount> emotions{};  // each in [0, 1]
  std::array<bool, kAppraisalCount> appraisals{};
  std::array<bool, kEventCount> events{};
};

struct MultitaskLossConfig {
  double w_mse = 1.0;
  double w_bce = 1.0;

  void validate() const {
    if (!(w_mse >= 0.0) || !(w_bce >= 0.0) || !(w_mse + w_bce > 0.0) || !std::isfinite(w_mse) ||
        !std::isfinite(w_bce)) {
      throw ValidationError("loss weights must be finite, non-negative and not both zero");
    }
  }
};

struct LossResult {
  double loss = 0.0;
  AppraisalOutputs gradient;
};

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
inline double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

// Binary cross-entropy of sigmoid(z) against t, written on the logit.
inline double bce_with_logit(double z, bool t) { return softplus(z) - (t ? z : 0.0); }

// loss = w_mse * mean((e - t)^2)
//      + w_bce * (mean BCE(appraisal) + mean BCE(event))
inline LossResult multitask_loss(const AppraisalOutputs& pred, const AppraisalTargets& target,
                                 const MultitaskLossConfig& cfg) {
  cfg.validate();
  auto all_finite = [](const auto& xs) {
    for (double x : xs) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  };
  if (!all_finite(pred.emotions) || !all_finite(pred.appraisal_logits) ||
      !all_finite(pred.event_logits) || !all_finite(target.emotions)) {
    throw ValidationError("multitask loss needs finite inputs");
  }
  for (double t : target.emotions) {
    if (t < 0.0 || t > 1.0) throw ValidationError("emotion targets must lie in [0, 1]");
  }

  LossResult out;
  double mse = 0.0;
  for (std::size_t i = 0; i < kEmotionCount; ++i) {
    const double d = pred.emotions[i] - target.emotions[i];
    mse += d * d;
    out.gradient.emotions[i] = cfg.w_mse * 2.0 * d / static_cast<double>(kEmotionCount);
  }
  mse /= static_cast<double>(kEmotionCount);

  double bce_appraisal = 0.0;
  for (std::size_t i = 0; i < kAppraisalCount; ++i) {
    const double z = pred.appraisal_logits[i];
    const bool t = target.appraisals[i];
    bce_appraisal += bce_with_logit(z, t);
    out.gradient.appraisal_logits[i] =
        cfg.w_bce * (sigmoid(z) - (t ? 1.0 : 0.0)) / static_cast<double>(kAppraisalCount);
  }
  bce_appraisal /= static_cast<double>(kAppraisalCount);

  double bce_event = 0.0;
  for (std::size_t i = 0; i < kEventCount; ++i) {
    const double z = pred.event_logits[i];
    const bool t = target.events[i];
    bce_event += bce_with_logit(z, t);
    out.gradient.event_logits[i] =
        cfg.w_bce * (sigmoid(z) - (t ? 1.0 : 0.0)) / static_cast<double>(kEventCount);
  }
  bce_event /= static_cast<double>(kEventCount);

  out.loss = cfg.w_mse * mse + cfg.w_bce * (bce_appraisal + bce_event);
  return out;
}

}  // namespace polar::appraisal
