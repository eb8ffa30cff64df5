#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polar/core/jsonl.hpp"
#include "polar/core/schema.hpp"

namespace polar::score {

inline constexpr double kDefaultThreshold = 0.5;

struct Prediction {
  std::vector<double> scores;   // one per schema label, in [0, 1]
  std::vector<bool> decisions;  // one per schema label
};

class PredictionSet {
 public:
  explicit PredictionSet(Subtask subtask) : subtask_(subtask) {}

  // Decisions default to score >= threshold when not supplied.
  void add(const std::string& id, std::vector<double> scores,
           std::optional<std::vector<bool>> decisions = std::nullopt,
           double threshold = kDefaultThreshold) {
    const std::size_t width = schema_for(subtask_).width();
    if (scores.size() != width) {
      throw SchemaError("prediction '" + id + "' has " + std::to_string(scores.size()) +
                        " scores, " + to_string(subtask_) + " expects " + std::to_string(width));
    }
    for (double s : scores) {
      if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
        throw ValidationError("prediction '" + id + "' has a score outside [0, 1]");
      }
    }
    Prediction p;
    if (decisions) {
      if (decisions->size() != width) throw SchemaError("prediction '" + id + "' has wrong decision width");
      p.decisions = std::move(*decisions);
    } else {
      for (double s : scores) p.decisions.push_back(s >= threshold);
    }
    p.scores = std::move(scores);
    if (!entries_.emplace(id, std::move(p)).second) {
      throw ValidationError("duplicate prediction for id '" + id + "'");
    }
  }

  const Prediction* find(const std::string& id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
  }

  const Prediction& at(const std::string& id) const {
    const auto* p = find(id);
    if (p == nullptr) throw ValidationError("missing prediction for id '" + id + "'");
    return *p;
  }

  Subtask subtask() const noexcept { return subtask_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<std::string, Prediction>& entries() const noexcept { return entries_; }

 private:
  Subtask subtask_;
  std::map<std::string, Prediction> entries_;
};

// Same line format as the dataset files, with `scores` in place of `labels`
// and an optional explicit `decisions` array. Other keys are ignored.
inline PredictionSet read_predictions(const std::filesystem::path& path, Subtask subtask,
                                      double threshold = kDefaultThreshold) {
  PredictionSet preds(subtask);
  for_each_json_line(path, [&](std::size_t line, const nlohmann::json& doc) {
    const auto id = detail::require_string(doc, "id", line);
    const auto& scores = detail::require(doc, "scores", line);
    if (!scores.is_array()) throw ParseError(line, "'scores' must be an array");
    std::vector<double> values;
    for (const auto& s : scores) {
      if (!s.is_number()) throw ParseError(line, "scores must be numbers");
      values.push_back(s.get<double>());
    }
    std::optional<std::vector<bool>> decisions;
    if (auto it = doc.find("decisions"); it != doc.end() && !it->is_null()) {
      if (!it->is_array()) throw ParseError(line, "'decisions' must be an array");
      decisions.emplace();
      for (const auto& d : *it) {
        if (!d.is_number_integer() || (d.get<int>() != 0 && d.get<int>() != 1)) {
          throw ParseError(line, "decisions must be 0 or 1");
        }
        decisions->push_back(d.get<int>() == 1);
      }
    }
    try {
      preds.add(id, std::move(values), std::move(decisions), threshold);
    } catch (const SchemaError& e) {
      throw SchemaError("line " + std::to_string(line) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ParseError(line, e.what());
    }
  });
  return preds;
}

inline void write_predictions(const PredictionSet& preds, std::ostream& out) {
  for (const auto& [id, p] : preds.entries()) {
    nlohmann::ordered_json doc;
    doc["id"] = id;
    doc["scores"] = p.scores;
    std::vector<int> decisions;
    for (bool d : p.decisions) decisions.push_back(d ? 1 : 0);
    doc["decisions"] = decisions;
    out << doc.dump() << '\n';
  }
}

}  // namespace polar::score
