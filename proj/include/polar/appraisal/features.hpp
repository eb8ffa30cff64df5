#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "polar/core/dataset.hpp"
#include "polar/core/jsonl.hpp"

namespace polar::appraisal {

struct FeatureVector {
  std::string id;
  Language lang = Language::eng;
  std::vector<double> values;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct FeatureSet {
  std::vector<FeatureVector> vectors;
  // Where the features came from (encoder embeddings, appraisal estimates, ...).
  std::string provenance;

  std::size_t dimension() const { return vectors.empty() ? 0 : vectors.front().values.size(); }
};

inline void validate_features(std::span<const FeatureVector> vectors) {
  if (vectors.empty()) return;
  const auto d = vectors.front().values.size();
  for (const auto& v : vectors) {
    if (v.values.size() != d) {
      throw ValidationError("feature '" + v.id + "' has dimension " + std::to_string(v.values.size()) +
                            ", expected " + std::to_string(d));
    }
    for (double x : v.values) {
      if (!std::isfinite(x)) throw ValidationError("feature '" + v.id + "' has a non-finite value");
    }
  }
}

// One line per vector: {"id", "lang", "values", optional "provenance"}.
inline FeatureSet read_features(const std::filesystem::path& path) {
  FeatureSet set;
  for_each_json_line(path, [&](std::size_t line, const nlohmann::json& doc) {
    FeatureVector v;
    v.id = detail::require_string(doc, "id", line);
    try {
      v.lang = parse_language(detail::require_string(doc, "lang", line));
    } catch (const ValidationError& e) {
      throw ParseError(line, e.what());
    }
    const auto& values = detail::require(doc, "values", line);
    if (!values.is_array()) throw ParseError(line, "'values' must be an array");
    for (const auto& x : values) {
      if (!x.is_number()) throw ParseError(line, "feature values must be numbers");
      v.values.push_back(x.get<double>());
    }
    if (auto it = doc.find("provenance"); it != doc.end() && it->is_string() && set.provenance.empty()) {
      set.provenance = it->get<std::string>();
    }
    set.vectors.push_back(std::move(v));
  });
  validate_features(set.vectors);
  return set;
}

inline void write_features(const FeatureSet& set, std::ostream& out) {
  for (const auto& v : set.vectors) {
    nlohmann::ordered_json doc;
    doc["id"] = v.id;
    doc["lang"] = to_string(v.lang);
    doc["values"] = v.values;
    if (!set.provenance.empty()) doc["provenance"] = set.provenance;
    out << doc.dump() << '\n';
  }
}

// Feature vectors paired with gold labels, aligned by position.
struct LabeledExamples {
  std::vector<FeatureVector> features;
  std::vector<SubtaskLabels> labels;

  std::size_t size() const noexcept { return features.size(); }
};

// Pairs every feature vector with the labeled record of the same id.
inline LabeledExamples join_labels(const FeatureSet& set, const Dataset& gold) {
  LabeledExamples out;
  for (const auto& v : set.vectors) {
    const auto* r = gold.find(v.id);
    if (r == nullptr) throw ValidationError("no labeled record for feature '" + v.id + "'");
    if (!r->labels) throw ValidationError("record '" + v.id + "' is unlabeled");
    if (r->lang != v.lang) throw ValidationError("language mismatch for '" + v.id + "'");
    out.features.push_back(v);
    out.labels.push_back(*r->labels);
  }
  return out;
}

}  // namespace polar::appraisal
