#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include <json.hpp>

#include "polar/appraisal/logistic.hpp"
#include "polar/core/jsonl.hpp"
#include "polar/core/random.hpp"

namespace polar::appraisal {

inline constexpr const char* kModelFormat = "polar-lr/1";

// Per-language classifiers sharing one subtask and feature dimension.
struct ModelBundle {
  Subtask subtask = Subtask::S1;
  std::size_t dimension = 0;
  std::string feature_provenance;
  std::map<Language, LRModel> models;
};

inline std::string schema_hash(Subtask subtask) {
  std::string key = to_string(subtask);
  for (const auto& name : schema_for(subtask).label_names) key += "|" + name;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng::fnv1a64(key)));
  return buf;
}

inline nlohmann::ordered_json to_json(const ModelBundle& bundle) {
  nlohmann::ordered_json doc;
  doc["format"] = kModelFormat;
  doc["subtask"] = to_string(bundle.subtask);
  doc["labels"] = schema_for(bundle.subtask).label_names;
  doc["schema_hash"] = schema_hash(bundle.subtask);
  doc["feature_dim"] = bundle.dimension;
  doc["feature_provenance"] = bundle.feature_provenance;
  nlohmann::ordered_json models = nlohmann::ordered_json::object();
  for (const auto& [lang, m] : bundle.models) {
    nlohmann::ordered_json entry;
    entry["weights"] = m.weights;
    entry["bias"] = m.bias;
    entry["skipped"] = m.skipped;
    entry["config"] = {{"seed", m.config.seed},
                       {"l2", m.config.l2},
                       {"max_epochs", m.config.max_epochs},
                       {"step", m.config.step},
                       {"tolerance", m.config.tolerance}};
    models[std::string(to_string(lang))] = std::move(entry);
  }
  doc["models"] = std::move(models);
  return doc;
}

// Refuses a model trained for a different label schema than `expected`.
inline ModelBundle bundle_from_json(const nlohmann::json& doc, Subtask expected) {
  try {
    if (doc.at("format").get<std::string>() != kModelFormat) throw ValidationError("unknown model format");
    if (doc.at("schema_hash").get<std::string>() != schema_hash(expected)) {
      throw SchemaError("model was trained for " + doc.at("subtask").get<std::string>() +
                        ", not " + to_string(expected));
    }
    ModelBundle bundle;
    bundle.subtask = expected;
    bundle.dimension = doc.at("feature_dim").get<std::size_t>();
    bundle.feature_provenance = doc.value("feature_provenance", "");
    for (const auto& [code, entry] : doc.at("models").items()) {
      LRModel m;
      m.subtask = expected;
      m.dimension = bundle.dimension;
      m.weights = entry.at("weights").get<std::vector<std::vector<double>>>();
      m.bias = entry.at("bias").get<std::vector<double>>();
      m.skipped = entry.at("skipped").get<std::vector<bool>>();
      const auto& c = entry.at("config");
      m.config.seed = c.at("seed").get<std::uint64_t>();
      m.config.l2 = c.at("l2").get<double>();
      m.config.max_epochs = c.at("max_epochs").get<int>();
      m.config.step = c.at("step").get<double>();
      m.config.tolerance = c.at("tolerance").get<double>();
      const auto width = schema_for(expected).width();
      if (m.weights.size() != width || m.bias.size() != width || m.skipped.size() != width) {
        throw SchemaError("model for " + code + " has the wrong number of labels");
      }
      for (const auto& w : m.weights) {
        if (w.size() != m.dimension) throw ValidationError("model for " + code + " has the wrong dimension");
      }
      bundle.models.emplace(parse_language(code), std::move(m));
    }
    return bundle;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed model file: ") + e.what());
  }
}

inline void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path) {
  auto out = open_for_writing(path);
  out << to_json(bundle).dump(1) << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline ModelBundle load_bundle(const std::filesystem::path& path, Subtask expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file '" + path.string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed model file: ") + e.what());
  }
  return bundle_from_json(doc, expected);
}

inline ModelBundle train_bundle(const LabeledExamples& data, Subtask subtask, const LRConfig& cfg,
                                std::string provenance, std::vector<std::string>* warnings = nullptr) {
  ModelBundle bundle;
  bundle.subtask = subtask;
  bundle.feature_provenance = std::move(provenance);
  bundle.dimension = data.size() == 0 ? 0 : data.features.front().values.size();
  std::map<Language, LabeledExamples> groups;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto& g = groups[data.features[i].lang];
    g.features.push_back(data.features[i]);
    g.labels.push_back(data.labels[i]);
  }
  for (const auto& [lang, g] : groups) {
    std::vector<std::string> local;
    bundle.models.emplace(lang, lr_train(g.features, g.labels, subtask, cfg, &local));
    if (warnings != nullptr) {
      for (auto& w : local) warnings->push_back(std::string(to_string(lang)) + ": " + w);
    }
  }
  return bundle;
}

inline score::PredictionSet predict_bundle(const ModelBundle& bundle, std::span<const FeatureVector> features) {
  score::PredictionSet preds(bundle.subtask);
  for (const auto& v : features) {
    auto it = bundle.models.find(v.lang);
    if (it == bundle.models.end()) {
      throw ValidationError("no model for language " + std::string(to_string(v.lang)));
    }
    preds.add(v.id, lr_probabilities(it->second, v));
  }
  return preds;
}

}  // namespace polar::appraisal
