#pragma once

#include <string>

#include <json.hpp>

#include "polar/core/schema.hpp"

namespace polar {

enum class SelectionMetric { auc, macro_f1 };

inline std::string to_string(SelectionMetric metric) {
  return metric == SelectionMetric::auc ? "auc" : "macro_f1";
}

// Hyperparameters of the QLoRA finetuning run. The toolkit only emits them.
struct TrainingConfig {
  Subtask subtask = Subtask::S1;
  double learning_rate = 2e-5;
  std::string lr_scheduler = "constant_with_warmup";
  double warmup_ratio = 0.03;
  std::string optimizer = "paged_adamw";
  int batch_size = 1;
  int eval_interval_steps = 500;
  int epochs = 1;
  SelectionMetric selection_metric = SelectionMetric::auc;
  std::string quantization = "bitsandbytes-4bit";
  std::string base_model = "Qwen3-32B";
};

inline TrainingConfig emit_training_config(Subtask subtask) {
  TrainingConfig cfg;
  cfg.subtask = subtask;
  if (subtask == Subtask::S1) {
    cfg.selection_metric = SelectionMetric::auc;
    cfg.base_model = "Qwen3-32B";
  } else {
    cfg.selection_metric = SelectionMetric::macro_f1;
    cfg.base_model = "Gemma-3-27B-pt";
  }
  return cfg;
}

inline nlohmann::ordered_json to_json(const TrainingConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["subtask"] = to_string(cfg.subtask);
  doc["labels"] = schema_for(cfg.subtask).label_names;
  doc["base_model"] = cfg.base_model;
  doc["quantization"] = cfg.quantization;
  doc["peft"] = "qlora";
  doc["learning_rate"] = cfg.learning_rate;
  doc["lr_scheduler"] = cfg.lr_scheduler;
  doc["warmup_ratio"] = cfg.warmup_ratio;
  doc["optimizer"] = cfg.optimizer;
  doc["batch_size"] = cfg.batch_size;
  doc["eval_interval_steps"] = cfg.eval_interval_steps;
  doc["epochs"] = cfg.epochs;
  doc["selection_metric"] = to_string(cfg.selection_metric);
  return doc;
}

}  // namespace polar
