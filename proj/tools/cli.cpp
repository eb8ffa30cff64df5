#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "manifest.hpp"
#include "polar/polar.hpp"

namespace polar::cli {
namespace {

namespace fs = std::filesystem;

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string command_line;
};

fs::path prepare_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) throw IoError("cannot create output directory '" + dir + "'");
  return p;
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& body) {
  auto out = open_for_writing(path);
  body(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// The --confusables flag, else $POLAR_CONFUSABLES, else empty (built-in table).
std::string confusables_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kConfusablesEnv); env != nullptr && *env != '\0') return env;
  return {};
}

std::vector<Language> parse_languages(const std::vector<std::string>& codes) {
  std::vector<Language> out;
  for (const auto& c : codes) out.push_back(parse_language(c));
  return out;
}

// ---- augment ---------------------------------------------------------------

struct AugmentArgs {
  std::string in, out, confusables, subtask = "1";
  double total_frac = 0.20;
  std::vector<double> per_technique;
  double homoglyph_rate = augment::kDefaultHomoglyphRate;
  std::uint64_t seed = rng::kDefaultSeed;
  bool allow_multilabel = false;
};

void run_augment(const AugmentArgs& a, Context& ctx) {
  const auto subtask = parse_subtask(a.subtask);
  if (subtask != Subtask::S1 && !a.allow_multilabel) {
    throw ValidationError("augmentation is only enabled for subtask 1; pass --allow-multilabel to override");
  }
  auto plan = augment::AugmentationPlan::uniform(a.total_frac, a.seed);
  if (a.per_technique.size() == 1) {
    plan.per_technique_fraction.fill(a.per_technique.front());
  } else if (a.per_technique.size() == 4) {
    std::copy(a.per_technique.begin(), a.per_technique.end(), plan.per_technique_fraction.begin());
  } else if (!a.per_technique.empty()) {
    throw ValidationError("--per-technique-frac takes one value or four (anonymized,lowercased,uppercased,homoglyphed)");
  }
  plan.homoglyph_char_rate = a.homoglyph_rate;
  const auto table_path = confusables_path(a.confusables);
  const auto table = table_path.empty() ? augment::ConfusablesTable::builtin()
                                        : augment::ConfusablesTable::load(table_path);
  const auto ds = read_dataset(a.in, subtask);
  const auto result = augment::apply_augmentation(ds, plan, table);

  const auto dir = prepare_out_dir(a.out);
  write_dataset(result.dataset, dir / "augmented.jsonl");
  write_file(dir / "augment_stats.csv", [&](std::ostream& o) {
    o << "technique,candidates,kept\n";
    for (const auto& s : result.stats) o << to_string(s.technique) << ',' << s.candidates << ',' << s.kept << '\n';
  });
  RunManifest m{ctx.command_line, a.seed, {a.in}, {"augmented.jsonl", "augment_stats.csv"}, {}};
  m.counts["input"] = static_cast<long long>(ds.size());
  m.counts["output"] = static_cast<long long>(result.dataset.size());
  for (const auto& s : result.stats) {
    const std::string name(to_string(s.technique));
    m.counts[name + "_candidates"] = static_cast<long long>(s.candidates);
    m.counts[name + "_kept"] = static_cast<long long>(s.kept);
  }
  if (!table_path.empty()) m.inputs.emplace_back(table_path);
  write_manifest(m, dir);
  ctx.out << "augmented " << ds.size() << " -> " << result.dataset.size() << " records\n";
}

// ---- assemble --------------------------------------------------------------

struct AssembleArgs {
  std::string train, dev, subtask = "1", out;
};

void run_assemble(const AssembleArgs& a, Context& ctx) {
  const auto subtask = parse_subtask(a.subtask);
  const auto train = read_dataset(a.train, subtask);
  const auto dev = read_dataset(a.dev, subtask);
  const auto merged = assemble::merge_and_dedup(train, dev);
  const auto dir = prepare_out_dir(a.out);
  write_dataset(merged, dir / "merged.jsonl");
  RunManifest m{ctx.command_line, 0, {a.train, a.dev}, {"merged.jsonl"}, {}};
  m.counts["train"] = static_cast<long long>(train.size());
  m.counts["dev"] = static_cast<long long>(dev.size());
  m.counts["merged"] = static_cast<long long>(merged.size());
  write_manifest(m, dir);
  ctx.out << "merged " << train.size() << " + " << dev.size() << " -> " << merged.size() << " records\n";
}

// ---- sample ----------------------------------------------------------------

struct SampleArgs {
  std::string in, subtask = "1", mode, out;
  std::size_t per_cell = 100;
  std::uint64_t seed = rng::kDefaultSeed;
  std::vector<std::string> languages;
};

void run_sample(const SampleArgs& a, Context& ctx) {
  const auto subtask = parse_subtask(a.subtask);
  auto plan = assemble::ValidationPlan::for_subtask(subtask, a.seed);
  if (a.mode == "binary") {
    plan.mode = assemble::SamplingMode::per_language_per_label;
  } else if (a.mode == "multilabel") {
    plan.mode = assemble::SamplingMode::per_language_distributional;
  }
  plan.per_cell_count = a.per_cell;
  plan.languages = parse_languages(a.languages);
  const auto ds = read_dataset(a.in, subtask);
  const auto split = assemble::sample_validation(ds, plan);

  const auto dir = prepare_out_dir(a.out);
  write_dataset(split.validation, dir / "validation.jsonl");
  write_dataset(split.train_rest, dir / "train.jsonl");
  write_file(dir / "split_manifest.jsonl", [&](std::ostream& o) { assemble::write_split_manifest(ds, split, o); });
  write_file(dir / "shortfalls.csv", [&](std::ostream& o) {
    o << "language,label,available\n";
    for (const auto& s : split.shortfalls) o << to_string(s.lang) << ',' << s.label << ',' << s.available << '\n';
  });
  for (const auto& s : split.shortfalls) {
    ctx.err << "warning: cell (" << to_string(s.lang) << ", " << s.label << ") has only " << s.available
            << " records\n";
  }
  RunManifest m{ctx.command_line, a.seed, {a.in},
                {"validation.jsonl", "train.jsonl", "split_manifest.jsonl", "shortfalls.csv"}, {}};
  m.counts["input"] = static_cast<long long>(ds.size());
  m.counts["validation"] = static_cast<long long>(split.validation.size());
  m.counts["train"] = static_cast<long long>(split.train_rest.size());
  m.counts["shortfall_cells"] = static_cast<long long>(split.shortfalls.size());
  write_manifest(m, dir);
  ctx.out << "validation " << split.validation.size() << ", train " << split.train_rest.size() << '\n';
}

// ---- score -----------------------------------------------------------------

struct ScoreArgs {
  std::string pred, gold, subtask = "1", out;
  double threshold = score::kDefaultThreshold;
};

void run_score(const ScoreArgs& a, Context& ctx) {
  const auto subtask = parse_subtask(a.subtask);
  const auto gold = read_dataset(a.gold, subtask);
  const auto preds = score::read_predictions(a.pred, subtask, a.threshold);
  const auto report = score::per_language_report(preds, gold);
  for (const auto& w : report.warnings) ctx.err << "warning: " << w << '\n';

  const auto dir = prepare_out_dir(a.out);
  write_file(dir / "report.csv", [&](std::ostream& o) { score::write_report_csv(report, o); });
  write_file(dir / "summary.csv", [&](std::ostream& o) { score::write_summary_csv(report, o); });
  write_file(dir / "auc_summary.csv", [&](std::ostream& o) {
    o << "label,pooled_auc,macro_auc\n";
    const auto& names = gold.schema().label_names;
    for (std::size_t j = 0; j < names.size(); ++j) {
      o << names[j] << ',' << score::fixed4(score::pooled_auc(preds, gold, j), "NA") << ','
        << score::fixed4(score::macro_auc(report, j), "NA") << '\n';
    }
  });
  write_file(dir / "table.txt", [&](std::ostream& o) { score::render_table(report, o); });
  RunManifest m{ctx.command_line, 0, {a.pred, a.gold}, {"report.csv", "summary.csv", "auc_summary.csv", "table.txt"}, {}};
  m.counts["languages"] = static_cast<long long>(report.per_language.size());
  m.counts["gold"] = static_cast<long long>(gold.size());
  write_manifest(m, dir);
  score::write_summary_csv(report, ctx.out);
}

// ---- delta -----------------------------------------------------------------

struct DeltaArgs {
  std::string mine, baseline, out;
};

void run_delta(const DeltaArgs& a, Context& ctx) {
  const auto delta = score::baseline_delta(score::read_summary_csv(a.mine), score::read_summary_csv(a.baseline));
  if (!a.out.empty()) {
    const auto dir = prepare_out_dir(a.out);
    write_file(dir / "delta.csv", [&](std::ostream& o) { score::write_delta_csv(delta, o); });
    RunManifest m{ctx.command_line, 0, {a.mine, a.baseline}, {"delta.csv"}, {}};
    m.counts["languages"] = static_cast<long long>(delta.cells.rows.size());
    write_manifest(m, dir);
  }
  score::write_delta_csv(delta, ctx.out);
}

// ---- percentile ------------------------------------------------------------

struct PercentileArgs {
  double mine = 0.0;
  std::string leaderboard, out;
};

void run_percentile(const PercentileArgs& a, Context& ctx) {
  const auto scores = score::read_leaderboard(a.leaderboard);
  const double pct = score::rank_percentile(a.mine, scores);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", pct);
  if (!a.out.empty()) {
    const auto dir = prepare_out_dir(a.out);
    write_file(dir / "percentile.txt", [&](std::ostream& o) { o << buf << '\n'; });
    RunManifest m{ctx.command_line, 0, {a.leaderboard}, {"percentile.txt"}, {}};
    m.counts["systems"] = static_cast<long long>(scores.size());
    write_manifest(m, dir);
  }
  ctx.out << buf << '\n';
}

// ---- lr --------------------------------------------------------------------

struct LrArgs {
  std::string features, labels, model, subtask = "1", out;
  std::uint64_t seed = rng::kDefaultSeed;
  double l2 = 1.0;
  int max_epochs = 100;
};

appraisal::LRConfig lr_config(const LrArgs& a) {
  appraisal::LRConfig cfg;
  cfg.seed = a.seed;
  cfg.l2 = a.l2;
  cfg.max_epochs = a.max_epochs;
  return cfg;
}

void run_lr_train(const LrArgs& a, Context& ctx) {
  const auto subtask = parse_subtask(a.subtask);
  const auto features = appraisal::read_features(a.features);
  const auto data = appraisal::join_labels(features, read_dataset(a.labels, subtask));
  std::vector<std::string> warnings;
  const auto bundle = appraisal::train_bundle(data, subtask, lr_config(a), features.provenance, &warnings);
  for (const auto& w : warnings) ctx.err << "warning: " << w << '\n';
  const auto dir = prepare_out_dir(a.out);
  appraisal::save_bundle(bundle, dir / "model.json");
  RunManifest m{ctx.command_line, a.seed, {a.features, a.labels}, {"model.json"}, {}};
  m.counts["examples"] = static_cast<long long>(data.size());
  m.counts["languages"] = static_cast<long long>(bundle.models.size());
  write_manifest(m, dir);
  ctx.out << "trained " << bundle.models.size() << " per-language models on " << data.size() << " examples\n";
}

void run_lr_eval(const LrArgs& a, Context& ctx) {
  const auto subtask = parse_subtask(a.subtask);
  const auto features = appraisal::read_features(a.features);
  const auto data = appraisal::join_labels(features, read_dataset(a.labels, subtask));
  const auto report = appraisal::evaluate_per_language(data, subtask, lr_config(a));
  for (const auto& w : report.warnings) ctx.err << "warning: " << w << '\n';
  const auto dir = prepare_out_dir(a.out);
  write_file(dir / "lr_macro_f1.csv", [&](std::ostream& o) { score::write_summary_csv(report, o); });
  write_file(dir / "lr_auc.csv", [&](std::ostream& o) { appraisal::write_auc_table(report, o); });
  write_file(dir / "lr_report.csv", [&](std::ostream& o) { score::write_report_csv(report, o); });
  RunManifest m{ctx.command_line, a.seed, {a.features, a.labels}, {"lr_macro_f1.csv", "lr_auc.csv", "lr_report.csv"}, {}};
  m.counts["examples"] = static_cast<long long>(data.size());
  m.counts["languages"] = static_cast<long long>(report.per_language.size());
  write_manifest(m, dir);
  score::write_summary_csv(report, ctx.out);
}

void run_lr_predict(const LrArgs& a, Context& ctx) {
  const auto subtask = parse_subtask(a.subtask);
  const auto bundle = appraisal::load_bundle(a.model, subtask);
  const auto features = appraisal::read_features(a.features);
  if (features.dimension() != bundle.dimension && !features.vectors.empty()) {
    throw ValidationError("feature dimension " + std::to_string(features.dimension()) +
                          " does not match the model (" + std::to_string(bundle.dimension) + ")");
  }
  const auto preds = appraisal::predict_bundle(bundle, features.vectors);
  const auto dir = prepare_out_dir(a.out);
  write_file(dir / "predictions.jsonl", [&](std::ostream& o) { score::write_predictions(preds, o); });
  RunManifest m{ctx.command_line, 0, {a.model, a.features}, {"predictions.jsonl"}, {}};
  m.counts["predictions"] = static_cast<long long>(preds.size());
  write_manifest(m, dir);
  ctx.out << "wrote " << preds.size() << " predictions\n";
}

// ---- emit-config -----------------------------------------------------------

struct EmitConfigArgs {
  std::string subtask = "1", out;
};

void run_emit_config(const EmitConfigArgs& a, Context& ctx) {
  const auto doc = to_json(emit_training_config(parse_subtask(a.subtask))).dump(2);
  if (!a.out.empty()) {
    const auto dir = prepare_out_dir(a.out);
    write_file(dir / "training_config.json", [&](std::ostream& o) { o << doc << '\n'; });
    write_manifest({ctx.command_line, 0, {}, {"training_config.json"}, {}}, dir);
  }
  ctx.out << doc << '\n';
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "polar";
  for (const auto& a : args) s += " " + a;
  return s;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Corpus robustness toolkit: augmentation, assembly, scoring and appraisal classifiers"};
  app.require_subcommand(1);
  Context ctx{out, err, join(args)};
  std::function<void()> action;

  AugmentArgs aug;
  auto* c_aug = app.add_subcommand("augment", "duplicate, transform and de-duplicate a training set");
  c_aug->add_option("--in", aug.in, "input dataset (JSON lines)")->required();
  c_aug->add_option("--out", aug.out, "output directory")->required();
  c_aug->add_option("--subtask", aug.subtask, "1, 2 or 3");
  c_aug->add_option("--total-frac", aug.total_frac, "total augmented fraction");
  c_aug->add_option("--per-technique-frac", aug.per_technique, "one value, or four comma separated")->delimiter(',');
  c_aug->add_option("--homoglyph-rate", aug.homoglyph_rate, "per-character substitution probability");
  c_aug->add_option("--confusables", aug.confusables, "confusables table (default: $POLAR_CONFUSABLES or built-in)");
  c_aug->add_option("--seed", aug.seed);
  c_aug->add_flag("--allow-multilabel", aug.allow_multilabel, "allow augmentation for subtasks 2 and 3");
  c_aug->callback([&] { action = [&] { run_augment(aug, ctx); }; });

  AssembleArgs asm_args;
  auto* c_asm = app.add_subcommand("assemble", "merge train and dev sets and de-duplicate");
  c_asm->add_option("--train", asm_args.train)->required();
  c_asm->add_option("--dev", asm_args.dev)->required();
  c_asm->add_option("--subtask", asm_args.subtask);
  c_asm->add_option("--out", asm_args.out)->required();
  c_asm->callback([&] { action = [&] { run_assemble(asm_args, ctx); }; });

  SampleArgs smp;
  auto* c_smp = app.add_subcommand("sample", "split off a validation set");
  c_smp->add_option("--in", smp.in)->required();
  c_smp->add_option("--subtask", smp.subtask);
  c_smp->add_option("--mode", smp.mode, "binary or multilabel (default by subtask)")
      ->check(CLI::IsMember({"binary", "multilabel"}));
  c_smp->add_option("--per-cell", smp.per_cell, "records per cell (binary) or per language (multilabel)");
  c_smp->add_option("--seed", smp.seed);
  c_smp->add_option("--languages", smp.languages, "restrict to these languages")->delimiter(',');
  c_smp->add_option("--out", smp.out)->required();
  c_smp->callback([&] { action = [&] { run_sample(smp, ctx); }; });

  ScoreArgs sc;
  auto* c_sc = app.add_subcommand("score", "per-language F1 and AUC report");
  c_sc->add_option("--pred", sc.pred)->required();
  c_sc->add_option("--gold", sc.gold)->required();
  c_sc->add_option("--subtask", sc.subtask);
  c_sc->add_option("--threshold", sc.threshold);
  c_sc->add_option("--out", sc.out)->required();
  c_sc->callback([&] { action = [&] { run_score(sc, ctx); }; });

  DeltaArgs dl;
  auto* c_dl = app.add_subcommand("delta", "difference to a baseline summary, with an Average row");
  c_dl->add_option("--mine", dl.mine)->required();
  c_dl->add_option("--baseline", dl.baseline)->required();
  c_dl->add_option("--out", dl.out);
  c_dl->callback([&] { action = [&] { run_delta(dl, ctx); }; });

  PercentileArgs pc;
  auto* c_pc = app.add_subcommand("percentile", "share of systems ranked strictly worse");
  c_pc->add_option("--mine", pc.mine)->required();
  c_pc->add_option("--leaderboard", pc.leaderboard)->required();
  c_pc->add_option("--out", pc.out);
  c_pc->callback([&] { action = [&] { run_percentile(pc, ctx); }; });

  LrArgs lr;
  auto* c_lr = app.add_subcommand("lr", "per-language logistic regression over feature vectors");
  c_lr->require_subcommand(1);
  auto add_common = [&](CLI::App* c) {
    c->add_option("--features", lr.features)->required();
    c->add_option("--subtask", lr.subtask);
    c->add_option("--out", lr.out)->required();
  };
  auto add_training = [&](CLI::App* c) {
    c->add_option("--labels", lr.labels, "labeled dataset joined by id")->required();
    c->add_option("--seed", lr.seed);
    c->add_option("--l2", lr.l2);
    c->add_option("--max-epochs", lr.max_epochs);
  };
  auto* c_lr_train = c_lr->add_subcommand("train", "train one model per language on all data");
  add_common(c_lr_train);
  add_training(c_lr_train);
  c_lr_train->callback([&] { action = [&] { run_lr_train(lr, ctx); }; });
  auto* c_lr_eval = c_lr->add_subcommand("eval", "80/20 split per language and score the held-out part");
  add_common(c_lr_eval);
  add_training(c_lr_eval);
  c_lr_eval->callback([&] { action = [&] { run_lr_eval(lr, ctx); }; });
  auto* c_lr_pred = c_lr->add_subcommand("predict", "apply a trained model file");
  add_common(c_lr_pred);
  c_lr_pred->add_option("--model", lr.model)->required();
  c_lr_pred->callback([&] { action = [&] { run_lr_predict(lr, ctx); }; });

  EmitConfigArgs ec;
  auto* c_ec = app.add_subcommand("emit-config", "write the finetuning hyperparameters");
  c_ec->add_option("--subtask", ec.subtask);
  c_ec->add_option("--out", ec.out);
  c_ec->callback([&] { action = [&] { run_emit_config(ec, ctx); }; });

  std::vector<const char*> argv;
  argv.push_back("polar");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kUsageError;
  }

  try {
    if (action) action();
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace polar::cli
