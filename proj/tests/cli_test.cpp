#include <gtest/gtest.h>

#include <cstdlib>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "polar/polar.hpp"
#include "test_util.hpp"

namespace polar::cli {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::set<std::string> listing(const fs::path& dir) {
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.insert(e.path().filename().string());
  return names;
}

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(testing::slurp(dir / "manifest.json")); }

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kUsageError);
  EXPECT_EQ(run({"frobnicate"}).code, kUsageError);
  EXPECT_EQ(run({"score", "--pred", "x"}).code, kUsageError);
  TempDir dir;
  const auto r = run({"score", "--pred", "/nonexistent/p.jsonl", "--gold", "/nonexistent/g.jsonl", "--out",
                      (dir / "o").string()});
  EXPECT_EQ(r.code, kDataError);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(Cli, ScorePerfectPredictions) {
  TempDir dir;
  const auto gold = testing::binary_corpus(10, {Language::eng, Language::amh});
  write_dataset(gold, dir / "gold.jsonl");
  score::PredictionSet preds(Subtask::S1);
  for (const auto& r : gold.records()) preds.add(r.id, {r.labels->test(0) ? 1.0 : 0.0});
  {
    std::ofstream out(dir / "pred.jsonl");
    score::write_predictions(preds, out);
  }
  const auto r = run({"score", "--pred", (dir / "pred.jsonl").string(), "--gold", (dir / "gold.jsonl").string(),
                      "--subtask", "1", "--out", (dir / "o").string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(testing::slurp(dir / "o" / "summary.csv"), "language,macro_f1\namh,1.0000\neng,1.0000\n");
  const auto report = testing::slurp(dir / "o" / "report.csv");
  EXPECT_NE(report.find("eng,polarization,1.0000,1.0000,10"), std::string::npos) << report;
  EXPECT_NE(report.find("eng,no polarization,1.0000,1.0000,10"), std::string::npos) << report;
  EXPECT_EQ(listing(dir / "o"), (std::set<std::string>{"report.csv", "summary.csv", "auc_summary.csv", "table.txt",
                                                       "manifest.json"}));
  const auto m = manifest(dir / "o");
  EXPECT_EQ(m["inputs"].size(), 2u);
  EXPECT_EQ(m["inputs"][0]["sha256"].get<std::string>().size(), 64u);
  EXPECT_EQ(m["tool_version"], kToolVersion);
}

TEST(Cli, AssembleAndSample4400) {
  TempDir dir;
  const auto all = testing::binary_corpus(110);
  std::vector<TextRecord> train, dev;
  for (std::size_t i = 0; i < all.size(); ++i) (i % 5 == 0 ? dev : train).push_back(all[i]);
  write_dataset(Dataset(Subtask::S1, train), dir / "train.jsonl");
  write_dataset(Dataset(Subtask::S1, dev), dir / "dev.jsonl");
  auto r = run({"assemble", "--train", (dir / "train.jsonl").string(), "--dev", (dir / "dev.jsonl").string(),
                "--subtask", "1", "--out", (dir / "a").string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  r = run({"sample", "--in", (dir / "a" / "merged.jsonl").string(), "--subtask", "1", "--out", (dir / "s").string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(manifest(dir / "s")["counts"]["validation"], 4400);
  EXPECT_EQ(read_dataset(dir / "s" / "validation.jsonl", Subtask::S1).size(), 4400u);
  EXPECT_EQ(read_dataset(dir / "s" / "train.jsonl", Subtask::S1).size(), all.size() - 4400u);
}

TEST(Cli, AugmentIsByteIdenticalAcrossRuns) {
  TempDir dir;
  write_dataset(testing::binary_corpus(25, {Language::eng, Language::rus}), dir / "in.jsonl");
  for (const char* out : {"a", "b"}) {
    const auto r = run({"augment", "--in", (dir / "in.jsonl").string(), "--seed", "7", "--out", (dir / out).string()});
    ASSERT_EQ(r.code, kSuccess) << r.err;
  }
  EXPECT_EQ(testing::slurp(dir / "a" / "augmented.jsonl"), testing::slurp(dir / "b" / "augmented.jsonl"));
  EXPECT_EQ(testing::slurp(dir / "a" / "augment_stats.csv"), testing::slurp(dir / "b" / "augment_stats.csv"));
  EXPECT_EQ(manifest(dir / "a")["counts"]["homoglyphed_candidates"], 5);
  EXPECT_EQ(manifest(dir / "a")["seed"], 7);
}

TEST(Cli, AugmentHonoursConfusablesAndRefusesMultilabel) {
  TempDir dir;
  write_dataset(testing::binary_corpus(20, {Language::eng}), dir / "in.jsonl");
  testing::spit(dir / "t.tsv", "e\t\xD0\xB5\n");  // e -> Cyrillic ie only
  auto r = run({"augment", "--in", (dir / "in.jsonl").string(), "--out", (dir / "o").string(), "--confusables",
                (dir / "t.tsv").string(), "--per-technique-frac", "0,0,0,0.25", "--total-frac", "0.25"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto out = read_dataset(dir / "o" / "augmented.jsonl", Subtask::S1);
  std::size_t derived = 0;
  for (const auto& rec : out.records()) {
    if (rec.provenance != Provenance::homoglyphed) continue;
    ++derived;
    EXPECT_NE(rec.text.find("\xD0\xB5"), std::string::npos);
  }
  EXPECT_EQ(derived, 10u);
  testing::spit(dir / "bad.tsv", "e\te\n");
  r = run({"augment", "--in", (dir / "in.jsonl").string(), "--out", (dir / "p").string(), "--confusables",
           (dir / "bad.tsv").string()});
  EXPECT_EQ(r.code, kDataError);

  const Dataset multi(Subtask::S2, testing::multilabel_records(Subtask::S2, Language::eng, 10, {0.5, 0.5, 0.5, 0.5, 0.5}, 1));
  write_dataset(multi, dir / "m.jsonl");
  r = run({"augment", "--in", (dir / "m.jsonl").string(), "--subtask", "2", "--out", (dir / "q").string()});
  EXPECT_EQ(r.code, kDataError);
  r = run({"augment", "--in", (dir / "m.jsonl").string(), "--subtask", "2", "--allow-multilabel", "--out",
           (dir / "q").string()});
  EXPECT_EQ(r.code, kSuccess) << r.err;
}

TEST(Cli, ConfusablesFromEnvironment) {
  TempDir dir;
  write_dataset(testing::binary_corpus(20, {Language::eng}), dir / "in.jsonl");
  testing::spit(dir / "t.tsv", "q\t\xD4\x9B\n");  // only q; the texts contain no q
  ::setenv(kConfusablesEnv, (dir / "t.tsv").c_str(), 1);
  const auto r = run({"augment", "--in", (dir / "in.jsonl").string(), "--out", (dir / "o").string()});
  ::unsetenv(kConfusablesEnv);
  ASSERT_EQ(r.code, kSuccess) << r.err;
  // With nothing mappable the homoglyph copies equal their parents and are dropped.
  EXPECT_EQ(manifest(dir / "o")["counts"]["homoglyphed_kept"], 0);
}

TEST(Cli, DeltaAndPercentile) {
  TempDir dir;
  const auto f = testing::delta_fixture();
  {
    std::ofstream out(dir / "baseline.csv");
    score::write_summary_table(f.baseline, out);
  }
  auto r = run({"delta", "--mine", testing::fixture("submitted_macro_f1.csv").string(), "--baseline",
                (dir / "baseline.csv").string(), "--out", (dir / "d").string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_NE(r.out.find("Average,0.0326,0.0425,"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(dir / "d" / "delta.csv"));

  testing::spit(dir / "short.csv", "language,S1,S2,S3\neng,0.5,0.5,0.5\n");
  r = run({"delta", "--mine", testing::fixture("submitted_macro_f1.csv").string(), "--baseline",
           (dir / "short.csv").string()});
  EXPECT_EQ(r.code, kDataError);

  testing::spit(dir / "lb.txt", "# leaderboard\n0.5\n0.5\n0.3\n");
  r = run({"percentile", "--mine", "0.5", "--leaderboard", (dir / "lb.txt").string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(r.out, "33.3\n");
  r = run({"percentile", "--mine", "0.9", "--leaderboard", (dir / "lb.txt").string()});
  EXPECT_EQ(r.code, kDataError);
}

TEST(Cli, LogisticRegressionCommands) {
  TempDir dir;
  auto data = testing::separable_examples(60, 0.5, 3, Language::eng);
  const auto more = testing::separable_examples(40, 0.5, 4, Language::swa);
  std::vector<TextRecord> recs;
  appraisal::FeatureSet set;
  set.provenance = "synthetic";
  for (std::size_t i = 0; i < data.size(); ++i) {
    set.vectors.push_back(data.features[i]);
    recs.push_back(testing::make_record(data.features[i].id, "t", Language::eng, data.labels[i]));
  }
  for (std::size_t i = 0; i < more.size(); ++i) {
    auto v = more.features[i];
    v.id = "swa" + v.id;
    set.vectors.push_back(v);
    recs.push_back(testing::make_record(v.id, "t", Language::swa, more.labels[i]));
  }
  {
    std::ofstream out(dir / "f.jsonl");
    appraisal::write_features(set, out);
  }
  write_dataset(Dataset(Subtask::S1, recs), dir / "gold.jsonl");
  const auto features = (dir / "f.jsonl").string();
  const auto gold = (dir / "gold.jsonl").string();

  auto r = run({"lr", "eval", "--features", features, "--labels", gold, "--out", (dir / "e").string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto summary = testing::slurp(dir / "e" / "lr_macro_f1.csv");
  EXPECT_EQ(summary, "language,macro_f1\neng,1.0000\nswa,1.0000\n");
  EXPECT_EQ(testing::slurp(dir / "e" / "lr_auc.csv").substr(0, 22), "language,polarization\n");

  r = run({"lr", "train", "--features", features, "--labels", gold, "--out", (dir / "t").string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  r = run({"lr", "predict", "--features", features, "--model", (dir / "t" / "model.json").string(), "--out",
           (dir / "p").string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto preds = score::read_predictions(dir / "p" / "predictions.jsonl", Subtask::S1);
  EXPECT_EQ(preds.size(), 100u);
  r = run({"lr", "predict", "--features", features, "--subtask", "2", "--model",
           (dir / "t" / "model.json").string(), "--out", (dir / "q").string()});
  EXPECT_EQ(r.code, kDataError);
}

TEST(Cli, EmitConfig) {
  const auto r = run({"emit-config", "--subtask", "1"});
  ASSERT_EQ(r.code, kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["selection_metric"], "auc");
  EXPECT_EQ(doc["learning_rate"].get<double>(), 2e-5);
}

}  // namespace
}  // namespace polar::cli
