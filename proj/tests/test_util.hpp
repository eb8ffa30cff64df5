#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polar/polar.hpp"

namespace polar::testing {

namespace fs = std::filesystem;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "polar") {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            (tag + "_" + std::to_string(rd()) + "_" + std::to_string(++counter));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline TextRecord make_record(std::string id, std::string text, Language lang,
                              std::optional<SubtaskLabels> labels, Split split = Split::train) {
  TextRecord r;
  r.id = std::move(id);
  r.text = std::move(text);
  r.lang = lang;
  r.labels = std::move(labels);
  r.split = split;
  return r;
}

inline SubtaskLabels s1(int bit) { return SubtaskLabels(Subtask::S1, {bit}); }

// `per_cell` records for every (language, class) cell of subtask 1, with
// distinct mixed-case texts.
inline Dataset binary_corpus(std::size_t per_cell, const std::vector<Language>& languages = {}) {
  std::vector<Language> langs = languages;
  if (langs.empty()) {
    for (auto l : all_languages()) langs.push_back(l);
  }
  std::vector<TextRecord> records;
  for (auto lang : langs) {
    for (int label : {0, 1}) {
      for (std::size_t i = 0; i < per_cell; ++i) {
        const std::string code(to_string(lang));
        records.push_back(make_record(code + "-" + std::to_string(label) + "-" + std::to_string(i),
                                      "Text " + code + " class " + std::to_string(label) + " item " +
                                          std::to_string(i) + " mail me@example.org",
                                      lang, s1(label)));
      }
    }
  }
  return Dataset(Subtask::S1, std::move(records));
}

// Independent Bernoulli(freq[j]) labels for `n` records of one language.
inline std::vector<TextRecord> multilabel_records(Subtask subtask, Language lang, std::size_t n,
                                                  const std::vector<double>& freq, std::uint64_t seed,
                                                  const std::string& prefix = "r") {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<TextRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    SubtaskLabels labels(subtask);
    for (std::size_t j = 0; j < freq.size(); ++j) labels.set(j, u(gen) < freq[j]);
    out.push_back(make_record(prefix + std::to_string(i), "text " + prefix + std::to_string(i), lang, labels));
  }
  return out;
}

// Random strings over a multi-script alphabet: Latin with Turkish and German
// specials, Cyrillic, Greek, CJK, Khmer, Ethiopic, Devanagari, Arabic,
// combining marks, digits, and the characters that matter to anonymization.
inline std::string random_multilingual(std::mt19937_64& gen, std::size_t max_len = 40) {
  static const std::u32string alphabet =
      U"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
      U"İıßŉǰẞ"
      U"абвгдежзийклмнопрстуфхцчшщъыьэюяАБВГДЕЖЗИЙКЛМНОПРСТУФХЦЧШЩЪЫЬЭЮЯ"
      U"αβγδεζηθικλμνξοπρστυφχψωςΑΒΓΔΕΖΗΘΙΚΛΜΝΞΟΠΡΣΤΥΦΧΨΩ"
      U"你好世界中文"
      U"កខគឃង"
      U"ሀለሐመሠ"
      U"कखगघङ०१२"
      U"ابتثج٠١٢"
      U"́̈̇"
      U"0123456789"
      U"@@@...---+++()  __[]#\t";
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::u32string s;
  const auto n = len(gen);
  for (std::size_t i = 0; i < n; ++i) s.push_back(alphabet[pick(gen)]);
  return unicode::encode(s);
}

inline fs::path fixture(const std::string& name) {
  return fs::path(POLAR_SOURCE_DIR) / "tests" / "fixtures" / name;
}

// The submitted per-language macro-F1 table and a baseline reconstructed from
// it and the published per-language deltas.
struct DeltaFixture {
  score::SummaryTable mine;
  score::SummaryTable published_delta;
  score::SummaryTable baseline;
};

inline DeltaFixture delta_fixture() {
  DeltaFixture f;
  f.mine = score::read_summary_csv(fixture("submitted_macro_f1.csv"));
  f.published_delta = score::read_summary_csv(fixture("published_delta.csv"));
  f.baseline = f.mine;
  for (auto& [lang, row] : f.baseline.rows) {
    const auto& d = f.published_delta.rows.at(lang);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] && d[c]) {
        *row[c] -= *d[c];
      } else {
        row[c].reset();
      }
    }
  }
  return f;
}

// Exhaustive pairwise AUC: ties count one half.
inline double pairwise_auc(const std::vector<double>& scores, const std::vector<int>& gold) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!gold[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (gold[j]) continue;
      pairs += 1.0;
      wins += scores[i] > scores[j] ? 1.0 : scores[i] == scores[j] ? 0.5 : 0.0;
    }
  }
  return wins / pairs;
}

// Norm-based relative error between the analytic gradient of multitask_loss
// and central finite differences with step h.
inline double gradient_check_error(const appraisal::AppraisalOutputs& pred,
                                   const appraisal::AppraisalTargets& target,
                                   const appraisal::MultitaskLossConfig& cfg, double h) {
  const auto analytic = appraisal::multitask_loss(pred, target, cfg).gradient;
  std::vector<double> g;
  std::vector<double> fd;
  auto probe = [&](auto member, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      auto plus = pred;
      auto minus = pred;
      (plus.*member)[i] += h;
      (minus.*member)[i] -= h;
      fd.push_back((appraisal::multitask_loss(plus, target, cfg).loss -
                    appraisal::multitask_loss(minus, target, cfg).loss) / (2.0 * h));
      g.push_back((analytic.*member)[i]);
    }
  };
  probe(&appraisal::AppraisalOutputs::emotions, appraisal::kEmotionCount);
  probe(&appraisal::AppraisalOutputs::appraisal_logits, appraisal::kAppraisalCount);
  probe(&appraisal::AppraisalOutputs::event_logits, appraisal::kEventCount);
  double diff = 0.0;
  double ng = 0.0;
  double nfd = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    diff += (g[i] - fd[i]) * (g[i] - fd[i]);
    ng += g[i] * g[i];
    nfd += fd[i] * fd[i];
  }
  const double scale = std::max(std::sqrt(ng), std::sqrt(nfd));
  return scale == 0.0 ? std::sqrt(diff) : std::sqrt(diff) / scale;
}

inline void random_loss_instance(std::mt19937_64& gen, appraisal::AppraisalOutputs& pred,
                                 appraisal::AppraisalTargets& target,
                                 appraisal::MultitaskLossConfig& cfg) {
  std::uniform_real_distribution<double> logit(-6.0, 6.0);
  std::uniform_real_distribution<double> emo(-0.5, 1.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto& e : pred.emotions) e = emo(gen);
  for (auto& z : pred.appraisal_logits) z = logit(gen);
  for (auto& z : pred.event_logits) z = logit(gen);
  for (auto& t : target.emotions) t = unit(gen);
  for (auto&& b : target.appraisals) b = gen() & 1u;
  for (auto&& b : target.events) b = gen() & 1u;
  cfg.w_mse = 2.0 * unit(gen);
  cfg.w_bce = 2.0 * unit(gen) + 0.01;
}

// 2-D points labelled by the side of the line x + y = 0, keeping only points
// at distance >= margin from it.
inline appraisal::LabeledExamples separable_examples(std::size_t n, double margin, std::uint64_t seed,
                                                     Language lang = Language::eng) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  appraisal::LabeledExamples out;
  while (out.size() < n) {
    const double x = u(gen);
    const double y = u(gen);
    const double d = (x + y) / std::sqrt(2.0);
    if (std::abs(d) < margin) continue;
    out.features.push_back({"p" + std::to_string(out.size()), lang, {x, y}});
    out.labels.push_back(s1(d > 0 ? 1 : 0));
  }
  return out;
}

// Standard normal features unrelated to balanced S1 labels.
inline appraisal::LabeledExamples noise_examples(std::size_t n, std::size_t dim, std::uint64_t seed,
                                                 Language lang = Language::eng) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  appraisal::LabeledExamples out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(dim);
    for (auto& x : v) x = z(gen);
    out.features.push_back({"n" + std::to_string(i), lang, std::move(v)});
    out.labels.push_back(s1(static_cast<int>(i % 2)));
  }
  return out;
}

// From-scratch confusion counting, one column per report label.
inline double oracle_macro_f1(Subtask subtask, const std::vector<std::vector<int>>& gold,
                       const std::vector<std::vector<bool>>& decisions) {
  const std::size_t width = schema_for(subtask).width();
  std::vector<std::array<std::int64_t, 3>> cols;
  for (std::size_t j = 0; j < width; ++j) {
    std::array<std::int64_t, 3> c{0, 0, 0};
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const bool g = gold[i][j] == 1;
      const bool d = decisions[i][j];
      c[0] += g && d;
      c[1] += !g && d;
      c[2] += g && !d;
    }
    cols.push_back(c);
    if (subtask == Subtask::S1) {
      std::array<std::int64_t, 3> neg{0, 0, 0};
      for (std::size_t i = 0; i < gold.size(); ++i) {
        const bool g = gold[i][j] == 0;
        const bool d = !decisions[i][j];
        neg[0] += g && d;
        neg[1] += !g && d;
        neg[2] += g && !d;
      }
      cols.push_back(neg);
    }
  }
  double sum = 0.0;
  for (const auto& c : cols) {
    const auto denom = 2 * c[0] + c[1] + c[2];
    sum += denom == 0 ? 0.0 : 2.0 * double(c[0]) / double(denom);
  }
  return sum / double(cols.size());
}

}  // namespace polar::testing
