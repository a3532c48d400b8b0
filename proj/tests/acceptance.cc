// Copyright 2026 The cmdparse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cmdparse/anonymizer.h"
#include "cmdparse/deanonymizer.h"
#include "cmdparse/errors.h"
#include "cmdparse/harness/experiment.h"
#include "cmdparse/harness/matrix.h"
#include "cmdparse/log.h"
#include "cmdparse/nn/decoder.h"
#include "cmdparse/nn/trainer.h"
#include "cmdparse/text_metrics.h"
#include "nn_fixtures.h"

namespace cmdparse {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fixed(double v, int digits = 1) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

Dataset Generated() {
  Dataset d;
  d.pairs = EnumerateAnonymized(testing::MiniGrammar());
  return d;
}

Dataset RawParaphrases() {
  return LoadJsonl(testing::DataPath("paraphrases.jsonl"), testing::Registry(),
                   Origin::kParaphrased);
}

Dataset Paraphrases() {
  return AnonymizeCommands(RawParaphrases(), testing::MiniOntology());
}

const SplitCorpora &Corpora() {
  static const SplitCorpora c =
      PrepareSplits(Generated(), Paraphrases(), {}, 1);
  return c;
}

ModelVariant Variant(const char *name, ModelKind kind) {
  ModelVariant v;
  v.name = name;
  v.kind = kind;
  return v;
}

Outcome OracleExactness() {
  auto start = Clock::now();
  std::string detail;
  bool pass = true;
  for (SplitKind split : {SplitKind::kCommand, SplitKind::kLogical}) {
    ExperimentResult r = RunExperiment(
        {AllRegimes()[0], split, Variant("oracle", ModelKind::kOracle), 1}, Corpora(),
        testing::MiniGrammar());
    pass &= r.accuracy == 100.0 && r.total > 0;
    detail += std::string(SplitKindName(split)) + " " +
              FormatAccuracy(r.accuracy) + " (" + std::to_string(r.total) +
              " pairs), ";
  }
  const double t = Seconds(start);
  pass &= t < 10.0;
  return {pass, detail + Fixed(t, 2) + " s"};
}

Outcome KnnLogicalZero() {
  bool pass = true;
  std::string detail;
  for (const Regime &r : AllRegimes()) {
    ExperimentResult res = RunExperiment(
        {r, SplitKind::kLogical, Variant("knn", ModelKind::kKnn), 1}, Corpora(),
        testing::MiniGrammar());
    pass &= res.accuracy == 0.0 && res.total > 0;
    detail += RegimeName(r) + " " + FormatAccuracy(res.accuracy) + " ";
  }
  return {pass, detail};
}

// Models trained for the desk-scale fit, reused by the beam check.
std::vector<nn::Seq2SeqModel> &TrainedModels() {
  static std::vector<nn::Seq2SeqModel> models;
  return models;
}

Outcome Seq2SeqDeskFit() {
  auto start = Clock::now();
  bool pass = true;
  std::string detail;
  ExperimentData data = SelectData(
      {AllRegimes()[0], SplitKind::kCommand, {}, 1}, Corpora());
  for (uint64_t seed : {1, 2, 3}) {
    nn::ModelConfig config = testing::DeskConfig();
    config.seed = seed;
    nn::Seq2SeqModel model = testing::MakeModel(data.train, config);
    nn::TrainReport report = nn::Train(model, data.train, data.validation);
    double acc = nn::ExactMatchAccuracy(model, data.test, config.beam_width,
                                        config.max_decode_len);
    pass &= acc >= 95.0;
    detail += "seed " + std::to_string(seed) + " " + FormatAccuracy(acc) +
              " (epoch " + std::to_string(report.best_epoch) + "), ";
    TrainedModels().push_back(std::move(model));
  }
  const double t = Seconds(start);
  pass &= t < 30 * 60;
  return {pass, detail + "train " + std::to_string(data.train.size()) +
                    ", test " + std::to_string(data.test.size()) + ", " +
                    Fixed(t) + " s"};
}

Outcome OverfitCapacity() {
  auto start = Clock::now();
  std::vector<CorpusPair> pairs = testing::Stride(50, 10);
  nn::ModelConfig config = testing::DeskConfig();
  config.max_epochs = 150;
  // Fit the training set itself; only the epoch budget or a perfect score
  // ends the run.
  config.patience = config.max_epochs;
  // Fifty pairs give few updates per epoch at batch 8.
  config.batch_size = 4;
  config.encoder_dropout = 0.1;
  nn::Seq2SeqModel model = testing::MakeModel(pairs, config);
  nn::TrainReport report = nn::Train(model, pairs, pairs);
  double acc = nn::ExactMatchAccuracy(model, pairs, config.beam_width,
                                      config.max_decode_len);
  const double t = Seconds(start);
  return {pairs.size() == 50 && acc == 100.0 && t < 300,
          "training exact match " + FormatAccuracy(acc) + " after " +
              std::to_string(report.epochs.size()) + " epochs, " + Fixed(t) +
              " s"};
}

Outcome GradientCorrectness() {
  std::vector<CorpusPair> pairs = testing::Stride(3, 97);
  nn::ModelConfig config = testing::TinyConfig(8, 6);
  auto [source, target] = BuildVocab(pairs);
  nn::Matrix frozen = nn::Matrix::Constant(source.size(), 3, 0.1);
  nn::Seq2SeqModel model(config, source, target, frozen);
  nn::GradientCheckReport report = nn::GradientCheck(model, pairs, 1e-5, 1e-4);
  double worst = 0;
  std::string worst_name;
  for (const nn::ParamCheck &c : report.params) {
    if (c.max_relative_error >= worst) {
      worst = c.max_relative_error;
      worst_name = c.name;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2e", worst);
  return {report.passed && report.params.size() == nn::kNumParams,
          std::to_string(report.params.size()) + " tensors, worst " +
              worst_name + " " + buf};
}

Outcome RoundTrips() {
  int forms = 0, bad_forms = 0, commands = 0, bad_commands = 0;
  std::vector<CorpusPair> all = Generated().pairs;
  for (const CorpusPair &p : RawParaphrases().pairs) all.push_back(p);
  for (uint64_t seed = 0; seed < 500; ++seed)
    all.push_back(
        SamplePair(testing::MiniGrammar(), testing::MiniOntology(), seed));
  for (const CorpusPair &p : all) {
    ++forms;
    if (ParseLf(PrintLf(p.lf), testing::Registry()) != p.lf) ++bad_forms;
    ++commands;
    AnonymizedCommand a = Anonymize(p.command, testing::MiniOntology());
    if (DeanonymizeCommand(a) != p.command) ++bad_commands;
  }
  return {bad_forms == 0 && bad_commands == 0,
          std::to_string(forms - bad_forms) + "/" + std::to_string(forms) +
              " forms, " + std::to_string(commands - bad_commands) + "/" +
              std::to_string(commands) + " commands"};
}

Outcome SplitInvariants() {
  const SplitCorpora &c = Corpora();
  int violations = 0;
  for (const Dataset *d : {&c.gen_command, &c.para_command}) {
    std::map<std::string, Partition> part;
    for (const CorpusPair &p : d->pairs) {
      auto [it, inserted] = part.emplace(p.CommandText(), p.split);
      if (it->second != p.split) ++violations;
    }
  }
  const int command_violations = violations;
  std::map<std::string, Partition> form_part;
  for (const Dataset *d : {&c.gen_logical, &c.para_logical}) {
    for (const CorpusPair &p : d->pairs) {
      if (p.split == Partition::kUnassigned) ++violations;
      auto [it, inserted] = form_part.emplace(p.LfText(), p.split);
      if (it->second != p.split) ++violations;
    }
  }
  const int logical_violations = violations - command_violations;
  int leaks = 0;
  for (SplitKind kind : {SplitKind::kCommand, SplitKind::kLogical}) {
    ExperimentData d = SelectData({AllRegimes()[3], kind, {}, 1}, c);
    std::vector<CorpusPair> seen = d.train;
    seen.insert(seen.end(), d.validation.begin(), d.validation.end());
    leaks += static_cast<int>(FindLeaks(seen, d.test, kind).size());
  }
  const bool fixture = c.para_logical.pairs.size() == 20;
  return {violations == 0 && leaks == 0 && fixture,
          "command straddles " + std::to_string(command_violations) +
              ", logical pool conflicts " + std::to_string(logical_violations) +
              ", gen+para leaks " + std::to_string(leaks) + ", paraphrases " +
              std::to_string(c.para_logical.pairs.size())};
}

Outcome DeanonymizationDialogue() {
  const Ontology &o = testing::MiniOntology();
  AnonymizedCommand two = Anonymize(
      SplitWhitespace(
          "move the apple from the kitchen counter to the dining table"),
      o);
  ScriptedResolver r2({"#1", "#2"});
  DeanonymizedForm f2 = DeanonymizeLf(
      testing::Lf(R"(( bring ( λ $1 e ( is_a $1 " <object> " ) ( at $1 " <location> " ) ) " <location> " ))"),
      two, std::ref(r2), o);
  AnonymizedCommand one =
      Anonymize(SplitWhitespace("fetch an apple from the kitchen"), o);
  ScriptedResolver r1({});
  DeanonymizedForm f1 = DeanonymizeLf(
      testing::Lf(R"(( bring ( λ $1 e ( is_a $1 " <object> " ) ( at $1 " <location> " ) ) ))"),
      one, std::ref(r1), o);
  bool pass = f2.queries.size() == 2 && ClassTokensOf(f2.lf).empty() &&
              f1.queries.empty() && ClassTokensOf(f1.lf).empty();
  return {pass, "two locations: " + std::to_string(f2.queries.size()) +
                    " queries, single entities: " +
                    std::to_string(f1.queries.size()) + " queries; " +
                    PrintLfString(f2.lf)};
}

Outcome BeamGreedyEquivalence() {
  if (TrainedModels().empty()) return {false, "no trained model"};
  const nn::Seq2SeqModel &model = TrainedModels()[0];
  std::mt19937_64 rng(2024);
  const std::vector<std::string> &words = model.source_vocab().tokens();
  int same = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Tokens input;
    const int len = 1 + static_cast<int>(rng() % 12);
    for (int k = 0; k < len; ++k)
      input.push_back(words[Vocabulary::kNumReserved +
                            rng() % (words.size() - Vocabulary::kNumReserved)]);
    std::vector<nn::Hypothesis> beam = nn::DecodeBeam(model, input, 1, 80);
    nn::Hypothesis greedy = nn::DecodeGreedy(model, input, 80);
    if (beam.size() == 1 && beam[0].ids == greedy.ids &&
        beam[0].finished == greedy.finished)
      ++same;
  }
  return {same == 100, std::to_string(same) + "/100 identical"};
}

Outcome MatrixDeterminism() {
  MatrixConfig config = LoadMatrixConfig(testing::ConfigPath("baselines.json"));
  ModelVariant small = Variant("seq2seq-small", ModelKind::kSeq2Seq);
  small.config = testing::TinyConfig(16, 8);
  small.config.max_epochs = 3;
  config.models.push_back(small);
  const fs::path base = fs::temp_directory_path() / "cmdparse_acceptance";
  fs::remove_all(base);
  auto start = Clock::now();
  RunMatrix(config, (base / "a").string());
  RunMatrix(config, (base / "b").string());
  bool same = true;
  for (const char *name : {"results.txt", "results.json"}) {
    same &= ReadFile((base / "a" / name).string()) ==
            ReadFile((base / "b" / name).string());
  }
  std::string table = ReadFile((base / "a" / "results.txt").string());
  fs::remove_all(base);
  return {same, "two fresh runs of " + std::to_string(config.models.size()) +
                    " models x 8 cells identical=" + (same ? "yes" : "no") +
                    ", " + Fixed(Seconds(start)) + " s"};
}

Outcome MetricOracles() {
  std::mt19937_64 rng(99);
  int lev_bad = 0, jac_bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::string a(rng() % 13, 'a'), b(rng() % 13, 'a');
    for (char &ch : a) ch = static_cast<char>('a' + rng() % 5);
    for (char &ch : b) ch = static_cast<char>('a' + rng() % 5);
    std::vector<std::vector<int>> d(a.size() + 1,
                                    std::vector<int>(b.size() + 1));
    for (size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
    for (size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
    for (size_t i = 1; i <= a.size(); ++i)
      for (size_t j = 1; j <= b.size(); ++j)
        d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                            d[i - 1][j - 1] + (a[i - 1] != b[j - 1] ? 1 : 0)});
    if (Levenshtein(a, b) != d[a.size()][b.size()]) ++lev_bad;
  }
  for (int trial = 0; trial < 1000; ++trial) {
    std::set<std::string> a, b;
    for (int k = 0; k < static_cast<int>(rng() % 9); ++k)
      a.insert("w" + std::to_string(rng() % 12));
    for (int k = 0; k < static_cast<int>(rng() % 9); ++k)
      b.insert("w" + std::to_string(rng() % 12));
    size_t inter = 0;
    for (const std::string &x : a) inter += b.count(x);
    const size_t uni = a.size() + b.size() - inter;
    const double expected =
        uni == 0 ? 0.0 : 1.0 - static_cast<double>(inter) / uni;
    if (std::abs(JaccardDistance(a, b) - expected) > 1e-12) ++jac_bad;
  }
  return {lev_bad == 0 && jac_bad == 0,
          "levenshtein mismatches " + std::to_string(lev_bad) +
              "/1000, jaccard mismatches " + std::to_string(jac_bad) + "/1000"};
}

}  // namespace
}  // namespace cmdparse

int main() {
  using namespace cmdparse;
  SetWarningSink(nullptr);
  struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "oracle exactness", OracleExactness},
      {2, "knn logical-split zero", KnnLogicalZero},
      {3, "seq2seq desk-scale fit", Seq2SeqDeskFit},
      {4, "overfit capacity", OverfitCapacity},
      {5, "gradient correctness", GradientCorrectness},
      {6, "round trips", RoundTrips},
      {7, "split invariants", SplitInvariants},
      {8, "deanonymization dialogue", DeanonymizationDialogue},
      {9, "beam/greedy equivalence", BeamGreedyEquivalence},
      {10, "matrix determinism", MatrixDeterminism},
      {11, "metric oracles", MetricOracles},
  };
  int failed = 0;
  for (const Criterion &c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name
              << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
