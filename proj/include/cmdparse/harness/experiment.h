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

#ifndef CMDPARSE_HARNESS_EXPERIMENT_H_
#define CMDPARSE_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmdparse/corpus.h"
#include "cmdparse/grammar.h"
#include "cmdparse/nn/config.h"
#include "cmdparse/nn/trainer.h"
#include "cmdparse/ontology.h"

namespace cmdparse {

enum class TrainSource { kGen, kPara, kGenPlusPara };
enum class TestSource { kGen, kPara };
enum class SplitKind { kCommand, kLogical };
enum class ModelKind { kOracle, kKnn, kSeq2Seq };

const char *SplitKindName(SplitKind kind);
SplitKind ParseSplitKind(std::string_view name);

struct Regime {
  TrainSource train = TrainSource::kGen;
  TestSource test = TestSource::kGen;

  bool operator==(const Regime &) const = default;
};

// "gen/gen", "gen/para", "para/para", "gen+para/para".
std::string RegimeName(const Regime &regime);
Regime ParseRegime(std::string_view name);
const std::vector<Regime> &AllRegimes();

struct ModelVariant {
  std::string name;
  ModelKind kind = ModelKind::kOracle;
  int knn_k = 1;
  nn::ModelConfig config;
  // Optional pretrained vector file for the frozen channel.
  std::string vectors_path;
};

nlohmann::json VariantToJson(const ModelVariant &variant);
// Relative vector paths are resolved against base_dir.
ModelVariant VariantFromJson(const nlohmann::json &json,
                             const std::string &base_dir = "");

struct ExperimentSpec {
  Regime regime;
  SplitKind split = SplitKind::kCommand;
  ModelVariant model;
  uint64_t seed = 1;
};

// Both corpora under both split protocols. The logical split is computed
// jointly so the two datasets agree on every form's part.
struct SplitCorpora {
  Dataset gen_command;
  Dataset para_command;
  Dataset gen_logical;
  Dataset para_logical;

  const Dataset &Generated(SplitKind kind) const;
  const Dataset &Paraphrased(SplitKind kind) const;
};

SplitCorpora PrepareSplits(const Dataset &generated,
                           const Dataset &paraphrased,
                           const SplitRatios &ratios, uint64_t seed);

struct ExperimentData {
  std::vector<CorpusPair> train;
  std::vector<CorpusPair> validation;
  std::vector<CorpusPair> test;
};

ExperimentData SelectData(const ExperimentSpec &spec,
                          const SplitCorpora &corpora);

// Training pairs that would leak into the test set: under a logical split a
// shared logical form, under a command split a shared command.
std::vector<int> FindLeaks(const std::vector<CorpusPair> &train,
                           const std::vector<CorpusPair> &test,
                           SplitKind kind);

struct ExperimentResult {
  double accuracy = 0;  // percent
  int correct = 0;
  int total = 0;
  // Canonical tokens of each prediction, empty when nothing was produced.
  std::vector<Tokens> predictions;
  std::vector<CorpusPair> test;
  std::optional<nn::TrainReport> train_report;
};

// Trains when needed, predicts every test pair and scores exact match on
// canonical token sequences. Throws CorpusError(kLeak) before training when
// FindLeaks reports anything.
ExperimentResult RunExperiment(const ExperimentSpec &spec,
                               const SplitCorpora &corpora,
                               const SynchronousGrammar &grammar);

// Accuracy rounded to one decimal.
std::string FormatAccuracy(double accuracy);

}  // namespace cmdparse

#endif  // CMDPARSE_HARNESS_EXPERIMENT_H_
