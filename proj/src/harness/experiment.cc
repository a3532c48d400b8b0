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

#include "cmdparse/harness/experiment.h"

#include <cstdio>
#include <filesystem>
#include <set>

#include "cmdparse/baselines.h"
#include "cmdparse/errors.h"
#include "cmdparse/nn/decoder.h"
#include "cmdparse/nn/vectors.h"

namespace cmdparse {

const char *SplitKindName(SplitKind kind) {
  return kind == SplitKind::kCommand ? "command" : "logical";
}

SplitKind ParseSplitKind(std::string_view name) {
  if (name == "command") return SplitKind::kCommand;
  if (name == "logical") return SplitKind::kLogical;
  throw Error("unknown split kind '" + std::string(name) + "'");
}

std::string RegimeName(const Regime &regime) {
  std::string train = regime.train == TrainSource::kGen    ? "gen"
                      : regime.train == TrainSource::kPara ? "para"
                                                           : "gen+para";
  return train + "/" + (regime.test == TestSource::kGen ? "gen" : "para");
}

Regime ParseRegime(std::string_view name) {
  for (const Regime &r : AllRegimes()) {
    if (RegimeName(r) == name) return r;
  }
  throw Error("unknown regime '" + std::string(name) + "'");
}

const std::vector<Regime> &AllRegimes() {
  static const std::vector<Regime> regimes = {
      {TrainSource::kGen, TestSource::kGen},
      {TrainSource::kGen, TestSource::kPara},
      {TrainSource::kPara, TestSource::kPara},
      {TrainSource::kGenPlusPara, TestSource::kPara},
  };
  return regimes;
}

nlohmann::json VariantToJson(const ModelVariant &variant) {
  nlohmann::json out = {{"name", variant.name}};
  switch (variant.kind) {
    case ModelKind::kOracle:
      out["type"] = "oracle";
      break;
    case ModelKind::kKnn:
      out["type"] = "knn";
      out["k"] = variant.knn_k;
      break;
    case ModelKind::kSeq2Seq:
      out["type"] = "seq2seq";
      out["config"] = nn::ConfigToJson(variant.config);
      if (!variant.vectors_path.empty()) out["vectors"] = variant.vectors_path;
      break;
  }
  return out;
}

ModelVariant VariantFromJson(const nlohmann::json &json,
                             const std::string &base_dir) {
  ModelVariant v;
  v.name = json.at("name").get<std::string>();
  const std::string type = json.at("type").get<std::string>();
  if (type == "oracle") {
    v.kind = ModelKind::kOracle;
  } else if (type == "knn") {
    v.kind = ModelKind::kKnn;
    v.knn_k = json.value("k", 1);
  } else if (type == "seq2seq") {
    v.kind = ModelKind::kSeq2Seq;
    if (json.contains("config")) v.config = nn::ConfigFromJson(json["config"]);
    if (json.contains("vectors")) {
      std::filesystem::path p = json["vectors"].get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      v.vectors_path = p.string();
    }
  } else {
    throw Error("unknown model type '" + type + "'");
  }
  return v;
}

const Dataset &SplitCorpora::Generated(SplitKind kind) const {
  return kind == SplitKind::kCommand ? gen_command : gen_logical;
}

const Dataset &SplitCorpora::Paraphrased(SplitKind kind) const {
  return kind == SplitKind::kCommand ? para_command : para_logical;
}

SplitCorpora PrepareSplits(const Dataset &generated,
                           const Dataset &paraphrased,
                           const SplitRatios &ratios, uint64_t seed) {
  SplitCorpora out;
  out.gen_command = SplitByCommand(generated, ratios, seed);
  out.para_command = SplitByCommand(paraphrased, ratios, seed);
  std::tie(out.gen_logical, out.para_logical) =
      SplitByLogicalForm(generated, paraphrased, ratios, seed);
  return out;
}

ExperimentData SelectData(const ExperimentSpec &spec,
                          const SplitCorpora &corpora) {
  const Dataset &gen = corpora.Generated(spec.split);
  const Dataset &para = corpora.Paraphrased(spec.split);
  ExperimentData data;
  auto append = [](std::vector<CorpusPair> &to, std::vector<CorpusPair> from) {
    to.insert(to.end(), from.begin(), from.end());
  };
  if (spec.regime.train != TrainSource::kPara) {
    append(data.train, gen.Subset(Partition::kTrain));
    append(data.validation, gen.Subset(Partition::kValidation));
  }
  if (spec.regime.train != TrainSource::kGen) {
    append(data.train, para.Subset(Partition::kTrain));
    append(data.validation, para.Subset(Partition::kValidation));
  }
  data.test = (spec.regime.test == TestSource::kGen ? gen : para)
                  .Subset(Partition::kTest);
  return data;
}

std::vector<int> FindLeaks(const std::vector<CorpusPair> &train,
                           const std::vector<CorpusPair> &test,
                           SplitKind kind) {
  auto key = [kind](const CorpusPair &p) {
    return kind == SplitKind::kLogical ? p.LfText() : p.CommandText();
  };
  std::set<std::string> held_out;
  for (const CorpusPair &p : test) held_out.insert(key(p));
  std::vector<int> leaks;
  for (size_t i = 0; i < train.size(); ++i) {
    if (held_out.count(key(train[i]))) leaks.push_back(static_cast<int>(i));
  }
  return leaks;
}

ExperimentResult RunExperiment(const ExperimentSpec &spec,
                               const SplitCorpora &corpora,
                               const SynchronousGrammar &grammar) {
  ExperimentData data = SelectData(spec, corpora);
  std::vector<CorpusPair> seen = data.train;
  seen.insert(seen.end(), data.validation.begin(), data.validation.end());
  std::vector<int> leaks = FindLeaks(seen, data.test, spec.split);
  if (!leaks.empty()) {
    throw CorpusError(CorpusError::Kind::kLeak,
                      std::to_string(leaks.size()) +
                          " training pairs overlap the test set, first: " +
                          seen[leaks[0]].CommandText());
  }

  ExperimentResult result;
  result.test = data.test;
  std::function<Tokens(const Tokens &)> predict;
  std::optional<KnnIndex> knn;
  std::optional<nn::Seq2SeqModel> model;
  switch (spec.model.kind) {
    case ModelKind::kOracle:
      predict = [&](const Tokens &command) {
        std::optional<LogicalForm> lf = OraclePredict(grammar, command);
        return lf ? PrintLf(*lf) : Tokens();
      };
      break;
    case ModelKind::kKnn:
      knn.emplace(seen, spec.model.knn_k);
      predict = [&](const Tokens &command) {
        return PrintLf(knn->Predict(command));
      };
      break;
    case ModelKind::kSeq2Seq: {
      nn::ModelConfig config = spec.model.config;
      config.seed = spec.seed;
      auto [source, target] = BuildVocab(data.train);
      nn::Matrix frozen;
      if (!spec.model.vectors_path.empty()) {
        frozen = nn::LoadPretrainedVectors(spec.model.vectors_path, source);
      }
      model.emplace(config, std::move(source), std::move(target), frozen);
      result.train_report = nn::Train(*model, data.train, data.validation);
      predict = [&](const Tokens &command) {
        std::vector<nn::Hypothesis> beam =
            nn::DecodeBeam(*model, command, model->config().beam_width,
                           model->config().max_decode_len);
        if (beam.empty() || !beam[0].finished) return Tokens();
        return beam[0].tokens;
      };
      break;
    }
  }

  for (const CorpusPair &p : data.test) {
    Tokens predicted = predict(p.command);
    if (!predicted.empty() && predicted == PrintLf(p.lf)) ++result.correct;
    result.predictions.push_back(std::move(predicted));
  }
  result.total = static_cast<int>(data.test.size());
  result.accuracy =
      result.total == 0 ? 0.0 : 100.0 * result.correct / result.total;
  return result;
}

std::string FormatAccuracy(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", accuracy);
  return buf;
}

}  // namespace cmdparse
