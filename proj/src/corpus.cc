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

#include "cmdparse/corpus.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "cmdparse/anonymizer.h"
#include "cmdparse/errors.h"
#include "cmdparse/log.h"
#include "cmdparse/strings.h"

namespace cmdparse {

const char *SplitName(Partition split) {
  switch (split) {
    case Partition::kUnassigned: return "unassigned";
    case Partition::kTrain: return "train";
    case Partition::kValidation: return "validation";
    case Partition::kTest: return "test";
  }
  return "?";
}

Partition ParseSplitName(std::string_view name) {
  if (name == "train") return Partition::kTrain;
  if (name == "validation") return Partition::kValidation;
  if (name == "test") return Partition::kTest;
  if (name == "unassigned") return Partition::kUnassigned;
  throw CorpusError(CorpusError::Kind::kMalformed,
                    "unknown split '" + std::string(name) + "'");
}

std::vector<CorpusPair> Dataset::Subset(Partition split) const {
  std::vector<CorpusPair> out;
  for (const CorpusPair &p : pairs)
    if (p.split == split) out.push_back(p);
  return out;
}

int Dataset::Count(Partition split) const {
  return static_cast<int>(std::count_if(
      pairs.begin(), pairs.end(),
      [split](const CorpusPair &p) { return p.split == split; }));
}

namespace {

struct Group {
  std::string key;
  uint64_t hash = 0;
  int weight = 0;
  Partition split = Partition::kUnassigned;
};

int Target(double ratio, int total) {
  return static_cast<int>(std::floor(ratio * total + 1e-9));
}

// Orders groups by hash and fills train, validation, then test.
void AssignGroups(std::vector<Group> &groups, const SplitRatios &ratios,
                  int total) {
  std::sort(groups.begin(), groups.end(), [](const Group &a, const Group &b) {
    return a.hash != b.hash ? a.hash < b.hash : a.key < b.key;
  });
  const int train_target = Target(ratios.train, total);
  const int validation_target = Target(ratios.validation, total);
  int train = 0, validation = 0;
  for (Group &g : groups) {
    if (train < train_target) {
      g.split = Partition::kTrain;
      train += g.weight;
    } else if (validation < validation_target) {
      g.split = Partition::kValidation;
      validation += g.weight;
    } else {
      g.split = Partition::kTest;
    }
  }
}

}  // namespace

Dataset SplitByCommand(const Dataset &dataset, const SplitRatios &ratios,
                       uint64_t seed) {
  const int n = static_cast<int>(dataset.pairs.size());
  if (n < 10) {
    throw CorpusError(CorpusError::Kind::kTooFewPairs,
                      "need at least 10 pairs to split, got " +
                          std::to_string(n));
  }
  std::map<std::string, size_t> index;
  std::vector<Group> groups;
  for (const CorpusPair &p : dataset.pairs) {
    std::string key = p.CommandText();
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) groups.push_back({key, StableHash(key, seed), 0});
    ++groups[it->second].weight;
  }
  AssignGroups(groups, ratios, n);
  std::map<std::string, Partition> assignment;
  for (const Group &g : groups) assignment[g.key] = g.split;
  Dataset out = dataset;
  for (CorpusPair &p : out.pairs) p.split = assignment.at(p.CommandText());
  return out;
}

std::pair<Dataset, Dataset> SplitByLogicalForm(const Dataset &generated,
                                               const Dataset &paraphrased,
                                               const SplitRatios &ratios,
                                               uint64_t seed) {
  std::map<std::string, size_t> index;
  std::vector<Group> groups;
  auto add = [&](const CorpusPair &p) {
    std::string key = p.LfText();
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) groups.push_back({key, StableHash(key, seed), 0});
    ++groups[it->second].weight;
  };
  for (const CorpusPair &p : generated.pairs) add(p);
  const size_t generated_forms = groups.size();
  for (const CorpusPair &p : paraphrased.pairs) add(p);
  if (groups.size() > generated_forms) {
    LogWarning(std::to_string(groups.size() - generated_forms) +
               " paraphrase logical form(s) absent from the generated data");
  }
  if (groups.size() < 10) {
    throw CorpusError(CorpusError::Kind::kTooFewForms,
                      "need at least 10 distinct logical forms, got " +
                          std::to_string(groups.size()));
  }
  const int total =
      static_cast<int>(generated.pairs.size() + paraphrased.pairs.size());
  AssignGroups(groups, ratios, total);
  std::map<std::string, Partition> assignment;
  for (const Group &g : groups) assignment[g.key] = g.split;
  Dataset gen = generated, para = paraphrased;
  for (CorpusPair &p : gen.pairs) p.split = assignment.at(p.LfText());
  for (CorpusPair &p : para.pairs) p.split = assignment.at(p.LfText());
  return {std::move(gen), std::move(para)};
}

Vocabulary::Vocabulary()
    : Vocabulary(std::vector<std::string>{"<pad>", "<start>", "<end>",
                                          "<unk>"}) {}

Vocabulary::Vocabulary(const std::vector<std::string> &tokens) {
  if (tokens.size() < kNumReserved) {
    throw Error("vocabulary must contain the reserved tokens");
  }
  for (const std::string &t : tokens) {
    if (token_to_id_.count(t)) throw Error("duplicate vocabulary token " + t);
    token_to_id_[t] = static_cast<int>(id_to_token_.size());
    id_to_token_.push_back(t);
  }
}

int Vocabulary::Add(const std::string &token) {
  auto it = token_to_id_.find(token);
  if (it != token_to_id_.end()) return it->second;
  int id = static_cast<int>(id_to_token_.size());
  token_to_id_[token] = id;
  id_to_token_.push_back(token);
  return id;
}

int Vocabulary::Id(const std::string &token) const {
  auto it = token_to_id_.find(token);
  if (it == token_to_id_.end() || it->second < kNumReserved) return kUnk;
  return it->second;
}

bool Vocabulary::Contains(const std::string &token) const {
  auto it = token_to_id_.find(token);
  return it != token_to_id_.end() && it->second >= kNumReserved;
}

std::vector<int> Vocabulary::Encode(const Tokens &tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const std::string &t : tokens) ids.push_back(Id(t));
  return ids;
}

std::pair<Vocabulary, Vocabulary> BuildVocab(
    const std::vector<CorpusPair> &train, int min_count) {
  // Count in first-seen order so ids are deterministic.
  auto build = [min_count](const std::vector<Tokens> &sequences) {
    std::map<std::string, int> counts;
    std::vector<std::string> order;
    for (const Tokens &seq : sequences) {
      for (const std::string &t : seq) {
        if (counts[t]++ == 0) order.push_back(t);
      }
    }
    Vocabulary vocab;
    for (const std::string &t : order) {
      if (counts[t] >= min_count) vocab.Add(t);
    }
    return vocab;
  };
  std::vector<Tokens> sources, targets;
  for (const CorpusPair &p : train) {
    sources.push_back(p.command);
    targets.push_back(PrintLf(p.lf));
  }
  return {build(sources), build(targets)};
}

nlohmann::json PairToJson(const CorpusPair &pair) {
  nlohmann::json out;
  out["command"] = pair.CommandText();
  out["lf"] = pair.LfText();
  out["category"] = pair.category;
  out["anonymized"] = pair.anonymized;
  if (pair.split != Partition::kUnassigned) out["split"] = SplitName(pair.split);
  return out;
}

CorpusPair PairFromJson(const nlohmann::json &json,
                        const PredicateRegistry &registry) {
  if (!json.is_object() || !json.contains("command") || !json.contains("lf")) {
    throw CorpusError(CorpusError::Kind::kMalformed,
                      "corpus record needs 'command' and 'lf'");
  }
  CorpusPair pair;
  pair.command = TokenizeCommand(json.at("command").get<std::string>());
  pair.lf = ParseLf(json.at("lf").get<std::string>(), registry);
  pair.category = json.value("category", 0);
  pair.anonymized = json.value("anonymized", false);
  if (json.contains("split"))
    pair.split = ParseSplitName(json.at("split").get<std::string>());
  return pair;
}

Dataset ParseJsonl(std::string_view text, const PredicateRegistry &registry,
                   Origin origin) {
  Dataset dataset;
  dataset.origin = origin;
  int line_number = 0;
  for (const std::string &line : SplitLines(text)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    try {
      dataset.pairs.push_back(
          PairFromJson(nlohmann::json::parse(line), registry));
    } catch (const nlohmann::json::exception &e) {
      throw CorpusError(CorpusError::Kind::kMalformed,
                        "line " + std::to_string(line_number) + ": " +
                            e.what());
    } catch (const LfError &e) {
      throw CorpusError(CorpusError::Kind::kMalformed,
                        "line " + std::to_string(line_number) + ": " +
                            e.what());
    }
  }
  return dataset;
}

Dataset LoadJsonl(const std::string &path, const PredicateRegistry &registry,
                  Origin origin) {
  return ParseJsonl(ReadFile(path), registry, origin);
}

std::string SerializeJsonl(const Dataset &dataset) {
  std::string out;
  for (const CorpusPair &p : dataset.pairs) {
    out += PairToJson(p).dump();
    out += '\n';
  }
  return out;
}

void SaveJsonl(const std::string &path, const Dataset &dataset) {
  WriteFile(path, SerializeJsonl(dataset));
}

nlohmann::json SplitManifest(const Dataset &dataset, std::string_view kind,
                             uint64_t seed, const SplitRatios &ratios) {
  nlohmann::json m;
  m["kind"] = std::string(kind);
  m["seed"] = seed;
  m["ratios"] = {ratios.train, ratios.validation, ratios.test};
  m["origin"] =
      dataset.origin == Origin::kGenerated ? "generated" : "paraphrased";
  for (Partition s : {Partition::kTrain, Partition::kValidation, Partition::kTest}) {
    std::set<std::string> pool;
    for (const CorpusPair &p : dataset.pairs) {
      if (p.split != s) continue;
      pool.insert(kind == "logical" ? p.LfText() : p.CommandText());
    }
    m["counts"][SplitName(s)] = dataset.Count(s);
    m["pool"][SplitName(s)] = pool;
  }
  return m;
}

Dataset AnonymizeCommands(const Dataset &dataset, const Ontology &ontology) {
  Dataset out = dataset;
  for (CorpusPair &p : out.pairs) {
    if (p.anonymized) continue;
    p.command = Anonymize(p.command, ontology).tokens;
    p.anonymized = true;
  }
  return out;
}

}  // namespace cmdparse
