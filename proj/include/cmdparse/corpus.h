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

#ifndef CMDPARSE_CORPUS_H_
#define CMDPARSE_CORPUS_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmdparse/corpus_pair.h"
#include "cmdparse/ontology.h"
#include "cmdparse/predicates.h"
#include "json.hpp"

namespace cmdparse {

enum class Origin { kGenerated, kParaphrased };

struct Dataset {
  std::vector<CorpusPair> pairs;
  Origin origin = Origin::kGenerated;

  std::vector<CorpusPair> Subset(Partition split) const;
  int Count(Partition split) const;
};

// Anonymizes the command of every pair not yet marked anonymized.
Dataset AnonymizeCommands(const Dataset &dataset, const Ontology &ontology);

struct SplitRatios {
  double train = 0.7;
  double validation = 0.1;
  double test = 0.2;
};

// Partitions by command string: identical commands always share a split.
// Assignment follows a seeded hash of the command, filling train, then
// validation, then test up to floor(ratio * N) pairs. Throws
// CorpusError(kTooFewPairs) below 10 pairs.
Dataset SplitByCommand(const Dataset &dataset, const SplitRatios &ratios,
                       uint64_t seed);

// Partitions the pool of distinct logical forms so that no form occurs in
// two splits, and applies the same assignment to both datasets. Pair counts
// approximate the ratios. Throws CorpusError(kTooFewForms) below 10 forms.
std::pair<Dataset, Dataset> SplitByLogicalForm(const Dataset &generated,
                                               const Dataset &paraphrased,
                                               const SplitRatios &ratios,
                                               uint64_t seed);

// Token <-> id map with reserved PAD, START, END and UNK entries.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kStart = 1;
  static constexpr int kEnd = 2;
  static constexpr int kUnk = 3;
  static constexpr int kNumReserved = 4;

  Vocabulary();
  explicit Vocabulary(const std::vector<std::string> &tokens);

  // Returns the existing id or adds the token.
  int Add(const std::string &token);
  int Id(const std::string &token) const;
  bool Contains(const std::string &token) const;
  const std::string &Token(int id) const { return id_to_token_.at(id); }
  int size() const { return static_cast<int>(id_to_token_.size()); }
  const std::vector<std::string> &tokens() const { return id_to_token_; }

  std::vector<int> Encode(const Tokens &tokens) const;

 private:
  std::map<std::string, int> token_to_id_;
  std::vector<std::string> id_to_token_;
};

// Source vocabulary over command tokens, target vocabulary over canonical
// logical-form tokens. Tokens seen fewer than min_count times map to UNK.
std::pair<Vocabulary, Vocabulary> BuildVocab(
    const std::vector<CorpusPair> &train, int min_count = 1);

// JSON-lines corpus files:
//   {"command": "...", "lf": "...", "category": n, "anonymized": bool}
// with an optional "split" field after splitting.
nlohmann::json PairToJson(const CorpusPair &pair);
CorpusPair PairFromJson(const nlohmann::json &json,
                        const PredicateRegistry &registry);
Dataset ParseJsonl(std::string_view text, const PredicateRegistry &registry,
                   Origin origin);
Dataset LoadJsonl(const std::string &path, const PredicateRegistry &registry,
                  Origin origin);
std::string SerializeJsonl(const Dataset &dataset);
void SaveJsonl(const std::string &path, const Dataset &dataset);

// Audit record of a split: kind, seed, ratios, counts and the pool assigned
// to each part.
nlohmann::json SplitManifest(const Dataset &dataset, std::string_view kind,
                             uint64_t seed, const SplitRatios &ratios);

}  // namespace cmdparse

#endif  // CMDPARSE_CORPUS_H_
