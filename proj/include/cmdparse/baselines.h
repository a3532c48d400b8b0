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

#ifndef CMDPARSE_BASELINES_H_
#define CMDPARSE_BASELINES_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmdparse/corpus_pair.h"
#include "cmdparse/grammar.h"
#include "cmdparse/logical_form.h"

namespace cmdparse {

// Nearest-neighbor parser over word sets, scored by Jaccard distance.
class KnnIndex {
 public:
  struct Entry {
    std::set<std::string> words;
    LogicalForm lf;
    int source_index = 0;
  };

  // Build from training and validation pairs only.
  explicit KnnIndex(const std::vector<CorpusPair> &pairs, int k = 1);

  // Closest entry's form; ties go to the smallest source index. With k > 1
  // the k closest vote by canonical print, ties again by smallest index.
  // Throws ModelError(kEmptyIndex).
  LogicalForm Predict(const Tokens &command) const;

  int size() const { return static_cast<int>(entries_.size()); }
  int k() const { return k_; }

 private:
  std::vector<Entry> entries_;
  int k_;
};

// Grammar-Oracle: chart-parses the command with the generation grammar.
std::optional<LogicalForm> OraclePredict(const SynchronousGrammar &grammar,
                                         const Tokens &command);

}  // namespace cmdparse

#endif  // CMDPARSE_BASELINES_H_
