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

#include "cmdparse/baselines.h"

#include <algorithm>
#include <map>

#include "cmdparse/errors.h"
#include "cmdparse/text_metrics.h"

namespace cmdparse {

KnnIndex::KnnIndex(const std::vector<CorpusPair> &pairs, int k) : k_(k) {
  if (k < 1) throw ModelError(ModelError::Kind::kBadConfig, "k must be >= 1");
  for (size_t i = 0; i < pairs.size(); ++i) {
    std::set<std::string> words(pairs[i].command.begin(),
                                pairs[i].command.end());
    entries_.push_back({std::move(words), pairs[i].lf, static_cast<int>(i)});
  }
}

LogicalForm KnnIndex::Predict(const Tokens &command) const {
  if (entries_.empty()) {
    throw ModelError(ModelError::Kind::kEmptyIndex, "KNN index is empty");
  }
  std::set<std::string> query(command.begin(), command.end());
  std::vector<std::pair<double, int>> scored;
  scored.reserve(entries_.size());
  for (size_t i = 0; i < entries_.size(); ++i) {
    scored.emplace_back(JaccardDistance(query, entries_[i].words),
                        static_cast<int>(i));
  }
  const size_t k = std::min<size_t>(k_, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + k, scored.end(),
                    [this](const auto &a, const auto &b) {
                      if (a.first != b.first) return a.first < b.first;
                      return entries_[a.second].source_index <
                             entries_[b.second].source_index;
                    });
  if (k == 1) return entries_[scored[0].second].lf;

  // Votes per canonical print; remember the best-ranked member of each.
  std::map<std::string, std::pair<int, int>> votes;  // print -> (count, rank)
  for (size_t r = 0; r < k; ++r) {
    const LogicalForm &lf = entries_[scored[r].second].lf;
    auto [it, inserted] =
        votes.emplace(PrintLfString(lf), std::make_pair(0, static_cast<int>(r)));
    ++it->second.first;
  }
  int best_rank = -1, best_count = -1, best_index = 0;
  for (const auto &[print, vote] : votes) {
    int index = entries_[scored[vote.second].second].source_index;
    if (vote.first > best_count ||
        (vote.first == best_count && index < best_index)) {
      best_count = vote.first;
      best_rank = vote.second;
      best_index = index;
    }
  }
  return entries_[scored[best_rank].second].lf;
}

std::optional<LogicalForm> OraclePredict(const SynchronousGrammar &grammar,
                                         const Tokens &command) {
  return ChartParse(grammar, command);
}

}  // namespace cmdparse
