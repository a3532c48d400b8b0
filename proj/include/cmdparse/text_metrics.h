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

#ifndef CMDPARSE_TEXT_METRICS_H_
#define CMDPARSE_TEXT_METRICS_H_

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cmdparse {

// Minimum number of insertions, deletions and substitutions turning `a` into
// `b`. Works on any random-access sequences of comparable elements.
template <typename Seq>
int EditDistance(const Seq &a, const Seq &b) {
  const size_t n = a.size(), m = b.size();
  std::vector<int> row(m + 1);
  for (size_t j = 0; j <= m; ++j) row[j] = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i) {
    int diagonal = row[0];
    row[0] = static_cast<int>(i);
    for (size_t j = 1; j <= m; ++j) {
      int above = row[j];
      int substitute = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diagonal = above;
    }
  }
  return row[m];
}

// Character-level Levenshtein distance; UTF-8 input is compared by code
// point.
int Levenshtein(std::string_view a, std::string_view b);

// 1 - |a ∩ b| / |a ∪ b|; 0 when both sets are empty.
double JaccardDistance(const std::set<std::string> &a,
                       const std::set<std::string> &b);

// Lowercased whitespace tokens with trailing punctuation stripped.
std::set<std::string> WordSet(std::string_view text);

enum class ParaphraseVerdict { kTooSimilar, kTooDifferent, kAcceptable };
const char *VerdictName(ParaphraseVerdict verdict);

struct ParaphraseThresholds {
  // Too similar when both distances are below these.
  int min_levenshtein = 5;
  double min_jaccard = 0.2;
  // Too different when the word-set distance exceeds this.
  double max_jaccard = 0.9;
};

struct ParaphraseJudgment {
  int levenshtein = 0;
  double jaccard_distance = 0;
  ParaphraseVerdict verdict = ParaphraseVerdict::kAcceptable;
};

ParaphraseJudgment JudgeParaphrase(std::string_view original,
                                   std::string_view paraphrase,
                                   const ParaphraseThresholds &thresholds = {});

}  // namespace cmdparse

#endif  // CMDPARSE_TEXT_METRICS_H_
