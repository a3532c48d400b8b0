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

#include "cmdparse/text_metrics.h"

#include "cmdparse/strings.h"

namespace cmdparse {
namespace {

// Decodes UTF-8; malformed bytes map to themselves.
std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    int extra = c >= 0xF0 ? 3 : c >= 0xE0 ? 2 : c >= 0xC0 ? 1 : 0;
    if (extra == 0 || i + extra >= text.size()) {
      out.push_back(c);
      ++i;
      continue;
    }
    char32_t cp = c & (0x3F >> extra);
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(c);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

}  // namespace

int Levenshtein(std::string_view a, std::string_view b) {
  return EditDistance(DecodeUtf8(a), DecodeUtf8(b));
}

double JaccardDistance(const std::set<std::string> &a,
                       const std::set<std::string> &b) {
  if (a.empty() && b.empty()) return 0.0;
  size_t common = 0;
  for (const std::string &x : a) common += b.count(x);
  const size_t united = a.size() + b.size() - common;
  return 1.0 - static_cast<double>(common) / static_cast<double>(united);
}

std::set<std::string> WordSet(std::string_view text) {
  std::set<std::string> words;
  for (std::string w : SplitWhitespace(ToLower(text))) {
    while (!w.empty() && std::string_view(".,;:!?\"'").find(w.back()) !=
                             std::string_view::npos)
      w.pop_back();
    if (!w.empty()) words.insert(std::move(w));
  }
  return words;
}

const char *VerdictName(ParaphraseVerdict verdict) {
  switch (verdict) {
    case ParaphraseVerdict::kTooSimilar: return "TooSimilar";
    case ParaphraseVerdict::kTooDifferent: return "TooDifferent";
    case ParaphraseVerdict::kAcceptable: return "Acceptable";
  }
  return "?";
}

ParaphraseJudgment JudgeParaphrase(std::string_view original,
                                   std::string_view paraphrase,
                                   const ParaphraseThresholds &thresholds) {
  ParaphraseJudgment j;
  j.levenshtein = Levenshtein(original, paraphrase);
  j.jaccard_distance = JaccardDistance(WordSet(original), WordSet(paraphrase));
  if (j.levenshtein < thresholds.min_levenshtein &&
      j.jaccard_distance < thresholds.min_jaccard) {
    j.verdict = ParaphraseVerdict::kTooSimilar;
  } else if (j.jaccard_distance > thresholds.max_jaccard) {
    j.verdict = ParaphraseVerdict::kTooDifferent;
  } else {
    j.verdict = ParaphraseVerdict::kAcceptable;
  }
  return j;
}

}  // namespace cmdparse
