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

#include "cmdparse/nn/decoder.h"

#include <algorithm>

namespace cmdparse::nn {
namespace {

struct Live {
  std::vector<int> ids;
  double log_prob = 0;
  DecoderState state;
};

Hypothesis Finish(const Seq2SeqModel &model, std::vector<int> ids,
                  double log_prob, bool finished) {
  Hypothesis h;
  h.ids = std::move(ids);
  for (int id : h.ids) h.tokens.push_back(model.target_vocab().Token(id));
  h.log_prob = log_prob;
  const size_t length = h.ids.size() + (finished ? 1 : 0);
  h.score = length > 0 ? log_prob / static_cast<double>(length) : log_prob;
  h.finished = finished;
  return h;
}

}  // namespace

std::vector<Hypothesis> DecodeBeam(const Seq2SeqModel &model,
                                   const Tokens &command, int beam_width,
                                   int max_len) {
  const EncoderOutput encoded =
      model.Encode(model.EncodeSource(command), nullptr);
  std::vector<Live> live(1);
  live[0].state = model.InitialState(encoded);
  std::vector<Hypothesis> finished;

  struct Candidate {
    double log_prob;
    int parent;
    int token;
  };
  for (int step = 0; step < max_len && !live.empty(); ++step) {
    std::vector<Candidate> candidates;
    std::vector<DecoderState> next_states(live.size());
    for (size_t p = 0; p < live.size(); ++p) {
      next_states[p] = live[p].state;
      const int previous =
          live[p].ids.empty() ? Vocabulary::kStart : live[p].ids.back();
      Vector log_probs = model.Step(encoded, next_states[p], previous);
      std::vector<int> order(log_probs.size());
      for (size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
      const size_t keep = std::min<size_t>(beam_width, order.size());
      std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                        [&log_probs](int a, int b) {
                          if (log_probs(a) != log_probs(b))
                            return log_probs(a) > log_probs(b);
                          return a < b;
                        });
      for (size_t k = 0; k < keep; ++k) {
        candidates.push_back({live[p].log_prob + log_probs(order[k]),
                              static_cast<int>(p), order[k]});
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate &a, const Candidate &b) {
                       return a.log_prob > b.log_prob;
                     });
    const size_t slots = static_cast<size_t>(beam_width) - finished.size();
    std::vector<Live> next;
    for (size_t k = 0; k < candidates.size() && k < slots; ++k) {
      const Candidate &cand = candidates[k];
      std::vector<int> ids = live[cand.parent].ids;
      if (cand.token == Vocabulary::kEnd) {
        finished.push_back(Finish(model, std::move(ids), cand.log_prob, true));
        continue;
      }
      ids.push_back(cand.token);
      next.push_back({std::move(ids), cand.log_prob, next_states[cand.parent]});
    }
    live = std::move(next);
    if (finished.size() >= static_cast<size_t>(beam_width)) break;
  }
  for (Live &l : live) {
    finished.push_back(Finish(model, std::move(l.ids), l.log_prob, false));
  }
  std::stable_sort(finished.begin(), finished.end(),
                   [](const Hypothesis &a, const Hypothesis &b) {
                     return a.score > b.score;
                   });
  return finished;
}

Hypothesis DecodeGreedy(const Seq2SeqModel &model, const Tokens &command,
                        int max_len) {
  const EncoderOutput encoded =
      model.Encode(model.EncodeSource(command), nullptr);
  DecoderState state = model.InitialState(encoded);
  std::vector<int> ids;
  double log_prob = 0;
  for (int step = 0; step < max_len; ++step) {
    const int previous = ids.empty() ? Vocabulary::kStart : ids.back();
    Vector log_probs = model.Step(encoded, state, previous);
    Eigen::Index best;
    log_prob += log_probs.maxCoeff(&best);
    if (best == Vocabulary::kEnd) {
      return Finish(model, std::move(ids), log_prob, true);
    }
    ids.push_back(static_cast<int>(best));
  }
  return Finish(model, std::move(ids), log_prob, false);
}

}  // namespace cmdparse::nn
