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

#ifndef CMDPARSE_NN_DECODER_H_
#define CMDPARSE_NN_DECODER_H_

#include <vector>

#include "cmdparse/nn/model.h"

namespace cmdparse::nn {

struct Hypothesis {
  std::vector<int> ids;  // without END
  Tokens tokens;
  double log_prob = 0;
  // log_prob divided by the number of generated tokens (END included).
  double score = 0;
  bool finished = false;
};

// Beam search. Live hypotheses are pruned by summed log-probability;
// finished ones are ranked by length-normalized score, best first. Stops
// once beam_width hypotheses have emitted END or after max_len tokens.
std::vector<Hypothesis> DecodeBeam(const Seq2SeqModel &model,
                                   const Tokens &command, int beam_width,
                                   int max_len);

// Argmax at every step.
Hypothesis DecodeGreedy(const Seq2SeqModel &model, const Tokens &command,
                        int max_len);

}  // namespace cmdparse::nn

#endif  // CMDPARSE_NN_DECODER_H_
