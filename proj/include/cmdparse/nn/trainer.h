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

#ifndef CMDPARSE_NN_TRAINER_H_
#define CMDPARSE_NN_TRAINER_H_

#include <string>
#include <vector>

#include "cmdparse/corpus_pair.h"
#include "cmdparse/nn/model.h"

namespace cmdparse::nn {

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0;             // mean per target token
  double train_token_accuracy = 0;   // teacher-forced, during the epoch
  double validation_exact_match = 0; // percent
};

struct TrainReport {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;
  // Patience ran out.
  bool stopped_early = false;
  // Validation reached 100%, which no later epoch can beat.
  bool stopped_at_ceiling = false;
  double wall_seconds = 0;
  nlohmann::json config;
};

class Adam {
 public:
  Adam(const ModelConfig &config, const std::vector<Matrix> &params);
  void Update(std::vector<Matrix> &params, const Gradients &grads);
  int steps() const { return steps_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  int steps_ = 0;
  std::vector<Matrix> m_, v_;
};

// Teacher-forced cross-entropy training with Adam and early stopping on
// validation exact match (beam search). The model ends at its best epoch.
// An empty validation set selects on the training pairs instead. Throws
// ModelError(kEmptyTrainSet) and ModelError(kNaNLoss).
TrainReport Train(Seq2SeqModel &model, const std::vector<CorpusPair> &train,
                  const std::vector<CorpusPair> &validation);

// Exact-match percentage of beam-search predictions.
double ExactMatchAccuracy(const Seq2SeqModel &model,
                          const std::vector<CorpusPair> &pairs,
                          int beam_width, int max_len);

struct ParamCheck {
  std::string name;
  double max_relative_error = 0;
  double max_abs_error = 0;
  int entries = 0;
};

struct GradientCheckReport {
  std::vector<ParamCheck> params;
  bool passed = true;
};

// Compares analytic gradients to central finite differences for every
// trainable tensor, with a fixed dropout mask. When `throw_on_failure`,
// raises ModelError(kGradientMismatch) naming the worst tensor.
GradientCheckReport GradientCheck(Seq2SeqModel &model,
                                  const std::vector<CorpusPair> &batch,
                                  double epsilon, double tolerance,
                                  bool throw_on_failure = false);

}  // namespace cmdparse::nn

#endif  // CMDPARSE_NN_TRAINER_H_
