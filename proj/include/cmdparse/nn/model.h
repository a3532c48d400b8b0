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

#ifndef CMDPARSE_NN_MODEL_H_
#define CMDPARSE_NN_MODEL_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cmdparse/corpus.h"
#include "cmdparse/nn/config.h"

namespace cmdparse::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Seeded source of uniform doubles in [0, 1); portable across standard
// libraries.
class Random {
 public:
  explicit Random(uint64_t seed) : engine_(seed) {}
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  uint64_t Next() { return engine_(); }
  size_t Below(size_t n) { return static_cast<size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

// Trainable tensors, in a fixed order shared by gradients and optimizer
// state. Biases are single-column matrices.
enum ParamId {
  kSourceEmbedding = 0,
  kEncoderForwardW,
  kEncoderForwardB,
  kEncoderBackwardW,
  kEncoderBackwardB,
  kBridgeW,
  kBridgeB,
  kTargetEmbedding,
  kDecoderW,
  kDecoderB,
  kAttention,
  kOutputW,
  kOutputB,
  kNumParams,
};

const char *ParamName(int id);

using Gradients = std::vector<Matrix>;

struct LstmCache {
  Vector input;  // [x; h_prev]
  Vector i, f, g, o;
  Vector c_prev, c, tanh_c, h;
};

struct EncoderOutput {
  // 2H x n, columns are [forward; backward] states after dropout.
  Matrix states;
  // Dropout mask applied to `states` (all ones outside training).
  Matrix mask;
  Vector bridge_input;  // [forward final; backward final]
  Vector initial_hidden;
  std::vector<Vector> inputs;  // embedded tokens
  std::vector<LstmCache> forward, backward;
};

struct DecoderState {
  Vector h, c, context;
};

struct Attention {
  Vector context;
  Vector weights;
};

// Bilinear attention: score_i = h^T W s_i, softmax-normalized weights, and
// the weighted sum of the encoder states.
Attention Attend(const Vector &decoder_state, const Matrix &encoder_states,
                 const Matrix &w);

struct LossStats {
  double loss = 0;    // summed token cross-entropy
  int tokens = 0;
  int correct = 0;    // teacher-forced argmax hits
};

// Bidirectional LSTM encoder, LSTM decoder with input feeding of the
// previous context vector, bilinear attention and a linear output layer over
// [decoder state; context]. The source embedding has a frozen channel
// (loaded vectors, never updated) and a tunable channel.
class Seq2SeqModel {
 public:
  Seq2SeqModel(const ModelConfig &config, Vocabulary source,
               Vocabulary target, Matrix frozen_embedding = Matrix());

  const ModelConfig &config() const { return config_; }
  const Vocabulary &source_vocab() const { return source_; }
  const Vocabulary &target_vocab() const { return target_; }
  const Matrix &frozen_embedding() const { return frozen_; }

  std::vector<Matrix> &params() { return params_; }
  const std::vector<Matrix> &params() const { return params_; }

  Gradients ZeroGradients() const;

  // Per-token concatenation [frozen channel; tunable channel].
  std::vector<Vector> Embed(const std::vector<int> &source) const;

  // Dropout is applied to the encoder outputs only when rng is non-null.
  EncoderOutput Encode(const std::vector<int> &source, Random *rng) const;

  DecoderState InitialState(const EncoderOutput &encoded) const;

  // Advances the decoder by one token and returns output log-probabilities.
  Vector Step(const EncoderOutput &encoded, DecoderState &state,
              int previous_token, Attention *attention = nullptr) const;

  // Teacher-forced cross-entropy of `target` (ending in END). When grads is
  // non-null, adds scale * d(loss)/d(param) into it.
  LossStats Loss(const std::vector<int> &source, const std::vector<int> &target,
                 Random *dropout_rng, Gradients *grads, double scale) const;

  std::vector<int> EncodeSource(const Tokens &command) const;
  // Canonical LF tokens followed by END.
  std::vector<int> EncodeTarget(const Tokens &lf_tokens) const;

  // Checksum of the frozen channel, for verifying it never changes.
  uint64_t FrozenChecksum() const;

 private:
  ModelConfig config_;
  Vocabulary source_;
  Vocabulary target_;
  Matrix frozen_;
  std::vector<Matrix> params_;
};

}  // namespace cmdparse::nn

#endif  // CMDPARSE_NN_MODEL_H_
