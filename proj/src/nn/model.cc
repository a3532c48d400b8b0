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

#include "cmdparse/nn/model.h"

#include <cmath>
#include <cstring>

#include "cmdparse/errors.h"
#include "cmdparse/logical_form.h"
#include "cmdparse/strings.h"

namespace cmdparse::nn {

void ModelConfig::Validate() const {
  auto fail = [](const std::string &what) {
    throw ModelError(ModelError::Kind::kBadConfig, what);
  };
  if (tunable_embed_dim <= 0) fail("tunable_embed_dim must be positive");
  if (frozen_embed_dim < 0) fail("frozen_embed_dim must be >= 0");
  if (encoder_hidden <= 0 || decoder_hidden <= 0)
    fail("hidden sizes must be positive");
  if (encoder_dropout < 0 || encoder_dropout >= 1)
    fail("encoder_dropout must be in [0, 1)");
  if (beam_width <= 0) fail("beam_width must be positive");
  if (max_decode_len <= 0) fail("max_decode_len must be positive");
  if (max_epochs <= 0 || patience <= 0 || batch_size <= 0)
    fail("epochs, patience and batch size must be positive");
  if (learning_rate <= 0) fail("learning_rate must be positive");
  if (grad_clip < 0) fail("grad_clip must be non-negative");
}

nlohmann::json ConfigToJson(const ModelConfig &c) {
  return {
      {"tunable_embed_dim", c.tunable_embed_dim},
      {"frozen_embed_dim", c.frozen_embed_dim},
      {"encoder_hidden", c.encoder_hidden},
      {"decoder_hidden", c.decoder_hidden},
      {"encoder_dropout", c.encoder_dropout},
      {"beam_width", c.beam_width},
      {"max_decode_len", c.max_decode_len},
      {"max_epochs", c.max_epochs},
      {"patience", c.patience},
      {"batch_size", c.batch_size},
      {"learning_rate", c.learning_rate},
      {"adam_beta1", c.adam_beta1},
      {"adam_beta2", c.adam_beta2},
      {"adam_eps", c.adam_eps},
      {"init_scale", c.init_scale},
      {"grad_clip", c.grad_clip},
      {"seed", c.seed},
  };
}

ModelConfig ConfigFromJson(const nlohmann::json &j, ModelConfig c) {
  c.tunable_embed_dim = j.value("tunable_embed_dim", c.tunable_embed_dim);
  c.frozen_embed_dim = j.value("frozen_embed_dim", c.frozen_embed_dim);
  c.encoder_hidden = j.value("encoder_hidden", c.encoder_hidden);
  c.decoder_hidden = j.value("decoder_hidden", c.decoder_hidden);
  c.encoder_dropout = j.value("encoder_dropout", c.encoder_dropout);
  c.beam_width = j.value("beam_width", c.beam_width);
  c.max_decode_len = j.value("max_decode_len", c.max_decode_len);
  c.max_epochs = j.value("max_epochs", c.max_epochs);
  c.patience = j.value("patience", c.patience);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.adam_beta1 = j.value("adam_beta1", c.adam_beta1);
  c.adam_beta2 = j.value("adam_beta2", c.adam_beta2);
  c.adam_eps = j.value("adam_eps", c.adam_eps);
  c.init_scale = j.value("init_scale", c.init_scale);
  c.grad_clip = j.value("grad_clip", c.grad_clip);
  c.seed = j.value("seed", c.seed);
  return c;
}

const char *ParamName(int id) {
  static const char *kNames[kNumParams] = {
      "source_embedding", "encoder_forward_w", "encoder_forward_b",
      "encoder_backward_w", "encoder_backward_b", "bridge_w", "bridge_b",
      "target_embedding", "decoder_w", "decoder_b", "attention",
      "output_w", "output_b",
  };
  return id >= 0 && id < kNumParams ? kNames[id] : "?";
}

namespace {

Vector Sigmoid(const Vector &x) {
  return x.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

Vector LogSoftmax(const Vector &logits) {
  const double max = logits.maxCoeff();
  const double log_sum = std::log((logits.array() - max).exp().sum()) + max;
  return logits.array() - log_sum;
}

Vector Softmax(const Vector &logits) {
  Vector e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

Vector Concat(const Vector &a, const Vector &b) {
  Vector out(a.size() + b.size());
  out << a, b;
  return out;
}

// Gate order: input, forget, cell, output.
void LstmForward(const Matrix &w, const Matrix &b, const Vector &x,
                 const Vector &h_prev, const Vector &c_prev, LstmCache &cache) {
  const int hidden = static_cast<int>(h_prev.size());
  cache.input = Concat(x, h_prev);
  Vector z = w * cache.input + b.col(0);
  cache.i = Sigmoid(z.segment(0, hidden));
  cache.f = Sigmoid(z.segment(hidden, hidden));
  cache.g = z.segment(2 * hidden, hidden).array().tanh();
  cache.o = Sigmoid(z.segment(3 * hidden, hidden));
  cache.c_prev = c_prev;
  cache.c = cache.f.cwiseProduct(c_prev) + cache.i.cwiseProduct(cache.g);
  cache.tanh_c = cache.c.array().tanh();
  cache.h = cache.o.cwiseProduct(cache.tanh_c);
}

// Given dL/dh and dL/dc at this step, accumulates weight gradients and
// returns dL/d[x; h_prev] and dL/dc_prev.
void LstmBackward(const Matrix &w, const LstmCache &cache, const Vector &dh,
                  const Vector &dc_in, Matrix &dw, Matrix &db, Vector &d_input,
                  Vector &dc_prev) {
  const int hidden = static_cast<int>(dh.size());
  Vector d_o = dh.cwiseProduct(cache.tanh_c);
  Vector dc = dc_in + dh.cwiseProduct(cache.o).cwiseProduct(
                          (1.0 - cache.tanh_c.array().square()).matrix());
  Vector d_i = dc.cwiseProduct(cache.g);
  Vector d_g = dc.cwiseProduct(cache.i);
  Vector d_f = dc.cwiseProduct(cache.c_prev);
  dc_prev = dc.cwiseProduct(cache.f);
  Vector dz(4 * hidden);
  dz.segment(0, hidden) =
      d_i.array() * cache.i.array() * (1.0 - cache.i.array());
  dz.segment(hidden, hidden) =
      d_f.array() * cache.f.array() * (1.0 - cache.f.array());
  dz.segment(2 * hidden, hidden) =
      d_g.array() * (1.0 - cache.g.array().square());
  dz.segment(3 * hidden, hidden) =
      d_o.array() * cache.o.array() * (1.0 - cache.o.array());
  dw.noalias() += dz * cache.input.transpose();
  db.col(0) += dz;
  d_input.noalias() = w.transpose() * dz;
}

}  // namespace

Attention Attend(const Vector &decoder_state, const Matrix &encoder_states,
                 const Matrix &w) {
  Vector query = w.transpose() * decoder_state;
  Vector scores = encoder_states.transpose() * query;
  Attention a;
  a.weights = Softmax(scores);
  a.context = encoder_states * a.weights;
  return a;
}

Seq2SeqModel::Seq2SeqModel(const ModelConfig &config, Vocabulary source,
                           Vocabulary target, Matrix frozen_embedding)
    : config_(config),
      source_(std::move(source)),
      target_(std::move(target)),
      frozen_(std::move(frozen_embedding)) {
  if (frozen_.size() == 0) {
    frozen_ = Matrix::Zero(source_.size(), 0);
  }
  config_.frozen_embed_dim = static_cast<int>(frozen_.cols());
  if (frozen_.rows() != source_.size()) {
    throw ModelError(ModelError::Kind::kBadConfig,
                     "frozen embedding rows do not match source vocabulary");
  }
  config_.Validate();

  const int vs = source_.size(), vt = target_.size();
  const int dt = config_.tunable_embed_dim;
  const int din = config_.frozen_embed_dim + dt;
  const int he = config_.encoder_hidden, hd = config_.decoder_hidden;

  params_.resize(kNumParams);
  params_[kSourceEmbedding] = Matrix(vs, dt);
  params_[kEncoderForwardW] = Matrix(4 * he, din + he);
  params_[kEncoderForwardB] = Matrix::Zero(4 * he, 1);
  params_[kEncoderBackwardW] = Matrix(4 * he, din + he);
  params_[kEncoderBackwardB] = Matrix::Zero(4 * he, 1);
  params_[kBridgeW] = Matrix(hd, 2 * he);
  params_[kBridgeB] = Matrix::Zero(hd, 1);
  params_[kTargetEmbedding] = Matrix(vt, dt);
  params_[kDecoderW] = Matrix(4 * hd, dt + 2 * he + hd);
  params_[kDecoderB] = Matrix::Zero(4 * hd, 1);
  params_[kAttention] = Matrix(hd, 2 * he);
  params_[kOutputW] = Matrix(vt, hd + 2 * he);
  params_[kOutputB] = Matrix::Zero(vt, 1);

  Random rng(config_.seed);
  const double scale = config_.init_scale;
  for (int id : {kSourceEmbedding, kEncoderForwardW, kEncoderBackwardW,
                 kBridgeW, kTargetEmbedding, kDecoderW, kAttention, kOutputW}) {
    Matrix &m = params_[id];
    // Column-major fill order is part of the determinism contract.
    for (Eigen::Index k = 0; k < m.size(); ++k) {
      m.data()[k] = (2.0 * rng.Uniform() - 1.0) * scale;
    }
  }
  params_[kEncoderForwardB].block(he, 0, he, 1).setOnes();
  params_[kEncoderBackwardB].block(he, 0, he, 1).setOnes();
  params_[kDecoderB].block(hd, 0, hd, 1).setOnes();
}

Gradients Seq2SeqModel::ZeroGradients() const {
  Gradients g;
  g.reserve(params_.size());
  for (const Matrix &m : params_) g.push_back(Matrix::Zero(m.rows(), m.cols()));
  return g;
}

std::vector<int> Seq2SeqModel::EncodeSource(const Tokens &command) const {
  return source_.Encode(command);
}

std::vector<int> Seq2SeqModel::EncodeTarget(const Tokens &lf_tokens) const {
  std::vector<int> ids = target_.Encode(lf_tokens);
  ids.push_back(Vocabulary::kEnd);
  return ids;
}

std::vector<Vector> Seq2SeqModel::Embed(const std::vector<int> &source) const {
  const int df = config_.frozen_embed_dim, dt = config_.tunable_embed_dim;
  std::vector<Vector> out;
  out.reserve(source.size());
  for (int id : source) {
    Vector x(df + dt);
    if (df > 0) x.head(df) = frozen_.row(id).transpose();
    x.tail(dt) = params_[kSourceEmbedding].row(id).transpose();
    out.push_back(std::move(x));
  }
  return out;
}

EncoderOutput Seq2SeqModel::Encode(const std::vector<int> &source,
                                   Random *rng) const {
  if (source.empty()) {
    throw ModelError(ModelError::Kind::kBadConfig, "empty source sequence");
  }
  const int n = static_cast<int>(source.size());
  const int he = config_.encoder_hidden;
  EncoderOutput out;
  out.inputs = Embed(source);
  out.forward.resize(n);
  out.backward.resize(n);

  Vector h = Vector::Zero(he), c = Vector::Zero(he);
  for (int i = 0; i < n; ++i) {
    LstmForward(params_[kEncoderForwardW], params_[kEncoderForwardB],
                out.inputs[i], h, c, out.forward[i]);
    h = out.forward[i].h;
    c = out.forward[i].c;
  }
  h.setZero();
  c.setZero();
  for (int i = n - 1; i >= 0; --i) {
    LstmForward(params_[kEncoderBackwardW], params_[kEncoderBackwardB],
                out.inputs[i], h, c, out.backward[i]);
    h = out.backward[i].h;
    c = out.backward[i].c;
  }

  out.states.resize(2 * he, n);
  for (int i = 0; i < n; ++i) {
    out.states.col(i).head(he) = out.forward[i].h;
    out.states.col(i).tail(he) = out.backward[i].h;
  }
  out.mask = Matrix::Ones(2 * he, n);
  if (rng != nullptr && config_.encoder_dropout > 0) {
    const double keep = 1.0 - config_.encoder_dropout;
    for (Eigen::Index k = 0; k < out.mask.size(); ++k) {
      out.mask.data()[k] = rng->Uniform() < keep ? 1.0 / keep : 0.0;
    }
    out.states = out.states.cwiseProduct(out.mask);
  }

  out.bridge_input = Concat(out.forward[n - 1].h, out.backward[0].h);
  out.initial_hidden =
      (params_[kBridgeW] * out.bridge_input + params_[kBridgeB].col(0))
          .array()
          .tanh();
  return out;
}

DecoderState Seq2SeqModel::InitialState(const EncoderOutput &encoded) const {
  DecoderState s;
  s.h = encoded.initial_hidden;
  s.c = Vector::Zero(config_.decoder_hidden);
  s.context = Vector::Zero(2 * config_.encoder_hidden);
  return s;
}

Vector Seq2SeqModel::Step(const EncoderOutput &encoded, DecoderState &state,
                          int previous_token, Attention *attention) const {
  Vector u = Concat(params_[kTargetEmbedding].row(previous_token).transpose(),
                    state.context);
  LstmCache cache;
  LstmForward(params_[kDecoderW], params_[kDecoderB], u, state.h, state.c,
              cache);
  state.h = cache.h;
  state.c = cache.c;
  Attention a = Attend(state.h, encoded.states, params_[kAttention]);
  state.context = a.context;
  Vector logits =
      params_[kOutputW] * Concat(state.h, state.context) + params_[kOutputB].col(0);
  if (attention != nullptr) *attention = std::move(a);
  return LogSoftmax(logits);
}

LossStats Seq2SeqModel::Loss(const std::vector<int> &source,
                             const std::vector<int> &target, Random *dropout_rng,
                             Gradients *grads, double scale) const {
  const int n = static_cast<int>(source.size());
  const int steps = static_cast<int>(target.size());
  const int he = config_.encoder_hidden, hd = config_.decoder_hidden;
  const int dt = config_.tunable_embed_dim;
  const Matrix &wa = params_[kAttention];
  const Matrix &wo = params_[kOutputW];

  EncoderOutput enc = Encode(source, dropout_rng);

  struct StepCache {
    int previous;
    LstmCache lstm;
    Vector query, weights, context, output_input, probs;
  };
  std::vector<StepCache> cache(steps);
  LossStats stats;
  Vector h = enc.initial_hidden, c = Vector::Zero(hd);
  Vector context = Vector::Zero(2 * he);
  for (int t = 0; t < steps; ++t) {
    StepCache &sc = cache[t];
    sc.previous = t == 0 ? Vocabulary::kStart : target[t - 1];
    Vector u = Concat(params_[kTargetEmbedding].row(sc.previous).transpose(),
                      context);
    LstmForward(params_[kDecoderW], params_[kDecoderB], u, h, c, sc.lstm);
    h = sc.lstm.h;
    c = sc.lstm.c;
    sc.query = wa.transpose() * h;
    sc.weights = Softmax(enc.states.transpose() * sc.query);
    sc.context = enc.states * sc.weights;
    context = sc.context;
    sc.output_input = Concat(h, context);
    Vector logits = wo * sc.output_input + params_[kOutputB].col(0);
    Vector log_probs = LogSoftmax(logits);
    stats.loss -= log_probs(target[t]);
    Eigen::Index best;
    log_probs.maxCoeff(&best);
    if (best == target[t]) ++stats.correct;
    if (grads != nullptr) sc.probs = log_probs.array().exp();
  }
  stats.tokens = steps;
  if (grads == nullptr) return stats;

  Gradients &g = *grads;
  Matrix d_states = Matrix::Zero(2 * he, n);
  Vector dh_next = Vector::Zero(hd), dc_next = Vector::Zero(hd);
  Vector dcontext_next = Vector::Zero(2 * he);
  Vector d_input, dc_prev;
  for (int t = steps - 1; t >= 0; --t) {
    StepCache &sc = cache[t];
    Vector dlogits = sc.probs;
    dlogits(target[t]) -= 1.0;
    dlogits *= scale;
    g[kOutputW].noalias() += dlogits * sc.output_input.transpose();
    g[kOutputB].col(0) += dlogits;
    Vector d_out = wo.transpose() * dlogits;
    Vector dh = d_out.head(hd) + dh_next;
    Vector dcontext = d_out.tail(2 * he) + dcontext_next;

    // context = S a, a = softmax(S^T q), q = Wa^T h
    d_states.noalias() += dcontext * sc.weights.transpose();
    Vector d_weights = enc.states.transpose() * dcontext;
    Vector d_scores =
        sc.weights.cwiseProduct((d_weights.array() - sc.weights.dot(d_weights))
                                    .matrix());
    d_states.noalias() += sc.query * d_scores.transpose();
    Vector d_query = enc.states * d_scores;
    g[kAttention].noalias() += sc.lstm.h * d_query.transpose();
    dh.noalias() += wa * d_query;

    LstmBackward(params_[kDecoderW], sc.lstm, dh, dc_next, g[kDecoderW],
                 g[kDecoderB], d_input, dc_prev);
    g[kTargetEmbedding].row(sc.previous) += d_input.head(dt).transpose();
    dcontext_next = d_input.segment(dt, 2 * he);
    dh_next = d_input.tail(hd);
    dc_next = dc_prev;
  }

  // Bridge into the decoder's initial hidden state.
  Vector d_pre = dh_next.cwiseProduct(
      (1.0 - enc.initial_hidden.array().square()).matrix());
  g[kBridgeW].noalias() += d_pre * enc.bridge_input.transpose();
  g[kBridgeB].col(0) += d_pre;
  Vector d_bridge_input = params_[kBridgeW].transpose() * d_pre;

  d_states = d_states.cwiseProduct(enc.mask);
  const int df = config_.frozen_embed_dim;
  std::vector<Vector> d_x(n, Vector::Zero(df + dt));

  Vector dh_f = Vector::Zero(he), dc_f = Vector::Zero(he);
  for (int i = n - 1; i >= 0; --i) {
    Vector dh = d_states.col(i).head(he) + dh_f;
    if (i == n - 1) dh += d_bridge_input.head(he);
    LstmBackward(params_[kEncoderForwardW], enc.forward[i], dh, dc_f,
                 g[kEncoderForwardW], g[kEncoderForwardB], d_input, dc_prev);
    d_x[i] += d_input.head(df + dt);
    dh_f = d_input.tail(he);
    dc_f = dc_prev;
  }
  Vector dh_b = Vector::Zero(he), dc_b = Vector::Zero(he);
  for (int i = 0; i < n; ++i) {
    Vector dh = d_states.col(i).tail(he) + dh_b;
    if (i == 0) dh += d_bridge_input.tail(he);
    LstmBackward(params_[kEncoderBackwardW], enc.backward[i], dh, dc_b,
                 g[kEncoderBackwardW], g[kEncoderBackwardB], d_input, dc_prev);
    d_x[i] += d_input.head(df + dt);
    dh_b = d_input.tail(he);
    dc_b = dc_prev;
  }
  for (int i = 0; i < n; ++i) {
    g[kSourceEmbedding].row(source[i]) += d_x[i].tail(dt).transpose();
  }
  return stats;
}

uint64_t Seq2SeqModel::FrozenChecksum() const {
  std::string bytes(reinterpret_cast<const char *>(frozen_.data()),
                    sizeof(double) * frozen_.size());
  return StableHash(bytes, static_cast<uint64_t>(frozen_.rows()));
}

}  // namespace cmdparse::nn
