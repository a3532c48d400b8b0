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

#include "cmdparse/nn/trainer.h"

#include <chrono>
#include <cmath>
#include <numeric>

#include "cmdparse/errors.h"
#include "cmdparse/nn/decoder.h"

namespace cmdparse::nn {

Adam::Adam(const ModelConfig &config, const std::vector<Matrix> &params)
    : lr_(config.learning_rate),
      beta1_(config.adam_beta1),
      beta2_(config.adam_beta2),
      eps_(config.adam_eps) {
  for (const Matrix &p : params) {
    m_.push_back(Matrix::Zero(p.rows(), p.cols()));
    v_.push_back(Matrix::Zero(p.rows(), p.cols()));
  }
}

void Adam::Update(std::vector<Matrix> &params, const Gradients &grads) {
  ++steps_;
  const double correction1 = 1.0 - std::pow(beta1_, steps_);
  const double correction2 = 1.0 - std::pow(beta2_, steps_);
  for (size_t k = 0; k < params.size(); ++k) {
    m_[k] = beta1_ * m_[k] + (1.0 - beta1_) * grads[k];
    v_[k] = beta2_ * v_[k] + (1.0 - beta2_) * grads[k].cwiseProduct(grads[k]);
    params[k].array() -= lr_ * (m_[k].array() / correction1) /
                         ((v_[k].array() / correction2).sqrt() + eps_);
  }
}

double ExactMatchAccuracy(const Seq2SeqModel &model,
                          const std::vector<CorpusPair> &pairs,
                          int beam_width, int max_len) {
  if (pairs.empty()) return 0.0;
  int correct = 0;
  for (const CorpusPair &p : pairs) {
    std::vector<Hypothesis> beam =
        DecodeBeam(model, p.command, beam_width, max_len);
    if (!beam.empty() && beam[0].finished && beam[0].tokens == PrintLf(p.lf))
      ++correct;
  }
  return 100.0 * correct / static_cast<double>(pairs.size());
}

TrainReport Train(Seq2SeqModel &model, const std::vector<CorpusPair> &train,
                  const std::vector<CorpusPair> &validation) {
  if (train.empty()) {
    throw ModelError(ModelError::Kind::kEmptyTrainSet, "no training pairs");
  }
  const ModelConfig &cfg = model.config();
  const auto start_time = std::chrono::steady_clock::now();

  struct Example {
    std::vector<int> source, target;
  };
  std::vector<Example> examples;
  size_t longest = 0;
  for (const CorpusPair &p : train) {
    Tokens lf = PrintLf(p.lf);
    longest = std::max(longest, lf.size());
    examples.push_back({model.EncodeSource(p.command), model.EncodeTarget(lf)});
  }
  if (static_cast<size_t>(cfg.max_decode_len) < longest + 2) {
    throw ModelError(ModelError::Kind::kBadConfig,
                     "max_decode_len " + std::to_string(cfg.max_decode_len) +
                         " is shorter than the longest target + 2 (" +
                         std::to_string(longest + 2) + ")");
  }
  const std::vector<CorpusPair> &selection =
      validation.empty() ? train : validation;

  TrainReport report;
  report.config = ConfigToJson(cfg);
  Adam adam(cfg, model.params());
  Random rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);

  std::vector<Matrix> best_params = model.params();
  double best_accuracy = -1;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    for (size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.Below(i)]);
    }
    double loss_sum = 0;
    long token_sum = 0, correct_sum = 0;
    for (size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const size_t end = std::min(order.size(), begin + cfg.batch_size);
      int batch_tokens = 0;
      for (size_t k = begin; k < end; ++k)
        batch_tokens += static_cast<int>(examples[order[k]].target.size());
      Gradients grads = model.ZeroGradients();
      for (size_t k = begin; k < end; ++k) {
        const Example &ex = examples[order[k]];
        LossStats s = model.Loss(ex.source, ex.target, &rng, &grads,
                                 1.0 / batch_tokens);
        loss_sum += s.loss;
        token_sum += s.tokens;
        correct_sum += s.correct;
      }
      if (!std::isfinite(loss_sum)) {
        throw ModelError(ModelError::Kind::kNaNLoss,
                         "non-finite loss in epoch " + std::to_string(epoch) +
                             " at batch starting " + std::to_string(begin));
      }
      if (cfg.grad_clip > 0) {
        double sq = 0;
        for (const Matrix &g : grads) sq += g.squaredNorm();
        const double norm = std::sqrt(sq);
        if (norm > cfg.grad_clip)
          for (Matrix &g : grads) g *= cfg.grad_clip / norm;
      }
      adam.Update(model.params(), grads);
    }
    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = loss_sum / static_cast<double>(token_sum);
    record.train_token_accuracy =
        static_cast<double>(correct_sum) / static_cast<double>(token_sum);
    record.validation_exact_match = ExactMatchAccuracy(
        model, selection, cfg.beam_width, cfg.max_decode_len);
    report.epochs.push_back(record);

    if (record.validation_exact_match > best_accuracy) {
      best_accuracy = record.validation_exact_match;
      report.best_epoch = epoch;
      best_params = model.params();
    }
    if (best_accuracy >= 100.0) {
      report.stopped_at_ceiling = true;
      break;
    }
    if (epoch - report.best_epoch >= cfg.patience) {
      report.stopped_early = true;
      break;
    }
  }
  model.params() = std::move(best_params);
  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start_time)
                            .count();
  return report;
}

GradientCheckReport GradientCheck(Seq2SeqModel &model,
                                  const std::vector<CorpusPair> &batch,
                                  double epsilon, double tolerance,
                                  bool throw_on_failure) {
  struct Example {
    std::vector<int> source, target;
  };
  std::vector<Example> examples;
  int tokens = 0;
  for (const CorpusPair &p : batch) {
    examples.push_back(
        {model.EncodeSource(p.command), model.EncodeTarget(PrintLf(p.lf))});
    tokens += static_cast<int>(examples.back().target.size());
  }
  const double scale = 1.0 / tokens;
  const uint64_t mask_seed = 12345;
  auto loss = [&](Gradients *grads) {
    Random rng(mask_seed);
    double total = 0;
    for (const Example &ex : examples) {
      total += model.Loss(ex.source, ex.target, &rng, grads, scale).loss;
    }
    return total * scale;
  };

  Gradients analytic = model.ZeroGradients();
  loss(&analytic);

  GradientCheckReport report;
  for (int id = 0; id < kNumParams; ++id) {
    Matrix &param = model.params()[id];
    ParamCheck check;
    check.name = ParamName(id);
    for (Eigen::Index k = 0; k < param.size(); ++k) {
      const double saved = param.data()[k];
      param.data()[k] = saved + epsilon;
      const double plus = loss(nullptr);
      param.data()[k] = saved - epsilon;
      const double minus = loss(nullptr);
      param.data()[k] = saved;
      const double numeric = (plus - minus) / (2 * epsilon);
      const double exact = analytic[id].data()[k];
      const double abs_error = std::abs(numeric - exact);
      // Floor keeps entries with vanishing gradients from dividing noise by
      // noise.
      const double denom =
          std::max({std::abs(numeric), std::abs(exact), 1e-6});
      check.max_abs_error = std::max(check.max_abs_error, abs_error);
      check.max_relative_error =
          std::max(check.max_relative_error, abs_error / denom);
      ++check.entries;
    }
    if (check.max_relative_error >= tolerance) report.passed = false;
    report.params.push_back(check);
  }
  if (!report.passed && throw_on_failure) {
    const ParamCheck *worst = &report.params[0];
    for (const ParamCheck &c : report.params)
      if (c.max_relative_error > worst->max_relative_error) worst = &c;
    throw ModelError(ModelError::Kind::kGradientMismatch,
                     worst->name + " max relative error " +
                         std::to_string(worst->max_relative_error));
  }
  return report;
}

}  // namespace cmdparse::nn
