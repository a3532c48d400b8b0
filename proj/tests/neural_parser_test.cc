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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "cmdparse/errors.h"
#include "cmdparse/nn/checkpoint.h"
#include "cmdparse/nn/decoder.h"
#include "cmdparse/nn/trainer.h"
#include "cmdparse/nn/vectors.h"
#include "doctest.h"
#include "nn_fixtures.h"

namespace cmdparse {
namespace {

using nn::Matrix;
using nn::Vector;
using testing::MakeModel;
using testing::Stride;
using testing::TinyConfig;
using testing::Words;

ModelError::Kind ModelErrorKind(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const ModelError &e) {
    return e.kind();
  }
  FAIL("expected ModelError");
  return ModelError::Kind::kBadConfig;
}

TEST_CASE("pretrained vectors") {
  Vocabulary vocab({"<pad>", "<start>", "<end>", "<unk>", "go", "to", "the"});
  Matrix m = nn::ParsePretrainedVectors(
      "go 1 2 3\nto 0.5 0.5 0.5\nthe -1 0 1e-2\n", vocab);
  CHECK(m.rows() == vocab.size());
  CHECK(m.cols() == 3);
  int nonzero = 0;
  for (int r = 0; r < m.rows(); ++r) nonzero += m.row(r).squaredNorm() > 0;
  CHECK(nonzero == 3);
  CHECK(m(vocab.Id("go"), 2) == 3.0);

  CHECK(ModelErrorKind([&] {
          nn::ParsePretrainedVectors("go 1 2 3\nto 1 2\n", vocab);
        }) == ModelError::Kind::kInconsistentDimension);
  CHECK(ModelErrorKind([&] {
          nn::ParsePretrainedVectors("go 1 2 x\n", vocab);
        }) == ModelError::Kind::kMalformedLine);
  CHECK(ModelErrorKind([&] { nn::ParsePretrainedVectors("go\n", vocab); }) ==
        ModelError::Kind::kMalformedLine);
  try {
    nn::ParsePretrainedVectors("go 1 2 3\n\nto 1 2\n", vocab);
  } catch (const ModelError &e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("bundled vector file") {
  std::string text = ReadFile(testing::DataPath("vectors_mini.txt"));
  std::vector<std::string> words;
  for (const std::string &line : SplitLines(text))
    if (!Trim(line).empty()) words.push_back(SplitWhitespace(line)[0]);
  CHECK(words.size() == 50);
  Vocabulary vocab;
  for (const std::string &w : words) vocab.Add(w);
  Matrix m = nn::LoadPretrainedVectors(testing::DataPath("vectors_mini.txt"),
                                       vocab);
  CHECK(m.cols() == 10);
  for (const std::string &line : SplitLines(text)) {
    Tokens fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    for (int k = 0; k < 10; ++k)
      CHECK(m(vocab.Id(fields[0]), k) == std::stod(fields[k + 1]));
  }
}

TEST_CASE("embedding channels") {
  std::vector<CorpusPair> pairs = Stride(20, 25);
  nn::Seq2SeqModel plain = MakeModel(pairs, TinyConfig());
  std::vector<int> ids = plain.EncodeSource(pairs[0].command);
  CHECK(plain.Embed(ids)[0].size() == TinyConfig().tunable_embed_dim);

  auto [source, target] = BuildVocab(pairs);
  Matrix frozen = nn::ParsePretrainedVectors("bring 1 2 3 4\ngo 5 6 7 8\n",
                                             source);
  nn::Seq2SeqModel model(TinyConfig(), source, target, frozen);
  std::vector<Vector> e = model.Embed(model.EncodeSource(Words("go bring zzz")));
  CHECK(e[0].size() == 4 + TinyConfig().tunable_embed_dim);
  CHECK(e[0].head(4) == Vector::LinSpaced(4, 5, 8));
  CHECK(e[1].head(4) == Vector::LinSpaced(4, 1, 4));
  CHECK(e[2].head(4).isZero());
  // The frozen channel is not a trainable tensor.
  CHECK(model.ZeroGradients().size() == nn::kNumParams);
  CHECK(model.params()[nn::kSourceEmbedding].cols() ==
        TinyConfig().tunable_embed_dim);
}

TEST_CASE("encoder properties") {
  std::vector<CorpusPair> pairs = Stride(20, 25);
  nn::Seq2SeqModel model = MakeModel(pairs, TinyConfig());
  const int h = TinyConfig().encoder_hidden;

  nn::EncoderOutput one = model.Encode(model.EncodeSource(Words("go")), nullptr);
  CHECK(one.states.cols() == 1);
  CHECK(one.bridge_input.head(h) == one.states.col(0).head(h));

  std::vector<int> ids = model.EncodeSource(pairs[3].command);
  nn::EncoderOutput a = model.Encode(ids, nullptr);
  nn::EncoderOutput b = model.Encode(ids, nullptr);
  CHECK(a.states == b.states);
  CHECK(a.initial_hidden == b.initial_hidden);

  // With tied directions, reversing the input swaps the channels.
  model.params()[nn::kEncoderBackwardW] = model.params()[nn::kEncoderForwardW];
  model.params()[nn::kEncoderBackwardB] = model.params()[nn::kEncoderForwardB];
  std::vector<int> reversed(ids.rbegin(), ids.rend());
  nn::EncoderOutput f = model.Encode(ids, nullptr);
  nn::EncoderOutput r = model.Encode(reversed, nullptr);
  const int n = static_cast<int>(ids.size());
  for (int i = 0; i < n; ++i) {
    CHECK((f.states.col(i).head(h) - r.states.col(n - 1 - i).tail(h))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
  }
}

TEST_CASE("attention") {
  Matrix w = Matrix::Identity(3, 3);
  Vector h = Vector::Ones(3);
  Matrix single(3, 1);
  single << 1, 2, 3;
  nn::Attention a = nn::Attend(h, single, w);
  CHECK(a.weights.size() == 1);
  CHECK(a.weights(0) == doctest::Approx(1.0));
  CHECK((a.context - single.col(0)).norm() < 1e-15);

  Matrix same(3, 4);
  for (int k = 0; k < 4; ++k) same.col(k) = single.col(0);
  nn::Attention u = nn::Attend(h, same, w);
  for (int k = 0; k < 4; ++k) CHECK(u.weights(k) == doctest::Approx(0.25));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix states = Matrix::NullaryExpr(5, 7, [&] { return dist(rng); });
    Matrix wr = Matrix::NullaryExpr(4, 5, [&] { return dist(rng); });
    Vector hr = Vector::NullaryExpr(4, [&] { return dist(rng); });
    nn::Attention r = nn::Attend(hr, states, wr);
    CHECK(std::abs(r.weights.sum() - 1.0) <= 1e-12);
    CHECK(r.weights.minCoeff() >= 0.0);
    for (int d = 0; d < 5; ++d) {
      CHECK(r.context(d) <= states.row(d).maxCoeff() + 1e-12);
      CHECK(r.context(d) >= states.row(d).minCoeff() - 1e-12);
    }
  }
}

TEST_CASE("output distribution sums to one") {
  std::vector<CorpusPair> pairs = Stride(20, 25);
  nn::Seq2SeqModel model = MakeModel(pairs, TinyConfig());
  nn::EncoderOutput enc =
      model.Encode(model.EncodeSource(pairs[0].command), nullptr);
  nn::DecoderState state = model.InitialState(enc);
  int prev = Vocabulary::kStart;
  for (int step = 0; step < 5; ++step) {
    Vector logp = model.Step(enc, state, prev);
    CHECK(std::abs(logp.array().exp().sum() - 1.0) <= 1e-12);
    logp.maxCoeff(&prev);
  }
}

TEST_CASE("fresh model predicts roughly uniformly") {
  std::vector<CorpusPair> pairs = Stride(32, 16);
  nn::Seq2SeqModel model = MakeModel(pairs, testing::DeskConfig());
  double loss = 0;
  int tokens = 0;
  for (const CorpusPair &p : pairs) {
    nn::LossStats s = model.Loss(model.EncodeSource(p.command),
                                 model.EncodeTarget(PrintLf(p.lf)), nullptr,
                                 nullptr, 1.0);
    loss += s.loss;
    tokens += s.tokens;
  }
  const double expected = std::log(model.target_vocab().size());
  CHECK(loss / tokens == doctest::Approx(expected).epsilon(0.2));
}

TEST_CASE("gradients match finite differences") {
  std::vector<CorpusPair> pairs = Stride(3, 97);
  nn::ModelConfig config = TinyConfig();
  config.encoder_dropout = 0.3;
  auto [source, target] = BuildVocab(pairs);
  Matrix frozen = Matrix::Constant(source.size(), 3, 0.05);
  nn::Seq2SeqModel model(config, source, target, frozen);
  nn::GradientCheckReport report =
      nn::GradientCheck(model, pairs, 1e-5, 1e-4);
  CHECK(report.params.size() == nn::kNumParams);
  for (const nn::ParamCheck &c : report.params) {
    INFO(c.name);
    CHECK(c.max_relative_error < 1e-4);
  }
  CHECK(report.passed);
}

TEST_CASE("attention gradient on a two-token input") {
  std::vector<CorpusPair> pairs = Stride(1, 1);
  pairs[0].command = Words("go there");
  nn::Seq2SeqModel model = MakeModel(pairs, TinyConfig());
  nn::GradientCheckReport report = nn::GradientCheck(model, pairs, 1e-5, 1e-4);
  CHECK(report.params[nn::kAttention].name == "attention");
  CHECK(report.params[nn::kAttention].max_relative_error < 1e-4);
}

TEST_CASE("a corrupted gradient is caught") {
  std::vector<CorpusPair> pairs = Stride(2, 97);
  nn::Seq2SeqModel model = MakeModel(pairs, TinyConfig());
  // Finite differences never reach zero error.
  nn::GradientCheckReport ok = nn::GradientCheck(model, pairs, 1e-5, 1e-4);
  CHECK(ok.passed);
  nn::GradientCheckReport strict = nn::GradientCheck(model, pairs, 1e-5, 0.0);
  CHECK_FALSE(strict.passed);
  CHECK(ModelErrorKind([&] {
          nn::GradientCheck(model, pairs, 1e-5, 0.0, true);
        }) == ModelError::Kind::kGradientMismatch);
}

TEST_CASE("training is deterministic and keeps the frozen channel") {
  std::vector<CorpusPair> pairs = Stride(24, 21);
  auto [source, target] = BuildVocab(pairs);
  Matrix frozen = nn::LoadPretrainedVectors(
      testing::DataPath("vectors_mini.txt"), source);
  nn::ModelConfig config = TinyConfig(12, 8);
  config.max_epochs = 4;
  nn::Seq2SeqModel a(config, source, target, frozen);
  nn::Seq2SeqModel b(config, source, target, frozen);
  const uint64_t checksum = a.FrozenChecksum();
  nn::TrainReport ra = nn::Train(a, pairs, {});
  nn::TrainReport rb = nn::Train(b, pairs, {});
  CHECK(a.FrozenChecksum() == checksum);
  CHECK(a.frozen_embedding() == frozen);
  for (int id = 0; id < nn::kNumParams; ++id) CHECK(a.params()[id] == b.params()[id]);
  REQUIRE(ra.epochs.size() == rb.epochs.size());
  for (size_t k = 0; k < ra.epochs.size(); ++k)
    CHECK(ra.epochs[k].train_loss == rb.epochs[k].train_loss);
  CHECK(ra.config["encoder_hidden"] == 12);
}

TEST_CASE("parameters without gradient stay put") {
  std::vector<CorpusPair> pairs = Stride(10, 40);
  auto [source, target] = BuildVocab(pairs);
  const int unused = target.Add("never_seen");
  nn::ModelConfig config = TinyConfig();
  config.max_epochs = 2;
  nn::Seq2SeqModel model(config, source, target);
  Matrix before = model.params()[nn::kTargetEmbedding].row(unused);
  nn::Train(model, pairs, {});
  CHECK(model.params()[nn::kTargetEmbedding].row(unused) == before);
}

TEST_CASE("training errors") {
  nn::Seq2SeqModel model = MakeModel(Stride(4, 100), TinyConfig());
  CHECK(ModelErrorKind([&] { nn::Train(model, {}, {}); }) ==
        ModelError::Kind::kEmptyTrainSet);

  nn::Seq2SeqModel broken = MakeModel(Stride(4, 100), TinyConfig());
  broken.params()[nn::kOutputB](0, 0) = std::nan("");
  CHECK(ModelErrorKind([&] { nn::Train(broken, Stride(4, 100), {}); }) ==
        ModelError::Kind::kNaNLoss);

  nn::ModelConfig short_config = TinyConfig();
  short_config.max_decode_len = 5;
  nn::Seq2SeqModel too_short = MakeModel(Stride(4, 100), short_config);
  CHECK(ModelErrorKind([&] { nn::Train(too_short, Stride(4, 100), {}); }) ==
        ModelError::Kind::kBadConfig);

  nn::ModelConfig bad = TinyConfig();
  bad.encoder_dropout = 1.5;
  CHECK(ModelErrorKind([&] { bad.Validate(); }) == ModelError::Kind::kBadConfig);
}

TEST_CASE("beam search") {
  std::vector<CorpusPair> pairs = Stride(30, 17);
  nn::ModelConfig config = TinyConfig(16, 8);
  config.max_epochs = 3;
  nn::Seq2SeqModel model = MakeModel(pairs, config);
  nn::Train(model, pairs, {});
  for (const CorpusPair &p : pairs) {
    std::vector<nn::Hypothesis> one = nn::DecodeBeam(model, p.command, 1, 40);
    nn::Hypothesis greedy = nn::DecodeGreedy(model, p.command, 40);
    REQUIRE(one.size() == 1);
    CHECK(one[0].ids == greedy.ids);
    std::vector<nn::Hypothesis> five = nn::DecodeBeam(model, p.command, 5, 40);
    REQUIRE(!five.empty());
    CHECK(five.size() <= 5);
    for (const nn::Hypothesis &h : five) CHECK(five[0].score >= h.score);
  }
}

TEST_CASE("checkpoint round trip") {
  std::vector<CorpusPair> pairs = Stride(10, 40);
  auto [source, target] = BuildVocab(pairs);
  Matrix frozen = Matrix::Constant(source.size(), 2, 0.25);
  nn::Seq2SeqModel model(TinyConfig(), source, target, frozen);
  const std::string path =
      (std::filesystem::temp_directory_path() / "cmdparse_ckpt_test.json")
          .string();
  nn::SaveCheckpoint(model, path);
  nn::Seq2SeqModel back = nn::LoadCheckpoint(path);
  std::remove(path.c_str());
  CHECK(back.source_vocab().tokens() == model.source_vocab().tokens());
  CHECK(back.target_vocab().tokens() == model.target_vocab().tokens());
  CHECK(back.frozen_embedding() == model.frozen_embedding());
  for (int id = 0; id < nn::kNumParams; ++id)
    CHECK(back.params()[id] == model.params()[id]);
  CHECK(nn::ConfigToJson(back.config()) == nn::ConfigToJson(model.config()));
  CHECK(nn::DecodeGreedy(back, pairs[0].command, 30).ids ==
        nn::DecodeGreedy(model, pairs[0].command, 30).ids);

  nlohmann::json j = nn::CheckpointToJson(model);
  j["version"] = 99;
  CHECK(ModelErrorKind([&] { nn::CheckpointFromJson(j); }) ==
        ModelError::Kind::kBadCheckpoint);
  j = nn::CheckpointToJson(model);
  j["params"]["attention"]["rows"] = 1;
  CHECK(ModelErrorKind([&] { nn::CheckpointFromJson(j); }) ==
        ModelError::Kind::kBadCheckpoint);
}

TEST_CASE("config json") {
  nn::ModelConfig c = TinyConfig();
  c.learning_rate = 0.01;
  c.seed = 77;
  nn::ModelConfig back = nn::ConfigFromJson(nn::ConfigToJson(c));
  CHECK(nn::ConfigToJson(back) == nn::ConfigToJson(c));
  nn::ModelConfig partial = nn::ConfigFromJson({{"beam_width", 3}});
  CHECK(partial.beam_width == 3);
  CHECK(partial.encoder_hidden == 256);
  CHECK(partial.patience == 10);
  CHECK(partial.max_epochs == 150);
}

TEST_CASE("teacher-forced accuracy rises over the first epochs") {
  std::vector<CorpusPair> pairs = Stride(50, 10);
  nn::ModelConfig config = testing::DeskConfig();
  config.max_epochs = 5;
  config.seed = 1;
  nn::Seq2SeqModel model = MakeModel(pairs, config);
  nn::TrainReport report = nn::Train(model, pairs, {});
  REQUIRE(report.epochs.size() >= 5);
  for (size_t k = 1; k < 5; ++k) {
    CHECK(report.epochs[k].train_token_accuracy >=
          report.epochs[k - 1].train_token_accuracy);
  }
}

}  // namespace
}  // namespace cmdparse
