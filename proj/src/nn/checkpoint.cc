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

#include "cmdparse/nn/checkpoint.h"

#include "cmdparse/errors.h"

namespace cmdparse::nn {
namespace {

nlohmann::json MatrixToJson(const Matrix &m) {
  std::vector<double> data(m.data(), m.data() + m.size());
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix MatrixFromJson(const nlohmann::json &j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  std::vector<double> data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw ModelError(ModelError::Kind::kBadCheckpoint,
                     "tensor data does not match its shape");
  }
  Matrix m(rows, cols);
  std::copy(data.begin(), data.end(), m.data());
  return m;
}

Vocabulary VocabFromJson(const nlohmann::json &j) {
  std::vector<std::string> tokens = j.get<std::vector<std::string>>();
  if (tokens.size() < static_cast<size_t>(Vocabulary::kNumReserved)) {
    throw ModelError(ModelError::Kind::kBadCheckpoint, "truncated vocabulary");
  }
  return Vocabulary(tokens);
}

}  // namespace

nlohmann::json CheckpointToJson(const Seq2SeqModel &model) {
  nlohmann::json params = nlohmann::json::object();
  for (int id = 0; id < kNumParams; ++id) {
    params[ParamName(id)] = MatrixToJson(model.params()[id]);
  }
  return {{"format", kCheckpointFormat},
          {"version", kCheckpointVersion},
          {"config", ConfigToJson(model.config())},
          {"source_vocab", model.source_vocab().tokens()},
          {"target_vocab", model.target_vocab().tokens()},
          {"frozen_embedding", MatrixToJson(model.frozen_embedding())},
          {"params", params}};
}

Seq2SeqModel CheckpointFromJson(const nlohmann::json &json) {
  try {
    if (json.at("format").get<std::string>() != kCheckpointFormat) {
      throw ModelError(ModelError::Kind::kBadCheckpoint, "unknown format tag");
    }
    if (json.at("version").get<int>() != kCheckpointVersion) {
      throw ModelError(ModelError::Kind::kBadCheckpoint,
                       "unsupported version " +
                           json.at("version").dump());
    }
    Seq2SeqModel model(ConfigFromJson(json.at("config")),
                       VocabFromJson(json.at("source_vocab")),
                       VocabFromJson(json.at("target_vocab")),
                       MatrixFromJson(json.at("frozen_embedding")));
    for (int id = 0; id < kNumParams; ++id) {
      Matrix m = MatrixFromJson(json.at("params").at(ParamName(id)));
      Matrix &slot = model.params()[id];
      if (m.rows() != slot.rows() || m.cols() != slot.cols()) {
        throw ModelError(ModelError::Kind::kBadCheckpoint,
                         std::string("shape mismatch for ") + ParamName(id));
      }
      slot = std::move(m);
    }
    return model;
  } catch (const nlohmann::json::exception &e) {
    throw ModelError(ModelError::Kind::kBadCheckpoint, e.what());
  }
}

void SaveCheckpoint(const Seq2SeqModel &model, const std::string &path) {
  WriteFile(path, CheckpointToJson(model).dump() + "\n");
}

Seq2SeqModel LoadCheckpoint(const std::string &path) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception &e) {
    throw ModelError(ModelError::Kind::kBadCheckpoint, e.what());
  }
  return CheckpointFromJson(json);
}

}  // namespace cmdparse::nn
