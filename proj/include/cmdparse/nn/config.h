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

#ifndef CMDPARSE_NN_CONFIG_H_
#define CMDPARSE_NN_CONFIG_H_

#include <cstdint>

#include "json.hpp"

namespace cmdparse::nn {

struct ModelConfig {
  int tunable_embed_dim = 100;
  // Set from the pretrained vector file; 0 disables the frozen channel.
  int frozen_embed_dim = 0;
  int encoder_hidden = 256;  // per direction
  int decoder_hidden = 256;
  double encoder_dropout = 0.1;
  int beam_width = 5;
  int max_decode_len = 80;
  int max_epochs = 150;
  int patience = 10;
  int batch_size = 32;
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double init_scale = 0.08;
  // Global gradient-norm clip per batch; 0 disables.
  double grad_clip = 0;
  uint64_t seed = 1;

  // Throws ModelError(kBadConfig) on inconsistent values.
  void Validate() const;
};

nlohmann::json ConfigToJson(const ModelConfig &config);
// Missing keys keep their defaults.
ModelConfig ConfigFromJson(const nlohmann::json &json,
                           ModelConfig base = ModelConfig());

}  // namespace cmdparse::nn

#endif  // CMDPARSE_NN_CONFIG_H_
