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

#ifndef CMDPARSE_NN_CHECKPOINT_H_
#define CMDPARSE_NN_CHECKPOINT_H_

#include <string>

#include "cmdparse/nn/model.h"

namespace cmdparse::nn {

inline constexpr const char *kCheckpointFormat = "cmdparse-seq2seq";
inline constexpr int kCheckpointVersion = 1;

nlohmann::json CheckpointToJson(const Seq2SeqModel &model);
// Throws ModelError(kBadCheckpoint) on a wrong tag, version or shape.
Seq2SeqModel CheckpointFromJson(const nlohmann::json &json);

void SaveCheckpoint(const Seq2SeqModel &model, const std::string &path);
Seq2SeqModel LoadCheckpoint(const std::string &path);

}  // namespace cmdparse::nn

#endif  // CMDPARSE_NN_CHECKPOINT_H_
