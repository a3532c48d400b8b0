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

#ifndef CMDPARSE_NN_VECTORS_H_
#define CMDPARSE_NN_VECTORS_H_

#include <string>

#include "cmdparse/corpus.h"
#include "cmdparse/nn/model.h"

namespace cmdparse::nn {

// Parses `token v1 ... vD` lines into a |vocab| x D matrix. Rows of tokens
// missing from the text stay zero; D comes from the first non-blank line.
// Throws ModelError(kMalformedLine) and ModelError(kInconsistentDimension)
// with 1-based line numbers.
Matrix ParsePretrainedVectors(const std::string &text, const Vocabulary &vocab);
Matrix LoadPretrainedVectors(const std::string &path, const Vocabulary &vocab);

}  // namespace cmdparse::nn

#endif  // CMDPARSE_NN_VECTORS_H_
