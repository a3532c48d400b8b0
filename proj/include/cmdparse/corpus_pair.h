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

#ifndef CMDPARSE_CORPUS_PAIR_H_
#define CMDPARSE_CORPUS_PAIR_H_

#include <string>

#include "cmdparse/logical_form.h"
#include "cmdparse/strings.h"

namespace cmdparse {

enum class Partition { kUnassigned, kTrain, kValidation, kTest };

const char *SplitName(Partition split);
Partition ParseSplitName(std::string_view name);

// A command paired with its logical form.
struct CorpusPair {
  Tokens command;
  LogicalForm lf = LogicalForm::Variable(1);
  int category = 0;
  bool anonymized = false;
  Partition split = Partition::kUnassigned;

  std::string CommandText() const { return Join(command); }
  std::string LfText() const { return PrintLfString(lf); }
};

}  // namespace cmdparse

#endif  // CMDPARSE_CORPUS_PAIR_H_
