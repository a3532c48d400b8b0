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

#ifndef CMDPARSE_ANONYMIZER_H_
#define CMDPARSE_ANONYMIZER_H_

#include <string>
#include <vector>

#include "cmdparse/ontology.h"
#include "cmdparse/strings.h"

namespace cmdparse {

// One replaced span: the class token at `position` in the anonymized tokens
// stands for `original_span` in the input.
struct Replacement {
  std::string class_name;
  Tokens original_span;
  int position = 0;

  bool operator==(const Replacement &) const = default;
};

struct AnonymizedCommand {
  Tokens tokens;
  // Sorted by position, positions distinct.
  std::vector<Replacement> replacements;

  bool operator==(const AnonymizedCommand &) const = default;
};

// Replaces ontology entities with class tokens using greedy longest match,
// left to right. Matching is case-insensitive; unmatched tokens and the
// recorded original spans keep their input spelling. Articles before an
// entity are never absorbed.
AnonymizedCommand Anonymize(const Tokens &command, const Ontology &ontology);

// Restores the original tokens. Throws AnonymizationError when a
// replacement's position does not point at its class token.
Tokens DeanonymizeCommand(const AnonymizedCommand &command);

}  // namespace cmdparse

#endif  // CMDPARSE_ANONYMIZER_H_
