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

#ifndef CMDPARSE_DEANONYMIZER_H_
#define CMDPARSE_DEANONYMIZER_H_

#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cmdparse/anonymizer.h"
#include "cmdparse/logical_form.h"
#include "cmdparse/ontology.h"

namespace cmdparse {

// A question to the user about one class-token slot of a logical form.
struct SlotQuery {
  std::string class_name;
  // Surfaces from the replacement map with the same class; empty when
  // anonymization found nothing of this class.
  std::vector<std::string> candidates;
  std::string prompt;
  // Index of the class token within PrintLf(lf).
  int slot_path = 0;
};

// Returns the chosen surface for a slot, or nullopt to abort.
using SlotResolver =
    std::function<std::optional<std::string>(const SlotQuery &)>;

struct DeanonymizedForm {
  LogicalForm lf;
  Ontology ontology;
  std::vector<SlotQuery> queries;
};

// Fills every class token with a string literal. A class whose token occurs
// exactly once in the form and exactly once in the replacement map is bound
// silently; every other class token goes through the resolver. Answers not
// yet in the ontology are added to the returned snapshot. Throws
// ResolverAborted when the resolver declines.
DeanonymizedForm DeanonymizeLf(const LogicalForm &lf,
                               const AnonymizedCommand &command,
                               const SlotResolver &resolver,
                               const Ontology &ontology);

// "Which <location> did you mean? [1] kitchen counter [2] dining table (or
// type a new value):"
std::string FormatSlotPrompt(const std::string &class_name,
                             const std::vector<std::string> &candidates);

// Answers queries from a fixed script and records what it was asked. An
// answer of the form "#n" picks the n-th candidate (1-based). Running out of
// answers aborts.
class ScriptedResolver {
 public:
  explicit ScriptedResolver(std::vector<std::string> answers)
      : answers_(answers.begin(), answers.end()) {}

  std::optional<std::string> operator()(const SlotQuery &query);

  const std::vector<SlotQuery> &asked() const { return asked_; }

 private:
  std::deque<std::string> answers_;
  std::vector<SlotQuery> asked_;
};

}  // namespace cmdparse

#endif  // CMDPARSE_DEANONYMIZER_H_
