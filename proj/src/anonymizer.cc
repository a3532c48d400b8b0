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

#include "cmdparse/anonymizer.h"

#include <algorithm>

#include "cmdparse/errors.h"
#include "cmdparse/log.h"
#include "cmdparse/logical_form.h"

namespace cmdparse {

AnonymizedCommand Anonymize(const Tokens &command, const Ontology &ontology) {
  AnonymizedCommand result;
  const int n = static_cast<int>(command.size());
  const int longest = ontology.max_entity_length();
  int i = 0;
  while (i < n) {
    int matched = 0;
    std::string matched_class;
    for (int len = std::min(longest, n - i); len >= 1; --len) {
      Tokens span(command.begin() + i, command.begin() + i + len);
      std::string surface = ToLower(Join(span));
      std::vector<std::string> owners = ontology.ClassesOf(surface);
      if (owners.empty()) continue;
      if (owners.size() > 1) {
        LogWarning("'" + surface + "' is ambiguous between classes; using '" +
                   owners[0] + "'");
      }
      matched = len;
      matched_class = owners[0];
      break;
    }
    if (matched == 0) {
      result.tokens.push_back(command[i]);
      ++i;
      continue;
    }
    Replacement r;
    r.class_name = matched_class;
    r.original_span.assign(command.begin() + i, command.begin() + i + matched);
    r.position = static_cast<int>(result.tokens.size());
    result.tokens.push_back(ClassTokenText(matched_class));
    result.replacements.push_back(std::move(r));
    i += matched;
  }
  return result;
}

Tokens DeanonymizeCommand(const AnonymizedCommand &command) {
  Tokens out;
  size_t next = 0;
  int previous = -1;
  for (const Replacement &r : command.replacements) {
    if (r.position <= previous ||
        r.position >= static_cast<int>(command.tokens.size())) {
      throw AnonymizationError("inconsistent replacement position " +
                               std::to_string(r.position));
    }
    if (command.tokens[r.position] != ClassTokenText(r.class_name)) {
      throw AnonymizationError("position " + std::to_string(r.position) +
                               " does not hold " + ClassTokenText(r.class_name));
    }
    if (r.original_span.empty()) {
      throw AnonymizationError("empty original span at position " +
                               std::to_string(r.position));
    }
    for (; next < static_cast<size_t>(r.position); ++next)
      out.push_back(command.tokens[next]);
    out.insert(out.end(), r.original_span.begin(), r.original_span.end());
    next = r.position + 1;
    previous = r.position;
  }
  for (; next < command.tokens.size(); ++next) out.push_back(command.tokens[next]);
  return out;
}

}  // namespace cmdparse
