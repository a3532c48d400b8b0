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

#include "cmdparse/deanonymizer.h"

#include <algorithm>
#include <map>

#include "cmdparse/errors.h"
#include "cmdparse/log.h"

namespace cmdparse {
namespace {

LogicalForm Substitute(const LogicalForm &lf,
                       const std::vector<std::string> &fills, size_t &next) {
  switch (lf.kind()) {
    case LogicalForm::Kind::kClassToken:
      return LogicalForm::String(fills[next++]);
    case LogicalForm::Kind::kApplication: {
      std::vector<LogicalForm> args;
      for (const LogicalForm &c : lf.children())
        args.push_back(Substitute(c, fills, next));
      return LogicalForm::Application(lf.symbol(), std::move(args));
    }
    case LogicalForm::Kind::kLambda: {
      std::vector<LogicalForm> body;
      for (const LogicalForm &c : lf.children())
        body.push_back(Substitute(c, fills, next));
      return LogicalForm::Lambda(lf.variable(), std::move(body), lf.symbol());
    }
    default:
      return lf;
  }
}

}  // namespace

std::string FormatSlotPrompt(const std::string &class_name,
                             const std::vector<std::string> &candidates) {
  std::string prompt = "Which " + ClassTokenText(class_name) + " did you mean?";
  for (size_t i = 0; i < candidates.size(); ++i) {
    prompt += " [" + std::to_string(i + 1) + "] " + candidates[i];
  }
  prompt += candidates.empty() ? " (type a new value):"
                               : " (or type a new value):";
  return prompt;
}

DeanonymizedForm DeanonymizeLf(const LogicalForm &lf,
                               const AnonymizedCommand &command,
                               const SlotResolver &resolver,
                               const Ontology &ontology) {
  const std::vector<std::string> slots = ClassTokensOf(lf);

  std::map<std::string, std::vector<std::string>> spans_by_class;
  for (const Replacement &r : command.replacements) {
    auto &spans = spans_by_class[r.class_name];
    std::string surface = NormalizeSurface(Join(r.original_span));
    spans.push_back(surface);
  }
  std::map<std::string, int> slots_by_class;
  for (const std::string &c : slots) ++slots_by_class[c];

  for (const auto &[c, spans] : spans_by_class) {
    if (slots_by_class.count(c) == 0) {
      LogWarning("replacement of class '" + c +
                 "' has no slot in the predicted form");
    }
  }

  // Positions of class tokens within the canonical print.
  std::vector<int> slot_paths;
  {
    Tokens printed = PrintLf(lf);
    for (size_t i = 0; i < printed.size(); ++i) {
      if (IsClassTokenText(printed[i]) && i > 0 && printed[i - 1] == kQuote)
        slot_paths.push_back(static_cast<int>(i));
    }
  }

  DeanonymizedForm result{lf, ontology, {}};
  std::vector<std::string> fills;
  for (size_t s = 0; s < slots.size(); ++s) {
    const std::string &c = slots[s];
    const std::vector<std::string> &spans = spans_by_class[c];
    if (slots_by_class[c] == 1 && spans.size() == 1) {
      fills.push_back(spans[0]);
      continue;
    }
    SlotQuery query;
    query.class_name = c;
    for (const std::string &span : spans) {
      if (std::find(query.candidates.begin(), query.candidates.end(), span) ==
          query.candidates.end())
        query.candidates.push_back(span);
    }
    query.prompt = FormatSlotPrompt(c, query.candidates);
    query.slot_path = s < slot_paths.size() ? slot_paths[s] : -1;
    result.queries.push_back(query);
    std::optional<std::string> answer =
        resolver ? resolver(query) : std::nullopt;
    std::string surface = answer ? NormalizeSurface(*answer) : std::string();
    if (surface.empty()) {
      throw ResolverAborted("no value given for " + ClassTokenText(c));
    }
    if (!result.ontology.HasClass(c)) {
      result.ontology = result.ontology.AddClass(c);
    }
    result.ontology = result.ontology.AddEntity(c, surface);
    fills.push_back(surface);
  }

  size_t next = 0;
  result.lf = Substitute(lf, fills, next);
  return result;
}

std::optional<std::string> ScriptedResolver::operator()(
    const SlotQuery &query) {
  asked_.push_back(query);
  if (answers_.empty()) return std::nullopt;
  std::string answer = answers_.front();
  answers_.pop_front();
  if (answer.size() > 1 && answer[0] == '#') {
    size_t index = std::stoul(answer.substr(1));
    if (index >= 1 && index <= query.candidates.size())
      return query.candidates[index - 1];
    return std::nullopt;
  }
  return answer;
}

}  // namespace cmdparse
