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

#include "cmdparse/predicates.h"

#include <fstream>
#include <sstream>
#include <vector>

#include "cmdparse/errors.h"
#include "cmdparse/strings.h"

namespace cmdparse {
namespace {

// Kept identical to data/predicates.tsv.
constexpr std::string_view kBundledRegistry =
    "# name\tarity\tkind\n"
    "bring\t1-2\taction\n"
    "go\t1\taction\n"
    "say\t1\taction\n"
    "guide\t2\taction\n"
    "count\t1\taction\n"
    "find\t1\taction\n"
    "follow\t1-2\taction\n"
    "is_a\t2\tdescriptive\n"
    "at\t2\tdescriptive\n"
    "name\t2\tdescriptive\n"
    "person\t1\tdescriptive\n"
    "object\t1\tdescriptive\n"
    "gesture\t2\tdescriptive\n"
    "category\t2\tdescriptive\n"
    "largest\t1\tdescriptive\n"
    "smallest\t1\tdescriptive\n"
    "heaviest\t1\tdescriptive\n"
    "lightest\t1\tdescriptive\n"
    "on_top_of\t2\tdescriptive\n"
    "left_of\t2\tdescriptive\n"
    "right_of\t2\tdescriptive\n"
    "next_to\t2\tdescriptive\n"
    "behind\t2\tdescriptive\n"
    "in_front_of\t2\tdescriptive\n"
    "between\t3\tdescriptive\n"
    "red\t1\tdescriptive\n"
    "tallest\t1\tdescriptive\n";

int ParseArity(const std::string &text, int line) {
  try {
    size_t used = 0;
    int value = std::stoi(text, &used);
    if (used != text.size() || value < 0) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception &) {
    throw Error("predicate registry line " + std::to_string(line) +
                ": bad arity '" + text + "'");
  }
}

}  // namespace

PredicateRegistry PredicateRegistry::Parse(std::string_view text) {
  PredicateRegistry registry;
  int line_number = 0;
  for (const std::string &raw : SplitLines(text)) {
    ++line_number;
    std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = Split(line, '\t');
    if (fields.size() != 3) {
      throw Error("predicate registry line " + std::to_string(line_number) +
                  ": expected 3 tab-separated fields");
    }
    PredicateSignature sig;
    const std::string &arity = fields[1];
    size_t dash = arity.find('-');
    if (dash == std::string::npos) {
      sig.min_arity = sig.max_arity = ParseArity(arity, line_number);
    } else {
      sig.min_arity = ParseArity(arity.substr(0, dash), line_number);
      sig.max_arity = ParseArity(arity.substr(dash + 1), line_number);
      if (sig.max_arity < sig.min_arity) {
        throw Error("predicate registry line " + std::to_string(line_number) +
                    ": empty arity range");
      }
    }
    if (fields[2] == "action") {
      sig.kind = PredicateKind::kAction;
    } else if (fields[2] == "descriptive") {
      sig.kind = PredicateKind::kDescriptive;
    } else {
      throw Error("predicate registry line " + std::to_string(line_number) +
                  ": unknown kind '" + fields[2] + "'");
    }
    registry.Add(fields[0], sig);
  }
  return registry;
}

PredicateRegistry PredicateRegistry::Load(const std::string &path) {
  return Parse(ReadFile(path));
}

const PredicateRegistry &PredicateRegistry::Bundled() {
  static const PredicateRegistry registry = Parse(kBundledRegistry);
  return registry;
}

std::string_view PredicateRegistry::BundledText() { return kBundledRegistry; }

void PredicateRegistry::Add(const std::string &name,
                            PredicateSignature signature) {
  if (name.empty() || name.find_first_of(" \t()\"") != std::string::npos) {
    throw Error("invalid predicate name '" + name + "'");
  }
  entries_[name] = signature;
}

const PredicateSignature *PredicateRegistry::Find(
    std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

int PredicateRegistry::Count(PredicateKind kind) const {
  int n = 0;
  for (const auto &[name, sig] : entries_) {
    if (sig.kind == kind) ++n;
  }
  return n;
}

std::string PredicateRegistry::Serialize() const {
  std::ostringstream out;
  for (const auto &[name, sig] : entries_) {
    out << name << '\t' << sig.min_arity;
    if (sig.max_arity != sig.min_arity) out << '-' << sig.max_arity;
    out << '\t'
        << (sig.kind == PredicateKind::kAction ? "action" : "descriptive")
        << '\n';
  }
  return out.str();
}

}  // namespace cmdparse
