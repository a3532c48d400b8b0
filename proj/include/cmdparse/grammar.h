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

#ifndef CMDPARSE_GRAMMAR_H_
#define CMDPARSE_GRAMMAR_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmdparse/corpus_pair.h"
#include "cmdparse/logical_form.h"
#include "cmdparse/ontology.h"
#include "cmdparse/predicates.h"

namespace cmdparse {

struct GrammarSymbol {
  bool terminal = true;
  // Word for terminals, "$name" for nonterminals.
  std::string text;

  bool operator==(const GrammarSymbol &) const = default;
};

struct Production {
  std::string lhs;
  std::vector<GrammarSymbol> rhs;
  // Semantic template with {$nt} placeholders, when annotated.
  std::optional<std::string> semantic_template;
  // Placeholders in order of first appearance in the template.
  std::vector<std::string> placeholders;
  // Category section the rule was written in (0 before any header).
  int category = 0;
  int line = 0;
};

// A shallow synchronous grammar.
//
// Rule syntax, one rule per line:
//
//   #category 1
//   $bring = $vbbring me the $object : ( bring ( λ $1 e ( is_a $1 "{$object}" ) ) )
//   $vbbring = bring | fetch
//   $object = <object>
//
// Alternatives are separated by '|'. Text after ':' is the semantic template
// attached to every alternative of that line. Repeating a left-hand side adds
// alternatives. A rule whose only right-hand side is a class token declares
// an ontology-class nonterminal. The first rule after "#category N" is that
// category's start symbol. Other lines starting with '#' and lines starting
// with "//" are comments.
class SynchronousGrammar {
 public:
  static SynchronousGrammar Parse(
      std::string_view text,
      const PredicateRegistry &registry = PredicateRegistry::Bundled());
  static SynchronousGrammar Load(
      const std::string &path,
      const PredicateRegistry &registry = PredicateRegistry::Bundled());

  const std::vector<Production> &productions() const { return productions_; }
  // Category numbers in ascending order.
  std::vector<int> categories() const;
  const std::string &StartOf(int category) const;

  // Production indices for a nonterminal, in file order.
  const std::vector<int> &ProductionsOf(std::string_view nonterminal) const;
  bool IsNonterminal(std::string_view name) const;

  // "$object" -> "object".
  const std::map<std::string, std::string, std::less<>> &class_nonterminals()
      const {
    return class_nonterminals_;
  }
  // Class name for a class nonterminal, or nullptr.
  const std::string *ClassOf(std::string_view nonterminal) const;

  // True when the nonterminal expands only to surface text (no templates).
  bool IsSurface(std::string_view nonterminal) const;
  // True when derivations from the nonterminal carry a template.
  bool CarriesSemantics(std::string_view nonterminal) const;

  // Number of templated productions written in a category section.
  int AnnotationCount(int category) const;
  int AnnotationCount() const;

  const PredicateRegistry &registry() const { return registry_; }

 private:
  void Validate();

  std::vector<Production> productions_;
  std::map<std::string, std::vector<int>, std::less<>> by_lhs_;
  std::map<int, std::string> starts_;
  std::map<std::string, std::string, std::less<>> class_nonterminals_;
  std::map<std::string, bool, std::less<>> semantic_;
  PredicateRegistry registry_;
};

inline constexpr int kMaxExpansionDepth = 32;

// Exhaustive expansion with every class nonterminal producing its class
// token. Duplicate commands are dropped, keeping the first occurrence, so a
// command shared by two categories belongs to the earlier one. Throws
// GrammarError(kNonterminating) past kMaxExpansionDepth.
std::vector<CorpusPair> EnumerateAnonymized(const SynchronousGrammar &grammar);

// Random expansion with equal weight on every alternative; class
// nonterminals draw a uniformly chosen entity. The category is drawn
// uniformly unless given. Deterministic in the seed. Throws
// GrammarError(kEmptyOntologyClass).
CorpusPair SamplePair(const SynchronousGrammar &grammar,
                      const Ontology &ontology, uint64_t seed,
                      int category = 0);

// Earley parse against the category start symbols (in order). Class
// nonterminals match their class token and, when an ontology is given, any
// of its entities. Returns the instantiated template of the first
// derivation by rule order.
std::optional<LogicalForm> ChartParse(const SynchronousGrammar &grammar,
                                      const Tokens &command,
                                      const Ontology *ontology = nullptr);

struct CategoryStats {
  int category = 0;
  int commands = 0;
  int logical_forms = 0;
  int annotations = 0;
  double mean_command_length = 0;
  double mean_lf_length = 0;
  double commands_per_form = 0;
};

struct GrammarStats {
  std::vector<CategoryStats> categories;
  CategoryStats all;
  // Share of logical-form tokens that are parentheses, quotation marks or
  // type markers.
  double structural_token_fraction = 0;
};

// Table-style summary of an anonymized enumeration. Logical forms count
// toward the first category they appear in.
GrammarStats ComputeStats(const SynchronousGrammar &grammar,
                          const std::vector<CorpusPair> &pairs);

}  // namespace cmdparse

#endif  // CMDPARSE_GRAMMAR_H_
