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

#ifndef CMDPARSE_LOGICAL_FORM_H_
#define CMDPARSE_LOGICAL_FORM_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cmdparse/predicates.h"
#include "cmdparse/strings.h"

namespace cmdparse {

// Canonical structural tokens of the serialized form.
inline constexpr std::string_view kOpenParen = "(";
inline constexpr std::string_view kCloseParen = ")";
inline constexpr std::string_view kQuote = "\"";
inline constexpr std::string_view kLambda = "λ";
inline constexpr std::string_view kEntityType = "e";

// A λ-calculus logical form. Immutable value type.
//
//   Application  ( pred arg* )
//   Lambda       ( λ $n e body+ )   body is an implicit conjunction
//   Variable     $n
//   String       " words "
//   ClassToken   " <class> "
class LogicalForm {
 public:
  enum class Kind { kApplication, kLambda, kVariable, kString, kClassToken };

  static LogicalForm Application(std::string predicate,
                                 std::vector<LogicalForm> args);
  static LogicalForm Lambda(int variable, std::vector<LogicalForm> body,
                            std::string type_marker = std::string(kEntityType));
  static LogicalForm Variable(int variable);
  static LogicalForm String(std::string text);
  static LogicalForm ClassToken(std::string class_name);

  Kind kind() const { return kind_; }
  bool is(Kind kind) const { return kind_ == kind; }

  // Predicate for applications, type marker for lambdas, text for strings,
  // class name (without angle brackets) for class tokens.
  const std::string &symbol() const { return symbol_; }
  // Variable id for lambdas and variables.
  int variable() const { return variable_; }
  // Arguments of an application or body of a lambda.
  const std::vector<LogicalForm> &children() const { return children_; }

  bool operator==(const LogicalForm &other) const = default;

 private:
  LogicalForm(Kind kind, std::string symbol, int variable,
              std::vector<LogicalForm> children)
      : kind_(kind),
        symbol_(std::move(symbol)),
        variable_(variable),
        children_(std::move(children)) {}

  Kind kind_;
  std::string symbol_;
  int variable_ = 0;
  std::vector<LogicalForm> children_;
};

// Splits logical-form text into tokens. Parentheses and quotation marks are
// standalone tokens; curly quotes and LaTeX-style `` '' are normalized to '"'
// and "lambda" to "λ".
Tokens TokenizeLf(std::string_view text);

// Parses a token sequence, checking predicates and arity against the
// registry and rejecting free variables. Throws LfError.
LogicalForm ParseLf(const Tokens &tokens, const PredicateRegistry &registry);
LogicalForm ParseLf(std::string_view text, const PredicateRegistry &registry);

// Canonical serialization: one token per parenthesis, quote and symbol.
Tokens PrintLf(const LogicalForm &lf);
std::string PrintLfString(const LogicalForm &lf);

// Purely syntactic comparison of canonical prints.
bool ExactMatch(const LogicalForm &a, const LogicalForm &b);

std::set<int> FreeVariables(const LogicalForm &lf);

// Class names of all class tokens, in print order (with repeats).
std::vector<std::string> ClassTokensOf(const LogicalForm &lf);

// "<object>" <-> "object".
bool IsClassTokenText(std::string_view token);
std::string ClassTokenText(std::string_view class_name);
std::string ClassNameOf(std::string_view token);

// Number of parenthesis, quotation-mark and type-marker tokens in the
// canonical print.
int StructuralTokenCount(const LogicalForm &lf);

}  // namespace cmdparse

#endif  // CMDPARSE_LOGICAL_FORM_H_
