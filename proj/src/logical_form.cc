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

#include "cmdparse/logical_form.h"

#include <algorithm>
#include <charconv>
#include <functional>

#include "cmdparse/errors.h"

namespace cmdparse {

LfError::LfError(Kind kind, int token_index, const std::string &detail)
    : Error(std::string(KindName(kind)) + " at token " +
            std::to_string(token_index) + ": " + detail),
      kind_(kind),
      token_index_(token_index) {}

const char *LfError::KindName(Kind kind) {
  switch (kind) {
    case Kind::kUnbalancedParens: return "UnbalancedParens";
    case Kind::kUnknownPredicate: return "UnknownPredicate";
    case Kind::kArityMismatch: return "ArityMismatch";
    case Kind::kDanglingQuote: return "DanglingQuote";
    case Kind::kUnboundVariable: return "UnboundVariable";
    case Kind::kMalformed: return "Malformed";
  }
  return "?";
}

LogicalForm LogicalForm::Application(std::string predicate,
                                     std::vector<LogicalForm> args) {
  return LogicalForm(Kind::kApplication, std::move(predicate), 0,
                     std::move(args));
}

LogicalForm LogicalForm::Lambda(int variable, std::vector<LogicalForm> body,
                                std::string type_marker) {
  return LogicalForm(Kind::kLambda, std::move(type_marker), variable,
                     std::move(body));
}

LogicalForm LogicalForm::Variable(int variable) {
  return LogicalForm(Kind::kVariable, "", variable, {});
}

LogicalForm LogicalForm::String(std::string text) {
  return LogicalForm(Kind::kString, std::move(text), 0, {});
}

LogicalForm LogicalForm::ClassToken(std::string class_name) {
  return LogicalForm(Kind::kClassToken, std::move(class_name), 0, {});
}

bool IsClassTokenText(std::string_view token) {
  return token.size() > 2 && token.front() == '<' && token.back() == '>';
}

std::string ClassTokenText(std::string_view class_name) {
  return "<" + std::string(class_name) + ">";
}

std::string ClassNameOf(std::string_view token) {
  if (!IsClassTokenText(token)) return std::string(token);
  return std::string(token.substr(1, token.size() - 2));
}

Tokens TokenizeLf(std::string_view text) {
  Tokens tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(current == "lambda" ? std::string(kLambda) : current);
      current.clear();
    }
  };
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    std::string_view rest = text.substr(i);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      flush();
      ++i;
    } else if (c == '(' || c == ')' || c == '"') {
      flush();
      tokens.emplace_back(1, c);
      ++i;
    } else if (rest.starts_with("``") || rest.starts_with("''")) {
      flush();
      tokens.emplace_back(kQuote);
      i += 2;
    } else if (rest.starts_with("“") || rest.starts_with("”")) {
      flush();
      tokens.emplace_back(kQuote);
      i += 3;
    } else {
      current += c;
      ++i;
    }
  }
  flush();
  return tokens;
}

namespace {

int ParseVariableId(std::string_view token) {
  if (token.size() < 2 || token[0] != '$') return 0;
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data() + 1, token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value <= 0)
    return 0;
  return value;
}

class LfParser {
 public:
  LfParser(const Tokens &tokens, const PredicateRegistry &registry)
      : tokens_(tokens), registry_(registry) {}

  LogicalForm ParseTop() {
    if (tokens_.empty()) {
      throw LfError(LfError::Kind::kMalformed, 0, "empty token sequence");
    }
    if (tokens_[0] != kOpenParen) {
      throw LfError(LfError::Kind::kMalformed, 0,
                    "expected '(' but found '" + tokens_[0] + "'");
    }
    LogicalForm lf = ParseForm();
    if (pos_ < tokens_.size()) {
      if (tokens_[pos_] == kCloseParen) {
        throw LfError(LfError::Kind::kUnbalancedParens, Index(),
                      "unmatched ')'");
      }
      throw LfError(LfError::Kind::kMalformed, Index(),
                    "trailing tokens after logical form");
    }
    return lf;
  }

 private:
  int Index() const { return static_cast<int>(pos_); }
  bool AtEnd() const { return pos_ >= tokens_.size(); }

  // Parses "( ... )" starting at pos_, which holds '('.
  LogicalForm ParseForm() {
    const int open = Index();
    ++pos_;
    if (AtEnd()) {
      throw LfError(LfError::Kind::kUnbalancedParens, open, "unclosed '('");
    }
    const std::string &head = tokens_[pos_];
    if (head == kLambda) return ParseLambda(open);
    if (head == kOpenParen || head == kCloseParen || head == kQuote ||
        head[0] == '$') {
      throw LfError(LfError::Kind::kMalformed, Index(),
                    "expected predicate but found '" + head + "'");
    }
    const int head_index = Index();
    const PredicateSignature *signature = registry_.Find(head);
    if (signature == nullptr) {
      throw LfError(LfError::Kind::kUnknownPredicate, head_index,
                    "unknown predicate '" + head + "'");
    }
    ++pos_;
    std::vector<LogicalForm> args;
    while (true) {
      if (AtEnd()) {
        throw LfError(LfError::Kind::kUnbalancedParens, open, "unclosed '('");
      }
      if (tokens_[pos_] == kCloseParen) {
        ++pos_;
        break;
      }
      args.push_back(ParseArgument());
    }
    if (!signature->Accepts(static_cast<int>(args.size()))) {
      throw LfError(LfError::Kind::kArityMismatch, head_index,
                    "'" + head + "' takes " +
                        std::to_string(signature->min_arity) +
                        (signature->max_arity != signature->min_arity
                             ? "-" + std::to_string(signature->max_arity)
                             : "") +
                        " arguments, got " + std::to_string(args.size()));
    }
    return LogicalForm::Application(head, std::move(args));
  }

  LogicalForm ParseLambda(int open) {
    ++pos_;  // λ
    if (AtEnd()) {
      throw LfError(LfError::Kind::kUnbalancedParens, open, "unclosed '('");
    }
    int var = ParseVariableId(tokens_[pos_]);
    if (var == 0) {
      throw LfError(LfError::Kind::kMalformed, Index(),
                    "expected variable after λ, found '" + tokens_[pos_] + "'");
    }
    ++pos_;
    if (AtEnd()) {
      throw LfError(LfError::Kind::kUnbalancedParens, open, "unclosed '('");
    }
    if (tokens_[pos_] != kEntityType) {
      throw LfError(LfError::Kind::kMalformed, Index(),
                    "unsupported type marker '" + tokens_[pos_] + "'");
    }
    std::string marker = tokens_[pos_];
    ++pos_;
    bound_.push_back(var);
    std::vector<LogicalForm> body;
    while (true) {
      if (AtEnd()) {
        throw LfError(LfError::Kind::kUnbalancedParens, open, "unclosed '('");
      }
      if (tokens_[pos_] == kCloseParen) break;
      if (tokens_[pos_] != kOpenParen) {
        throw LfError(LfError::Kind::kMalformed, Index(),
                      "λ body must contain parenthesized forms");
      }
      body.push_back(ParseForm());
    }
    if (body.empty()) {
      throw LfError(LfError::Kind::kMalformed, Index(), "empty λ body");
    }
    ++pos_;
    bound_.pop_back();
    return LogicalForm::Lambda(var, std::move(body), std::move(marker));
  }

  LogicalForm ParseArgument() {
    const std::string &token = tokens_[pos_];
    if (token == kOpenParen) return ParseForm();
    if (token == kQuote) return ParseQuoted();
    if (token[0] == '$') {
      int var = ParseVariableId(token);
      if (var == 0) {
        throw LfError(LfError::Kind::kMalformed, Index(),
                      "bad variable '" + token + "'");
      }
      if (std::find(bound_.begin(), bound_.end(), var) == bound_.end()) {
        throw LfError(LfError::Kind::kUnboundVariable, Index(),
                      "free variable " + token);
      }
      ++pos_;
      return LogicalForm::Variable(var);
    }
    throw LfError(LfError::Kind::kMalformed, Index(),
                  "unexpected token '" + token + "'");
  }

  LogicalForm ParseQuoted() {
    const int open = Index();
    ++pos_;
    Tokens words;
    while (!AtEnd() && tokens_[pos_] != kQuote) {
      if (tokens_[pos_] == kOpenParen || tokens_[pos_] == kCloseParen) break;
      words.push_back(tokens_[pos_]);
      ++pos_;
    }
    if (AtEnd() || tokens_[pos_] != kQuote) {
      throw LfError(LfError::Kind::kDanglingQuote, open, "unterminated quote");
    }
    ++pos_;
    if (words.empty()) {
      throw LfError(LfError::Kind::kMalformed, open, "empty string literal");
    }
    if (words.size() == 1 && IsClassTokenText(words[0])) {
      return LogicalForm::ClassToken(ClassNameOf(words[0]));
    }
    return LogicalForm::String(Join(words));
  }

  const Tokens &tokens_;
  const PredicateRegistry &registry_;
  size_t pos_ = 0;
  std::vector<int> bound_;
};

void PrintInto(const LogicalForm &lf, Tokens &out) {
  switch (lf.kind()) {
    case LogicalForm::Kind::kApplication:
      out.emplace_back(kOpenParen);
      out.push_back(lf.symbol());
      for (const LogicalForm &arg : lf.children()) PrintInto(arg, out);
      out.emplace_back(kCloseParen);
      break;
    case LogicalForm::Kind::kLambda:
      out.emplace_back(kOpenParen);
      out.emplace_back(kLambda);
      out.push_back("$" + std::to_string(lf.variable()));
      out.push_back(lf.symbol());
      for (const LogicalForm &form : lf.children()) PrintInto(form, out);
      out.emplace_back(kCloseParen);
      break;
    case LogicalForm::Kind::kVariable:
      out.push_back("$" + std::to_string(lf.variable()));
      break;
    case LogicalForm::Kind::kString:
      out.emplace_back(kQuote);
      for (std::string &word : SplitWhitespace(lf.symbol()))
        out.push_back(std::move(word));
      out.emplace_back(kQuote);
      break;
    case LogicalForm::Kind::kClassToken:
      out.emplace_back(kQuote);
      out.push_back(ClassTokenText(lf.symbol()));
      out.emplace_back(kQuote);
      break;
  }
}

}  // namespace

LogicalForm ParseLf(const Tokens &tokens, const PredicateRegistry &registry) {
  return LfParser(tokens, registry).ParseTop();
}

LogicalForm ParseLf(std::string_view text, const PredicateRegistry &registry) {
  return ParseLf(TokenizeLf(text), registry);
}

Tokens PrintLf(const LogicalForm &lf) {
  Tokens out;
  PrintInto(lf, out);
  return out;
}

std::string PrintLfString(const LogicalForm &lf) { return Join(PrintLf(lf)); }

bool ExactMatch(const LogicalForm &a, const LogicalForm &b) {
  return PrintLf(a) == PrintLf(b);
}

std::set<int> FreeVariables(const LogicalForm &lf) {
  std::set<int> free;
  std::vector<int> bound;
  std::function<void(const LogicalForm &)> visit = [&](const LogicalForm &f) {
    switch (f.kind()) {
      case LogicalForm::Kind::kVariable:
        if (std::find(bound.begin(), bound.end(), f.variable()) == bound.end())
          free.insert(f.variable());
        break;
      case LogicalForm::Kind::kLambda:
        bound.push_back(f.variable());
        for (const LogicalForm &c : f.children()) visit(c);
        bound.pop_back();
        break;
      default:
        for (const LogicalForm &c : f.children()) visit(c);
    }
  };
  visit(lf);
  return free;
}

std::vector<std::string> ClassTokensOf(const LogicalForm &lf) {
  std::vector<std::string> classes;
  std::function<void(const LogicalForm &)> visit = [&](const LogicalForm &f) {
    if (f.is(LogicalForm::Kind::kClassToken)) classes.push_back(f.symbol());
    for (const LogicalForm &c : f.children()) visit(c);
  };
  visit(lf);
  return classes;
}

int StructuralTokenCount(const LogicalForm &lf) {
  int count = 0;
  for (const std::string &token : PrintLf(lf)) {
    if (token == kOpenParen || token == kCloseParen || token == kQuote) ++count;
  }
  std::function<void(const LogicalForm &)> visit = [&](const LogicalForm &f) {
    if (f.is(LogicalForm::Kind::kLambda)) ++count;
    for (const LogicalForm &c : f.children()) visit(c);
  };
  visit(lf);
  return count;
}

}  // namespace cmdparse
