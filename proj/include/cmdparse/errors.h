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

#ifndef CMDPARSE_ERRORS_H_
#define CMDPARSE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cmdparse {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

// Errors from parsing logical-form token sequences. Every error names the
// index of the offending token.
class LfError : public Error {
 public:
  enum class Kind {
    kUnbalancedParens,
    kUnknownPredicate,
    kArityMismatch,
    kDanglingQuote,
    kUnboundVariable,
    kMalformed,
  };

  LfError(Kind kind, int token_index, const std::string &detail);

  Kind kind() const { return kind_; }
  int token_index() const { return token_index_; }

  static const char *KindName(Kind kind);

 private:
  Kind kind_;
  int token_index_;
};

// Errors from loading or expanding a synchronous grammar.
class GrammarError : public Error {
 public:
  enum class Kind {
    kSyntax,
    kUnknownNonterminal,
    kPlaceholderNotInRhs,
    kDeepTemplate,
    kSemanticsConflict,
    kNonterminating,
    kEmptyOntologyClass,
    kInvalidTemplate,
  };

  GrammarError(Kind kind, int line, const std::string &detail);

  Kind kind() const { return kind_; }
  // 1-based source line, or 0 when not tied to a line.
  int line() const { return line_; }

  static const char *KindName(Kind kind);

 private:
  Kind kind_;
  int line_;
};

class OntologyError : public Error {
 public:
  enum class Kind { kUnknownClass, kMalformedFile, kEmptySurface };
  OntologyError(Kind kind, const std::string &detail)
      : Error(detail), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class AnonymizationError : public Error {
 public:
  using Error::Error;
};

// Raised when the slot resolver declines to answer; the command should be
// rejected or confirmed manually.
class ResolverAborted : public Error {
 public:
  using Error::Error;
};

class CorpusError : public Error {
 public:
  enum class Kind { kTooFewPairs, kTooFewForms, kMalformed, kLeak };
  CorpusError(Kind kind, const std::string &detail)
      : Error(detail), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class ModelError : public Error {
 public:
  enum class Kind {
    kNaNLoss,
    kEmptyTrainSet,
    kEmptyIndex,
    kGradientMismatch,
    kMalformedLine,
    kInconsistentDimension,
    kBadCheckpoint,
    kBadConfig,
  };
  ModelError(Kind kind, const std::string &detail)
      : Error(detail), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace cmdparse

#endif  // CMDPARSE_ERRORS_H_
