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

#ifndef CMDPARSE_PREDICATES_H_
#define CMDPARSE_PREDICATES_H_

#include <map>
#include <string>
#include <string_view>

namespace cmdparse {

enum class PredicateKind { kAction, kDescriptive };

struct PredicateSignature {
  int min_arity = 0;
  int max_arity = 0;
  PredicateKind kind = PredicateKind::kDescriptive;

  bool Accepts(int arity) const {
    return arity >= min_arity && arity <= max_arity;
  }
  bool operator==(const PredicateSignature &) const = default;
};

// Maps predicate symbols to their arity and kind. Registry files have one
// predicate per line: name<TAB>arity<TAB>action|descriptive, where arity is
// either a count ("2") or an inclusive range ("1-2"). Lines starting with '#'
// are comments.
class PredicateRegistry {
 public:
  PredicateRegistry() = default;

  static PredicateRegistry Parse(std::string_view text);
  static PredicateRegistry Load(const std::string &path);

  // The registry shipped with the library (7 actions, 20 descriptive).
  static const PredicateRegistry &Bundled();
  static std::string_view BundledText();

  void Add(const std::string &name, PredicateSignature signature);

  // Returns nullptr for unknown predicates.
  const PredicateSignature *Find(std::string_view name) const;

  int Count(PredicateKind kind) const;
  int size() const { return static_cast<int>(entries_.size()); }
  const std::map<std::string, PredicateSignature, std::less<>> &entries()
      const {
    return entries_;
  }

  std::string Serialize() const;

 private:
  std::map<std::string, PredicateSignature, std::less<>> entries_;
};

}  // namespace cmdparse

#endif  // CMDPARSE_PREDICATES_H_
