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

#ifndef CMDPARSE_TESTS_TEST_SUPPORT_H_
#define CMDPARSE_TESTS_TEST_SUPPORT_H_

#include <string>

#include "cmdparse/grammar.h"
#include "cmdparse/ontology.h"
#include "cmdparse/predicates.h"

namespace cmdparse::testing {

inline std::string DataPath(const std::string &name) {
  return std::string(CMDPARSE_DATA_DIR) + "/" + name;
}

inline std::string ConfigPath(const std::string &name) {
  return std::string(CMDPARSE_CONFIG_DIR) + "/" + name;
}

inline const PredicateRegistry &Registry() {
  return PredicateRegistry::Bundled();
}

inline const SynchronousGrammar &MiniGrammar() {
  static const SynchronousGrammar g =
      SynchronousGrammar::Load(DataPath("gpsr_mini.grammar"));
  return g;
}

inline const Ontology &MiniOntology() {
  static const Ontology o = Ontology::Load(DataPath("ontology.txt"));
  return o;
}

inline LogicalForm Lf(const std::string &text) {
  return ParseLf(text, Registry());
}

inline Tokens Words(const std::string &text) { return SplitWhitespace(text); }

}  // namespace cmdparse::testing

#endif  // CMDPARSE_TESTS_TEST_SUPPORT_H_
