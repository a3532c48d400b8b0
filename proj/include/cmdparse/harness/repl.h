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

#ifndef CMDPARSE_HARNESS_REPL_H_
#define CMDPARSE_HARNESS_REPL_H_

#include <iosfwd>

#include "cmdparse/grammar.h"
#include "cmdparse/nn/model.h"
#include "cmdparse/ontology.h"

namespace cmdparse {

struct ReplOptions {
  int top_k = 3;
  bool show_prompt = true;
};

// Reads commands line by line until EOF or "/quit". Each command is
// anonymized, decoded with beam search (top candidates listed with scores)
// and deanonymized, asking about ambiguous slots on the same streams.
// "/ontology add <class> <surface>" extends the session ontology. Returns
// the final ontology.
Ontology RunRepl(const nn::Seq2SeqModel &model, Ontology ontology,
                 const SynchronousGrammar &grammar, std::istream &in,
                 std::ostream &out, const ReplOptions &options = {});

}  // namespace cmdparse

#endif  // CMDPARSE_HARNESS_REPL_H_
