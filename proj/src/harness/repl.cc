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

#include "cmdparse/harness/repl.h"

#include <cstdio>
#include <istream>
#include <ostream>

#include "cmdparse/anonymizer.h"
#include "cmdparse/deanonymizer.h"
#include "cmdparse/errors.h"
#include "cmdparse/nn/decoder.h"

namespace cmdparse {
namespace {

std::string FormatScore(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", score);
  return buf;
}

// Reads the next answer; numbers pick a listed candidate.
std::optional<std::string> AskSlot(const SlotQuery &query, std::istream &in,
                                   std::ostream &out, bool show_prompt) {
  std::string line;
  while (true) {
    out << query.prompt << " " << std::flush;
    if (!std::getline(in, line)) return std::nullopt;
    if (!show_prompt) out << "\n";
    std::string answer = Trim(line);
    if (answer.empty()) continue;
    std::string digits = answer[0] == '#' ? answer.substr(1) : answer;
    if (!digits.empty() &&
        digits.find_first_not_of("0123456789") == std::string::npos) {
      size_t n = std::stoul(digits);
      if (n >= 1 && n <= query.candidates.size())
        return query.candidates[n - 1];
    }
    return Join(TokenizeCommand(answer));
  }
}

}  // namespace

Ontology RunRepl(const nn::Seq2SeqModel &model, Ontology ontology,
                 const SynchronousGrammar &grammar, std::istream &in,
                 std::ostream &out, const ReplOptions &options) {
  const nn::ModelConfig &cfg = model.config();
  std::string line;
  while (true) {
    if (options.show_prompt) out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    std::string text = Trim(line);
    if (text.empty()) continue;
    if (text == "/quit" || text == "/exit") break;
    if (text[0] == '/') {
      Tokens words = SplitWhitespace(text);
      if (words.size() >= 4 && words[0] == "/ontology" && words[1] == "add") {
        Tokens surface(words.begin() + 3, words.end());
        try {
          if (!ontology.HasClass(words[2])) ontology = ontology.AddClass(words[2]);
          ontology = ontology.AddEntity(words[2], TokenizeCommand(Join(surface)));
          out << "added '" << Join(TokenizeCommand(Join(surface))) << "' to <"
              << words[2] << ">\n";
        } catch (const Error &e) {
          out << "error: " << e.what() << "\n";
        }
      } else {
        out << "commands: /ontology add <class> <surface>, /quit\n";
      }
      continue;
    }

    Tokens command = TokenizeCommand(text);
    AnonymizedCommand anonymized = Anonymize(command, ontology);
    out << "anonymized: " << Join(anonymized.tokens) << "\n";
    std::vector<nn::Hypothesis> beam =
        nn::DecodeBeam(model, anonymized.tokens,
                       std::max(cfg.beam_width, options.top_k),
                       cfg.max_decode_len);
    int shown = 0;
    for (const nn::Hypothesis &h : beam) {
      if (shown == options.top_k) break;
      out << "  [" << ++shown << "] " << FormatScore(h.score) << "  "
          << Join(h.tokens) << "\n";
    }
    std::optional<LogicalForm> lf;
    if (!beam.empty() && beam[0].finished) {
      try {
        lf = ParseLf(beam[0].tokens, grammar.registry());
      } catch (const LfError &) {
      }
    }
    if (!lf) {
      out << "could not understand\n";
      continue;
    }
    try {
      SlotResolver resolver = [&](const SlotQuery &q) {
        return AskSlot(q, in, out, options.show_prompt);
      };
      DeanonymizedForm filled =
          DeanonymizeLf(*lf, anonymized, resolver, ontology);
      ontology = filled.ontology;
      out << "result: " << PrintLfString(filled.lf) << "\n";
    } catch (const ResolverAborted &) {
      out << "cancelled\n";
      break;
    }
  }
  return ontology;
}

}  // namespace cmdparse
