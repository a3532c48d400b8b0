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

#include "cmdparse/grammar.h"

#include <algorithm>
#include <functional>
#include <random>
#include <cctype>
#include <set>

#include "cmdparse/errors.h"
#include "cmdparse/log.h"

namespace cmdparse {

GrammarError::GrammarError(Kind kind, int line, const std::string &detail)
    : Error(std::string(KindName(kind)) +
            (line > 0 ? " (line " + std::to_string(line) + ")" : "") + ": " +
            detail),
      kind_(kind),
      line_(line) {}

const char *GrammarError::KindName(Kind kind) {
  switch (kind) {
    case Kind::kSyntax: return "SyntaxError";
    case Kind::kUnknownNonterminal: return "UnknownNonterminal";
    case Kind::kPlaceholderNotInRhs: return "PlaceholderNotInRhs";
    case Kind::kDeepTemplate: return "DeepTemplate";
    case Kind::kSemanticsConflict: return "SemanticsConflict";
    case Kind::kNonterminating: return "NonterminatingGrammar";
    case Kind::kEmptyOntologyClass: return "EmptyOntologyClass";
    case Kind::kInvalidTemplate: return "InvalidTemplate";
  }
  return "?";
}

namespace {

bool IsNonterminalName(std::string_view token) {
  if (token.size() < 2 || token[0] != '$') return false;
  for (char c : token.substr(1)) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::vector<std::string> TemplatePlaceholders(const std::string &text,
                                              int line) {
  std::vector<std::string> names;
  size_t pos = 0;
  while ((pos = text.find('{', pos)) != std::string::npos) {
    size_t close = text.find('}', pos);
    if (close == std::string::npos) {
      throw GrammarError(GrammarError::Kind::kSyntax, line,
                         "unterminated placeholder in template");
    }
    std::string name = text.substr(pos + 1, close - pos - 1);
    if (!IsNonterminalName(name)) {
      throw GrammarError(GrammarError::Kind::kSyntax, line,
                         "bad placeholder '{" + name + "}'");
    }
    if (std::find(names.begin(), names.end(), name) == names.end())
      names.push_back(name);
    pos = close + 1;
  }
  return names;
}

std::string Instantiate(const std::string &tmpl,
                        const std::map<std::string, std::string> &values) {
  std::string out;
  size_t pos = 0;
  while (true) {
    size_t open = tmpl.find('{', pos);
    if (open == std::string::npos) {
      out += tmpl.substr(pos);
      break;
    }
    size_t close = tmpl.find('}', open);
    out += tmpl.substr(pos, open - pos);
    out += values.at(tmpl.substr(open + 1, close - open - 1));
    pos = close + 1;
  }
  return out;
}

}  // namespace

SynchronousGrammar SynchronousGrammar::Parse(std::string_view text,
                                             const PredicateRegistry &registry) {
  SynchronousGrammar g;
  g.registry_ = registry;
  int category = 0;
  bool need_start = false;
  int line_number = 0;
  for (const std::string &raw : SplitLines(text)) {
    ++line_number;
    std::string line = Trim(raw);
    if (line.empty() || line.starts_with("//")) continue;
    if (line.starts_with("#category")) {
      Tokens fields = SplitWhitespace(line);
      int value = 0;
      if (fields.size() == 2 && fields[0] == "#category") {
        try {
          value = std::stoi(fields[1]);
        } catch (const std::exception &) {
          value = 0;
        }
      }
      if (value <= 0) {
        throw GrammarError(GrammarError::Kind::kSyntax, line_number,
                           "expected '#category <positive number>'");
      }
      if (g.starts_.count(value)) {
        throw GrammarError(GrammarError::Kind::kSyntax, line_number,
                           "category " + fields[1] + " declared twice");
      }
      category = value;
      need_start = true;
      continue;
    }
    if (line[0] == '#') continue;

    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw GrammarError(GrammarError::Kind::kSyntax, line_number,
                         "expected '$nonterminal = ...'");
    }
    std::string lhs = Trim(line.substr(0, eq));
    if (!IsNonterminalName(lhs)) {
      throw GrammarError(GrammarError::Kind::kSyntax, line_number,
                         "bad left-hand side '" + lhs + "'");
    }
    std::string body = line.substr(eq + 1);
    std::optional<std::string> tmpl;
    size_t colon = body.find(':');
    if (colon != std::string::npos) {
      tmpl = Trim(body.substr(colon + 1));
      body = body.substr(0, colon);
      if (tmpl->empty()) {
        throw GrammarError(GrammarError::Kind::kSyntax, line_number,
                           "empty template after ':'");
      }
    }
    std::vector<std::string> placeholders;
    if (tmpl) placeholders = TemplatePlaceholders(*tmpl, line_number);

    std::vector<std::string> alternatives = Split(body, '|');
    bool class_rule = false;
    for (const std::string &alt : alternatives) {
      Tokens words = SplitWhitespace(alt);
      if (words.empty()) {
        throw GrammarError(GrammarError::Kind::kSyntax, line_number,
                           "empty alternative");
      }
      Production p;
      p.lhs = lhs;
      p.semantic_template = tmpl;
      p.placeholders = placeholders;
      p.category = category;
      p.line = line_number;
      for (const std::string &w : words) {
        if (w[0] == '$') {
          if (!IsNonterminalName(w)) {
            throw GrammarError(GrammarError::Kind::kSyntax, line_number,
                               "bad nonterminal '" + w + "'");
          }
          p.rhs.push_back({false, w});
        } else if (IsClassTokenText(w)) {
          if (alternatives.size() != 1 || words.size() != 1 || tmpl) {
            throw GrammarError(
                GrammarError::Kind::kSyntax, line_number,
                "class token " + w + " must be the whole right-hand side");
          }
          class_rule = true;
          p.rhs.push_back({true, w});
        } else if (w.find('=') != std::string::npos) {
          throw GrammarError(GrammarError::Kind::kSyntax, line_number,
                             "stray '=' in right-hand side");
        } else {
          p.rhs.push_back({true, ToLower(w)});
        }
      }
      g.by_lhs_[lhs].push_back(static_cast<int>(g.productions_.size()));
      g.productions_.push_back(std::move(p));
    }
    if (class_rule) {
      if (g.class_nonterminals_.count(lhs) || g.by_lhs_[lhs].size() != 1) {
        throw GrammarError(GrammarError::Kind::kSyntax, line_number,
                           lhs + " mixes a class token with other alternatives");
      }
      g.class_nonterminals_[lhs] = ClassNameOf(Trim(body));
    } else if (g.class_nonterminals_.count(lhs)) {
      throw GrammarError(GrammarError::Kind::kSyntax, line_number,
                         lhs + " mixes a class token with other alternatives");
    }
    if (need_start) {
      g.starts_[category] = lhs;
      need_start = false;
    }
  }
  if (g.starts_.empty() && !g.productions_.empty()) {
    // No category headers: the first rule is the single start symbol.
    g.starts_[1] = g.productions_.front().lhs;
  }
  g.Validate();
  return g;
}

SynchronousGrammar SynchronousGrammar::Load(const std::string &path,
                                            const PredicateRegistry &registry) {
  return Parse(ReadFile(path), registry);
}

void SynchronousGrammar::Validate() {
  for (const Production &p : productions_) {
    for (const GrammarSymbol &s : p.rhs) {
      if (!s.terminal && !by_lhs_.count(s.text)) {
        throw GrammarError(GrammarError::Kind::kUnknownNonterminal, p.line,
                           "undefined nonterminal " + s.text);
      }
    }
    for (const std::string &ph : p.placeholders) {
      int uses = 0;
      for (const GrammarSymbol &s : p.rhs)
        if (!s.terminal && s.text == ph) ++uses;
      if (uses == 0) {
        throw GrammarError(GrammarError::Kind::kPlaceholderNotInRhs, p.line,
                           "placeholder {" + ph + "} not in right-hand side");
      }
      if (uses > 1) {
        throw GrammarError(GrammarError::Kind::kInvalidTemplate, p.line,
                           "placeholder {" + ph +
                               "} is ambiguous: nonterminal used twice");
      }
    }
  }

  // Which nonterminals carry semantics. Cycles resolve to "no" on the back
  // edge; enumeration bounds their depth separately.
  std::map<std::string, int, std::less<>> state;  // 1 = visiting, 2 = done
  std::function<bool(const std::string &)> carries =
      [&](const std::string &nt) -> bool {
    auto st = state.find(nt);
    if (st != state.end()) {
      return st->second == 2 ? semantic_[nt] : false;
    }
    state[nt] = 1;
    bool any = false, all = true;
    int first_line = 0;
    for (int idx : by_lhs_.at(nt)) {
      const Production &p = productions_[idx];
      if (first_line == 0) first_line = p.line;
      bool this_one = p.semantic_template.has_value();
      for (const GrammarSymbol &s : p.rhs) {
        if (!s.terminal && carries(s.text)) this_one = true;
      }
      any |= this_one;
      all &= this_one;
    }
    if (any && !all) {
      throw GrammarError(GrammarError::Kind::kSemanticsConflict, first_line,
                         nt + " has both annotated and unannotated expansions");
    }
    state[nt] = 2;
    semantic_[nt] = any;
    return any;
  };
  for (const auto &[nt, idx] : by_lhs_) carries(nt);

  for (const Production &p : productions_) {
    if (p.semantic_template) {
      for (const GrammarSymbol &s : p.rhs) {
        if (s.terminal || !semantic_[s.text]) continue;
        bool is_placeholder = std::find(p.placeholders.begin(),
                                        p.placeholders.end(),
                                        s.text) != p.placeholders.end();
        throw GrammarError(
            is_placeholder ? GrammarError::Kind::kDeepTemplate
                           : GrammarError::Kind::kSemanticsConflict,
            p.line,
            is_placeholder
                ? "placeholder {" + s.text + "} expands to annotated rules"
                : "annotated rule contains annotated nonterminal " + s.text);
      }
      // Check the template against the predicate registry using class
      // tokens for every placeholder.
      std::map<std::string, std::string> probe;
      for (const std::string &ph : p.placeholders)
        probe[ph] = ClassTokenText(ph.substr(1));
      try {
        ParseLf(Instantiate(*p.semantic_template, probe), registry_);
      } catch (const LfError &e) {
        throw GrammarError(GrammarError::Kind::kInvalidTemplate, p.line,
                           e.what());
      }
    } else {
      int semantic_children = 0;
      for (const GrammarSymbol &s : p.rhs) {
        if (!s.terminal && semantic_[s.text]) ++semantic_children;
      }
      if (semantic_children > 1) {
        throw GrammarError(GrammarError::Kind::kSemanticsConflict, p.line,
                           p.lhs + " combines several annotated nonterminals");
      }
    }
  }
}

std::vector<int> SynchronousGrammar::categories() const {
  std::vector<int> out;
  for (const auto &[c, nt] : starts_) out.push_back(c);
  return out;
}

const std::string &SynchronousGrammar::StartOf(int category) const {
  auto it = starts_.find(category);
  if (it == starts_.end()) {
    throw GrammarError(GrammarError::Kind::kSyntax, 0,
                       "no category " + std::to_string(category));
  }
  return it->second;
}

const std::vector<int> &SynchronousGrammar::ProductionsOf(
    std::string_view nonterminal) const {
  auto it = by_lhs_.find(nonterminal);
  if (it == by_lhs_.end()) {
    throw GrammarError(GrammarError::Kind::kUnknownNonterminal, 0,
                       "undefined nonterminal " + std::string(nonterminal));
  }
  return it->second;
}

bool SynchronousGrammar::IsNonterminal(std::string_view name) const {
  return by_lhs_.count(name) > 0;
}

const std::string *SynchronousGrammar::ClassOf(
    std::string_view nonterminal) const {
  auto it = class_nonterminals_.find(nonterminal);
  return it == class_nonterminals_.end() ? nullptr : &it->second;
}

bool SynchronousGrammar::IsSurface(std::string_view nonterminal) const {
  auto it = semantic_.find(nonterminal);
  return it != semantic_.end() && !it->second;
}

bool SynchronousGrammar::CarriesSemantics(std::string_view nonterminal) const {
  auto it = semantic_.find(nonterminal);
  return it != semantic_.end() && it->second;
}

int SynchronousGrammar::AnnotationCount(int category) const {
  int n = 0;
  std::set<int> seen_lines;
  for (const Production &p : productions_) {
    // Alternatives on one line share one annotation.
    if (p.semantic_template && p.category == category &&
        seen_lines.insert(p.line).second)
      ++n;
  }
  return n;
}

int SynchronousGrammar::AnnotationCount() const {
  int n = 0;
  for (const auto &[category, start] : starts_) n += AnnotationCount(category);
  return n;
}

// Exhaustive anonymized expansion.

namespace {

struct Expansion {
  Tokens words;
  std::optional<std::string> lf_text;
};

class Enumerator {
 public:
  explicit Enumerator(const SynchronousGrammar &g) : g_(g) {}

  const std::vector<Expansion> &Expand(const std::string &nt, int depth) {
    auto memo = memo_.find(nt);
    if (memo != memo_.end()) return memo->second;
    if (depth > kMaxExpansionDepth) {
      throw GrammarError(GrammarError::Kind::kNonterminating, 0,
                         "expansion depth exceeds " +
                             std::to_string(kMaxExpansionDepth) + " at " + nt);
    }
    std::vector<Expansion> out;
    if (const std::string *cls = g_.ClassOf(nt)) {
      out.push_back({{ClassTokenText(*cls)}, std::nullopt});
    } else {
      for (int idx : g_.ProductionsOf(nt)) {
        ExpandProduction(g_.productions()[idx], depth, out);
      }
    }
    return memo_[nt] = std::move(out);
  }

 private:
  void ExpandProduction(const Production &p, int depth,
                        std::vector<Expansion> &out) {
    // Copies: child vectors may move while the memo map grows.
    std::vector<std::vector<Expansion>> children;
    for (const GrammarSymbol &s : p.rhs) {
      if (s.terminal) {
        children.push_back({{{s.text}, std::nullopt}});
      } else {
        children.push_back(Expand(s.text, depth + 1));
      }
    }
    std::vector<size_t> choice(children.size(), 0);
    while (true) {
      Expansion e;
      std::map<std::string, std::string> values;
      for (size_t k = 0; k < children.size(); ++k) {
        const Expansion &c = children[k][choice[k]];
        e.words.insert(e.words.end(), c.words.begin(), c.words.end());
        if (c.lf_text) e.lf_text = c.lf_text;
        if (!p.rhs[k].terminal) values[p.rhs[k].text] = Join(c.words);
      }
      if (p.semantic_template) {
        e.lf_text = Instantiate(*p.semantic_template, values);
      }
      out.push_back(std::move(e));
      size_t k = children.size();
      while (k > 0) {
        --k;
        if (++choice[k] < children[k].size()) break;
        choice[k] = 0;
        if (k == 0) return;
      }
      if (children.empty()) return;
    }
  }

  const SynchronousGrammar &g_;
  std::map<std::string, std::vector<Expansion>> memo_;
};

}  // namespace

std::vector<CorpusPair> EnumerateAnonymized(const SynchronousGrammar &grammar) {
  Enumerator enumerator(grammar);
  std::vector<CorpusPair> pairs;
  std::set<std::string> seen;
  bool any_template = false;
  for (const Production &p : grammar.productions())
    any_template |= p.semantic_template.has_value();
  if (!any_template) {
    LogWarning("grammar has no annotated productions; nothing to enumerate");
    return pairs;
  }
  for (int category : grammar.categories()) {
    const std::string &start = grammar.StartOf(category);
    if (!grammar.CarriesSemantics(start)) {
      LogWarning("category " + std::to_string(category) +
                 " has no annotated derivations");
      continue;
    }
    for (const Expansion &e : enumerator.Expand(start, 0)) {
      std::string key = Join(e.words);
      if (!seen.insert(key).second) continue;
      CorpusPair pair;
      pair.command = e.words;
      pair.lf = ParseLf(*e.lf_text, grammar.registry());
      pair.category = category;
      pair.anonymized = true;
      pairs.push_back(std::move(pair));
    }
  }
  return pairs;
}

// Random sampling.

namespace {

class Sampler {
 public:
  Sampler(const SynchronousGrammar &g, const Ontology &ont, uint64_t seed)
      : g_(g), ont_(ont), rng_(seed) {}

  size_t Pick(size_t n) { return static_cast<size_t>(rng_() % n); }

  Expansion Sample(const std::string &nt, int depth) {
    if (depth > kMaxExpansionDepth) {
      throw GrammarError(GrammarError::Kind::kNonterminating, 0,
                         "sampling depth exceeds " +
                             std::to_string(kMaxExpansionDepth));
    }
    if (const std::string *cls = g_.ClassOf(nt)) {
      if (!ont_.HasClass(*cls) || ont_.Entities(*cls).empty()) {
        throw GrammarError(GrammarError::Kind::kEmptyOntologyClass, 0,
                           "no entities of class '" + *cls + "'");
      }
      const auto &entities = ont_.Entities(*cls);
      return {SplitWhitespace(entities[Pick(entities.size())]), std::nullopt};
    }
    const std::vector<int> &alts = g_.ProductionsOf(nt);
    const Production &p = g_.productions()[alts[Pick(alts.size())]];
    Expansion e;
    std::map<std::string, std::string> values;
    for (const GrammarSymbol &s : p.rhs) {
      if (s.terminal) {
        e.words.push_back(s.text);
        continue;
      }
      Expansion c = Sample(s.text, depth + 1);
      e.words.insert(e.words.end(), c.words.begin(), c.words.end());
      if (c.lf_text) e.lf_text = c.lf_text;
      values[s.text] = Join(c.words);
    }
    if (p.semantic_template) {
      e.lf_text = Instantiate(*p.semantic_template, values);
    }
    return e;
  }

 private:
  const SynchronousGrammar &g_;
  const Ontology &ont_;
  std::mt19937_64 rng_;
};

}  // namespace

CorpusPair SamplePair(const SynchronousGrammar &grammar,
                      const Ontology &ontology, uint64_t seed, int category) {
  Sampler sampler(grammar, ontology, seed);
  std::vector<int> cats;
  for (int c : grammar.categories()) {
    if (grammar.CarriesSemantics(grammar.StartOf(c))) cats.push_back(c);
  }
  if (cats.empty()) {
    throw GrammarError(GrammarError::Kind::kSyntax, 0,
                       "grammar has no annotated categories");
  }
  if (category == 0) category = cats[sampler.Pick(cats.size())];
  Expansion e = sampler.Sample(grammar.StartOf(category), 0);
  CorpusPair pair;
  pair.command = e.words;
  pair.lf = ParseLf(*e.lf_text, grammar.registry());
  pair.category = category;
  pair.anonymized = false;
  return pair;
}

GrammarStats ComputeStats(const SynchronousGrammar &grammar,
                          const std::vector<CorpusPair> &pairs) {
  GrammarStats stats;
  std::set<std::string> forms_seen;
  std::map<int, CategoryStats> by_category;
  long total_command_tokens = 0, total_lf_tokens = 0, structural = 0;
  for (int c : grammar.categories()) {
    by_category[c].category = c;
    by_category[c].annotations = grammar.AnnotationCount(c);
  }
  std::map<int, long> command_tokens, lf_tokens;
  for (const CorpusPair &p : pairs) {
    CategoryStats &cs = by_category[p.category];
    cs.category = p.category;
    ++cs.commands;
    int lf_len = static_cast<int>(PrintLf(p.lf).size());
    command_tokens[p.category] += static_cast<long>(p.command.size());
    lf_tokens[p.category] += lf_len;
    total_command_tokens += static_cast<long>(p.command.size());
    total_lf_tokens += lf_len;
    structural += StructuralTokenCount(p.lf);
    if (forms_seen.insert(p.LfText()).second) ++cs.logical_forms;
  }
  for (auto &[c, cs] : by_category) {
    if (cs.commands > 0) {
      cs.mean_command_length =
          static_cast<double>(command_tokens[c]) / cs.commands;
      cs.mean_lf_length = static_cast<double>(lf_tokens[c]) / cs.commands;
    }
    if (cs.logical_forms > 0) {
      cs.commands_per_form =
          static_cast<double>(cs.commands) / cs.logical_forms;
    }
    stats.all.commands += cs.commands;
    stats.all.logical_forms += cs.logical_forms;
    stats.all.annotations += cs.annotations;
    stats.categories.push_back(cs);
  }
  if (stats.all.commands > 0) {
    stats.all.mean_command_length =
        static_cast<double>(total_command_tokens) / stats.all.commands;
    stats.all.mean_lf_length =
        static_cast<double>(total_lf_tokens) / stats.all.commands;
  }
  if (stats.all.logical_forms > 0) {
    stats.all.commands_per_form =
        static_cast<double>(stats.all.commands) / stats.all.logical_forms;
  }
  if (total_lf_tokens > 0) {
    stats.structural_token_fraction =
        static_cast<double>(structural) / total_lf_tokens;
  }
  return stats;
}

}  // namespace cmdparse
