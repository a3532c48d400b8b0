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

// Earley recognizer over the synchronous grammar, followed by a top-down
// extraction of the first derivation in rule order.

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "cmdparse/errors.h"
#include "cmdparse/grammar.h"

namespace cmdparse {
namespace {

struct Item {
  int production;
  int dot;
  int origin;
  auto operator<=>(const Item &) const = default;
};

struct Node {
  // -1 for class-nonterminal leaves.
  int production = -1;
  int begin = 0;
  int end = 0;
  std::vector<Node> children;  // one per nonterminal on the rhs
};

class EarleyChart {
 public:
  EarleyChart(const SynchronousGrammar &g, const Tokens &tokens,
              const Ontology *ontology)
      : g_(g), tokens_(tokens), ontology_(ontology),
        sets_(tokens.size() + 1), seen_(tokens.size() + 1),
        completed_(tokens.size() + 1) {}

  void Run(const std::vector<std::string> &starts) {
    for (const std::string &s : starts) Predict(s, 0);
    for (size_t j = 0; j < sets_.size(); ++j) {
      for (size_t k = 0; k < sets_[j].size(); ++k) {
        Item item = sets_[j][k];
        const Production &p = g_.productions()[item.production];
        if (item.dot == static_cast<int>(p.rhs.size())) {
          Complete(p.lhs, item.origin, static_cast<int>(j), item.production);
          continue;
        }
        const GrammarSymbol &next = p.rhs[item.dot];
        if (next.terminal) {
          if (j < tokens_.size() && tokens_[j] == next.text) {
            Add(j + 1, {item.production, item.dot + 1, item.origin});
          }
        } else if (g_.ClassOf(next.text) != nullptr) {
          ScanClass(next.text, static_cast<int>(j));
        } else {
          Predict(next.text, static_cast<int>(j));
        }
        // Class spans recorded before this item existed advance it now.
        if (!next.terminal) AdvanceOverCompleted(item, static_cast<int>(j));
      }
    }
  }

  bool HasCompleted(const std::string &nt, int begin, int end) const {
    for (const auto &[name, origin, prod] : completed_[end]) {
      if (origin == begin && name == nt) return true;
    }
    return false;
  }

  bool ProductionCompleted(int production, int begin, int end) const {
    return completed_[end].count(
               {g_.productions()[production].lhs, begin, production}) > 0;
  }

 private:
  void Add(size_t j, Item item) {
    if (seen_[j].insert(item).second) sets_[j].push_back(item);
  }

  void Predict(const std::string &nt, int j) {
    for (int idx : g_.ProductionsOf(nt)) Add(j, {idx, 0, j});
  }

  // Matches a class nonterminal at position j against the class token and
  // ontology entities, recording completions ending later in the input.
  void ScanClass(const std::string &nt, int j) {
    if (scanned_.count({nt, j})) return;
    scanned_.insert({nt, j});
    const std::string &cls = *g_.ClassOf(nt);
    const int n = static_cast<int>(tokens_.size());
    if (j < n && tokens_[j] == ClassTokenText(cls)) Complete(nt, j, j + 1, -1);
    if (ontology_ != nullptr && ontology_->HasClass(cls)) {
      int longest = std::min(ontology_->max_entity_length(), n - j);
      for (int len = 1; len <= longest; ++len) {
        Tokens span(tokens_.begin() + j, tokens_.begin() + j + len);
        for (const std::string &owner : ontology_->ClassesOf(Join(span))) {
          if (owner == cls) {
            Complete(nt, j, j + len, -1);
            break;
          }
        }
      }
    }
  }

  // Records that nt spans [origin, end) and advances waiting items.
  void Complete(const std::string &nt, int origin, int end, int production) {
    if (!completed_[end].insert({nt, origin, production}).second) return;
    for (size_t k = 0; k < sets_[origin].size(); ++k) {
      Item waiting = sets_[origin][k];
      const Production &p = g_.productions()[waiting.production];
      if (waiting.dot < static_cast<int>(p.rhs.size()) &&
          !p.rhs[waiting.dot].terminal && p.rhs[waiting.dot].text == nt) {
        Add(end, {waiting.production, waiting.dot + 1, waiting.origin});
      }
    }
  }

  void AdvanceOverCompleted(Item item, int j) {
    const Production &p = g_.productions()[item.production];
    const std::string &nt = p.rhs[item.dot].text;
    for (size_t end = j + 1; end < completed_.size(); ++end) {
      for (const auto &[name, origin, prod] : completed_[end]) {
        if (origin == j && name == nt) {
          Add(end, {item.production, item.dot + 1, item.origin});
          break;
        }
      }
    }
  }

  const SynchronousGrammar &g_;
  const Tokens &tokens_;
  const Ontology *ontology_;
  std::vector<std::vector<Item>> sets_;
  std::vector<std::set<Item>> seen_;
  // Per end position: (nonterminal, origin, production or -1).
  std::vector<std::set<std::tuple<std::string, int, int>>> completed_;
  std::set<std::pair<std::string, int>> scanned_;
};

class DerivationExtractor {
 public:
  DerivationExtractor(const SynchronousGrammar &g, const EarleyChart &chart,
                      const Tokens &tokens)
      : g_(g), chart_(chart), tokens_(tokens) {}

  std::optional<Node> Derive(const std::string &nt, int begin, int end) {
    auto key = std::make_tuple(nt, begin, end);
    if (failed_.count(key)) return std::nullopt;
    if (g_.ClassOf(nt) != nullptr) {
      if (chart_.HasCompleted(nt, begin, end)) return Node{-1, begin, end, {}};
      failed_.insert(key);
      return std::nullopt;
    }
    for (int idx : g_.ProductionsOf(nt)) {
      if (!chart_.ProductionCompleted(idx, begin, end)) continue;
      std::vector<Node> children;
      if (MatchRhs(idx, 0, begin, end, children)) {
        return Node{idx, begin, end, std::move(children)};
      }
    }
    failed_.insert(key);
    return std::nullopt;
  }

 private:
  bool MatchRhs(int production, size_t k, int pos, int end,
                std::vector<Node> &children) {
    const Production &p = g_.productions()[production];
    if (k == p.rhs.size()) return pos == end;
    const GrammarSymbol &s = p.rhs[k];
    // Each remaining symbol consumes at least one token.
    if (static_cast<int>(p.rhs.size() - k) > end - pos) return false;
    if (s.terminal) {
      if (tokens_[pos] != s.text) return false;
      return MatchRhs(production, k + 1, pos + 1, end, children);
    }
    for (int stop = pos + 1; stop <= end; ++stop) {
      if (!chart_.HasCompleted(s.text, pos, stop)) continue;
      std::optional<Node> child = Derive(s.text, pos, stop);
      if (!child) continue;
      children.push_back(std::move(*child));
      if (MatchRhs(production, k + 1, stop, end, children)) return true;
      children.pop_back();
    }
    return false;
  }

  const SynchronousGrammar &g_;
  const EarleyChart &chart_;
  const Tokens &tokens_;
  std::set<std::tuple<std::string, int, int>> failed_;
};

std::string SurfaceOf(const Node &node, const Tokens &tokens) {
  Tokens span(tokens.begin() + node.begin, tokens.begin() + node.end);
  return Join(span);
}

// Returns the instantiated template text carried by the subtree, if any.
std::optional<std::string> Semantics(const SynchronousGrammar &g,
                                     const Node &node, const Tokens &tokens) {
  if (node.production < 0) return std::nullopt;
  const Production &p = g.productions()[node.production];
  if (!p.semantic_template) {
    for (const Node &child : node.children) {
      if (auto s = Semantics(g, child, tokens)) return s;
    }
    return std::nullopt;
  }
  std::map<std::string, std::string> values;
  size_t child = 0;
  for (const GrammarSymbol &s : p.rhs) {
    if (s.terminal) continue;
    values[s.text] = SurfaceOf(node.children[child++], tokens);
  }
  std::string out;
  const std::string &tmpl = *p.semantic_template;
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

std::optional<LogicalForm> ChartParse(const SynchronousGrammar &grammar,
                                      const Tokens &command,
                                      const Ontology *ontology) {
  if (command.empty()) return std::nullopt;
  std::vector<std::string> starts;
  for (int c : grammar.categories()) {
    const std::string &s = grammar.StartOf(c);
    if (grammar.CarriesSemantics(s) &&
        std::find(starts.begin(), starts.end(), s) == starts.end())
      starts.push_back(s);
  }
  EarleyChart chart(grammar, command, ontology);
  chart.Run(starts);
  DerivationExtractor extractor(grammar, chart, command);
  const int n = static_cast<int>(command.size());
  for (const std::string &start : starts) {
    if (!chart.HasCompleted(start, 0, n)) continue;
    std::optional<Node> tree = extractor.Derive(start, 0, n);
    if (!tree) continue;
    std::optional<std::string> text = Semantics(grammar, *tree, command);
    if (!text) continue;
    try {
      return ParseLf(*text, grammar.registry());
    } catch (const LfError &) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace cmdparse
