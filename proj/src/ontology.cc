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

#include "cmdparse/ontology.h"

#include <algorithm>
#include <functional>
#include <sstream>

#include "cmdparse/errors.h"
#include "cmdparse/log.h"

namespace cmdparse {

std::string NormalizeSurface(std::string_view surface) {
  return Join(SplitWhitespace(ToLower(surface)));
}

Ontology::Ontology() : data_(std::make_shared<const Data>()) {}

void Ontology::Insert(Data &data, const std::string &class_name,
                      const std::string &surface) {
  data.entities[class_name].push_back(surface);
  std::vector<std::string> &owners = data.index[surface];
  if (!owners.empty()) {
    LogWarning("entity '" + surface + "' listed under both '" + owners[0] +
               "' and '" + class_name + "'; '" + owners[0] + "' takes precedence");
  }
  owners.push_back(class_name);
  // Keep owners in class declaration order.
  std::stable_sort(owners.begin(), owners.end(),
                   [&data](const std::string &a, const std::string &b) {
                     auto pos = [&data](const std::string &c) {
                       return std::find(data.classes.begin(),
                                        data.classes.end(), c) -
                              data.classes.begin();
                     };
                     return pos(a) < pos(b);
                   });
  data.max_entity_length = std::max(
      data.max_entity_length, static_cast<int>(SplitWhitespace(surface).size()));
}

Ontology Ontology::Parse(std::string_view text) {
  auto data = std::make_shared<Data>();
  std::string current;
  int line_number = 0;
  for (const std::string &raw : SplitLines(text)) {
    ++line_number;
    std::string line = Trim(raw);
    if (line.empty() || line.starts_with("//")) continue;
    if (line.starts_with("#class")) {
      Tokens fields = SplitWhitespace(line);
      if (fields.size() != 2 || fields[0] != "#class") {
        throw OntologyError(OntologyError::Kind::kMalformedFile,
                            "ontology line " + std::to_string(line_number) +
                                ": expected '#class <name>'");
      }
      current = ToLower(fields[1]);
      if (std::find(data->classes.begin(), data->classes.end(), current) !=
          data->classes.end()) {
        throw OntologyError(OntologyError::Kind::kMalformedFile,
                            "ontology line " + std::to_string(line_number) +
                                ": class '" + current + "' declared twice");
      }
      data->classes.push_back(current);
      data->entities[current];
      continue;
    }
    if (line[0] == '#') continue;
    if (current.empty()) {
      throw OntologyError(OntologyError::Kind::kMalformedFile,
                          "ontology line " + std::to_string(line_number) +
                              ": entity before any #class header");
    }
    std::string surface = NormalizeSurface(line);
    const auto &existing = data->entities[current];
    if (std::find(existing.begin(), existing.end(), surface) != existing.end())
      continue;
    Insert(*data, current, surface);
  }
  return Ontology(std::move(data));
}

Ontology Ontology::Load(const std::string &path) { return Parse(ReadFile(path)); }

std::string Ontology::Serialize() const {
  std::ostringstream out;
  for (const std::string &c : data_->classes) {
    out << "#class " << c << '\n';
    for (const std::string &e : data_->entities.at(c)) out << e << '\n';
  }
  return out.str();
}

void Ontology::Save(const std::string &path) const { WriteFile(path, Serialize()); }

bool Ontology::HasClass(std::string_view class_name) const {
  return data_->entities.find(class_name) != data_->entities.end();
}

const std::vector<std::string> &Ontology::Entities(
    std::string_view class_name) const {
  auto it = data_->entities.find(class_name);
  if (it == data_->entities.end()) {
    throw OntologyError(OntologyError::Kind::kUnknownClass,
                        "unknown class '" + std::string(class_name) + "'");
  }
  return it->second;
}

std::optional<std::string> Ontology::LookupSurface(
    std::string_view surface) const {
  auto it = data_->index.find(NormalizeSurface(surface));
  if (it == data_->index.end() || it->second.empty()) return std::nullopt;
  return it->second.front();
}

std::optional<std::string> Ontology::LookupSpan(const Tokens &tokens) const {
  if (tokens.empty()) return std::nullopt;
  return LookupSurface(Join(tokens));
}

std::vector<std::string> Ontology::ClassesOf(std::string_view surface) const {
  auto it = data_->index.find(NormalizeSurface(surface));
  if (it == data_->index.end()) return {};
  return it->second;
}

Ontology Ontology::AddEntity(std::string_view class_name,
                             std::string_view surface) const {
  return AddEntity(class_name, SplitWhitespace(surface));
}

Ontology Ontology::AddEntity(std::string_view class_name,
                             const Tokens &surface) const {
  auto it = data_->entities.find(class_name);
  if (it == data_->entities.end()) {
    throw OntologyError(OntologyError::Kind::kUnknownClass,
                        "unknown class '" + std::string(class_name) + "'");
  }
  std::string normalized = NormalizeSurface(Join(surface));
  if (normalized.empty()) {
    throw OntologyError(OntologyError::Kind::kEmptySurface,
                        "empty entity surface form");
  }
  const auto &existing = it->second;
  if (std::find(existing.begin(), existing.end(), normalized) !=
      existing.end()) {
    return *this;
  }
  auto data = std::make_shared<Data>(*data_);
  Insert(*data, std::string(class_name), normalized);
  ++data->version;
  return Ontology(std::move(data));
}

Ontology Ontology::AddClass(std::string_view class_name) const {
  std::string name = ToLower(class_name);
  if (HasClass(name)) return *this;
  auto data = std::make_shared<Data>(*data_);
  data->classes.push_back(name);
  data->entities[name];
  ++data->version;
  return Ontology(std::move(data));
}

bool Ontology::ValidateClassTokens(const LogicalForm &lf,
                                   std::string *bad_class) const {
  for (const std::string &c : ClassTokensOf(lf)) {
    if (!HasClass(c)) {
      if (bad_class != nullptr) *bad_class = c;
      return false;
    }
  }
  return true;
}

bool Ontology::SameContent(const Ontology &other) const {
  return data_->classes == other.data_->classes &&
         data_->entities == other.data_->entities;
}

}  // namespace cmdparse
