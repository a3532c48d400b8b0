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

#ifndef CMDPARSE_ONTOLOGY_H_
#define CMDPARSE_ONTOLOGY_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmdparse/logical_form.h"
#include "cmdparse/strings.h"

namespace cmdparse {

// The robot's knowledge base: named entities grouped by class.
//
// An Ontology is an immutable snapshot. Mutations return a new snapshot that
// shares nothing mutable with the old one, so readers never need locks.
//
// File format:
//   #class object
//   apple
//   orange juice
//   #class location
//   kitchen counter
// Blank lines are ignored; lines starting with "//" are comments.
class Ontology {
 public:
  Ontology();

  static Ontology Parse(std::string_view text);
  static Ontology Load(const std::string &path);
  std::string Serialize() const;
  void Save(const std::string &path) const;

  // Classes in declaration order.
  const std::vector<std::string> &classes() const { return data_->classes; }
  bool HasClass(std::string_view class_name) const;

  // Entities of a class in insertion order, lowercase and space-joined.
  // Throws OntologyError for undeclared classes.
  const std::vector<std::string> &Entities(std::string_view class_name) const;

  // Class of an exact, case-insensitive entity match. When a surface form is
  // listed under several classes the earliest-declared class wins.
  std::optional<std::string> LookupSpan(const Tokens &tokens) const;
  std::optional<std::string> LookupSurface(std::string_view surface) const;

  // All classes listing the surface form, in declaration order.
  std::vector<std::string> ClassesOf(std::string_view surface) const;

  // Longest entity, in tokens.
  int max_entity_length() const { return data_->max_entity_length; }

  // Returns a snapshot containing the entity. The version only advances when
  // the entity was not already present. Throws OntologyError(kUnknownClass).
  Ontology AddEntity(std::string_view class_name, const Tokens &surface) const;
  Ontology AddEntity(std::string_view class_name,
                     std::string_view surface) const;

  // Returns a snapshot with an additional (empty) class.
  Ontology AddClass(std::string_view class_name) const;

  uint64_t version() const { return data_->version; }

  // Checks every class token of the form against the declared classes.
  bool ValidateClassTokens(const LogicalForm &lf,
                           std::string *bad_class = nullptr) const;

  // Same classes and entities; ignores version.
  bool SameContent(const Ontology &other) const;

 private:
  struct Data {
    std::vector<std::string> classes;
    std::map<std::string, std::vector<std::string>, std::less<>> entities;
    // surface -> classes containing it, in declaration order.
    std::map<std::string, std::vector<std::string>, std::less<>> index;
    int max_entity_length = 0;
    uint64_t version = 0;
  };

  explicit Ontology(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  static void Insert(Data &data, const std::string &class_name,
                     const std::string &surface);

  std::shared_ptr<const Data> data_;
};

// Lowercases and collapses whitespace.
std::string NormalizeSurface(std::string_view surface);

}  // namespace cmdparse

#endif  // CMDPARSE_ONTOLOGY_H_
