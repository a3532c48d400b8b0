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

#include "cmdparse/deanonymizer.h"
#include "cmdparse/errors.h"
#include "cmdparse/log.h"
#include "doctest.h"
#include "test_support.h"

namespace cmdparse {
namespace {

using testing::Lf;
using testing::MiniOntology;
using testing::Words;

TEST_CASE("unique classes bind without dialogue") {
  AnonymizedCommand a =
      Anonymize(Words("bring me a red apple from the kitchen"), MiniOntology());
  ScriptedResolver resolver({});
  DeanonymizedForm out = DeanonymizeLf(
      Lf(R"(( bring ( λ $1 e ( is_a $1 " <object> " ) ( at $1 " <location> " ) ) ))"),
      a, std::ref(resolver), MiniOntology());
  CHECK(out.queries.empty());
  CHECK(resolver.asked().empty());
  CHECK(PrintLfString(out.lf) ==
        R"(( bring ( λ $1 e ( is_a $1 " apple " ) ( at $1 " kitchen " ) ) ))");
  CHECK(out.ontology.version() == MiniOntology().version());
}

TEST_CASE("two locations ask twice") {
  AnonymizedCommand a = Anonymize(
      Words("move the apple from the kitchen counter to the dining table"),
      MiniOntology());
  ScriptedResolver resolver({"#1", "#2"});
  DeanonymizedForm out = DeanonymizeLf(
      Lf(R"(( bring ( λ $1 e ( is_a $1 " <object> " ) ( at $1 " <location> " ) ) " <location> " ))"),
      a, std::ref(resolver), MiniOntology());
  REQUIRE(out.queries.size() == 2);
  for (const SlotQuery &q : out.queries) {
    CHECK(q.class_name == "location");
    CHECK(q.candidates ==
          std::vector<std::string>{"kitchen counter", "dining table"});
  }
  CHECK(out.queries[0].prompt ==
        "Which <location> did you mean? [1] kitchen counter [2] dining table "
        "(or type a new value):");
  CHECK(ClassTokensOf(out.lf).empty());
  CHECK(PrintLfString(out.lf) ==
        R"(( bring ( λ $1 e ( is_a $1 " apple " ) ( at $1 " kitchen counter " ) ) " dining table " ))");
}

TEST_CASE("missing entity is asked and learned") {
  AnonymizedCommand a = Anonymize(Words("follow him"), MiniOntology());
  ScriptedResolver resolver({"Zed"});
  DeanonymizedForm out = DeanonymizeLf(
      Lf(R"(( follow ( λ $1 e ( person $1 ) ( name $1 " <name> " ) ) ))"), a,
      std::ref(resolver), MiniOntology());
  REQUIRE(out.queries.size() == 1);
  CHECK(out.queries[0].candidates.empty());
  CHECK(out.queries[0].prompt ==
        "Which <name> did you mean? (type a new value):");
  CHECK(out.ontology.LookupSurface("zed") == "name");
  CHECK(out.ontology.version() > MiniOntology().version());
  CHECK(ClassTokensOf(out.lf).empty());
}

TEST_CASE("answers for an undeclared class create the class") {
  AnonymizedCommand a = Anonymize(Words("go there"), MiniOntology());
  ScriptedResolver resolver({"mars"});
  PredicateRegistry registry = testing::Registry();
  DeanonymizedForm out = DeanonymizeLf(
      ParseLf(R"(( go " <planet> " ))", registry), a, std::ref(resolver),
      MiniOntology());
  CHECK(out.ontology.LookupSurface("mars") == "planet");
}

TEST_CASE("resolver can abort") {
  AnonymizedCommand a = Anonymize(Words("follow him"), MiniOntology());
  ScriptedResolver resolver({});
  CHECK_THROWS_AS(
      DeanonymizeLf(
          Lf(R"(( follow ( λ $1 e ( person $1 ) ( name $1 " <name> " ) ) ))"),
          a, std::ref(resolver), MiniOntology()),
      ResolverAborted);
}

TEST_CASE("classes missing from the form are ignored with a warning") {
  std::vector<std::string> warnings;
  WarningSink old =
      SetWarningSink([&](std::string_view w) { warnings.emplace_back(w); });
  AnonymizedCommand a =
      Anonymize(Words("go to the bedroom with bob"), MiniOntology());
  ScriptedResolver resolver({});
  DeanonymizedForm out = DeanonymizeLf(Lf(R"(( go " <room> " ))"), a,
                                       std::ref(resolver), MiniOntology());
  SetWarningSink(old);
  CHECK(PrintLfString(out.lf) == R"(( go " bedroom " ))");
  CHECK(!warnings.empty());
}

TEST_CASE("free-text answers become new entities; known answers do not") {
  AnonymizedCommand a = Anonymize(Words("go to the bedroom and the office"),
                                  MiniOntology());
  ScriptedResolver resolver({"office"});
  DeanonymizedForm out = DeanonymizeLf(Lf(R"(( go " <room> " ))"), a,
                                       std::ref(resolver), MiniOntology());
  CHECK(out.queries.size() == 1);
  CHECK(out.ontology.version() == MiniOntology().version());
}

TEST_CASE("prompt format") {
  CHECK(FormatSlotPrompt("object", {"apple"}) ==
        "Which <object> did you mean? [1] apple (or type a new value):");
}

}  // namespace
}  // namespace cmdparse
