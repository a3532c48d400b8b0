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

#include <random>

#include "cmdparse/anonymizer.h"
#include "cmdparse/errors.h"
#include "doctest.h"
#include "test_support.h"

namespace cmdparse {
namespace {

using testing::MiniOntology;
using testing::Words;

TEST_CASE("fetch an apple from the kitchen") {
  AnonymizedCommand a =
      Anonymize(Words("fetch an apple from the kitchen"), MiniOntology());
  CHECK(Join(a.tokens) == "fetch an <object> from the <location>");
  REQUIRE(a.replacements.size() == 2);
  CHECK(a.replacements[0] == Replacement{"object", {"apple"}, 2});
  CHECK(a.replacements[1] == Replacement{"location", {"kitchen"}, 5});
  CHECK(DeanonymizeCommand(a) == Words("fetch an apple from the kitchen"));
}

TEST_CASE("command without entities is unchanged") {
  AnonymizedCommand a = Anonymize(Words("do this then that"), MiniOntology());
  CHECK(a.tokens == Words("do this then that"));
  CHECK(a.replacements.empty());
  CHECK(DeanonymizeCommand(a) == Words("do this then that"));
}

TEST_CASE("two locations and an object") {
  AnonymizedCommand a = Anonymize(
      Words("move the apple from the kitchen counter to the dining table"),
      MiniOntology());
  CHECK(Join(a.tokens) ==
        "move the <object> from the <location> to the <location>");
  REQUIRE(a.replacements.size() == 3);
  CHECK(a.replacements[1].original_span == Words("kitchen counter"));
  CHECK(a.replacements[2].original_span == Words("dining table"));
}

TEST_CASE("longest match wins and articles stay") {
  AnonymizedCommand a =
      Anonymize(Words("go to the kitchen counter"), MiniOntology());
  CHECK(Join(a.tokens) == "go to the <location>");
  CHECK(a.replacements.size() == 1);
}

TEST_CASE("original casing survives the round trip") {
  Tokens command = Words("Bring the Orange Juice to BOB");
  AnonymizedCommand a = Anonymize(command, MiniOntology());
  CHECK(Join(a.tokens) == "Bring the <object> to <name>");
  CHECK(DeanonymizeCommand(a) == command);
}

TEST_CASE("inconsistent positions are rejected") {
  AnonymizedCommand a =
      Anonymize(Words("fetch an apple from the kitchen"), MiniOntology());
  a.replacements[1].position = 40;
  CHECK_THROWS_AS(DeanonymizeCommand(a), AnonymizationError);
  a.replacements[1].position = 0;
  CHECK_THROWS_AS(DeanonymizeCommand(a), AnonymizationError);
}

TEST_CASE("replacements are sorted, distinct and never overlap") {
  std::mt19937_64 rng(3);
  std::vector<std::string> vocab = {"the", "to", "kitchen", "counter", "apple",
                                    "bob", "living", "room", "orange", "juice",
                                    "dining", "table", "go", "waving"};
  for (int trial = 0; trial < 500; ++trial) {
    Tokens command;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 10); ++k)
      command.push_back(vocab[rng() % vocab.size()]);
    AnonymizedCommand a = Anonymize(command, MiniOntology());
    for (size_t k = 1; k < a.replacements.size(); ++k)
      CHECK(a.replacements[k - 1].position < a.replacements[k].position);
    CHECK(DeanonymizeCommand(a) == command);
  }
}

TEST_CASE("round trip over sampled concrete commands") {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    CorpusPair p = SamplePair(testing::MiniGrammar(), MiniOntology(), seed);
    AnonymizedCommand a = Anonymize(p.command, MiniOntology());
    CHECK(DeanonymizeCommand(a) == p.command);
  }
}

}  // namespace
}  // namespace cmdparse
