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

#include <filesystem>
#include <set>
#include <sstream>

#include "cmdparse/errors.h"
#include "cmdparse/harness/error_report.h"
#include "cmdparse/harness/experiment.h"
#include "cmdparse/harness/matrix.h"
#include "cmdparse/harness/repl.h"
#include "cmdparse/nn/decoder.h"
#include "doctest.h"
#include "nn_fixtures.h"

namespace cmdparse {
namespace {

namespace fs = std::filesystem;
using testing::Words;

SplitCorpora Corpora(uint64_t seed = 1) {
  Dataset gen;
  gen.pairs = EnumerateAnonymized(testing::MiniGrammar());
  Dataset para = AnonymizeCommands(
      LoadJsonl(testing::DataPath("paraphrases.jsonl"), testing::Registry(),
                Origin::kParaphrased),
      testing::MiniOntology());
  return PrepareSplits(gen, para, {}, seed);
}

ModelVariant Variant(const char *name, ModelKind kind) {
  ModelVariant v;
  v.name = name;
  v.kind = kind;
  return v;
}

ModelVariant Oracle() { return Variant("oracle", ModelKind::kOracle); }
ModelVariant Knn() { return Variant("knn", ModelKind::kKnn); }

fs::path TempDir(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST_CASE("regime names") {
  CHECK(AllRegimes().size() == 4);
  for (const Regime &r : AllRegimes()) CHECK(ParseRegime(RegimeName(r)) == r);
  CHECK(RegimeName(AllRegimes()[3]) == "gen+para/para");
  CHECK_THROWS_AS(ParseRegime("para/gen"), Error);
  CHECK(FormatAccuracy(95.875) == "95.9");
  CHECK(FormatAccuracy(100) == "100.0");
}

TEST_CASE("oracle and knn on the bundled corpus") {
  SplitCorpora c = Corpora();
  const SynchronousGrammar &g = testing::MiniGrammar();
  for (SplitKind split : {SplitKind::kCommand, SplitKind::kLogical}) {
    ExperimentResult oracle =
        RunExperiment({AllRegimes()[0], split, Oracle(), 1}, c, g);
    CHECK(oracle.accuracy == 100.0);
    CHECK(oracle.total == static_cast<int>(oracle.predictions.size()));
  }
  for (const Regime &r : AllRegimes()) {
    ExperimentResult knn = RunExperiment({r, SplitKind::kLogical, Knn(), 1}, c, g);
    CHECK(knn.accuracy == 0.0);
    CHECK(knn.total > 0);
  }
  ExperimentResult para_oracle =
      RunExperiment({AllRegimes()[1], SplitKind::kCommand, Oracle(), 1}, c, g);
  CHECK(para_oracle.accuracy < 50.0);
}

TEST_CASE("training data follows the regime") {
  SplitCorpora c = Corpora();
  ExperimentSpec spec{AllRegimes()[3], SplitKind::kLogical, Knn(), 1};
  ExperimentData d = SelectData(spec, c);
  const int gen_train = c.gen_logical.Count(Partition::kTrain);
  const int para_train = c.para_logical.Count(Partition::kTrain);
  CHECK(static_cast<int>(d.train.size()) == gen_train + para_train);
  CHECK(static_cast<int>(d.test.size()) == c.para_logical.Count(Partition::kTest));
  CHECK(FindLeaks(d.train, d.test, SplitKind::kLogical).empty());
  CHECK(FindLeaks(d.validation, d.test, SplitKind::kLogical).empty());

  ExperimentData para_only = SelectData({AllRegimes()[2], SplitKind::kCommand, Knn(), 1}, c);
  CHECK(static_cast<int>(para_only.train.size()) ==
        c.para_command.Count(Partition::kTrain));
  std::set<std::string> para_commands;
  for (const CorpusPair &p : c.para_command.pairs)
    para_commands.insert(p.CommandText());
  for (const CorpusPair &p : para_only.train)
    CHECK(para_commands.count(p.CommandText()) == 1);
}

TEST_CASE("leaks are refused") {
  SplitCorpora c = Corpora();
  // Move one test form into training in the paraphrase data.
  for (CorpusPair &p : c.para_logical.pairs) {
    if (p.split == Partition::kTest) {
      CorpusPair copy = p;
      copy.split = Partition::kTrain;
      c.para_logical.pairs.push_back(copy);
      break;
    }
  }
  try {
    RunExperiment({AllRegimes()[3], SplitKind::kLogical, Knn(), 1}, c,
                  testing::MiniGrammar());
    FAIL("expected a leak error");
  } catch (const CorpusError &e) {
    CHECK(e.kind() == CorpusError::Kind::kLeak);
  }
}

TEST_CASE("collapse clusters") {
  std::vector<Tokens> inputs = {Words("go to the kitchen"),
                                Words("navigate to the office"),
                                Words("do this then that"),
                                Words("bring me a coke")};
  Tokens room = PrintLf(testing::Lf(R"(( go " <room> " ))"));
  std::vector<Tokens> predictions = {room, room, room,
                                     PrintLf(testing::Lf(R"(( go " <location> " ))"))};
  std::vector<Tokens> gold = {
      PrintLf(testing::Lf(R"(( go " <location> " ))")),
      PrintLf(testing::Lf(R"(( go " <location> " ))")),
      PrintLf(testing::Lf(R"(( say " <object> " ))")),
      PrintLf(testing::Lf(R"(( bring ( λ $1 e ( is_a $1 " <object> " ) ) ))"))};
  ErrorReport report = BuildErrorReport(inputs, predictions, gold);
  REQUIRE(report.clusters.size() == 1);
  CHECK(report.clusters[0].prediction == room);
  CHECK(report.clusters[0].inputs == std::vector<int>{0, 1, 2});
  std::string text = FormatErrorReport(report, inputs, predictions);
  CHECK(text.find("do this then that") != std::string::npos);
  nlohmann::json j = ErrorReportToJson(report, inputs, predictions);
  CHECK(j["collapse_clusters"].size() == 1);
}

TEST_CASE("sensitivity pairs") {
  std::vector<Tokens> inputs = {Words("bring an umbrella to me"),
                                Words("bring an umbrella to bob")};
  Tokens y4 = PrintLf(testing::Lf(R"(( bring ( λ $1 e ( is_a $1 " <object> " ) ) ))"));
  Tokens y5 = PrintLf(testing::Lf(
      R"(( follow ( λ $1 e ( person $1 ) ( name $1 " <name> " ) ) ))"));
  ErrorReport report = BuildErrorReport(inputs, {y4, y5}, {y4, y4});
  REQUIRE(report.sensitive.size() == 1);
  CHECK(report.sensitive[0].first == 0);
  CHECK(report.sensitive[0].second == 1);
  CHECK(ErrorReportToJson(report, inputs, {y4, y5})["sensitive_pairs"].size() == 1);
}

TEST_CASE("perfect predictions give an empty report") {
  std::vector<Tokens> inputs = {Words("go to the <room>"),
                                Words("go to the <location>"),
                                Words("move to the <room>")};
  std::vector<Tokens> gold = {PrintLf(testing::Lf(R"(( go " <room> " ))")),
                              PrintLf(testing::Lf(R"(( go " <location> " ))")),
                              PrintLf(testing::Lf(R"(( go " <room> " ))"))};
  CHECK(BuildErrorReport(inputs, gold, gold).empty());
  CHECK_THROWS_AS(BuildErrorReport(inputs, gold, {}), Error);
}

TEST_CASE("baseline matrix is resumable and reproducible") {
  fs::path out = TempDir("cmdparse_matrix_test");
  MatrixConfig config = LoadMatrixConfig(testing::ConfigPath("baselines.json"));
  MatrixOutcome first = RunMatrix(config, out.string());
  CHECK(first.cells_failed == 0);
  CHECK(first.table.rows.size() == 2);
  CHECK(first.table.columns.size() == 8);
  std::string text = ReadFile((out / "results.txt").string());
  CHECK(text == first.table.ToText());
  CHECK(first.table.cells[0][0] == 100.0);

  MatrixOutcome resumed = RunMatrix(config, out.string());
  CHECK(resumed.cells_reused == first.cells_run);
  CHECK(resumed.cells_run == 0);
  CHECK(resumed.table.ToText() == text);

  fs::path fresh = TempDir("cmdparse_matrix_test_fresh");
  MatrixOutcome again = RunMatrix(config, fresh.string());
  CHECK(again.table.ToText() == text);
  CHECK(ReadFile((fresh / "results.json").string()) ==
        ReadFile((out / "results.json").string()));
  fs::remove_all(out);
  fs::remove_all(fresh);
}

TEST_CASE("failing cells are recorded") {
  MatrixConfig config = LoadMatrixConfig(testing::ConfigPath("baselines.json"));
  ModelVariant broken = Variant("broken", ModelKind::kSeq2Seq);
  broken.config.max_decode_len = 3;
  config.models.push_back(broken);
  config.regimes = {AllRegimes()[0]};
  config.splits = {SplitKind::kCommand};
  MatrixOutcome outcome = RunMatrix(config, "");
  CHECK(outcome.cells_failed == 1);
  CHECK(outcome.table.cells[0][0] == 100.0);
  CHECK_FALSE(outcome.table.cells[2][0].has_value());
  CHECK(outcome.table.ToText().find("ERR") != std::string::npos);
  CHECK(outcome.manifest["cells"][2]["status"] == "failed");
}

TEST_CASE("repl session") {
  std::vector<CorpusPair> pairs = EnumerateAnonymized(testing::MiniGrammar());
  nn::ModelConfig config = testing::TinyConfig(4, 4);
  nn::Seq2SeqModel model = testing::MakeModel(pairs, config);
  // Whatever the untrained model says, the session must keep going.
  std::istringstream in(
      "\n\n/ontology add object teddy bear\n/ontology add planet mars\n"
      "fetch an apple from the kitchen\n/help\n/quit\n");
  std::ostringstream out;
  Ontology final = RunRepl(model, testing::MiniOntology(),
                           testing::MiniGrammar(), in, out);
  std::string text = out.str();
  CHECK(final.LookupSurface("teddy bear") == "object");
  CHECK(final.LookupSurface("mars") == "planet");
  CHECK(text.find("anonymized: fetch an <object> from the <location>") !=
        std::string::npos);
  CHECK(text.find("  [1] ") != std::string::npos);
  // Two empty lines re-prompt before the first command is handled.
  CHECK(text.rfind("> > > added", 0) == 0);
}

TEST_CASE("repl session with a trained parser") {
  ExperimentData data = SelectData(
      {AllRegimes()[0], SplitKind::kCommand, Knn(), 1}, Corpora());
  nn::ModelConfig config = testing::DeskConfig();
  nn::Seq2SeqModel model = testing::MakeModel(data.train, config);
  nn::Train(model, data.train, data.validation);
  std::istringstream in(
      "fetch an apple from the kitchen\n"
      "move the apple from the kitchen counter to the dining table\n"
      "1\n2\n/quit\n");
  std::ostringstream out;
  RunRepl(model, testing::MiniOntology(), testing::MiniGrammar(), in, out);
  std::string text = out.str();
  CHECK(text.find(R"(result: ( bring ( λ $1 e ( is_a $1 " apple " ) )"
                  R"(( at $1 " kitchen " ) ) ))") != std::string::npos);
  const std::string prompt =
      "Which <location> did you mean? [1] kitchen counter [2] dining table";
  const size_t first = text.find(prompt);
  REQUIRE(first != std::string::npos);
  CHECK(text.find(prompt, first + 1) != std::string::npos);
  CHECK(text.find(R"(" kitchen counter " ) ) " dining table " ))") !=
        std::string::npos);
}

}  // namespace
}  // namespace cmdparse
