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

// Command-line front end: corpus generation, splitting, training,
// evaluation, the results matrix, the interactive parser and the corpus
// helpers.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cmdparse/anonymizer.h"
#include "cmdparse/errors.h"
#include "cmdparse/grammar.h"
#include "cmdparse/harness/error_report.h"
#include "cmdparse/harness/experiment.h"
#include "cmdparse/harness/matrix.h"
#include "cmdparse/harness/repl.h"
#include "cmdparse/nn/checkpoint.h"
#include "cmdparse/nn/decoder.h"
#include "cmdparse/nn/vectors.h"
#include "cmdparse/text_metrics.h"

namespace fs = std::filesystem;
using namespace cmdparse;

namespace {

const std::string kDataDir = CMDPARSE_DATA_DIR;

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string StatsText(const GrammarStats &stats) {
  std::ostringstream out;
  out << "category  commands  forms  annotations  cmd_len  lf_len  "
         "cmds_per_form\n";
  auto row = [&](const std::string &name, const CategoryStats &c) {
    out << name << std::string(10 - std::min<size_t>(name.size(), 9), ' ')
        << c.commands << "  " << c.logical_forms << "  " << c.annotations
        << "  " << Fixed(c.mean_command_length, 1) << "  "
        << Fixed(c.mean_lf_length, 1) << "  " << Fixed(c.commands_per_form, 1)
        << "\n";
  };
  for (const CategoryStats &c : stats.categories)
    row(std::to_string(c.category), c);
  row("all", stats.all);
  out << "structural token fraction: "
      << Fixed(stats.structural_token_fraction, 3) << "\n";
  return out.str();
}

PredicateRegistry LoadRegistry(const std::string &path) {
  return path.empty() ? PredicateRegistry::Bundled()
                      : PredicateRegistry::Load(path);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Semantic parser for service-robot commands"};
  app.require_subcommand(1);

  std::string grammar_path = kDataDir + "/gpsr_mini.grammar";
  std::string ontology_path = kDataDir + "/ontology.txt";
  std::string predicates_path;
  std::string paraphrase_path = kDataDir + "/paraphrases.jsonl";
  std::string out_dir = ".";
  std::string config_path;
  uint64_t seed = 1;

  // generate
  CLI::App *generate =
      app.add_subcommand("generate", "Expand the grammar into a corpus");
  int samples = 0;
  generate->add_option("--grammar", grammar_path, "Grammar file");
  generate->add_option("--ontology", ontology_path, "Ontology file");
  generate->add_option("--predicates", predicates_path, "Predicate registry");
  generate->add_option("--samples", samples,
                       "Also draw this many concrete commands");
  generate->add_option("--seed", seed, "Sampling seed");
  generate->add_option("--out", out_dir, "Output directory");

  // split
  CLI::App *split = app.add_subcommand("split", "Command and logical splits");
  std::string generated_path;
  split->add_option("--generated", generated_path, "Generated corpus (jsonl)")
      ->required();
  split->add_option("--paraphrases", paraphrase_path, "Paraphrases (jsonl)");
  split->add_option("--ontology", ontology_path,
                    "Ontology used to anonymize raw paraphrases");
  split->add_option("--predicates", predicates_path, "Predicate registry");
  split->add_option("--seed", seed, "Split seed");
  split->add_option("--out", out_dir, "Output directory");

  // train
  CLI::App *train = app.add_subcommand("train", "Train a seq2seq parser");
  std::string data_dir, regime_name = "gen/gen", split_name = "command";
  std::string vectors_path;
  train->add_option("--data", data_dir, "Directory written by 'split'")
      ->required();
  train->add_option("--regime", regime_name, "gen/gen, gen/para, para/para "
                                             "or gen+para/para");
  train->add_option("--split", split_name, "command or logical");
  train->add_option("--config", config_path, "Model config (json)");
  train->add_option("--vectors", vectors_path, "Pretrained vector file");
  train->add_option("--predicates", predicates_path, "Predicate registry");
  train->add_option("--seed", seed, "Model seed");
  train->add_option("--out", out_dir, "Output directory");

  // eval
  CLI::App *eval = app.add_subcommand("eval", "Score a checkpoint");
  std::string model_path, eval_data;
  eval->add_option("--model", model_path, "Checkpoint")->required();
  eval->add_option("--data", eval_data,
                   "Corpus (jsonl); only test pairs when split-tagged")
      ->required();
  eval->add_option("--predicates", predicates_path, "Predicate registry");
  eval->add_option("--out", out_dir, "Output directory");

  // matrix
  CLI::App *matrix = app.add_subcommand("matrix", "Run the results matrix");
  matrix->add_option("--config", config_path, "Matrix config (json)")
      ->required();
  matrix->add_option("--out", out_dir, "Output directory");

  // repl
  CLI::App *repl = app.add_subcommand("repl", "Interactive parsing");
  repl->add_option("--model", model_path, "Checkpoint")->required();
  repl->add_option("--ontology", ontology_path, "Ontology file");
  repl->add_option("--grammar", grammar_path, "Grammar file");
  repl->add_option("--predicates", predicates_path, "Predicate registry");

  // anonymize
  CLI::App *anonymize =
      app.add_subcommand("anonymize", "Replace known entities by class");
  std::vector<std::string> words;
  anonymize->add_option("--ontology", ontology_path, "Ontology file");
  anonymize->add_option("command", words, "Command (stdin lines if absent)");

  // judge
  CLI::App *judge =
      app.add_subcommand("judge", "Validate paraphrases (original<TAB>new)");
  std::string judge_input;
  ParaphraseThresholds thresholds;
  judge->add_option("input", judge_input, "TSV file ('-' for stdin)")
      ->required();
  judge->add_option("--min-levenshtein", thresholds.min_levenshtein);
  judge->add_option("--min-jaccard", thresholds.min_jaccard);
  judge->add_option("--max-jaccard", thresholds.max_jaccard);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      PredicateRegistry registry = LoadRegistry(predicates_path);
      SynchronousGrammar grammar =
          SynchronousGrammar::Load(grammar_path, registry);
      fs::create_directories(out_dir);
      Dataset corpus;
      corpus.pairs = EnumerateAnonymized(grammar);
      SaveJsonl((fs::path(out_dir) / "generated.jsonl").string(), corpus);
      std::string stats = StatsText(ComputeStats(grammar, corpus.pairs));
      WriteFile((fs::path(out_dir) / "stats.txt").string(), stats);
      std::cout << stats;
      if (samples > 0) {
        Ontology ontology = Ontology::Load(ontology_path);
        Dataset sampled;
        for (int i = 0; i < samples; ++i) {
          sampled.pairs.push_back(
              SamplePair(grammar, ontology, seed + static_cast<uint64_t>(i)));
        }
        SaveJsonl((fs::path(out_dir) / "samples.jsonl").string(), sampled);
      }
      std::cout << corpus.pairs.size() << " anonymized pairs written to "
                << out_dir << "\n";
    } else if (*split) {
      PredicateRegistry registry = LoadRegistry(predicates_path);
      Dataset gen = LoadJsonl(generated_path, registry, Origin::kGenerated);
      Dataset para = AnonymizeCommands(
          LoadJsonl(paraphrase_path, registry, Origin::kParaphrased),
          Ontology::Load(ontology_path));
      SplitRatios ratios;
      SplitCorpora c = PrepareSplits(gen, para, ratios, seed);
      fs::create_directories(out_dir);
      auto save = [&](const char *name, const Dataset &d) {
        SaveJsonl((fs::path(out_dir) / name).string(), d);
      };
      save("gen_command.jsonl", c.gen_command);
      save("para_command.jsonl", c.para_command);
      save("gen_logical.jsonl", c.gen_logical);
      save("para_logical.jsonl", c.para_logical);
      nlohmann::json manifest = {
          {"gen_command", SplitManifest(c.gen_command, "command", seed, ratios)},
          {"para_command",
           SplitManifest(c.para_command, "command", seed, ratios)},
          {"gen_logical", SplitManifest(c.gen_logical, "logical", seed, ratios)},
          {"para_logical",
           SplitManifest(c.para_logical, "logical", seed, ratios)}};
      WriteFile((fs::path(out_dir) / "split_manifest.json").string(),
                manifest.dump(2) + "\n");
      for (const auto &[name, d] :
           {std::pair<std::string, const Dataset *>{"gen_command", &c.gen_command},
            {"para_command", &c.para_command},
            {"gen_logical", &c.gen_logical},
            {"para_logical", &c.para_logical}}) {
        std::cout << name << ": train " << d->Count(Partition::kTrain)
                  << ", validation " << d->Count(Partition::kValidation)
                  << ", test " << d->Count(Partition::kTest) << "\n";
      }
    } else if (*train) {
      PredicateRegistry registry = LoadRegistry(predicates_path);
      SplitKind kind = ParseSplitKind(split_name);
      auto load = [&](const std::string &name, Origin origin) {
        return LoadJsonl((fs::path(data_dir) / name).string(), registry,
                         origin);
      };
      SplitCorpora c;
      c.gen_command = load("gen_command.jsonl", Origin::kGenerated);
      c.para_command = load("para_command.jsonl", Origin::kParaphrased);
      c.gen_logical = load("gen_logical.jsonl", Origin::kGenerated);
      c.para_logical = load("para_logical.jsonl", Origin::kParaphrased);
      ExperimentSpec spec;
      spec.regime = ParseRegime(regime_name);
      spec.split = kind;
      spec.seed = seed;
      ExperimentData data = SelectData(spec, c);
      nn::ModelConfig config;
      if (!config_path.empty()) {
        config = nn::ConfigFromJson(nlohmann::json::parse(ReadFile(config_path)));
      }
      config.seed = seed;
      auto [source, target] = BuildVocab(data.train);
      nn::Matrix frozen;
      if (!vectors_path.empty())
        frozen = nn::LoadPretrainedVectors(vectors_path, source);
      nn::Seq2SeqModel model(config, std::move(source), std::move(target),
                             frozen);
      nn::TrainReport report = nn::Train(model, data.train, data.validation);
      fs::create_directories(out_dir);
      nn::SaveCheckpoint(model, (fs::path(out_dir) / "model.json").string());
      nlohmann::json epochs = nlohmann::json::array();
      for (const nn::EpochRecord &e : report.epochs) {
        epochs.push_back({{"epoch", e.epoch},
                          {"train_loss", e.train_loss},
                          {"train_token_accuracy", e.train_token_accuracy},
                          {"validation_exact_match", e.validation_exact_match}});
        std::cout << "epoch " << e.epoch << "  loss " << Fixed(e.train_loss, 4)
                  << "  validation " << FormatAccuracy(e.validation_exact_match)
                  << "\n";
      }
      nlohmann::json out = {{"config", report.config},
                            {"epochs", epochs},
                            {"best_epoch", report.best_epoch},
                            {"stopped_early", report.stopped_early},
                            {"stopped_at_ceiling", report.stopped_at_ceiling},
                            {"wall_seconds", report.wall_seconds}};
      WriteFile((fs::path(out_dir) / "train_report.json").string(),
                out.dump(2) + "\n");
      std::cout << "best epoch " << report.best_epoch << ", checkpoint in "
                << out_dir << "\n";
    } else if (*eval) {
      PredicateRegistry registry = LoadRegistry(predicates_path);
      nn::Seq2SeqModel model = nn::LoadCheckpoint(model_path);
      Dataset d = LoadJsonl(eval_data, registry, Origin::kGenerated);
      std::vector<CorpusPair> pairs = d.Count(Partition::kTest) > 0
                                          ? d.Subset(Partition::kTest)
                                          : d.pairs;
      std::vector<Tokens> inputs, predictions, gold;
      int correct = 0;
      std::string lines;
      for (const CorpusPair &p : pairs) {
        std::vector<nn::Hypothesis> beam =
            nn::DecodeBeam(model, p.command, model.config().beam_width,
                           model.config().max_decode_len);
        Tokens predicted = !beam.empty() && beam[0].finished ? beam[0].tokens
                                                             : Tokens();
        inputs.push_back(p.command);
        gold.push_back(PrintLf(p.lf));
        if (!predicted.empty() && predicted == gold.back()) ++correct;
        lines += nlohmann::json{{"command", p.CommandText()},
                                {"gold", p.LfText()},
                                {"prediction", Join(predicted)}}
                     .dump() +
                 "\n";
        predictions.push_back(std::move(predicted));
      }
      double accuracy = pairs.empty() ? 0.0 : 100.0 * correct / pairs.size();
      ErrorReport report = BuildErrorReport(inputs, predictions, gold);
      fs::create_directories(out_dir);
      WriteFile((fs::path(out_dir) / "predictions.jsonl").string(), lines);
      std::string text = FormatErrorReport(report, inputs, predictions);
      WriteFile((fs::path(out_dir) / "error_report.txt").string(), text);
      WriteFile((fs::path(out_dir) / "error_report.json").string(),
                ErrorReportToJson(report, inputs, predictions).dump(2) + "\n");
      std::cout << "exact match " << FormatAccuracy(accuracy) << " (" << correct
                << "/" << pairs.size() << ")\n"
                << text;
    } else if (*matrix) {
      MatrixConfig config = LoadMatrixConfig(config_path);
      fs::create_directories(out_dir);
      MatrixOutcome outcome = RunMatrix(config, out_dir);
      std::cout << outcome.table.ToText();
      std::cerr << outcome.cells_run << " cells run, " << outcome.cells_reused
                << " reused, " << outcome.cells_failed << " failed\n";
      return outcome.cells_failed == 0 ? 0 : 1;
    } else if (*repl) {
      PredicateRegistry registry = LoadRegistry(predicates_path);
      nn::Seq2SeqModel model = nn::LoadCheckpoint(model_path);
      SynchronousGrammar grammar =
          SynchronousGrammar::Load(grammar_path, registry);
      RunRepl(model, Ontology::Load(ontology_path), grammar, std::cin,
              std::cout);
    } else if (*anonymize) {
      Ontology ontology = Ontology::Load(ontology_path);
      auto run = [&](const std::string &text) {
        AnonymizedCommand a = Anonymize(TokenizeCommand(text), ontology);
        std::cout << Join(a.tokens) << "\n";
        for (const Replacement &r : a.replacements) {
          std::cout << "  " << r.position << "  <" << r.class_name << ">  "
                    << Join(r.original_span) << "\n";
        }
      };
      if (!words.empty()) {
        run(Join(words));
      } else {
        std::string line;
        while (std::getline(std::cin, line))
          if (!Trim(line).empty()) run(line);
      }
    } else if (*judge) {
      std::string text;
      if (judge_input == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
      } else {
        text = ReadFile(judge_input);
      }
      int n = 0, accepted = 0;
      double lev_sum = 0, jac_sum = 0;
      for (const std::string &line : SplitLines(text)) {
        if (Trim(line).empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos) {
          throw Error("line " + std::to_string(n + 1) + ": expected a tab");
        }
        ParaphraseJudgment j = JudgeParaphrase(line.substr(0, tab),
                                               line.substr(tab + 1), thresholds);
        ++n;
        lev_sum += j.levenshtein;
        jac_sum += j.jaccard_distance;
        if (j.verdict == ParaphraseVerdict::kAcceptable) ++accepted;
        std::cout << VerdictName(j.verdict) << "\t" << j.levenshtein << "\t"
                  << Fixed(j.jaccard_distance, 3) << "\n";
      }
      if (n > 0) {
        std::cout << "pairs " << n << ", acceptable " << accepted
                  << ", mean levenshtein " << Fixed(lev_sum / n, 1)
                  << ", mean jaccard " << Fixed(jac_sum / n, 2) << "\n";
      }
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
