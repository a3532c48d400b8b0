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

#include "cmdparse/harness/matrix.h"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>

#include "cmdparse/errors.h"
#include "cmdparse/log.h"

namespace cmdparse {
namespace fs = std::filesystem;

namespace {

std::string Resolve(const nlohmann::json &json, const char *key,
                    const std::string &base_dir) {
  if (!json.contains(key)) return "";
  fs::path p = json[key].get<std::string>();
  if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
  return p.lexically_normal().string();
}

std::string Hex(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::string CellFileName(const std::string &model, const Regime &regime,
                         SplitKind split) {
  std::string name = model + "__" + RegimeName(regime) + "__" +
                     SplitKindName(split);
  for (char &c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
      c = '_';
  }
  return name + ".json";
}

}  // namespace

MatrixConfig MatrixConfigFromJson(const nlohmann::json &json,
                                  const std::string &base_dir) {
  try {
    MatrixConfig c;
    c.grammar_path = Resolve(json, "grammar", base_dir);
    c.paraphrases_path = Resolve(json, "paraphrases", base_dir);
    c.predicates_path = Resolve(json, "predicates", base_dir);
    c.ontology_path = Resolve(json, "ontology", base_dir);
    if (c.grammar_path.empty() || c.paraphrases_path.empty()) {
      throw Error("matrix config needs 'grammar' and 'paraphrases'");
    }
    c.split_seed = json.value("split_seed", c.split_seed);
    if (json.contains("ratios")) {
      std::vector<double> r = json["ratios"].get<std::vector<double>>();
      if (r.size() != 3) throw Error("'ratios' needs three values");
      c.ratios = {r[0], r[1], r[2]};
    }
    if (json.contains("seeds"))
      c.seeds = json["seeds"].get<std::vector<uint64_t>>();
    if (c.seeds.empty()) throw Error("'seeds' is empty");
    if (json.contains("regimes")) {
      c.regimes.clear();
      for (const auto &r : json["regimes"])
        c.regimes.push_back(ParseRegime(r.get<std::string>()));
    }
    if (json.contains("splits")) {
      c.splits.clear();
      for (const auto &s : json["splits"])
        c.splits.push_back(ParseSplitKind(s.get<std::string>()));
    }
    for (const auto &m : json.at("models"))
      c.models.push_back(VariantFromJson(m, base_dir));
    return c;
  } catch (const nlohmann::json::exception &e) {
    throw Error(std::string("bad matrix config: ") + e.what());
  }
}

MatrixConfig LoadMatrixConfig(const std::string &path) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception &e) {
    throw Error("bad matrix config " + path + ": " + e.what());
  }
  return MatrixConfigFromJson(json, fs::path(path).parent_path().string());
}

std::string ResultsTable::ToText() const {
  std::vector<std::string> header = {"model"};
  for (const TableColumn &c : columns)
    header.push_back(RegimeName(c.regime) + " " +
                     (c.split == SplitKind::kCommand ? "C" : "L"));
  std::vector<std::vector<std::string>> body;
  for (size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::string> line = {rows[r]};
    for (const auto &cell : cells[r])
      line.push_back(cell ? FormatAccuracy(*cell) : "ERR");
    body.push_back(line);
  }
  std::vector<size_t> width(header.size());
  for (size_t k = 0; k < header.size(); ++k) {
    width[k] = header[k].size();
    for (const auto &line : body) width[k] = std::max(width[k], line[k].size());
  }
  auto render = [&](const std::vector<std::string> &line) {
    std::string out;
    for (size_t k = 0; k < line.size(); ++k) {
      std::string pad(width[k] - line[k].size(), ' ');
      out += k == 0 ? line[k] + pad : "  " + pad + line[k];
    }
    return out + "\n";
  };
  std::string out = render(header);
  for (const auto &line : body) out += render(line);
  return out;
}

nlohmann::json ResultsTable::ToJson() const {
  nlohmann::json cols = nlohmann::json::array();
  for (const TableColumn &c : columns)
    cols.push_back({{"regime", RegimeName(c.regime)},
                    {"split", SplitKindName(c.split)}});
  nlohmann::json out_rows = nlohmann::json::array();
  for (size_t r = 0; r < rows.size(); ++r) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto &cell : cells[r]) {
      if (cell) {
        values.push_back(FormatAccuracy(*cell));
      } else {
        values.push_back(nullptr);
      }
    }
    out_rows.push_back({{"model", rows[r]}, {"accuracy", values}});
  }
  return {{"columns", cols}, {"rows", out_rows}};
}

MatrixOutcome RunMatrix(const MatrixConfig &config,
                        const std::string &out_dir) {
  const PredicateRegistry registry =
      config.predicates_path.empty()
          ? PredicateRegistry::Bundled()
          : PredicateRegistry::Load(config.predicates_path);
  const std::string grammar_text = ReadFile(config.grammar_path);
  const std::string para_text = ReadFile(config.paraphrases_path);
  SynchronousGrammar grammar = SynchronousGrammar::Parse(grammar_text, registry);
  Dataset generated;
  generated.pairs = EnumerateAnonymized(grammar);
  generated.origin = Origin::kGenerated;
  Dataset paraphrased = ParseJsonl(para_text, registry, Origin::kParaphrased);
  std::string ontology_text;
  if (!config.ontology_path.empty()) {
    ontology_text = ReadFile(config.ontology_path);
    paraphrased =
        AnonymizeCommands(paraphrased, Ontology::Parse(ontology_text));
  }
  SplitCorpora corpora = PrepareSplits(generated, paraphrased, config.ratios,
                                       config.split_seed);

  const uint64_t data_hash =
      StableHash(grammar_text + "\n--\n" + para_text + "\n--\n" + ontology_text +
                 registry.Serialize());
  fs::path cell_dir;
  if (!out_dir.empty()) {
    cell_dir = fs::path(out_dir) / "cells";
    fs::create_directories(cell_dir);
  }

  MatrixOutcome outcome;
  ResultsTable &table = outcome.table;
  for (SplitKind split : config.splits) {
    for (const Regime &regime : config.regimes) {
      table.columns.push_back({regime, split});
    }
  }
  nlohmann::json manifest_cells = nlohmann::json::array();
  for (const ModelVariant &variant : config.models) {
    table.rows.push_back(variant.name);
    std::vector<std::optional<double>> row;
    for (const TableColumn &column : table.columns) {
      nlohmann::json spec = {
          {"model", VariantToJson(variant)},
          {"regime", RegimeName(column.regime)},
          {"split", SplitKindName(column.split)},
          {"split_seed", config.split_seed},
          {"ratios",
           {config.ratios.train, config.ratios.validation, config.ratios.test}},
          {"seeds", config.seeds},
          {"data_hash", Hex(data_hash)},
      };
      const std::string cell_hash = Hex(StableHash(spec.dump()));
      const fs::path cell_path =
          cell_dir.empty() ? fs::path()
                           : cell_dir / CellFileName(variant.name,
                                                     column.regime,
                                                     column.split);
      nlohmann::json record;
      bool reused = false;
      if (!cell_path.empty() && fs::exists(cell_path)) {
        try {
          nlohmann::json old = nlohmann::json::parse(ReadFile(cell_path.string()));
          if (old.value("cell_hash", "") == cell_hash &&
              old.value("status", "") == "ok") {
            record = old;
            reused = true;
          }
        } catch (const nlohmann::json::exception &) {
          LogWarning("ignoring unreadable cell file " + cell_path.string());
        }
      }
      if (!reused) {
        record = {{"cell_hash", cell_hash}, {"spec", spec}};
        const auto start = std::chrono::steady_clock::now();
        try {
          nlohmann::json runs = nlohmann::json::array();
          double sum = 0;
          for (uint64_t seed : config.seeds) {
            ExperimentSpec experiment{column.regime, column.split, variant,
                                      seed};
            ExperimentResult r = RunExperiment(experiment, corpora, grammar);
            sum += r.accuracy;
            nlohmann::json run = {{"seed", seed},
                                  {"accuracy", r.accuracy},
                                  {"correct", r.correct},
                                  {"total", r.total}};
            if (r.train_report) {
              run["best_epoch"] = r.train_report->best_epoch;
              run["epochs"] = r.train_report->epochs.size();
            }
            runs.push_back(run);
          }
          record["status"] = "ok";
          record["runs"] = runs;
          record["accuracy"] = sum / static_cast<double>(config.seeds.size());
        } catch (const Error &e) {
          record["status"] = "failed";
          record["error"] = e.what();
          ++outcome.cells_failed;
        }
        record["wall_seconds"] = std::chrono::duration<double>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
        ++outcome.cells_run;
        if (!cell_path.empty()) WriteFile(cell_path.string(), record.dump(2) + "\n");
      } else {
        ++outcome.cells_reused;
      }
      if (record.value("status", "") == "ok") {
        row.push_back(record["accuracy"].get<double>());
      } else {
        row.push_back(std::nullopt);
      }
      nlohmann::json entry = {{"model", variant.name},
                              {"regime", RegimeName(column.regime)},
                              {"split", SplitKindName(column.split)},
                              {"cell_hash", cell_hash},
                              {"status", record.value("status", "")},
                              {"seeds", config.seeds},
                              {"wall_seconds", record["wall_seconds"]},
                              {"reused", reused}};
      if (record.contains("error")) entry["error"] = record["error"];
      manifest_cells.push_back(entry);
    }
    table.cells.push_back(row);
  }
  outcome.manifest = {{"split_seed", config.split_seed},
                      {"data_hash", Hex(data_hash)},
                      {"generated_pairs", generated.pairs.size()},
                      {"paraphrase_pairs", paraphrased.pairs.size()},
                      {"cells", manifest_cells}};
  if (!out_dir.empty()) {
    WriteFile((fs::path(out_dir) / "results.txt").string(), table.ToText());
    WriteFile((fs::path(out_dir) / "results.json").string(),
              table.ToJson().dump(2) + "\n");
    WriteFile((fs::path(out_dir) / "manifest.json").string(),
              outcome.manifest.dump(2) + "\n");
  }
  return outcome;
}

}  // namespace cmdparse
