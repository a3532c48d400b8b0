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

#ifndef CMDPARSE_HARNESS_MATRIX_H_
#define CMDPARSE_HARNESS_MATRIX_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmdparse/harness/experiment.h"

namespace cmdparse {

// Declarative description of an evaluation matrix. File paths are resolved
// against the directory of the config file.
struct MatrixConfig {
  std::string grammar_path;
  std::string paraphrases_path;
  std::string predicates_path;  // empty: bundled registry
  std::string ontology_path;  // empty: paraphrases used as written
  uint64_t split_seed = 1;
  SplitRatios ratios;
  std::vector<uint64_t> seeds = {1};
  std::vector<Regime> regimes = AllRegimes();
  std::vector<SplitKind> splits = {SplitKind::kCommand, SplitKind::kLogical};
  std::vector<ModelVariant> models;
};

MatrixConfig MatrixConfigFromJson(const nlohmann::json &json,
                                  const std::string &base_dir);
MatrixConfig LoadMatrixConfig(const std::string &path);

struct TableColumn {
  Regime regime;
  SplitKind split = SplitKind::kCommand;
};

// Rows per model variant, columns per (regime, split).
struct ResultsTable {
  std::vector<std::string> rows;
  std::vector<TableColumn> columns;
  // [row][column]; nullopt marks a failed or missing cell.
  std::vector<std::vector<std::optional<double>>> cells;

  std::string ToText() const;
  nlohmann::json ToJson() const;
};

struct MatrixOutcome {
  ResultsTable table;
  nlohmann::json manifest;
  int cells_run = 0;
  int cells_reused = 0;
  int cells_failed = 0;
};

// Runs every (model, regime, split) cell, averaging over the seeds. With a
// non-empty out_dir each finished cell is written to out_dir/cells and reused
// by later runs whose cell hash matches; the table (text and JSON) and the
// manifest are written there too. A failing cell is recorded and the rest
// proceed.
MatrixOutcome RunMatrix(const MatrixConfig &config, const std::string &out_dir);

}  // namespace cmdparse

#endif  // CMDPARSE_HARNESS_MATRIX_H_
