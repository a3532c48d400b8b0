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

#ifndef CMDPARSE_HARNESS_ERROR_REPORT_H_
#define CMDPARSE_HARNESS_ERROR_REPORT_H_

#include <string>
#include <vector>

#include "cmdparse/strings.h"
#include "json.hpp"

namespace cmdparse {

// Distinct inputs that all received the same wrong prediction.
struct CollapseCluster {
  Tokens prediction;
  std::vector<int> inputs;
};

// Two inputs one word apart whose predictions differ, at least one wrong.
struct SensitivityPair {
  int first = 0;
  int second = 0;
};

struct ErrorReport {
  std::vector<CollapseCluster> clusters;
  std::vector<SensitivityPair> sensitive;

  bool empty() const { return clusters.empty() && sensitive.empty(); }
};

// Inputs, predictions and gold forms are aligned by index; an empty
// prediction means the model produced nothing. Throws Error when the lists
// differ in length.
ErrorReport BuildErrorReport(const std::vector<Tokens> &inputs,
                             const std::vector<Tokens> &predictions,
                             const std::vector<Tokens> &gold,
                             int min_cluster_size = 3);

std::string FormatErrorReport(const ErrorReport &report,
                              const std::vector<Tokens> &inputs,
                              const std::vector<Tokens> &predictions);
nlohmann::json ErrorReportToJson(const ErrorReport &report,
                                 const std::vector<Tokens> &inputs,
                                 const std::vector<Tokens> &predictions);

}  // namespace cmdparse

#endif  // CMDPARSE_HARNESS_ERROR_REPORT_H_
