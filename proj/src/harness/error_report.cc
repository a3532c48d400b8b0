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

#include "cmdparse/harness/error_report.h"

#include <map>
#include <set>

#include "cmdparse/errors.h"
#include "cmdparse/text_metrics.h"

namespace cmdparse {

ErrorReport BuildErrorReport(const std::vector<Tokens> &inputs,
                             const std::vector<Tokens> &predictions,
                             const std::vector<Tokens> &gold,
                             int min_cluster_size) {
  if (inputs.size() != predictions.size() || inputs.size() != gold.size()) {
    throw Error("error report inputs are not aligned");
  }
  const size_t n = inputs.size();
  auto wrong = [&](size_t i) {
    return predictions[i].empty() || predictions[i] != gold[i];
  };

  ErrorReport report;
  std::map<Tokens, std::vector<int>> by_prediction;
  std::vector<Tokens> order;
  for (size_t i = 0; i < n; ++i) {
    if (!wrong(i) || predictions[i].empty()) continue;
    auto [it, inserted] = by_prediction.try_emplace(predictions[i]);
    if (inserted) order.push_back(predictions[i]);
    it->second.push_back(static_cast<int>(i));
  }
  for (const Tokens &prediction : order) {
    std::vector<int> distinct;
    std::set<Tokens> seen;
    for (int i : by_prediction[prediction]) {
      if (seen.insert(inputs[i]).second) distinct.push_back(i);
    }
    if (static_cast<int>(distinct.size()) >= min_cluster_size) {
      report.clusters.push_back({prediction, distinct});
    }
  }

  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      if (predictions[a] == predictions[b]) continue;
      if (!wrong(a) && !wrong(b)) continue;
      if (EditDistance(inputs[a], inputs[b]) != 1) continue;
      report.sensitive.push_back({static_cast<int>(a), static_cast<int>(b)});
    }
  }
  return report;
}

namespace {

std::string PredictionText(const Tokens &prediction) {
  return prediction.empty() ? "(none)" : Join(prediction);
}

}  // namespace

std::string FormatErrorReport(const ErrorReport &report,
                              const std::vector<Tokens> &inputs,
                              const std::vector<Tokens> &predictions) {
  std::string out;
  out += "collapse clusters: " + std::to_string(report.clusters.size()) + "\n";
  for (const CollapseCluster &c : report.clusters) {
    out += "  " + PredictionText(c.prediction) + "\n";
    for (int i : c.inputs) out += "    x" + std::to_string(i) + "  " +
                                  Join(inputs[i]) + "\n";
  }
  out += "sensitive pairs: " + std::to_string(report.sensitive.size()) + "\n";
  for (const SensitivityPair &p : report.sensitive) {
    for (int i : {p.first, p.second}) {
      out += "  x" + std::to_string(i) + "  " + Join(inputs[i]) + "\n      -> " +
             PredictionText(predictions[i]) + "\n";
    }
  }
  return out;
}

nlohmann::json ErrorReportToJson(const ErrorReport &report,
                                 const std::vector<Tokens> &inputs,
                                 const std::vector<Tokens> &predictions) {
  nlohmann::json clusters = nlohmann::json::array();
  for (const CollapseCluster &c : report.clusters) {
    nlohmann::json members = nlohmann::json::array();
    for (int i : c.inputs) {
      members.push_back({{"index", i}, {"input", Join(inputs[i])}});
    }
    clusters.push_back(
        {{"prediction", Join(c.prediction)}, {"inputs", members}});
  }
  nlohmann::json pairs = nlohmann::json::array();
  for (const SensitivityPair &p : report.sensitive) {
    nlohmann::json pair = nlohmann::json::array();
    for (int i : {p.first, p.second}) {
      pair.push_back({{"index", i},
                      {"input", Join(inputs[i])},
                      {"prediction", Join(predictions[i])}});
    }
    pairs.push_back(pair);
  }
  return {{"collapse_clusters", clusters}, {"sensitive_pairs", pairs}};
}

}  // namespace cmdparse
