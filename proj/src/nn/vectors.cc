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

#include "cmdparse/nn/vectors.h"

#include <cerrno>
#include <cstdlib>
#include <vector>

#include "cmdparse/errors.h"

namespace cmdparse::nn {
namespace {

bool ParseDouble(const std::string &text, double &out) {
  if (text.empty()) return false;
  errno = 0;
  char *end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return errno == 0 && end == text.c_str() + text.size();
}

}  // namespace

Matrix ParsePretrainedVectors(const std::string &text,
                              const Vocabulary &vocab) {
  int dim = -1;
  std::vector<std::pair<int, std::vector<double>>> rows;
  std::vector<std::string> lines = SplitLines(text);
  for (size_t n = 0; n < lines.size(); ++n) {
    const std::string line_no = std::to_string(n + 1);
    Tokens fields = SplitWhitespace(lines[n]);
    if (fields.empty()) continue;
    if (fields.size() < 2) {
      throw ModelError(ModelError::Kind::kMalformedLine,
                       "line " + line_no + ": expected a token and values");
    }
    std::vector<double> values;
    for (size_t k = 1; k < fields.size(); ++k) {
      double v;
      if (!ParseDouble(fields[k], v)) {
        throw ModelError(ModelError::Kind::kMalformedLine,
                         "line " + line_no + ": bad number '" + fields[k] +
                             "'");
      }
      values.push_back(v);
    }
    if (dim < 0) dim = static_cast<int>(values.size());
    if (static_cast<int>(values.size()) != dim) {
      throw ModelError(ModelError::Kind::kInconsistentDimension,
                       "line " + line_no + ": expected " +
                           std::to_string(dim) + " values, found " +
                           std::to_string(values.size()));
    }
    if (vocab.Contains(fields[0])) {
      rows.emplace_back(vocab.Id(fields[0]), std::move(values));
    }
  }
  Matrix out = Matrix::Zero(vocab.size(), std::max(dim, 0));
  for (const auto &[id, values] : rows) {
    for (int k = 0; k < dim; ++k) out(id, k) = values[k];
  }
  return out;
}

Matrix LoadPretrainedVectors(const std::string &path,
                             const Vocabulary &vocab) {
  return ParsePretrainedVectors(ReadFile(path), vocab);
}

}  // namespace cmdparse::nn
