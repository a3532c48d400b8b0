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

#include "cmdparse/log.h"

#include <iostream>
#include <mutex>
#include <string>

namespace cmdparse {
namespace {

std::mutex sink_mu;

WarningSink &Sink() {
  static WarningSink sink = [](std::string_view message) {
    std::clog << "warning: " << message << '\n';
  };
  return sink;
}

}  // namespace

void LogWarning(std::string_view message) {
  std::lock_guard<std::mutex> lock(sink_mu);
  if (Sink()) Sink()(message);
}

WarningSink SetWarningSink(WarningSink sink) {
  std::lock_guard<std::mutex> lock(sink_mu);
  WarningSink previous = std::move(Sink());
  Sink() = std::move(sink);
  return previous;
}

}  // namespace cmdparse
