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

#ifndef CMDPARSE_STRINGS_H_
#define CMDPARSE_STRINGS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cmdparse {

using Tokens = std::vector<std::string>;

std::vector<std::string> SplitLines(std::string_view text);
std::vector<std::string> Split(std::string_view text, char sep);
Tokens SplitWhitespace(std::string_view text);
std::string Join(const Tokens &tokens, std::string_view sep = " ");
std::string Trim(std::string_view text);
std::string ToLower(std::string_view text);

// Lowercases, splits on whitespace, and strips punctuation from token edges.
// Tokens that become empty are dropped. Class tokens such as "<object>" are
// kept intact.
Tokens TokenizeCommand(std::string_view text);

std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, std::string_view content);

// 64-bit FNV-1a, seeded by mixing the seed bytes in first. Stable across
// platforms; used wherever assignment must not depend on std::hash.
uint64_t StableHash(std::string_view text, uint64_t seed = 0);

}  // namespace cmdparse

#endif  // CMDPARSE_STRINGS_H_
