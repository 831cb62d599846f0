// Copyright 2026 The neradapt Authors
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

#ifndef NERADAPT_LEVENSHTEIN_H_
#define NERADAPT_LEVENSHTEIN_H_

#include <cstddef>
#include <string_view>
#include <vector>

namespace neradapt {

// Splits UTF-8 text into code points. Bytes that do not start a well-formed
// sequence are kept as single units.
std::vector<char32_t> DecodeUtf8(std::string_view text);

// Minimum number of single code point insertions, deletions and
// substitutions turning `a` into `b`.
std::size_t Levenshtein(std::string_view a, std::string_view b);

}  // namespace neradapt

#endif  // NERADAPT_LEVENSHTEIN_H_
