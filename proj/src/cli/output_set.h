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

#ifndef NERADAPT_CLI_OUTPUT_SET_H_
#define NERADAPT_CLI_OUTPUT_SET_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace neradapt::cli {

// Stages every output of a command in a temporary sibling file and renames
// them into place together on Commit(). Anything uncommitted is removed on
// destruction, so a failing command leaves no partial outputs behind.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir);
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet();

  // Writes `content` to a temporary file for `name` (relative to the
  // directory). Throws IoError.
  void Stage(const std::string& name, std::string_view content);
  void Commit();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path PathOf(const std::string& name) const {
    return dir_ / name;
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged_;
};

}  // namespace neradapt::cli

#endif  // NERADAPT_CLI_OUTPUT_SET_H_
