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

#include "cli/output_set.h"

#include <unistd.h>

#include <fstream>
#include <system_error>

#include "neradapt/errors.h"

namespace neradapt::cli {

namespace fs = std::filesystem;

OutputSet::OutputSet(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + dir_.string() +
                  "': " + ec.message());
  }
}

OutputSet::~OutputSet() {
  for (const auto& [temp, final_path] : staged_) {
    std::error_code ec;
    fs::remove(temp, ec);
  }
}

void OutputSet::Stage(const std::string& name, std::string_view content) {
  const fs::path final_path = dir_ / name;
  fs::path temp = final_path;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + temp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("error writing '" + temp.string() + "'");
  }
  staged_.emplace_back(temp, final_path);
}

void OutputSet::Commit() {
  for (const auto& [temp, final_path] : staged_) {
    std::error_code ec;
    fs::rename(temp, final_path, ec);
    if (ec) {
      throw IoError("cannot move '" + temp.string() + "' to '" +
                    final_path.string() + "': " + ec.message());
    }
  }
  staged_.clear();
}

}  // namespace neradapt::cli
