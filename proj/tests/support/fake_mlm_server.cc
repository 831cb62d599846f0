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

#include <unistd.h>

#include <string>

#include "support/fake_mlm_server.h"

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "normal";
  neradapt::testing::ServeFake(STDIN_FILENO, STDOUT_FILENO,
                               neradapt::testing::ParseFakeMode(mode));
  return 0;
}
