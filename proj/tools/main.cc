// Copyright 2026 The stochrobust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto start = std::chrono::steady_clock::now();
  int status = stochrobust::cli::Dispatch(args, std::cout, std::cerr);
  std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  // Kept off stdout so reports stay byte-identical across runs.
  std::cerr << "wall time: " << elapsed.count() << " s\n";
  return status;
}
