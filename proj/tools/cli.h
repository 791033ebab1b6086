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

#ifndef STOCHROBUST_TOOLS_CLI_H_
#define STOCHROBUST_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace stochrobust::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParseError = 2;

// Runs one command line (without the program name). Reports go to `out`;
// diagnostics for humans go to `err`. Output files named by -o are written
// directly. The report bytes depend only on the arguments and file contents.
int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

// 64-bit FNV-1a of the bytes as 16 lowercase hex digits.
std::string Fnv1aHex(std::string_view bytes);

// Shortest decimal that reads back to the same double; "inf", "-inf" and
// "nan" for non-finite values. Independent of the global locale.
std::string FormatDouble(double x);

}  // namespace stochrobust::cli

#endif  // STOCHROBUST_TOOLS_CLI_H_
