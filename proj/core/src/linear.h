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

#ifndef STOCHROBUST_SRC_LINEAR_H_
#define STOCHROBUST_SRC_LINEAR_H_

#include <vector>

namespace stochrobust::internal {

using Rows = std::vector<std::vector<double>>;

// Dense LU with partial pivoting; solves A X = B for every column of B.
// Throws InternalError when A is numerically singular.
Rows SolveColumns(const Rows& a, const Rows& b_columns);
std::vector<double> Solve(const Rows& a, const std::vector<double>& b);

}  // namespace stochrobust::internal

#endif  // STOCHROBUST_SRC_LINEAR_H_
