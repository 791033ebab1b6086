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

#ifndef STOCHROBUST_SRC_GRAPH_H_
#define STOCHROBUST_SRC_GRAPH_H_

#include <vector>

namespace stochrobust::internal {

using Adjacency = std::vector<std::vector<int>>;

// Tarjan's algorithm restricted to vertices with alive[v]; edges to dead
// vertices are ignored. Components come out in reverse topological order
// (sinks first) and each lists its vertices in ascending order.
std::vector<std::vector<int>> StronglyConnectedComponents(
    const Adjacency& adj, const std::vector<bool>& alive);

// Vertices that can reach a marked vertex along edges of `adj`.
std::vector<bool> BackwardReachable(const Adjacency& adj,
                                    const std::vector<bool>& marked);

}  // namespace stochrobust::internal

#endif  // STOCHROBUST_SRC_GRAPH_H_
