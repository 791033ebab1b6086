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

#ifndef STOCHROBUST_TOOLS_DOCUMENT_H_
#define STOCHROBUST_TOOLS_DOCUMENT_H_

#include <optional>
#include <string>
#include <string_view>

#include "stochrobust/errors.h"
#include "stochrobust/game_core.h"

namespace stochrobust::cli {

// Malformed document text or schema; `where` is "line L, column C" for
// syntax errors and a JSON pointer for schema errors.
class DocumentError : public Error {
 public:
  DocumentError(std::string where, const std::string& what)
      : Error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct GameDocument {
  StructureKind kind = StructureKind::kMarkovChain;  // as declared
  GameStructure game;
  std::optional<ParityObjective> parity;
  std::optional<DiscountSpec> discount;
};

// Throws DocumentError. Structural problems (bad sums, missing transitions,
// a declared kind the structure does not meet) are left for validation.
GameDocument ParseDocument(std::string_view text);

// Canonical form: sorted keys, shortest round-trip floats, zero entries of
// distributions omitted. Chains in the FromChain form use the compact
// layout without move fields.
std::string WriteDocument(const GameDocument& doc);

// Declared kind set from Classify.
GameDocument MakeDocument(const GameStructure& game,
                          std::optional<ParityObjective> parity = std::nullopt,
                          std::optional<DiscountSpec> discount = std::nullopt);

// Diagnostics for the structure plus a "kind" diagnostic when the
// structure does not meet the declared kind.
std::vector<Diagnostic> ValidateDocument(const GameDocument& doc);

}  // namespace stochrobust::cli

#endif  // STOCHROBUST_TOOLS_DOCUMENT_H_
