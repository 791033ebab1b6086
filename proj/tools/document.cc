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

#include "document.h"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace stochrobust::cli {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& pointer, const std::string& what) {
  throw DocumentError(pointer.empty() ? "/" : pointer, what);
}

std::string LineColumn(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

const json& Field(const json& object, const char* key, const std::string& at) {
  auto it = object.find(key);
  if (it == object.end()) Fail(at, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string String(const json& j, const std::string& at) {
  if (!j.is_string()) Fail(at, "expected a string");
  return j.get<std::string>();
}

double Number(const json& j, const std::string& at) {
  if (!j.is_number()) Fail(at, "expected a number");
  return j.get<double>();
}

std::vector<std::string> StringList(const json& j, const std::string& at) {
  if (!j.is_array()) Fail(at, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(String(j[i], at + "/" + std::to_string(i)));
  }
  return out;
}

// Index of a state name, or a schema error.
int StateAt(const GameStructure& g, const std::string& name,
            const std::string& at) {
  int s = g.StateIndex(name);
  if (s < 0) Fail(at, "unknown state \"" + name + "\"");
  return s;
}

std::vector<double> StateMap(const GameStructure& g, const json& j,
                             const std::string& at) {
  if (!j.is_object()) Fail(at, "expected an object keyed by state");
  std::vector<double> out(g.num_states(), 0.0);
  std::vector<bool> seen(g.num_states(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    int s = StateAt(g, it.key(), at + "/" + it.key());
    out[s] = Number(it.value(), at + "/" + it.key());
    seen[s] = true;
  }
  for (int s = 0; s < g.num_states(); ++s) {
    if (!seen[s]) Fail(at, "no entry for state \"" + g.states[s] + "\"");
  }
  return out;
}

std::vector<std::vector<int>> MoveSets(const GameStructure& g, const json& j,
                                       const std::string& at) {
  if (!j.is_object()) Fail(at, "expected an object keyed by state");
  std::vector<std::vector<int>> out(g.num_states());
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string here = at + "/" + it.key();
    int s = StateAt(g, it.key(), here);
    for (const auto& name : StringList(it.value(), here)) {
      int m = g.MoveIndex(name);
      if (m < 0) Fail(here, "unknown move \"" + name + "\"");
      out[s].push_back(m);
    }
  }
  return out;
}

bool CompactChain(const GameStructure& g) {
  if (g.moves.size() != 1 || g.moves[0] != kNoMove) return false;
  for (int s = 0; s < g.num_states(); ++s) {
    if (g.gamma1[s] != std::vector<int>{0} || g.gamma2[s] != std::vector<int>{0}) {
      return false;
    }
  }
  return true;
}

}  // namespace

GameDocument ParseDocument(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    auto colon = what.find("error");
    throw DocumentError(LineColumn(text, e.byte == 0 ? 0 : e.byte - 1),
                        "syntax error" + (colon == std::string::npos
                                              ? std::string()
                                              : ": " + what.substr(colon)));
  }
  if (!root.is_object()) Fail("/", "document must be an object");
  static const std::set<std::string> kKnown{
      "kind", "states", "moves", "gamma1", "gamma2",
      "delta", "priority", "discount", "reward"};
  for (auto it = root.begin(); it != root.end(); ++it) {
    if (kKnown.count(it.key()) == 0) {
      Fail("/" + it.key(), "unknown field \"" + it.key() + "\"");
    }
  }

  GameDocument doc;
  const std::string kind_name = String(Field(root, "kind", "/"), "/kind");
  auto kind = ParseKind(kind_name);
  if (!kind) Fail("/kind", "unknown kind \"" + kind_name + "\"");
  doc.kind = *kind;
  GameStructure& g = doc.game;
  g.states = StringList(Field(root, "states", "/"), "/states");
  const int n = g.num_states();
  std::set<std::string> distinct(g.states.begin(), g.states.end());
  if (distinct.size() != g.states.size()) Fail("/states", "duplicate state");

  const bool compact = doc.kind == StructureKind::kMarkovChain &&
                       !root.contains("moves") && !root.contains("gamma1") &&
                       !root.contains("gamma2");
  if (compact) {
    g.moves = {std::string(kNoMove)};
    g.gamma1.assign(n, {0});
    g.gamma2.assign(n, {0});
  } else {
    g.moves = StringList(Field(root, "moves", "/"), "/moves");
    std::set<std::string> moves(g.moves.begin(), g.moves.end());
    if (moves.size() != g.moves.size()) Fail("/moves", "duplicate move");
    g.gamma1 = MoveSets(g, Field(root, "gamma1", "/"), "/gamma1");
    g.gamma2 = MoveSets(g, Field(root, "gamma2", "/"), "/gamma2");
  }
  g.delta.resize(n);
  for (int s = 0; s < n; ++s) {
    g.delta[s].assign(g.gamma1[s].size() * g.gamma2[s].size(), Distribution());
  }

  const json& delta = Field(root, "delta", "/");
  if (!delta.is_array()) Fail("/delta", "expected an array of records");
  for (std::size_t r = 0; r < delta.size(); ++r) {
    const std::string at = "/delta/" + std::to_string(r);
    const json& rec = delta[r];
    if (!rec.is_object()) Fail(at, "expected a record");
    for (auto it = rec.begin(); it != rec.end(); ++it) {
      const std::string& key = it.key();
      if (key != "state" && key != "a1" && key != "a2" && key != "dist") {
        Fail(at + "/" + key, "unknown field \"" + key + "\"");
      }
    }
    int s = StateAt(g, String(Field(rec, "state", at), at + "/state"),
                    at + "/state");
    auto position = [&](const char* key, const std::vector<int>& gamma) {
      std::string name = rec.contains(key)
                             ? String(rec[key], at + "/" + key)
                             : std::string(kNoMove);
      int m = g.MoveIndex(name);
      auto pos = std::find(gamma.begin(), gamma.end(), m);
      if (m < 0 || pos == gamma.end()) {
        Fail(at + "/" + key, "move \"" + name + "\" is not available at \"" +
                                 g.states[s] + "\"");
      }
      return static_cast<int>(pos - gamma.begin());
    };
    int i = position("a1", g.gamma1[s]);
    int j = position("a2", g.gamma2[s]);
    Distribution& d = g.mutable_transition(s, i, j);
    if (!d.empty()) Fail(at, "duplicate record for this state and move pair");
    const json& dist = Field(rec, "dist", at);
    if (!dist.is_object()) Fail(at + "/dist", "expected an object keyed by state");
    d.assign(n, 0.0);
    for (auto it = dist.begin(); it != dist.end(); ++it) {
      const std::string here = at + "/dist/" + it.key();
      d[StateAt(g, it.key(), here)] = Number(it.value(), here);
    }
  }

  if (root.contains("priority")) {
    const json& pj = root["priority"];
    if (!pj.is_object()) Fail("/priority", "expected an object keyed by state");
    ParityObjective parity;
    parity.priority.assign(n, 0);
    std::vector<bool> seen(n, false);
    for (auto it = pj.begin(); it != pj.end(); ++it) {
      const std::string here = "/priority/" + it.key();
      int s = StateAt(g, it.key(), here);
      if (!it.value().is_number_integer() || it.value().get<long long>() < 0) {
        Fail(here, "expected a nonnegative integer");
      }
      parity.priority[s] = it.value().get<int>();
      seen[s] = true;
    }
    for (int s = 0; s < n; ++s) {
      if (!seen[s]) Fail("/priority", "no entry for state \"" + g.states[s] + "\"");
    }
    doc.parity = parity;
  }
  if (root.contains("discount") != root.contains("reward")) {
    Fail(root.contains("discount") ? "/discount" : "/reward",
         "discount and reward must be given together");
  }
  if (root.contains("discount")) {
    DiscountSpec spec;
    spec.lambda = StateMap(g, root["discount"], "/discount");
    spec.reward = StateMap(g, root["reward"], "/reward");
    doc.discount = spec;
  }
  return doc;
}

std::string WriteDocument(const GameDocument& doc) {
  const GameStructure& g = doc.game;
  const bool compact =
      doc.kind == StructureKind::kMarkovChain && CompactChain(g);
  json root = json::object();
  root["kind"] = std::string(KindName(doc.kind));
  root["states"] = g.states;
  if (!compact) {
    root["moves"] = g.moves;
    json g1 = json::object(), g2 = json::object();
    for (int s = 0; s < g.num_states(); ++s) {
      json a = json::array(), b = json::array();
      for (int m : g.gamma1[s]) a.push_back(g.moves[m]);
      for (int m : g.gamma2[s]) b.push_back(g.moves[m]);
      g1[g.states[s]] = a;
      g2[g.states[s]] = b;
    }
    root["gamma1"] = g1;
    root["gamma2"] = g2;
  }
  json delta = json::array();
  for (int s = 0; s < g.num_states(); ++s) {
    for (std::size_t i = 0; i < g.gamma1[s].size(); ++i) {
      for (std::size_t j = 0; j < g.gamma2[s].size(); ++j) {
        const Distribution& d = g.transition(s, static_cast<int>(i),
                                             static_cast<int>(j));
        if (d.empty()) continue;
        json rec = json::object();
        rec["state"] = g.states[s];
        if (!compact) {
          rec["a1"] = g.moves[g.gamma1[s][i]];
          rec["a2"] = g.moves[g.gamma2[s][j]];
        }
        json dist = json::object();
        for (int t = 0; t < g.num_states(); ++t) {
          if (d[t] != 0.0) dist[g.states[t]] = d[t];
        }
        rec["dist"] = dist;
        delta.push_back(rec);
      }
    }
  }
  root["delta"] = delta;
  if (doc.parity) {
    json p = json::object();
    for (int s = 0; s < g.num_states(); ++s) {
      p[g.states[s]] = doc.parity->priority[s];
    }
    root["priority"] = p;
  }
  if (doc.discount) {
    json l = json::object(), r = json::object();
    for (int s = 0; s < g.num_states(); ++s) {
      l[g.states[s]] = doc.discount->lambda[s];
      r[g.states[s]] = doc.discount->reward[s];
    }
    root["discount"] = l;
    root["reward"] = r;
  }
  return root.dump(2) + "\n";
}

GameDocument MakeDocument(const GameStructure& game,
                          std::optional<ParityObjective> parity,
                          std::optional<DiscountSpec> discount) {
  GameDocument doc;
  doc.game = game;
  doc.kind = ValidateStructure(game).empty() ? Classify(game)
                                             : StructureKind::kConcurrent;
  doc.parity = std::move(parity);
  doc.discount = std::move(discount);
  return doc;
}

std::vector<Diagnostic> ValidateDocument(const GameDocument& doc) {
  std::vector<Diagnostic> out = ValidateStructure(doc.game);
  if (out.empty() && !SatisfiesKind(doc.game, doc.kind)) {
    out.push_back({"kind", "", "",
                   "structure is not " + std::string(KindName(doc.kind))});
  }
  return out;
}

}  // namespace stochrobust::cli
