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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "document.h"
#include "json.hpp"
#include "stochrobust/benchlab.h"
#include "stochrobust/decision_solver.h"
#include "stochrobust/errors.h"
#include "stochrobust/game_solver.h"
#include "stochrobust/robustness.h"

namespace stochrobust::cli {
namespace {

using nlohmann::json;

// Bad flags or unreadable input: exit 2, like a document parse error.
class UsageError : public Error {
 public:
  using Error::Error;
};

json Num(double x) {
  if (std::isfinite(x)) return x;
  return FormatDouble(x);
}

json NumList(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(Num(x));
  return out;
}

json PerState(const GameStructure& g, const std::vector<double>& xs) {
  json out = json::object();
  for (int s = 0; s < g.num_states(); ++s) out[g.states[s]] = Num(xs[s]);
  return out;
}

json StrategyJson(const GameStructure& g, const MemorylessStrategy& strategy) {
  json out = json::object();
  for (int s = 0; s < g.num_states(); ++s) {
    json moves = json::array();
    for (const MoveWeight& w : strategy.assignment[s]) {
      moves.push_back({{"move", g.moves[w.move]}, {"p", Num(w.probability)}});
    }
    out[g.states[s]] = moves;
  }
  return out;
}

json DistancesJson(const DistanceReport& d) {
  return {{"absolute", Num(d.absolute)},
          {"ratio", Num(d.ratio)},
          {"structurally_equivalent", d.structurally_equivalent},
          {"eta", Num(d.eta)},
          {"eta_joint", Num(d.eta_joint)}};
}

struct LoadedInput {
  std::string path;
  std::string digest;
  GameDocument doc;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << bytes) || !out.flush()) {
    throw UsageError("cannot write " + path);
  }
}

LoadedInput Load(const std::string& path) {
  std::string bytes = ReadFile(path);
  LoadedInput in{path, Fnv1aHex(bytes), {}};
  try {
    in.doc = ParseDocument(bytes);
  } catch (const DocumentError& e) {
    throw DocumentError(path + ": " + e.where(),
                        std::string(e.what()).substr(e.where().size() + 2));
  }
  return in;
}

// Structural and objective diagnostics; empty when the document is usable.
std::vector<Diagnostic> Check(const GameDocument& doc) {
  std::vector<Diagnostic> out = ValidateDocument(doc);
  if (!out.empty()) return out;
  auto guard = [&](const char* rule, auto&& require) {
    try {
      require();
    } catch (const PreconditionError& e) {
      out.push_back({rule, "", "", e.what()});
    }
  };
  if (doc.parity) guard("priority", [&] { RequireParity(doc.game, *doc.parity); });
  if (doc.discount) {
    guard("discount", [&] { RequireDiscount(doc.game, *doc.discount); });
  }
  return out;
}

json DiagnosticsJson(const std::vector<Diagnostic>& diagnostics) {
  json out = json::array();
  for (const Diagnostic& d : diagnostics) {
    out.push_back({{"rule", d.rule},
                   {"state", d.state},
                   {"move", d.move},
                   {"detail", d.detail}});
  }
  return out;
}

void RequireUsable(const LoadedInput& in) {
  auto diagnostics = Check(in.doc);
  if (!diagnostics.empty()) {
    const Diagnostic& d = diagnostics.front();
    std::string where = d.state.empty() ? "" : " at " + d.state;
    throw PreconditionError(in.path + ": invalid document (" + d.rule + where +
                            "): " + d.detail);
  }
}

Objective PickObjective(const GameDocument& doc, const std::string& name) {
  if (name == "parity") {
    if (!doc.parity) throw UsageError("document has no priority map");
    return *doc.parity;
  }
  if (name == "multidiscounted") {
    if (!doc.discount) throw UsageError("document has no discount map");
    return *doc.discount;
  }
  if (name.empty()) {
    if (doc.parity) return *doc.parity;
    if (doc.discount) return *doc.discount;
    throw UsageError("document carries no objective");
  }
  throw UsageError("unknown objective \"" + name + "\"");
}

int ParseInt(const std::string& text, const char* what) {
  int value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw UsageError(std::string("bad ") + what + " \"" + text + "\"");
  }
  return value;
}

// ORDER,KMIN,KMAX with ORDER one of asc, desc or colon-separated state names.
LimitSchedule ParseSchedule(const std::string& text, const GameStructure& g,
                            const ParityObjective& parity) {
  LimitSchedule schedule = LimitSchedule::Default(parity);
  if (text.empty()) return schedule;
  std::vector<std::string> parts;
  std::stringstream stream(text);
  for (std::string part; std::getline(stream, part, ',');) parts.push_back(part);
  if (parts.size() != 3) throw UsageError("--schedule wants ORDER,KMIN,KMAX");
  if (parts[0] == "desc") {
    std::stable_sort(schedule.order.begin(), schedule.order.end(),
                     [&](int a, int b) {
                       return parity.priority[a] > parity.priority[b];
                     });
  } else if (parts[0] != "asc") {
    schedule.order.clear();
    std::stringstream names(parts[0]);
    for (std::string name; std::getline(names, name, ':');) {
      int s = g.StateIndex(name);
      if (s < 0) throw UsageError("--schedule names unknown state " + name);
      schedule.order.push_back(s);
    }
  }
  schedule.k_min = ParseInt(parts[1], "KMIN");
  schedule.k_max = ParseInt(parts[2], "KMAX");
  return schedule;
}

json InputsJson(const std::vector<LoadedInput>& inputs) {
  json out = json::array();
  for (const auto& in : inputs) {
    out.push_back({{"path", in.path}, {"fnv1a64", in.digest}});
  }
  return out;
}

struct Options {
  std::vector<std::string> files;
  std::string objective;
  std::string method;
  std::string schedule;
  std::string output;
  std::string member;
  std::string kind = "markov-chain";
  double tol = 1e-10;
  double eps = 0.0;
  double ratio = 0.0;
  double absolute = 0.0;
  double eta = 0.0;
  int n = 0;
  int states = 4;
  int moves = 2;
  int samples = 1;
  double eta_floor = 0.05;
  std::uint64_t seed = 0;
  std::vector<double> eps_list;
  bool beta = false;
  bool strategy = false;
};

class Runner {
 public:
  Runner(const std::vector<std::string>& args, const Options& opt,
         std::ostream& out)
      : opt_(opt), out_(out) {
    report_["command"] = args;
  }

  int Validate() {
    LoadedInput in = Load(opt_.files.at(0));
    auto diagnostics = Check(in.doc);
    report_["inputs"] = InputsJson({in});
    report_["declared_kind"] = std::string(KindName(in.doc.kind));
    if (ValidateStructure(in.doc.game).empty()) {
      report_["classified_kind"] =
          std::string(KindName(Classify(in.doc.game)));
    }
    report_["diagnostics"] = DiagnosticsJson(diagnostics);
    report_["valid"] = diagnostics.empty();
    return Emit(diagnostics.empty() ? kExitOk : kExitFailure);
  }

  int Solve() {
    LoadedInput in = Load(opt_.files.at(0));
    report_["inputs"] = InputsJson({in});
    RequireUsable(in);
    const GameStructure& g = in.doc.game;
    Objective objective = PickObjective(in.doc, opt_.objective);
    // The declared kind picks the solver; validation ensured it fits.
    const StructureKind kind = in.doc.kind;
    report_["objective"] = ObjectiveName(objective);
    report_["kind"] = std::string(KindName(kind));
    json solver = json::object();
    bool ok = true;
    if (kind == StructureKind::kMarkovChain) {
      Expect(opt_.method.empty(), "--method does not apply to a chain");
      report_["values"] = PerState(g, EvaluateChain(ToChain(g), objective));
      solver["method"] = "exact-chain";
    } else if (kind == StructureKind::kMdpPlayer1 ||
               kind == StructureKind::kMdpPlayer2) {
      Expect(opt_.method.empty(), "--method does not apply to an MDP");
      SolveResult r =
          std::holds_alternative<ParityObjective>(objective)
              ? ParityValueMdp(g, std::get<ParityObjective>(objective))
              : MultidiscountedValueMdp(g, std::get<DiscountSpec>(objective),
                                        opt_.tol);
      report_["values"] = PerState(g, r.values);
      report_["strategy"] = StrategyJson(g, r.strategy);
      solver = {{"method", "mdp"},
                {"iterations", r.iterations},
                {"improvements", r.improvements},
                {"residual", Num(r.residual)},
                {"tolerance", Num(r.tolerance)}};
    } else if (const auto* parity = std::get_if<ParityObjective>(&objective)) {
      if (kind == StructureKind::kTurnBased) {
        Expect(opt_.method.empty() || opt_.method == "improvement" ||
                   opt_.method == "enumeration",
               "--method for turn-based parity: improvement|enumeration");
        TurnBasedMethod method = opt_.method == "enumeration"
                                     ? TurnBasedMethod::kEnumeration
                                     : TurnBasedMethod::kImprovement;
        TurnBasedResult r = ParityValueTurnBased(g, *parity, method);
        report_["values"] = PerState(g, r.values);
        report_["strategy"] = {{"player1", StrategyJson(g, r.player1)},
                               {"player2", StrategyJson(g, r.player2)}};
        solver = {{"method", method == TurnBasedMethod::kEnumeration
                                 ? "enumeration"
                                 : "improvement"},
                  {"iterations", r.iterations},
                  {"fell_back", r.fell_back},
                  {"determinacy_gap", Num(r.determinacy_gap)}};
      } else {
        Expect(opt_.method.empty(), "--method does not apply here");
        LimitSchedule schedule = ParseSchedule(opt_.schedule, g, *parity);
        LimitApproximation r = ParityValueConcurrentApprox(g, *parity, schedule);
        report_["values"] = PerState(g, r.values);
        json trace = json::array();
        for (const RungRecord& rung : r.trace) {
          trace.push_back({{"k", rung.k},
                           {"values", NumList(rung.values)},
                           {"max_change", Num(rung.max_change)}});
        }
        json order = json::array();
        for (int s : schedule.order) order.push_back(g.states[s]);
        solver = {{"method", "discount-ladder"},
                  {"order", order},
                  {"k_min", schedule.k_min},
                  {"k_max", schedule.k_max},
                  {"trace", trace},
                  {"converged", r.converged}};
        ok = r.converged;
      }
    } else {
      Expect(opt_.method.empty() || opt_.method == "shapley" ||
                 opt_.method == "strategy-iteration",
             "--method for games: shapley|strategy-iteration");
      ConcurrentMethod method = opt_.method == "strategy-iteration"
                                    ? ConcurrentMethod::kStrategyIteration
                                    : ConcurrentMethod::kShapley;
      ConcurrentResult r = MultidiscountedValueConcurrent(
          g, std::get<DiscountSpec>(objective), opt_.tol, method);
      report_["values"] = PerState(g, r.values);
      report_["strategy"] = {{"player1", StrategyJson(g, r.player1)},
                             {"player2", StrategyJson(g, r.player2)}};
      solver = {{"method", method == ConcurrentMethod::kShapley
                               ? "shapley"
                               : "strategy-iteration"},
                {"iterations", r.iterations},
                {"lower", PerState(g, r.lower)},
                {"upper", PerState(g, r.upper)},
                {"tolerance", Num(r.tolerance)},
                {"converged", r.converged}};
      ok = r.converged;
    }
    report_["solver"] = solver;
    return Emit(ok ? kExitOk : kExitFailure);
  }

  int Distance() {
    LoadedInput a = Load(opt_.files.at(0));
    LoadedInput b = Load(opt_.files.at(1));
    report_["inputs"] = InputsJson({a, b});
    RequireUsable(a);
    RequireUsable(b);
    report_["distances"] = DistancesJson(Distances(a.doc.game, b.doc.game));
    return Emit(kExitOk);
  }

  int Bound() {
    Expect(opt_.n >= 1, "--n must be at least 1");
    if (opt_.beta) {
      Expect(opt_.eta > 0.0, "--beta needs --eta");
      report_["beta"] = Num(BetaThreshold(opt_.eta, opt_.eps, opt_.n));
    } else if (opt_.eta > 0.0) {
      report_["bound"] =
          Num(PerturbationBoundAbsolute(opt_.n, opt_.absolute, opt_.eta));
    } else {
      report_["bound"] = Num(PerturbationBound(opt_.n, opt_.ratio));
    }
    return Emit(kExitOk);
  }

  int PerturbCommand() {
    LoadedInput in = Load(opt_.files.at(0));
    report_["inputs"] = InputsJson({in});
    RequireUsable(in);
    GameDocument doc = in.doc;
    doc.game = Perturb(in.doc.game, opt_.eps, opt_.seed);
    std::string text = WriteDocument(doc);
    report_["distances"] = DistancesJson(Distances(in.doc.game, doc.game));
    if (opt_.output.empty()) {
      out_ << text;
      return kExitOk;
    }
    WriteFile(opt_.output, text);
    report_["output"] = {{"path", opt_.output}, {"fnv1a64", Fnv1aHex(text)}};
    return Emit(kExitOk);
  }

  int Certify() {
    LoadedInput a = Load(opt_.files.at(0));
    LoadedInput b = Load(opt_.files.at(1));
    report_["inputs"] = InputsJson({a, b});
    RequireUsable(a);
    RequireUsable(b);
    CertificateReport r;
    if (opt_.strategy) {
      Expect(opt_.objective.empty() || opt_.objective == "parity",
             "--strategy certifies parity objectives");
      Objective parity = PickObjective(a.doc, "parity");
      r = CertifyStrategyRobustness(a.doc.game, b.doc.game,
                                    std::get<ParityObjective>(parity), opt_.eps);
    } else {
      r = CertifyValueBound(a.doc.game, b.doc.game,
                            PickObjective(a.doc, opt_.objective));
    }
    json cert = {{"objective", r.objective},
                 {"kind", r.kind},
                 {"difference", PerState(a.doc.game, r.difference)},
                 {"max_difference", Num(r.max_difference)},
                 {"bound", Num(r.bound)},
                 {"absolute_bound", Num(r.absolute_bound)},
                 {"margin", Num(r.margin)},
                 {"tolerance", Num(r.tolerance)},
                 {"holds", r.holds},
                 {"distances", DistancesJson(r.distances)}};
    if (opt_.strategy) {
      cert["epsilon"] = Num(r.epsilon);
      cert["beta"] = Num(r.beta);
      cert["hypothesis_met"] = r.hypothesis_met;
    }
    report_["certificate"] = cert;
    return Emit(r.holds ? kExitOk : kExitFailure);
  }

  int Sweep() {
    LoadedInput in = Load(opt_.files.at(0));
    RequireUsable(in);
    Expect(!opt_.eps_list.empty(), "--eps-list must not be empty");
    Expect(opt_.samples >= 1, "--samples must be at least 1");
    auto rows = ContinuitySweep(in.doc.game,
                                PickObjective(in.doc, opt_.objective),
                                opt_.eps_list, opt_.samples, opt_.seed);
    std::string csv = "eps,sample,sup_diff,bound,dist_R\n";
    for (const SweepRow& row : rows) {
      csv += FormatDouble(row.eps) + "," + std::to_string(row.sample) + "," +
             FormatDouble(row.sup_diff) + "," + FormatDouble(row.bound) + "," +
             FormatDouble(row.ratio) + "\n";
    }
    if (opt_.output.empty()) {
      out_ << csv;
    } else {
      WriteFile(opt_.output, csv);
    }
    return kExitOk;
  }

  int Family() {
    const std::string& name = opt_.files.at(0);
    std::vector<std::pair<std::string, GameDocument>> members;
    json params = json::object();
    if (name == "example1") {
      Example1Instance inst = Example1Family(opt_.eps);
      members = {{"g1", MakeDocument(FromChain(inst.g1), inst.parity)},
                 {"g2", MakeDocument(FromChain(inst.g2), inst.parity)}};
      params = {{"eps", Num(opt_.eps)}};
    } else if (name == "example2") {
      Example2Instance inst = Example2Line(opt_.n, opt_.eps);
      members = {{"line", MakeDocument(FromChain(inst.chain), inst.parity)}};
      params = {{"n", opt_.n}, {"eps", Num(opt_.eps)}};
    } else if (name == "ratio") {
      RatioExampleInstance inst = RatioExampleChains(opt_.eps);
      members = {{"g1", MakeDocument(FromChain(inst.g1))},
                 {"g2", MakeDocument(FromChain(inst.g2))},
                 {"g5", MakeDocument(FromChain(inst.g5))}};
      params = {{"eps", Num(opt_.eps)}};
    } else if (name == "random") {
      InstanceRecipe recipe;
      auto kind = ParseKind(opt_.kind);
      Expect(kind.has_value(), "unknown --kind " + opt_.kind);
      recipe.kind = *kind;
      recipe.states = opt_.states;
      recipe.max_moves = opt_.moves;
      recipe.eta_floor = opt_.eta_floor;
      recipe.seed = opt_.seed;
      RandomInstance inst = MakeRandomInstance(recipe);
      GameDocument doc = MakeDocument(inst.game, inst.parity, inst.discount);
      doc.kind = recipe.kind;
      members = {{"instance", doc}};
      params = {{"kind", opt_.kind},
                {"states", opt_.states},
                {"moves", opt_.moves},
                {"eta_floor", Num(opt_.eta_floor)},
                {"seed", opt_.seed}};
    } else {
      throw UsageError("unknown family \"" + name +
                       "\" (example1, example2, ratio, random)");
    }
    if (!opt_.member.empty()) {
      auto it = std::find_if(members.begin(), members.end(),
                             [&](const auto& m) { return m.first == opt_.member; });
      Expect(it != members.end(), "family " + name + " has no member " +
                                      opt_.member);
      members = {*it};
    }
    report_["family"] = name;
    report_["params"] = params;
    if (opt_.output.empty()) {
      Expect(members.size() == 1, "family " + name +
                                      " has several members: pick --member "
                                      "or give -o");
      out_ << WriteDocument(members.front().second);
      return kExitOk;
    }
    json outputs = json::array();
    for (const auto& [member, doc] : members) {
      std::string path = opt_.output;
      if (members.size() > 1) {
        std::string stem = path;
        if (stem.size() > 5 && stem.compare(stem.size() - 5, 5, ".json") == 0) {
          stem.resize(stem.size() - 5);
        }
        path = stem + "." + member + ".json";
      }
      std::string text = WriteDocument(doc);
      WriteFile(path, text);
      outputs.push_back(
          {{"member", member}, {"path", path}, {"fnv1a64", Fnv1aHex(text)}});
    }
    report_["outputs"] = outputs;
    return Emit(kExitOk);
  }

  // Emits whatever has been gathered plus the error; used for exit 1.
  int Fail(const std::string& message) {
    report_["error"] = message;
    return Emit(kExitFailure);
  }

 private:
  static void Expect(bool condition, const std::string& message) {
    if (!condition) throw UsageError(message);
  }

  int Emit(int status) {
    report_["exit_status"] = status;
    out_ << report_.dump(2) << "\n";
    return status;
  }

  const Options& opt_;
  std::ostream& out_;
  json report_ = json::object();
};

}  // namespace

std::string Fnv1aHex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = kHex[h & 0xf];
  return out;
}

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, end);
}

int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  Options opt;
  CLI::App app{"Robustness analysis for stochastic games", "stochrobust"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "stochrobust 0.1.0");

  auto* validate = app.add_subcommand("validate", "check a game document");
  validate->add_option("file", opt.files)->required()->expected(1);

  auto* solve = app.add_subcommand("solve", "values and optimal strategies");
  solve->add_option("file", opt.files)->required()->expected(1);
  solve->add_option("--objective", opt.objective, "parity|multidiscounted");
  solve->add_option("--tol", opt.tol, "tolerance for iterative solvers");
  solve->add_option("--schedule", opt.schedule,
                    "discount ladder for concurrent parity: ORDER,KMIN,KMAX");
  solve->add_option("--method", opt.method,
                    "improvement|enumeration or shapley|strategy-iteration");

  auto* distance = app.add_subcommand("distance", "distances between games");
  distance->add_option("files", opt.files)->required()->expected(2);

  auto* bound = app.add_subcommand("bound", "value-difference bounds");
  bound->add_option("--n", opt.n, "number of states")->required();
  auto* ratio = bound->add_option("--ratio", opt.ratio, "ratio distance");
  auto* absolute = bound->add_option("--abs", opt.absolute, "absolute distance");
  auto* eta = bound->add_option("--eta", opt.eta, "minimum positive probability");
  auto* beta = bound->add_flag("--beta", opt.beta, "threshold on perturbations");
  auto* beta_eps = bound->add_option("--eps", opt.eps, "target optimality gap");
  absolute->needs(eta);
  ratio->excludes(absolute)->excludes(beta);
  absolute->excludes(beta);
  beta->needs(beta_eps)->needs(eta);
  beta_eps->needs(beta);

  auto* perturb = app.add_subcommand("perturb", "seeded perturbation");
  perturb->add_option("file", opt.files)->required()->expected(1);
  perturb->add_option("--eps", opt.eps, "absolute distance cap, below eta")->required();
  perturb->add_option("--seed", opt.seed, "64-bit seed")->required();
  perturb->add_option("-o,--output", opt.output, "write the document here instead of stdout");

  auto* certify = app.add_subcommand("certify", "certify a perturbation");
  certify->add_option("files", opt.files)->required()->expected(2);
  certify->add_option("--objective", opt.objective, "parity|multidiscounted");
  auto* strategy =
      certify->add_flag("--strategy", opt.strategy, "strategy robustness");
  auto* certify_eps = certify->add_option("--eps", opt.eps, "target optimality gap");
  strategy->needs(certify_eps);
  certify_eps->needs(strategy);

  auto* sweep = app.add_subcommand("sweep", "continuity sweep as CSV");
  sweep->add_option("file", opt.files)->required()->expected(1);
  sweep->add_option("--eps-list", opt.eps_list, "comma-separated perturbation sizes")->required()->delimiter(',');
  sweep->add_option("--samples", opt.samples, "perturbations per eps")->required();
  sweep->add_option("--seed", opt.seed, "64-bit seed")->required();
  sweep->add_option("--objective", opt.objective, "parity|multidiscounted");
  sweep->add_option("-o,--output", opt.output, "write the CSV here instead of stdout");

  auto* family = app.add_subcommand("family", "materialize a benchmark family");
  family->add_option("name", opt.files, "example1|example2|ratio|random")->required()->expected(1);
  family->add_option("--eps", opt.eps);
  family->add_option("--n", opt.n);
  family->add_option("--member", opt.member, "emit only this member");
  family->add_option("--kind", opt.kind, "structure kind for random");
  family->add_option("--states", opt.states);
  family->add_option("--moves", opt.moves);
  family->add_option("--eta-floor", opt.eta_floor);
  family->add_option("--seed", opt.seed, "64-bit seed");
  family->add_option("-o,--output", opt.output, "output path; X.json becomes X.<member>.json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseError;
  }

  if (bound->parsed() && ratio->count() + absolute->count() + beta->count() == 0) {
    err << "error: bound needs --ratio, --abs with --eta, or --beta\n";
    return kExitParseError;
  }

  Runner runner(args, opt, out);
  try {
    if (validate->parsed()) return runner.Validate();
    if (solve->parsed()) return runner.Solve();
    if (distance->parsed()) return runner.Distance();
    if (bound->parsed()) return runner.Bound();
    if (perturb->parsed()) return runner.PerturbCommand();
    if (certify->parsed()) return runner.Certify();
    if (sweep->parsed()) return runner.Sweep();
    if (family->parsed()) return runner.Family();
  } catch (const DocumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return runner.Fail(e.what());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return runner.Fail(e.what());
  }
  return kExitParseError;
}

}  // namespace stochrobust::cli
