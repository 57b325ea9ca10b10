#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "robustmatch/error.hpp"
#include "robustmatch/generate.hpp"
#include "robustmatch/io.hpp"
#include "robustmatch/oracle.hpp"
#include "robustmatch/relaxed_opt.hpp"
#include "robustmatch/stable_opt.hpp"

namespace robustmatch::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string input;
  std::string nu;
  std::string mode = "stable";
  std::string cost_convention = "self";
  std::string regret_convention = "retained";
  std::string output;
  std::string matching;
  std::string what;
  std::uint64_t seed = 0;
  int n = 0;
  int leavers = 0;
  bool self_anywhere = false;
  bool decimal = false;
  bool timing = false;
};

Convention parse_convention(const std::string& text) {
  if (text == "self") return Convention::kSelf;
  if (text == "retained") return Convention::kRetained;
  throw InputError("unknown convention " + text);
}

std::string_view convention_name(Convention c) { return c == Convention::kSelf ? "self" : "retained"; }

class Emitter {
 public:
  Emitter(const Options& opts, std::ostream& out) : opts_(opts), out_(out) {}

  Json rational(const Rational& q) const { return opts_.decimal ? to_decimal_string(q) : to_string(q); }

  void emit(const Json& doc) const { write(doc.dump(2) + "\n"); }

  void write(const std::string& text) const {
    if (opts_.output.empty()) out_ << text;
    else write_file(opts_.output, text);
  }

 private:
  const Options& opts_;
  std::ostream& out_;
};

Json matching_json(const Instance& in, const Matching& m) {
  Json pairs = Json::array();
  for (auto [a, b] : m.couples(in)) pairs.push_back({in.id(a), in.id(b)});
  return pairs;
}

Json singles_json(const Instance& in, const Matching& m) {
  Json singles = Json::array();
  for (AgentIndex a = 0; a < in.size(); ++a)
    if (m.is_single(a)) singles.push_back(in.id(a));
  return singles;
}

struct Problem {
  InstanceDocument doc;
  Rational nu;
  ConventionPair conventions;

  const Instance& instance() const { return doc.instance; }
};

Problem load_problem(const Options& opts) {
  if (opts.input.empty()) throw InputError("--input is required");
  Problem p{load_instance(opts.input), 0, {}};
  if (!opts.nu.empty()) p.nu = parse_rational(opts.nu);
  else if (p.doc.nu) p.nu = *p.doc.nu;
  else throw InputError("no nu: pass --nu or put \"nu\" in the instance");
  if (p.nu < 0 || p.nu > 1) throw InputError("nu outside [0, 1]");
  p.conventions = {parse_convention(opts.cost_convention), parse_convention(opts.regret_convention)};
  return p;
}

ObjectiveParams make_params(const Problem& p) {
  return ObjectiveParams(p.nu, p.doc.leave, p.conventions, compute_baselines(p.instance(), p.doc.leave));
}

// Report shared by solve, evaluate and compare.
Json report(const Emitter& e, const Problem& p, const ObjectiveParams& params, std::string_view mode,
            const Matching& m) {
  const Instance& in = p.instance();
  PsiBreakdown b = psi_breakdown(in, m, params);
  Json doc;
  doc["mode"] = mode;
  doc["nu"] = e.rational(p.nu);
  doc["conventions"] = {{"cost_term", convention_name(p.conventions.cost_term)},
                        {"regret_term", convention_name(p.conventions.regret_term)}};
  doc["matching"] = matching_json(in, m);
  doc["singles"] = singles_json(in, m);
  doc["psi"] = e.rational(b.total);
  Json terms = Json::array();
  for (const PsiTerm& t : b.terms) {
    Json row;
    row["leaver"] = t.leaver ? Json(in.id(*t.leaver)) : Json(nullptr);
    row["probability"] = e.rational(t.probability);
    row["contribution"] = e.rational(t.contribution);
    terms.push_back(row);
  }
  doc["breakdown"] = terms;
  doc["expected_blocking_pairs"] = e.rational(expected_blocking_pairs(in, m, p.doc.leave));
  doc["stable"] = is_stable(in, m);
  return doc;
}

using Clock = std::chrono::steady_clock;

void cmd_solve(const Options& opts, const Emitter& e) {
  Problem p = load_problem(opts);
  auto start = Clock::now();
  ObjectiveParams params = make_params(p);
  RobustSolution sol;
  if (opts.mode == "stable") sol = solve_robust(p.instance(), params, Lattice::build(p.instance()));
  else sol = solve_relaxed(p.instance(), params);
  double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  Json doc = report(e, p, params, to_string(sol.mode), sol.matching);
  if (sol.mode == SolveMode::kStable) doc["closed_subset"] = sol.closed_subset;
  if (opts.timing) doc["timing"] = {{"seconds", seconds}};
  e.emit(doc);
}

void cmd_evaluate(const Options& opts, const Emitter& e) {
  Problem p = load_problem(opts);
  if (opts.matching.empty()) throw InputError("--matching is required");
  Matching m = parse_matching(p.instance(), read_file(opts.matching));
  e.emit(report(e, p, make_params(p), "evaluate", m));
}

Json rotation_json(const Instance& in, const Rotation& r) {
  Json pairs = Json::array();
  for (auto [m, w] : r.pairs) pairs.push_back({in.id(m), in.id(w)});
  return {{"index", r.index}, {"pairs", pairs}};
}

// Stable matchings from the closed subsets of the rotation digraph, in
// lexicographic order of the subsets' membership vectors over the
// topological order.
std::vector<Matching> stable_from_lattice(const Lattice& lattice) {
  std::vector<Matching> out;
  const auto& topo = lattice.digraph.topological_order();
  std::vector<char> in_set(static_cast<size_t>(lattice.size()), 0);
  std::vector<int> chosen;
  std::function<void(size_t)> walk = [&](size_t k) {
    if (k == topo.size()) {
      out.push_back(matching_of_elimination_order(lattice, chosen));
      return;
    }
    int node = topo[k];
    walk(k + 1);
    const auto& preds = lattice.digraph.predecessors(node);
    if (std::all_of(preds.begin(), preds.end(), [&](int p) { return in_set[static_cast<size_t>(p)] != 0; })) {
      in_set[static_cast<size_t>(node)] = 1;
      chosen.push_back(node);
      walk(k + 1);
      chosen.pop_back();
      in_set[static_cast<size_t>(node)] = 0;
    }
  };
  walk(0);
  return out;
}

void cmd_enumerate(const Options& opts, const Emitter& e) {
  if (opts.input.empty()) throw InputError("--input is required");
  InstanceDocument d = load_instance(opts.input);
  const Instance& in = d.instance;
  Json doc;
  doc["what"] = opts.what;
  if (opts.what == "stable" || opts.what == "all-matchings") {
    std::vector<Matching> list;
    if (opts.what == "stable") list = stable_from_lattice(Lattice::build(in));
    else list = oracle::enumerate_matchings(in);
    Json rows = Json::array();
    for (const Matching& m : list) rows.push_back(matching_json(in, m));
    doc["count"] = list.size();
    doc["matchings"] = rows;
  } else {
    Lattice lattice = Lattice::build(in);
    Json rotations = Json::array();
    for (const Rotation& r : lattice.rotations.rotations) rotations.push_back(rotation_json(in, r));
    Json edges = Json::array();
    for (auto [a, b] : lattice.digraph.edges()) edges.push_back({a, b});
    if (opts.what == "rotations") {
      doc["count"] = lattice.size();
      doc["rotations"] = rotations;
    } else {
      doc["count"] = edges.size();
      doc["rotations"] = rotations;
      doc["edges"] = edges;
    }
  }
  e.emit(doc);
}

void cmd_generate(const Options& opts, const Emitter& e) {
  if (opts.n <= 0) throw InputError("--n must be positive");
  Instance in = random_instance(opts.n, opts.seed, !opts.self_anywhere);
  LeaveDistribution leave = random_leave(in, opts.leavers, opts.seed);
  std::optional<Rational> nu;
  if (!opts.nu.empty()) nu = parse_rational(opts.nu);
  e.write(serialize_instance(in, leave, nu));
}

void cmd_compare(const Options& opts, const Emitter& e) {
  Problem p = load_problem(opts);
  const Instance& in = p.instance();
  ObjectiveParams params = make_params(p);
  Lattice lattice = Lattice::build(in);
  std::vector<std::pair<std::string, Matching>> policies{
      {"men_optimal", lattice.rotations.men_optimal},
      {"women_optimal", lattice.rotations.women_optimal},
      {"min_sumsq", params.baselines().phi()},
      {"robust", solve_robust(in, params, lattice).matching},
      {"relaxed", solve_relaxed(in, params).matching},
  };
  Json rows = Json::array();
  for (const auto& [name, m] : policies) {
    Json row;
    row["policy"] = name;
    row["matching"] = matching_json(in, m);
    row["psi"] = e.rational(psi(in, m, params));
    row["expected_blocking_pairs"] = e.rational(expected_blocking_pairs(in, m, p.doc.leave));
    row["stable"] = is_stable(in, m);
    rows.push_back(row);
  }
  Json doc;
  doc["nu"] = e.rational(p.nu);
  doc["conventions"] = {{"cost_term", convention_name(p.conventions.cost_term)},
                        {"regret_term", convention_name(p.conventions.regret_term)}};
  doc["rows"] = rows;
  e.emit(doc);
}

void cmd_oracle(const Options& opts, const Emitter& e) {
  Problem p = load_problem(opts);
  const Instance& in = p.instance();
  Json doc;
  doc["what"] = opts.what;
  if (opts.what == "poset") {
    auto poset = oracle::poset_oracle(in);
    Json rotations = Json::array();
    for (const auto& ps : poset.rotations) {
      Json pairs = Json::array();
      for (auto [m, w] : ps) pairs.push_back({in.id(m), in.id(w)});
      rotations.push_back(pairs);
    }
    Json precedes = Json::array();
    for (auto [a, b] : poset.precedes) precedes.push_back({a, b});
    doc["rotations"] = rotations;
    doc["precedes"] = precedes;
  } else {
    auto domain = opts.what == "all" ? oracle::Domain::kAll : oracle::Domain::kStable;
    auto best = oracle::brute_solve(in, make_params(p), domain);
    doc["nu"] = e.rational(p.nu);
    doc["matching"] = matching_json(in, best.matching);
    doc["psi"] = e.rational(best.psi);
  }
  e.emit(doc);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Robust stable matching under agent departures", "robustmatch"};
  app.require_subcommand(1);

  auto conventions = [&](CLI::App* sub) {
    sub->add_option("--cost-convention", opts.cost_convention, "Cost of an abandoned partner")
        ->check(CLI::IsMember({"self", "retained"}));
    sub->add_option("--regret-convention", opts.regret_convention, "Regret of an abandoned partner")
        ->check(CLI::IsMember({"self", "retained"}));
  };
  auto common = [&](CLI::App* sub, bool needs_nu) {
    sub->add_option("--input", opts.input, "Instance document")->required();
    if (needs_nu) sub->add_option("--nu", opts.nu, "Weight of squared cost against regret, e.g. 1/2");
    sub->add_option("--output", opts.output, "Write the document here instead of stdout");
    sub->add_flag("--decimal", opts.decimal, "Print rationals as decimals");
  };

  auto* solve = app.add_subcommand("solve", "Robust matching of an instance");
  common(solve, true);
  conventions(solve);
  solve->add_option("--mode", opts.mode, "stable or relaxed")->check(CLI::IsMember({"stable", "relaxed"}));
  solve->add_flag("--timing", opts.timing, "Add wall-clock time to the report");

  auto* evaluate = app.add_subcommand("evaluate", "Objective of a given matching");
  common(evaluate, true);
  conventions(evaluate);
  evaluate->add_option("--matching", opts.matching, "Matching document")->required();

  auto* enumerate = app.add_subcommand("enumerate", "Stable matchings, rotations or digraph edges");
  common(enumerate, false);
  enumerate->add_option("--what", opts.what)
      ->required()
      ->check(CLI::IsMember({"stable", "rotations", "edges", "all-matchings"}));

  auto* generate = app.add_subcommand("generate", "Random instance");
  generate->add_option("--n", opts.n, "Agents per side")->required();
  generate->add_option("--seed", opts.seed);
  generate->add_option("--leavers", opts.leavers, "Agents with positive departure probability");
  generate->add_flag("--self-anywhere", opts.self_anywhere, "Let agents rank being single anywhere");
  generate->add_option("--nu", opts.nu, "Store nu in the document");
  generate->add_option("--output", opts.output);

  auto* compare = app.add_subcommand("compare", "Objective of standard policies side by side");
  common(compare, true);
  conventions(compare);

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force references for small instances");
  common(oracle_cmd, true);
  conventions(oracle_cmd);
  opts.what = "stable";
  oracle_cmd->add_option("--what", opts.what)->check(CLI::IsMember({"stable", "all", "poset"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Emitter emitter(opts, out);
  try {
    if (*solve) cmd_solve(opts, emitter);
    else if (*evaluate) cmd_evaluate(opts, emitter);
    else if (*enumerate) cmd_enumerate(opts, emitter);
    else if (*generate) cmd_generate(opts, emitter);
    else if (*compare) cmd_compare(opts, emitter);
    else if (*oracle_cmd) cmd_oracle(opts, emitter);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}

}  // namespace robustmatch::cli
