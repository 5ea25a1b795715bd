// termlab: termination-analysis workbench over finitely branching orders.
//
// Subcommands:
//   check   parse a TRS and run orientation, decomposition, measure and
//           approximation checks
//   derive  compute the derivation tree of a term or fixture element
//   dc      compare the derivation-tree bound against the actual longest
//           rewrite sequence, for one term or a ground sweep
//   rel     inspect a relation fixture around one element
//
// Exit codes: 0 success, 1 failed checks or a broken contract, 2 parse
// error, 3 fuel exhaustion or non-termination evidence.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "termlab/bar.hpp"
#include "termlab/fixture.hpp"
#include "termlab/trs.hpp"

using namespace termlab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailedCheck = 1;
constexpr int kExitParseError = 2;
constexpr int kExitFuel = 3;

json tree_to_json(const ElementSeq& tree) {
  json out = json::array();
  for (const Element& x : tree) out.push_back(x.str());
  return out;
}

std::string tree_to_text(const ElementSeq& tree) { return seq_to_string(tree); }

struct CheckOutcome {
  std::vector<RuleVerdict> verdicts;
  std::vector<DecompositionViolation> decomposition;
  std::vector<HypothesisViolation> hypothesis;
  std::vector<StepViolation> steps;

  bool ok() const {
    for (const RuleVerdict& v : verdicts) {
      if (!v.oriented) return false;
    }
    return decomposition.empty() && hypothesis.empty() && steps.empty();
  }
};

CheckOutcome run_checks(const Trs& trs, const MpoConfig& cfg,
                        std::uint64_t universe_size, Fuel fuel) {
  CheckOutcome outcome;
  outcome.verdicts = orient(cfg, trs);
  RelationTriple triple = mpo_triple(cfg);
  ElementSeq universe;
  for (const Term& t : cfg.codec.enumerate_up_to(universe_size)) {
    universe.push_back(cfg.codec.encode(t));
  }
  outcome.decomposition = check_decomposition(triple, universe);
  outcome.hypothesis =
      check_measure_hypothesis(triple, mpo_measure(cfg), universe, fuel);
  outcome.steps = validate_approximation(cfg, trs, universe_size);
  return outcome;
}

json check_report(const Trs& trs, const CheckOutcome& outcome) {
  json report;
  json rules = json::array();
  for (const RuleVerdict& v : outcome.verdicts) {
    rules.push_back({{"rule", trs.print_term_in_context(trs.rules()[v.rule].lhs) +
                                  " -> " +
                                  trs.print_term_in_context(trs.rules()[v.rule].rhs)},
                     {"verdict", v.oriented}});
  }
  report["orient"] = rules;
  report["decomposition_violations"] = outcome.decomposition.size();
  report["hypothesis_violations"] = outcome.hypothesis.size();
  json steps = json::array();
  for (const StepViolation& v : outcome.steps) {
    steps.push_back({{"term", trs.print_term_in_context(v.from)},
                     {"verdict", false},
                     {"to", trs.print_term_in_context(v.to)}});
  }
  report["approximation_violations"] = steps;
  report["ok"] = outcome.ok();
  return report;
}

int cmd_check(const std::string& path, std::optional<std::uint64_t> k,
              std::uint64_t universe_size, Fuel fuel, bool as_json) {
  Trs trs = load_trs(path);
  MpoConfig cfg = trs.make_config(k);
  CheckOutcome outcome = run_checks(trs, cfg, universe_size, fuel);
  if (as_json) {
    std::cout << check_report(trs, outcome).dump(2) << '\n';
  } else {
    std::cout << "k = " << cfg.k << '\n';
    for (const RuleVerdict& v : outcome.verdicts) {
      const Rule& rule = trs.rules()[v.rule];
      std::cout << (v.oriented ? "oriented:     " : "NOT oriented: ")
                << trs.print_term_in_context(rule.lhs) << " -> "
                << trs.print_term_in_context(rule.rhs) << '\n';
    }
    std::cout << "decomposition violations: " << outcome.decomposition.size()
              << '\n';
    std::cout << "hypothesis violations:    " << outcome.hypothesis.size()
              << '\n';
    std::cout << "approximation violations: " << outcome.steps.size() << '\n';
    for (const StepViolation& v : outcome.steps) {
      std::cout << "  step not covered: " << trs.print_term_in_context(v.from)
                << " ~> " << trs.print_term_in_context(v.to) << '\n';
    }
    std::cout << (outcome.ok() ? "all checks passed" : "checks FAILED")
              << '\n';
  }
  return outcome.ok() ? kExitOk : kExitFailedCheck;
}

int cmd_derive(const std::string& path, const std::string& term_text,
               const std::string& element_text, const std::string& strategy,
               std::optional<std::uint64_t> k, Fuel fuel, bool force,
               bool as_json) {
  ElementSeq tree;
  FiniteRelation relation;
  std::string subject;

  if (!element_text.empty()) {
    RelationFixture fixture = load_relation_fixture(path);
    Element x(element_text);
    relation = fixture.rel;
    subject = element_text;
    if (fixture.sub && fixture.lift) {
      RelationTriple triple{fixture.rel, *fixture.sub, *fixture.lift};
      if (strategy == "psi") {
        tree = derive_via_modulus(triple, search_minimal_modulus(triple, fuel),
                                  x, fuel);
      } else {
        tree = derive_via_measure(triple, measure_from_lift(*fixture.lift), x,
                                  fuel);
      }
    } else {
      // plain relation fixture: the simple bar-recursive functional
      tree = bar_derivation(fixture.rel, search_modulus(fixture.rel, fuel),
                            {x}, fuel);
    }
  } else {
    Trs trs = load_trs(path);
    MpoConfig cfg = trs.make_config(k);
    if (!force) {
      CheckOutcome outcome = run_checks(trs, cfg, 3, fuel);
      if (!outcome.ok()) {
        std::cerr << "checks failed; rerun with --force to derive anyway\n";
        return kExitFailedCheck;
      }
    }
    Term t = trs.parse_term_in_context(term_text);
    relation = mpo_succ_relation(cfg);
    subject = trs.print_term_in_context(t);
    RelationTriple triple = mpo_triple(cfg);
    Element code = cfg.codec.encode(t);
    if (strategy == "psi") {
      tree = derive_via_modulus(triple, search_minimal_modulus(triple, fuel),
                                code, fuel);
    } else {
      tree = derive_via_measure(triple, mpo_measure(cfg), code, fuel);
    }
  }

  bool valid = !tree.empty() && is_derivation_tree(relation, tree[0], tree);
  if (as_json) {
    json out;
    out["subject"] = subject;
    out["path"] = strategy;
    out["tree"] = tree_to_json(tree);
    out["length"] = tree.size();
    out["valid"] = valid;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "tree:   " << tree_to_text(tree) << '\n';
    std::cout << "length: " << tree.size() << '\n';
  }
  if (!valid) {
    std::cerr << "derived sequence failed the tree check\n";
    return kExitFailedCheck;
  }
  return kExitOk;
}

int cmd_dc(const std::string& path, const std::string& term_text,
           std::optional<std::uint64_t> sweep, const std::string& strategy,
           std::optional<std::uint64_t> k, Fuel fuel, bool as_json) {
  Trs trs = load_trs(path);
  MpoConfig cfg = trs.make_config(k);
  BoundPath bound_path =
      strategy == "psi" ? BoundPath::Modulus : BoundPath::Recursor;
  TreeMemo memo;

  std::vector<Term> subjects;
  if (sweep) {
    for (const Term& t : cfg.codec.enumerate_up_to(*sweep)) {
      if (is_ground(t)) subjects.push_back(t);
    }
  } else {
    subjects.push_back(trs.parse_term_in_context(term_text));
  }

  json rows = json::array();
  bool all_ok = true;
  bool nonterminating = false;
  for (const Term& t : subjects) {
    BoundReport report = bound_vs_actual(cfg, trs, t, fuel, bound_path, &memo);
    bool ok = report.actual && report.bound >= *report.actual;
    all_ok = all_ok && ok;
    nonterminating = nonterminating || !report.actual;
    if (as_json) {
      json row;
      row["term"] = trs.print_term_in_context(t);
      row["bound"] = report.bound;
      if (report.actual) {
        row["actual"] = *report.actual;
      } else {
        row["actual"] = nullptr;
      }
      rows.push_back(row);
    } else {
      std::cout << trs.print_term_in_context(t) << ": bound " << report.bound
                << ", actual ";
      if (report.actual) {
        std::cout << *report.actual;
      } else {
        std::cout << "non-terminating";
      }
      std::cout << (ok ? "" : "  <-- VIOLATION") << '\n';
    }
  }
  if (as_json) {
    json out;
    out["rows"] = rows;
    out["ok"] = all_ok;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << (all_ok ? "bound >= actual for every row"
                         : "contract VIOLATED")
              << '\n';
  }
  if (nonterminating) return kExitFuel;
  return all_ok ? kExitOk : kExitFailedCheck;
}

int cmd_rel(const std::string& path, const std::string& element_text,
            Fuel fuel, bool as_json) {
  RelationFixture fixture = load_relation_fixture(path);
  Element x(element_text);

  const ElementSeq& succ = fixture.rel.successors(x);
  auto dc = derivational_complexity(fixture.rel, x, fuel);
  auto oracle = dfs_derivation_tree(fixture.rel, x, fuel);

  BarStats stats;
  std::optional<ElementSeq> derived;
  try {
    derived =
        bar_derivation(fixture.rel, search_modulus(fixture.rel, fuel), {x},
                       fuel, &stats);
  } catch (const FuelExhausted&) {
    derived = std::nullopt;
  }

  bool agree = derived && oracle && *derived == *oracle;
  if (as_json) {
    json out;
    out["element"] = x.str();
    out["successors"] = tree_to_json(succ);
    out["dc"] = dc ? json(*dc) : json(nullptr);
    out["dfs_tree"] = oracle ? tree_to_json(*oracle) : json(nullptr);
    out["bar_tree"] = derived ? tree_to_json(*derived) : json(nullptr);
    out["agree"] = agree;
    out["bar_calls"] = stats.calls;
    out["bar_max_depth"] = stats.max_depth;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "element:    " << x << '\n';
    std::cout << "successors: " << tree_to_text(succ) << '\n';
    std::cout << "dc:         ";
    if (dc) {
      std::cout << *dc;
    } else {
      std::cout << "non-terminating";
    }
    std::cout << '\n';
    std::cout << "dfs tree:   "
              << (oracle ? tree_to_text(*oracle) : "non-terminating") << '\n';
    std::cout << "bar tree:   "
              << (derived ? tree_to_text(*derived) : "fuel exhausted") << '\n';
    std::cout << "agree:      " << (agree ? "yes" : "no") << '\n';
    std::cout << "bar calls:  " << stats.calls
              << ", max depth: " << stats.max_depth << '\n';
  }
  if (!dc || !oracle || !derived) return kExitFuel;
  return agree ? kExitOk : kExitFailedCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"termination-analysis workbench"};
  app.require_subcommand(1);

  Fuel fuel = kDefaultFuel;
  app.add_option("--fuel", fuel, "step budget for searches and recursion")
      ->envname("TERMLAB_FUEL");

  std::string path, term_text, element_text;
  std::string strategy = "gamma";
  std::optional<std::uint64_t> k_override;
  std::uint64_t universe_size = 3;
  std::optional<std::uint64_t> sweep;
  bool as_json = false;
  bool force = false;

  CLI::App* check = app.add_subcommand("check", "run all checks on a TRS");
  check->add_option("file", path)->required();
  check->add_option("--k", k_override, "approximation bound override");
  check->add_option("--universe-size", universe_size,
                    "term size bound for the exhaustive checks");
  check->add_flag("--json", as_json);

  CLI::App* derive =
      app.add_subcommand("derive", "compute a derivation tree");
  derive->add_option("file", path)->required();
  derive->add_option("--term", term_text, "term over the TRS signature");
  derive->add_option("--element", element_text, "fixture element code");
  derive->add_option("--path", strategy, "derivation strategy")
      ->check(CLI::IsMember({"gamma", "psi"}));
  derive->add_option("--k", k_override);
  derive->add_flag("--force", force, "skip the pre-checks");
  derive->add_flag("--json", as_json);

  CLI::App* dc = app.add_subcommand("dc", "bound vs actual lengths");
  dc->add_option("file", path)->required();
  dc->add_option("--term", term_text);
  dc->add_option("--sweep", sweep, "sweep all ground terms up to this size");
  dc->add_option("--path", strategy)
      ->check(CLI::IsMember({"gamma", "psi"}));
  dc->add_option("--k", k_override);
  dc->add_flag("--json", as_json);

  CLI::App* rel = app.add_subcommand("rel", "inspect a relation fixture");
  rel->add_option("fixture", path)->required();
  rel->add_option("--element", element_text)->required();
  rel->add_flag("--json", as_json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      return cmd_check(path, k_override, universe_size, fuel, as_json);
    }
    if (derive->parsed()) {
      if (term_text.empty() == element_text.empty()) {
        std::cerr << "derive needs exactly one of --term or --element\n";
        return kExitParseError;
      }
      return cmd_derive(path, term_text, element_text, strategy, k_override,
                        fuel, force, as_json);
    }
    if (dc->parsed()) {
      if (term_text.empty() == !sweep.has_value()) {
        std::cerr << "dc needs exactly one of --term or --sweep\n";
        return kExitParseError;
      }
      return cmd_dc(path, term_text, sweep, strategy, k_override, fuel,
                    as_json);
    }
    if (rel->parsed()) {
      return cmd_rel(path, element_text, fuel, as_json);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const FuelExhausted& e) {
    std::cerr << "fuel exhausted: " << e.what() << '\n';
    return kExitFuel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailedCheck;
  }
  return kExitOk;
}
