// Acceptance suite: one line per criterion, nonzero exit iff any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "termlab/bar.hpp"
#include "termlab/fixture.hpp"
#include "termlab/trs.hpp"

using namespace termlab;
using nlohmann::json;

namespace {

const std::string kFixtures = TERMLAB_FIXTURE_DIR;
const std::string kCli = TERMLAB_CLI_PATH;
constexpr Fuel kFuel = 1u << 22;

MpoConfig addition_config() {
  Trs trs = load_trs(kFixtures + "/addition.trs");
  return trs.make_config(std::uint64_t{3});
}

struct Outcome {
  bool pass;
  std::string detail;
};

// ---------------------------------------------------------------- criterion 1
Outcome paper_fixture_exactness() {
  RelationFixture fixture = load_relation_fixture(kFixtures + "/seven.rel");
  RelationFixture full = load_relation_fixture(kFixtures + "/seven_full.rel");
  const ElementSeq expected{2, 4, 1, 3, 5, 6, 7};

  auto oracle = dfs_derivation_tree(fixture.rel, 2, kFuel);
  ElementSeq simple =
      bar_derivation(fixture.rel, search_modulus(fixture.rel, kFuel), {2},
                     kFuel);
  RelationTriple triple{full.rel, *full.sub, *full.lift};
  ElementSeq minimal =
      derive_via_modulus(triple, search_minimal_modulus(triple, kFuel), 2,
                         kFuel);

  bool pass = oracle && *oracle == expected && simple == expected &&
              minimal == expected;
  return {pass, "dfs/bar/modulus trees for element 2 all equal " +
                    seq_to_string(expected)};
}

// ---------------------------------------------------------------- criterion 2
Outcome subtree_vector_fixture() {
  RelationFixture fixture =
      load_relation_fixture(kFixtures + "/seven_divisor.rel");
  RelationTriple triple{fixture.rel, *fixture.sub, FiniteRelation()};
  bool pass = check_subtree_vector(triple, 6, {{1}, {3, 5}});
  return {pass, "vector [[1],[3,5]] accepted for element 6"};
}

// ------------------------------------------------------------ criteria 3 & 4
struct SweepData {
  std::size_t checked = 0;
  std::size_t tree_mismatches = 0;
  std::size_t tree_check_failures = 0;
  std::size_t ground_checked = 0;
  std::size_t bound_violations = 0;
};

SweepData run_sweep() {
  MpoConfig cfg = addition_config();
  Trs trs = load_trs(kFixtures + "/addition.trs");
  RelationTriple triple = mpo_triple(cfg);
  MeasureRelation measure = mpo_measure(cfg);

  SweepData data;
  TreeMemo recursor_memo;
  TreeMemo oracle_memo;
  DcMemo dc_memo;
  for (const Term& t : cfg.codec.enumerate_up_to(4)) {
    Element code = cfg.codec.encode(t);
    ElementSeq derived =
        derive_via_measure(triple, measure, code, kFuel, &recursor_memo);
    auto oracle = dfs_derivation_tree(triple.succ, code, kFuel, &oracle_memo);
    ++data.checked;
    if (!is_derivation_tree(triple.succ, code, derived)) {
      ++data.tree_check_failures;
    }
    if (!oracle || derived != *oracle) ++data.tree_mismatches;

    if (is_ground(t)) {
      ++data.ground_checked;
      auto dc = derivational_complexity(triple.succ, code, kFuel, &dc_memo);
      auto actual = derivation_length(trs, t, kFuel);
      bool ok = dc && actual && derived.size() >= *dc && *dc >= *actual;
      if (!ok) ++data.bound_violations;
    }
  }
  return data;
}

// ---------------------------------------------------------------- criterion 5
Outcome agreement() {
  // seven-element fixture
  RelationFixture full = load_relation_fixture(kFixtures + "/seven_full.rel");
  RelationTriple fixture_triple{full.rel, *full.sub, *full.lift};
  MeasureRelation fixture_measure = measure_from_lift(*full.lift);
  auto fixture_hypothesis = check_measure_hypothesis(
      fixture_triple, fixture_measure, full.universe, kFuel);
  auto fixture_mismatches = derivation_agreement(
      fixture_triple, fixture_measure,
      search_minimal_modulus(fixture_triple, kFuel), full.universe, kFuel);

  // every path-order instance of size <= 3
  MpoConfig cfg = addition_config();
  RelationTriple triple = mpo_triple(cfg);
  MeasureRelation measure = mpo_measure(cfg);
  ElementSeq samples;
  for (const Term& t : cfg.codec.enumerate_up_to(3)) {
    samples.push_back(cfg.codec.encode(t));
  }
  auto hypothesis = check_measure_hypothesis(triple, measure, samples, kFuel);
  auto mismatches = derivation_agreement(
      triple, measure, search_minimal_modulus(triple, kFuel), samples, kFuel);

  bool pass = fixture_hypothesis.empty() && fixture_mismatches.empty() &&
              hypothesis.empty() && mismatches.empty();
  std::ostringstream detail;
  detail << "mismatches: fixture " << fixture_mismatches.size()
         << ", path order " << mismatches.size();
  return {pass, detail.str()};
}

// ---------------------------------------------------------------- criterion 6
Outcome decomposition_laws() {
  MpoConfig cfg = addition_config();
  RelationTriple triple = mpo_triple(cfg);
  ElementSeq universe;
  for (const Term& t : cfg.codec.enumerate_up_to(3)) {
    universe.push_back(cfg.codec.encode(t));
  }
  auto violations = check_decomposition(triple, universe);
  std::ostringstream detail;
  detail << violations.size() << " violations over " << universe.size()
         << " elements";
  return {violations.empty(), detail.str()};
}

// ---------------------------------------------------------------- criterion 7
Outcome hypothesis_law() {
  MpoConfig cfg = addition_config();
  RelationTriple triple = mpo_triple(cfg);
  ElementSeq universe;
  for (const Term& t : cfg.codec.enumerate_up_to(3)) {
    universe.push_back(cfg.codec.encode(t));
  }
  auto violations =
      check_measure_hypothesis(triple, mpo_measure(cfg), universe, kFuel);
  std::ostringstream detail;
  detail << violations.size() << " violations over " << universe.size()
         << " elements";
  return {violations.empty(), detail.str()};
}

// ---------------------------------------------------------------- criterion 8
Outcome uniqueness_mutations() {
  std::mt19937_64 rng(0x5eed0811);

  // valid trees: the seven-element fixture plus the path-order universe
  std::vector<std::pair<FiniteRelation, ElementSeq>> trees;
  RelationFixture fixture = load_relation_fixture(kFixtures + "/seven.rel");
  for (const Element& x : fixture.universe) {
    trees.emplace_back(fixture.rel, *dfs_derivation_tree(fixture.rel, x, kFuel));
  }
  MpoConfig cfg = addition_config();
  FiniteRelation succ = mpo_succ_relation(cfg);
  TreeMemo memo;
  for (const Term& t : cfg.codec.enumerate_up_to(3)) {
    Element code = cfg.codec.encode(t);
    trees.emplace_back(succ, *dfs_derivation_tree(succ, code, kFuel, &memo));
  }

  std::size_t survived = 0;
  std::size_t performed = 0;
  while (performed < 1000) {
    const auto& [rel, original] = trees[rng() % trees.size()];
    ElementSeq mutated = original;
    switch (rng() % 3) {
      case 0: {
        if (mutated.size() < 2) continue;
        std::size_t i = rng() % mutated.size();
        std::size_t j = rng() % mutated.size();
        if (mutated[i] == mutated[j]) continue;
        std::swap(mutated[i], mutated[j]);
        break;
      }
      case 1: {
        mutated.erase(mutated.begin() +
                      static_cast<std::ptrdiff_t>(rng() % mutated.size()));
        break;
      }
      default: {
        std::size_t i = rng() % mutated.size();
        mutated.insert(mutated.begin() + static_cast<std::ptrdiff_t>(i),
                       mutated[i]);
        break;
      }
    }
    if (mutated == original) continue;
    ++performed;
    if (is_derivation_tree(rel, original[0], mutated)) ++survived;
  }
  std::ostringstream detail;
  detail << survived << " of " << performed << " mutations passed the checker";
  return {survived == 0, detail.str()};
}

// ---------------------------------------------------------------- criterion 9
Outcome modulus_guard() {
  std::vector<std::pair<FiniteRelation, ElementSeq>> chains;

  RelationFixture fixture = load_relation_fixture(kFixtures + "/seven.rel");
  auto extend = [&chains](const FiniteRelation& rel, auto&& self,
                          const ElementSeq& chain, std::size_t cap) -> void {
    if (chains.size() >= cap) return;
    chains.emplace_back(rel, chain);
    for (const Element& y : rel.successors(chain.back())) {
      ElementSeq next = chain;
      next.push_back(y);
      self(rel, self, next, cap);
    }
  };
  for (const Element& x : fixture.universe) {
    extend(fixture.rel, extend, {x}, 1000);
  }

  MpoConfig cfg = addition_config();
  FiniteRelation succ = mpo_succ_relation(cfg);
  for (const Term& t : cfg.codec.enumerate_up_to(3)) {
    if (chains.size() >= 1000) break;
    extend(succ, extend, {cfg.codec.encode(t)}, 1000);
  }

  Modulus seven_modulus = search_modulus(fixture.rel, kFuel);
  Modulus mpo_modulus = search_modulus(succ, kFuel);
  std::size_t violations = 0;
  for (const auto& [rel, chain] : chains) {
    const Modulus& omega =
        rel.mentioned().empty() ? mpo_modulus : seven_modulus;
    if (omega.eval(chain) < chain.size()) ++violations;
  }
  std::ostringstream detail;
  detail << violations << " violations over " << chains.size() << " chains";
  return {chains.size() >= 1000 && violations == 0, detail.str()};
}

// --------------------------------------------------------------- criterion 10
Outcome encoding_sandwich() {
  std::size_t violations = 0;
  std::size_t checked = 0;
  auto sweep = [&](const Signature& sig, std::uint64_t bound) {
    TermCodec codec(sig);
    FiniteRelation sub = codec.subterm_relation();
    for (const Term& t : codec.enumerate_up_to(bound)) {
      ++checked;
      Element code = codec.encode(t);
      std::uint64_t size = term_size(t);
      if (!(Element(size) <= code && code < codec.count_up_to(size))) {
        ++violations;
      }
      for (const Element& s : sub.successors(code)) {
        if (!(s < code)) ++violations;
      }
    }
  };
  // size 6 on the unary signature; the binary signature's strata past
  // size 4 are astronomically large, so it is swept to 4
  sweep(Signature({{"s", 1}, {"0", 0}}), 6);
  sweep(Signature({{"plus", 2}, {"s", 1}, {"0", 0}}), 4);
  std::ostringstream detail;
  detail << violations << " violations over " << checked << " terms";
  return {violations == 0, detail.str()};
}

// --------------------------------------------------------------- criterion 11
int run_cli(const std::string& args) {
  std::string cmd = kCli + " " + args;
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

Outcome end_to_end() {
  std::string trs = kFixtures + "/addition.trs";
  int check_rc = run_cli("check " + trs + " --k 3 > /dev/null");
  if (check_rc != 0) {
    return {false, "termlab check exited with " + std::to_string(check_rc)};
  }

  auto sweep_file =
      std::filesystem::temp_directory_path() / "termlab_sweep.json";
  int dc_rc = run_cli("dc " + trs + " --sweep 4 --k 3 --json > " +
                      sweep_file.string());
  if (dc_rc != 0) {
    return {false, "termlab dc exited with " + std::to_string(dc_rc)};
  }

  std::ifstream in(sweep_file);
  json report = json::parse(in);
  std::size_t rows = 0;
  std::size_t violations = 0;
  for (const json& row : report.at("rows")) {
    ++rows;
    if (row.at("actual").is_null() ||
        row.at("bound").get<std::uint64_t>() <
            row.at("actual").get<std::uint64_t>()) {
      ++violations;
    }
  }
  std::filesystem::remove(sweep_file);
  std::ostringstream detail;
  detail << rows << " sweep rows, " << violations << " violations";
  return {report.at("ok").get<bool>() && rows > 0 && violations == 0,
          detail.str()};
}

int report(int id, const std::string& name, const Outcome& outcome,
           double seconds) {
  std::ostringstream line;
  line << (outcome.pass ? "PASS" : "FAIL") << " criterion " << id << " ("
       << name << "): " << outcome.detail << " [" << std::fixed
       << std::setprecision(1) << seconds << "s]";
  std::cout << line.str() << std::endl;
  return outcome.pass ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;
  auto timed = [&](int id, const std::string& name,
                   const std::function<Outcome()>& run) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, "exception"};
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    failures += report(id, name, outcome, seconds);
  };

  timed(1, "paper fixture exactness", paper_fixture_exactness);
  timed(2, "subtree vector fixture", subtree_vector_fixture);

  SweepData sweep;
  timed(3, "derivation-function correctness", [&sweep] {
    sweep = run_sweep();
    std::ostringstream detail;
    detail << sweep.tree_mismatches << " mismatches, "
           << sweep.tree_check_failures << " check failures over "
           << sweep.checked << " terms";
    return Outcome{sweep.tree_mismatches == 0 &&
                       sweep.tree_check_failures == 0 && sweep.checked > 3000,
                   detail.str()};
  });
  timed(4, "complexity bound", [&sweep] {
    std::ostringstream detail;
    detail << sweep.bound_violations << " violations over "
           << sweep.ground_checked << " ground terms";
    return Outcome{sweep.bound_violations == 0 && sweep.ground_checked > 0,
                   detail.str()};
  });

  timed(5, "bar/recursor agreement", agreement);
  timed(6, "decomposition laws", decomposition_laws);
  timed(7, "measure hypothesis law", hypothesis_law);
  timed(8, "tree uniqueness under mutation", uniqueness_mutations);
  timed(9, "modulus dominates chains", modulus_guard);
  timed(10, "encoding sandwich", encoding_sandwich);
  timed(11, "end-to-end CLI sweep", end_to_end);

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                              : std::to_string(failures) + " CRITERIA FAILED")
            << std::endl;
  return failures;
}
