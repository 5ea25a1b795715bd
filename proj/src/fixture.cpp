#include "termlab/fixture.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace termlab {

namespace {

bool all_digits(const std::string& tok) {
  if (tok.empty()) return false;
  for (char c : tok) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

RelationFixture parse_relation_fixture(const std::string& text) {
  enum class Section { None, Rel, Sub, Lift };
  Section section = Section::None;
  FiniteRelation::SuccessorTable tables[3];
  bool present[3] = {false, false, false};
  std::set<Element> seen;

  std::istringstream input(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(input, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;

    if (first == "REL" || first == "SUB" || first == "LIFT") {
      std::string extra;
      if (words >> extra) {
        throw ParseError("unexpected token after section header", lineno, 1);
      }
      Section next = first == "REL"   ? Section::Rel
                     : first == "SUB" ? Section::Sub
                                      : Section::Lift;
      if (present[static_cast<int>(next) - 1]) {
        throw ParseError("duplicate " + first + " section", lineno, 1);
      }
      section = next;
      present[static_cast<int>(next) - 1] = true;
      continue;
    }

    if (section == Section::None) {
      throw ParseError("expected REL header before successor lines", lineno, 1);
    }
    if (first.size() < 2 || first.back() != ':') {
      throw ParseError("expected `x:` at start of successor line", lineno, 1);
    }
    std::string lhs = first.substr(0, first.size() - 1);
    if (!all_digits(lhs)) {
      throw ParseError("element must be a natural number", lineno, 1);
    }
    Element x(lhs);
    auto& table = tables[static_cast<int>(section) - 1];
    if (table.count(x)) {
      throw ParseError("duplicate successor line for element " + lhs, lineno,
                       1);
    }
    seen.insert(x);
    ElementSeq succ;
    std::string tok;
    while (words >> tok) {
      if (!all_digits(tok)) {
        throw ParseError("successor must be a natural number, got `" + tok +
                             "`",
                         lineno, 1);
      }
      Element y(tok);
      if (!succ.empty()) {
        if (succ.back() == y) {
          throw ParseError("duplicate successor " + tok, lineno, 1);
        }
        if (y < succ.back()) {
          throw ParseError("successors must be listed in increasing order",
                           lineno, 1);
        }
      }
      seen.insert(y);
      succ.push_back(std::move(y));
    }
    table.emplace(std::move(x), std::move(succ));
  }

  if (!present[0]) {
    throw ParseError("fixture has no REL section", lineno == 0 ? 1 : lineno, 1);
  }

  RelationFixture fixture;
  fixture.rel = FiniteRelation::from_table(std::move(tables[0]));
  if (present[1]) fixture.sub = FiniteRelation::from_table(std::move(tables[1]));
  if (present[2]) {
    fixture.lift = FiniteRelation::from_table(std::move(tables[2]));
  }
  fixture.universe.assign(seen.begin(), seen.end());
  return fixture;
}

RelationFixture load_relation_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open fixture file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_relation_fixture(buffer.str());
}

}  // namespace termlab
