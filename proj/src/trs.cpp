#include "termlab/trs.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace termlab {

namespace {

// Unresolved syntax tree of one side of a rule; names are classified as
// variables or symbols only once the whole file has been read.
struct RawTerm {
  std::string name;
  std::vector<RawTerm> children;
  bool had_parens = false;
  std::size_t line = 0;
  std::size_t column = 0;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class RawParser {
 public:
  RawParser(std::string_view text, std::size_t line, std::size_t column_base)
      : text_(text), line_(line), column_base_(column_base) {}

  RawTerm parse() {
    RawTerm t = parse_one();
    skip_space();
    if (pos_ != text_.size()) fail("expected end of term");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& expectation) {
    throw ParseError(expectation, line_, column_base_ + pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RawTerm parse_one() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected identifier");
    RawTerm t;
    t.name = std::string(text_.substr(start, pos_ - start));
    t.line = line_;
    t.column = column_base_ + start + 1;
    if (eat('(')) {
      t.had_parens = true;
      if (!eat(')')) {
        do {
          t.children.push_back(parse_one());
        } while (eat(','));
        if (!eat(')')) fail("expected `,` or `)`");
      }
    }
    return t;
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t column_base_;
  std::size_t pos_ = 0;
};

struct RawRule {
  RawTerm lhs, rhs;
  std::size_t line = 0;
};

void infer_symbols(const RawTerm& t,
                   const std::map<std::string, std::uint64_t>& variables,
                   std::vector<FunctionSymbol>& symbols) {
  auto var = variables.find(t.name);
  if (var != variables.end()) {
    if (t.had_parens) {
      throw ParseError("variable `" + t.name + "` used as a function symbol",
                       t.line, t.column);
    }
    return;
  }
  auto found = std::find_if(symbols.begin(), symbols.end(),
                            [&](const FunctionSymbol& s) {
                              return s.name == t.name;
                            });
  if (found == symbols.end()) {
    symbols.push_back({t.name, t.children.size()});
  } else if (found->arity != t.children.size()) {
    throw ParseError("symbol `" + t.name + "` used with arity " +
                         std::to_string(t.children.size()) +
                         " but declared with arity " +
                         std::to_string(found->arity),
                     t.line, t.column);
  }
  for (const RawTerm& child : t.children) {
    infer_symbols(child, variables, symbols);
  }
}

Term resolve(const RawTerm& t, const Signature& sig,
             const std::map<std::string, std::uint64_t>& variables) {
  if (auto var = variables.find(t.name); var != variables.end()) {
    return Term::var(var->second);
  }
  SymbolId id = *sig.find(t.name);
  std::vector<Term> args;
  args.reserve(t.children.size());
  for (const RawTerm& child : t.children) {
    args.push_back(resolve(child, sig, variables));
  }
  return Term::app(id, std::move(args));
}

void collect_vars(const Term& t, std::set<std::uint64_t>& out) {
  if (t.is_var()) {
    out.insert(t.var_index());
    return;
  }
  for (const Term& arg : t.args()) collect_vars(arg, out);
}

}  // namespace

Trs::Trs(Signature sig, std::vector<std::string> variables,
         std::vector<Rule> rules,
         std::vector<std::pair<SymbolId, SymbolId>> precedence_pairs)
    : sig_(std::move(sig)),
      variables_(std::move(variables)),
      rules_(std::move(rules)),
      precedence_pairs_(std::move(precedence_pairs)) {}

Term Trs::parse_term_in_context(std::string_view text) const {
  std::map<std::string, std::uint64_t, std::less<>> vars;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    vars.emplace(variables_[i], i);
  }
  return parse_term(sig_, vars, text);
}

std::string Trs::print_term_in_context(const Term& t) const {
  if (t.is_var()) {
    if (t.var_index() < variables_.size()) return variables_[t.var_index()];
    return "x" + std::to_string(t.var_index());
  }
  std::ostringstream out;
  out << sig_.symbol(t.symbol()).name;
  if (!t.args().empty()) {
    out << '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i > 0) out << ',';
      out << print_term_in_context(t.args()[i]);
    }
    out << ')';
  }
  return out.str();
}

std::string Trs::print() const {
  std::ostringstream out;
  if (!variables_.empty()) {
    out << "VAR";
    for (const std::string& v : variables_) out << ' ' << v;
    out << '\n';
  }
  for (const auto& [f, g] : precedence_pairs_) {
    out << "PREC " << sig_.symbol(f).name << " > " << sig_.symbol(g).name
        << '\n';
  }
  out << "RULES\n";
  for (const Rule& rule : rules_) {
    out << print_term_in_context(rule.lhs) << " -> "
        << print_term_in_context(rule.rhs) << '\n';
  }
  return out.str();
}

std::uint64_t Trs::default_k() const {
  std::uint64_t k = 0;
  for (const Rule& rule : rules_) k = std::max(k, term_size(rule.rhs));
  return k;
}

MpoConfig Trs::make_config(std::optional<std::uint64_t> k_override) const {
  Precedence prec = precedence_pairs_.empty()
                        ? Precedence::by_declaration(sig_)
                        : Precedence::from_pairs(sig_, precedence_pairs_);
  return MpoConfig{TermCodec(sig_), std::move(prec),
                   k_override.value_or(default_k())};
}

bool Trs::operator==(const Trs& other) const {
  return sig_ == other.sig_ && variables_ == other.variables_ &&
         rules_ == other.rules_ && precedence_pairs_ == other.precedence_pairs_;
}

Trs parse_trs(const std::string& text) {
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> prec_chains;
  std::vector<std::size_t> prec_lines;
  std::vector<RawRule> raw_rules;
  bool in_rules = false;

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

    if (!in_rules && first == "VAR") {
      std::string name;
      while (words >> name) {
        if (std::find(variables.begin(), variables.end(), name) !=
            variables.end()) {
          throw ParseError("variable `" + name + "` declared twice", lineno, 1);
        }
        variables.push_back(name);
      }
      continue;
    }
    if (!in_rules && first == "PREC") {
      std::vector<std::string> chain;
      std::string tok;
      bool expect_name = true;
      while (words >> tok) {
        if (expect_name) {
          if (tok == ">") {
            throw ParseError("expected symbol name in PREC line", lineno, 1);
          }
          chain.push_back(tok);
        } else if (tok != ">") {
          throw ParseError("expected `>` between precedence symbols", lineno,
                           1);
        }
        expect_name = !expect_name;
      }
      if (chain.size() < 2 || expect_name) {
        throw ParseError("PREC line needs `f > g` chains", lineno, 1);
      }
      prec_chains.push_back(std::move(chain));
      prec_lines.push_back(lineno);
      continue;
    }
    if (first == "RULES") {
      if (in_rules) {
        throw ParseError("duplicate RULES header", lineno, 1);
      }
      in_rules = true;
      continue;
    }
    if (!in_rules) {
      throw ParseError("expected VAR, PREC or RULES, got `" + first + "`",
                       lineno, 1);
    }

    auto arrow = line.find("->");
    if (arrow == std::string::npos) {
      throw ParseError("rule line has no `->`", lineno, 1);
    }
    if (line.find("->", arrow + 2) != std::string::npos) {
      throw ParseError("rule line has more than one `->`", lineno, arrow + 3);
    }
    RawRule rule;
    rule.line = lineno;
    rule.lhs = RawParser(std::string_view(line).substr(0, arrow), lineno, 0)
                   .parse();
    rule.rhs =
        RawParser(std::string_view(line).substr(arrow + 2), lineno, arrow + 2)
            .parse();
    raw_rules.push_back(std::move(rule));
  }

  if (!in_rules) {
    throw ParseError("file has no RULES section", lineno == 0 ? 1 : lineno, 1);
  }

  std::map<std::string, std::uint64_t> var_indices;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    var_indices.emplace(variables[i], i);
  }

  std::vector<FunctionSymbol> symbols;
  for (const RawRule& rule : raw_rules) {
    infer_symbols(rule.lhs, var_indices, symbols);
    infer_symbols(rule.rhs, var_indices, symbols);
  }
  Signature sig(symbols);

  std::vector<Rule> rules;
  for (const RawRule& raw_rule : raw_rules) {
    Term lhs = resolve(raw_rule.lhs, sig, var_indices);
    Term rhs = resolve(raw_rule.rhs, sig, var_indices);
    if (lhs.is_var()) {
      throw ParseError("left-hand side must not be a variable", raw_rule.line,
                       raw_rule.lhs.column);
    }
    std::set<std::uint64_t> lhs_vars, rhs_vars;
    collect_vars(lhs, lhs_vars);
    collect_vars(rhs, rhs_vars);
    for (std::uint64_t v : rhs_vars) {
      if (!lhs_vars.count(v)) {
        throw ParseError("variable `" + variables[v] +
                             "` occurs only on the right-hand side",
                         raw_rule.line, raw_rule.rhs.column);
      }
    }
    rules.push_back({std::move(lhs), std::move(rhs)});
  }

  std::vector<std::pair<SymbolId, SymbolId>> prec_pairs;
  for (std::size_t c = 0; c < prec_chains.size(); ++c) {
    const auto& chain = prec_chains[c];
    std::vector<SymbolId> ids;
    for (const std::string& name : chain) {
      auto id = sig.find(name);
      if (!id) {
        throw ParseError("precedence mentions unknown symbol `" + name + "`",
                         prec_lines[c], 1);
      }
      ids.push_back(*id);
    }
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
      auto pair = std::make_pair(ids[i], ids[i + 1]);
      if (std::find(prec_pairs.begin(), prec_pairs.end(), pair) ==
          prec_pairs.end()) {
        prec_pairs.push_back(pair);
      }
    }
  }
  try {
    Precedence::from_pairs(sig, prec_pairs);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), prec_lines.empty() ? 1 : prec_lines.back(), 1);
  }

  return Trs(std::move(sig), std::move(variables), std::move(rules),
             std::move(prec_pairs));
}

Trs load_trs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open TRS file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_trs(buffer.str());
}

std::vector<RuleVerdict> orient(const MpoConfig& cfg, const Trs& trs) {
  std::vector<RuleVerdict> verdicts;
  for (std::size_t i = 0; i < trs.rules().size(); ++i) {
    const Rule& rule = trs.rules()[i];
    verdicts.push_back({i, mpo_gt(cfg, rule.lhs, rule.rhs)});
  }
  return verdicts;
}

namespace {

bool match(const Term& pattern, const Term& subject,
           std::map<std::uint64_t, Term>& binding) {
  if (pattern.is_var()) {
    auto [it, inserted] = binding.emplace(pattern.var_index(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_var() || subject.symbol() != pattern.symbol()) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    if (!match(pattern.args()[i], subject.args()[i], binding)) return false;
  }
  return true;
}

Term substitute(const Term& t, const std::map<std::uint64_t, Term>& binding) {
  if (t.is_var()) {
    auto it = binding.find(t.var_index());
    return it != binding.end() ? it->second : t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& arg : t.args()) args.push_back(substitute(arg, binding));
  return Term::app(t.symbol(), std::move(args));
}

}  // namespace

std::vector<Term> rewrite_steps(const Trs& trs, const Term& t) {
  std::vector<Term> out;
  for (const Rule& rule : trs.rules()) {
    std::map<std::uint64_t, Term> binding;
    if (match(rule.lhs, t, binding)) {
      out.push_back(substitute(rule.rhs, binding));
    }
  }
  if (!t.is_var()) {
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      for (Term& inner : rewrite_steps(trs, t.args()[i])) {
        std::vector<Term> args = t.args();
        args[i] = std::move(inner);
        out.push_back(Term::app(t.symbol(), std::move(args)));
      }
    }
  }
  return out;
}

std::vector<StepViolation> validate_approximation(const MpoConfig& cfg,
                                                  const Trs& trs,
                                                  std::uint64_t size_bound) {
  std::vector<StepViolation> violations;
  for (const Term& t : cfg.codec.enumerate_up_to(size_bound)) {
    if (!is_ground(t)) continue;
    for (const Term& s : rewrite_steps(trs, t)) {
      if (!mpo_gt(cfg, t, s)) violations.push_back({t, s});
    }
  }
  return violations;
}

namespace {

struct LengthSearch {
  const Trs& trs;
  Fuel fuel;
  std::map<Term, std::uint64_t> memo;
  std::set<Term> on_path;

  std::optional<std::uint64_t> run(const Term& t, Fuel depth) {
    if (depth > fuel) return std::nullopt;
    if (auto it = memo.find(t); it != memo.end()) return it->second;
    if (!on_path.insert(t).second) return std::nullopt;
    std::uint64_t best = 0;
    for (const Term& s : rewrite_steps(trs, t)) {
      auto sub = run(s, depth + 1);
      if (!sub) {
        on_path.erase(t);
        return std::nullopt;
      }
      best = std::max(best, 1 + *sub);
    }
    on_path.erase(t);
    memo.emplace(t, best);
    return best;
  }
};

}  // namespace

std::optional<std::uint64_t> derivation_length(const Trs& trs, const Term& t,
                                               Fuel fuel) {
  LengthSearch search{trs, fuel, {}, {}};
  return search.run(t, 0);
}

BoundReport bound_vs_actual(const MpoConfig& cfg, const Trs& trs,
                            const Term& t, Fuel fuel, BoundPath path,
                            TreeMemo* memo) {
  RelationTriple triple = mpo_triple(cfg);
  Element code = cfg.codec.encode(t);
  BoundReport report;
  if (path == BoundPath::Recursor) {
    report.tree = derive_via_measure(triple, mpo_measure(cfg), code, fuel, memo);
  } else {
    report.tree =
        derive_via_modulus(triple, search_minimal_modulus(triple, fuel), code,
                           fuel);
  }
  report.bound = report.tree.size();
  report.actual = derivation_length(trs, t, fuel);
  return report;
}

}  // namespace termlab
