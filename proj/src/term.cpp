#include "termlab/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace termlab {

Signature::Signature(std::vector<FunctionSymbol> symbols)
    : symbols_(std::move(symbols)) {
  std::set<std::string> names;
  for (const auto& sym : symbols_) {
    if (sym.name.empty()) {
      throw std::invalid_argument("empty function symbol name");
    }
    if (!names.insert(sym.name).second) {
      throw std::invalid_argument("duplicate function symbol: " + sym.name);
    }
  }
}

std::optional<SymbolId> Signature::find(std::string_view name) const {
  for (SymbolId id = 0; id < symbols_.size(); ++id) {
    if (symbols_[id].name == name) return id;
  }
  return std::nullopt;
}

bool Signature::operator==(const Signature& other) const {
  if (symbols_.size() != other.symbols_.size()) return false;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name != other.symbols_[i].name ||
        symbols_[i].arity != other.symbols_[i].arity) {
      return false;
    }
  }
  return true;
}

Term Term::var(std::uint64_t index) {
  Term t;
  t.is_var_ = true;
  t.var_index_ = index;
  return t;
}

Term Term::app(SymbolId symbol, std::vector<Term> args) {
  Term t;
  t.is_var_ = false;
  t.symbol_ = symbol;
  t.args_ = std::move(args);
  return t;
}

std::uint64_t Term::var_index() const {
  if (!is_var_) throw std::logic_error("var_index on application term");
  return var_index_;
}

SymbolId Term::symbol() const {
  if (is_var_) throw std::logic_error("symbol on variable term");
  return symbol_;
}

const std::vector<Term>& Term::args() const {
  static const std::vector<Term> empty;
  return is_var_ ? empty : args_;
}

bool Term::operator==(const Term& other) const {
  if (is_var_ != other.is_var_) return false;
  if (is_var_) return var_index_ == other.var_index_;
  return symbol_ == other.symbol_ && args_ == other.args_;
}

bool Term::operator<(const Term& other) const {
  if (is_var_ != other.is_var_) return is_var_;  // variables first
  if (is_var_) return var_index_ < other.var_index_;
  if (symbol_ != other.symbol_) return symbol_ < other.symbol_;
  return std::lexicographical_compare(args_.begin(), args_.end(),
                                      other.args_.begin(), other.args_.end());
}

std::uint64_t term_size(const Term& t) {
  if (t.is_var()) return t.var_index();
  std::uint64_t m = t.args().size();
  for (const Term& arg : t.args()) m = std::max(m, term_size(arg));
  return m + 1;
}

bool is_ground(const Term& t) {
  if (t.is_var()) return false;
  for (const Term& arg : t.args()) {
    if (!is_ground(arg)) return false;
  }
  return true;
}

std::string print_term(const Signature& sig, const Term& t) {
  if (t.is_var()) return "x" + std::to_string(t.var_index());
  std::ostringstream out;
  out << sig.symbol(t.symbol()).name;
  if (!t.args().empty()) {
    out << '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i > 0) out << ',';
      out << print_term(sig, t.args()[i]);
    }
    out << ')';
  }
  return out.str();
}

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class TermParser {
 public:
  TermParser(const Signature& sig,
             const std::map<std::string, std::uint64_t, std::less<>>* vars,
             std::string_view text)
      : sig_(sig), vars_(vars), text_(text) {}

  Term parse() {
    Term t = parse_one();
    skip_space();
    if (pos_ != text_.size()) fail("expected end of input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& expectation) {
    throw ParseError(expectation, 1, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string read_ident() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Term parse_one() {
    skip_space();
    std::size_t ident_pos = pos_;
    std::string name = read_ident();
    if (vars_) {
      if (auto it = vars_->find(name); it != vars_->end()) {
        return Term::var(it->second);
      }
    }
    if (auto id = sig_.find(name)) {
      std::size_t arity = sig_.symbol(*id).arity;
      std::vector<Term> args;
      if (eat('(')) {
        if (!eat(')')) {
          do {
            args.push_back(parse_one());
          } while (eat(','));
          if (!eat(')')) fail("expected `,` or `)`");
        }
      }
      if (args.size() != arity) {
        pos_ = ident_pos;
        fail("symbol `" + name + "` expects " + std::to_string(arity) +
             " argument(s), got " + std::to_string(args.size()));
      }
      return Term::app(*id, std::move(args));
    }
    if (name.size() > 1 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      return Term::var(std::stoull(name.substr(1)));
    }
    pos_ = ident_pos;
    fail("unknown identifier `" + name + "`");
  }

  const Signature& sig_;
  const std::map<std::string, std::uint64_t, std::less<>>* vars_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(const Signature& sig, std::string_view text) {
  return TermParser(sig, nullptr, text).parse();
}

Term parse_term(
    const Signature& sig,
    const std::map<std::string, std::uint64_t, std::less<>>& variables,
    std::string_view text) {
  return TermParser(sig, &variables, text).parse();
}

}  // namespace termlab
