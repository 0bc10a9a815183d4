#pragma once

// First-order sentences over {\/, <=, [=, =, R}: lexer, recursive-descent
// parser, printer, and an exhaustive evaluator over finite models.
//
// Concrete syntax:
//   sentence := block+ formula          block := ("forall" | "exists") ident+ "."
//   formula  := imp ("<->" imp)*        imp   := or ("->" imp)?
//   or       := and ("|" and)*          and   := unary ("&" unary)*
//   unary    := "!" unary | primary
//   primary  := "(" formula ")" | "R" "(" term ";" term "," term ")" | term relop term
//   term     := base ("\/" base)*       base  := ident | "(" term ")"
//   relop    := "<=" | "<" | "[=" | "="
// "a < b" is read as "a <= b & !(a = b)".

#include <cctype>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectopo/error.hpp"

namespace spectopo::fo {

enum class Tok {
  Forall, Exists, Dot, LParen, RParen, Not, And, Or, Implies, Iff,
  Eq, Leq, Lt, Sqle, Join, R, Semi, Comma, Ident, End
};

inline const char* tok_text(Tok t) {
  switch (t) {
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::Dot: return "'.'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Eq: return "'='";
    case Tok::Leq: return "'<='";
    case Tok::Lt: return "'<'";
    case Tok::Sqle: return "'[='";
    case Tok::Join: return "'\\/'";
    case Tok::R: return "'R'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Ident: return "identifier";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, std::vector<std::string> expected, const std::string& found)
      : Error("ParseError", format(line, column, expected, found)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(int line, int column, const std::vector<std::string>& expected, const std::string& found) {
    std::string msg = std::to_string(line) + ":" + std::to_string(column) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? " or " : "") + expected[i];
    return msg + ", found " + found;
  }

  int line_, column_;
  std::vector<std::string> expected_;
};

inline std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto ident_char = [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '\'';
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int l = line, cc = col;
    auto emit = [&](Tok k, std::size_t len) {
      out.push_back({k, text.substr(i, len), l, cc});
      advance(len);
    };
    auto starts = [&](const char* s) { return text.compare(i, std::char_traits<char>::length(s), s) == 0; };
    if (starts("<->")) emit(Tok::Iff, 3);
    else if (starts("->")) emit(Tok::Implies, 2);
    else if (starts("<=")) emit(Tok::Leq, 2);
    else if (starts("[=")) emit(Tok::Sqle, 2);
    else if (starts("\\/")) emit(Tok::Join, 2);
    else if (c == '<') emit(Tok::Lt, 1);
    else if (c == '=') emit(Tok::Eq, 1);
    else if (c == '.') emit(Tok::Dot, 1);
    else if (c == '(') emit(Tok::LParen, 1);
    else if (c == ')') emit(Tok::RParen, 1);
    else if (c == '!') emit(Tok::Not, 1);
    else if (c == '&') emit(Tok::And, 1);
    else if (c == '|') emit(Tok::Or, 1);
    else if (c == ';') emit(Tok::Semi, 1);
    else if (c == ',') emit(Tok::Comma, 1);
    else if (ident_char(c) && c != '\'') {
      std::size_t len = 0;
      while (i + len < text.size() && ident_char(text[i + len])) ++len;
      const std::string w = text.substr(i, len);
      emit(w == "forall" ? Tok::Forall : w == "exists" ? Tok::Exists : w == "R" ? Tok::R : Tok::Ident, len);
    } else {
      throw ParseError(l, cc, {"a token"}, "'" + std::string(1, c) + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// AST

struct Term {
  enum Kind { Var, Join } kind = Var;
  std::size_t var = 0;
  std::shared_ptr<const Term> lhs, rhs;
};
using TermP = std::shared_ptr<const Term>;

struct Formula {
  enum Kind { Leq, Sqle, Eq, Rel, Not, And, Or, Implies, Iff } kind = Leq;
  std::vector<TermP> terms;
  std::shared_ptr<const Formula> lhs, rhs;
};
using FormulaP = std::shared_ptr<const Formula>;

enum class Quant { Forall, Exists };

struct Sentence {
  std::vector<std::pair<Quant, std::string>> prefix;
  FormulaP matrix;

  /// Length of the leading run of equal quantifiers.
  std::size_t leading_block() const {
    std::size_t k = 0;
    while (k < prefix.size() && prefix[k].first == prefix[0].first) ++k;
    return k;
  }
};

struct Signature {
  bool join = false, sqle = false, rel = false;
};

namespace detail {

inline void term_signature(const Term& t, Signature& s) {
  if (t.kind == Term::Join) {
    s.join = true;
    term_signature(*t.lhs, s);
    term_signature(*t.rhs, s);
  }
}

inline void formula_signature(const Formula& f, Signature& s) {
  if (f.kind == Formula::Sqle) s.sqle = true;
  if (f.kind == Formula::Rel) s.rel = true;
  for (const auto& t : f.terms) term_signature(*t, s);
  if (f.lhs) formula_signature(*f.lhs, s);
  if (f.rhs) formula_signature(*f.rhs, s);
}

}  // namespace detail

inline Signature signature_of(const Sentence& s) {
  Signature sig;
  detail::formula_signature(*s.matrix, sig);
  return sig;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Sentence parse_sentence() {
    Sentence s;
    if (peek().kind != Tok::Forall && peek().kind != Tok::Exists) fail({Tok::Forall, Tok::Exists});
    while (peek().kind == Tok::Forall || peek().kind == Tok::Exists) {
      const Quant q = next().kind == Tok::Forall ? Quant::Forall : Quant::Exists;
      if (peek().kind != Tok::Ident) fail({Tok::Ident});
      while (peek().kind == Tok::Ident) {
        const Token& v = next();
        for (const auto& [_, name] : s.prefix)
          if (name == v.text) throw ParseError(v.line, v.column, {"a fresh variable"}, "'" + v.text + "'");
        s.prefix.emplace_back(q, v.text);
      }
      expect(Tok::Dot);
    }
    vars_ = &s.prefix;
    s.matrix = formula();
    if (peek().kind != Tok::End) fail({Tok::End});
    return s;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::vector<Tok> expected) const {
    std::vector<std::string> names;
    for (Tok t : expected) names.push_back(tok_text(t));
    fail_text(std::move(names));
  }
  [[noreturn]] void fail_text(std::vector<std::string> expected) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, std::move(expected), found);
  }
  const Token& expect(Tok k) {
    if (peek().kind != k) fail({k});
    return next();
  }

  static FormulaP node(Formula::Kind k, FormulaP l, FormulaP r = nullptr) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
  }

  FormulaP formula() {
    FormulaP f = implication();
    while (peek().kind == Tok::Iff) {
      next();
      f = node(Formula::Iff, f, implication());
    }
    return f;
  }
  FormulaP implication() {
    FormulaP f = disjunction();
    if (peek().kind == Tok::Implies) {
      next();
      return node(Formula::Implies, f, implication());
    }
    return f;
  }
  FormulaP disjunction() {
    FormulaP f = conjunction();
    while (peek().kind == Tok::Or) {
      next();
      f = node(Formula::Or, f, conjunction());
    }
    return f;
  }
  FormulaP conjunction() {
    FormulaP f = unary();
    while (peek().kind == Tok::And) {
      next();
      f = node(Formula::And, f, unary());
    }
    return f;
  }
  FormulaP unary() {
    if (peek().kind == Tok::Not) {
      next();
      return node(Formula::Not, unary());
    }
    return primary();
  }

  FormulaP primary() {
    if (peek().kind == Tok::R) {
      next();
      expect(Tok::LParen);
      auto f = std::make_shared<Formula>();
      f->kind = Formula::Rel;
      f->terms.push_back(term());
      expect(Tok::Semi);
      f->terms.push_back(term());
      expect(Tok::Comma);
      f->terms.push_back(term());
      expect(Tok::RParen);
      return f;
    }
    if (peek().kind == Tok::LParen) {
      // A parenthesized term followed by a relation symbol, else a formula.
      const std::size_t save = pos_;
      try {
        TermP t = term();
        if (is_relop(peek().kind)) return atom(std::move(t));
      } catch (const ParseError&) {
      }
      pos_ = save;
      next();
      FormulaP f = formula();
      expect(Tok::RParen);
      return f;
    }
    if (peek().kind != Tok::Ident) fail({Tok::Ident, Tok::LParen, Tok::Not, Tok::R});
    return atom(term());
  }

  static bool is_relop(Tok k) { return k == Tok::Leq || k == Tok::Lt || k == Tok::Sqle || k == Tok::Eq; }

  FormulaP atom(TermP lhs) {
    const Tok op = peek().kind;
    if (!is_relop(op)) fail({Tok::Leq, Tok::Lt, Tok::Sqle, Tok::Eq, Tok::Join});
    next();
    TermP rhs = term();
    auto make = [&](Formula::Kind k) {
      auto f = std::make_shared<Formula>();
      f->kind = k;
      f->terms = {lhs, rhs};
      return FormulaP(f);
    };
    switch (op) {
      case Tok::Leq: return make(Formula::Leq);
      case Tok::Sqle: return make(Formula::Sqle);
      case Tok::Eq: return make(Formula::Eq);
      default: return node(Formula::And, make(Formula::Leq), node(Formula::Not, make(Formula::Eq)));
    }
  }

  TermP term() {
    TermP t = base_term();
    while (peek().kind == Tok::Join) {
      next();
      auto j = std::make_shared<Term>();
      j->kind = Term::Join;
      j->lhs = t;
      j->rhs = base_term();
      t = j;
    }
    return t;
  }
  TermP base_term() {
    if (peek().kind == Tok::LParen) {
      next();
      TermP t = term();
      expect(Tok::RParen);
      return t;
    }
    if (peek().kind != Tok::Ident) fail({Tok::Ident, Tok::LParen});
    const Token& v = next();
    for (std::size_t i = 0; i < vars_->size(); ++i)
      if ((*vars_)[i].second == v.text) {
        auto t = std::make_shared<Term>();
        t->var = i;
        return t;
      }
    throw ParseError(v.line, v.column, {"a bound variable"}, "'" + v.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::vector<std::pair<Quant, std::string>>* vars_ = nullptr;
};

inline Sentence parse(const std::string& text) { return Parser(text).parse_sentence(); }

// ---------------------------------------------------------------------------
// Printer (minimal parentheses; prints the canonical form)

namespace detail {

inline int prec(const Formula& f) {
  switch (f.kind) {
    case Formula::Iff: return 1;
    case Formula::Implies: return 2;
    case Formula::Or: return 3;
    case Formula::And: return 4;
    case Formula::Not: return 5;
    default: return 6;
  }
}

inline std::string print_term(const Sentence& s, const Term& t) {
  if (t.kind == Term::Var) return s.prefix[t.var].second;
  std::string r = print_term(s, *t.rhs);
  if (t.rhs->kind == Term::Join) r = "(" + r + ")";
  return print_term(s, *t.lhs) + " \\/ " + r;
}

inline std::string print_formula(const Sentence& s, const Formula& f) {
  auto wrap = [&](const Formula& g, bool paren) {
    const std::string t = print_formula(s, g);
    return paren ? "(" + t + ")" : t;
  };
  const int p = prec(f);
  switch (f.kind) {
    case Formula::Leq: return print_term(s, *f.terms[0]) + " <= " + print_term(s, *f.terms[1]);
    case Formula::Sqle: return print_term(s, *f.terms[0]) + " [= " + print_term(s, *f.terms[1]);
    case Formula::Eq: return print_term(s, *f.terms[0]) + " = " + print_term(s, *f.terms[1]);
    case Formula::Rel:
      return "R(" + print_term(s, *f.terms[0]) + "; " + print_term(s, *f.terms[1]) + ", " +
             print_term(s, *f.terms[2]) + ")";
    // Infix atoms keep their parentheses under ! for readability.
    case Formula::Not: return "!" + wrap(*f.lhs, f.lhs->kind != Formula::Not && f.lhs->kind != Formula::Rel);
    case Formula::Implies:
      return wrap(*f.lhs, prec(*f.lhs) <= p) + " -> " + wrap(*f.rhs, prec(*f.rhs) < p);
    default: {
      const char* op = f.kind == Formula::Iff ? " <-> " : f.kind == Formula::Or ? " | " : " & ";
      return wrap(*f.lhs, prec(*f.lhs) < p) + op + wrap(*f.rhs, prec(*f.rhs) <= p);
    }
  }
}

}  // namespace detail

inline std::string print(const Sentence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.prefix.size(); ++i) {
    if (i == 0 || s.prefix[i].first != s.prefix[i - 1].first) {
      if (i) out += " . ";
      out += s.prefix[i].first == Quant::Forall ? "forall" : "exists";
    }
    out += " " + s.prefix[i].second;
  }
  return out + " . " + detail::print_formula(s, *s.matrix);
}

// ---------------------------------------------------------------------------
// Models and evaluation

/// A finite model seen through the symbols a sentence may use; absent
/// symbols are empty functions.
struct Model {
  std::size_t size = 0;
  std::function<bool(std::size_t, std::size_t)> leq;
  std::function<bool(std::size_t, std::size_t)> sqle;
  std::function<std::size_t(std::size_t, std::size_t)> join;
  std::function<bool(std::size_t, std::size_t, std::size_t)> rel;
};

template <class M>
Model model_of(const M& m) {
  Model out;
  out.size = m.size();
  out.leq = [&m](std::size_t a, std::size_t b) { return m.leq(a, b); };
  if constexpr (requires { m.sqle(std::size_t{}, std::size_t{}); })
    out.sqle = [&m](std::size_t a, std::size_t b) { return m.sqle(a, b); };
  if constexpr (requires { m.join(std::size_t{}, std::size_t{}); })
    out.join = [&m](std::size_t a, std::size_t b) { return m.join(a, b); };
  if constexpr (requires { m.r(std::size_t{}, std::size_t{}, std::size_t{}); })
    out.rel = [&m](std::size_t a, std::size_t b, std::size_t c) { return m.r(a, b, c); };
  return out;
}

struct EvalResult {
  bool truth = false;
  /// Values of the leading quantifier block: a counterexample when it is
  /// universal and the sentence fails, a satisfying choice when it is
  /// existential and the sentence holds; empty otherwise.
  std::vector<std::size_t> witness;
};

class Evaluator {
 public:
  Evaluator(const Sentence& s, const Model& m) : s_(s), m_(m), env_(s.prefix.size(), 0) {
    const Signature sig = signature_of(s);
    if (sig.join && !m.join) throw make_error("SignatureMismatch", {}, "model has no join");
    if (sig.sqle && !m.sqle) throw make_error("SignatureMismatch", {}, "model has no [=");
    if (sig.rel && !m.rel) throw make_error("SignatureMismatch", {}, "model has no R");
  }

  EvalResult run() {
    const std::size_t k = s_.leading_block();
    const bool universal = s_.prefix[0].first == Quant::Forall;
    EvalResult r;
    r.truth = universal;
    std::vector<std::size_t> tuple(k, 0);
    if (m_.size == 0) return r;
    while (true) {
      for (std::size_t i = 0; i < k; ++i) env_[i] = tuple[i];
      const bool v = from(k);
      if (v != universal) {
        r.truth = v;
        r.witness = tuple;
        return r;
      }
      std::size_t i = k;
      while (i > 0 && ++tuple[i - 1] == m_.size) tuple[--i] = 0;
      if (i == 0) return r;
    }
  }

  /// Evaluates the sentence with the leading block fixed to the given values.
  bool replay(const std::vector<std::size_t>& witness) {
    const std::size_t k = s_.leading_block();
    if (witness.size() != k) throw make_error("SizeMismatch", {k, witness.size()});
    for (std::size_t i = 0; i < k; ++i) env_[i] = witness[i];
    return from(k);
  }

 private:
  bool from(std::size_t i) {
    if (i == s_.prefix.size()) return eval(*s_.matrix);
    const bool universal = s_.prefix[i].first == Quant::Forall;
    for (std::size_t v = 0; v < m_.size; ++v) {
      env_[i] = v;
      if (from(i + 1) != universal) return !universal;
    }
    return universal;
  }

  std::size_t term(const Term& t) const {
    return t.kind == Term::Var ? env_[t.var] : m_.join(term(*t.lhs), term(*t.rhs));
  }

  bool eval(const Formula& f) const {
    switch (f.kind) {
      case Formula::Leq: return m_.leq(term(*f.terms[0]), term(*f.terms[1]));
      case Formula::Sqle: return m_.sqle(term(*f.terms[0]), term(*f.terms[1]));
      case Formula::Eq: return term(*f.terms[0]) == term(*f.terms[1]);
      case Formula::Rel: return m_.rel(term(*f.terms[0]), term(*f.terms[1]), term(*f.terms[2]));
      case Formula::Not: return !eval(*f.lhs);
      case Formula::And: return eval(*f.lhs) && eval(*f.rhs);
      case Formula::Or: return eval(*f.lhs) || eval(*f.rhs);
      case Formula::Implies: return !eval(*f.lhs) || eval(*f.rhs);
      case Formula::Iff: return eval(*f.lhs) == eval(*f.rhs);
    }
    return false;
  }

  const Sentence& s_;
  const Model& m_;
  std::vector<std::size_t> env_;
};

inline EvalResult evaluate(const Sentence& s, const Model& m) { return Evaluator(s, m).run(); }

template <class M>
EvalResult evaluate(const Sentence& s, const M& m) {
  const Model model = model_of(m);
  return Evaluator(s, model).run();
}

// ---------------------------------------------------------------------------
// Builtins. Variables of the axiom sentences are listed in the same order as
// the witnesses of the native law checkers.

struct Builtin {
  const char* name;
  const char* text;
};

inline const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> list = {
      {"S1", "forall a b . a <= b -> a [= b"},
      {"S2", "forall a b c . a [= b & b [= c -> a [= c"},
      {"S3", "forall a a1 b . a [= b & a1 [= b -> a \\/ a1 [= b"},
      {"S4", "forall a . a [= a"},
      {"S5", "forall a b c . a [= b & b <= c -> a [= c"},
      {"S6", "forall a b c . a <= b & b [= c -> a [= c"},
      {"S7", "forall a b a1 b1 . a [= b & a1 [= b1 -> a \\/ a1 [= b \\/ b1"},
      {"S8", "forall a b . a [= b -> a \\/ b [= b"},
      {"S9", "forall a b a1 . a [= b -> a \\/ a1 [= b \\/ a1"},
      {"principal", "forall b . exists c . forall a . a [= b <-> a <= c"},
      {"additive",
       "forall c d . exists a1 a2 . forall a3 . (a1 [= c <-> a1 <= c) & (a2 [= d <-> a2 <= d) -> "
       "(a3 [= c \\/ d <-> a3 <= c \\/ d)"},
      {"union-closed",
       "forall x y z . exists w . x \\/ y < z & z [= x \\/ y -> (x < w & w [= x) | (y < w & w [= y)"},
      {"ternary-additive", "forall a b c . R(a; b, c) <-> R(a; b \\/ c, b \\/ c)"},
      {"cech-poset", "forall a b c . (a <= b -> a [= b) & (a [= b & b <= c -> a [= c) & (a <= b & b [= c -> a [= c)"},
      {"cech-semilattice",
       "forall a b c a1 . (a <= b -> a [= b) & (a [= b & b <= c -> a [= c) & (a <= b & b [= c -> a [= c) & "
       "(a [= b & a1 [= b -> a \\/ a1 [= b)"},
  };
  return list;
}

inline Sentence builtin(const std::string& name) {
  for (const auto& b : builtins())
    if (name == b.name) return parse(b.text);
  throw make_error("UnknownBuiltin", {}, name);
}

}  // namespace spectopo::fo
