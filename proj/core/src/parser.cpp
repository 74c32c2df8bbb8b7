// Recursive-descent parser for the formula grammar:
//
//   formula    := quantified | iff
//   quantified := ("forall" | "exists") IDENT "." formula
//   iff        := implies { "<->" implies }
//   implies    := or [ "->" implies ]
//   or         := and { "|" and }
//   and        := unary { "&" unary }
//   unary      := "!" unary | "(" formula ")" | atom | "true" | "false" | quantified
//   atom       := IDENT REL IDENT
//   REL        := "<" | "E" | "<1" | "<2" | "p1" | "p2" | "="

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "limlaw/errors.hpp"
#include "limlaw/formula.hpp"

namespace limlaw {
namespace {

enum class Tok {
  ident,
  rel,
  equals,
  kw_forall,
  kw_exists,
  kw_true,
  kw_false,
  dot,
  lparen,
  rparen,
  bang,
  amp,
  bar,
  arrow,
  iff,
  end,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      std::string word(s.substr(start, i - start));
      Tok kind = Tok::ident;
      if (word == "forall") kind = Tok::kw_forall;
      else if (word == "exists") kind = Tok::kw_exists;
      else if (word == "true") kind = Tok::kw_true;
      else if (word == "false") kind = Tok::kw_false;
      else if (word == "E" || word == "p1" || word == "p2") kind = Tok::rel;
      out.push_back({kind, std::move(word), start});
      continue;
    }
    if (s.compare(i, 3, "<->") == 0) {
      out.push_back({Tok::iff, "<->", start});
      i += 3;
      continue;
    }
    if (s.compare(i, 2, "->") == 0) {
      out.push_back({Tok::arrow, "->", start});
      i += 2;
      continue;
    }
    if (c == '<') {
      if (i + 1 < s.size() && (s[i + 1] == '1' || s[i + 1] == '2')) {
        out.push_back({Tok::rel, std::string(s.substr(i, 2)), start});
        i += 2;
      } else {
        out.push_back({Tok::rel, "<", start});
        ++i;
      }
      continue;
    }
    Tok kind = Tok::end;
    switch (c) {
      case '=': kind = Tok::equals; break;
      case '.': kind = Tok::dot; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '!': kind = Tok::bang; break;
      case '&': kind = Tok::amp; break;
      case '|': kind = Tok::bar; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature* signature)
      : tokens_(lex(text)), signature_(signature) {}

  Formula parse() {
    Formula f = formula();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().pos);
  }
  void expect(Tok kind, const char* what) {
    if (!accept(kind)) {
      fail(std::string("expected ") + what +
           (peek().kind == Tok::end ? " at end of input" : ", found '" + peek().text + "'"));
    }
  }

  Formula formula() { return iff(); }

  Formula quantified() {
    const bool is_exists = next().kind == Tok::kw_exists;
    if (peek().kind != Tok::ident) fail("expected a variable after quantifier");
    std::string var = next().text;
    expect(Tok::dot, "'.'");
    Formula body = formula();
    return is_exists ? Formula::exists(std::move(var), std::move(body))
                     : Formula::forall(std::move(var), std::move(body));
  }

  Formula iff() {
    Formula f = implies();
    while (accept(Tok::iff)) f = Formula::biconditional(f, implies());
    return f;
  }

  Formula implies() {
    Formula f = disjunction();
    if (accept(Tok::arrow)) return Formula::implication(f, implies());
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::bar)) f = Formula::disjunction(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::amp)) f = Formula::conjunction(f, unary());
    return f;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::bang:
        next();
        return Formula::negation(unary());
      case Tok::lparen: {
        next();
        Formula f = formula();
        expect(Tok::rparen, "')'");
        return f;
      }
      case Tok::kw_true:
        next();
        return Formula::truth();
      case Tok::kw_false:
        next();
        return Formula::falsity();
      case Tok::kw_exists:
      case Tok::kw_forall:
        return quantified();
      case Tok::ident:
        return atom();
      case Tok::end:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + peek().text + "'");
    }
  }

  Formula atom() {
    std::string lhs = next().text;
    const Token& op = peek();
    if (op.kind == Tok::equals) {
      next();
      return Formula::equals(std::move(lhs), variable_operand());
    }
    if (op.kind != Tok::rel) fail("expected a relation symbol after '" + lhs + "'");
    const std::size_t op_pos = op.pos;
    const Relation rel = *relation_from_string(next().text);
    if (signature_ != nullptr && !signature_->contains(rel)) {
      throw ParseError("relation symbol '" + std::string(to_string(rel)) + "' is not in the " +
                           std::string(to_string(signature_->theory())) + " signature",
                       op_pos);
    }
    return Formula::atom(rel, std::move(lhs), variable_operand());
  }

  std::string variable_operand() {
    if (peek().kind != Tok::ident) fail("expected a variable");
    return next().text;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature* signature_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& signature) {
  return Parser(text, &signature).parse();
}

Formula parse_formula(std::string_view text) { return Parser(text, nullptr).parse(); }

Formula parse_sentence(std::string_view text, const Signature& signature) {
  Formula f = parse_formula(text, signature);
  const auto free = free_variables(f);
  if (!free.empty()) {
    std::string names;
    for (const auto& v : free) names += (names.empty() ? "" : ", ") + v;
    throw InputError("formula is not a sentence; free variables: " + names);
  }
  return f;
}

}  // namespace limlaw
