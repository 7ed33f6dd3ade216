#pragma once

#include <cctype>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prodmat/succession_rule.hpp"

namespace prodmat {

/// Syntax or validation error in rule text, with 1-based position.
class RuleParseError : public std::runtime_error {
 public:
  RuleParseError(unsigned line, unsigned col, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + what),
        line_(line),
        col_(col) {}

  unsigned line() const { return line_; }
  unsigned col() const { return col_; }

 private:
  unsigned line_, col_;
};

namespace detail {

struct RuleToken {
  enum class Kind {
    Ident, Int, LParen, RParen, LBracket, RBracket,
    Semi, Colon, Arrow, DotDot, Plus, Minus, Star, End
  };
  Kind kind;
  std::string text;
  BigInt value;
  unsigned line = 1, col = 1;
};

inline const char* token_name(RuleToken::Kind k) {
  using K = RuleToken::Kind;
  switch (k) {
    case K::Ident: return "identifier";
    case K::Int: return "integer";
    case K::LParen: return "'('";
    case K::RParen: return "')'";
    case K::LBracket: return "'['";
    case K::RBracket: return "']'";
    case K::Semi: return "';'";
    case K::Colon: return "':'";
    case K::Arrow: return "'->'";
    case K::DotDot: return "'..'";
    case K::Plus: return "'+'";
    case K::Minus: return "'-'";
    case K::Star: return "'*'";
    default: return "end of input";
  }
}

inline std::vector<RuleToken> lex_rule(std::string_view text) {
  std::vector<RuleToken> out;
  unsigned line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    RuleToken tok;
    tok.line = line;
    tok.col = col;
    using K = RuleToken::Kind;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      tok.kind = K::Int;
      tok.text = std::string(text.substr(i, j - i));
      tok.value = BigInt(tok.text);
      bump(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      tok.kind = K::Ident;
      tok.text = std::string(text.substr(i, j - i));
      bump(j - i);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      tok.kind = K::Arrow;
      bump(2);
    } else if (c == '.' && i + 1 < text.size() && text[i + 1] == '.') {
      tok.kind = K::DotDot;
      bump(2);
    } else {
      switch (c) {
        case '(': tok.kind = K::LParen; break;
        case ')': tok.kind = K::RParen; break;
        case '[': tok.kind = K::LBracket; break;
        case ']': tok.kind = K::RBracket; break;
        case ';': tok.kind = K::Semi; break;
        case ':': tok.kind = K::Colon; break;
        case '+': tok.kind = K::Plus; break;
        case '-': tok.kind = K::Minus; break;
        case '*': tok.kind = K::Star; break;
        default:
          throw RuleParseError(line, col,
                               std::string("unexpected character '") + c + "'");
      }
      bump(1);
    }
    out.push_back(std::move(tok));
  }
  RuleToken end;
  end.kind = RuleToken::Kind::End;
  end.line = line;
  end.col = col;
  out.push_back(std::move(end));
  return out;
}

/// Interval with optional infinities, for the static label-positivity check.
struct Range {
  long long lo = 0, hi = 0;
  bool lo_unbounded = false, hi_unbounded = false;

  static Range point(long long v) { return {v, v, false, false}; }
  static Range at_least(long long v) { return {v, 0, false, true}; }
};

inline Range range_of(const LinearExpr& e,
                      const std::map<std::string, Range>& env) {
  Range out = Range::point(e.constant_part());
  for (const auto& [sym, coeff] : e.coefficients()) {
    const Range& r = env.at(sym);
    if (coeff > 0) {
      if (r.lo_unbounded) out.lo_unbounded = true;
      else out.lo += coeff * r.lo;
      if (r.hi_unbounded) out.hi_unbounded = true;
      else out.hi += coeff * r.hi;
    } else {
      if (r.hi_unbounded) out.lo_unbounded = true;
      else out.lo += coeff * r.hi;
      if (r.lo_unbounded) out.hi_unbounded = true;
      else out.hi += coeff * r.lo;
    }
  }
  return out;
}

class RuleParser {
 public:
  explicit RuleParser(std::string_view text) : tokens_(lex_rule(text)) {}

  SuccessionRule run() {
    expect_keyword("axiom");
    expect(K::LParen);
    BigInt axiom_label = expect(K::Int).value;
    if (axiom_label < 1) fail_at(prev(), "labels must be positive");
    expect(K::Semi);
    WeightExpr axiom_weight = parse_wexpr({});
    expect(K::RParen);

    std::vector<Production> productions;
    std::set<long long> literal_patterns;
    bool have_symbolic = false;
    while (peek().kind != K::End) {
      Production p = parse_production();
      if (p.literal) {
        if (!literal_patterns.insert(*p.literal).second)
          fail_at(prev(), "duplicate pattern (" + std::to_string(*p.literal) +
                              ")");
      } else {
        if (have_symbolic)
          fail_at(prev(), "more than one symbolic pattern");
        have_symbolic = true;
      }
      productions.push_back(std::move(p));
    }
    if (productions.empty())
      fail_at(peek(), "expected at least one production");

    check_label_positivity(productions, literal_patterns);

    try {
      return SuccessionRule(axiom_label.convert_to<long long>(),
                            std::move(axiom_weight), std::move(productions));
    } catch (const std::invalid_argument& e) {
      throw RuleParseError(1, 1, e.what());
    } catch (const std::domain_error& e) {
      // bad family index in the axiom weight
      throw RuleParseError(1, 1, e.what());
    }
  }

 private:
  using K = RuleToken::Kind;

  Production parse_production() {
    expect_keyword("rule");
    expect(K::LParen);
    Production p;
    if (peek().kind == K::Int) {
      BigInt lit = next().value;
      if (lit < 1) fail_at(prev(), "labels must be positive");
      p.literal = lit.convert_to<long long>();
    } else if (peek().kind == K::Ident) {
      p.symbol = next().text;
      if (is_keyword(p.symbol))
        fail_at(prev(), "'" + p.symbol + "' cannot be a pattern symbol");
    } else {
      fail_at(peek(), "expected integer or identifier pattern");
    }
    expect(K::RParen);
    expect(K::Arrow);

    std::set<std::string> bound;
    if (!p.literal) bound.insert(p.symbol);
    while (is_item_start()) p.items.push_back(parse_item(bound));
    if (p.items.empty()) fail_at(peek(), "expected at least one successor");
    return p;
  }

  bool is_item_start() {
    const RuleToken& t = peek();
    return t.kind == K::LParen || (t.kind == K::Ident && t.text == "for");
  }

  RuleItem parse_item(std::set<std::string> bound) {
    RuleItem item;
    if (peek().kind == K::Ident && peek().text == "for") {
      next();
      item.is_loop = true;
      item.loop_var = expect(K::Ident).text;
      if (is_keyword(item.loop_var) || bound.contains(item.loop_var))
        fail_at(prev(), "'" + item.loop_var + "' cannot be a loop variable");
      expect_keyword("in");
      item.lo = parse_iexpr(bound);
      expect(K::DotDot);
      item.hi = parse_iexpr(bound);
      expect(K::Colon);
      bound.insert(item.loop_var);
    }
    expect(K::LParen);
    item.label = parse_iexpr(bound);
    expect(K::Semi);
    item.weight = parse_wexpr(bound);
    expect(K::RParen);
    return item;
  }

  // iexpr := iterm (('+'|'-') iterm)* ; iterm := INT ['*' IDENT] | IDENT
  LinearExpr parse_iexpr(const std::set<std::string>& bound) {
    LinearExpr out = parse_iterm(bound);
    while (peek().kind == K::Plus || peek().kind == K::Minus) {
      bool minus = next().kind == K::Minus;
      LinearExpr t = parse_iterm(bound);
      out += minus ? -t : t;
    }
    return out;
  }

  LinearExpr parse_iterm(const std::set<std::string>& bound) {
    if (peek().kind == K::Int) {
      BigInt v = next().value;
      if (v > std::numeric_limits<long long>::max())
        fail_at(prev(), "integer too large for an index expression");
      long long c = v.convert_to<long long>();
      if (peek().kind == K::Star) {
        next();
        std::string sym = expect(K::Ident).text;
        require_bound(sym, bound);
        return LinearExpr::symbol(sym, c);
      }
      return LinearExpr::constant(c);
    }
    if (peek().kind == K::Ident) {
      std::string sym = next().text;
      require_bound(sym, bound);
      return LinearExpr::symbol(sym);
    }
    fail_at(peek(), "expected integer or identifier");
  }

  // wexpr := wterm (('+'|'-') wterm)*
  WeightExpr parse_wexpr(const std::set<std::string>& bound) {
    std::vector<WeightExpr::Term> terms;
    terms.push_back(parse_wterm(bound, false));
    while (peek().kind == K::Plus || peek().kind == K::Minus) {
      bool minus = next().kind == K::Minus;
      terms.push_back(parse_wterm(bound, minus));
    }
    return WeightExpr::from_terms(std::move(terms));
  }

  WeightExpr::Term parse_wterm(const std::set<std::string>& bound,
                               bool negative) {
    WeightExpr::Term term;
    term.negative = negative;
    term.factors.push_back(parse_wfactor(bound));
    while (peek().kind == K::Star) {
      next();
      term.factors.push_back(parse_wfactor(bound));
    }
    return term;
  }

  WeightFactor parse_wfactor(const std::set<std::string>& bound) {
    const RuleToken& t = peek();
    if (t.kind == K::Int) return WeightFactor::make_int(next().value);
    if (t.kind == K::LParen) {
      next();
      WeightExpr inner = parse_wexpr(bound);
      expect(K::RParen);
      return WeightFactor::make_group(std::move(inner));
    }
    if (t.kind != K::Ident)
      fail_at(t, "expected integer, identifier, x[...], y[...] or '('");
    std::string name = next().text;
    if (peek().kind == K::LBracket) {
      if (name != "x" && name != "y")
        fail_at(prev(), "only x and y take an index");
      next();
      LinearExpr idx = parse_iexpr(bound);
      expect(K::RBracket);
      return WeightFactor::make_indexed(
          name == "x" ? VarFamily::X : VarFamily::Y, std::move(idx));
    }
    if (name == "z") fail_at(prev(), "z is reserved for the series variable");
    if (is_keyword(name)) fail_at(prev(), "'" + name + "' is a keyword");
    if ((name[0] == 'x' || name[0] == 'y') && name.size() > 1) {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i)
        digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
      if (digits)
        fail_at(prev(), "write " + std::string(1, name[0]) + "[" +
                            name.substr(1) + "] for indexed weights");
    }
    return WeightFactor::make_ident(std::move(name));
  }

  /// Static check: every label expression stays positive over the pattern's
  /// label range and the loop variables' ranges.
  void check_label_positivity(const std::vector<Production>& productions,
                              const std::set<long long>& literals) {
    long long symbolic_min = 1;
    while (literals.contains(symbolic_min)) ++symbolic_min;
    for (const auto& p : productions) {
      std::map<std::string, detail::Range> env;
      if (!p.literal) env[p.symbol] = detail::Range::at_least(symbolic_min);
      for (const auto& item : p.items) {
        std::map<std::string, detail::Range> local = env;
        if (item.is_loop) {
          detail::Range lo = detail::range_of(item.lo, local);
          detail::Range hi = detail::range_of(item.hi, local);
          detail::Range var;
          var.lo = lo.lo;
          var.lo_unbounded = lo.lo_unbounded;
          var.hi = hi.hi;
          var.hi_unbounded = hi.hi_unbounded;
          local[item.loop_var] = var;
        }
        detail::Range r = detail::range_of(item.label, local);
        if (r.lo_unbounded || r.lo < 1)
          throw RuleParseError(
              1, 1, "label expression '" + item.label.str() +
                        "' can be non-positive");
      }
    }
  }

  void require_bound(const std::string& sym, const std::set<std::string>& bound) {
    if (!bound.contains(sym))
      fail_at(prev(), "unbound identifier '" + sym + "'");
  }

  static bool is_keyword(const std::string& s) {
    return s == "axiom" || s == "rule" || s == "for" || s == "in";
  }

  const RuleToken& peek() const { return tokens_[pos_]; }
  const RuleToken& prev() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }

  const RuleToken& next() {
    const RuleToken& t = tokens_[pos_];
    if (t.kind != K::End) ++pos_;
    return t;
  }

  const RuleToken& expect(K kind) {
    if (peek().kind != kind)
      fail_at(peek(), std::string("expected ") + token_name(kind));
    return next();
  }

  void expect_keyword(const std::string& word) {
    if (peek().kind != K::Ident || peek().text != word)
      fail_at(peek(), "expected '" + word + "'");
    next();
  }

  [[noreturn]] void fail_at(const RuleToken& t, const std::string& what) const {
    std::string got = t.kind == K::End
                          ? std::string("end of input")
                          : t.kind == K::Ident || t.kind == K::Int
                                ? "'" + t.text + "'"
                                : token_name(t.kind);
    throw RuleParseError(t.line, t.col, what + ", got " + got);
  }

  std::vector<RuleToken> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SuccessionRule parse_rule(std::string_view text) {
  return detail::RuleParser(text).run();
}

/// Source texts of the built-in rules.
inline const char* builtin_rule_text(std::string_view name) {
  if (name == "dyck-main")
    return "axiom (1; x[0])\n"
           "rule (k) ->\n"
           "  for l in 1..k : (l; x[k-l+1] * y[l])\n"
           "  (k+1; x[0])\n";
  if (name == "dyck-high-peak")
    return "axiom (1; 1)\n"
           "rule (k) ->\n"
           "  for l in 1..k : (l; y[l])\n"
           "  (k+1; 1)\n";
  if (name == "fibonacci")
    return "axiom (1; 1)\n"
           "rule (1) -> (2; 1)\n"
           "rule (2) -> (1; 1) (2; 1)\n";
  if (name == "fibonacci-poly")
    return "axiom (1; 1)\n"
           "rule (1) -> (2; 1)\n"
           "rule (2) -> (1; x) (2; 1)\n";
  throw std::invalid_argument("unknown builtin rule '" + std::string(name) +
                              "'");
}

inline SuccessionRule builtin_rule(std::string_view name) {
  return parse_rule(builtin_rule_text(name));
}

}  // namespace prodmat
