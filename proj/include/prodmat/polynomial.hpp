#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace prodmat {

using BigInt = boost::multiprecision::cpp_int;

enum class VarFamily : std::uint8_t { X, Y, Named };

/// A polynomial variable: x[k] with k >= 0, y[k] with k >= 1, or a free named
/// scalar such as t. The identifier "z" is reserved for the series variable
/// and can never be a polynomial variable.
class VarId {
 public:
  static VarId x(unsigned index) { return VarId(VarFamily::X, index, {}); }

  static VarId y(unsigned index) {
    if (index == 0) throw std::invalid_argument("y indices start at 1");
    return VarId(VarFamily::Y, index, {});
  }

  static VarId named(std::string name) {
    if (name.empty()) throw std::invalid_argument("variable name is empty");
    if (name == "z")
      throw std::invalid_argument("z is reserved for the series variable");
    if ((name[0] == 'x' || name[0] == 'y') && name.size() > 1) {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i)
        digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
      if (digits)
        throw std::invalid_argument("'" + name +
                                    "' is reserved for the indexed families");
    }
    return VarId(VarFamily::Named, 0, std::move(name));
  }

  VarFamily family() const { return family_; }
  unsigned index() const { return index_; }
  const std::string& name() const { return name_; }

  std::string str() const {
    switch (family_) {
      case VarFamily::X: return "x" + std::to_string(index_);
      case VarFamily::Y: return "y" + std::to_string(index_);
      default: return name_;
    }
  }

  friend auto operator<=>(const VarId&, const VarId&) = default;

 private:
  VarId(VarFamily family, unsigned index, std::string name)
      : family_(family), index_(index), name_(std::move(name)) {}

  VarFamily family_;
  unsigned index_;
  std::string name_;  // empty unless Named
};

/// Product of variables with positive exponents; the empty product is 1.
class Monomial {
 public:
  Monomial() = default;

  static Monomial unit() { return {}; }

  static Monomial var(const VarId& v, unsigned exponent = 1) {
    Monomial m;
    if (exponent > 0) m.exps_.emplace(v, exponent);
    return m;
  }

  bool is_unit() const { return exps_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [v, e] : exps_) d += e;
    return d;
  }

  unsigned exponent(const VarId& v) const {
    auto it = exps_.find(v);
    return it == exps_.end() ? 0u : it->second;
  }

  const std::map<VarId, unsigned>& exponents() const { return exps_; }

  Monomial times(const Monomial& other) const {
    Monomial out = *this;
    for (const auto& [v, e] : other.exps_) out.exps_[v] += e;
    return out;
  }

  /// Exact quotient, or nullopt when `other` does not divide this monomial.
  std::optional<Monomial> divided_by(const Monomial& other) const {
    Monomial out = *this;
    for (const auto& [v, e] : other.exps_) {
      auto it = out.exps_.find(v);
      if (it == out.exps_.end() || it->second < e) return std::nullopt;
      if (it->second == e)
        out.exps_.erase(it);
      else
        it->second -= e;
    }
    return out;
  }

  std::string str() const {
    if (exps_.empty()) return "1";
    std::string out;
    for (const auto& [v, e] : exps_) {
      if (!out.empty()) out += "*";
      out += v.str();
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  friend struct MonomialOrder;
  std::map<VarId, unsigned> exps_;
};

/// Canonical term order: lower total degree first; within a degree the
/// monomial with the higher power of the earliest variable comes first.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    auto ia = a.exps_.begin(), ib = b.exps_.begin();
    while (ia != a.exps_.end() && ib != b.exps_.end()) {
      if (ia->first != ib->first) return ia->first < ib->first;
      if (ia->second != ib->second) return ia->second > ib->second;
      ++ia;
      ++ib;
    }
    return false;  // equal degree with identical maps: not less
  }
};

class Substitution;

/// Sparse multivariate polynomial with exact integer coefficients. Zero
/// coefficients are never stored; the zero polynomial has no terms.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, BigInt, MonomialOrder>;

  Polynomial() = default;  // zero

  static Polynomial zero() { return {}; }
  static Polynomial one() { return constant(1); }

  static Polynomial constant(BigInt c) {
    Polynomial p;
    if (c != 0) p.terms_.emplace(Monomial::unit(), std::move(c));
    return p;
  }

  static Polynomial monomial(BigInt coeff, const Monomial& m) {
    Polynomial p;
    if (coeff != 0) p.terms_.emplace(m, std::move(coeff));
    return p;
  }

  static Polynomial variable(const VarId& v) {
    return monomial(1, Monomial::var(v));
  }

  static Polynomial x(unsigned k) { return variable(VarId::x(k)); }
  static Polynomial y(unsigned k) { return variable(VarId::y(k)); }
  static Polynomial named(const std::string& s) {
    return variable(VarId::named(s));
  }

  bool is_zero() const { return terms_.empty(); }

  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_unit() &&
           terms_.begin()->second == 1;
  }

  /// The value when the polynomial is constant, nullopt otherwise.
  std::optional<BigInt> as_constant() const {
    if (terms_.empty()) return BigInt(0);
    if (terms_.size() == 1 && terms_.begin()->first.is_unit())
      return terms_.begin()->second;
    return std::nullopt;
  }

  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  BigInt coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }

  Polynomial& operator+=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    a += b;
    return a;
  }

  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    a -= b;
    return a;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma.times(mb), ca * cb);
    return out;
  }

  Polynomial& operator*=(const Polynomial& other) {
    *this = *this * other;
    return *this;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(unsigned e) const {
    Polynomial out = Polynomial::one();
    for (unsigned i = 0; i < e; ++i) out *= *this;
    return out;
  }

  Polynomial substituted(const Substitution& sub) const;

  /// Terms whose exponent of v is exactly k, with v^k removed.
  Polynomial coeff_of(const VarId& v, unsigned k) const {
    Polynomial out;
    Monomial vk = Monomial::var(v, k);
    for (const auto& [m, c] : terms_) {
      if (m.exponent(v) != k) continue;
      out.add_term(*m.divided_by(vk), c);
    }
    return out;
  }

  /// Exact division by c*m; throws when any term is not divisible.
  Polynomial divided_exact(const BigInt& c, const Monomial& m) const {
    if (c == 0) throw std::domain_error("division by zero");
    Polynomial out;
    for (const auto& [tm, tc] : terms_) {
      auto q = tm.divided_by(m);
      if (!q || tc % c != 0)
        throw std::domain_error("polynomial division is not exact");
      out.add_term(*q, tc / c);
    }
    return out;
  }

  Polynomial divided_by_int(const BigInt& c) const {
    return divided_exact(c, Monomial::unit());
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      BigInt a = c;
      const bool neg = a < 0;
      if (neg) a = -a;
      std::string piece;
      if (m.is_unit())
        piece = a.str();
      else if (a == 1)
        piece = m.str();
      else
        piece = a.str() + "*" + m.str();
      if (first) {
        out = neg ? "-" + piece : piece;
        first = false;
      } else {
        out += (neg ? " - " : " + ") + piece;
      }
    }
    return out;
  }

  /// Parses the canonical text form: terms joined by +/-, factors joined by
  /// '*', exponents with '^'. Accepts any whitespace between tokens.
  static Polynomial parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    return os << p.str();
  }

 private:
  void add_term(const Monomial& m, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TermMap terms_;
};

/// Simultaneous variable assignment. Whole-family wildcards (all x[k] or all
/// y[k]) are supported; a specific index always wins over its wildcard.
class Substitution {
 public:
  Substitution& set(const VarId& v, Polynomial value) {
    per_var_.insert_or_assign(v, std::move(value));
    return *this;
  }

  Substitution& set_all(VarFamily family, Polynomial value) {
    switch (family) {
      case VarFamily::X: all_x_ = std::move(value); break;
      case VarFamily::Y: all_y_ = std::move(value); break;
      default:
        throw std::invalid_argument("wildcards exist only for x and y");
    }
    return *this;
  }

  const Polynomial* lookup(const VarId& v) const {
    auto it = per_var_.find(v);
    if (it != per_var_.end()) return &it->second;
    if (v.family() == VarFamily::X && all_x_) return &*all_x_;
    if (v.family() == VarFamily::Y && all_y_) return &*all_y_;
    return nullptr;
  }

  bool empty() const {
    return per_var_.empty() && !all_x_ && !all_y_;
  }

 private:
  std::map<VarId, Polynomial> per_var_;
  std::optional<Polynomial> all_x_, all_y_;
};

inline Polynomial Polynomial::substituted(const Substitution& sub) const {
  if (sub.empty()) return *this;
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Monomial untouched;
    Polynomial mapped = Polynomial::one();
    bool any = false;
    for (const auto& [v, e] : m.exponents()) {
      if (const Polynomial* image = sub.lookup(v)) {
        mapped *= image->pow(e);
        any = true;
      } else {
        untouched = untouched.times(Monomial::var(v, e));
      }
    }
    Polynomial base = Polynomial::monomial(c, untouched);
    out += any ? base * mapped : base;
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Polynomial run() {
    skip_ws();
    Polynomial out = parse_signed_term(true);
    skip_ws();
    while (pos_ < text_.size()) {
      char op = text_[pos_];
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      ++pos_;
      skip_ws();
      Polynomial t = parse_term();
      out += op == '-' ? -t : t;
      skip_ws();
    }
    return out;
  }

 private:
  Polynomial parse_signed_term(bool allow_minus) {
    if (allow_minus && pos_ < text_.size() && text_[pos_] == '-') {
      ++pos_;
      skip_ws();
      return -parse_term();
    }
    return parse_term();
  }

  Polynomial parse_term() {
    Polynomial out = parse_factor();
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      skip_ws();
      out *= parse_factor();
      skip_ws();
    }
    return out;
  }

  Polynomial parse_factor() {
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)))
      return Polynomial::constant(parse_int());
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
      fail("expected a number or a variable");
    VarId v = parse_var();
    unsigned e = 1;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      BigInt raw = parse_int();
      if (raw <= 0 || raw > 1'000'000) fail("exponent out of range");
      e = raw.convert_to<unsigned>();
    }
    return Polynomial::monomial(1, Monomial::var(v, e));
  }

  VarId parse_var() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    std::string word(text_.substr(start, pos_ - start));
    if ((word[0] == 'x' || word[0] == 'y') && word.size() > 1) {
      std::string rest = word.substr(1);
      bool digits = !rest.empty();
      for (char d : rest)
        digits = digits && std::isdigit(static_cast<unsigned char>(d));
      if (digits) {
        unsigned idx = static_cast<unsigned>(std::stoul(rest));
        return word[0] == 'x' ? VarId::x(idx) : VarId::y(idx);
      }
    }
    return VarId::named(word);
  }

  BigInt parse_int() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected a number");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("polynomial parse error at offset " +
                                std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial Polynomial::parse(std::string_view text) {
  return detail::PolyParser(text).run();
}

}  // namespace prodmat
