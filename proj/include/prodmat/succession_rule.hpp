#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prodmat/production_matrix.hpp"

namespace prodmat {

/// Linear integer expression over bound symbols: constant + sum of
/// coefficient*symbol. Kept normalized (no zero coefficients), so structural
/// equality is semantic equality.
class LinearExpr {
 public:
  LinearExpr() = default;

  static LinearExpr constant(long long c) {
    LinearExpr e;
    e.constant_ = c;
    return e;
  }

  static LinearExpr symbol(std::string name, long long coeff = 1) {
    LinearExpr e;
    if (coeff != 0) e.coeffs_.emplace(std::move(name), coeff);
    return e;
  }

  long long constant_part() const { return constant_; }
  const std::map<std::string, long long>& coefficients() const {
    return coeffs_;
  }

  bool is_constant() const { return coeffs_.empty(); }

  LinearExpr& operator+=(const LinearExpr& other) {
    constant_ += other.constant_;
    for (const auto& [s, c] : other.coeffs_) {
      auto [it, inserted] = coeffs_.try_emplace(s, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
      }
    }
    return *this;
  }

  LinearExpr operator-() const {
    LinearExpr out;
    out.constant_ = -constant_;
    for (const auto& [s, c] : coeffs_) out.coeffs_.emplace(s, -c);
    return out;
  }

  friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) {
    a += b;
    return a;
  }

  friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) {
    a += -b;
    return a;
  }

  long long eval(const std::map<std::string, long long>& env) const {
    long long out = constant_;
    for (const auto& [s, c] : coeffs_) {
      auto it = env.find(s);
      if (it == env.end())
        throw std::logic_error("unbound symbol '" + s + "' at evaluation");
      out += c * it->second;
    }
    return out;
  }

  /// Compact text form, positive pieces first so it reparses as an iexpr.
  std::string str() const {
    std::string out;
    auto append = [&out](long long c, const std::string& sym) {
      bool neg = c < 0;
      unsigned long long mag = neg ? -(unsigned long long)c : (unsigned long long)c;
      if (out.empty()) {
        if (neg) out += "0-";
      } else {
        out += neg ? "-" : "+";
      }
      if (sym.empty()) {
        out += std::to_string(mag);
      } else {
        if (mag != 1) out += std::to_string(mag) + "*";
        out += sym;
      }
    };
    for (const auto& [s, c] : coeffs_)
      if (c > 0) append(c, s);
    for (const auto& [s, c] : coeffs_)
      if (c < 0) append(c, s);
    if (constant_ != 0 || out.empty()) append(constant_, "");
    return out;
  }

  friend bool operator==(const LinearExpr&, const LinearExpr&) = default;

 private:
  long long constant_ = 0;
  std::map<std::string, long long> coeffs_;
};

class WeightExpr;

/// One multiplicand of a weight term: an integer, an identifier (bound symbol
/// or free scalar), an indexed family variable x[...] / y[...], or a
/// parenthesized subexpression.
struct WeightFactor {
  enum class Kind { Integer, Ident, Indexed, Group };

  Kind kind = Kind::Integer;
  BigInt integer;
  std::string ident;
  VarFamily family = VarFamily::X;  // Indexed only
  LinearExpr index;
  std::shared_ptr<WeightExpr> group;

  static WeightFactor make_int(BigInt v) {
    WeightFactor f;
    f.kind = Kind::Integer;
    f.integer = std::move(v);
    return f;
  }

  static WeightFactor make_ident(std::string name) {
    WeightFactor f;
    f.kind = Kind::Ident;
    f.ident = std::move(name);
    return f;
  }

  static WeightFactor make_indexed(VarFamily family, LinearExpr index) {
    WeightFactor f;
    f.kind = Kind::Indexed;
    f.family = family;
    f.index = std::move(index);
    return f;
  }

  static WeightFactor make_group(WeightExpr inner);

  bool operator==(const WeightFactor& other) const;
};

/// Weight expression: a signed sum of factor products. Terms containing a
/// literal zero factor are dropped when built, so the printed form always
/// starts with a positive piece and round-trips structurally.
class WeightExpr {
 public:
  struct Term {
    bool negative = false;
    std::vector<WeightFactor> factors;
    friend bool operator==(const Term&, const Term&) = default;
  };

  WeightExpr() = default;

  static WeightExpr from_terms(std::vector<Term> terms) {
    WeightExpr e;
    for (auto& t : terms) {
      bool zero = false;
      for (const auto& f : t.factors)
        zero = zero || (f.kind == WeightFactor::Kind::Integer && f.integer == 0);
      if (!zero) e.terms_.push_back(std::move(t));
    }
    return e;
  }

  const std::vector<Term>& terms() const { return terms_; }

  Polynomial eval(const std::map<std::string, long long>& env) const {
    Polynomial out;
    for (const auto& term : terms_) {
      Polynomial p = Polynomial::one();
      for (const auto& f : term.factors) p *= eval_factor(f, env);
      out += term.negative ? -p : p;
    }
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& term : terms_) {
      if (first) {
        if (term.negative) out += "0 - ";
        first = false;
      } else {
        out += term.negative ? " - " : " + ";
      }
      bool first_factor = true;
      for (const auto& f : term.factors) {
        if (!first_factor) out += "*";
        first_factor = false;
        out += factor_str(f);
      }
    }
    return out;
  }

  friend bool operator==(const WeightExpr& a, const WeightExpr& b) {
    return a.terms_ == b.terms_;
  }

 private:
  static Polynomial eval_factor(const WeightFactor& f,
                                const std::map<std::string, long long>& env) {
    switch (f.kind) {
      case WeightFactor::Kind::Integer:
        return Polynomial::constant(f.integer);
      case WeightFactor::Kind::Ident: {
        auto it = env.find(f.ident);
        if (it != env.end()) return Polynomial::constant(it->second);
        return Polynomial::named(f.ident);
      }
      case WeightFactor::Kind::Indexed: {
        long long idx = f.index.eval(env);
        if (f.family == VarFamily::X) {
          if (idx < 0)
            throw std::domain_error("x index evaluated to " +
                                    std::to_string(idx));
          return Polynomial::x(static_cast<unsigned>(idx));
        }
        if (idx < 1)
          throw std::domain_error("y index evaluated to " +
                                  std::to_string(idx));
        return Polynomial::y(static_cast<unsigned>(idx));
      }
      default:
        return f.group->eval(env);
    }
  }

  static std::string factor_str(const WeightFactor& f) {
    switch (f.kind) {
      case WeightFactor::Kind::Integer:
        return f.integer.str();
      case WeightFactor::Kind::Ident:
        return f.ident;
      case WeightFactor::Kind::Indexed:
        return std::string(f.family == VarFamily::X ? "x" : "y") + "[" +
               f.index.str() + "]";
      default:
        return "(" + f.group->str() + ")";
    }
  }

  std::vector<Term> terms_;
};

inline WeightFactor WeightFactor::make_group(WeightExpr inner) {
  WeightFactor f;
  f.kind = Kind::Group;
  f.group = std::make_shared<WeightExpr>(std::move(inner));
  return f;
}

inline bool WeightFactor::operator==(const WeightFactor& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Integer: return integer == other.integer;
    case Kind::Ident: return ident == other.ident;
    case Kind::Indexed: return family == other.family && index == other.index;
    default: return *group == *other.group;
  }
}

/// One successor template: a plain (label; weight) pair or an iterated block
/// "for v in lo..hi : (label; weight)".
struct RuleItem {
  bool is_loop = false;
  std::string loop_var;
  LinearExpr lo, hi;
  LinearExpr label;
  WeightExpr weight;

  std::string str() const {
    std::string body = "(" + label.str() + "; " + weight.str() + ")";
    if (!is_loop) return body;
    return "for " + loop_var + " in " + lo.str() + ".." + hi.str() + " : " +
           body;
  }

  friend bool operator==(const RuleItem&, const RuleItem&) = default;
};

/// A production: a literal label pattern or one bound symbol, plus the list
/// of successor templates.
struct Production {
  std::optional<long long> literal;
  std::string symbol;  // bound pattern symbol when literal is empty
  std::vector<RuleItem> items;

  friend bool operator==(const Production&, const Production&) = default;
};

/// A weighted succession rule: axiom (label; weight) plus productions.
/// Literal-label productions shadow the symbolic one for the same label.
class SuccessionRule {
 public:
  SuccessionRule(long long axiom_label, WeightExpr axiom_weight,
                 std::vector<Production> productions)
      : axiom_label_(axiom_label),
        axiom_weight_expr_(std::move(axiom_weight)),
        axiom_weight_(axiom_weight_expr_.eval({})),
        productions_(std::move(productions)) {}

  long long axiom_label() const { return axiom_label_; }
  const Polynomial& axiom_weight() const { return axiom_weight_; }
  const WeightExpr& axiom_weight_expr() const { return axiom_weight_expr_; }
  const std::vector<Production>& productions() const { return productions_; }

  /// Weighted successor labels of an object labelled `label`.
  std::vector<std::pair<long long, Polynomial>> successors(
      long long label) const {
    const Production* symbolic = nullptr;
    for (const auto& p : productions_) {
      if (p.literal) {
        if (*p.literal == label) return expand(p, label);
      } else {
        symbolic = &p;
      }
    }
    if (!symbolic)
      throw std::domain_error("no production applies to label " +
                              std::to_string(label));
    return expand(*symbolic, label);
  }

  /// Canonical DSL text; parsing it back yields an equal rule.
  std::string print() const {
    std::string out = "axiom (" + std::to_string(axiom_label_) + "; " +
                      axiom_weight_expr_.str() + ")\n";
    for (const auto& p : productions_) {
      out += "rule (" +
             (p.literal ? std::to_string(*p.literal) : p.symbol) + ") ->";
      for (const auto& item : p.items) out += " " + item.str();
      out += "\n";
    }
    return out;
  }

  friend bool operator==(const SuccessionRule& a, const SuccessionRule& b) {
    return a.axiom_label_ == b.axiom_label_ &&
           a.axiom_weight_expr_ == b.axiom_weight_expr_ &&
           a.productions_ == b.productions_;
  }

 private:
  std::vector<std::pair<long long, Polynomial>> expand(const Production& p,
                                                       long long label) const {
    std::map<std::string, long long> env;
    if (!p.literal) env[p.symbol] = label;
    std::vector<std::pair<long long, Polynomial>> out;
    auto emit = [&out](long long l, Polynomial w) {
      if (l < 1)
        throw std::domain_error("successor label evaluated to " +
                                std::to_string(l));
      out.emplace_back(l, std::move(w));
    };
    for (const auto& item : p.items) {
      if (!item.is_loop) {
        emit(item.label.eval(env), item.weight.eval(env));
        continue;
      }
      long long lo = item.lo.eval(env), hi = item.hi.eval(env);
      for (long long v = lo; v <= hi; ++v) {
        env[item.loop_var] = v;
        emit(item.label.eval(env), item.weight.eval(env));
      }
      env.erase(item.loop_var);
    }
    return out;
  }

  long long axiom_label_;
  WeightExpr axiom_weight_expr_;
  Polynomial axiom_weight_;
  std::vector<Production> productions_;
};

/// Weighted node sums per generating-tree level, axiom weight included.
/// Aggregates by label so the cost is polynomial in depth, not tree-sized.
inline std::vector<Polynomial> simulate_levels(const SuccessionRule& rule,
                                               unsigned depth) {
  std::map<long long, Polynomial> level;
  level.emplace(rule.axiom_label(), rule.axiom_weight());
  std::vector<Polynomial> out;
  out.reserve(depth + 1);
  for (unsigned n = 0;; ++n) {
    Polynomial total;
    for (const auto& [label, w] : level) total += w;
    out.push_back(std::move(total));
    if (n == depth) break;
    std::map<long long, Polynomial> next;
    for (const auto& [label, w] : level) {
      if (w.is_zero()) continue;
      for (const auto& [succ, wt] : rule.successors(label)) {
        auto [it, inserted] = next.try_emplace(succ, w * wt);
        if (!inserted) it->second += w * wt;
      }
    }
    level = std::move(next);
  }
  return out;
}

/// Labels reachable from the axiom in at most `depth` growth steps. A matrix
/// window covering this set computes exact level sums up to that depth even
/// for rules whose labels jump by more than one per step.
inline std::set<long long> labels_within_depth(const SuccessionRule& rule,
                                               unsigned depth) {
  std::set<long long> seen{rule.axiom_label()};
  std::set<long long> frontier = seen;
  for (unsigned step = 0; step < depth && !frontier.empty(); ++step) {
    std::set<long long> next;
    for (long long l : frontier)
      for (const auto& [succ, w] : rule.successors(l))
        if (seen.insert(succ).second) next.insert(succ);
    frontier = std::move(next);
  }
  return seen;
}

/// Production matrix of the rule over the `size` smallest reachable labels.
/// Rows/columns are indexed by sorted reachable labels, which must be
/// contiguous; successors falling outside the window are truncated away.
inline ProductionMatrix rule_to_matrix(const SuccessionRule& rule,
                                       unsigned size) {
  if (size == 0) throw std::invalid_argument("matrix size must be positive");
  std::set<long long> seen{rule.axiom_label()};
  std::map<long long, std::vector<std::pair<long long, Polynomial>>> expanded;

  for (;;) {
    auto it = seen.begin();
    std::advance(it, std::min<std::size_t>(seen.size(), size) - 1);
    const long long window_max = *it;
    std::optional<long long> next;
    for (long long l : seen) {
      if (l > window_max) break;
      if (!expanded.contains(l)) {
        next = l;
        break;
      }
    }
    if (!next) break;
    if (expanded.size() > 4ull * size + 64)
      throw std::runtime_error("reachable label set does not stabilize");
    auto succ = rule.successors(*next);
    for (const auto& [l, w] : succ) seen.insert(l);
    expanded.emplace(*next, std::move(succ));
  }

  if (seen.size() < size)
    throw std::runtime_error("rule reaches only " +
                             std::to_string(seen.size()) + " labels");
  std::vector<long long> labels(seen.begin(), seen.end());
  labels.resize(size);
  for (unsigned i = 0; i + 1 < size; ++i)
    if (labels[i + 1] != labels[i] + 1)
      throw std::runtime_error("reachable labels are not contiguous near " +
                               std::to_string(labels[i]));

  const long long base = labels[0];
  std::vector<std::vector<Polynomial>> rows(size,
                                            std::vector<Polynomial>(size));
  for (unsigned i = 0; i < size; ++i) {
    for (const auto& [l, w] : expanded.at(labels[i])) {
      long long j = l - base;
      if (j >= 0 && j < static_cast<long long>(size))
        rows[i][static_cast<unsigned>(j)] += w;
    }
  }
  return ProductionMatrix::dense(std::move(rows));
}

}  // namespace prodmat
