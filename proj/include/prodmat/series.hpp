#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "prodmat/polynomial.hpp"

namespace prodmat {

/// Truncated power series in z with polynomial coefficients. The truncation
/// order is part of the value: a series of order N carries coefficients of
/// z^0..z^N, and every binary operation returns the min of its operands'
/// orders so precision is never silently invented.
class PowerSeries {
 public:
  explicit PowerSeries(unsigned order) : coeffs_(order + 1) {}

  static PowerSeries zero(unsigned order) { return PowerSeries(order); }

  static PowerSeries one(unsigned order) {
    return constant(Polynomial::one(), order);
  }

  static PowerSeries constant(Polynomial c, unsigned order) {
    PowerSeries s(order);
    s.coeffs_[0] = std::move(c);
    return s;
  }

  static PowerSeries z_power(unsigned k, unsigned order) {
    PowerSeries s(order);
    if (k <= order) s.coeffs_[k] = Polynomial::one();
    return s;
  }

  static PowerSeries from_coefficients(std::vector<Polynomial> coeffs) {
    if (coeffs.empty())
      throw std::invalid_argument("a series needs at least the z^0 coefficient");
    PowerSeries s(0);
    s.coeffs_ = std::move(coeffs);
    return s;
  }

  unsigned order() const { return static_cast<unsigned>(coeffs_.size()) - 1; }

  const Polynomial& coeff(unsigned n) const {
    if (n >= coeffs_.size())
      throw std::out_of_range("coefficient beyond truncation order");
    return coeffs_[n];
  }

  void set_coeff(unsigned n, Polynomial p) {
    if (n >= coeffs_.size())
      throw std::out_of_range("coefficient beyond truncation order");
    coeffs_[n] = std::move(p);
  }

  const std::vector<Polynomial>& coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  std::optional<unsigned> first_nonzero() const {
    for (unsigned n = 0; n < coeffs_.size(); ++n)
      if (!coeffs_[n].is_zero()) return n;
    return std::nullopt;
  }

  PowerSeries truncated(unsigned new_order) const {
    if (new_order > order())
      throw std::invalid_argument("cannot extend a series past its order");
    PowerSeries out(new_order);
    for (unsigned n = 0; n <= new_order; ++n) out.coeffs_[n] = coeffs_[n];
    return out;
  }

  /// Multiplication by z^k at the same order (top coefficients fall off).
  PowerSeries shifted_up(unsigned k) const {
    PowerSeries out(order());
    for (unsigned n = k; n <= order(); ++n) out.coeffs_[n] = coeffs_[n - k];
    return out;
  }

  /// Division by z^k; the k leading coefficients must vanish and the result
  /// is only known to order() - k.
  PowerSeries shifted_down(unsigned k) const {
    if (k > order())
      throw std::invalid_argument("shift exceeds truncation order");
    for (unsigned n = 0; n < k; ++n)
      if (!coeffs_[n].is_zero())
        throw std::domain_error("series is not divisible by z^" +
                                std::to_string(k));
    PowerSeries out(order() - k);
    for (unsigned n = 0; n + k <= order(); ++n) out.coeffs_[n] = coeffs_[n + k];
    return out;
  }

  PowerSeries operator-() const {
    PowerSeries out(order());
    for (unsigned n = 0; n <= order(); ++n) out.coeffs_[n] = -coeffs_[n];
    return out;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    unsigned ord = std::min(a.order(), b.order());
    PowerSeries out(ord);
    for (unsigned n = 0; n <= ord; ++n)
      out.coeffs_[n] = a.coeffs_[n] + b.coeffs_[n];
    return out;
  }

  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    unsigned ord = std::min(a.order(), b.order());
    PowerSeries out(ord);
    for (unsigned n = 0; n <= ord; ++n)
      out.coeffs_[n] = a.coeffs_[n] - b.coeffs_[n];
    return out;
  }

  /// Cauchy product truncated to the smaller order.
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    unsigned ord = std::min(a.order(), b.order());
    PowerSeries out(ord);
    for (unsigned i = 0; i <= ord; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (unsigned j = 0; i + j <= ord; ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return out;
  }

  friend PowerSeries operator*(const PowerSeries& a, const Polynomial& c) {
    PowerSeries out(a.order());
    for (unsigned n = 0; n <= a.order(); ++n) out.coeffs_[n] = a.coeffs_[n] * c;
    return out;
  }

  friend PowerSeries operator*(const Polynomial& c, const PowerSeries& a) {
    return a * c;
  }

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

  /// Quotient q with q*g = *this to the truncation order. g must have
  /// constant coefficient +1 or -1.
  PowerSeries divided_by(const PowerSeries& g) const {
    auto g0 = g.coeff(0).as_constant();
    if (!g0 || (*g0 != 1 && *g0 != -1))
      throw std::domain_error("series not invertible");
    unsigned ord = std::min(order(), g.order());
    PowerSeries q(ord);
    for (unsigned n = 0; n <= ord; ++n) {
      Polynomial acc = coeffs_[n];
      for (unsigned k = 1; k <= n; ++k) {
        if (g.coeffs_[k].is_zero() || q.coeffs_[n - k].is_zero()) continue;
        acc -= g.coeffs_[k] * q.coeffs_[n - k];
      }
      // 1/g0 = g0 for a unit
      q.coeffs_[n] = *g0 == 1 ? std::move(acc) : -acc;
    }
    return q;
  }

  /// Square root with constant term 1; coefficients must stay integral.
  PowerSeries sqrt() const {
    if (!coeff(0).is_one())
      throw std::domain_error("series sqrt requires constant term 1");
    PowerSeries s(order());
    s.coeffs_[0] = Polynomial::one();
    for (unsigned n = 1; n <= order(); ++n) {
      Polynomial acc = coeffs_[n];
      for (unsigned k = 1; k < n; ++k) acc -= s.coeffs_[k] * s.coeffs_[n - k];
      s.coeffs_[n] = acc.divided_by_int(2);
    }
    return s;
  }

  PowerSeries substituted(const Substitution& sub) const {
    PowerSeries out(order());
    for (unsigned n = 0; n <= order(); ++n)
      out.coeffs_[n] = coeffs_[n].substituted(sub);
    return out;
  }

  std::string str() const {
    std::string out;
    for (unsigned n = 0; n <= order(); ++n) {
      if (n) out += ", ";
      out += coeffs_[n].str();
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const PowerSeries& s) {
    return os << s.str();
  }

 private:
  std::vector<Polynomial> coeffs_;  // size = order + 1
};

}  // namespace prodmat
