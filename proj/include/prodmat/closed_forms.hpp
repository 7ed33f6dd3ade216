#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "prodmat/series.hpp"

namespace prodmat {

/// Catalan numbers c_0..c_order via the convolution recurrence; the result
/// satisfies C = 1 + z C^2 to its order.
inline PowerSeries catalan_series(unsigned order) {
  std::vector<BigInt> c(order + 1);
  c[0] = 1;
  for (unsigned n = 1; n <= order; ++n) {
    BigInt acc = 0;
    for (unsigned i = 0; i < n; ++i) acc += c[i] * c[n - 1 - i];
    c[n] = acc;
  }
  std::vector<Polynomial> coeffs;
  coeffs.reserve(order + 1);
  for (auto& v : c) coeffs.push_back(Polynomial::constant(std::move(v)));
  return PowerSeries::from_coefficients(std::move(coeffs));
}

/// Unique series solution with f(0) = 1 of
///   r c z^2 f^2 - (1 - (b+r) z) f + 1 = 0,
/// by coefficient recurrence (never divides by a non-unit).
inline PowerSeries unique_quadratic_root(const Polynomial& b,
                                         const Polynomial& r,
                                         const Polynomial& c, unsigned order) {
  const Polynomial rc = r * c;
  const Polynomial s = b + r;
  std::vector<Polynomial> f(order + 1);
  f[0] = Polynomial::one();
  for (unsigned n = 1; n <= order; ++n) {
    Polynomial acc = s * f[n - 1];
    if (n >= 2) {
      Polynomial conv;
      for (unsigned i = 0; i + 2 <= n; ++i) conv += f[i] * f[n - 2 - i];
      acc += rc * conv;
    }
    f[n] = std::move(acc);
  }
  return PowerSeries::from_coefficients(std::move(f));
}

/// F0 = F(x0, x1;; z): the two-variable master function. Computed both from
/// the quadratic recurrence and from the radical closed form
///   (1 - (x0+x1) z - sqrt((1 - (x0+x1) z)^2 - 4 x0 z^2)) / (2 x0 z^2);
/// the two must agree or this throws.
inline PowerSeries f0_series(unsigned order) {
  const Polynomial x0 = Polynomial::x(0);
  const Polynomial x1 = Polynomial::x(1);
  PowerSeries recurrence = unique_quadratic_root(x1, x0, Polynomial::one(), order);

  // Radical route needs two extra orders: it ends with a division by z^2.
  const unsigned inner = order + 2;
  const Polynomial s = x0 + x1;
  PowerSeries radicand(inner);
  radicand.set_coeff(0, Polynomial::one());
  radicand.set_coeff(1, -(s + s));
  radicand.set_coeff(2, s * s - Polynomial::constant(4) * x0);
  PowerSeries root = radicand.sqrt();

  PowerSeries numerator = PowerSeries::one(inner);
  numerator.set_coeff(1, -s);
  numerator = numerator - root;
  PowerSeries shifted = numerator.shifted_down(2);

  std::vector<Polynomial> quotient;
  quotient.reserve(order + 1);
  const Monomial x0_mono = Monomial::var(VarId::x(0));
  for (unsigned n = 0; n <= order; ++n)
    quotient.push_back(shifted.coeff(n).divided_exact(2, x0_mono));
  PowerSeries radical = PowerSeries::from_coefficients(std::move(quotient));

  if (!(radical == recurrence))
    throw std::logic_error("f0 evaluation methods disagree");
  return recurrence;
}

/// F_k = F(x0, x1; y1..y_k; z) by the recursion
///   F_k = (1 + x0 z F') / (1 - x1 y1 z - x0 y1 z^2 F'),
/// where F' is F_{k-1} with its y variables shifted up one slot
/// (y1..y_{k-1} -> y2..y_k).
inline PowerSeries fk_series(unsigned k, unsigned order) {
  PowerSeries f = f0_series(order);
  const Polynomial x0 = Polynomial::x(0);
  for (unsigned j = 1; j <= k; ++j) {
    Substitution shift;
    for (unsigned i = 1; i < j; ++i) shift.set(VarId::y(i), Polynomial::y(i + 1));
    PowerSeries prev = f.substituted(shift);

    const Polynomial x1y1 = Polynomial::x(1) * Polynomial::y(1);
    const Polynomial x0y1 = x0 * Polynomial::y(1);
    PowerSeries one = PowerSeries::one(order);
    PowerSeries num = one + prev.shifted_up(1) * x0;
    PowerSeries den = one - PowerSeries::z_power(1, order) * x1y1 -
                      prev.shifted_up(2) * x0y1;
    f = num.divided_by(den);
  }
  return f;
}

/// G1(t, z): coefficient of z^i counts paths of semilength i+1 by the number
/// (exponent of t) of high peaks of height 1.
inline PowerSeries g1_series(unsigned order) {
  PowerSeries c = catalan_series(order);
  PowerSeries c2 = c * c;
  const Polynomial t = Polynomial::named("t");
  PowerSeries one = PowerSeries::one(order);
  PowerSeries num = one + c2.shifted_up(1);
  PowerSeries den =
      one - PowerSeries::z_power(1, order) * t - c2.shifted_up(2) * t;
  return num.divided_by(den);
}

/// G_n via G_n = (1 + z G_{n-1}) / (1 - z - z^2 G_{n-1}), base G_1.
inline PowerSeries gn_series(unsigned n, unsigned order) {
  if (n == 0) throw std::invalid_argument("peak height must be >= 1");
  PowerSeries g = g1_series(order);
  PowerSeries one = PowerSeries::one(order);
  PowerSeries z = PowerSeries::z_power(1, order);
  for (unsigned m = 2; m <= n; ++m)
    g = (one + g.shifted_up(1)).divided_by(one - z - g.shifted_up(2));
  return g;
}

/// Polynomial transform of the Chebyshev U polynomials that avoids
/// half-integer powers: V_{-1} = 0, V_0 = V_1 = 1, V_m = V_{m-1} - z V_{m-2},
/// so V_m(z) = z^{m/2} U(m, 1/(2 sqrt z)) and deg V_m = floor(m/2).
struct ChebPoly {
  int index = 0;
  std::vector<BigInt> coeffs;  // of z^0 .. z^{floor(index/2)}; empty = zero

  unsigned degree() const {
    return coeffs.empty() ? 0u : static_cast<unsigned>(coeffs.size() - 1);
  }

  PowerSeries to_series(unsigned order) const {
    PowerSeries s(order);
    for (unsigned i = 0; i < coeffs.size() && i <= order; ++i)
      s.set_coeff(i, Polynomial::constant(coeffs[i]));
    return s;
  }

  std::string str() const {
    Polynomial p;  // rendered in a stand-in variable named "Z"
    for (unsigned i = 0; i < coeffs.size(); ++i)
      p += Polynomial::monomial(coeffs[i],
                                Monomial::var(VarId::named("Z"), i));
    return p.str();
  }
};

inline ChebPoly cheb_v(int m) {
  if (m < -1)
    throw std::invalid_argument("V is defined for indices >= -1");
  std::vector<BigInt> prev;        // V_{-1} = 0
  std::vector<BigInt> cur{BigInt(1)};  // V_0 = 1
  if (m == -1) return {m, {}};
  for (int i = 1; i <= m; ++i) {
    std::vector<BigInt> next = cur;
    if (next.size() < prev.size() + 1) next.resize(prev.size() + 1);
    for (std::size_t j = 0; j < prev.size(); ++j) next[j + 1] -= prev[j];
    while (!next.empty() && next.back() == 0) next.pop_back();
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {m, std::move(cur)};
}

/// Residual of the Chebyshev-style closed form for G_n (n >= 4):
///   G_n (G1 z^2 V_{n-2} - V_n) - (G1 z^2 V_{n-4} - V_{n-2}),
/// which must be the zero series.
inline PowerSeries cheb_form_residual(unsigned n, unsigned order) {
  if (n < 4)
    throw std::invalid_argument("closed form is checked for n >= 4 only");
  PowerSeries g1 = g1_series(order);
  PowerSeries gn = gn_series(n, order);
  PowerSeries g1z2 = g1.shifted_up(2);
  auto v = [order](int m) { return cheb_v(m).to_series(order); };
  PowerSeries den = g1z2 * v(static_cast<int>(n) - 2) - v(static_cast<int>(n));
  PowerSeries num =
      g1z2 * v(static_cast<int>(n) - 4) - v(static_cast<int>(n) - 2);
  return gn * den - num;
}

}  // namespace prodmat
