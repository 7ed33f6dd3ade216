#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "prodmat/series.hpp"

namespace prodmat {

/// A production matrix presented as an entry oracle over 1-based (row, col)
/// indices, with polynomial entries. Matrices may be infinite (the built-in
/// Dyck matrix) or carry a declared finite size.
class ProductionMatrix {
 public:
  using EntryFn = std::function<Polynomial(unsigned row, unsigned col)>;

  static ProductionMatrix infinite(EntryFn entry) {
    return ProductionMatrix(std::nullopt, std::move(entry));
  }

  static ProductionMatrix finite(unsigned size, EntryFn entry) {
    if (size == 0) throw std::invalid_argument("matrix size must be positive");
    return ProductionMatrix(size, std::move(entry));
  }

  static ProductionMatrix dense(std::vector<std::vector<Polynomial>> rows) {
    if (rows.empty()) throw std::invalid_argument("matrix size must be positive");
    unsigned n = static_cast<unsigned>(rows.size());
    for (const auto& row : rows)
      if (row.size() != n)
        throw std::invalid_argument("dense matrix must be square");
    auto data = std::make_shared<std::vector<std::vector<Polynomial>>>(
        std::move(rows));
    return finite(n, [data](unsigned i, unsigned j) {
      return (*data)[i - 1][j - 1];
    });
  }

  std::optional<unsigned> size() const { return size_; }

  Polynomial entry(unsigned row, unsigned col) const {
    if (row == 0 || col == 0)
      throw std::out_of_range("matrix indices are 1-based");
    if (size_ && (row > *size_ || col > *size_))
      throw std::out_of_range("index exceeds declared matrix size");
    return entry_(row, col);
  }

  ProductionMatrix substituted(Substitution sub) const {
    EntryFn inner = entry_;
    auto shared = std::make_shared<Substitution>(std::move(sub));
    EntryFn wrapped = [inner, shared](unsigned i, unsigned j) {
      return inner(i, j).substituted(*shared);
    };
    return ProductionMatrix(size_, std::move(wrapped));
  }

 private:
  ProductionMatrix(std::optional<unsigned> size, EntryFn entry)
      : size_(size), entry_(std::move(entry)) {}

  std::optional<unsigned> size_;
  EntryFn entry_;
};

/// The main parametric matrix: superdiagonal x0, entry (k, l) = x[k-l+1]*y[l]
/// for l <= k, zero above the superdiagonal.
inline ProductionMatrix dyck_main_matrix() {
  return ProductionMatrix::infinite([](unsigned i, unsigned j) -> Polynomial {
    if (j == i + 1) return Polynomial::x(0);
    if (j <= i) return Polynomial::x(i - j + 1) * Polynomial::y(j);
    return Polynomial::zero();
  });
}

/// Unweighted Fibonacci matrix [[0,1],[1,1]].
inline ProductionMatrix fibonacci_matrix() {
  return ProductionMatrix::dense(
      {{Polynomial::zero(), Polynomial::one()},
       {Polynomial::one(), Polynomial::one()}});
}

/// Weighted variant [[0,1],[x,1]] producing the Fibonacci polynomials.
inline ProductionMatrix fibonacci_poly_matrix() {
  return ProductionMatrix::dense(
      {{Polynomial::zero(), Polynomial::one()},
       {Polynomial::named("x"), Polynomial::one()}});
}

/// Dense n-by-n window of the matrix.
inline std::vector<std::vector<Polynomial>> truncate(
    const ProductionMatrix& m, unsigned n) {
  if (n == 0) throw std::invalid_argument("truncation size must be positive");
  if (m.size() && n > *m.size())
    throw std::invalid_argument("truncation exceeds declared matrix size");
  std::vector<std::vector<Polynomial>> out(n, std::vector<Polynomial>(n));
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) out[i - 1][j - 1] = m.entry(i, j);
  return out;
}

/// a_0..a_{n_max} with a_n = u^T M^n e, computed by iterated row-vector
/// products. Finite matrices are used whole; infinite ones through the
/// (n_max+1)-sized window, which is adequate for lower-Hessenberg entries.
inline std::vector<Polynomial> sequence(const ProductionMatrix& m,
                                        unsigned n_max) {
  const unsigned trunc = m.size() ? *m.size() : n_max + 1;
  auto window = truncate(m, trunc);

  std::vector<Polynomial> out;
  out.reserve(n_max + 1);
  out.push_back(Polynomial::one());

  std::vector<Polynomial> v(trunc);
  v[0] = Polynomial::one();
  for (unsigned n = 1; n <= n_max; ++n) {
    std::vector<Polynomial> w(trunc);
    for (unsigned i = 0; i < trunc; ++i) {
      if (v[i].is_zero()) continue;
      for (unsigned j = 0; j < trunc; ++j) {
        if (window[i][j].is_zero()) continue;
        w[j] += v[i] * window[i][j];
      }
    }
    v = std::move(w);
    Polynomial a;
    for (const auto& c : v) a += c;
    out.push_back(std::move(a));
  }
  return out;
}

/// The generating function sum a_n z^n as a truncated series.
inline PowerSeries gf_series(const ProductionMatrix& m, unsigned order) {
  return PowerSeries::from_coefficients(sequence(m, order));
}

/// Bordering data: wraps `inner` with first row (b, r, 0, ...) and first
/// column (b, c, c, ...)^T, the inner matrix shifted down-right by one.
struct BorderSpec {
  Polynomial b;
  Polynomial r;
  Polynomial c;
  ProductionMatrix inner;
};

inline ProductionMatrix border(const BorderSpec& spec) {
  auto shared = std::make_shared<BorderSpec>(spec);
  ProductionMatrix::EntryFn entry = [shared](unsigned i,
                                             unsigned j) -> Polynomial {
    if (i == 1 && j == 1) return shared->b;
    if (i == 1 && j == 2) return shared->r;
    if (i == 1) return Polynomial::zero();
    if (j == 1) return shared->c;
    return shared->inner.entry(i - 1, j - 1);
  };
  if (spec.inner.size())
    return ProductionMatrix::finite(*spec.inner.size() + 1, std::move(entry));
  return ProductionMatrix::infinite(std::move(entry));
}

/// Residual of the bordering identity: with f the inner gf and g the bordered
/// gf, returns g*(1 - b z - r c z^2 f) - (1 + r z f), which must vanish.
inline PowerSeries border_gf_residual(const BorderSpec& spec, unsigned order) {
  PowerSeries f = gf_series(spec.inner, order);
  PowerSeries g = gf_series(border(spec), order);
  PowerSeries one = PowerSeries::one(order);
  PowerSeries den = one - PowerSeries::z_power(1, order) * spec.b -
                    f.shifted_up(2) * (spec.r * spec.c);
  PowerSeries num = one + f.shifted_up(1) * spec.r;
  return g * den - num;
}

/// Left-hand side of the quadratic r c z^2 f^2 - (1 - (b+r) z) f + 1.
inline PowerSeries quadratic_residual(const PowerSeries& f, const Polynomial& b,
                                      const Polynomial& r, const Polynomial& c) {
  unsigned order = f.order();
  PowerSeries one = PowerSeries::one(order);
  PowerSeries lin = one - PowerSeries::z_power(1, order) * (b + r);
  return (f * f).shifted_up(2) * (r * c) - lin * f + one;
}

}  // namespace prodmat
