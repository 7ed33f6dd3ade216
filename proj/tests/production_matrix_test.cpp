#include "prodmat/production_matrix.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace prodmat;

namespace {

Polynomial P(const std::string& text) { return Polynomial::parse(text); }

std::vector<Polynomial> seq_strings(const std::vector<std::string>& v) {
  std::vector<Polynomial> out;
  for (const auto& s : v) out.push_back(P(s));
  return out;
}

Substitution all_ones() {
  Substitution sub;
  sub.set_all(VarFamily::X, Polynomial::one());
  sub.set_all(VarFamily::Y, Polynomial::one());
  return sub;
}

TEST(DyckMainMatrix, Entries) {
  ProductionMatrix m = dyck_main_matrix();
  EXPECT_EQ(m.entry(1, 1), P("x1*y1"));
  EXPECT_EQ(m.entry(4, 2), P("x3*y2"));
  EXPECT_EQ(m.entry(2, 5), Polynomial::zero());
  EXPECT_EQ(m.entry(3, 4), P("x0"));
  EXPECT_EQ(m.entry(5, 3), P("x3*y3"));
}

TEST(DyckMainMatrix, LowerHessenbergShape) {
  ProductionMatrix m = dyck_main_matrix();
  for (unsigned i = 1; i <= 10; ++i)
    for (unsigned j = i + 2; j <= 12; ++j)
      EXPECT_TRUE(m.entry(i, j).is_zero()) << i << "," << j;
}

TEST(Truncate, Windows) {
  auto t1 = truncate(dyck_main_matrix(), 1);
  ASSERT_EQ(t1.size(), 1u);
  EXPECT_EQ(t1[0][0], P("x1*y1"));

  auto fib = truncate(fibonacci_matrix(), 2);
  EXPECT_EQ(fib[0][0], P("0"));
  EXPECT_EQ(fib[0][1], P("1"));
  EXPECT_EQ(fib[1][0], P("1"));
  EXPECT_EQ(fib[1][1], P("1"));

  auto fibp = truncate(fibonacci_poly_matrix(), 2);
  EXPECT_EQ(fibp[1][0], P("x"));
}

TEST(Truncate, ErrorsOnOversizedWindow) {
  EXPECT_THROW(truncate(fibonacci_matrix(), 3), std::invalid_argument);
  EXPECT_THROW(truncate(dyck_main_matrix(), 0), std::invalid_argument);
}

TEST(Sequence, Fibonacci) {
  EXPECT_EQ(sequence(fibonacci_matrix(), 5),
            seq_strings({"1", "1", "2", "3", "5", "8"}));
}

TEST(Sequence, FibonacciPolynomials) {
  EXPECT_EQ(sequence(fibonacci_poly_matrix(), 5),
            seq_strings({"1", "1", "1 + x", "1 + 2*x", "1 + 3*x + x^2",
                         "1 + 4*x + 3*x^2"}));
}

TEST(Sequence, CatalanFromAllOnes) {
  auto seq = sequence(dyck_main_matrix().substituted(all_ones()), 3);
  EXPECT_EQ(seq, seq_strings({"1", "2", "5", "14"}));
}

TEST(Sequence, MotzkinFromX1Zero) {
  Substitution sub = all_ones();
  sub.set(VarId::x(1), Polynomial::zero());
  PowerSeries gf = gf_series(dyck_main_matrix().substituted(sub), 4);
  EXPECT_EQ(gf.coefficients(), seq_strings({"1", "1", "2", "4", "9"}));
}

TEST(Sequence, GfMatchesSequenceTermByTerm) {
  ProductionMatrix m = dyck_main_matrix();
  auto seq = sequence(m, 6);
  PowerSeries gf = gf_series(m, 6);
  for (unsigned n = 0; n <= 6; ++n) EXPECT_EQ(gf.coeff(n), seq[n]);
}

TEST(Sequence, OrderZeroIsOne) {
  EXPECT_EQ(gf_series(dyck_main_matrix(), 0).coeff(0), Polynomial::one());
  EXPECT_EQ(gf_series(fibonacci_matrix(), 0).coeff(0), Polynomial::one());
}

// Window size n+1 already captures everything reachable in n steps.
TEST(Sequence, TruncationStability) {
  ProductionMatrix m = dyck_main_matrix();
  for (unsigned n = 0; n <= 12; ++n) {
    auto small = sequence(m, n);
    unsigned big_window = n + 6;
    auto window = truncate(m, big_window);
    // recompute with the larger window
    std::vector<Polynomial> v(big_window);
    v[0] = Polynomial::one();
    std::vector<Polynomial> big{Polynomial::one()};
    for (unsigned step = 1; step <= n; ++step) {
      std::vector<Polynomial> w(big_window);
      for (unsigned i = 0; i < big_window; ++i) {
        if (v[i].is_zero()) continue;
        for (unsigned j = 0; j < big_window; ++j)
          if (!window[i][j].is_zero()) w[j] += v[i] * window[i][j];
      }
      v = std::move(w);
      Polynomial a;
      for (const auto& c : v) a += c;
      big.push_back(std::move(a));
    }
    EXPECT_EQ(small, big) << "n=" << n;
  }
}

TEST(Border, StructuralPlacement) {
  BorderSpec spec{Polynomial::zero(), Polynomial::one(), Polynomial::one(),
                  ProductionMatrix::dense({{Polynomial::one()}})};
  auto m = truncate(border(spec), 2);
  EXPECT_EQ(m, truncate(fibonacci_matrix(), 2));
}

TEST(Border, FibonacciResidualVanishes) {
  BorderSpec spec{Polynomial::zero(), Polynomial::one(), Polynomial::one(),
                  ProductionMatrix::dense({{Polynomial::one()}})};
  EXPECT_TRUE(border_gf_residual(spec, 6).is_zero());
}

TEST(Border, SelfSimilarF0Matrix) {
  Substitution sub = all_ones();
  sub.set(VarId::x(0), Polynomial::x(0));
  sub.set(VarId::x(1), Polynomial::x(1));
  ProductionMatrix f0 = dyck_main_matrix().substituted(sub);
  BorderSpec spec{Polynomial::x(1), Polynomial::x(0), Polynomial::one(), f0};
  for (unsigned n = 1; n <= 10; ++n)
    EXPECT_EQ(truncate(border(spec), n), truncate(f0, n));
  EXPECT_TRUE(border_gf_residual(spec, 12).is_zero());
}

TEST(Border, RandomInstancesSatisfyTheIdentity) {
  std::mt19937_64 rng(7);
  static const std::vector<Polynomial> pool = {
      Polynomial::one(), Polynomial::x(0), Polynomial::y(1),
      Polynomial::named("t")};
  std::uniform_int_distribution<int> coeff(0, 2);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<unsigned> size_dist(1, 6);
  auto rand_poly = [&](bool allow_zero) {
    int c = coeff(rng);
    if (!allow_zero && c == 0) c = 1;
    return Polynomial::constant(c) * pool[pick(rng)];
  };
  for (int trial = 0; trial < 50; ++trial) {
    unsigned size = size_dist(rng);
    std::vector<std::vector<Polynomial>> rows(size,
                                              std::vector<Polynomial>(size));
    for (unsigned i = 0; i < size; ++i)
      for (unsigned j = 0; j <= std::min(i + 1, size - 1); ++j)
        rows[i][j] = rand_poly(true);
    BorderSpec spec{rand_poly(true), rand_poly(false), rand_poly(false),
                    ProductionMatrix::dense(std::move(rows))};
    PowerSeries res = border_gf_residual(spec, 8);
    EXPECT_TRUE(res.is_zero()) << "trial " << trial;
  }
}

TEST(QuadraticResidual, ShiftedCatalanSatisfiesAllOnesQuadratic) {
  PowerSeries f = gf_series(dyck_main_matrix().substituted(all_ones()), 10);
  PowerSeries res = quadratic_residual(f, Polynomial::one(), Polynomial::one(),
                                       Polynomial::one());
  EXPECT_TRUE(res.is_zero());
}

TEST(QuadraticResidual, NegativeControl) {
  // 1/(1-z) is not a bordered fixed point: the residual must not vanish.
  std::vector<Polynomial> coeffs(7, Polynomial::one());
  PowerSeries f = PowerSeries::from_coefficients(std::move(coeffs));
  PowerSeries res = quadratic_residual(f, Polynomial::one(), Polynomial::one(),
                                       Polynomial::one());
  EXPECT_FALSE(res.is_zero());
}

}  // namespace
