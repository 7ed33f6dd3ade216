#pragma once

#include <string>
#include <vector>

#include "prodmat/dyck.hpp"
#include "prodmat/production_matrix.hpp"

namespace prodmat {

/// Origin of an expected prefix: printed in the source listing, or corrected
/// here because the printed value fails the brute-force oracle.
enum class CatalogProvenance { Listed, SuspectedTypo };

/// One specialization of the main matrix together with its expected sequence
/// prefix. For typo-flagged rows expected_prefix holds the corrected values
/// and printed_prefix records the original listing.
struct SpecializationEntry {
  std::string name;
  std::string oeis;
  Substitution substitution;
  std::vector<Polynomial> expected_prefix;
  CatalogProvenance provenance = CatalogProvenance::Listed;
  std::vector<std::string> printed_prefix;  // only for SuspectedTypo rows
};

namespace detail {

inline SpecializationEntry make_entry(std::string name, std::string oeis,
                                      Substitution sub,
                                      std::vector<std::string> prefix) {
  SpecializationEntry e;
  e.name = std::move(name);
  e.oeis = std::move(oeis);
  e.substitution = std::move(sub);
  for (const auto& s : prefix) e.expected_prefix.push_back(Polynomial::parse(s));
  return e;
}

inline Substitution ones_except(
    std::vector<std::pair<VarId, Polynomial>> overrides) {
  Substitution sub;
  sub.set_all(VarFamily::X, Polynomial::one());
  sub.set_all(VarFamily::Y, Polynomial::one());
  for (auto& [v, p] : overrides) sub.set(v, std::move(p));
  return sub;
}

}  // namespace detail

/// The catalog of classical sequences obtained by specializing the main
/// matrix. Substitutions follow the F(x0, x1, ...; y1, ...; z) convention:
/// unnamed weights default to 1, and the scalar parameter is t.
inline std::vector<SpecializationEntry> catalog() {
  using detail::make_entry;
  using detail::ones_except;
  const Polynomial t = Polynomial::named("t");
  const Polynomial one = Polynomial::one();
  const Polynomial one_plus_t = one + t;

  std::vector<SpecializationEntry> out;

  // F(;;z): Catalan numbers.
  out.push_back(make_entry("catalan", "A000108", ones_except({}),
                           {"1", "2", "5", "14"}));

  // F(1,0;;z): Motzkin numbers.
  out.push_back(make_entry(
      "motzkin", "A001006",
      ones_except({{VarId::x(1), Polynomial::zero()}}),
      {"1", "1", "2", "4", "9"}));

  // F(2;;z): little Schroeder numbers.
  out.push_back(make_entry(
      "little-schroeder", "A001003",
      ones_except({{VarId::x(0), Polynomial::constant(2)}}),
      {"1", "3", "11", "45"}));

  // F(t;;z): Narayana numbers.
  out.push_back(make_entry(
      "narayana", "A001263", ones_except({{VarId::x(0), t}}),
      {"1", "1 + t", "1 + 3*t + t^2", "1 + 6*t + 6*t^2 + t^3"}));

  // F(2t;;z): double-rise bicolored paths by double rises.
  out.push_back(make_entry(
      "double-rise-bicolored", "A114687",
      ones_except({{VarId::x(0), Polynomial::constant(2) * t}}),
      {"1", "1 + 2*t", "1 + 6*t + 4*t^2", "1 + 12*t + 24*t^2 + 8*t^3"}));

  // F(1+t;;z): Schroeder paths by peaks, none at height 1.
  out.push_back(make_entry(
      "schroeder-peaks", "A126216",
      ones_except({{VarId::x(0), one_plus_t}}),
      {"1", "2 + t", "5 + 5*t + t^2", "14 + 21*t + 9*t^2 + t^3"}));

  // F(1,2;;z): Schroeder paths with no peaks at odd level.
  out.push_back(make_entry(
      "schroeder-odd-level", "A002212",
      ones_except({{VarId::x(1), Polynomial::constant(2)}}),
      {"1", "3", "10", "36", "137"}));

  // F(1,t;;z): paths by peaks at even height. Listed third value has a
  // misprinted exponent; corrected by the oracle.
  {
    SpecializationEntry e = make_entry(
        "even-height-peaks", "A091869",
        ones_except({{VarId::x(1), t}}),
        {"1", "1 + t", "2 + 2*t + t^2", "4 + 6*t + 3*t^2 + t^3"});
    e.provenance = CatalogProvenance::SuspectedTypo;
    e.printed_prefix = {"1", "1 + t", "2 + 2*t + t^3", "4 + 6*t + 3*t^2 + t^3"};
    out.push_back(std::move(e));
  }

  // F(t,2;;z): hex trees by edges and left edges.
  out.push_back(make_entry(
      "hex-tree-left-edges", "A126182",
      ones_except({{VarId::x(0), t}, {VarId::x(1), Polynomial::constant(2)}}),
      {"1", "2 + t", "4 + 5*t + t^2", "8 + 18*t + 9*t^2 + t^3"}));

  // F(1,1+t;;z): hex trees by edges and median children.
  out.push_back(make_entry(
      "hex-tree-median", "A126181",
      ones_except({{VarId::x(1), one_plus_t}}),
      {"1", "2 + t", "5 + 4*t + t^2", "14 + 15*t + 6*t^2 + t^3"}));

  // F(;2;z): occurrences of a fixed word, binomial(2n+1, n+1).
  out.push_back(make_entry(
      "dyck-word-occurrences", "A001700",
      ones_except({{VarId::y(1), Polynomial::constant(2)}}),
      {"1", "3", "10", "35"}));

  // F(;1+t;z): leaves at level k+1 in ordered trees.
  out.push_back(make_entry(
      "ordered-tree-leaves", "A039598",
      ones_except({{VarId::y(1), one_plus_t}}),
      {"1", "2 + t", "5 + 4*t + t^2", "14 + 14*t + 6*t^2 + t^3"}));

  // F(0,1;1+t;z): Pascal's triangle. Two misprints in the listing.
  {
    SpecializationEntry e = make_entry(
        "pascal", "A007318",
        ones_except({{VarId::x(0), Polynomial::zero()},
                     {VarId::y(1), one_plus_t}}),
        {"1", "1 + t", "1 + 2*t + t^2", "1 + 3*t + 3*t^2 + t^3"});
    e.provenance = CatalogProvenance::SuspectedTypo;
    e.printed_prefix = {"1", "1 + t", "1 + 2*t + t^3", "1 + 3*t + 3*t^2 + 1"};
    out.push_back(std::move(e));
  }

  // F(0,1+t;1;z): Pascal's triangle again, parameter moved to x1.
  {
    SpecializationEntry e = make_entry(
        "pascal-alt", "A007318",
        ones_except({{VarId::x(0), Polynomial::zero()},
                     {VarId::x(1), one_plus_t}}),
        {"1", "1 + t", "1 + 2*t + t^2", "1 + 3*t + 3*t^2 + t^3"});
    e.provenance = CatalogProvenance::SuspectedTypo;
    e.printed_prefix = {"1", "1 + t", "1 + 2*t + t^3", "1 + 3*t + 3*t^2 + 1"};
    out.push_back(std::move(e));
  }

  // F(1,0;t;z): Motzkin paths by height of final descent.
  out.push_back(make_entry(
      "motzkin-final-descent", "A098979",
      ones_except({{VarId::x(1), Polynomial::zero()}, {VarId::y(1), t}}),
      {"1", "1", "1 + t", "2 + 2*t", "4 + 4*t + t^2"}));

  return out;
}

struct CatalogResult {
  std::string name;
  std::string oeis;
  bool pass = false;
  int first_mismatch = -1;  // index into the prefix, -1 when none
  std::string note;
};

/// Sequence value a_n for the substituted matrix obtained from brute force:
/// every semilength-(n+1) path weight carries at least one x0, so dividing
/// the weight by x0 before substituting keeps x0 -> 0 rows meaningful.
inline Polynomial catalog_oracle_value(const Substitution& sub, unsigned n) {
  Polynomial acc;
  const Monomial x0 = Monomial::var(VarId::x(0));
  enumerate_paths(n + 1, [&](const DyckPath& p) {
    Polynomial w = omega_monomial(p);
    const auto& [mono, coeff] = *w.terms().begin();
    acc += Polynomial::monomial(coeff, *mono.divided_by(x0)).substituted(sub);
  });
  return acc;
}

/// Checks every catalog entry against the matrix engine. Listed rows compare
/// with the recorded prefix; typo rows compare with the brute-force oracle
/// and report where the printed values differ.
inline std::vector<CatalogResult> catalog_check(unsigned max_terms = 5) {
  std::vector<CatalogResult> out;
  const ProductionMatrix main = dyck_main_matrix();
  for (const auto& entry : catalog()) {
    CatalogResult res;
    res.name = entry.name;
    res.oeis = entry.oeis;
    const unsigned terms = static_cast<unsigned>(
        std::min<std::size_t>(entry.expected_prefix.size(), max_terms));
    auto seq = sequence(main.substituted(entry.substitution), terms - 1);
    res.pass = true;
    for (unsigned n = 0; n < terms; ++n) {
      const Polynomial& reference =
          entry.provenance == CatalogProvenance::Listed
              ? entry.expected_prefix[n]
              : catalog_oracle_value(entry.substitution, n);
      if (!(seq[n] == reference)) {
        res.pass = false;
        res.first_mismatch = static_cast<int>(n);
        break;
      }
      if (entry.provenance == CatalogProvenance::SuspectedTypo &&
          !(entry.expected_prefix[n] == reference)) {
        res.pass = false;
        res.first_mismatch = static_cast<int>(n);
        res.note = "frozen prefix disagrees with oracle";
        break;
      }
    }
    if (entry.provenance == CatalogProvenance::SuspectedTypo && res.pass) {
      std::string fixed;
      for (unsigned n = 0; n < terms && n < entry.printed_prefix.size(); ++n) {
        Polynomial printed;
        bool parses = true;
        try {
          printed = Polynomial::parse(entry.printed_prefix[n]);
        } catch (const std::invalid_argument&) {
          parses = false;
        }
        if (!parses || !(printed == entry.expected_prefix[n])) {
          if (!fixed.empty()) fixed += ", ";
          fixed += "a" + std::to_string(n) + " printed as '" +
                   entry.printed_prefix[n] + "'";
        }
      }
      if (!fixed.empty())
        res.note = "verified against oracle; " + fixed;
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace prodmat
