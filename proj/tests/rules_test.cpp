#include "prodmat/rule_parser.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace prodmat;

namespace {

Polynomial P(const std::string& text) { return Polynomial::parse(text); }

const char* kExample2 =
    "axiom (1; 1)\n"
    "rule (1) -> (2; 1)\n"
    "rule (2) -> (1; x) (2; 1)\n";

TEST(ParseRule, FibonacciPolynomialRule) {
  SuccessionRule rule = parse_rule(kExample2);
  EXPECT_EQ(rule.axiom_label(), 1);
  EXPECT_EQ(rule.axiom_weight(), Polynomial::one());
  auto m = truncate(rule_to_matrix(rule, 2), 2);
  EXPECT_EQ(m[0][0], P("0"));
  EXPECT_EQ(m[0][1], P("1"));
  EXPECT_EQ(m[1][0], P("x"));
  EXPECT_EQ(m[1][1], P("1"));
}

TEST(ParseRule, DyckMainMatchesTheMainMatrix) {
  SuccessionRule rule = parse_rule(builtin_rule_text("dyck-main"));
  EXPECT_EQ(rule.axiom_weight(), P("x0"));
  for (unsigned n = 1; n <= 12; ++n) {
    EXPECT_EQ(truncate(rule_to_matrix(rule, n), n),
              truncate(dyck_main_matrix(), n));
  }
}

TEST(ParseRule, HighPeakRuleMatchesXToOne) {
  SuccessionRule rule = builtin_rule("dyck-high-peak");
  EXPECT_EQ(rule.axiom_weight(), Polynomial::one());
  Substitution sub;
  sub.set_all(VarFamily::X, Polynomial::one());
  for (unsigned n = 1; n <= 12; ++n) {
    EXPECT_EQ(truncate(rule_to_matrix(rule, n), n),
              truncate(dyck_main_matrix().substituted(sub), n));
  }
  // spot check of the displayed rows
  auto m = truncate(rule_to_matrix(rule, 4), 4);
  EXPECT_EQ(m[2][0], P("y1"));
  EXPECT_EQ(m[2][1], P("y2"));
  EXPECT_EQ(m[2][2], P("y3"));
  EXPECT_EQ(m[2][3], P("1"));
}

TEST(ParseRule, AxiomLabelMustBePositive) {
  try {
    parse_rule("axiom (0; 1)\nrule (k) -> (k; 1)\n");
    FAIL() << "expected a parse error";
  } catch (const RuleParseError& e) {
    EXPECT_NE(std::string(e.what()).find("positive"), std::string::npos);
  }
}

TEST(ParseRule, SyntaxErrorCarriesPosition) {
  try {
    parse_rule("axiom (1; 1)\nrule (k) -> (k 1)\n");
    FAIL() << "expected a parse error";
  } catch (const RuleParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.col(), 1u);
    EXPECT_NE(std::string(e.what()).find("expected"), std::string::npos);
  }
}

TEST(ParseRule, DuplicateLiteralPattern) {
  EXPECT_THROW(parse_rule("axiom (1; 1)\n"
                          "rule (1) -> (1; 1)\n"
                          "rule (1) -> (1; 2)\n"),
               RuleParseError);
}

TEST(ParseRule, MultipleSymbolicPatterns) {
  EXPECT_THROW(parse_rule("axiom (1; 1)\n"
                          "rule (k) -> (k; 1)\n"
                          "rule (m) -> (m; 1)\n"),
               RuleParseError);
}

TEST(ParseRule, UnboundIdentifierInIndexExpression) {
  EXPECT_THROW(parse_rule("axiom (1; 1)\nrule (k) -> (q+1; 1)\n"),
               RuleParseError);
  EXPECT_THROW(parse_rule("axiom (1; x[q])\nrule (k) -> (k; 1)\n"),
               RuleParseError);
}

TEST(ParseRule, NonPositiveLabelDetectedStatically) {
  EXPECT_THROW(parse_rule("axiom (1; 1)\nrule (k) -> (k-1; 1)\n"),
               RuleParseError);
  // shadowing literal raises the symbolic minimum, so k-1 is fine here
  SuccessionRule ok = parse_rule(
      "axiom (1; 1)\n"
      "rule (1) -> (2; 1)\n"
      "rule (k) -> (k-1; 1) (k+1; 1)\n");
  auto succ = ok.successors(2);
  ASSERT_EQ(succ.size(), 2u);
  EXPECT_EQ(succ[0].first, 1);
  EXPECT_EQ(succ[1].first, 3);
}

TEST(ParseRule, ZIsReserved) {
  EXPECT_THROW(parse_rule("axiom (1; z)\nrule (k) -> (k; 1)\n"),
               RuleParseError);
}

TEST(ParseRule, BadAxiomIndexIsAParseError) {
  EXPECT_THROW(parse_rule("axiom (1; y[0])\nrule (k) -> (k; 1)\n"),
               RuleParseError);
}

TEST(ParseRule, CommentsAndWhitespace) {
  SuccessionRule rule = parse_rule(
      "# weighted Fibonacci\n"
      "axiom (1; 1)  # axiom weight one\n"
      "rule (1) -> (2; 1)\n"
      "rule (2) -> (1; x) (2; 1)\n");
  EXPECT_EQ(rule, parse_rule(kExample2));
}

TEST(Builtins, AllNamesResolve) {
  for (const char* name :
       {"dyck-main", "dyck-high-peak", "fibonacci", "fibonacci-poly"}) {
    SuccessionRule rule = builtin_rule(name);
    EXPECT_GE(rule.productions().size(), 1u) << name;
  }
  EXPECT_THROW(builtin_rule("nope"), std::invalid_argument);
}

TEST(Builtins, FibonacciSequence) {
  auto seq = sequence(rule_to_matrix(builtin_rule("fibonacci"), 2), 5);
  std::vector<Polynomial> expected{P("1"), P("1"), P("2"), P("3"), P("5"),
                                   P("8")};
  EXPECT_EQ(seq, expected);
}

TEST(SimulateLevels, FibonacciPolynomials) {
  auto levels = simulate_levels(parse_rule(kExample2), 5);
  std::vector<Polynomial> expected{P("1"),       P("1"),
                                   P("1 + x"),   P("1 + 2*x"),
                                   P("1 + 3*x + x^2"), P("1 + 4*x + 3*x^2")};
  EXPECT_EQ(levels, expected);
}

TEST(SimulateLevels, DepthZeroIsAxiomWeight) {
  auto levels = simulate_levels(builtin_rule("dyck-main"), 0);
  ASSERT_EQ(levels.size(), 1u);
  EXPECT_EQ(levels[0], P("x0"));
}

TEST(SimulateLevels, AxiomWeightFactorsOut) {
  // level sums are the axiom weight times the matrix sequence
  for (const char* name :
       {"dyck-main", "dyck-high-peak", "fibonacci", "fibonacci-poly"}) {
    SuccessionRule rule = builtin_rule(name);
    const unsigned depth = 8;
    auto levels = simulate_levels(rule, depth);
    unsigned size =
        static_cast<unsigned>(labels_within_depth(rule, depth).size());
    auto seq = sequence(rule_to_matrix(rule, size), depth);
    for (unsigned n = 0; n <= depth; ++n)
      EXPECT_EQ(levels[n], rule.axiom_weight() * seq[n]) << name << " n=" << n;
  }
}

TEST(SimulateLevels, RandomRulesAgreeWithTheirMatrices) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> n_labels(2, 4);
  std::uniform_int_distribution<int> coeff(1, 3);
  static const std::vector<std::string> weights = {"1", "x[0]", "y[1]", "t"};
  std::uniform_int_distribution<std::size_t> pick(0, weights.size() - 1);
  for (int trial = 0; trial < 25; ++trial) {
    int labels = n_labels(rng);
    std::string text = "axiom (1; 1)\n";
    for (int l = 1; l <= labels; ++l) {
      text += "rule (" + std::to_string(l) + ") ->";
      // always include the next label (capped) so every label is reachable
      int next = std::min(l + 1, labels);
      text += " (" + std::to_string(next) + "; " + weights[pick(rng)] + ")";
      std::uniform_int_distribution<int> extra(0, 2);
      int extras = extra(rng);
      std::uniform_int_distribution<int> lab(1, labels);
      for (int e = 0; e < extras; ++e)
        text += " (" + std::to_string(lab(rng)) + "; " +
                std::to_string(coeff(rng)) + "*" + weights[pick(rng)] + ")";
      text += "\n";
    }
    SuccessionRule rule = parse_rule(text);
    auto levels = simulate_levels(rule, 8);
    auto seq = sequence(rule_to_matrix(rule, labels), 8);
    for (unsigned n = 0; n <= 8; ++n)
      EXPECT_EQ(levels[n], seq[n]) << text;
  }
}

TEST(RuleToMatrix, OmegaPrimeRowsAtSmallSizes) {
  auto m = truncate(rule_to_matrix(builtin_rule("dyck-high-peak"), 3), 3);
  EXPECT_EQ(m[0][0], P("y1"));
  EXPECT_EQ(m[0][1], P("1"));
  EXPECT_EQ(m[1][0], P("y1"));
  EXPECT_EQ(m[1][1], P("y2"));
  EXPECT_EQ(m[1][2], P("1"));
  EXPECT_EQ(m[2][0], P("y1"));
  EXPECT_EQ(m[2][1], P("y2"));
  EXPECT_EQ(m[2][2], P("y3"));
  auto m4 = truncate(rule_to_matrix(builtin_rule("dyck-high-peak"), 4), 4);
  EXPECT_EQ(m4[2][3], P("1"));
}

TEST(RuleToMatrix, AggregatesParallelSuccessions) {
  SuccessionRule rule = parse_rule(
      "axiom (1; 1)\n"
      "rule (1) -> (2; x[0]) (2; y[1]) (1; 1)\n"
      "rule (2) -> (1; 1) (2; 1)\n");
  auto m = truncate(rule_to_matrix(rule, 2), 2);
  EXPECT_EQ(m[0][1], P("x0 + y1"));
}

TEST(ParseRule, FamilyLookalikeIdentifiersRejected) {
  EXPECT_THROW(parse_rule("axiom (1; x0)\nrule (k) -> (k; 1)\n"),
               RuleParseError);
  EXPECT_THROW(parse_rule("axiom (1; 1)\nrule (k) -> (k; y12)\n"),
               RuleParseError);
}

TEST(RuleToMatrix, LabelsWithinDepth) {
  EXPECT_EQ(labels_within_depth(builtin_rule("fibonacci"), 10).size(), 2u);
  EXPECT_EQ(labels_within_depth(builtin_rule("dyck-main"), 6).size(), 7u);
  EXPECT_EQ(labels_within_depth(builtin_rule("dyck-main"), 0).size(), 1u);
}

TEST(RuleToMatrix, JumpingLabelsNeedTheDepthSizedWindow) {
  // labels can grow by two per step; a window sized by the step count alone
  // would drop weight sitting at high labels
  SuccessionRule rule = parse_rule(
      "axiom (1; 1)\n"
      "rule (k) -> (k+2; 1) (k+1; 1) (1; 1)\n");
  const unsigned depth = 6;
  unsigned size = static_cast<unsigned>(labels_within_depth(rule, depth).size());
  EXPECT_EQ(size, 2 * depth + 1);
  auto seq = sequence(rule_to_matrix(rule, size), depth);
  auto levels = simulate_levels(rule, depth);
  for (unsigned n = 0; n <= depth; ++n) EXPECT_EQ(seq[n], levels[n]) << n;
  // an undersized window loses nodes from the top labels
  auto undersized = sequence(rule_to_matrix(rule, depth + 1), depth);
  EXPECT_NE(undersized[depth], levels[depth]);
}

TEST(RuleToMatrix, RowsFollowTheSmallestReachableLabels) {
  // labels need not start at 1: row i is the i-th smallest reachable label
  SuccessionRule rule = parse_rule(
      "axiom (2; 1)\n"
      "rule (2) -> (3; 1)\n"
      "rule (3) -> (2; 1) (3; 1)\n");
  EXPECT_EQ(truncate(rule_to_matrix(rule, 2), 2),
            truncate(fibonacci_matrix(), 2));
  EXPECT_EQ(sequence(rule_to_matrix(rule, 2), 5),
            sequence(fibonacci_matrix(), 5));
}

TEST(RuleToMatrix, ErrorsWhenLabelsRunOut) {
  EXPECT_THROW(rule_to_matrix(builtin_rule("fibonacci"), 3),
               std::runtime_error);
}

TEST(RuleToMatrix, ErrorsOnNonContiguousLabels) {
  SuccessionRule rule = parse_rule(
      "axiom (1; 1)\n"
      "rule (1) -> (3; 1)\n"
      "rule (3) -> (1; 1) (3; 1)\n"
      "rule (k) -> (k; 1)\n");
  EXPECT_THROW(rule_to_matrix(rule, 2), std::runtime_error);
}

TEST(PrintRule, RoundTripsAllBuiltins) {
  for (const char* name :
       {"dyck-main", "dyck-high-peak", "fibonacci", "fibonacci-poly"}) {
    SuccessionRule rule = builtin_rule(name);
    EXPECT_EQ(parse_rule(rule.print()), rule) << rule.print();
  }
}

TEST(PrintRule, RoundTripsLoopsAndGroups) {
  SuccessionRule rule = parse_rule(
      "axiom (2; 3*t + x[1])\n"
      "rule (k) -> for l in 1..k : (l; (1 + y[l]) * x[k-l+1]) (k+1; 2)\n");
  EXPECT_EQ(parse_rule(rule.print()), rule) << rule.print();
}

TEST(PrintRule, RoundTripsNegativeLeadingPieces) {
  // index expressions that normalize to a negative leading piece print with
  // a reparseable zero prefix, and zero weight terms are dropped either way
  SuccessionRule rule = parse_rule(
      "axiom (1; 1)\n"
      "rule (2) -> (1; 1)\n"
      "rule (k) -> (k; x[3-k]) (k+1; 0 - t + 2)\n");
  SuccessionRule reparsed = parse_rule(rule.print());
  EXPECT_EQ(reparsed, rule) << rule.print();
  EXPECT_EQ(parse_rule(reparsed.print()), reparsed);
}

}  // namespace
