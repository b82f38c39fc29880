#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <map>

#include "gruppen/entropy.hpp"
#include "gruppen/error.hpp"
#include "gruppen/knowledge.hpp"

using namespace gruppen;

namespace {

constexpr double kTol = 1e-9;

PointLayout gf5_layout() { return layout_compact(Params::for_analysis(3, 2, FieldSpec::prime(5))); }

// Entropy of a tuple of evaluation points over all 625 polynomials, by
// direct counting of outcomes.
double direct_entropy(const PointLayout& layout, const std::vector<std::pair<unsigned, unsigned>>& points) {
  const auto f = layout.params().spec();
  std::map<std::vector<std::uint64_t>, int> counts;
  int total = 0;
  for (int c0 = 0; c0 < 5; ++c0)
    for (int c1 = 0; c1 < 5; ++c1)
      for (int c2 = 0; c2 < 5; ++c2)
        for (int c3 = 0; c3 < 5; ++c3) {
          const Poly r({FieldElement::from_integer(f, c0), FieldElement::from_integer(f, c1),
                        FieldElement::from_integer(f, c2), FieldElement::from_integer(f, c3)});
          std::vector<std::uint64_t> key;
          for (auto [i, j] : points) key.push_back(r.eval(layout.point(i, j)).value64());
          ++counts[key];
          ++total;
        }
  double h = 0;
  for (const auto& [k, c] : counts) {
    const double q = static_cast<double>(c) / total;
    h -= q * std::log2(q);
  }
  return h;
}

}  // namespace

TEST(Model, SizesAndLimits) {
  EXPECT_EQ(gruppen_model_size(Params::for_analysis(3, 2, FieldSpec::prime(5))), 625u);
  EXPECT_EQ(gruppen_model_size(Params::for_analysis(4, 2, FieldSpec::prime(7))), 117649u);
  EXPECT_THROW(gruppen_model(layout_default(Params(5, 2, FieldSpec::prime(101)))), UsageError);
  const auto m = gruppen_model(gf5_layout());
  EXPECT_EQ(m.outcomes(), 625u);
  EXPECT_EQ(m.width("h1"), 1u);
  EXPECT_TRUE(m.has_variable("s3"));
}

TEST(Entropy, MatchesDirectCountingGF5) {
  const auto layout = gf5_layout();
  const auto model = gruppen_model(layout);
  EntropyOracle oracle(model);
  EXPECT_NEAR(oracle.entropy({"s1"}), direct_entropy(layout, {{1, 0}}), kTol);
  EXPECT_NEAR(oracle.entropy({"h2"}), direct_entropy(layout, {{2, 1}}), kTol);
  EXPECT_NEAR(oracle.entropy({"s1", "s2", "h3"}), direct_entropy(layout, {{1, 0}, {2, 0}, {3, 1}}), kTol);
  EXPECT_NEAR(oracle.entropy({"s1", "s2", "s3", "h1", "h2"}),
              direct_entropy(layout, {{1, 0}, {2, 0}, {3, 0}, {1, 1}, {2, 1}}), kTol);
  EXPECT_NEAR(oracle.entropy({}), 0.0, kTol);
}

TEST(Entropy, ClosedFormValuesGF5) {
  const auto model = gruppen_model(gf5_layout());
  EntropyOracle oracle(model);
  const double b = std::log2(5.0);
  for (int i = 1; i <= 3; ++i) {
    EXPECT_NEAR(oracle.entropy({"s" + std::to_string(i)}), b, kTol);
    EXPECT_NEAR(oracle.entropy({"h" + std::to_string(i)}), b, kTol);  // (n-k) log|F|
  }
  EXPECT_NEAR(oracle.entropy({"s1", "s2", "s3"}), 3 * b, kTol);
  EXPECT_NEAR(oracle.entropy({"s1", "s2", "s3", "h1"}), 4 * b, kTol);
  // Any two bundles fix r.
  EXPECT_NEAR(oracle.entropy({"s1", "h1", "s2", "h2", "s3", "h3"}), 4 * b, kTol);
  EXPECT_NEAR(oracle.conditional({"s3"}, {"s1", "h1", "s2", "h2"}), 0.0, kTol);
  EXPECT_NEAR(oracle.conditional({"s3"}, {"s1", "h1", "s2"}), b, kTol);
}

TEST(Entropy, ShannonPropertiesHold) {
  const auto model = gruppen_model(gf5_layout());
  EntropyOracle oracle(model);
  const auto report =
      oracle.closed_report({{"s1"}, {"s2"}, {"h1"}, {"h2", "s3"}, {"s1", "h1"}, {"s2", "s3", "h3"}, {"h1", "h2"}});
  EXPECT_TRUE(report.claim1_violations().empty());
  EXPECT_NEAR(report.at({"s1", "h1"}), 2 * std::log2(5.0), kTol);
}

TEST(Entropy, ShareBoundInequalityHolds) {
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{3, 5}, {4, 7}}) {
    const auto model = gruppen_model(layout_compact(Params::for_analysis(n, 2, FieldSpec::prime(q))));
    EntropyOracle oracle(model);
    const auto checks = share_bound_checks(oracle, n, 2);
    EXPECT_EQ(checks.size(), n * (n - 1));
    for (const auto& c : checks) EXPECT_GE(c.lhs + kTol, c.rhs);
  }
}

TEST(Perfectness, RealSchemePassesGF5) {
  const auto report = verify_perfectness(gruppen_model(gf5_layout()), 3, 2);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.cases.size(), 9u);  // each target, coalitions of size 0 or 1
  for (const auto& c : report.cases) EXPECT_NEAR(c.bits, std::log2(5.0), kTol);
}

TEST(Perfectness, RealSchemePassesGF7FourParticipants) {
  const auto layout = layout_compact(Params::for_analysis(4, 2, FieldSpec::prime(7)));
  const auto model = gruppen_model(layout);
  EntropyOracle oracle(model);
  for (int i = 1; i <= 4; ++i) EXPECT_NEAR(oracle.entropy({"h" + std::to_string(i)}), 2 * std::log2(7.0), kTol);
  EXPECT_TRUE(verify_perfectness(model, 4, 2).passed());
}

TEST(Perfectness, PairwiseSumSabotageFails) {
  for (const auto& f : {FieldSpec::prime(5), FieldSpec::binary(2)}) {
    const auto model = pairwise_sum_model(f);
    const auto report = verify_perfectness(model, 3, 2);
    EXPECT_FALSE(report.passed());
    EXPECT_EQ(report.failures.size(), 6u);
    for (const auto& c : report.failures) EXPECT_NEAR(c.bits, 0.0, kTol);
  }
}

// A perfectness check on a layout whose points collide must fail: the
// shares of participant 1 coincide with the secret of participant 3.
TEST(Perfectness, CollidingPointsFail) {
  const auto f = FieldSpec::prime(5);
  EnumeratedModel model(5, 625);
  for (int i = 1; i <= 3; ++i) model.add_variable("s" + std::to_string(i), 1);
  for (int i = 1; i <= 3; ++i) model.add_variable("h" + std::to_string(i), 1);
  const std::array<int, 6> xs = {0, 1, 2, 2, 3, 4};  // s1 s2 s3 h1 h2 h3
  model.tabulate([&](std::uint64_t o, std::uint32_t* row) {
    std::vector<FieldElement> c;
    for (int d = 0; d < 4; ++d, o /= 5) c.push_back(FieldElement::from_integer(f, static_cast<std::int64_t>(o % 5)));
    const Poly r(c);
    for (int v = 0; v < 6; ++v) row[v] = static_cast<std::uint32_t>(r.eval(FieldElement::from_integer(f, xs[v])).value64());
  });
  EXPECT_FALSE(verify_perfectness(model, 3, 2).passed());
}

// H(view) equals rank times log2 p for random linear views.
TEST(RankEntropy, AgreeOnRandomViews) {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const std::size_t rows = 1 + rng() % 6;
    std::vector<ModRow> fs(rows, ModRow(4));
    for (auto& r : fs)
      for (auto& v : r) v = rng() % 5;
    const auto model = linear_model(5, 4, fs);
    EntropyOracle oracle(model);
    VarSet all;
    for (std::size_t m = 0; m < rows; ++m) all.insert("v" + std::to_string(m));
    EXPECT_NEAR(oracle.entropy(all), static_cast<double>(rank_mod_p(fs, 5, 4)) * std::log2(5.0), kTol);
  }
}
