#include <gtest/gtest.h>

#include <map>
#include <set>

#include "gruppen/error.hpp"
#include "gruppen/poly.hpp"
#include "oracles.hpp"

using namespace gruppen;

namespace {

FieldElement el(const FieldPtr& f, std::int64_t v) { return FieldElement::from_integer(f, v); }

std::vector<FieldElement> els(const FieldPtr& f, std::initializer_list<std::int64_t> vs) {
  std::vector<FieldElement> out;
  for (auto v : vs) out.push_back(el(f, v));
  return out;
}

// sum c_i x^i computed term by term
FieldElement power_sum(const Poly& r, const FieldElement& x) {
  FieldElement acc = FieldElement::zero(r.spec());
  FieldElement pw = FieldElement::one(r.spec());
  for (const auto& c : r.coeffs()) {
    acc += c * pw;
    pw *= x;
  }
  return acc;
}

}  // namespace

TEST(PolyEval, Fixtures) {
  const auto f = FieldSpec::prime(7);
  const Poly r(els(f, {2, 0, 1}));
  EXPECT_EQ(poly_eval(r, el(f, 3)), el(f, 4));
  EXPECT_EQ(poly_eval(r, el(f, 0)), el(f, 2));
  EXPECT_EQ(poly_eval(Poly(f, 5), el(f, 6)), FieldElement::zero(f));
}

TEST(PolyEval, HornerMatchesPowerSumAndPowerRow) {
  for (const auto& f : {FieldSpec::prime(13), FieldSpec::binary(8), FieldSpec::binary(128)}) {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
      const Poly r = random_poly(f, 7, rng);
      const auto x = random_element(f, rng);
      EXPECT_EQ(r.eval(x), power_sum(r, x));
      const auto row = power_row(x, 7);
      FieldElement dot = FieldElement::zero(f);
      for (std::size_t i = 0; i < 7; ++i) dot += row[i] * r[i];
      EXPECT_EQ(dot, r.eval(x));
    }
  }
  const Poly r(els(FieldSpec::prime(7), {1}));
  EXPECT_THROW(r.eval(el(FieldSpec::prime(13), 1)), UsageError);
}

class LagrangeFixture : public ::testing::TestWithParam<std::int64_t> {};

TEST_P(LagrangeFixture, PublishedCoefficients) {
  const std::int64_t p = GetParam();
  const auto f = FieldSpec::prime(static_cast<std::uint64_t>(p));
  const auto nodes = els(f, {1, 4, 2, 5});
  const auto at0 = lagrange_coefficients(nodes, el(f, 0));
  const std::vector<std::uint64_t> want0 = {oracle::frac(10, 3, p), oracle::frac(5, 3, p), oracle::frac(-10, 3, p),
                                            oracle::frac(-2, 3, p)};
  const auto at3 = lagrange_coefficients(nodes, el(f, 3));
  const std::vector<std::uint64_t> want3 = {oracle::frac(-1, 6, p), oracle::frac(2, 3, p), oracle::frac(2, 3, p),
                                            oracle::frac(-1, 6, p)};
  for (std::size_t m = 0; m < 4; ++m) {
    EXPECT_EQ(at0.lambdas[m].value64(), want0[m]) << "m=" << m;
    EXPECT_EQ(at3.lambdas[m].value64(), want3[m]) << "m=" << m;
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, LagrangeFixture, ::testing::Values(13, 31, 7, 101));

TEST(Lagrange, TargetAtNodeIsIndicator) {
  const auto f = FieldSpec::prime(13);
  const auto nodes = els(f, {1, 4, 2, 5});
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    const auto row = lagrange_coefficients(nodes, nodes[m]);
    for (std::size_t j = 0; j < nodes.size(); ++j)
      EXPECT_EQ(row.lambdas[j], j == m ? FieldElement::one(f) : FieldElement::zero(f));
  }
}

TEST(Lagrange, DuplicateNodesAreDegenerate) {
  const auto f = FieldSpec::prime(13);
  EXPECT_THROW(lagrange_coefficients(els(f, {1, 2, 1}), el(f, 0)), DegenerateInput);
  const std::vector<Point> pts = {{el(f, 1), el(f, 1)}, {el(f, 1), el(f, 2)}};
  EXPECT_THROW(interpolate(pts), DegenerateInput);
}

TEST(Lagrange, ReproducesRandomPolynomialsAndDualityWithInterpolate) {
  for (const auto& f : {FieldSpec::prime(13), FieldSpec::binary(8)}) {
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
      const Poly q = random_poly(f, 4, rng);
      const auto nodes = els(f, {1, 4, 2, 5});
      std::vector<FieldElement> values;
      std::vector<Point> pts;
      for (const auto& x : nodes) {
        values.push_back(q.eval(x));
        pts.push_back({x, q.eval(x)});
      }
      const Poly r = interpolate(pts);
      EXPECT_EQ(r, q);
      const auto target = random_element(f, rng);
      EXPECT_EQ(lagrange_coefficients(nodes, target).combine(values), q.eval(target));
      EXPECT_EQ(r.eval(target), q.eval(target));
    }
  }
}

TEST(Interpolate, SinglePointAndPadding) {
  const auto f = FieldSpec::prime(13);
  const std::vector<Point> one = {{el(f, 0), el(f, 9)}};
  const Poly c = interpolate(one);
  EXPECT_EQ(c.degree_bound(), 1u);
  EXPECT_EQ(c[0], el(f, 9));
  const Poly padded = interpolate(one, 4);
  EXPECT_EQ(padded.degree_bound(), 4u);
  EXPECT_EQ(padded.eval(el(f, 7)), el(f, 9));
}

TEST(Interpolate, EveryFourSubsetOfSixValuesAgrees) {
  const auto f = FieldSpec::prime(13);
  Rng rng(2);
  const Poly r = random_poly(f, 4, rng);
  std::vector<Point> six;
  for (int x = 0; x < 6; ++x) six.push_back({el(f, x), r.eval(el(f, x))});
  for (int mask = 0; mask < 64; ++mask) {
    if (__builtin_popcount(mask) != 4) continue;
    std::vector<Point> pick;
    for (int i = 0; i < 6; ++i)
      if (mask >> i & 1) pick.push_back(six[i]);
    EXPECT_EQ(interpolate(pick), r);
  }
}

TEST(Constrained, FullyConstrainedIsInterpolation) {
  const auto f = FieldSpec::prime(13);
  const std::vector<Point> pts = {{el(f, 0), el(f, 3)}, {el(f, 2), el(f, 1)}, {el(f, 7), el(f, 12)}};
  Rng rng(1);
  EXPECT_EQ(random_poly_constrained(f, 3, pts, rng), interpolate(pts));
}

TEST(Constrained, ConstraintsHoldOverManyRuns) {
  const auto f = FieldSpec::prime(31);
  Rng rng(99);
  for (int t = 0; t < 1000; ++t) {
    std::vector<Point> pts;
    for (int i = 0; i < 3; ++i) pts.push_back({el(f, 3 * i + 1), random_element(f, rng)});
    const Poly r = random_poly_constrained(f, 6, pts, rng);
    ASSERT_EQ(r.degree_bound(), 6u);
    for (const auto& p : pts) ASSERT_EQ(r.eval(p.x), p.y);
  }
}

TEST(Constrained, Errors) {
  const auto f = FieldSpec::prime(5);
  Rng rng(1);
  std::vector<Point> pts;
  for (int i = 0; i < 5; ++i) pts.push_back({el(f, i), el(f, 0)});
  EXPECT_THROW(random_poly_constrained(f, 4, pts, rng), UsageError);  // more constraints than D
  EXPECT_THROW(random_poly_constrained(f, 6, {}, rng), UsageError);   // field smaller than D
}

TEST(Constrained, FreeNodesAvoidConstraints) {
  const auto f = FieldSpec::prime(13);
  const std::vector<Point> pts = {{el(f, 0), el(f, 1)}, {el(f, 2), el(f, 1)}};
  const auto nodes = free_nodes(f, 5, pts);
  EXPECT_EQ(nodes, els(f, {1, 3, 4}));
}

// Every one of the 125 free-value choices gives a different admissible
// polynomial, so sampling is a bijection onto the coset.
TEST(Constrained, ExhaustiveBijectionGF5) {
  const auto f = FieldSpec::prime(5);
  const std::vector<Point> pts = {{el(f, 0), el(f, 0)}};
  std::set<std::vector<std::uint64_t>> seen;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c) {
        const Poly r = poly_from_free_values(f, 4, pts, els(f, {a, b, c}));
        ASSERT_EQ(r.eval(el(f, 0)), FieldElement::zero(f));
        std::vector<std::uint64_t> key;
        for (const auto& co : r.coeffs()) key.push_back(co.value64());
        seen.insert(key);
      }
  EXPECT_EQ(seen.size(), 125u);
}

// Uniform marginal at a point outside the constraints: every value appears
// equally often across all free-value choices.
TEST(Constrained, MarginalUniformGF5) {
  const auto f = FieldSpec::prime(5);
  const std::vector<Point> pts = {{el(f, 0), el(f, 2)}, {el(f, 1), el(f, 4)}};
  std::map<std::uint64_t, int> counts;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) ++counts[poly_from_free_values(f, 4, pts, els(f, {a, b})).eval(el(f, 4)).value64()];
  ASSERT_EQ(counts.size(), 5u);
  for (const auto& [v, c] : counts) EXPECT_EQ(c, 5) << v;
}
