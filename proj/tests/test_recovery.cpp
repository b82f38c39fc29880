#include <gtest/gtest.h>

#include <map>

#include "gruppen/error.hpp"
#include "gruppen/recovery.hpp"
#include "oracles.hpp"

using namespace gruppen;

namespace {

FieldElement el(const FieldPtr& f, std::int64_t v) { return FieldElement::from_integer(f, v); }

std::uint64_t smallest_prime_above(std::uint64_t m) {
  for (std::uint64_t p = m + 1;; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
    if (prime) return p;
  }
}

struct Fixture {
  FieldPtr f;
  PointLayout layout;
  Dealing dealing;
};

Fixture fixture(std::uint64_t p, std::uint64_t seed) {
  const auto f = FieldSpec::prime(p);
  const auto layout = layout_secrets_first(Params(3, 2, f));
  Rng rng(seed);
  return {f, layout, deal_random(layout, rng)};
}

// Runs the masked exchange for one session, returning every member's contributions.
std::vector<Contribution> run_masked(const RecoverySession& rs, const Dealing& d, std::uint64_t seed) {
  std::vector<Rng> rngs;
  for (unsigned m : rs.quorum()) rngs.emplace_back(derive_seed(seed, m));
  const MaskMatrix masks = masked_round1(rs, rngs);
  std::vector<Contribution> out;
  for (unsigned m : rs.quorum()) {
    const MemberMasks view = masks.view_of(m);
    if (rs.mode() == RecoveryMode::masked) {
      out.push_back(masked_contribution(rs, d.bundle(m), view));
    } else {
      for (const auto& c : full_state_contribution(rs, d.bundle(m), view)) out.push_back(c);
    }
  }
  return out;
}

std::vector<std::vector<unsigned>> quorums_without(unsigned n, unsigned k, unsigned p) {
  std::vector<std::vector<unsigned>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (mask >> (p - 1) & 1) continue;
    if (static_cast<unsigned>(__builtin_popcount(mask)) != k) continue;
    std::vector<unsigned> q;
    for (unsigned i = 0; i < n; ++i)
      if (mask >> i & 1) q.push_back(i + 1);
    out.push_back(q);
  }
  return out;
}

}  // namespace

TEST(Session, Validation) {
  const auto fx = fixture(13, 1);
  EXPECT_THROW(RecoverySession(fx.layout, 1, {1, 2}, RecoveryMode::naive), UsageError);  // p in B
  EXPECT_THROW(RecoverySession(fx.layout, 1, {2}, RecoveryMode::naive), UsageError);     // |B| != k
  EXPECT_THROW(RecoverySession(fx.layout, 1, {2, 4}, RecoveryMode::naive), UsageError);
  EXPECT_THROW(RecoverySession(fx.layout, 0, {2, 3}, RecoveryMode::naive), UsageError);
  const RecoverySession rs(fx.layout, 1, {3, 2}, RecoveryMode::masked);
  EXPECT_EQ(rs.quorum(), (std::vector<unsigned>{2, 3}));
  EXPECT_EQ(parse_recovery_mode("full-state"), RecoveryMode::full_state);
  EXPECT_THROW(parse_recovery_mode("loud"), UsageError);
}

TEST(Naive, PublishedContributionsGF13) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto fx = fixture(13, seed);
    const auto& r = *fx.dealing.polynomial;
    const RecoverySession rs(fx.layout, 1, {2, 3}, RecoveryMode::naive);
    const auto tb = naive_contribution(rs, fx.dealing.bundle(2));
    const auto tc = naive_contribution(rs, fx.dealing.bundle(3));
    auto R = [&](int x) { return r.eval(el(fx.f, x)); };
    auto q = [&](std::int64_t a, std::int64_t b) { return FieldElement(fx.f, oracle::frac(a, b, 13)); };
    EXPECT_EQ(tb.value, q(10, 3) * R(1) + q(5, 3) * R(4));
    EXPECT_EQ(tc.value, q(-10, 3) * R(2) - q(2, 3) * R(5));
    EXPECT_EQ(tb.value + tc.value, R(0));
  }
}

TEST(Naive, EveryQuorumRecoversEveryRequester) {
  for (unsigned n = 3; n <= 6; ++n)
    for (unsigned k = 2; k < n; ++k) {
      const auto f = FieldSpec::prime(smallest_prime_above(n * (n - k + 1)));
      const auto layout = layout_default(Params(n, k, f));
      Rng rng(n + 100 * k);
      const Dealing d = deal_random(layout, rng);
      for (unsigned p = 1; p <= n; ++p)
        for (const auto& q : quorums_without(n, k, p)) {
          const RecoverySession rs(layout, p, q, RecoveryMode::naive);
          std::vector<Contribution> cs;
          for (unsigned m : q) cs.push_back(naive_contribution(rs, d.bundle(m)));
          ASSERT_EQ(combine_contributions(rs, cs).secret, *d.bundle(p).secret) << n << k << p;
        }
    }
}

TEST(Naive, NonMemberCannotContribute) {
  const auto fx = fixture(13, 2);
  const RecoverySession rs(fx.layout, 1, {2, 3}, RecoveryMode::naive);
  EXPECT_THROW(naive_contribution(rs, fx.dealing.bundle(1)), UsageError);
}

TEST(Masks, CountAndAntisymmetricCancellation) {
  const auto f = FieldSpec::prime(31);
  const auto layout = layout_default(Params(5, 3, f));
  for (auto mode : {RecoveryMode::masked, RecoveryMode::full_state}) {
    const RecoverySession rs(layout, 2, {1, 3, 5}, mode);
    std::vector<Rng> rngs = {Rng(1), Rng(2), Rng(3)};
    const MaskMatrix m = masked_round1(rs, rngs);
    const std::size_t slots = mode == RecoveryMode::masked ? 1 : 3;
    EXPECT_EQ(m.size(), 9 * slots);  // k^2 per target slot, self-masks included
    for (unsigned t = 0; t < slots; ++t) {
      FieldElement sum = FieldElement::zero(f);
      for (unsigned i : rs.quorum())
        for (unsigned j : rs.quorum()) sum += m.at(t, i, j) - m.at(t, j, i);
      EXPECT_TRUE(sum.is_zero());
    }
  }
}

TEST(Masks, ReproducibleUnderSeeds) {
  const auto fx = fixture(13, 3);
  const RecoverySession rs(fx.layout, 1, {2, 3}, RecoveryMode::masked);
  std::vector<Rng> a = {Rng(5), Rng(6)}, b = {Rng(5), Rng(6)};
  const auto ma = masked_round1(rs, a), mb = masked_round1(rs, b);
  ASSERT_EQ(ma.messages().size(), mb.messages().size());
  for (std::size_t i = 0; i < ma.messages().size(); ++i) EXPECT_EQ(ma.messages()[i].value, mb.messages()[i].value);
}

TEST(Masked, SumEqualsNaiveSum) {
  for (unsigned n = 3; n <= 6; ++n)
    for (unsigned k = 2; k < n; ++k) {
      const auto f = FieldSpec::prime(smallest_prime_above(n * (n - k + 1)));
      const auto layout = layout_default(Params(n, k, f));
      Rng rng(7 * n + k);
      const Dealing d = deal_random(layout, rng);
      for (unsigned p = 1; p <= n; ++p) {
        const auto q = quorums_without(n, k, p).front();
        const RecoverySession rs(layout, p, q, RecoveryMode::masked);
        const auto cs = run_masked(rs, d, p);
        ASSERT_EQ(combine_contributions(rs, cs).secret, *d.bundle(p).secret);
      }
    }
}

TEST(Masked, MissingMaskIsIncomplete) {
  const auto fx = fixture(13, 4);
  const RecoverySession rs(fx.layout, 1, {2, 3}, RecoveryMode::masked);
  Rng rng(1);
  MemberMasks partial{2, {}, {}};
  for (const auto& m : generate_masks(rs, 2, rng)) partial.record(m);
  EXPECT_THROW(masked_contribution(rs, fx.dealing.bundle(2), partial), ProtocolError);
  std::vector<Contribution> one = {naive_contribution(RecoverySession(fx.layout, 1, {2, 3}, RecoveryMode::naive),
                                                      fx.dealing.bundle(2))};
  EXPECT_THROW(combine_contributions(rs, one), ProtocolError);
}

// For a fixed t, t' = t + r_{2,3} - r_{3,2} takes every value equally often
// over all mask choices.
TEST(Masked, SingleContributionUniformOverMasksGF7) {
  const auto fx = fixture(7, 5);
  const RecoverySession rs(fx.layout, 1, {2, 3}, RecoveryMode::masked);
  std::map<std::uint64_t, int> counts;
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      MemberMasks m{2, {}, {}};
      m.record({2, 2, 0, el(fx.f, 3)});
      m.record({2, 3, 0, el(fx.f, a)});
      m.record({3, 2, 0, el(fx.f, b)});
      ++counts[masked_contribution(rs, fx.dealing.bundle(2), m).value.value64()];
    }
  ASSERT_EQ(counts.size(), 7u);
  for (const auto& [v, c] : counts) EXPECT_EQ(c, 7);
}

TEST(FullState, RecoveredBundleEqualsOriginal) {
  for (unsigned n = 3; n <= 6; ++n)
    for (unsigned k = 2; k < n; ++k) {
      const auto f = FieldSpec::prime(smallest_prime_above(n * (n - k + 1)));
      const auto layout = layout_default(Params(n, k, f));
      Rng rng(3 * n + k);
      const Dealing d = deal_random(layout, rng);
      for (unsigned p = 1; p <= n; ++p) {
        const auto q = quorums_without(n, k, p).back();
        const RecoverySession rs(layout, p, q, RecoveryMode::full_state);
        const auto cs = run_masked(rs, d, 10 + p);
        EXPECT_EQ(cs.size(), k * (n - k + 1));
        const auto state = combine_contributions(rs, cs);
        ASSERT_EQ(state.to_bundle(), d.bundle(p));
        ASSERT_EQ(combine_contributions(rs, run_masked(rs, d, 99)).to_bundle(), d.bundle(p));
      }
    }
}

TEST(FullState, BinaryField) {
  const auto layout = layout_default(Params(5, 3, FieldSpec::binary(16)));
  Rng rng(1);
  const Dealing d = deal_random(layout, rng);
  const RecoverySession rs(layout, 4, {1, 2, 5}, RecoveryMode::full_state);
  EXPECT_EQ(combine_contributions(rs, run_masked(rs, d, 1)).to_bundle(), d.bundle(4));
}

TEST(Leak, IdentityHoldsGF13AndGF31) {
  for (std::uint64_t p : {13ull, 31ull}) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto fx = fixture(p, seed);
      const RecoverySession rs(fx.layout, 1, {2, 3}, RecoveryMode::naive);
      const std::vector<Contribution> cs = {naive_contribution(rs, fx.dealing.bundle(2)),
                                            naive_contribution(rs, fx.dealing.bundle(3))};
      const auto& r = *fx.dealing.polynomial;
      const auto want = r.eval(el(fx.f, 2)) - r.eval(el(fx.f, 1));
      ASSERT_EQ(leak_extract(rs, fx.dealing.bundle(1).share[0], cs), want);
    }
  }
}

TEST(Leak, EqualSecretsGiveZero) {
  const auto f = FieldSpec::prime(13);
  const auto layout = layout_secrets_first(Params(3, 2, f));
  Rng rng(1);
  const std::vector<FieldElement> secrets = {el(f, 4), el(f, 9), el(f, 9)};
  const Dealing d = deal_with_secrets(layout, secrets, rng);
  const RecoverySession rs(layout, 1, {2, 3}, RecoveryMode::naive);
  const std::vector<Contribution> cs = {naive_contribution(rs, d.bundle(2)), naive_contribution(rs, d.bundle(3))};
  EXPECT_TRUE(leak_extract(rs, d.bundle(1).share[0], cs).is_zero());
}

TEST(Leak, WrongShapeRejected) {
  const auto f = FieldSpec::prime(13);
  const auto pm = layout_default(Params(3, 2, f));
  const RecoverySession rs(pm, 1, {2, 3}, RecoveryMode::naive);
  EXPECT_THROW(leak_extract(rs, el(f, 1), {}), UsageError);
  const auto sf7 = layout_secrets_first(Params(3, 2, FieldSpec::binary(3)));
  const RecoverySession bin(sf7, 1, {2, 3}, RecoveryMode::naive);
  EXPECT_THROW(leak_extract(bin, FieldElement::zero(sf7.params().spec()), {}), UsageError);
}
