#include <gtest/gtest.h>

#include "gruppen/error.hpp"
#include "gruppen/harness.hpp"
#include "gruppen/knowledge.hpp"
#include "gruppen/linalg.hpp"
#include "oracles.hpp"

using namespace gruppen;

namespace {

using IntRow = std::vector<std::int64_t>;

IntRow vandermonde(std::int64_t x, std::int64_t p, std::size_t d) {
  IntRow row(d);
  std::int64_t pw = 1;
  for (auto& v : row) {
    v = pw;
    pw = pw * x % p;
  }
  return row;
}

IntRow combine(std::initializer_list<std::pair<std::uint64_t, IntRow>> terms, std::int64_t p) {
  IntRow out(terms.begin()->second.size(), 0);
  for (const auto& [c, row] : terms)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (out[i] + static_cast<std::int64_t>(c) * row[i]) % p;
  return out;
}

std::uint64_t smallest_prime_above(std::uint64_t m) {
  for (std::uint64_t p = m + 1;; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
    if (prime) return p;
  }
}

PointLayout small_layout(unsigned n, unsigned k) {
  return layout_default(Params(n, k, FieldSpec::prime(smallest_prime_above(n * (n - k + 1)))));
}

const std::vector<SessionDescriptor> kNaiveByOne = {{1, 1, {2, 3}, RecoveryMode::naive}};

PointLayout alice_layout() { return layout_secrets_first(Params(3, 2, FieldSpec::prime(13))); }

}  // namespace

TEST(Linalg, RankAgreesWithOracle) {
  Rng rng(1);
  for (std::uint64_t p : {2ull, 5ull, 13ull, 2147483647ull}) {
    for (int t = 0; t < 50; ++t) {
      const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
      std::vector<ModRow> m(rows, ModRow(cols));
      std::vector<IntRow> o(rows, IntRow(cols));
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          // Sparse entries make rank deficiency common.
          const std::uint64_t v = rng() % 3 == 0 ? rng() % p : 0;
          m[i][j] = v;
          o[i][j] = static_cast<std::int64_t>(v);
        }
      if (p < 100) ASSERT_EQ(rank_mod_p(m, p, cols), oracle::rank(o, static_cast<std::int64_t>(p)));
      for (const auto& c : left_kernel(m, p, cols)) {
        ModRow sum(cols, 0);
        for (std::size_t i = 0; i < rows; ++i)
          for (std::size_t j = 0; j < cols; ++j) sum[j] = (sum[j] + c[i] * m[i][j]) % p;
        ASSERT_EQ(sum, ModRow(cols, 0));
      }
      EXPECT_EQ(left_kernel(m, p, cols).size(), rows - rank_mod_p(m, p, cols));
    }
  }
}

TEST(Knowledge, SingleParticipantEmptyAndQuorum) {
  const auto layout = alice_layout();
  const std::vector<SessionDescriptor> none;
  const auto one = km_from_view(layout, coalition_view(layout, none, {1}));
  EXPECT_EQ(one.rows().size(), 2u);
  EXPECT_EQ(km_rank(one), 2u);
  EXPECT_EQ(km_codim(one), 2u);
  const auto empty = km_from_view(layout, View{});
  EXPECT_EQ(km_rank(empty), 0u);
  EXPECT_EQ(km_codim(empty), 4u);
  const auto quorum = km_from_view(layout, coalition_view(layout, none, {1, 3}));
  EXPECT_EQ(km_rank(quorum), 4u);
  EXPECT_EQ(km_codim(quorum), 0u);
}

// The requester's rows after the naive recovery, built independently from the
// published Lagrange coefficients.
TEST(Knowledge, RequesterViewRankThreeCodimOne) {
  const std::int64_t p = 13;
  const auto layout = alice_layout();
  const auto km = km_from_view(layout, coalition_view(layout, kNaiveByOne, {1}));
  EXPECT_EQ(km_rank(km), 3u);
  EXPECT_EQ(km_codim(km), 1u);
  const auto f = [&](std::int64_t a, std::int64_t b) { return oracle::frac(a, b, p); };
  const std::vector<IntRow> rows = {
      vandermonde(3, p, 4),  // the requester's share; its secret is lost
      combine({{f(10, 3), vandermonde(1, p, 4)}, {f(5, 3), vandermonde(4, p, 4)}}, p),
      combine({{f(-10, 3), vandermonde(2, p, 4)}, {f(-2, 3), vandermonde(5, p, 4)}}, p),
  };
  EXPECT_EQ(oracle::rank(rows, p), 3u);
  for (const auto& r : km.rows()) {
    auto with = rows;
    with.emplace_back(r.coeffs.begin(), r.coeffs.begin() + 4);
    EXPECT_EQ(oracle::rank(with, p), 3u) << r.label;
  }
}

TEST(Knowledge, DuplicateRowsDoNotRaiseRank) {
  const auto layout = alice_layout();
  View v;
  v.add_bundle(1, 2);
  v.add_bundle(1, 2);
  v.add(ViewItem::point(1, 1));
  const auto km = km_from_view(layout, v);
  EXPECT_EQ(km_rank(km), 2u);
}

TEST(Knowledge, LeakedCombinationIsDifferenceOfSecrets) {
  const auto layout = alice_layout();
  const auto km = km_from_view(layout, coalition_view(layout, kNaiveByOne, {1}));
  const std::vector<ModRow> targets = {point_functional(layout, 2, 0), point_functional(layout, 3, 0)};
  const auto c = km_leaked_combination(km, targets);
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (ModRow{12, 1}));  // -s2 + s3, i.e. r(2) - r(1)
  EXPECT_FALSE(km.determines(targets[0]));
  EXPECT_FALSE(km.determines(targets[1]));
  // One granted secret then determines the other.
  const auto granted = km_from_view(layout, coalition_view(layout, kNaiveByOne, {1}, {2}));
  EXPECT_TRUE(granted.determines(targets[1]));
}

TEST(Knowledge, NoLeakWithoutRecovery) {
  for (unsigned n = 3; n <= 6; ++n)
    for (unsigned k = 2; k < n; ++k) {
      const auto layout = small_layout(n, k);
      std::vector<unsigned> everyone;
      for (unsigned i = 1; i <= n; ++i) everyone.push_back(i);
      for (const auto& c : subsets_between(everyone, 1, k - 1)) {
        const auto km = km_from_view(layout, coalition_view(layout, {}, c));
        ASSERT_EQ(km.codim(), (k - c.size()) * (n - k + 1));
        std::vector<ModRow> targets;
        for (unsigned i = 1; i <= n; ++i)
          if (!c.contains(i)) targets.push_back(point_functional(layout, i, 0));
        ASSERT_FALSE(km_leaked_combination(km, targets));
      }
    }
}

// Naive recovery reveals a combination of the quorum's secrets to the requester.
TEST(Knowledge, NaiveRecoveryLowersCoalitionCodim) {
  for (unsigned n = 3; n <= 6; ++n)
    for (unsigned k = 2; k < n; ++k) {
      const auto layout = small_layout(n, k);
      std::vector<unsigned> quorum;
      for (unsigned i = 2; i <= k + 1; ++i) quorum.push_back(i);
      const std::vector<SessionDescriptor> s = {{1, 1, quorum, RecoveryMode::naive}};
      const auto km = km_from_view(layout, coalition_view(layout, s, {1}));
      // n-k share values plus k contributions, all independent
      EXPECT_EQ(km.rank(), n) << n << " " << k;
    }
}

// Masked and full-state modes give the requester exactly what it lost.
TEST(Knowledge, MaskedRecoveryAddsOnlyTheLostState) {
  for (unsigned n = 3; n <= 6; ++n)
    for (unsigned k = 2; k < n; ++k) {
      const auto layout = small_layout(n, k);
      std::vector<unsigned> quorum;
      for (unsigned i = 2; i <= k + 1; ++i) quorum.push_back(i);
      for (auto mode : {RecoveryMode::masked, RecoveryMode::full_state}) {
        const std::vector<SessionDescriptor> s = {{1, 1, quorum, mode}};
        const std::vector<SessionDescriptor> none;
        const auto before = km_from_view(layout, coalition_view(layout, none, {1})).rank();
        const auto retained = mode == RecoveryMode::masked ? before - 1 : 0;
        const auto after = km_from_view(layout, coalition_view(layout, s, {1})).rank();
        EXPECT_EQ(after - retained, mode == RecoveryMode::masked ? 1u : n - k + 1);
        EXPECT_EQ(after, before);
        // Every coalition of up to k-1 keeps the codimension it had before.
        std::vector<unsigned> everyone;
        for (unsigned i = 1; i <= n; ++i) everyone.push_back(i);
        for (const auto& c : subsets_between(everyone, 1, k - 1))
          ASSERT_EQ(km_from_view(layout, coalition_view(layout, s, c)).codim(),
                    km_from_view(layout, coalition_view(layout, none, c)).codim());
      }
    }
}

TEST(Knowledge, RepeatedMaskedRecoveryKeepsCodim) {
  const auto layout = small_layout(5, 3);
  std::vector<SessionDescriptor> s;
  std::vector<unsigned> everyone = {1, 2, 3, 4, 5};
  std::map<std::set<unsigned>, std::size_t> first;
  for (unsigned run = 1; run <= 10; ++run) {
    const unsigned p = 1 + run % 5;
    std::vector<unsigned> q;
    for (unsigned i = 1; i <= 5 && q.size() < 3; ++i)
      if (i != p) q.push_back(i);
    s.push_back({run, p, q, run % 2 ? RecoveryMode::masked : RecoveryMode::full_state});
    for (const auto& c : subsets_between(everyone, 1, 2)) {
      const auto codim = km_from_view(layout, coalition_view(layout, s, c)).codim();
      if (run == 1) first[c] = codim;
      else ASSERT_EQ(codim, first[c]) << "run " << run;
    }
  }
}

// Transcript-derived views agree with the descriptor-derived ones.
TEST(Knowledge, TranscriptViewMatchesCoalitionView) {
  const auto layout = alice_layout();
  Rng rng(1);
  const Dealing d = deal_random(layout, rng);
  for (auto mode : {RecoveryMode::naive, RecoveryMode::masked, RecoveryMode::full_state}) {
    Simulation sim(layout, {1, 2, 3});
    for (unsigned i = 1; i <= 3; ++i) sim.party(i).install(d.bundle(i));
    sim.run_recovery(1, {2, 3}, mode);
    const auto desc = sim.transcript().recovery_sessions();
    for (const auto& c : std::vector<std::set<unsigned>>{{1}, {2}, {3}, {1, 2}}) {
      const auto a = km_from_view(layout, adversary_view(sim.transcript(), c));
      const auto b = km_from_view(layout, coalition_view(layout, desc, c));
      EXPECT_EQ(a.rank(), b.rank());
    }
  }
}

TEST(Knowledge, BinaryLayoutsUseAPrimeTwin) {
  const auto layout = layout_default(Params(4, 2, FieldSpec::binary(8)));
  const auto twin = analysis_layout(layout);
  EXPECT_EQ(twin.params().spec()->modulus(), 13u);
  for (unsigned i = 1; i <= 4; ++i)
    for (unsigned j = 0; j < 3; ++j) EXPECT_EQ(twin.point(i, j).value64(), layout.point(i, j).value64());
}

TEST(Gate, FirstNaiveAcceptedRepeatRefused) {
  const auto layout = alice_layout();
  RecoveryGate gate(layout);
  const SessionDescriptor first{1, 1, {2, 3}, RecoveryMode::naive};
  EXPECT_NO_THROW(gate.check(first));
  gate.record(first);
  EXPECT_EQ(gate.excluded(), (std::set<unsigned>{1}));
  EXPECT_THROW(gate.check({2, 1, {2, 3}, RecoveryMode::naive}), RefusedError);
  EXPECT_THROW(gate.check({2, 2, {1, 3}, RecoveryMode::naive}), RefusedError);
  EXPECT_NO_THROW(gate.check({2, 1, {2, 3}, RecoveryMode::masked}));
  EXPECT_EQ(gate.coalition_codim({1}), 1u);
  EXPECT_EQ(gate.min_coalition_codim(), 1u);
}

// After one naive recovery, a second one by another participant lets a pair
// that includes the first requester fix a third secret.
TEST(Gate, RefusesWhenACoalitionWouldLearnASecret) {
  const auto layout = small_layout(5, 3);
  RecoveryGate gate(layout);
  const SessionDescriptor first{1, 1, {2, 3, 4}, RecoveryMode::naive};
  ASSERT_NO_THROW(gate.check(first));
  gate.record(first);
  try {
    gate.check({2, 2, {3, 4, 5}, RecoveryMode::naive});
    FAIL() << "second naive recovery must be refused";
  } catch (const RefusedError& e) {
    EXPECT_NE(std::string(e.what()).find("coalition {1,2} would learn the secret of participant 3"), std::string::npos);
  }
  // Refusals leave no trace in the gate.
  EXPECT_EQ(gate.history().size(), 1u);
}

TEST(Gate, FirstNaiveRecoveryCanAlreadyDisclose) {
  const auto layout = small_layout(6, 4);
  RecoveryGate gate(layout);
  EXPECT_THROW(gate.check({1, 1, {2, 3, 4, 5}, RecoveryMode::naive}), RefusedError);
  EXPECT_NO_THROW(gate.check({1, 1, {2, 3, 4, 5}, RecoveryMode::masked}));
}
