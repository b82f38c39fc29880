// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gruppen/entropy.hpp"
#include "gruppen/error.hpp"
#include "gruppen/harness.hpp"
#include "gruppen/io.hpp"
#include "gruppen/knowledge.hpp"
#include "gruppen/recovery.hpp"
#include "gruppen/setup.hpp"

using namespace gruppen;

namespace {

constexpr double kBitsTolerance = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

std::uint64_t smallest_prime_above(std::uint64_t m) {
  for (std::uint64_t p = m + 1;; ++p) {
    bool prime = p > 1;
    for (std::uint64_t d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
    if (prime) return p;
  }
}

// a / b mod p via Fermat, independent of the field code.
std::uint64_t ratio_mod(std::int64_t a, std::int64_t b, std::uint64_t p) {
  auto norm = [&](std::int64_t v) {
    const auto m = static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(((v % m) + m) % m);
  };
  std::uint64_t inv = 1, base = norm(b), e = p - 2;
  for (; e; e >>= 1, base = base * base % p)
    if (e & 1) inv = inv * base % p;
  return norm(a) * inv % p;
}

std::vector<unsigned> range1(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned i = 1; i <= n; ++i) out.push_back(i);
  return out;
}

std::vector<std::uint64_t> party_seeds(std::uint64_t seed, unsigned n) {
  std::vector<std::uint64_t> out;
  for (unsigned i = 1; i <= n; ++i) out.push_back(derive_seed(seed, i));
  return out;
}

PointLayout admissible_layout(unsigned n, unsigned k) {
  return layout_default(Params(n, k, FieldSpec::prime(smallest_prime_above(n * (n - k + 1)))));
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome share_size() {
  Outcome o;
  std::size_t dealings = 0;
  for (unsigned n = 3; n <= 6; ++n)
    for (unsigned k = 2; k < n; ++k)
      for (const auto& field : {FieldSpec::prime(smallest_prime_above(n * (n - k + 1))), FieldSpec::binary(8),
                                FieldSpec::binary(128)})
        for (LayoutId id : {LayoutId::participant_major, LayoutId::secrets_first}) {
          const PointLayout layout(Params(n, k, field), id);
          Rng rng(n * 100 + k);
          const Dealing d = deal_random(layout, rng);
          ++dealings;
          for (const auto& b : d.bundles)
            if (b.share.size() != n - k) {
              o.pass = false;
              o.detail = fmt("n=%u k=%u participant %u holds %zu elements", n, k, b.participant, b.share.size());
              return o;
            }
        }
  o.detail = fmt("%zu dealings, every share has n-k elements", dealings);
  return o;
}

Outcome soundness() {
  Outcome o;
  std::size_t quorums = 0;
  for (unsigned n = 3; n <= 6; ++n)
    for (unsigned k = 2; k < n; ++k) {
      const auto layout = admissible_layout(n, k);
      Rng rng(7 * n + k);
      const Dealing d = deal_random(layout, rng);
      for (const auto& q : subsets_between(range1(n), k, k)) {
        std::vector<ParticipantBundle> bs;
        for (unsigned i : q) bs.push_back(d.bundle(i));
        ++quorums;
        if (reconstruct_all(layout, bs).secrets != d.secrets()) {
          o.pass = false;
          o.detail = fmt("mismatch at n=%u k=%u", n, k);
          return o;
        }
      }
    }
  o.detail = fmt("%zu quorums recovered all secrets", quorums);
  return o;
}

Outcome lagrange_fixture() {
  Outcome o;
  const std::vector<std::pair<std::int64_t, std::int64_t>> at0 = {{10, 3}, {5, 3}, {-10, 3}, {-2, 3}};
  const std::vector<std::pair<std::int64_t, std::int64_t>> at3 = {{-1, 6}, {2, 3}, {2, 3}, {-1, 6}};
  for (std::uint64_t p : {13ull, 31ull}) {
    const auto f = FieldSpec::prime(p);
    std::vector<FieldElement> nodes;
    for (int x : {1, 4, 2, 5}) nodes.push_back(FieldElement::from_integer(f, x));
    for (auto [target, want] : {std::pair{0, &at0}, std::pair{3, &at3}}) {
      const auto row = lagrange_coefficients(nodes, FieldElement::from_integer(f, target));
      for (std::size_t m = 0; m < 4; ++m)
        if (row.lambdas[m].value64() != ratio_mod((*want)[m].first, (*want)[m].second, p)) {
          o.pass = false;
          o.detail = fmt("GF(%llu) target %d coefficient %zu", static_cast<unsigned long long>(p), target, m);
          return o;
        }
    }
  }
  o.detail = "targets 0 and 3 exact in GF(13) and GF(31)";
  return o;
}

Outcome leak_reproduction() {
  Outcome o;
  const std::uint64_t p = 13;
  const auto f = FieldSpec::prime(p);
  const auto layout = layout_secrets_first(Params(3, 2, f));
  const RecoverySession rs(layout, 1, {2, 3}, RecoveryMode::naive);
  Rng rng(2024);
  int held = 0;
  for (int t = 0; t < 1000; ++t) {
    const Dealing d = deal_random(layout, rng);
    const std::vector<Contribution> cs = {naive_contribution(rs, d.bundle(2)), naive_contribution(rs, d.bundle(3))};
    const auto& r = *d.polynomial;
    const auto want = r.eval(FieldElement::from_integer(f, 2)) - r.eval(FieldElement::from_integer(f, 1));
    if (leak_extract(rs, d.bundle(1).share.at(0), cs) == want) ++held;
  }
  const std::vector<SessionDescriptor> s = {{1, 1, {2, 3}, RecoveryMode::naive}};
  const auto km = km_from_view(layout, coalition_view(layout, s, {1}));
  const std::vector<ModRow> targets = {point_functional(layout, 2, 0), point_functional(layout, 3, 0)};
  const auto c = km_leaked_combination(km, targets);
  const bool proportional = c && (*c)[1] != 0 && ((*c)[0] + (*c)[1]) % p == 0;
  o.pass = held == 1000 && proportional;
  o.detail = fmt("identity held %d/1000 over GF(13); leaked combination %s", held,
                 proportional ? "proportional to (-1,1)" : "wrong");
  return o;
}

// The coalition is the requester plus k-2 others. Its codimension is
// n-2k+2 plus the number of those others who sat in the quorum.
Outcome codimension_accounting() {
  Outcome o;
  std::size_t coalitions = 0;
  std::string exact;
  for (unsigned n = 3; n <= 6; ++n)
    for (unsigned k = 2; k < n; ++k) {
      const auto layout = admissible_layout(n, k);
      std::vector<unsigned> others = range1(n);
      others.erase(others.begin());
      std::size_t best = layout.params().degree_bound();
      for (const auto& quorum : subsets_between(others, k, k)) {
        const std::vector<SessionDescriptor> s = {{1, 1, {quorum.begin(), quorum.end()}, RecoveryMode::naive}};
        for (auto g : subsets_between(others, k - 2, k - 2)) {
          std::size_t overlap = 0;
          for (unsigned m : g) overlap += quorum.contains(m);
          g.insert(1);
          const auto codim = km_from_view(layout, coalition_view(layout, s, g)).codim();
          const long formula = static_cast<long>(n) - 2L * k + 2 + static_cast<long>(overlap);
          ++coalitions;
          best = std::min(best, codim);
          if (static_cast<long>(codim) != formula) {
            o.pass = false;
            o.detail = fmt("n=%u k=%u: codimension %zu, formula %ld", n, k, codim, formula);
            return o;
          }
        }
      }
      if (n >= 2 * k - 1 && best != n - 2 * (k - 1)) {
        o.pass = false;
        o.detail = fmt("n=%u k=%u: minimum %zu differs from n-2(k-1)", n, k, best);
        return o;
      }
      if (n >= 2 * k - 1) exact += (exact.empty() ? "" : " ") + fmt("(%u,%u)", n, k);
    }
  o.detail = fmt("%zu coalitions match n-2k+2+|G∩B|; minimum equals n-2(k-1) for n>=2k-1: %s", coalitions,
                 exact.c_str());
  return o;
}

// Rank of a coalition's view read straight from the simulated transcript.
std::size_t view_rank(const PointLayout& layout, const Transcript& t, const std::set<unsigned>& c) {
  return km_from_view(layout, adversary_view(t, c)).rank();
}

Outcome masked_non_leakage() {
  Outcome o;
  std::size_t checks = 0;
  for (unsigned n = 3; n <= 6; ++n)
    for (unsigned k = 2; k < n; ++k) {
      const auto layout = admissible_layout(n, k);
      const unsigned slots = n - k + 1;
      const auto coalitions = subsets_between(range1(n), 1, k - 1);
      for (auto mode : {RecoveryMode::masked, RecoveryMode::full_state}) {
        Rng rng(n * 31 + k);
        const Dealing d = deal_random(layout, rng);
        Simulation sim(layout, party_seeds(n + k, n));
        for (const auto& b : d.bundles) sim.party(b.participant).install(b);
        std::map<std::set<unsigned>, std::size_t> initial;
        for (const auto& c : coalitions) initial[c] = view_rank(layout, sim.transcript(), c);

        std::vector<unsigned> quorum;
        for (unsigned i = 2; i <= k + 1; ++i) quorum.push_back(i);
        sim.run_recovery(1, quorum, mode);
        const std::size_t retained = mode == RecoveryMode::masked ? slots - 1 : 0;
        const std::size_t gained = view_rank(layout, sim.transcript(), {1}) - retained;
        const std::size_t want = mode == RecoveryMode::masked ? 1 : slots;
        if (gained != want || !(*sim.party(1).state() == d.bundle(1))) {
          o.pass = false;
          o.detail = fmt("n=%u k=%u %s: requester gained %zu, expected %zu", n, k,
                         std::string(to_string(mode)).c_str(), gained, want);
          return o;
        }
        for (unsigned run = 0; run <= 5; ++run) {
          if (run > 0) {
            const unsigned p = 1 + run % n;
            std::vector<unsigned> q;
            for (unsigned i = 1; i <= n && q.size() < k; ++i)
              if (i != p) q.push_back(i);
            sim.run_recovery(p, q, mode);
          }
          for (const auto& c : coalitions) {
            ++checks;
            if (view_rank(layout, sim.transcript(), c) != initial[c]) {
              o.pass = false;
              o.detail = fmt("n=%u k=%u: a coalition's rank changed after run %u", n, k, run + 1);
              return o;
            }
          }
        }
      }
    }
  o.detail = fmt("secret +1, full-state +(n-k+1); %zu coalition ranks unchanged over 6 runs", checks);
  return o;
}

Outcome entropy_verification() {
  Outcome o;
  std::string detail;
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{3, 5}, {4, 7}}) {
    const unsigned k = 2;
    const auto layout = layout_compact(Params::for_analysis(n, k, FieldSpec::prime(q)));
    const auto model = gruppen_model(layout);
    EntropyOracle oracle(model);
    const double bits = std::log2(static_cast<double>(q));
    double worst = 0;
    for (unsigned i = 1; i <= n; ++i)
      worst = std::max(worst, std::abs(oracle.entropy({"h" + std::to_string(i)}) - (n - k) * bits));
    const auto report = verify_perfectness(model, n, k, kBitsTolerance);
    for (const auto& c : report.cases) worst = std::max(worst, std::abs(c.bits - bits));
    if (worst > kBitsTolerance || !report.passed()) o.pass = false;
    detail += fmt("%sGF(%u) n=%u: %llu polynomials, %zu cases, max deviation %.1e bits", detail.empty() ? "" : "; ",
                  q, n, static_cast<unsigned long long>(model.outcomes()), report.cases.size(), worst);
  }
  o.detail = detail;
  return o;
}

Outcome rank_entropy() {
  Outcome o;
  const auto layout = layout_compact(Params::for_analysis(3, 2, FieldSpec::prime(5)));
  const auto model = gruppen_model(layout);
  EntropyOracle oracle(model);
  Rng rng(50);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    VarSet vars;
    View view;
    std::uint64_t pick = 0;
    while (pick == 0) pick = rng() % 64;
    for (unsigned i = 1; i <= 3; ++i) {
      if (pick >> (i - 1) & 1) {
        vars.insert("s" + std::to_string(i));
        view.add(ViewItem::secret(i));
      }
      if (pick >> (i + 2) & 1) {
        vars.insert("h" + std::to_string(i));
        view.add(ViewItem::point(i, 1));
      }
    }
    const double rank_bits = static_cast<double>(km_from_view(layout, view).rank()) * std::log2(5.0);
    worst = std::max(worst, std::abs(oracle.entropy(vars) - rank_bits));
  }
  o.pass = worst <= kBitsTolerance;
  o.detail = fmt("50 views on GF(5) n=3 k=2, max |H - rank*log2 5| = %.1e bits", worst);
  return o;
}

Outcome setup_equivalence() {
  Outcome o;
  std::size_t cases = 0;
  for (unsigned n = 3; n <= 5; ++n)
    for (unsigned k = 2; k < n; ++k) {
      const auto layout = admissible_layout(n, k);
      const auto f = layout.params().spec();
      Rng rng(n * k);
      std::vector<FieldElement> secrets;
      for (unsigned i = 0; i < n; ++i) secrets.push_back(random_element(f, rng));
      const auto seeds = party_seeds(11 * n + k, n);
      const SetupRun run = run_setup(layout, secrets, seeds);
      std::vector<SetupContribution> cs;
      for (unsigned i = 1; i <= n; ++i) {
        Rng own(seeds[i - 1]);
        cs.push_back(setup_deal_own(layout, i, secrets[i - 1], own));
      }
      const Dealing central = setup_aggregate(layout, cs);
      for (unsigned i = 1; i <= n; ++i)
        if (format_bundle(layout, run.dealing.bundle(i)) != format_bundle(layout, central.bundle(i))) {
          o.pass = false;
          o.detail = fmt("n=%u k=%u: bundle %u differs", n, k, i);
          return o;
        }

      // Honest party i against every k-1 coalition C not containing i: the
      // sub-shares C received, plus the public zeros of i's sub-polynomial at
      // every other secret point.
      const std::uint64_t p = f->modulus();
      const std::size_t dim = layout.params().degree_bound();
      for (unsigned i = 1; i <= n; ++i) {
        std::vector<unsigned> others = range1(n);
        others.erase(others.begin() + (i - 1));
        for (const auto& c : subsets_between(others, k - 1, k - 1)) {
          std::vector<ModRow> received, full;
          for (unsigned m : c)
            for (unsigned j = 1; j <= n - k; ++j) received.push_back(point_functional(layout, m, j));
          full = received;
          for (unsigned j : others) full.push_back(point_functional(layout, j, 0));
          EchelonBasis basis(p, dim);
          for (const auto& r : full) basis.insert(r);
          ++cases;
          if (rank_mod_p(received, p, dim) != (k - 1) * (n - k) || basis.contains(point_functional(layout, i, 0))) {
            o.pass = false;
            o.detail = fmt("n=%u k=%u: coalition learns about party %u", n, k, i);
            return o;
          }
        }
      }
    }
  o.detail = fmt("bundles byte-identical; %zu honest-party/coalition pairs full rank, secret undetermined", cases);
  return o;
}

Outcome negative_control() {
  Outcome o;
  const auto f = FieldSpec::prime(5);
  const auto sabotage = verify_perfectness(pairwise_sum_model(f), 3, 2, kBitsTolerance);
  const auto real = verify_perfectness(gruppen_model(layout_compact(Params::for_analysis(3, 2, f))), 3, 2,
                                       kBitsTolerance);
  o.pass = !sabotage.passed() && real.passed();
  o.detail = fmt("GF(5) n=3 k=2: pairwise-sum %s with %zu failures, real scheme %s",
                 sabotage.passed() ? "PASS" : "FAIL", sabotage.failures.size(), real.passed() ? "PASS" : "FAIL");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 = untimed
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "share size n-k", 1, share_size},
      {2, "soundness over all quorums", 5, soundness},
      {3, "Lagrange fixture", 1, lagrange_fixture},
      {4, "naive-recovery leak", 0, leak_reproduction},
      {5, "codimension accounting", 0, codimension_accounting},
      {6, "masked recovery non-leakage", 10, masked_non_leakage},
      {7, "exhaustive entropy verification", 60, entropy_verification},
      {8, "rank/entropy cross-validation", 0, rank_entropy},
      {9, "dealerless setup equivalence and security", 0, setup_equivalence},
      {10, "negative control", 0, negative_control},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += fmt(" [over %.0f s limit]", c.limit_seconds);
    }
    failed += !o.pass;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
