#include "gruppen/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gruppen/entropy.hpp"
#include "gruppen/error.hpp"

namespace gruppen {

namespace {

std::string join(const std::vector<unsigned>& xs, const char* sep = ",") {
  std::string out;
  for (unsigned x : xs) out += (out.empty() ? "" : sep) + std::to_string(x);
  return out;
}

std::string join(const std::set<unsigned>& xs) { return join(std::vector<unsigned>(xs.begin(), xs.end())); }

std::string bits(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string header(const PointLayout& layout) {
  const Params& p = layout.params();
  return "n=" + std::to_string(p.n()) + " k=" + std::to_string(p.k()) + " field " + p.spec()->describe() +
         " layout " + std::string(to_string(layout.id()));
}

// "-r(1) + r(2)" style rendering of sum c[m] * r(point m).
std::string render_combination(const ModRow& c, const std::vector<std::string>& names, std::uint64_t p) {
  std::string out;
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (c[m] == 0) continue;
    std::string coeff = signed_repr(c[m], p);
    const bool negative = coeff.front() == '-';
    if (negative) coeff.erase(0, 1);
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    if (coeff != "1") out += coeff + "*";
    out += names[m];
  }
  return out.empty() ? "0" : out;
}

std::string point_name(const PointLayout& layout, unsigned participant, unsigned slot) {
  return "r(" + std::to_string(PointLayout::index_of(layout.params(), layout.id(), participant, slot)) + ")";
}

}  // namespace

std::string signed_repr(std::uint64_t v, std::uint64_t p) {
  v %= p;
  if (v > p / 2) return "-" + std::to_string(p - v);
  return std::to_string(v);
}

std::string deal_summary(const Dealing& dealing) {
  const Params& p = dealing.params();
  std::ostringstream out;
  out << "dealt " << header(dealing.layout) << "\n";
  out << "degree bound D=" << p.degree_bound() << ", " << p.point_count() << " evaluation points\n";
  out << "share size: " << p.share_size() << " elements/participant (" << p.share_size() * p.spec()->bit_length()
      << " bits)\n";
  return out.str();
}

std::string reconstruct_report(const PointLayout& layout, const Reconstruction& rec) {
  std::ostringstream out;
  out << "reconstructed " << header(layout) << "\n";
  for (std::size_t i = 0; i < rec.secrets.size(); ++i) out << "secret " << i + 1 << " " << rec.secrets[i].to_hex() << "\n";
  return out.str();
}

RecoverOutcome recover_from_bundles(const PointLayout& layout, const std::vector<ParticipantBundle>& bundles,
                                    unsigned requester, std::vector<unsigned> quorum, RecoveryMode mode,
                                    std::uint64_t seed, std::optional<RecoveryGate> gate) {
  const Params& params = layout.params();
  std::vector<std::uint64_t> seeds;
  for (unsigned i = 1; i <= params.n(); ++i) seeds.push_back(derive_seed(seed, i));
  Simulation sim(layout, seeds);
  std::set<unsigned> installed;
  for (const auto& b : bundles) {
    if (!installed.insert(b.participant).second)
      throw UsageError("two bundles for participant " + std::to_string(b.participant));
    sim.party(b.participant).install(b);
  }
  for (unsigned m : quorum)
    if (!installed.contains(m)) throw UsageError("no bundle for quorum member " + std::to_string(m));
  if (gate) {
    if (!(gate->layout() == layout)) throw UsageError("gate state belongs to different parameters");
    sim.gate() = std::move(*gate);
  } else {
    sim.set_gate_enabled(false);
  }
  RecoveredState state = sim.run_recovery(requester, std::move(quorum), mode);
  return {std::move(state), sim.transcript(), sim.gate()};
}

std::string recover_report(const RecoverySession& session, const RecoveredState& state) {
  std::ostringstream out;
  out << "recovered participant " << state.participant << " (" << to_string(session.mode()) << ", quorum "
      << join(session.quorum()) << ")\n";
  out << "secret " << state.secret.to_hex() << "\n";
  if (state.share) {
    out << "share";
    for (const auto& v : *state.share) out << " " << v.to_hex();
    out << "\n";
  }
  return out.str();
}

TranscriptAnalysis analyze_transcript(const Transcript& transcript, const std::set<unsigned>& coalition,
                                      const std::set<unsigned>& granted) {
  const PointLayout& layout = transcript.layout;
  const Params& params = layout.params();
  for (unsigned m : coalition)
    if (m < 1 || m > params.n()) throw UsageError("coalition member " + std::to_string(m) + " out of range");
  for (unsigned g : granted)
    if (g < 1 || g > params.n()) throw UsageError("granted secret " + std::to_string(g) + " out of range");
  if (coalition.empty()) throw UsageError("empty coalition");

  const PointLayout twin = analysis_layout(layout);
  const std::uint64_t p = twin.params().spec()->modulus();
  const View view = adversary_view(transcript, coalition);
  const KnowledgeMatrix km = km_from_view(twin, view);

  TranscriptAnalysis out;
  out.rank = km.rank();
  out.codim = km.codim();
  std::vector<ModRow> target_rows;
  std::vector<std::string> names;
  for (unsigned i = 1; i <= params.n(); ++i) {
    if (coalition.contains(i)) continue;
    out.targets.push_back(i);
    target_rows.push_back(point_functional(twin, i, 0, view.dealerless));
    names.push_back(point_name(layout, i, 0));
  }
  if (!target_rows.empty()) out.combination = km_leaked_combination(km, target_rows);

  const View granted_view = adversary_view(transcript, coalition, granted);
  const KnowledgeMatrix km_granted = km_from_view(twin, granted_view);
  for (std::size_t m = 0; m < out.targets.size(); ++m)
    if (!granted.contains(out.targets[m]) && km_granted.determines(target_rows[m]))
      out.determined.push_back(out.targets[m]);

  std::ostringstream text;
  text << "transcript " << header(layout) << (view.dealerless ? " dealerless" : "") << "\n";
  if (twin.params().spec() != params.spec()) text << "rank field " << twin.params().spec()->describe() << "\n";
  text << "sessions " << transcript.recovery_sessions().size() << ", messages " << transcript.entries.size() << "\n";
  text << "coalition {" << join(coalition) << "}";
  if (!granted.empty()) text << " granted {" << join(granted) << "}";
  text << "\n";
  text << "view rows " << km.rows().size() << ", mask columns " << km.mask_dim() << "\n";
  text << "knowledge rank " << out.rank << " of " << km.poly_dim() << ", codimension " << out.codim << "\n";
  if (out.combination) {
    text << "leaked combination " << render_combination(*out.combination, names, p) << "\n";
  } else {
    text << "leaked combination none\n";
  }
  for (unsigned d : out.determined)
    text << "determined with grants: secret " << d << " " << point_name(layout, d, 0) << "\n";
  const bool leak = out.combination.has_value() || !out.determined.empty();
  text << "verdict " << (leak ? "LEAK" : "NO-LEAK") << "\n";
  out.text = text.str();
  return out;
}

SchemeAnalysis analyze_scheme(const PointLayout& layout, const std::string& scheme, const std::string& check) {
  const Params& params = layout.params();
  const double tol = 1e-9;
  std::optional<EnumeratedModel> model;
  if (scheme == "gruppen") {
    model.emplace(gruppen_model(layout));
  } else if (scheme == "xor-sabotage") {
    if (params.n() != 3 || params.k() != 2) throw UsageError("the xor-sabotage scheme exists only for n=3 k=2");
    model.emplace(pairwise_sum_model(params.spec()));
  } else {
    throw UsageError("unknown scheme '" + scheme + "' (gruppen | xor-sabotage)");
  }

  std::ostringstream text;
  text << "scheme " << scheme << " " << header(layout) << "\n";
  text << "outcomes " << model->outcomes() << "\n";
  const double unit = std::log2(static_cast<double>(model->radix()));
  SchemeAnalysis out;

  if (check == "entropy") {
    EntropyOracle oracle(*model);
    std::vector<VarSet> queries;
    for (unsigned i = 1; i <= params.n(); ++i) queries.push_back({"s" + std::to_string(i)});
    for (unsigned i = 1; i <= params.n(); ++i) queries.push_back({"h" + std::to_string(i)});
    const EntropyReport report = oracle.closed_report(queries);
    bool ok = true;
    for (unsigned i = 1; i <= params.n(); ++i) {
      const double hs = report.at({"s" + std::to_string(i)});
      const double hh = report.at({"h" + std::to_string(i)});
      const double want = params.share_size() * unit;
      text << "H(s" << i << ") " << bits(hs) << "  H(h" << i << ") " << bits(hh) << " (expected " << bits(want)
           << ")\n";
      const double share_want = scheme == "gruppen" ? want : unit;
      if (std::abs(hs - unit) > tol || std::abs(hh - share_want) > tol) ok = false;
    }
    const auto violations = report.claim1_violations(tol);
    for (const auto& v : violations) text << "violation " << v << "\n";
    text << "basic properties checked on " << report.f.size() << " sets, " << violations.size() << " violations\n";
    std::size_t bound_fail = 0;
    const auto bounds = share_bound_checks(oracle, params.n(), params.k());
    for (const auto& l : bounds)
      if (l.lhs < l.rhs - tol) ++bound_fail;
    text << "share inequality checked on " << bounds.size() << " labelings, " << bound_fail << " failures\n";
    out.passed = ok && violations.empty() && bound_fail == 0;
  } else if (check == "perfectness") {
    const PerfectnessReport report = verify_perfectness(*model, params.n(), params.k(), tol);
    text << "expected " << bits(report.expected_bits) << " bits per secret\n";
    for (const auto& c : report.cases) {
      text << "H(s" << c.target << " | others, shares {" << join(c.coalition) << "}) " << bits(c.bits);
      text << (std::abs(c.bits - report.expected_bits) > tol ? "  FAIL" : "") << "\n";
    }
    text << report.cases.size() << " cases, " << report.failures.size() << " failures\n";
    out.passed = report.passed();
  } else {
    throw UsageError("unknown check '" + check + "' (entropy | perfectness)");
  }
  text << "verdict " << (out.passed ? "PASS" : "FAIL") << "\n";
  out.text = text.str();
  return out;
}

LeakDemo run_leak_demo(const FieldPtr& spec, std::uint64_t seed) {
  if (spec->kind() != FieldKind::prime || spec->modulus() <= 5)
    throw UsageError("the walkthrough needs a prime field larger than 5");
  const PointLayout layout = layout_secrets_first(Params(3, 2, spec));
  Rng rng(seed);
  const Dealing dealing = deal_random(layout, rng);

  Simulation sim(layout, {derive_seed(seed, 1), derive_seed(seed, 2), derive_seed(seed, 3)});
  for (const auto& b : dealing.bundles) sim.party(b.participant).install(b);
  // The walkthrough deliberately runs the unprotected protocol.
  sim.set_gate_enabled(false);
  sim.run_recovery(1, {2, 3}, RecoveryMode::naive);
  const Transcript& transcript = sim.transcript();

  const RecoverySession session(layout, 1, {2, 3}, RecoveryMode::naive);
  std::vector<Contribution> contributions;
  for (const auto& e : transcript.entries)
    if (e.message.type == MsgType::contrib)
      contributions.push_back({e.message.from, e.message.to, e.message.slot, e.message.values.at(0)});

  const FieldElement zero = FieldElement::zero(spec);
  LeakDemo demo{.values = {}, .tb = zero, .tc = zero, .extracted = zero, .expected = zero, .rank = 0, .codim = 0, .combination = std::nullopt, .holds = false, .text = {}};
  for (unsigned x = 0; x < 6; ++x)
    demo.values.push_back(dealing.polynomial->eval(FieldElement::from_integer(spec, x)));
  for (const auto& c : contributions) (c.from == 2 ? demo.tb : demo.tc) = c.value;
  demo.extracted = leak_extract(session, dealing.bundle(1).share.at(0), contributions);
  demo.expected = demo.values[2] - demo.values[1];

  const TranscriptAnalysis analysis = analyze_transcript(transcript, {1}, {});
  demo.rank = analysis.rank;
  demo.codim = analysis.codim;
  demo.combination = analysis.combination;
  const std::uint64_t p = spec->modulus();
  const bool proportional = demo.combination && demo.combination->size() == 2 && (*demo.combination)[0] == p - 1 &&
                            (*demo.combination)[1] == 1;
  demo.holds = demo.extracted == demo.expected && proportional;

  std::ostringstream text;
  text << "field " << spec->describe() << ", layout secrets-first, n=3 k=2, seed " << seed << "\n";
  text << "secrets r(0) r(1) r(2) of participants 1 2 3; shares r(3) r(4) r(5)\n";
  text << "r(0..5) =";
  for (const auto& v : demo.values) text << " " << repr_to_string(v.value());
  text << "\n";
  text << "participant 1 loses r(0); participants 2 and 3 answer with unmasked sums\n";
  text << "t_b = " << repr_to_string(demo.tb.value()) << "  (10/3 r(1) + 5/3 r(4))\n";
  text << "t_c = " << repr_to_string(demo.tc.value()) << "  (-10/3 r(2) - 2/3 r(5))\n";
  text << "r(0) = t_b + t_c = " << repr_to_string((demo.tb + demo.tc).value()) << "\n";
  text << "(2/3)(r(3) - (2/5) t_b - (1/4) t_c) = " << repr_to_string(demo.extracted.value()) << "\n";
  text << "-r(1) + r(2)                         = " << repr_to_string(demo.expected.value()) << "\n";
  text << "knowledge rank " << demo.rank << " of 4, codimension " << demo.codim << "\n";
  text << "leaked combination "
       << (demo.combination ? render_combination(*demo.combination, {"r(1)", "r(2)"}, p) : std::string("none"))
       << "\n";
  text << "identity " << (demo.holds ? "holds" : "FAILS") << "\n";
  demo.text = text.str();
  return demo;
}

}  // namespace gruppen
