#pragma once

// Operator-facing workflows and their plain-text reports. Output is stable
// for a fixed seed so it can be compared against golden files.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gruppen/harness.hpp"
#include "gruppen/knowledge.hpp"
#include "gruppen/scheme.hpp"

namespace gruppen {

std::string deal_summary(const Dealing& dealing);
std::string reconstruct_report(const PointLayout& layout, const Reconstruction& rec);

struct RecoverOutcome {
  RecoveredState state;
  Transcript transcript;
  RecoveryGate gate;
};

// Runs one recovery over parties holding `bundles`; per-party seeds are
// derive_seed(seed, i). A supplied gate is consulted for naive sessions.
RecoverOutcome recover_from_bundles(const PointLayout& layout, const std::vector<ParticipantBundle>& bundles,
                                    unsigned requester, std::vector<unsigned> quorum, RecoveryMode mode,
                                    std::uint64_t seed, std::optional<RecoveryGate> gate);
std::string recover_report(const RecoverySession& session, const RecoveredState& state);

struct TranscriptAnalysis {
  std::size_t rank = 0;
  std::size_t codim = 0;
  std::vector<unsigned> targets;      // non-members whose secrets were examined
  std::optional<ModRow> combination;  // over `targets`
  std::vector<unsigned> determined;   // secrets fixed once the grants are added
  std::string text;
};

TranscriptAnalysis analyze_transcript(const Transcript& transcript, const std::set<unsigned>& coalition,
                                      const std::set<unsigned>& granted);

struct SchemeAnalysis {
  bool passed = false;
  std::string text;
};

// scheme: "gruppen" | "xor-sabotage"; check: "entropy" | "perfectness".
SchemeAnalysis analyze_scheme(const PointLayout& layout, const std::string& scheme, const std::string& check);

struct LeakDemo {
  std::vector<FieldElement> values;  // r(0) .. r(5)
  FieldElement tb;
  FieldElement tc;
  FieldElement extracted;
  FieldElement expected;  // r(2) - r(1)
  std::size_t rank = 0;
  std::size_t codim = 0;
  std::optional<ModRow> combination;  // over (s2, s3)
  bool holds = false;
  std::string text;
};

LeakDemo run_leak_demo(const FieldPtr& spec, std::uint64_t seed);

// Field element as a signed representative in (-p/2, p/2] for prime fields.
std::string signed_repr(std::uint64_t v, std::uint64_t p);

}  // namespace gruppen
