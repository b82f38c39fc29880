#pragma once

#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "gruppen/scheme.hpp"

namespace gruppen {

enum class RecoveryMode { naive, masked, full_state };

std::string_view to_string(RecoveryMode mode);
RecoveryMode parse_recovery_mode(std::string_view text);

// A quorum B of k participants restoring the data of requester p, p not in B.
class RecoverySession {
 public:
  RecoverySession(PointLayout layout, unsigned requester, std::vector<unsigned> quorum, RecoveryMode mode);

  const PointLayout& layout() const { return layout_; }
  const Params& params() const { return layout_.params(); }
  unsigned requester() const { return requester_; }
  const std::vector<unsigned>& quorum() const { return quorum_; }  // ascending
  RecoveryMode mode() const { return mode_; }
  bool in_quorum(unsigned participant) const;

  // Requester slots being interpolated: {0}, or 0..n-k in full-state mode.
  std::vector<unsigned> target_slots() const;
  // lambda_{i,j} for member i's slot j when interpolating at x_{p,target}.
  const FieldElement& lambda(unsigned target_slot, unsigned member, unsigned slot) const;

 private:
  std::size_t member_position(unsigned member) const;

  PointLayout layout_;
  unsigned requester_;
  std::vector<unsigned> quorum_;
  RecoveryMode mode_;
  std::vector<LagrangeRow> rows_;  // one per target slot; nodes member-major
};

// t_{i,p} (or its full-state analogue for `target_slot`), sent from i to p.
struct Contribution {
  unsigned from = 0;
  unsigned to = 0;
  unsigned slot = 0;
  FieldElement value;
};

// r_{i,j} for one target slot, generated by i and sent to j.
struct MaskMessage {
  unsigned from = 0;
  unsigned to = 0;
  unsigned slot = 0;
  FieldElement value;
};

// Member i's knowledge after round 1: its row (sent) and column (received).
struct MemberMasks {
  unsigned member = 0;
  std::map<std::pair<unsigned, unsigned>, FieldElement> sent;      // (slot, to)
  std::map<std::pair<unsigned, unsigned>, FieldElement> received;  // (slot, from)

  // Files the message under sent and/or received as seen from `member`.
  void record(const MaskMessage& msg);
};

class MaskMatrix {
 public:
  void set(const MaskMessage& msg);
  const FieldElement& at(unsigned slot, unsigned from, unsigned to) const;
  std::size_t size() const { return entries_.size(); }
  MemberMasks view_of(unsigned member) const;
  const std::vector<MaskMessage>& messages() const { return messages_; }

 private:
  std::map<std::tuple<unsigned, unsigned, unsigned>, FieldElement> entries_;
  std::vector<MaskMessage> messages_;
};

FieldElement naive_sum(const RecoverySession& session, const ParticipantBundle& bundle, unsigned target_slot);

Contribution naive_contribution(const RecoverySession& session, const ParticipantBundle& bundle);

// Member's round-1 output: k masks per target slot, self-mask included.
std::vector<MaskMessage> generate_masks(const RecoverySession& session, unsigned member, Rng& rng);

// Round 1 for the whole quorum; rngs[m] belongs to quorum()[m].
MaskMatrix masked_round1(const RecoverySession& session, std::span<Rng> rngs);

// t'_{i,p} = t_{i,p} + sum_{j in B} (r_{i,j} - r_{j,i})
Contribution masked_contribution(const RecoverySession& session, const ParticipantBundle& bundle,
                                 const MemberMasks& masks);
std::vector<Contribution> full_state_contribution(const RecoverySession& session, const ParticipantBundle& bundle,
                                                  const MemberMasks& masks);

struct RecoveredState {
  unsigned participant = 0;
  FieldElement secret;
  std::optional<std::vector<FieldElement>> share;  // full-state mode only

  ParticipantBundle to_bundle() const;
};

// Requester side: sums the contributions per target slot.
RecoveredState combine_contributions(const RecoverySession& session, std::span<const Contribution> contributions);

// On the 2-out-of-3 secrets-first instance with p = 1, B = {2, 3} in naive
// mode: (2/3)(r(3) - (2/5)t_b - (1/4)t_c), which equals r(2) - r(1).
FieldElement leak_extract(const RecoverySession& session, const FieldElement& requester_share,
                          std::span<const Contribution> contributions);

}  // namespace gruppen
