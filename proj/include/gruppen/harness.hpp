#pragma once

// Deterministic in-memory simulation of the setup and recovery protocols.
// Parties only influence each other through messages routed by the bus; the
// bus delivers a round at a time in a fixed order and records everything.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gruppen/knowledge.hpp"
#include "gruppen/recovery.hpp"
#include "gruppen/scheme.hpp"
#include "gruppen/setup.hpp"

namespace gruppen {

enum class MsgType { setup_share, mask, contrib, contrib_fs };

std::string_view to_string(MsgType type);
MsgType parse_msg_type(std::string_view text);

struct Message {
  unsigned session = 0;
  MsgType type = MsgType::contrib;
  unsigned from = 0;
  unsigned to = 0;
  unsigned slot = 0;
  std::vector<FieldElement> values;

  bool operator==(const Message& o) const = default;
};

// "<session> <TYPE> <from> <to> <slot> <hex> [<hex> ...]"
std::string encode_message(const Message& msg);
Message decode_message(const FieldPtr& spec, std::string_view line);

enum class SessionKind { setup, recovery };

struct SessionRecord {
  unsigned id = 0;
  SessionKind kind = SessionKind::recovery;
  SessionDescriptor recovery;  // meaningful for recovery sessions

  bool operator==(const SessionRecord& o) const {
    return id == o.id && kind == o.kind && recovery.requester == o.recovery.requester &&
           recovery.quorum == o.recovery.quorum && recovery.mode == o.recovery.mode;
  }
};

struct TranscriptEntry {
  std::size_t step = 0;
  Message message;
  bool operator==(const TranscriptEntry& o) const = default;
};

struct Transcript {
  PointLayout layout;
  std::vector<std::uint64_t> seeds;  // per party, index 0 = party 1
  std::vector<SessionRecord> sessions;
  std::vector<TranscriptEntry> entries;

  // Messages party i sent or received, in delivery order.
  std::vector<Message> view_of(unsigned party) const;
  std::vector<SessionDescriptor> recovery_sessions() const;
  bool has_setup() const;
};

// Within-round delivery ordering.
enum class DeliveryOrder {
  sender_receiver,  // ascending (from, to)
  receiver_sender,  // ascending (to, from)
  reverse,          // descending (from, to)
};

class Party {
 public:
  Party(unsigned index, PointLayout layout, std::uint64_t seed);

  unsigned index() const { return index_; }
  // The party's own state; only its owner (and test oracles) look at it.
  const std::optional<ParticipantBundle>& state() const { return bundle_; }
  void install(ParticipantBundle bundle);
  void forget(RecoveryMode mode);  // drops the secret, or everything in full-state mode
  void deliver(const Message& msg) { inbox_.push_back(msg); }

  std::vector<Message> setup_round1(unsigned session, const FieldElement& secret);
  void setup_finish(unsigned session);

  std::vector<Message> recovery_round1(unsigned session, const RecoverySession& rs);
  std::vector<Message> recovery_round2(unsigned session, const RecoverySession& rs);
  RecoveredState recovery_finish(unsigned session, const RecoverySession& rs);

 private:
  std::vector<Message> take(unsigned session, MsgType type);

  unsigned index_;
  PointLayout layout_;
  Rng rng_;
  std::optional<ParticipantBundle> bundle_;
  std::optional<FieldElement> pending_secret_;
  std::deque<Message> inbox_;
  std::map<unsigned, MemberMasks> masks_;  // by session
};

class Simulation {
 public:
  Simulation(PointLayout layout, std::vector<std::uint64_t> seeds,
             DeliveryOrder order = DeliveryOrder::sender_receiver);

  const PointLayout& layout() const { return layout_; }
  const Party& party(unsigned i) const { return parties_.at(i - 1); }
  Party& party(unsigned i) { return parties_.at(i - 1); }
  const Transcript& transcript() const { return transcript_; }
  RecoveryGate& gate() { return gate_; }
  void set_gate_enabled(bool on) { gate_enabled_ = on; }

  // Dealerless setup; returns every party's resulting bundle.
  Dealing run_setup(std::span<const FieldElement> secrets);
  // Requester forgets its state per mode, then the quorum restores it.
  RecoveredState run_recovery(unsigned requester, std::vector<unsigned> quorum, RecoveryMode mode);

 private:
  void deliver_round(std::vector<Message> outgoing);

  PointLayout layout_;
  DeliveryOrder order_;
  std::vector<Party> parties_;
  Transcript transcript_;
  RecoveryGate gate_;
  bool gate_enabled_ = true;
  unsigned next_session_ = 1;
};

struct SetupRun {
  Dealing dealing;
  Transcript transcript;
};

SetupRun run_setup(const PointLayout& layout, std::span<const FieldElement> secrets,
                   std::span<const std::uint64_t> seeds, DeliveryOrder order = DeliveryOrder::sender_receiver);

// Coalition members' initial data, every message they sent or received, and
// the granted secrets, as linear-algebra view items.
View adversary_view(const Transcript& transcript, const std::set<unsigned>& coalition,
                    const std::set<unsigned>& granted_secrets = {});

}  // namespace gruppen
