#include "gruppen/harness.hpp"

#include <algorithm>
#include <sstream>

#include "gruppen/error.hpp"

namespace gruppen {

std::string_view to_string(MsgType type) {
  switch (type) {
    case MsgType::setup_share: return "SETUP_SHARE";
    case MsgType::mask: return "MASK";
    case MsgType::contrib: return "CONTRIB";
    case MsgType::contrib_fs: return "CONTRIB_FS";
  }
  return "?";
}

MsgType parse_msg_type(std::string_view text) {
  if (text == "SETUP_SHARE") return MsgType::setup_share;
  if (text == "MASK") return MsgType::mask;
  if (text == "CONTRIB") return MsgType::contrib;
  if (text == "CONTRIB_FS") return MsgType::contrib_fs;
  throw UsageError("unknown message type '" + std::string(text) + "'");
}

std::string encode_message(const Message& msg) {
  std::string out = std::to_string(msg.session) + " " + std::string(to_string(msg.type)) + " " +
                    std::to_string(msg.from) + " " + std::to_string(msg.to) + " " + std::to_string(msg.slot);
  for (const auto& v : msg.values) out += " " + v.to_hex();
  return out;
}

Message decode_message(const FieldPtr& spec, std::string_view line) {
  std::istringstream in{std::string(line)};
  Message msg;
  std::string type;
  if (!(in >> msg.session >> type >> msg.from >> msg.to >> msg.slot))
    throw UsageError("malformed message line: " + std::string(line));
  msg.type = parse_msg_type(type);
  for (std::string hex; in >> hex;) msg.values.push_back(FieldElement::from_hex(spec, hex));
  if (msg.values.empty()) throw UsageError("message without values: " + std::string(line));
  return msg;
}

std::vector<Message> Transcript::view_of(unsigned party) const {
  std::vector<Message> out;
  for (const auto& e : entries)
    if (e.message.from == party || e.message.to == party) out.push_back(e.message);
  return out;
}

std::vector<SessionDescriptor> Transcript::recovery_sessions() const {
  std::vector<SessionDescriptor> out;
  for (const auto& s : sessions)
    if (s.kind == SessionKind::recovery) out.push_back(s.recovery);
  return out;
}

bool Transcript::has_setup() const {
  return std::any_of(sessions.begin(), sessions.end(), [](const auto& s) { return s.kind == SessionKind::setup; });
}

Party::Party(unsigned index, PointLayout layout, std::uint64_t seed)
    : index_(index), layout_(std::move(layout)), rng_(seed) {}

void Party::install(ParticipantBundle bundle) {
  validate_bundle(layout_, bundle);
  if (bundle.participant != index_) throw UsageError("bundle belongs to another participant");
  bundle_ = std::move(bundle);
}

void Party::forget(RecoveryMode mode) {
  if (!bundle_) return;
  if (mode == RecoveryMode::full_state) bundle_.reset();
  else bundle_->secret.reset();
}

std::vector<Message> Party::take(unsigned session, MsgType type) {
  std::vector<Message> out;
  for (auto it = inbox_.begin(); it != inbox_.end();) {
    if (it->session == session && it->type == type) {
      out.push_back(std::move(*it));
      it = inbox_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

std::vector<Message> Party::setup_round1(unsigned session, const FieldElement& secret) {
  SetupContribution own = setup_deal_own(layout_, index_, secret, rng_);
  pending_secret_ = secret;
  std::vector<Message> out;
  for (unsigned j = 1; j <= layout_.params().n(); ++j)
    out.push_back({session, MsgType::setup_share, index_, j, 0, own.share_for(j)});
  return out;
}

void Party::setup_finish(unsigned session) {
  if (!pending_secret_) throw ProtocolError("setup finished before it started");
  std::map<unsigned, std::vector<FieldElement>> received;
  for (auto& msg : take(session, MsgType::setup_share)) {
    if (msg.to != index_) throw ProtocolError("misrouted setup message");
    if (!received.emplace(msg.from, std::move(msg.values)).second)
      throw ProtocolError("duplicate setup message from " + std::to_string(msg.from));
  }
  bundle_ = setup_aggregate_one(layout_, index_, *pending_secret_, received);
  pending_secret_.reset();
}

std::vector<Message> Party::recovery_round1(unsigned session, const RecoverySession& rs) {
  if (rs.mode() == RecoveryMode::naive || !rs.in_quorum(index_)) return {};
  MemberMasks& mine = masks_[session];
  mine.member = index_;
  std::vector<Message> out;
  for (const auto& m : generate_masks(rs, index_, rng_)) {
    mine.record(m);
    // Self-masks never leave the party.
    if (m.to != index_) out.push_back({session, MsgType::mask, m.from, m.to, m.slot, {m.value}});
  }
  return out;
}

std::vector<Message> Party::recovery_round2(unsigned session, const RecoverySession& rs) {
  if (!rs.in_quorum(index_)) return {};
  if (!bundle_ || !bundle_->secret) throw ProtocolError("quorum member " + std::to_string(index_) + " has no state");
  if (rs.mode() == RecoveryMode::naive) {
    const Contribution c = naive_contribution(rs, *bundle_);
    return {{session, MsgType::contrib, c.from, c.to, c.slot, {c.value}}};
  }
  MemberMasks& mine = masks_[session];
  mine.member = index_;
  for (const auto& msg : take(session, MsgType::mask))
    mine.record({msg.from, msg.to, msg.slot, msg.values.at(0)});
  std::vector<Message> out;
  if (rs.mode() == RecoveryMode::masked) {
    const Contribution c = masked_contribution(rs, *bundle_, mine);
    out.push_back({session, MsgType::contrib, c.from, c.to, c.slot, {c.value}});
  } else {
    for (const auto& c : full_state_contribution(rs, *bundle_, mine))
      out.push_back({session, MsgType::contrib_fs, c.from, c.to, c.slot, {c.value}});
  }
  masks_.erase(session);
  return out;
}

RecoveredState Party::recovery_finish(unsigned session, const RecoverySession& rs) {
  if (rs.requester() != index_) throw ProtocolError("only the requester finishes a recovery");
  const MsgType type = rs.mode() == RecoveryMode::full_state ? MsgType::contrib_fs : MsgType::contrib;
  std::vector<Contribution> received;
  for (const auto& msg : take(session, type)) received.push_back({msg.from, msg.to, msg.slot, msg.values.at(0)});
  RecoveredState state = combine_contributions(rs, received);
  if (rs.mode() == RecoveryMode::full_state) {
    bundle_ = state.to_bundle();
  } else if (bundle_) {
    bundle_->secret = state.secret;
  }
  return state;
}

Simulation::Simulation(PointLayout layout, std::vector<std::uint64_t> seeds, DeliveryOrder order)
    : layout_(std::move(layout)), order_(order), transcript_{layout_, seeds, {}, {}}, gate_(layout_) {
  if (seeds.size() != layout_.params().n())
    throw UsageError("need one seed per participant (" + std::to_string(layout_.params().n()) + ")");
  for (unsigned i = 1; i <= layout_.params().n(); ++i) parties_.emplace_back(i, layout_, seeds[i - 1]);
}

void Simulation::deliver_round(std::vector<Message> outgoing) {
  auto key = [&](const Message& m) {
    return order_ == DeliveryOrder::receiver_sender ? std::make_tuple(m.to, m.from, m.slot)
                                                    : std::make_tuple(m.from, m.to, m.slot);
  };
  std::stable_sort(outgoing.begin(), outgoing.end(), [&](const Message& a, const Message& b) {
    return order_ == DeliveryOrder::reverse ? key(b) < key(a) : key(a) < key(b);
  });
  for (auto& msg : outgoing) {
    if (msg.to < 1 || msg.to > parties_.size()) throw ProtocolError("message to unknown party");
    party(msg.to).deliver(msg);
    transcript_.entries.push_back({transcript_.entries.size() + 1, std::move(msg)});
  }
}

Dealing Simulation::run_setup(std::span<const FieldElement> secrets) {
  const Params& params = layout_.params();
  if (secrets.size() != params.n())
    throw UsageError("setup needs " + std::to_string(params.n()) + " secrets, got " + std::to_string(secrets.size()));
  const unsigned session = next_session_++;
  transcript_.sessions.push_back({session, SessionKind::setup, {}});

  std::vector<Message> round;
  for (unsigned i = 1; i <= params.n(); ++i) {
    auto out = party(i).setup_round1(session, secrets[i - 1]);
    round.insert(round.end(), out.begin(), out.end());
  }
  deliver_round(std::move(round));

  Dealing out{layout_, {}, std::nullopt};
  for (unsigned i = 1; i <= params.n(); ++i) {
    party(i).setup_finish(session);
    out.bundles.push_back(*party(i).state());
  }
  return out;
}

RecoveredState Simulation::run_recovery(unsigned requester, std::vector<unsigned> quorum, RecoveryMode mode) {
  const RecoverySession rs(layout_, requester, std::move(quorum), mode);
  const SessionDescriptor desc{next_session_, requester, rs.quorum(), mode};
  if (gate_enabled_) gate_.check(desc);
  const unsigned session = next_session_++;
  transcript_.sessions.push_back({session, SessionKind::recovery, desc});

  party(requester).forget(mode);
  std::vector<Message> round1;
  for (unsigned i : rs.quorum()) {
    auto out = party(i).recovery_round1(session, rs);
    round1.insert(round1.end(), out.begin(), out.end());
  }
  deliver_round(std::move(round1));

  std::vector<Message> round2;
  for (unsigned i : rs.quorum()) {
    auto out = party(i).recovery_round2(session, rs);
    round2.insert(round2.end(), out.begin(), out.end());
  }
  deliver_round(std::move(round2));

  RecoveredState state = party(requester).recovery_finish(session, rs);
  if (gate_enabled_) gate_.record(desc);
  return state;
}

SetupRun run_setup(const PointLayout& layout, std::span<const FieldElement> secrets,
                   std::span<const std::uint64_t> seeds, DeliveryOrder order) {
  Simulation sim(layout, {seeds.begin(), seeds.end()}, order);
  Dealing dealing = sim.run_setup(secrets);
  return {std::move(dealing), sim.transcript()};
}

View adversary_view(const Transcript& transcript, const std::set<unsigned>& coalition,
                    const std::set<unsigned>& granted_secrets) {
  const Params& params = transcript.layout.params();
  View view;
  view.dealerless = transcript.has_setup();
  view.sessions = transcript.recovery_sessions();

  // Initial data: dealerless members know their own sub-polynomial; members
  // that later request a recovery keep what survived their first loss.
  std::map<unsigned, RecoveryMode> first_loss;
  for (const auto& s : view.sessions) first_loss.try_emplace(s.requester, s.mode);
  for (unsigned m : coalition) {
    if (view.dealerless) view.add(ViewItem::sub_polynomial(m));
    auto loss = first_loss.find(m);
    if (loss == first_loss.end()) view.add_bundle(m, params.slots());
    else if (loss->second != RecoveryMode::full_state) view.add_bundle(m, params.slots(), false);
  }

  std::map<unsigned, RecoveryMode> mode_of;
  for (const auto& s : view.sessions) mode_of[s.id] = s.mode;
  for (const auto& e : transcript.entries) {
    const Message& m = e.message;
    if (!coalition.contains(m.from) && !coalition.contains(m.to)) continue;
    switch (m.type) {
      case MsgType::setup_share:
        for (unsigned l = 1; l <= m.values.size(); ++l) view.add(ViewItem::sub_point(m.from, m.to, l));
        break;
      case MsgType::mask:
        view.add(ViewItem::mask(m.session, m.from, m.to, m.slot));
        break;
      case MsgType::contrib:
        if (mode_of.at(m.session) == RecoveryMode::naive)
          view.add(ViewItem::contribution(m.session, m.from, m.slot));
        else
          view.add(ViewItem::masked_contribution(m.session, m.from, m.slot));
        break;
      case MsgType::contrib_fs:
        view.add(ViewItem::masked_contribution(m.session, m.from, m.slot));
        break;
    }
  }
  for (unsigned g : granted_secrets) view.add(ViewItem::secret(g));
  return view;
}

}  // namespace gruppen
