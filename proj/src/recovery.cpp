#include "gruppen/recovery.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "gruppen/error.hpp"

namespace gruppen {

std::string_view to_string(RecoveryMode mode) {
  switch (mode) {
    case RecoveryMode::naive: return "naive";
    case RecoveryMode::masked: return "masked";
    case RecoveryMode::full_state: return "full-state";
  }
  return "?";
}

RecoveryMode parse_recovery_mode(std::string_view text) {
  if (text == "naive") return RecoveryMode::naive;
  if (text == "masked") return RecoveryMode::masked;
  if (text == "full-state" || text == "full_state") return RecoveryMode::full_state;
  throw UsageError("unknown recovery mode '" + std::string(text) + "' (naive | masked | full-state)");
}

RecoverySession::RecoverySession(PointLayout layout, unsigned requester, std::vector<unsigned> quorum,
                                 RecoveryMode mode)
    : layout_(std::move(layout)), requester_(requester), quorum_(std::move(quorum)), mode_(mode) {
  const Params& params = layout_.params();
  params.require_admissible();
  if (requester_ < 1 || requester_ > params.n())
    throw UsageError("requester " + std::to_string(requester_) + " out of range");
  std::sort(quorum_.begin(), quorum_.end());
  if (std::adjacent_find(quorum_.begin(), quorum_.end()) != quorum_.end())
    throw UsageError("quorum lists a participant twice");
  if (quorum_.size() != params.k())
    throw UsageError("quorum must have exactly k = " + std::to_string(params.k()) + " members, got " +
                     std::to_string(quorum_.size()));
  for (unsigned i : quorum_) {
    if (i < 1 || i > params.n()) throw UsageError("quorum member " + std::to_string(i) + " out of range");
    if (i == requester_) throw UsageError("the requester cannot be a quorum member");
  }

  std::vector<FieldElement> nodes;
  nodes.reserve(params.degree_bound());
  for (unsigned i : quorum_)
    for (unsigned j = 0; j < params.slots(); ++j) nodes.push_back(layout_.point(i, j));
  for (unsigned t : target_slots()) rows_.push_back(lagrange_coefficients(nodes, layout_.point(requester_, t)));
}

bool RecoverySession::in_quorum(unsigned participant) const {
  return std::binary_search(quorum_.begin(), quorum_.end(), participant);
}

std::vector<unsigned> RecoverySession::target_slots() const {
  if (mode_ != RecoveryMode::full_state) return {0};
  std::vector<unsigned> slots(params().slots());
  for (unsigned t = 0; t < slots.size(); ++t) slots[t] = t;
  return slots;
}

std::size_t RecoverySession::member_position(unsigned member) const {
  auto it = std::lower_bound(quorum_.begin(), quorum_.end(), member);
  if (it == quorum_.end() || *it != member)
    throw UsageError("participant " + std::to_string(member) + " is not in the quorum");
  return static_cast<std::size_t>(it - quorum_.begin());
}

const FieldElement& RecoverySession::lambda(unsigned target_slot, unsigned member, unsigned slot) const {
  if (target_slot >= rows_.size()) throw UsageError("target slot not interpolated in this mode");
  if (slot >= params().slots()) throw UsageError("slot out of range");
  return rows_[target_slot].lambdas[member_position(member) * params().slots() + slot];
}

void MemberMasks::record(const MaskMessage& msg) {
  if (msg.from == member) sent.insert_or_assign({msg.slot, msg.to}, msg.value);
  if (msg.to == member) received.insert_or_assign({msg.slot, msg.from}, msg.value);
}

void MaskMatrix::set(const MaskMessage& msg) {
  entries_.insert_or_assign({msg.slot, msg.from, msg.to}, msg.value);
  messages_.push_back(msg);
}

const FieldElement& MaskMatrix::at(unsigned slot, unsigned from, unsigned to) const {
  auto it = entries_.find({slot, from, to});
  if (it == entries_.end())
    throw ProtocolError("protocol incomplete: no mask from " + std::to_string(from) + " to " + std::to_string(to));
  return it->second;
}

MemberMasks MaskMatrix::view_of(unsigned member) const {
  MemberMasks view{member, {}, {}};
  for (const auto& msg : messages_) view.record(msg);
  return view;
}

FieldElement naive_sum(const RecoverySession& session, const ParticipantBundle& bundle, unsigned target_slot) {
  validate_bundle(session.layout(), bundle);
  if (!session.in_quorum(bundle.participant))
    throw UsageError("participant " + std::to_string(bundle.participant) + " is not in the quorum");
  FieldElement acc = FieldElement::zero(session.params().spec());
  for (unsigned j = 0; j < session.params().slots(); ++j)
    acc += session.lambda(target_slot, bundle.participant, j) * bundle.value(j);
  return acc;
}

Contribution naive_contribution(const RecoverySession& session, const ParticipantBundle& bundle) {
  if (session.mode() != RecoveryMode::naive) throw UsageError("naive contribution in a non-naive session");
  return {bundle.participant, session.requester(), 0, naive_sum(session, bundle, 0)};
}

std::vector<MaskMessage> generate_masks(const RecoverySession& session, unsigned member, Rng& rng) {
  if (session.mode() == RecoveryMode::naive) throw UsageError("naive sessions exchange no masks");
  if (!session.in_quorum(member)) throw UsageError("participant " + std::to_string(member) + " is not in the quorum");
  std::vector<MaskMessage> out;
  for (unsigned t : session.target_slots())
    for (unsigned j : session.quorum()) out.push_back({member, j, t, random_element(session.params().spec(), rng)});
  return out;
}

MaskMatrix masked_round1(const RecoverySession& session, std::span<Rng> rngs) {
  if (rngs.size() != session.quorum().size()) throw UsageError("need one rng per quorum member");
  MaskMatrix matrix;
  for (std::size_t m = 0; m < rngs.size(); ++m)
    for (const auto& msg : generate_masks(session, session.quorum()[m], rngs[m])) matrix.set(msg);
  return matrix;
}

namespace {

FieldElement mask_offset(const RecoverySession& session, const MemberMasks& masks, unsigned target_slot) {
  FieldElement offset = FieldElement::zero(session.params().spec());
  for (unsigned j : session.quorum()) {
    auto out = masks.sent.find({target_slot, j});
    auto in = masks.received.find({target_slot, j});
    if (out == masks.sent.end() || in == masks.received.end())
      throw ProtocolError("protocol incomplete: participant " + std::to_string(masks.member) +
                          " lacks the mask exchanged with " + std::to_string(j));
    offset += out->second - in->second;
  }
  return offset;
}

}  // namespace

Contribution masked_contribution(const RecoverySession& session, const ParticipantBundle& bundle,
                                 const MemberMasks& masks) {
  if (session.mode() != RecoveryMode::masked) throw UsageError("masked contribution outside a masked session");
  if (masks.member != bundle.participant) throw UsageError("mask view belongs to another participant");
  return {bundle.participant, session.requester(), 0, naive_sum(session, bundle, 0) + mask_offset(session, masks, 0)};
}

std::vector<Contribution> full_state_contribution(const RecoverySession& session, const ParticipantBundle& bundle,
                                                  const MemberMasks& masks) {
  if (session.mode() != RecoveryMode::full_state) throw UsageError("full-state contribution outside a full-state session");
  if (masks.member != bundle.participant) throw UsageError("mask view belongs to another participant");
  std::vector<Contribution> out;
  for (unsigned t : session.target_slots())
    out.push_back({bundle.participant, session.requester(), t,
                   naive_sum(session, bundle, t) + mask_offset(session, masks, t)});
  return out;
}

ParticipantBundle RecoveredState::to_bundle() const {
  return {participant, secret, share.value_or(std::vector<FieldElement>{})};
}

RecoveredState combine_contributions(const RecoverySession& session, std::span<const Contribution> contributions) {
  const auto slots = session.target_slots();
  std::vector<FieldElement> sums(slots.size(), FieldElement::zero(session.params().spec()));
  std::set<std::pair<unsigned, unsigned>> seen;
  for (const auto& c : contributions) {
    if (c.to != session.requester()) throw ProtocolError("contribution addressed to another participant");
    if (!session.in_quorum(c.from)) throw ProtocolError("contribution from outside the quorum");
    if (c.slot >= slots.size()) throw ProtocolError("contribution for a slot this mode does not recover");
    if (!seen.insert({c.slot, c.from}).second) throw ProtocolError("duplicate contribution");
    sums[c.slot] += c.value;
  }
  if (seen.size() != slots.size() * session.quorum().size())
    throw ProtocolError("protocol incomplete: missing contributions");
  RecoveredState out{session.requester(), sums[0], std::nullopt};
  if (session.mode() == RecoveryMode::full_state) out.share.emplace(sums.begin() + 1, sums.end());
  return out;
}

FieldElement leak_extract(const RecoverySession& session, const FieldElement& requester_share,
                          std::span<const Contribution> contributions) {
  const Params& params = session.params();
  const auto& quorum = session.quorum();
  if (params.n() != 3 || params.k() != 2 || session.layout().id() != LayoutId::secrets_first ||
      session.requester() != 1 || quorum != std::vector<unsigned>{2, 3} || session.mode() != RecoveryMode::naive)
    throw UsageError("leak extraction needs the naive 2-out-of-3 secrets-first instance with p=1, B={2,3}");
  if (params.spec()->kind() != FieldKind::prime || params.spec()->modulus() <= 5)
    throw UsageError("leak extraction needs a prime field with p > 5");
  const FieldPtr& f = params.spec();
  std::optional<FieldElement> tb, tc;
  for (const auto& c : contributions) {
    if (c.slot != 0 || c.to != 1) continue;
    if (c.from == 2) tb = c.value;
    if (c.from == 3) tc = c.value;
  }
  if (!tb || !tc) throw UsageError("leak extraction needs t_b and t_c");
  auto frac = [&](std::int64_t a, std::int64_t b) {
    return FieldElement::from_integer(f, a) / FieldElement::from_integer(f, b);
  };
  return frac(2, 3) * (requester_share - frac(2, 5) * *tb - frac(1, 4) * *tc);
}

}  // namespace gruppen
