#include "gruppen/setup.hpp"

#include <string>

#include "gruppen/error.hpp"

namespace gruppen {

SetupContribution setup_deal_own(const PointLayout& layout, unsigned participant, const FieldElement& secret,
                                 Rng& rng) {
  const Params& params = layout.params();
  if (participant < 1 || participant > params.n())
    throw UsageError("participant " + std::to_string(participant) + " out of range");
  std::vector<FieldElement> secrets(params.n(), FieldElement::zero(params.spec()));
  secrets[participant - 1] = secret;
  Dealing sub = deal_with_secrets(layout, secrets, rng);

  SetupContribution out{participant, {}, secret, std::move(sub.polynomial)};
  out.shares_out.reserve(params.n());
  for (auto& b : sub.bundles) out.shares_out.push_back(std::move(b.share));
  return out;
}

ParticipantBundle setup_aggregate_one(const PointLayout& layout, unsigned participant,
                                      const FieldElement& own_secret,
                                      const std::map<unsigned, std::vector<FieldElement>>& received) {
  const Params& params = layout.params();
  if (received.size() != params.n())
    throw ProtocolError("incomplete setup: participant " + std::to_string(participant) + " received " +
                        std::to_string(received.size()) + " of " + std::to_string(params.n()) + " share vectors");
  ParticipantBundle out{participant, own_secret,
                        std::vector<FieldElement>(params.share_size(), FieldElement::zero(params.spec()))};
  for (unsigned i = 1; i <= params.n(); ++i) {
    auto it = received.find(i);
    if (it == received.end()) throw ProtocolError("incomplete setup: nothing from participant " + std::to_string(i));
    if (it->second.size() != params.share_size()) throw ProtocolError("setup share vector has the wrong length");
    for (unsigned j = 0; j < params.share_size(); ++j) out.share[j] += it->second[j];
  }
  validate_bundle(layout, out);
  return out;
}

Dealing setup_aggregate(const PointLayout& layout, std::span<const SetupContribution> contributions) {
  const Params& params = layout.params();
  std::map<unsigned, const SetupContribution*> by_dealer;
  for (const auto& c : contributions) {
    if (c.shares_out.size() != params.n()) throw ProtocolError("setup contribution must address all n participants");
    if (!by_dealer.emplace(c.from, &c).second)
      throw ProtocolError("two setup contributions from participant " + std::to_string(c.from));
  }
  Dealing out{layout, {}, std::nullopt};
  for (unsigned j = 1; j <= params.n(); ++j) {
    auto own = by_dealer.find(j);
    if (own == by_dealer.end())
      throw ProtocolError("incomplete setup: no contribution from participant " + std::to_string(j));
    std::map<unsigned, std::vector<FieldElement>> received;
    for (const auto& [i, c] : by_dealer) received.emplace(i, c->share_for(j));
    out.bundles.push_back(setup_aggregate_one(layout, j, own->second->own_secret_kept, received));
  }
  return out;
}

Dealing homomorphic_add(const Dealing& a, const Dealing& b) {
  if (!(a.layout == b.layout)) throw UsageError("homomorphic addition needs identical parameters and layout");
  Dealing out{a.layout, {}, std::nullopt};
  for (unsigned i = 1; i <= a.params().n(); ++i) {
    const auto& x = a.bundle(i);
    const auto& y = b.bundle(i);
    ParticipantBundle sum{i, x.value(0) + y.value(0), {}};
    for (unsigned j = 0; j < a.params().share_size(); ++j) sum.share.push_back(x.share.at(j) + y.share.at(j));
    out.bundles.push_back(std::move(sum));
  }
  if (a.polynomial && b.polynomial) out.polynomial = *a.polynomial + *b.polynomial;
  return out;
}

}  // namespace gruppen
