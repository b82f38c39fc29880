#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "gruppen/scheme.hpp"

namespace gruppen {

// What participant i deals for its own secret in the dealerless setup: a
// sub-dealing whose secrets are zero except s_i at x_{i,0}.
struct SetupContribution {
  unsigned from = 0;
  std::vector<std::vector<FieldElement>> shares_out;  // [j - 1] = h_{i,j}, n-k values each
  FieldElement own_secret_kept;
  std::optional<Poly> polynomial;  // stays with i; tests use it as an oracle

  const std::vector<FieldElement>& share_for(unsigned recipient) const { return shares_out.at(recipient - 1); }
};

SetupContribution setup_deal_own(const PointLayout& layout, unsigned participant, const FieldElement& secret,
                                 Rng& rng);

// Participant j's final bundle: its own secret and the field sum of h_{i,j} over all i.
ParticipantBundle setup_aggregate_one(const PointLayout& layout, unsigned participant,
                                      const FieldElement& own_secret,
                                      const std::map<unsigned, std::vector<FieldElement>>& received);

// Central fold over all n contributions. The result carries no polynomial.
Dealing setup_aggregate(const PointLayout& layout, std::span<const SetupContribution> contributions);

Dealing homomorphic_add(const Dealing& a, const Dealing& b);

}  // namespace gruppen
