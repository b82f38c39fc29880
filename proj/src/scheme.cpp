#include "gruppen/scheme.hpp"

#include <algorithm>

#include "gruppen/error.hpp"

namespace gruppen {

Params::Params(unsigned n, unsigned k, FieldPtr spec) : n_(n), k_(k), spec_(std::move(spec)) {
  if (!spec_) throw UsageError("parameters need a field");
  if (k_ < 2 || n_ < 3 || k_ > n_ - 1)
    throw UsageError("need 2 <= k <= n-1, got n=" + std::to_string(n_) + " k=" + std::to_string(k_));
  require_admissible();
}

Params Params::for_analysis(unsigned n, unsigned k, FieldPtr spec) {
  if (!spec) throw UsageError("parameters need a field");
  if (k < 2 || n < 3 || k > n - 1)
    throw UsageError("need 2 <= k <= n-1, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  Params out(n, k, spec, Unchecked{});
  const unsigned d = out.degree_bound();
  if (!spec->order_exceeds(Repr{d} - 1))
    throw UsageError("field " + spec->describe() + " is too small for analysis: need at least D = " +
                     std::to_string(d) + " elements");
  return out;
}

bool Params::admissible() const { return spec_->order_exceeds(Repr{n_} * slots()); }

void Params::require_admissible() const {
  if (!admissible())
    throw UsageError("field " + spec_->describe() + " is too small: need more than n(n-k+1) = " +
                     std::to_string(n_ * slots()) + " elements");
}

bool Params::operator==(const Params& o) const {
  return n_ == o.n_ && k_ == o.k_ && same_field(*spec_, *o.spec_);
}

std::string_view to_string(LayoutId id) {
  switch (id) {
    case LayoutId::participant_major: return "participant-major";
    case LayoutId::secrets_first: return "secrets-first";
    case LayoutId::compact: return "compact";
  }
  return "?";
}

LayoutId parse_layout_id(std::string_view text) {
  if (text == "participant-major") return LayoutId::participant_major;
  if (text == "secrets-first") return LayoutId::secrets_first;
  if (text == "compact") return LayoutId::compact;
  throw UsageError("unknown layout '" + std::string(text) + "' (participant-major | secrets-first | compact)");
}

unsigned PointLayout::index_of(const Params& params, LayoutId id, unsigned participant, unsigned slot) {
  if (participant < 1 || participant > params.n() || slot >= params.slots())
    throw UsageError("no layout point for participant " + std::to_string(participant) + " slot " +
                     std::to_string(slot));
  if (id == LayoutId::participant_major) return (participant - 1) * params.slots() + slot;
  if (slot == 0) return participant - 1;
  const unsigned offset = (participant - 1) * params.share_size() + (slot - 1);
  if (id == LayoutId::secrets_first || params.admissible()) return params.n() + offset;
  const auto room = static_cast<unsigned>(params.spec()->max_repr() + 1 - params.n());
  return params.n() + offset % room;
}

PointLayout::PointLayout(Params params, LayoutId id) : params_(std::move(params)), id_(id) {
  if (id_ != LayoutId::compact) params_.require_admissible();
  points_.reserve(params_.point_count());
  for (unsigned i = 1; i <= params_.n(); ++i)
    for (unsigned j = 0; j < params_.slots(); ++j)
      points_.emplace_back(params_.spec(), Repr{index_of(params_, id_, i, j)});
}

const FieldElement& PointLayout::point(unsigned participant, unsigned slot) const {
  if (participant < 1 || participant > params_.n() || slot >= params_.slots())
    throw UsageError("no layout point for participant " + std::to_string(participant) + " slot " +
                     std::to_string(slot));
  return points_[(participant - 1) * params_.slots() + slot];
}

PointLayout layout_default(const Params& params) { return {params, LayoutId::participant_major}; }
PointLayout layout_secrets_first(const Params& params) { return {params, LayoutId::secrets_first}; }
PointLayout layout_compact(const Params& params) { return {params, LayoutId::compact}; }

const FieldElement& ParticipantBundle::value(unsigned slot) const {
  if (slot == 0) {
    if (!secret) throw UsageError("participant " + std::to_string(participant) + " holds no secret");
    return *secret;
  }
  return share.at(slot - 1);
}

void validate_bundle(const PointLayout& layout, const ParticipantBundle& bundle) {
  const Params& params = layout.params();
  if (bundle.participant < 1 || bundle.participant > params.n())
    throw UsageError("participant index " + std::to_string(bundle.participant) + " out of range");
  if (bundle.share.size() != params.share_size())
    throw UsageError("participant " + std::to_string(bundle.participant) + " share has " +
                     std::to_string(bundle.share.size()) + " elements, expected n-k = " +
                     std::to_string(params.share_size()));
  auto check = [&](const FieldElement& v) {
    if (!same_field(v.spec(), *params.spec())) throw UsageError("bundle value from a different field");
  };
  if (bundle.secret) check(*bundle.secret);
  for (const auto& v : bundle.share) check(v);
}

std::vector<FieldElement> Dealing::secrets() const {
  std::vector<FieldElement> out;
  out.reserve(bundles.size());
  for (const auto& b : bundles) out.push_back(b.value(0));
  return out;
}

Dealing dealing_from_polynomial(const PointLayout& layout, Poly r) {
  const Params& params = layout.params();
  params.require_admissible();
  if (r.degree_bound() != params.degree_bound()) throw UsageError("polynomial degree bound must be k(n-k+1)");
  Dealing d{layout, {}, std::nullopt};
  d.bundles.reserve(params.n());
  for (unsigned i = 1; i <= params.n(); ++i) {
    ParticipantBundle b{i, r.eval(layout.point(i, 0)), {}};
    b.share.reserve(params.share_size());
    for (unsigned j = 1; j < params.slots(); ++j) b.share.push_back(r.eval(layout.point(i, j)));
    d.bundles.push_back(std::move(b));
  }
  d.polynomial = std::move(r);
  return d;
}

Dealing deal_random(const PointLayout& layout, Rng& rng) {
  return dealing_from_polynomial(layout, random_poly(layout.params().spec(), layout.params().degree_bound(), rng));
}

Dealing deal_with_secrets(const PointLayout& layout, std::span<const FieldElement> secrets, Rng& rng) {
  const Params& params = layout.params();
  if (secrets.size() != params.n())
    throw UsageError("expected " + std::to_string(params.n()) + " secrets, got " + std::to_string(secrets.size()));
  std::vector<Point> constraints;
  constraints.reserve(secrets.size());
  for (unsigned i = 1; i <= params.n(); ++i) {
    if (!same_field(secrets[i - 1].spec(), *params.spec())) throw UsageError("secret from a different field");
    constraints.push_back({layout.point(i, 0), secrets[i - 1]});
  }
  return dealing_from_polynomial(
      layout, random_poly_constrained(params.spec(), params.degree_bound(), constraints, rng));
}

Reconstruction reconstruct_all(const PointLayout& layout, std::span<const ParticipantBundle> bundles) {
  const Params& params = layout.params();
  std::vector<const ParticipantBundle*> sorted;
  for (const auto& b : bundles) {
    validate_bundle(layout, b);
    if (!b.secret) throw UsageError("participant " + std::to_string(b.participant) + " bundle lacks its secret");
    sorted.push_back(&b);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->participant < b->participant; });
  if (std::adjacent_find(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        return a->participant == b->participant;
      }) != sorted.end())
    throw UsageError("duplicate participant in quorum");
  if (sorted.size() < params.k())
    throw UsageError("insufficient quorum: " + std::to_string(sorted.size()) + " bundles, need k = " +
                     std::to_string(params.k()));

  std::vector<Point> points;
  points.reserve(params.degree_bound());
  for (unsigned q = 0; q < params.k(); ++q)
    for (unsigned j = 0; j < params.slots(); ++j)
      points.push_back({layout.point(sorted[q]->participant, j), sorted[q]->value(j)});
  Poly r = interpolate(points, params.degree_bound());

  for (std::size_t q = params.k(); q < sorted.size(); ++q)
    for (unsigned j = 0; j < params.slots(); ++j)
      if (!(r.eval(layout.point(sorted[q]->participant, j)) == sorted[q]->value(j)))
        throw ProtocolError("bundle of participant " + std::to_string(sorted[q]->participant) +
                            " is inconsistent with the rest of the quorum");

  Reconstruction out{r, {}};
  out.secrets.reserve(params.n());
  for (unsigned i = 1; i <= params.n(); ++i) out.secrets.push_back(r.eval(layout.point(i, 0)));
  return out;
}

}  // namespace gruppen
