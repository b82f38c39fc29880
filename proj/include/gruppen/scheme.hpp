#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gruppen/field.hpp"
#include "gruppen/poly.hpp"

namespace gruppen {

// k-out-of-n gruppen parameters. Participants are numbered 1..n; slot 0 of a
// participant is its secret, slots 1..n-k its share.
class Params {
 public:
  Params(unsigned n, unsigned k, FieldPtr spec);
  // Exhaustive-analysis parameters: the field only needs |F| >= D, enough
  // for the compact layout to keep every perfectness-relevant point set
  // distinct. Such parameters cannot be dealt or recovered with.
  static Params for_analysis(unsigned n, unsigned k, FieldPtr spec);

  unsigned n() const { return n_; }
  unsigned k() const { return k_; }
  const FieldPtr& spec() const { return spec_; }
  unsigned slots() const { return n_ - k_ + 1; }
  unsigned share_size() const { return n_ - k_; }
  unsigned degree_bound() const { return k_ * slots(); }
  unsigned point_count() const { return n_ * slots(); }
  // Whether all n(n-k+1) points can be distinct (|F| > n(n-k+1)).
  bool admissible() const;
  void require_admissible() const;

  bool operator==(const Params& o) const;

 private:
  struct Unchecked {};
  Params(unsigned n, unsigned k, FieldPtr spec, Unchecked) : n_(n), k_(k), spec_(std::move(spec)) {}

  unsigned n_;
  unsigned k_;
  FieldPtr spec_;
};

// compact: secrets at 0..n-1, share points wrap around within [n, |F|).
// Identical to secrets-first when the field is large enough.
enum class LayoutId { participant_major, secrets_first, compact };

std::string_view to_string(LayoutId id);
LayoutId parse_layout_id(std::string_view text);

// The public evaluation points x_{i,j}; a pure function of (params, id).
class PointLayout {
 public:
  PointLayout(Params params, LayoutId id);

  const Params& params() const { return params_; }
  LayoutId id() const { return id_; }
  const FieldElement& point(unsigned participant, unsigned slot) const;
  // Canonical integer index of x_{i,j} before it is mapped into the field.
  static unsigned index_of(const Params& params, LayoutId id, unsigned participant, unsigned slot);

  bool operator==(const PointLayout& o) const { return params_ == o.params_ && id_ == o.id_; }

 private:
  Params params_;
  LayoutId id_;
  std::vector<FieldElement> points_;  // participant-major storage
};

// Participant-major: x_{i,j} = (i-1)(n-k+1) + j.
PointLayout layout_default(const Params& params);
// Secrets at 0..n-1, shares following in participant order.
PointLayout layout_secrets_first(const Params& params);
PointLayout layout_compact(const Params& params);

struct ParticipantBundle {
  unsigned participant = 0;
  std::optional<FieldElement> secret;  // absent when withheld or lost
  std::vector<FieldElement> share;     // exactly n - k values

  // slot 0 = secret, slot j >= 1 = share[j - 1]
  const FieldElement& value(unsigned slot) const;
  bool operator==(const ParticipantBundle& o) const = default;
};

// Throws unless the bundle fits the layout: index range, share length n-k, field.
void validate_bundle(const PointLayout& layout, const ParticipantBundle& bundle);

struct Dealing {
  PointLayout layout;
  std::vector<ParticipantBundle> bundles;  // bundles[i - 1] belongs to participant i
  std::optional<Poly> polynomial;          // dealer side only

  const Params& params() const { return layout.params(); }
  const ParticipantBundle& bundle(unsigned participant) const { return bundles.at(participant - 1); }
  std::vector<FieldElement> secrets() const;
};

Dealing dealing_from_polynomial(const PointLayout& layout, Poly r);
Dealing deal_random(const PointLayout& layout, Rng& rng);
Dealing deal_with_secrets(const PointLayout& layout, std::span<const FieldElement> secrets, Rng& rng);

struct Reconstruction {
  Poly polynomial;
  std::vector<FieldElement> secrets;  // secrets[i - 1] = r(x_{i,0})
};

// Needs at least k distinct participants with their secrets. The first k
// (by index) determine r; any further bundle must agree with it.
Reconstruction reconstruct_all(const PointLayout& layout, std::span<const ParticipantBundle> bundles);

}  // namespace gruppen
