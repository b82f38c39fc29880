#pragma once

// Coalition knowledge as linear functionals on the coefficient space of r.
//
// Every value a coalition holds is a linear functional of the random
// variables of the system: the D coefficients of r (n blocks of D in the
// dealerless setup, one per sub-polynomial) plus one column per blinding
// mask r_{i,j}, i != j. Masks are uniform and independent of r, so what the
// rows reveal about r is the part of their span with no mask component:
//
//   knowledge rank = rank(rows) - rank(rows restricted to mask columns)
//
// and codimension = D - knowledge rank.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "gruppen/linalg.hpp"
#include "gruppen/recovery.hpp"
#include "gruppen/scheme.hpp"

namespace gruppen {

struct SessionDescriptor {
  unsigned id = 0;
  unsigned requester = 0;
  std::vector<unsigned> quorum;
  RecoveryMode mode = RecoveryMode::naive;
};

enum class ItemKind {
  point,                // r(x_{i,j}); slot 0 is the secret
  contribution,         // unmasked t for (session, from, target slot)
  masked_contribution,  // t' for (session, from, target slot)
  mask,                 // r_{from,to} for (session, target slot)
  sub_point,            // dealerless: h_{dealer,recipient} component `slot`
  sub_polynomial,       // dealerless: the dealer's whole sub-polynomial
};

struct ViewItem {
  ItemKind kind = ItemKind::point;
  unsigned participant = 0;  // point owner / sender / sub-share recipient / dealer
  unsigned slot = 0;
  unsigned session = 0;
  unsigned peer = 0;  // mask receiver / sub-share dealer

  static ViewItem point(unsigned i, unsigned slot) { return {ItemKind::point, i, slot, 0, 0}; }
  static ViewItem secret(unsigned i) { return point(i, 0); }
  static ViewItem contribution(unsigned session, unsigned from, unsigned target_slot) {
    return {ItemKind::contribution, from, target_slot, session, 0};
  }
  static ViewItem masked_contribution(unsigned session, unsigned from, unsigned target_slot) {
    return {ItemKind::masked_contribution, from, target_slot, session, 0};
  }
  static ViewItem mask(unsigned session, unsigned from, unsigned to, unsigned target_slot) {
    return {ItemKind::mask, from, target_slot, session, to};
  }
  static ViewItem sub_point(unsigned dealer, unsigned recipient, unsigned slot) {
    return {ItemKind::sub_point, recipient, slot, 0, dealer};
  }
  static ViewItem sub_polynomial(unsigned dealer) { return {ItemKind::sub_polynomial, dealer, 0, 0, 0}; }

  std::string label() const;
  auto operator<=>(const ViewItem&) const = default;
};

struct View {
  std::vector<SessionDescriptor> sessions;
  std::vector<ViewItem> items;
  bool dealerless = false;  // r is the sum of n independent sub-polynomials

  void add(const ViewItem& item);
  // Secret and share points of participant i.
  void add_bundle(unsigned participant, unsigned slots, bool include_secret = true);
  const SessionDescriptor& session(unsigned id) const;
};

// Rank work needs a prime field; binary layouts are mapped onto the smallest
// prime field admitting the same parameters, with identical layout indices.
PointLayout analysis_layout(const PointLayout& layout);

class KnowledgeMatrix {
 public:
  struct Row {
    std::string label;
    ModRow coeffs;  // poly columns first, then mask columns in allocation order
  };

  KnowledgeMatrix(std::uint64_t p, std::size_t poly_dim) : p_(p), poly_dim_(poly_dim) {}

  std::uint64_t modulus() const { return p_; }
  std::size_t poly_dim() const { return poly_dim_; }
  std::size_t mask_dim() const { return mask_columns_.size(); }
  std::size_t dim() const { return poly_dim_ + mask_dim(); }
  const std::vector<Row>& rows() const { return rows_; }

  // Column index of a mask variable, allocated on first use.
  std::size_t mask_column(unsigned session, unsigned slot, unsigned from, unsigned to);
  // `coeffs` may be shorter than dim(); missing entries are zero.
  void add_row(std::string label, ModRow coeffs);

  std::size_t raw_rank() const;
  std::size_t mask_rank() const;
  std::size_t rank() const { return raw_rank() - mask_rank(); }
  std::size_t codim() const { return poly_dim_ - rank(); }

  // Whether the value of a poly-only functional is fixed by the rows.
  bool determines(const ModRow& poly_functional) const;

 private:
  ModRow padded(const ModRow& coeffs) const;

  std::uint64_t p_;
  std::size_t poly_dim_;
  std::map<std::tuple<unsigned, unsigned, unsigned, unsigned>, std::size_t> mask_columns_;
  std::vector<Row> rows_;
};

inline std::size_t km_rank(const KnowledgeMatrix& km) { return km.rank(); }
inline std::size_t km_codim(const KnowledgeMatrix& km) { return km.codim(); }

// Vandermonde row of x_{i,j}; in dealerless views, one copy per block.
ModRow point_functional(const PointLayout& layout, unsigned participant, unsigned slot, bool dealerless = false);
// Lambda-weighted sum of member rows for one target slot.
ModRow contribution_functional(const RecoverySession& session, unsigned member, unsigned target_slot,
                               bool dealerless = false);

KnowledgeMatrix km_from_view(const PointLayout& layout, const View& view);

// Nonzero c with sum_m c[m] * targets[m] in the row span (poly-only part),
// scaled so its last nonzero entry is 1; nullopt if only c = 0 works.
std::optional<ModRow> km_leaked_combination(const KnowledgeMatrix& km, std::span<const ModRow> targets);

// Initial data of a coalition plus every message it saw, for the sessions listed.
View coalition_view(const PointLayout& layout, std::span<const SessionDescriptor> sessions,
                    const std::set<unsigned>& coalition, const std::set<unsigned>& granted_secrets = {});

// Naive recoveries are tracked here: a recovery is refused when its requester
// (or a quorum member) was a naive requester before, or when afterwards some
// coalition of at most k-1 participants could fix a non-member's secret.
class RecoveryGate {
 public:
  explicit RecoveryGate(PointLayout layout);

  const PointLayout& layout() const { return layout_; }
  const std::set<unsigned>& excluded() const { return excluded_; }
  const std::vector<SessionDescriptor>& history() const { return history_; }

  // Throws RefusedError with the reason.
  void check(const SessionDescriptor& session) const;
  void record(const SessionDescriptor& session);

  // Smallest codimension over all coalitions of size 1..k-1.
  std::size_t min_coalition_codim() const;
  std::size_t coalition_codim(const std::set<unsigned>& coalition) const;

 private:
  std::optional<std::string> disclosure(const std::vector<SessionDescriptor>& sessions) const;

  PointLayout layout_;
  std::set<unsigned> excluded_;
  std::vector<SessionDescriptor> history_;
};

// All subsets of {1..n} (or of `pool`) with size in [lo, hi], ascending.
std::vector<std::set<unsigned>> subsets_between(const std::vector<unsigned>& pool, std::size_t lo, std::size_t hi);

}  // namespace gruppen
