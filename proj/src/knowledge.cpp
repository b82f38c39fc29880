#include "gruppen/knowledge.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "gruppen/error.hpp"

namespace gruppen {

namespace {

std::uint64_t smallest_prime_above(Repr bound) {
  for (std::uint64_t c = static_cast<std::uint64_t>(bound) + 1;; ++c) {
    bool prime = c >= 2;
    for (std::uint64_t d = 2; prime && d * d <= c; ++d) prime = c % d != 0;
    if (prime) return c;
  }
}

ModRow vandermonde(std::uint64_t x, std::uint64_t p, std::size_t d) {
  ModRow row(d);
  std::uint64_t pw = 1;
  for (std::size_t i = 0; i < d; ++i) {
    row[i] = pw;
    pw = pw * x % p;
  }
  return row;
}

std::uint64_t require_prime_layout(const PointLayout& layout) {
  const auto& spec = *layout.params().spec();
  if (spec.kind() != FieldKind::prime) throw UsageError("rank analysis needs a prime field; use analysis_layout()");
  return spec.modulus();
}

}  // namespace

std::string ViewItem::label() const {
  const std::string s = std::to_string(session);
  switch (kind) {
    case ItemKind::point:
      return slot == 0 ? "s" + std::to_string(participant)
                       : "h" + std::to_string(participant) + "." + std::to_string(slot);
    case ItemKind::contribution:
      return "t#" + s + "(" + std::to_string(participant) + ")." + std::to_string(slot);
    case ItemKind::masked_contribution:
      return "t'#" + s + "(" + std::to_string(participant) + ")." + std::to_string(slot);
    case ItemKind::mask:
      return "m#" + s + "(" + std::to_string(participant) + "->" + std::to_string(peer) + ")." + std::to_string(slot);
    case ItemKind::sub_point:
      return "g" + std::to_string(peer) + "->" + std::to_string(participant) + "." + std::to_string(slot);
    case ItemKind::sub_polynomial:
      return "r" + std::to_string(participant);
  }
  return "?";
}

void View::add(const ViewItem& item) {
  if (std::find(items.begin(), items.end(), item) == items.end()) items.push_back(item);
}

void View::add_bundle(unsigned participant, unsigned slots, bool include_secret) {
  for (unsigned j = include_secret ? 0 : 1; j < slots; ++j) add(ViewItem::point(participant, j));
}

const SessionDescriptor& View::session(unsigned id) const {
  for (const auto& s : sessions)
    if (s.id == id) return s;
  throw UsageError("view references unknown session " + std::to_string(id));
}

PointLayout analysis_layout(const PointLayout& layout) {
  const Params& params = layout.params();
  if (params.spec()->kind() == FieldKind::prime) return layout;
  const auto p = smallest_prime_above(Repr{params.n()} * params.slots());
  return PointLayout(Params(params.n(), params.k(), FieldSpec::prime(p)), layout.id());
}

std::size_t KnowledgeMatrix::mask_column(unsigned session, unsigned slot, unsigned from, unsigned to) {
  auto [it, inserted] = mask_columns_.try_emplace({session, slot, from, to}, poly_dim_ + mask_columns_.size());
  return it->second;
}

void KnowledgeMatrix::add_row(std::string label, ModRow coeffs) {
  for (auto& v : coeffs) v %= p_;
  rows_.push_back({std::move(label), std::move(coeffs)});
}

ModRow KnowledgeMatrix::padded(const ModRow& coeffs) const {
  ModRow out(dim(), 0);
  std::copy(coeffs.begin(), coeffs.end(), out.begin());
  return out;
}

std::size_t KnowledgeMatrix::raw_rank() const {
  EchelonBasis basis(p_, dim());
  for (const auto& r : rows_) basis.insert(padded(r.coeffs));
  return basis.rank();
}

std::size_t KnowledgeMatrix::mask_rank() const {
  if (mask_dim() == 0) return 0;
  EchelonBasis basis(p_, mask_dim());
  for (const auto& r : rows_) {
    ModRow full = padded(r.coeffs);
    basis.insert(ModRow(full.begin() + static_cast<std::ptrdiff_t>(poly_dim_), full.end()));
  }
  return basis.rank();
}

bool KnowledgeMatrix::determines(const ModRow& poly_functional) const {
  if (poly_functional.size() > poly_dim_) throw UsageError("functional longer than the coefficient space");
  EchelonBasis basis(p_, dim());
  for (const auto& r : rows_) basis.insert(padded(r.coeffs));
  ModRow f = padded(poly_functional);
  for (auto& v : f) v %= p_;
  return basis.contains(f);
}

ModRow point_functional(const PointLayout& layout, unsigned participant, unsigned slot, bool dealerless) {
  const std::uint64_t p = require_prime_layout(layout);
  const std::size_t d = layout.params().degree_bound();
  const ModRow v = vandermonde(layout.point(participant, slot).value64(), p, d);
  if (!dealerless) return v;
  ModRow out;
  out.reserve(d * layout.params().n());
  for (unsigned b = 0; b < layout.params().n(); ++b) out.insert(out.end(), v.begin(), v.end());
  return out;
}

ModRow contribution_functional(const RecoverySession& session, unsigned member, unsigned target_slot,
                               bool dealerless) {
  const PointLayout& layout = session.layout();
  const std::uint64_t p = require_prime_layout(layout);
  ModRow acc;
  for (unsigned j = 0; j < session.params().slots(); ++j) {
    const std::uint64_t lam = session.lambda(target_slot, member, j).value64();
    const ModRow v = point_functional(layout, member, j, dealerless);
    if (acc.empty()) acc.assign(v.size(), 0);
    for (std::size_t c = 0; c < v.size(); ++c) acc[c] = (acc[c] + lam * v[c]) % p;
  }
  return acc;
}

KnowledgeMatrix km_from_view(const PointLayout& layout_in, const View& view) {
  const PointLayout layout = analysis_layout(layout_in);
  const Params& params = layout.params();
  const std::uint64_t p = params.spec()->modulus();
  const std::size_t d = params.degree_bound();
  const std::size_t blocks = view.dealerless ? params.n() : 1;
  KnowledgeMatrix km(p, d * blocks);

  auto block_row = [&](unsigned block, const ModRow& v) {
    ModRow out(d * blocks, 0);
    std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>((block - 1) * d));
    return out;
  };
  if (view.dealerless) {
    // Public structure: sub-polynomial m vanishes at every other secret point.
    for (unsigned m = 1; m <= params.n(); ++m)
      for (unsigned i = 1; i <= params.n(); ++i)
        if (i != m) km.add_row("zero" + std::to_string(m) + "@s" + std::to_string(i),
                               block_row(m, point_functional(layout, i, 0)));
  }

  std::map<unsigned, RecoverySession> sessions;
  auto session_for = [&](unsigned id) -> const RecoverySession& {
    auto it = sessions.find(id);
    if (it == sessions.end()) {
      const SessionDescriptor& desc = view.session(id);
      it = sessions.emplace(id, RecoverySession(layout, desc.requester, desc.quorum, desc.mode)).first;
    }
    return it->second;
  };

  for (const auto& item : view.items) {
    switch (item.kind) {
      case ItemKind::point:
        km.add_row(item.label(), point_functional(layout, item.participant, item.slot, view.dealerless));
        break;
      case ItemKind::contribution:
        km.add_row(item.label(), contribution_functional(session_for(item.session), item.participant, item.slot,
                                                         view.dealerless));
        break;
      case ItemKind::masked_contribution: {
        const RecoverySession& s = session_for(item.session);
        ModRow row = contribution_functional(s, item.participant, item.slot, view.dealerless);
        std::vector<std::pair<std::size_t, std::uint64_t>> mask_terms;
        for (unsigned j : s.quorum()) {
          if (j == item.participant) continue;
          mask_terms.emplace_back(km.mask_column(item.session, item.slot, item.participant, j), 1);
          mask_terms.emplace_back(km.mask_column(item.session, item.slot, j, item.participant), p - 1);
        }
        row.resize(km.dim(), 0);
        for (auto [col, coeff] : mask_terms) row[col] = (row[col] + coeff) % p;
        km.add_row(item.label(), std::move(row));
        break;
      }
      case ItemKind::mask: {
        if (item.participant == item.peer) break;  // self-masks cancel inside t'
        session_for(item.session);
        const std::size_t col = km.mask_column(item.session, item.slot, item.participant, item.peer);
        ModRow row(km.dim(), 0);
        row[col] = 1;
        km.add_row(item.label(), std::move(row));
        break;
      }
      case ItemKind::sub_point:
        if (!view.dealerless) throw UsageError("sub-share items need a dealerless view");
        km.add_row(item.label(), block_row(item.peer, point_functional(layout, item.participant, item.slot)));
        break;
      case ItemKind::sub_polynomial:
        if (!view.dealerless) throw UsageError("sub-polynomial items need a dealerless view");
        for (std::size_t c = 0; c < d; ++c) {
          ModRow unit(d, 0);
          unit[c] = 1;
          km.add_row(item.label() + "[" + std::to_string(c) + "]", block_row(item.participant, unit));
        }
        break;
    }
  }
  return km;
}

std::optional<ModRow> km_leaked_combination(const KnowledgeMatrix& km, std::span<const ModRow> targets) {
  const std::uint64_t p = km.modulus();
  EchelonBasis basis(p, km.dim());
  for (const auto& r : km.rows()) {
    ModRow full(km.dim(), 0);
    std::copy(r.coeffs.begin(), r.coeffs.end(), full.begin());
    basis.insert(std::move(full));
  }
  std::vector<ModRow> residuals;
  for (const auto& t : targets) {
    if (t.size() > km.poly_dim()) throw UsageError("target functional longer than the coefficient space");
    ModRow full(km.dim(), 0);
    for (std::size_t c = 0; c < t.size(); ++c) full[c] = t[c] % p;
    residuals.push_back(basis.reduce(std::move(full)));
  }
  auto kernel = left_kernel(residuals, p, km.dim());
  if (kernel.empty()) return std::nullopt;
  ModRow c = kernel.front();
  std::size_t last = c.size();
  while (last > 0 && c[last - 1] == 0) --last;
  const std::uint64_t scale = mod_inv(c[last - 1], p);
  for (auto& v : c) v = v * scale % p;
  return c;
}

View coalition_view(const PointLayout& layout, std::span<const SessionDescriptor> sessions,
                    const std::set<unsigned>& coalition, const std::set<unsigned>& granted_secrets) {
  const Params& params = layout.params();
  View view;
  view.sessions.assign(sessions.begin(), sessions.end());

  // A requester lost its state before its first recovery: it retains the
  // share (naive, masked) or nothing (full-state).
  std::map<unsigned, RecoveryMode> first_loss;
  for (const auto& s : sessions) first_loss.try_emplace(s.requester, s.mode);
  for (unsigned member : coalition) {
    auto loss = first_loss.find(member);
    if (loss == first_loss.end()) view.add_bundle(member, params.slots());
    else if (loss->second != RecoveryMode::full_state) view.add_bundle(member, params.slots(), false);
  }

  for (const auto& s : sessions) {
    const bool requester_in = coalition.contains(s.requester);
    const unsigned targets = s.mode == RecoveryMode::full_state ? params.slots() : 1;
    for (unsigned i : s.quorum) {
      const bool member_in = coalition.contains(i);
      for (unsigned t = 0; t < targets; ++t) {
        if (s.mode == RecoveryMode::naive) {
          if (requester_in || member_in) view.add(ViewItem::contribution(s.id, i, t));
          continue;
        }
        if (requester_in || member_in) view.add(ViewItem::masked_contribution(s.id, i, t));
        if (!member_in) continue;
        for (unsigned j : s.quorum) {
          view.add(ViewItem::mask(s.id, i, j, t));
          view.add(ViewItem::mask(s.id, j, i, t));
        }
      }
    }
  }
  for (unsigned g : granted_secrets) view.add(ViewItem::secret(g));
  return view;
}

std::vector<std::set<unsigned>> subsets_between(const std::vector<unsigned>& pool, std::size_t lo, std::size_t hi) {
  std::vector<std::set<unsigned>> out;
  const std::size_t m = pool.size();
  if (m >= 32) throw UsageError("subset enumeration limited to 31 elements");
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size < lo || size > hi) continue;
    std::set<unsigned> s;
    for (std::size_t b = 0; b < m; ++b)
      if (mask & (std::uint32_t{1} << b)) s.insert(pool[b]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

RecoveryGate::RecoveryGate(PointLayout layout) : layout_(analysis_layout(layout)) {}

std::optional<std::string> RecoveryGate::disclosure(const std::vector<SessionDescriptor>& sessions) const {
  const Params& params = layout_.params();
  std::vector<unsigned> everyone(params.n());
  for (unsigned i = 0; i < params.n(); ++i) everyone[i] = i + 1;
  for (const auto& coalition : subsets_between(everyone, 1, params.k() - 1)) {
    const KnowledgeMatrix km = km_from_view(layout_, coalition_view(layout_, sessions, coalition));
    for (unsigned i = 1; i <= params.n(); ++i) {
      if (coalition.contains(i)) continue;
      if (km.determines(point_functional(layout_, i, 0))) {
        std::string who;
        for (unsigned c : coalition) who += (who.empty() ? "" : ",") + std::to_string(c);
        return "coalition {" + who + "} would learn the secret of participant " + std::to_string(i);
      }
    }
  }
  return std::nullopt;
}

void RecoveryGate::check(const SessionDescriptor& session) const {
  if (session.mode != RecoveryMode::naive) return;
  if (excluded_.contains(session.requester))
    throw RefusedError("participant " + std::to_string(session.requester) +
                       " already ran a naive recovery and is excluded from further recoveries");
  for (unsigned i : session.quorum)
    if (excluded_.contains(i))
      throw RefusedError("quorum member " + std::to_string(i) + " is excluded after its naive recovery");
  auto sessions = history_;
  sessions.push_back(session);
  if (auto reason = disclosure(sessions)) throw RefusedError("naive recovery refused: " + *reason);
}

void RecoveryGate::record(const SessionDescriptor& session) {
  if (session.mode != RecoveryMode::naive) return;
  history_.push_back(session);
  excluded_.insert(session.requester);
}

std::size_t RecoveryGate::coalition_codim(const std::set<unsigned>& coalition) const {
  return km_from_view(layout_, coalition_view(layout_, history_, coalition)).codim();
}

std::size_t RecoveryGate::min_coalition_codim() const {
  const Params& params = layout_.params();
  std::vector<unsigned> everyone(params.n());
  for (unsigned i = 0; i < params.n(); ++i) everyone[i] = i + 1;
  std::size_t best = params.degree_bound();
  for (const auto& c : subsets_between(everyone, 1, params.k() - 1)) best = std::min(best, coalition_codim(c));
  return best;
}

}  // namespace gruppen
