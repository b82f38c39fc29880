#include "gruppen/poly.hpp"

#include <string>

#include "gruppen/error.hpp"

namespace gruppen {

namespace {

void require_distinct(std::span<const FieldElement> xs) {
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = a + 1; b < xs.size(); ++b)
      if (xs[a] == xs[b]) throw DegenerateInput("duplicate interpolation node 0x" + xs[a].to_hex());
}

}  // namespace

Poly::Poly(FieldPtr spec, std::size_t degree_bound)
    : spec_(std::move(spec)), coeffs_(degree_bound, FieldElement::zero(spec_)) {}

Poly::Poly(std::vector<FieldElement> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw UsageError("polynomial needs a positive degree bound");
  spec_ = coeffs_.front().spec_ptr();
  for (const auto& c : coeffs_)
    if (!same_field(c.spec(), *spec_)) throw UsageError("polynomial coefficients from different fields");
}

FieldElement Poly::eval(const FieldElement& x) const {
  if (!same_field(x.spec(), *spec_)) throw UsageError("evaluation point from a different field");
  FieldElement acc = FieldElement::zero(spec_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.degree_bound() != degree_bound()) throw UsageError("adding polynomials with different degree bounds");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

std::vector<FieldElement> power_row(const FieldElement& x, std::size_t degree_bound) {
  std::vector<FieldElement> row;
  row.reserve(degree_bound);
  FieldElement pw = FieldElement::one(x.spec_ptr());
  for (std::size_t i = 0; i < degree_bound; ++i) {
    row.push_back(pw);
    pw *= x;
  }
  return row;
}

FieldElement LagrangeRow::combine(std::span<const FieldElement> values) const {
  if (values.size() != lambdas.size()) throw UsageError("value count does not match Lagrange row");
  FieldElement acc = FieldElement::zero(target.spec_ptr());
  for (std::size_t m = 0; m < values.size(); ++m) acc += lambdas[m] * values[m];
  return acc;
}

LagrangeRow lagrange_coefficients(std::span<const FieldElement> nodes, const FieldElement& target) {
  if (nodes.empty()) throw DegenerateInput("Lagrange coefficients need at least one node");
  require_distinct(nodes);
  LagrangeRow row{{nodes.begin(), nodes.end()}, target, {}};
  row.lambdas.reserve(nodes.size());
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    FieldElement num = FieldElement::one(target.spec_ptr());
    FieldElement den = FieldElement::one(target.spec_ptr());
    for (std::size_t o = 0; o < nodes.size(); ++o) {
      if (o == m) continue;
      num *= target - nodes[o];
      den *= nodes[m] - nodes[o];
    }
    row.lambdas.push_back(num / den);
  }
  return row;
}

Poly interpolate(std::span<const Point> points, std::size_t degree_bound) {
  if (points.empty()) throw DegenerateInput("interpolation needs at least one point");
  const FieldPtr spec = points.front().x.spec_ptr();
  std::vector<FieldElement> xs;
  xs.reserve(points.size());
  for (const auto& pt : points) xs.push_back(pt.x);
  require_distinct(xs);

  const std::size_t m = points.size();
  // master(x) = prod (x - x_j), coefficients low to high, degree m.
  std::vector<FieldElement> master(m + 1, FieldElement::zero(spec));
  master[0] = FieldElement::one(spec);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t d = j + 1; d > 0; --d) master[d] = master[d - 1] - xs[j] * master[d];
    master[0] = -(xs[j] * master[0]);
  }

  std::vector<FieldElement> coeffs(std::max(m, degree_bound), FieldElement::zero(spec));
  std::vector<FieldElement> basis(m, FieldElement::zero(spec));
  for (std::size_t i = 0; i < m; ++i) {
    // Synthetic division master / (x - x_i).
    FieldElement carry = master[m];
    for (std::size_t d = m; d-- > 0;) {
      basis[d] = carry;
      carry = master[d] + carry * xs[i];
    }
    FieldElement denom = FieldElement::one(spec);
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) denom *= xs[i] - xs[j];
    const FieldElement scale = points[i].y / denom;
    for (std::size_t d = 0; d < m; ++d) coeffs[d] += scale * basis[d];
  }
  return Poly(std::move(coeffs));
}

std::vector<FieldElement> free_nodes(const FieldPtr& spec, std::size_t degree_bound,
                                     std::span<const Point> constraints) {
  if (constraints.size() > degree_bound)
    throw UsageError("too many constraints (" + std::to_string(constraints.size()) + ") for degree bound " +
                     std::to_string(degree_bound));
  const std::size_t wanted = degree_bound - constraints.size();
  std::vector<FieldElement> nodes;
  nodes.reserve(wanted);
  for (Repr v = 0; nodes.size() < wanted; ++v) {
    if (v > spec->max_repr()) throw UsageError("field too small for " + std::to_string(wanted) + " free nodes");
    FieldElement candidate(spec, v);
    bool taken = false;
    for (const auto& c : constraints) taken = taken || c.x == candidate;
    if (!taken) nodes.push_back(candidate);
    if (v == spec->max_repr() && nodes.size() < wanted)
      throw UsageError("field too small for " + std::to_string(wanted) + " free nodes");
  }
  return nodes;
}

Poly poly_from_free_values(const FieldPtr& spec, std::size_t degree_bound, std::span<const Point> constraints,
                           std::span<const FieldElement> free_values) {
  const auto nodes = free_nodes(spec, degree_bound, constraints);
  if (free_values.size() != nodes.size()) throw UsageError("free value count does not match free node count");
  if (degree_bound == 0) throw UsageError("degree bound must be positive");
  std::vector<Point> all(constraints.begin(), constraints.end());
  for (std::size_t i = 0; i < nodes.size(); ++i) all.push_back({nodes[i], free_values[i]});
  return interpolate(all, degree_bound);
}

Poly random_poly_constrained(const FieldPtr& spec, std::size_t degree_bound, std::span<const Point> constraints,
                             Rng& rng) {
  const std::size_t free = degree_bound >= constraints.size() ? degree_bound - constraints.size() : 0;
  if (constraints.size() > degree_bound)
    throw UsageError("too many constraints (" + std::to_string(constraints.size()) + ") for degree bound " +
                     std::to_string(degree_bound));
  std::vector<FieldElement> values;
  values.reserve(free);
  for (std::size_t i = 0; i < free; ++i) values.push_back(random_element(spec, rng));
  return poly_from_free_values(spec, degree_bound, constraints, values);
}

Poly random_poly(const FieldPtr& spec, std::size_t degree_bound, Rng& rng) {
  if (degree_bound == 0) throw UsageError("degree bound must be positive");
  std::vector<FieldElement> coeffs;
  coeffs.reserve(degree_bound);
  for (std::size_t i = 0; i < degree_bound; ++i) coeffs.push_back(random_element(spec, rng));
  return Poly(std::move(coeffs));
}

}  // namespace gruppen
