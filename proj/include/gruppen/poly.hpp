#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gruppen/field.hpp"

namespace gruppen {

// Coefficient vector, index = power. Length is the degree bound D; trailing
// zeros are allowed, so the represented polynomial has degree < D.
class Poly {
 public:
  Poly(FieldPtr spec, std::size_t degree_bound);
  explicit Poly(std::vector<FieldElement> coeffs);

  const FieldPtr& spec() const { return spec_; }
  std::size_t degree_bound() const { return coeffs_.size(); }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  const FieldElement& operator[](std::size_t i) const { return coeffs_[i]; }

  FieldElement eval(const FieldElement& x) const;

  Poly& operator+=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

 private:
  FieldPtr spec_;
  std::vector<FieldElement> coeffs_;
};

inline FieldElement poly_eval(const Poly& r, const FieldElement& x) { return r.eval(x); }

// (1, x, x^2, ..., x^{D-1}): evaluation at x as a functional on coefficients.
std::vector<FieldElement> power_row(const FieldElement& x, std::size_t degree_bound);

struct LagrangeRow {
  std::vector<FieldElement> nodes;
  FieldElement target;
  std::vector<FieldElement> lambdas;

  // sum_m lambdas[m] * values[m]
  FieldElement combine(std::span<const FieldElement> values) const;
};

LagrangeRow lagrange_coefficients(std::span<const FieldElement> nodes, const FieldElement& target);

struct Point {
  FieldElement x;
  FieldElement y;
};

// Unique polynomial of degree < |points| through the points, padded to
// `degree_bound` coefficients when that is larger.
Poly interpolate(std::span<const Point> points, std::size_t degree_bound = 0);

// The auxiliary nodes used by constrained sampling: the lowest canonical
// representatives not taken by a constraint, D - |constraints| of them.
std::vector<FieldElement> free_nodes(const FieldPtr& spec, std::size_t degree_bound,
                                     std::span<const Point> constraints);

// Deterministic core of constrained sampling: fixes the free nodes to
// `free_values` (in free_nodes order) and interpolates.
Poly poly_from_free_values(const FieldPtr& spec, std::size_t degree_bound, std::span<const Point> constraints,
                           std::span<const FieldElement> free_values);

// Uniform over the degree-<D polynomials meeting every constraint.
Poly random_poly_constrained(const FieldPtr& spec, std::size_t degree_bound, std::span<const Point> constraints,
                             Rng& rng);

// Uniform coefficients.
Poly random_poly(const FieldPtr& spec, std::size_t degree_bound, Rng& rng);

}  // namespace gruppen
