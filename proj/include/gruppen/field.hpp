#pragma once

// Exact arithmetic in GF(p) (p < 2^31) and GF(2^s) (s <= 128).

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace gruppen {

using Repr = unsigned __int128;
using Rng = std::mt19937_64;

enum class FieldKind { prime, binary };

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

class FieldSpec {
 public:
  static constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;
  static constexpr unsigned kMaxDegree = 128;
  static constexpr unsigned kExhaustiveCheckDegree = 16;

  static FieldPtr prime(std::uint64_t p);
  // Binary field with the built-in reduction polynomial for degree s.
  static FieldPtr binary(unsigned s);
  // `reduction_low` holds the polynomial without its leading x^s term.
  static FieldPtr binary(unsigned s, Repr reduction_low);
  // "p=<int>", "gf2=<s>" or "gf2=<s>:<full reduction polynomial hex>".
  static FieldPtr parse(std::string_view descriptor);

  // Built-in irreducible polynomial (low part) for degree s, if tabulated.
  static bool has_default_polynomial(unsigned s);
  static Repr default_polynomial(unsigned s);
  // Exhaustive trial division; only defined for s <= kExhaustiveCheckDegree.
  static bool is_irreducible_small(unsigned s, Repr reduction_low);

  FieldKind kind() const { return kind_; }
  std::uint64_t modulus() const { return modulus_; }
  unsigned degree() const { return degree_; }
  Repr reduction_low() const { return reduction_low_; }
  // Largest canonical representative (order - 1); order itself overflows at s = 128.
  Repr max_repr() const { return max_repr_; }
  // True when the field has strictly more than `count` elements.
  bool order_exceeds(Repr count) const { return max_repr_ >= count; }
  unsigned bit_length() const;
  // Hex digits per element: ceil(s/4) for GF(2^s), digits of p-1 for GF(p).
  unsigned hex_width() const { return hex_width_; }
  std::string describe() const;

  bool operator==(const FieldSpec& other) const;

  Repr add(Repr a, Repr b) const;
  Repr sub(Repr a, Repr b) const;
  Repr neg(Repr a) const;
  Repr mul(Repr a, Repr b) const;
  Repr inv(Repr a) const;
  Repr pow(Repr a, Repr e) const;

  std::string to_hex(Repr v) const;
  Repr parse_hex(std::string_view hex) const;

 private:
  FieldSpec(FieldKind kind, std::uint64_t modulus, unsigned degree, Repr reduction_low);

  FieldKind kind_;
  std::uint64_t modulus_;
  unsigned degree_;
  Repr reduction_low_;
  Repr max_repr_;
  unsigned hex_width_;
};

bool same_field(const FieldSpec& a, const FieldSpec& b);

class FieldElement {
 public:
  FieldElement(FieldPtr spec, Repr value);

  static FieldElement zero(FieldPtr spec) { return {std::move(spec), 0}; }
  static FieldElement one(FieldPtr spec) { return {std::move(spec), 1}; }
  // Prime fields reduce any integer (negative included); binary fields
  // require 0 <= v < 2^s.
  static FieldElement from_integer(FieldPtr spec, std::int64_t v);
  static FieldElement from_hex(FieldPtr spec, std::string_view hex);
  // MSB-first bit string of length s; binary fields only.
  static FieldElement from_bits(FieldPtr spec, const std::vector<bool>& bits);

  const FieldSpec& spec() const { return *spec_; }
  const FieldPtr& spec_ptr() const { return spec_; }
  Repr value() const { return value_; }
  std::uint64_t value64() const { return static_cast<std::uint64_t>(value_); }
  bool is_zero() const { return value_ == 0; }

  FieldElement inv() const;
  std::string to_hex() const { return spec_->to_hex(value_); }
  std::vector<bool> to_bits() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o) { return *this *= o.inv(); }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const { return {spec_, spec_->neg(value_)}; }

  // Equality also requires the same field; elements of different fields compare unequal.
  bool operator==(const FieldElement& o) const;

 private:
  void check_same(const FieldElement& o) const;

  FieldPtr spec_;
  Repr value_;
};

// Uniform element by rejection sampling over [0, 2^bit_length).
FieldElement random_element(const FieldPtr& spec, Rng& rng);

// Per-party seed: splitmix64 of (seed + golden * (index + 1)). Public and fixed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

std::string repr_to_string(Repr v);

}  // namespace gruppen
