#include "gruppen/field.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <utility>

#include "gruppen/error.hpp"

namespace gruppen {

namespace {

struct TableEntry {
  unsigned degree;
  std::uint64_t low;  // reduction polynomial without its x^degree term
};

// Low-weight irreducible polynomials over GF(2). Entries up to degree 16 are
// re-checked exhaustively whenever a field is built from them.
constexpr std::array<TableEntry, 29> kIrreducibles{{
    {1, 0x1},  {2, 0x3},   {3, 0x3},   {4, 0x3},   {5, 0x5},   {6, 0x3},
    {7, 0x3},  {8, 0x1B},  {9, 0x11},  {10, 0x9},  {11, 0x5},  {12, 0x9},
    {13, 0x1B}, {14, 0x21}, {15, 0x3},  {16, 0x2B}, {17, 0x9},  {18, 0x81},
    {19, 0x27}, {20, 0x9},  {24, 0x1B}, {31, 0x9},  {32, 0x8D}, {40, 0x39},
    {48, 0x2D}, {56, 0x95}, {63, 0x3},  {64, 0x1B}, {128, 0x87},
}};

const TableEntry* find_entry(unsigned s) {
  auto it = std::find_if(kIrreducibles.begin(), kIrreducibles.end(),
                         [s](const TableEntry& e) { return e.degree == s; });
  return it == kIrreducibles.end() ? nullptr : &*it;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int degree_of(std::uint32_t poly) {
  int d = -1;
  while (poly >> (d + 1)) ++d;
  return d;
}

std::uint32_t gf2_poly_mod(std::uint32_t a, std::uint32_t m) {
  const int dm = degree_of(m);
  for (int da = degree_of(a); da >= dm; da = degree_of(a)) a ^= m << (da - dm);
  return a;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string_view strip_hex_prefix(std::string_view hex) {
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
  return hex;
}

// Parses up to 32 hex digits; leading zeros are ignored.
Repr parse_raw_hex(std::string_view hex) {
  hex = strip_hex_prefix(hex);
  if (hex.empty()) throw UsageError("empty hex value");
  while (hex.size() > 1 && hex.front() == '0') hex.remove_prefix(1);
  if (hex.size() > 32) throw UsageError("hex value wider than 128 bits: " + std::string(hex));
  Repr v = 0;
  for (char c : hex) {
    int d = hex_digit(c);
    if (d < 0) throw UsageError("invalid hex digit in '" + std::string(hex) + "'");
    v = (v << 4) | static_cast<Repr>(d);
  }
  return v;
}

std::string raw_hex(Repr v, unsigned width) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  do {
    out.push_back(kDigits[static_cast<unsigned>(v & 0xF)]);
    v >>= 4;
  } while (v != 0);
  while (out.size() < width) out.push_back('0');
  std::reverse(out.begin(), out.end());
  return out;
}

unsigned bits_needed(Repr v) {
  unsigned b = 0;
  while (v != 0) {
    ++b;
    v >>= 1;
  }
  return b;
}

}  // namespace

FieldSpec::FieldSpec(FieldKind kind, std::uint64_t modulus, unsigned degree, Repr reduction_low)
    : kind_(kind), modulus_(modulus), degree_(degree), reduction_low_(reduction_low) {
  if (kind_ == FieldKind::prime) {
    max_repr_ = modulus_ - 1;
    hex_width_ = std::max(1u, (bits_needed(max_repr_) + 3) / 4);
  } else {
    max_repr_ = degree_ == 128 ? ~Repr{0} : ((Repr{1} << degree_) - 1);
    hex_width_ = (degree_ + 3) / 4;
  }
}

FieldPtr FieldSpec::prime(std::uint64_t p) {
  if (p < 2 || p > kMaxPrime) throw UsageError("prime modulus must lie in [2, 2^31): " + std::to_string(p));
  if (!is_prime(p)) throw UsageError("modulus is not prime: " + std::to_string(p));
  return FieldPtr(new FieldSpec(FieldKind::prime, p, 0, 0));
}

bool FieldSpec::has_default_polynomial(unsigned s) { return find_entry(s) != nullptr; }

Repr FieldSpec::default_polynomial(unsigned s) {
  const TableEntry* e = find_entry(s);
  if (e == nullptr) throw UsageError("no built-in reduction polynomial for GF(2^" + std::to_string(s) + ")");
  return e->low;
}

bool FieldSpec::is_irreducible_small(unsigned s, Repr reduction_low) {
  if (s == 0 || s > kExhaustiveCheckDegree) throw UsageError("exhaustive irreducibility check needs 1 <= s <= 16");
  const auto f = static_cast<std::uint32_t>((Repr{1} << s) | reduction_low);
  if ((reduction_low >> s) != 0) return false;
  // Any reducible f has a factor of degree <= s/2.
  for (std::uint32_t g = 2; degree_of(g) <= static_cast<int>(s / 2); ++g)
    if (gf2_poly_mod(f, g) == 0) return false;
  return true;
}

FieldPtr FieldSpec::binary(unsigned s) { return binary(s, default_polynomial(s)); }

FieldPtr FieldSpec::binary(unsigned s, Repr reduction_low) {
  if (s == 0 || s > kMaxDegree) throw UsageError("binary field degree must lie in [1, 128]: " + std::to_string(s));
  if (s <= kExhaustiveCheckDegree) {
    if (!is_irreducible_small(s, reduction_low))
      throw UsageError("reduction polynomial is not irreducible of degree " + std::to_string(s));
  } else {
    const TableEntry* e = find_entry(s);
    if (e == nullptr || Repr{e->low} != reduction_low)
      throw UsageError("cannot verify irreducibility for s > 16; only the built-in polynomial is accepted");
  }
  return FieldPtr(new FieldSpec(FieldKind::binary, 0, s, reduction_low));
}

FieldPtr FieldSpec::parse(std::string_view descriptor) {
  auto parse_uint = [&](std::string_view text) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
      throw UsageError("invalid field descriptor '" + std::string(descriptor) + "'");
    return v;
  };
  if (descriptor.starts_with("p=")) return prime(parse_uint(descriptor.substr(2)));
  if (descriptor.starts_with("gf2=")) {
    std::string_view rest = descriptor.substr(4);
    auto colon = rest.find(':');
    const std::uint64_t s = parse_uint(rest.substr(0, colon));
    if (s == 0 || s > kMaxDegree) throw UsageError("binary field degree must lie in [1, 128]");
    if (colon == std::string_view::npos) return binary(static_cast<unsigned>(s));
    std::string_view poly = strip_hex_prefix(rest.substr(colon + 1));
    while (poly.size() > 1 && poly.front() == '0') poly.remove_prefix(1);
    Repr low = 0;
    if (s == 128) {
      if (poly.size() != 33 || poly.front() != '1') throw UsageError("reduction polynomial must have degree 128");
      low = parse_raw_hex(poly.substr(1));
    } else {
      const Repr full = parse_raw_hex(poly);
      if ((full >> s) != 1) throw UsageError("reduction polynomial degree does not match s");
      low = full ^ (Repr{1} << s);
    }
    return binary(static_cast<unsigned>(s), low);
  }
  throw UsageError("field descriptor must be p=<prime> or gf2=<s>[:<poly hex>], got '" + std::string(descriptor) + "'");
}

unsigned FieldSpec::bit_length() const { return bits_needed(max_repr_); }

std::string FieldSpec::describe() const {
  if (kind_ == FieldKind::prime) return "p=" + std::to_string(modulus_);
  std::string poly = degree_ == 128 ? "1" + raw_hex(reduction_low_, 32)
                                    : raw_hex((Repr{1} << degree_) | reduction_low_, 1);
  return "gf2=" + std::to_string(degree_) + ":" + poly;
}

bool FieldSpec::operator==(const FieldSpec& other) const {
  return kind_ == other.kind_ && modulus_ == other.modulus_ && degree_ == other.degree_ &&
         reduction_low_ == other.reduction_low_;
}

bool same_field(const FieldSpec& a, const FieldSpec& b) { return &a == &b || a == b; }

Repr FieldSpec::add(Repr a, Repr b) const {
  if (kind_ == FieldKind::binary) return a ^ b;
  Repr s = a + b;
  return s >= modulus_ ? s - modulus_ : s;
}

Repr FieldSpec::sub(Repr a, Repr b) const {
  if (kind_ == FieldKind::binary) return a ^ b;
  return a >= b ? a - b : a + modulus_ - b;
}

Repr FieldSpec::neg(Repr a) const {
  if (kind_ == FieldKind::binary || a == 0) return a;
  return modulus_ - a;
}

Repr FieldSpec::mul(Repr a, Repr b) const {
  if (kind_ == FieldKind::prime) return (a * b) % modulus_;
  // Shift-and-add carry-less product, reducing as the multiplicand is shifted.
  Repr acc = 0;
  for (unsigned i = 0; i < degree_ && b != 0; ++i, b >>= 1) {
    if (b & 1) acc ^= a;
    const bool carry = ((a >> (degree_ - 1)) & 1) != 0;
    a = (a << 1) & max_repr_;
    if (carry) a ^= reduction_low_;
  }
  return acc;
}

Repr FieldSpec::pow(Repr a, Repr e) const {
  Repr result = 1;
  while (e != 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Repr FieldSpec::inv(Repr a) const {
  if (a == 0) throw DivisionByZero("inverse of zero");
  // Fermat: a^(order - 2); order - 2 = max_repr - 1 in both kinds.
  return pow(a, max_repr_ - 1);
}

std::string FieldSpec::to_hex(Repr v) const { return raw_hex(v, hex_width_); }

Repr FieldSpec::parse_hex(std::string_view hex) const {
  const Repr v = parse_raw_hex(hex);
  if (v > max_repr_) throw UsageError("value 0x" + std::string(strip_hex_prefix(hex)) + " outside field " + describe());
  return v;
}

FieldElement::FieldElement(FieldPtr spec, Repr value) : spec_(std::move(spec)), value_(value) {
  if (!spec_) throw UsageError("field element without a field");
  if (value_ > spec_->max_repr()) throw UsageError("field element out of canonical range");
}

FieldElement FieldElement::from_integer(FieldPtr spec, std::int64_t v) {
  if (spec->kind() == FieldKind::prime) {
    const auto p = static_cast<std::int64_t>(spec->modulus());
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return {std::move(spec), static_cast<Repr>(r)};
  }
  if (v < 0) throw UsageError("negative integer has no binary-field encoding");
  return {std::move(spec), static_cast<Repr>(v)};
}

FieldElement FieldElement::from_hex(FieldPtr spec, std::string_view hex) {
  Repr v = spec->parse_hex(hex);
  return {std::move(spec), v};
}

FieldElement FieldElement::from_bits(FieldPtr spec, const std::vector<bool>& bits) {
  if (spec->kind() != FieldKind::binary) throw UsageError("bit-string encoding is only defined for GF(2^s)");
  if (bits.size() != spec->degree())
    throw UsageError("bit string has length " + std::to_string(bits.size()) + ", expected " +
                     std::to_string(spec->degree()));
  Repr v = 0;
  for (bool b : bits) v = (v << 1) | (b ? 1 : 0);
  return {std::move(spec), v};
}

std::vector<bool> FieldElement::to_bits() const {
  if (spec_->kind() != FieldKind::binary) throw UsageError("bit-string encoding is only defined for GF(2^s)");
  std::vector<bool> bits(spec_->degree());
  for (unsigned i = 0; i < bits.size(); ++i) bits[bits.size() - 1 - i] = ((value_ >> i) & 1) != 0;
  return bits;
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!same_field(*spec_, *o.spec_))
    throw UsageError("field mismatch: " + spec_->describe() + " vs " + o.spec_->describe());
}

FieldElement FieldElement::inv() const { return {spec_, spec_->inv(value_)}; }

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same(o);
  value_ = spec_->add(value_, o.value_);
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_same(o);
  value_ = spec_->sub(value_, o.value_);
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same(o);
  value_ = spec_->mul(value_, o.value_);
  return *this;
}

bool FieldElement::operator==(const FieldElement& o) const {
  return value_ == o.value_ && same_field(*spec_, *o.spec_);
}

FieldElement random_element(const FieldPtr& spec, Rng& rng) {
  const unsigned bits = spec->bit_length();
  const Repr mask = bits >= 128 ? ~Repr{0} : ((Repr{1} << bits) - 1);
  for (;;) {
    Repr draw = rng();
    if (bits > 64) draw |= static_cast<Repr>(rng()) << 64;
    draw &= mask;
    if (draw <= spec->max_repr()) return {spec, draw};
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string repr_to_string(Repr v) {
  std::string out;
  do {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  } while (v != 0);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace gruppen
