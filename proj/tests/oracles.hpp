#pragma once

// Independent reference implementations used only by tests. None of these
// share code with the library.

#include <bitset>
#include <cstdint>
#include <vector>

namespace oracle {

// a^-1 mod p by the extended Euclidean algorithm.
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r0 = p, r1 = ((a % p) + p) % p, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) return 0;
  return ((s0 % p) + p) % p;
}

// Rational a/b reduced into GF(p).
inline std::uint64_t frac(std::int64_t a, std::int64_t b, std::int64_t p) {
  const std::int64_t am = ((a % p) + p) % p;
  return static_cast<std::uint64_t>(am * inverse_mod(b, p) % p);
}

// GF(2)[x] with at most 260 coefficients.
using Gf2Poly = std::bitset<260>;

inline int degree(const Gf2Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

inline Gf2Poly mod(Gf2Poly a, const Gf2Poly& f) {
  const int df = degree(f);
  for (int d = degree(a); d >= df; d = degree(a)) a ^= f << (d - df);
  return a;
}

inline Gf2Poly mulmod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& f) {
  Gf2Poly acc;
  for (int i = degree(b); i >= 0; --i) {
    acc = mod(acc << 1, f);
    if (b[i]) acc ^= a;
  }
  return mod(acc, f);
}

inline Gf2Poly gcd(Gf2Poly a, Gf2Poly b) {
  while (b.any()) {
    a = mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// x^(2^e) mod f
inline Gf2Poly frobenius_x(unsigned e, const Gf2Poly& f) {
  Gf2Poly x;
  x[1] = true;
  Gf2Poly acc = mod(x, f);
  for (unsigned i = 0; i < e; ++i) acc = mulmod(acc, acc, f);
  return acc;
}

// Rabin's test: f of degree s is irreducible iff x^(2^s) = x mod f and
// gcd(x^(2^(s/q)) - x, f) = 1 for every prime q dividing s.
inline bool rabin_irreducible(const Gf2Poly& f) {
  const int s = degree(f);
  if (s < 1) return false;
  Gf2Poly x;
  x[1] = true;
  if (frobenius_x(static_cast<unsigned>(s), f) != mod(x, f)) return false;
  unsigned rest = static_cast<unsigned>(s);
  for (unsigned q = 2; q <= rest; ++q) {
    if (rest % q) continue;
    while (rest % q == 0) rest /= q;
    Gf2Poly h = frobenius_x(static_cast<unsigned>(s) / q, f) ^ mod(x, f);
    if (degree(gcd(f, h)) != 0) return false;
  }
  return true;
}

// Carry-less multiply then reduce, bit by bit.
inline std::uint64_t gf2_mul_small(std::uint64_t a, std::uint64_t b, unsigned s, std::uint64_t full_poly) {
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < 64; ++i)
    if ((b >> i) & 1) acc ^= a << i;
  for (int d = 63; d >= static_cast<int>(s); --d)
    if ((acc >> d) & 1) acc ^= full_poly << (d - s);
  return acc;
}

// Determinant-free rank over GF(p) by plain Gaussian elimination on a copy.
inline std::size_t rank(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && ((m[piv][c] % p) + p) % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    const std::int64_t inv = inverse_mod(m[r][c], p);
    for (auto& v : m[r]) v = ((v % p) + p) % p * inv % p;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r) continue;
      const std::int64_t f = ((m[i][c] % p) + p) % p;
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = (((m[i][j] - f * m[r][j]) % p) + p) % p;
    }
    ++r;
  }
  return r;
}

}  // namespace oracle
