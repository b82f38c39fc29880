#include "gruppen/linalg.hpp"

#include "gruppen/error.hpp"

namespace gruppen {

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw DivisionByZero("inverse of zero mod p");
  std::uint64_t result = 1;
  for (std::uint64_t e = p - 2; e != 0; e >>= 1) {
    if (e & 1) result = result * a % p;
    a = a * a % p;
  }
  return result;
}

ModRow EchelonBasis::reduce(ModRow row) const {
  if (row.size() != columns_) throw UsageError("row length does not match basis");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::uint64_t f = row[pivots_[r]];
    if (f == 0) continue;
    const ModRow& b = rows_[r];
    for (std::size_t c = pivots_[r]; c < columns_; ++c) row[c] = (row[c] + (p_ - f) * b[c]) % p_;
  }
  return row;
}

bool EchelonBasis::contains(const ModRow& row) const {
  const ModRow residual = reduce(row);
  for (auto v : residual)
    if (v != 0) return false;
  return true;
}

bool EchelonBasis::insert(ModRow row) {
  row = reduce(std::move(row));
  std::size_t pivot = 0;
  while (pivot < columns_ && row[pivot] == 0) ++pivot;
  if (pivot == columns_) return false;
  const std::uint64_t scale = mod_inv(row[pivot], p_);
  for (std::size_t c = pivot; c < columns_; ++c) row[c] = row[c] * scale % p_;
  // Keep the basis fully reduced so later reductions only touch each pivot once.
  for (auto& other : rows_) {
    const std::uint64_t f = other[pivot];
    if (f == 0) continue;
    for (std::size_t c = pivot; c < columns_; ++c) other[c] = (other[c] + (p_ - f) * row[c]) % p_;
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(pivot);
  return true;
}

std::size_t rank_mod_p(const std::vector<ModRow>& rows, std::uint64_t p, std::size_t columns) {
  EchelonBasis basis(p, columns);
  for (const auto& r : rows) basis.insert(r);
  return basis.rank();
}

std::vector<ModRow> left_kernel(const std::vector<ModRow>& rows, std::uint64_t p, std::size_t columns) {
  // Augment each row with an identity tag; rows reducing to zero in the
  // original columns leave their tag as a kernel vector.
  const std::size_t m = rows.size();
  std::vector<ModRow> work;
  work.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != columns) throw UsageError("row length mismatch");
    ModRow r(columns + m, 0);
    for (std::size_t c = 0; c < columns; ++c) r[c] = rows[i][c] % p;
    r[columns + i] = 1;
    work.push_back(std::move(r));
  }
  std::size_t lead = 0;
  for (std::size_t col = 0; col < columns && lead < m; ++col) {
    std::size_t sel = lead;
    while (sel < m && work[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(work[sel], work[lead]);
    const std::uint64_t inv = mod_inv(work[lead][col], p);
    for (auto& v : work[lead]) v = v * inv % p;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == lead || work[r][col] == 0) continue;
      const std::uint64_t f = work[r][col];
      for (std::size_t c = 0; c < columns + m; ++c) work[r][c] = (work[r][c] + (p - f) * work[lead][c]) % p;
    }
    ++lead;
  }
  std::vector<ModRow> kernel;
  for (std::size_t r = lead; r < m; ++r) kernel.emplace_back(work[r].begin() + static_cast<std::ptrdiff_t>(columns), work[r].end());
  return kernel;
}

}  // namespace gruppen
