#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace gruppen {

using ModRow = std::vector<std::uint64_t>;

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);

// Incremental row-echelon basis over GF(p), p < 2^31.
class EchelonBasis {
 public:
  EchelonBasis(std::uint64_t p, std::size_t columns) : p_(p), columns_(columns) {}

  std::uint64_t modulus() const { return p_; }
  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return rows_.size(); }

  // Residual of `row` after eliminating every pivot; zero iff row is in the span.
  ModRow reduce(ModRow row) const;
  bool contains(const ModRow& row) const;
  // Returns true when the row was independent and got added.
  bool insert(ModRow row);

 private:
  std::uint64_t p_;
  std::size_t columns_;
  std::vector<ModRow> rows_;           // normalized: pivot entry = 1
  std::vector<std::size_t> pivots_;
};

std::size_t rank_mod_p(const std::vector<ModRow>& rows, std::uint64_t p, std::size_t columns);

// Basis of { c : sum_m c[m] * rows[m] = 0 }.
std::vector<ModRow> left_kernel(const std::vector<ModRow>& rows, std::uint64_t p, std::size_t columns);

}  // namespace gruppen
