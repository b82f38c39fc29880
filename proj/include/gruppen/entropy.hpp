#pragma once

// Brute-force Shannon entropies over a finite uniform sample space.
//
// A model enumerates every outcome of the randomness (e.g. all p^D
// polynomials) and tabulates named variables per outcome. Entropies are
// computed from exact integer counts; only the final log2 is floating point.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gruppen/linalg.hpp"
#include "gruppen/scheme.hpp"

namespace gruppen {

class EnumeratedModel {
 public:
  static constexpr std::uint64_t kMaxOutcomes = 20'000'000;

  // `radix` bounds every tabulated value (the field order).
  EnumeratedModel(std::uint64_t radix, std::uint64_t outcomes);

  // Registers a variable of `width` coordinates; returns its index.
  std::size_t add_variable(std::string name, std::size_t width);
  // Fills the table by calling fn(outcome, row) for every outcome.
  template <class Fn>
  void tabulate(Fn&& fn) {
    table_.assign(outcomes_ * stride_, 0);
    for (std::uint64_t o = 0; o < outcomes_; ++o) fn(o, &table_[o * stride_]);
  }

  std::uint64_t radix() const { return radix_; }
  std::uint64_t outcomes() const { return outcomes_; }
  std::size_t stride() const { return stride_; }
  bool has_variable(const std::string& name) const { return index_.contains(name); }
  std::size_t offset(const std::string& name) const;
  std::size_t width(const std::string& name) const;
  std::uint32_t at(std::uint64_t outcome, std::size_t coordinate) const { return table_[outcome * stride_ + coordinate]; }

 private:
  std::uint64_t radix_;
  std::uint64_t outcomes_;
  std::size_t stride_ = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> index_;  // name -> (offset, width)
  std::vector<std::uint32_t> table_;
};

// Number of outcomes a gruppen model would enumerate, |F|^D (saturating).
std::uint64_t gruppen_model_size(const Params& params);

// Variables s<i> (secret, width 1) and h<i> (share, width n-k) over all
// polynomials of degree < D. Refuses instances above kMaxOutcomes.
EnumeratedModel gruppen_model(const PointLayout& layout);

// The 2-out-of-3 pairwise-sum scheme: h1 = s3 + s2, h2 = s1 + s3, h3 = s2 + s1
// over uniform independent secrets (XOR in characteristic 2).
EnumeratedModel pairwise_sum_model(const FieldPtr& spec);

// Uniform vectors in GF(p)^dim with variable v<m> = <functionals[m], vector>.
EnumeratedModel linear_model(std::uint64_t p, std::size_t dim, const std::vector<ModRow>& functionals);

using VarSet = std::set<std::string>;

std::string to_string(const VarSet& vars);

struct EntropyReport {
  std::map<VarSet, double> f;  // bits

  double at(const VarSet& vars) const { return f.at(vars); }
  // Positivity, monotonicity and subadditivity over every queried pair;
  // returns a description of each violation (empty when all hold).
  std::vector<std::string> claim1_violations(double tolerance = 1e-9) const;
};

class EntropyOracle {
 public:
  explicit EntropyOracle(const EnumeratedModel& model) : model_(model) {}

  double entropy(const VarSet& vars);
  // H(targets | given) = H(targets, given) - H(given)
  double conditional(const VarSet& targets, const VarSet& given);
  EntropyReport report(const std::vector<VarSet>& queries);
  // Adds f(X u Y) for every queried pair so the subadditivity check is complete.
  EntropyReport closed_report(const std::vector<VarSet>& queries);

 private:
  const EnumeratedModel& model_;
  std::map<VarSet, double> cache_;
};

struct PerfectnessCase {
  unsigned target = 0;
  std::set<unsigned> coalition;
  double bits = 0;  // H(s_target | coalition data, all other secrets)
};

struct PerfectnessReport {
  double expected_bits = 0;  // log2 |F|
  std::vector<PerfectnessCase> cases;
  std::vector<PerfectnessCase> failures;
  bool passed() const { return failures.empty(); }
};

// Every coalition of at most k-1 participants, every target outside it.
PerfectnessReport verify_perfectness(const EnumeratedModel& model, unsigned n, unsigned k, double tolerance = 1e-9);

struct ShareBoundCheck {
  std::set<unsigned> group;
  unsigned outsider = 0;
  double lhs = 0;  // f(a) + f(j)
  double rhs = 0;  // f(a b-bar)
};

// f(a) + f(j) >= f(a b-bar) for every (k-1)-group G and every a outside G.
std::vector<ShareBoundCheck> share_bound_checks(EntropyOracle& oracle, unsigned n, unsigned k);

}  // namespace gruppen
