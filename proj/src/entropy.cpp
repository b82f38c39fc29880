#include "gruppen/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "gruppen/error.hpp"
#include "gruppen/knowledge.hpp"

namespace gruppen {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (out > EnumeratedModel::kMaxOutcomes * 16 / std::max<std::uint64_t>(base, 1)) return UINT64_MAX;
    out *= base;
  }
  return out;
}

void require_size(std::uint64_t outcomes, const std::string& what) {
  if (outcomes > EnumeratedModel::kMaxOutcomes)
    throw UsageError(what + " needs " + (outcomes == UINT64_MAX ? std::string("more than 3.2e8") : std::to_string(outcomes)) +
                     " outcomes; the enumeration limit is " + std::to_string(EnumeratedModel::kMaxOutcomes));
}

// Decodes outcome index into base-radix digits (least significant first).
void digits_of(std::uint64_t outcome, std::uint64_t radix, std::vector<std::uint64_t>& out) {
  for (auto& d : out) {
    d = outcome % radix;
    outcome /= radix;
  }
}

std::uint64_t field_order_small(const FieldSpec& spec) {
  if (spec.bit_length() > 31) throw UsageError("field too large for enumeration");
  return static_cast<std::uint64_t>(spec.max_repr()) + 1;
}

}  // namespace

EnumeratedModel::EnumeratedModel(std::uint64_t radix, std::uint64_t outcomes) : radix_(radix), outcomes_(outcomes) {
  if (radix_ < 2) throw UsageError("model radix must be at least 2");
  require_size(outcomes_, "enumeration");
}

std::size_t EnumeratedModel::add_variable(std::string name, std::size_t width) {
  if (!table_.empty()) throw UsageError("variables must be declared before tabulation");
  if (!index_.emplace(std::move(name), std::make_pair(stride_, width)).second)
    throw UsageError("duplicate model variable");
  stride_ += width;
  return index_.size() - 1;
}

std::size_t EnumeratedModel::offset(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UsageError("unknown model variable '" + name + "'");
  return it->second.first;
}

std::size_t EnumeratedModel::width(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UsageError("unknown model variable '" + name + "'");
  return it->second.second;
}

std::uint64_t gruppen_model_size(const Params& params) {
  return saturating_pow(field_order_small(*params.spec()), params.degree_bound());
}

EnumeratedModel gruppen_model(const PointLayout& layout) {
  const Params& params = layout.params();
  const FieldSpec& spec = *params.spec();
  const std::uint64_t q = field_order_small(spec);
  const std::uint64_t outcomes = gruppen_model_size(params);
  require_size(outcomes, "gruppen model over " + spec.describe() + " with D=" + std::to_string(params.degree_bound()));

  EnumeratedModel model(q, outcomes);
  for (unsigned i = 1; i <= params.n(); ++i) model.add_variable("s" + std::to_string(i), 1);
  for (unsigned i = 1; i <= params.n(); ++i) model.add_variable("h" + std::to_string(i), params.share_size());

  // Powers of every layout point, in table column order.
  const std::size_t d = params.degree_bound();
  std::vector<std::vector<Repr>> powers;
  for (unsigned i = 1; i <= params.n(); ++i)
    powers.push_back([&] {
      std::vector<Repr> row(d);
      Repr pw = 1;
      for (std::size_t c = 0; c < d; ++c, pw = spec.mul(pw, layout.point(i, 0).value())) row[c] = pw;
      return row;
    }());
  for (unsigned i = 1; i <= params.n(); ++i)
    for (unsigned j = 1; j < params.slots(); ++j) {
      std::vector<Repr> row(d);
      Repr pw = 1;
      for (std::size_t c = 0; c < d; ++c, pw = spec.mul(pw, layout.point(i, j).value())) row[c] = pw;
      powers.push_back(std::move(row));
    }

  std::vector<std::uint64_t> coeffs(d);
  model.tabulate([&](std::uint64_t o, std::uint32_t* row) {
    digits_of(o, q, coeffs);
    for (std::size_t col = 0; col < powers.size(); ++col) {
      Repr acc = 0;
      for (std::size_t c = 0; c < d; ++c) acc = spec.add(acc, spec.mul(powers[col][c], coeffs[c]));
      row[col] = static_cast<std::uint32_t>(acc);
    }
  });
  return model;
}

EnumeratedModel pairwise_sum_model(const FieldPtr& spec) {
  const std::uint64_t q = field_order_small(*spec);
  EnumeratedModel model(q, saturating_pow(q, 3));
  for (int i = 1; i <= 3; ++i) model.add_variable("s" + std::to_string(i), 1);
  for (int i = 1; i <= 3; ++i) model.add_variable("h" + std::to_string(i), 1);
  std::vector<std::uint64_t> s(3);
  model.tabulate([&](std::uint64_t o, std::uint32_t* row) {
    digits_of(o, q, s);
    for (int i = 0; i < 3; ++i) row[i] = static_cast<std::uint32_t>(s[i]);
    // Each participant holds the sum of the other two secrets.
    row[3] = static_cast<std::uint32_t>(spec->add(s[2], s[1]));
    row[4] = static_cast<std::uint32_t>(spec->add(s[0], s[2]));
    row[5] = static_cast<std::uint32_t>(spec->add(s[1], s[0]));
  });
  return model;
}

EnumeratedModel linear_model(std::uint64_t p, std::size_t dim, const std::vector<ModRow>& functionals) {
  EnumeratedModel model(p, saturating_pow(p, dim));
  for (std::size_t m = 0; m < functionals.size(); ++m) {
    if (functionals[m].size() != dim) throw UsageError("functional length must equal the space dimension");
    model.add_variable("v" + std::to_string(m), 1);
  }
  std::vector<std::uint64_t> x(dim);
  model.tabulate([&](std::uint64_t o, std::uint32_t* row) {
    digits_of(o, p, x);
    for (std::size_t m = 0; m < functionals.size(); ++m) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < dim; ++c) acc = (acc + functionals[m][c] % p * x[c]) % p;
      row[m] = static_cast<std::uint32_t>(acc);
    }
  });
  return model;
}

std::string to_string(const VarSet& vars) {
  std::string out = "{";
  for (const auto& v : vars) out += (out.size() > 1 ? "," : "") + v;
  return out + "}";
}

double EntropyOracle::entropy(const VarSet& vars) {
  if (auto it = cache_.find(vars); it != cache_.end()) return it->second;
  std::vector<std::size_t> coords;
  for (const auto& name : vars) {
    const std::size_t off = model_.offset(name);
    for (std::size_t w = 0; w < model_.width(name); ++w) coords.push_back(off + w);
  }
  // Keys are base-radix numbers; check they fit in 128 bits.
  double key_bits = static_cast<double>(coords.size()) * std::log2(static_cast<double>(model_.radix()));
  if (key_bits > 127.0) throw UsageError("too many coordinates in one entropy query");

  const std::uint64_t n = model_.outcomes();
  std::vector<Repr> keys(n);
  for (std::uint64_t o = 0; o < n; ++o) {
    Repr key = 0;
    for (auto c : coords) key = key * model_.radix() + model_.at(o, c);
    keys[o] = key;
  }
  std::sort(keys.begin(), keys.end());
  // H = log2 N - (1/N) sum c log2 c, from exact counts.
  double weighted = 0;
  for (std::uint64_t i = 0; i < n;) {
    std::uint64_t j = i;
    while (j < n && keys[j] == keys[i]) ++j;
    const double c = static_cast<double>(j - i);
    weighted += c * std::log2(c);
    i = j;
  }
  const double h = std::log2(static_cast<double>(n)) - weighted / static_cast<double>(n);
  const double clean = std::abs(h) < 1e-12 ? 0.0 : h;
  cache_.emplace(vars, clean);
  return clean;
}

double EntropyOracle::conditional(const VarSet& targets, const VarSet& given) {
  VarSet all = given;
  all.insert(targets.begin(), targets.end());
  return entropy(all) - entropy(given);
}

EntropyReport EntropyOracle::report(const std::vector<VarSet>& queries) {
  EntropyReport out;
  for (const auto& q : queries) out.f[q] = entropy(q);
  return out;
}

EntropyReport EntropyOracle::closed_report(const std::vector<VarSet>& queries) {
  std::vector<VarSet> all = queries;
  for (std::size_t a = 0; a < queries.size(); ++a)
    for (std::size_t b = a + 1; b < queries.size(); ++b) {
      VarSet u = queries[a];
      u.insert(queries[b].begin(), queries[b].end());
      all.push_back(std::move(u));
    }
  return report(all);
}

std::vector<std::string> EntropyReport::claim1_violations(double tolerance) const {
  std::vector<std::string> out;
  for (const auto& [x, fx] : f) {
    if (fx < -tolerance) out.push_back("positivity fails at " + to_string(x));
    for (const auto& [y, fy] : f) {
      if (std::includes(y.begin(), y.end(), x.begin(), x.end()) && fx > fy + tolerance)
        out.push_back("monotonicity fails for " + to_string(x) + " in " + to_string(y));
      VarSet u = x;
      u.insert(y.begin(), y.end());
      if (auto it = f.find(u); it != f.end() && fx + fy < it->second - tolerance)
        out.push_back("subadditivity fails for " + to_string(x) + ", " + to_string(y));
    }
  }
  return out;
}

PerfectnessReport verify_perfectness(const EnumeratedModel& model, unsigned n, unsigned k, double tolerance) {
  EntropyOracle oracle(model);
  PerfectnessReport report;
  report.expected_bits = std::log2(static_cast<double>(model.radix()));
  std::vector<unsigned> everyone(n);
  for (unsigned i = 0; i < n; ++i) everyone[i] = i + 1;
  for (unsigned target = 1; target <= n; ++target) {
    std::vector<unsigned> others;
    for (unsigned i : everyone)
      if (i != target) others.push_back(i);
    for (const auto& coalition : subsets_between(others, 0, k - 1)) {
      VarSet given;
      for (unsigned j : others) given.insert("s" + std::to_string(j));
      for (unsigned b : coalition) given.insert("h" + std::to_string(b));
      PerfectnessCase c{target, coalition, oracle.conditional({"s" + std::to_string(target)}, given)};
      if (std::abs(c.bits - report.expected_bits) > tolerance) report.failures.push_back(c);
      report.cases.push_back(std::move(c));
    }
  }
  return report;
}

std::vector<ShareBoundCheck> share_bound_checks(EntropyOracle& oracle, unsigned n, unsigned k) {
  std::vector<unsigned> everyone(n);
  for (unsigned i = 0; i < n; ++i) everyone[i] = i + 1;
  std::vector<ShareBoundCheck> out;
  for (const auto& group : subsets_between(everyone, k - 1, k - 1)) {
    for (unsigned a : everyone) {
      if (group.contains(a)) continue;
      VarSet ab{"s" + std::to_string(a)};
      for (unsigned b : everyone)
        if (b != a && !group.contains(b)) ab.insert("s" + std::to_string(b));
      const double lhs = oracle.entropy({"s" + std::to_string(a)}) + oracle.entropy({"h" + std::to_string(a)});
      out.push_back({group, a, lhs, oracle.entropy(ab)});
    }
  }
  return out;
}

}  // namespace gruppen
