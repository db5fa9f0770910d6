#include "x0p/factors.hpp"

#include <algorithm>
#include <sstream>

#include "x0p/arith.hpp"
#include "x0p/quadforms.hpp"

namespace x0p {

namespace {

std::string join_members(const std::vector<std::string>& members) {
  std::string key;
  for (const auto& m : members) {
    if (!key.empty()) key += '|';
    key += m;
  }
  return key;
}

}  // namespace

std::int64_t FactorTable::total_dim() const {
  std::int64_t s = 0;
  for (const auto& f : factors) s += f.dim;
  return s;
}

std::int64_t FactorTable::plus_dim() const {
  std::int64_t s = 0;
  for (const auto& f : factors) {
    if (f.fricke == +1) s += f.dim;
  }
  return s;
}

std::uint32_t FactorTable::plus_mask() const {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].fricke == +1) m |= (1u << i);
  }
  return m;
}

void validate_factor_table(const FactorTable& table) {
  if (!is_prime(static_cast<std::uint64_t>(table.level)))
    throw ValidationError("factor table level " + std::to_string(table.level) + " is not prime");
  std::set<std::string> labels;
  for (const auto& f : table.factors) {
    if (f.level != table.level)
      throw ValidationError("factor " + f.label + " has level " + std::to_string(f.level) + " in table for level " +
                            std::to_string(table.level));
    if (f.dim < 1) throw ValidationError("factor " + f.label + " has nonpositive dimension");
    if (f.fricke != 1 && f.fricke != -1) throw ValidationError("factor " + f.label + " has Fricke eigenvalue not +-1");
    if (f.analytic_rank < 0) throw ValidationError("factor " + f.label + " has negative analytic rank");
    if (!labels.insert(f.label).second) throw ValidationError("duplicate factor label " + f.label);
  }
  if (!std::is_sorted(table.factors.begin(), table.factors.end(),
                      [](const NewformFactor& a, const NewformFactor& b) { return a.label < b.label; }))
    throw ValidationError("factor table for level " + std::to_string(table.level) + " is not sorted by label");
  std::int64_t g = genus_x0(static_cast<std::uint64_t>(table.level));
  if (table.total_dim() != g)
    throw ValidationError("level " + std::to_string(table.level) + ": factor dimensions sum to " +
                          std::to_string(table.total_dim()) + ", genus is " + std::to_string(g));
  if (g > 0 && table.level > 3) {
    std::int64_t gp = genus_x0_plus(static_cast<std::uint64_t>(table.level));
    if (table.plus_dim() != gp)
      throw ValidationError("level " + std::to_string(table.level) + ": Fricke +1 dimensions sum to " +
                            std::to_string(table.plus_dim()) + ", quotient genus is " + std::to_string(gp) +
                            " (sign convention mismatch?)");
  }
}

void for_each_selection(const FactorTable& table, const std::function<void(const SubvarietySelection&)>& fn) {
  std::size_t n = table.factors.size();
  if (n > 30) throw std::invalid_argument("more than 30 factors is not supported");
  for (const auto& f : table.factors) {
    if (f.level != table.level) throw ValidationError("mixed levels in factor table");
  }
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    SubvarietySelection sel;
    sel.level = table.level;
    sel.mask = mask;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) {
        sel.dim_total += table.factors[i].dim;
        sel.members.push_back(table.factors[i].label);
      }
    }
    fn(sel);
  }
}

void KernelExponentTable::insert(std::int64_t level, std::vector<std::string> members, std::int64_t exponent) {
  if (exponent < 1) throw ValidationError("kernel exponent must be >= 1");
  std::sort(members.begin(), members.end());
  entries_[{level, join_members(members)}] = exponent;
}

std::optional<std::int64_t> KernelExponentTable::lookup(std::int64_t level,
                                                        const std::vector<std::string>& members) const {
  auto it = entries_.find({level, join_members(members)});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void Genus2QuotientTable::set(std::int64_t level, bool has_genus2_new_quotient) {
  entries_[level] = has_genus2_new_quotient;
}

std::optional<bool> Genus2QuotientTable::lookup(std::int64_t level) const {
  auto it = entries_.find(level);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool not_curve_criterion(std::int64_t g, std::int64_t g_prime, std::int64_t kernel_exponent) {
  if (g_prime < 2) throw std::invalid_argument("not_curve_criterion: dim must be >= 2");
  if (kernel_exponent < 1) throw std::invalid_argument("not_curve_criterion: exponent must be >= 1");
  return 2 * g - 2 < kernel_exponent * (2 * g_prime - 2);
}

bool divisibility_filter(std::int64_t deg_f, std::int64_t kernel_exponent) {
  if (deg_f < 1 || kernel_exponent < 1) throw std::invalid_argument("divisibility_filter: positive inputs required");
  return deg_f % kernel_exponent == 0;
}

bool forced_degree_two(std::int64_t g, std::int64_t g_prime) {
  if (g_prime < 2) throw std::invalid_argument("forced_degree_two: dim must be >= 2");
  return 2 * g - 2 < 3 * (2 * g_prime - 2);
}

const char* subset_outcome_name(SubsetOutcome o) {
  switch (o) {
    case SubsetOutcome::RuledOutKernelBound: return "ruled-out-kernel-bound";
    case SubsetOutcome::RuledOutInvolution: return "ruled-out-involution";
    case SubsetOutcome::SurvivesQuotientMap: return "survives-quotient-map";
    case SubsetOutcome::RuledOutGenus2Table: return "ruled-out-genus2-table";
    case SubsetOutcome::NeedsKernelData: return "needs-kernel-data";
  }
  return "?";
}

MorphismClassification classify_morphisms(std::int64_t p, const FactorTable& table,
                                          const KernelExponentTable& exponents, const Genus2QuotientTable& genus2) {
  validate_factor_table(table);
  if (table.level != p) throw std::invalid_argument("classify_morphisms: level mismatch");

  MorphismClassification out;
  out.level = p;
  out.genus = genus_x0(static_cast<std::uint64_t>(p));
  std::int64_t g = out.genus;
  std::int64_t gp = (g > 0 && p > 3) ? genus_x0_plus(static_cast<std::uint64_t>(p)) : 0;
  std::uint32_t plus = table.plus_mask();
  std::uint32_t full = (table.factors.empty()) ? 0 : ((1u << table.factors.size()) - 1u);

  for_each_selection(table, [&](const SubvarietySelection& sel) {
    // Subsets of dimension < 2 are not genus >= 2 targets; the full
    // Jacobian would force degree 1, excluded since deg f > 1.
    if (sel.dim_total < 2 || sel.mask == full) return;
    SubvarietySelection s = sel;
    s.kernel_exponent = exponents.lookup(p, s.members);
    MorphismVerdict v{s, SubsetOutcome::NeedsKernelData, ""};
    std::ostringstream detail;
    if (s.mask == plus) {
      v.outcome = SubsetOutcome::SurvivesQuotientMap;
      detail << "the Fricke-invariant part: realized exactly by the degree-2 quotient map onto the genus-" << gp
             << " curve X_0^+(" << p << ")";
    } else if (forced_degree_two(g, s.dim_total)) {
      v.outcome = SubsetOutcome::RuledOutInvolution;
      detail << "2g-2 = " << 2 * g - 2 << " < 3(2g'-2) = " << 3 * (2 * s.dim_total - 2)
             << " forces degree 2; the only involution quotient is X_0^+(" << p << "), whose Jacobian is the +1 part";
      if (p == 37) {
        // X_0(37) carries an extra involution, but all of its quotient
        // curves besides the line are elliptic, so no genus >= 2 target
        // appears either way.
        detail << "; level 37's extra involution only yields elliptic quotients";
      }
    } else if (s.kernel_exponent && not_curve_criterion(g, s.dim_total, *s.kernel_exponent)) {
      v.outcome = SubsetOutcome::RuledOutKernelBound;
      detail << "2g-2 = " << 2 * g - 2 << " < exp(ker phi_A)(2g'-2) = " << *s.kernel_exponent << "*"
             << 2 * s.dim_total - 2;
    } else if (s.dim_total == 2 && genus2.lookup(p) == std::optional<bool>(false)) {
      v.outcome = SubsetOutcome::RuledOutGenus2Table;
      detail << "target would be a genus-2 curve; level " << p << " has no new genus-2 quotient";
      if (s.kernel_exponent) {
        out.residual.push_back(
            ResidualRow{p, g, gp, s.dim_total, *s.kernel_exponent, (2 * g - 2) / (2 * s.dim_total - 2)});
      }
    } else {
      v.outcome = SubsetOutcome::NeedsKernelData;
      detail << "undecided without exp(ker phi_A)";
      out.unresolved.push_back(s);
    }
    v.detail = detail.str();
    out.verdicts.push_back(std::move(v));
  });

  bool survivor_seen = false;
  bool all_resolved = true;
  for (const auto& v : out.verdicts) {
    if (v.outcome == SubsetOutcome::SurvivesQuotientMap) survivor_seen = true;
    if (v.outcome == SubsetOutcome::NeedsKernelData) all_resolved = false;
  }
  out.quotient_survives = survivor_seen;
  out.only_quotient = all_resolved;
  return out;
}

bool satisfies_split_hypothesis(const FactorTable& table) {
  std::int64_t total = 0, best_plus = 0, best_minus = 0;
  for (const auto& f : table.factors) {
    total += f.dim;
    if (f.fricke == +1) best_plus = std::max(best_plus, f.dim);
    if (f.fricke == -1) best_minus = std::max(best_minus, f.dim);
  }
  return total - best_plus - best_minus <= 2;
}

}  // namespace x0p
