#ifndef X0P_FACTORS_HPP
#define X0P_FACTORS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Model of the isogeny decomposition of J_0(p) into simple newform factors,
// streaming enumeration of its 2^n abelian subvarieties, and the classifier
// that decides which subvarieties can arise as f^*(J(Y)) for a morphism
// f : X_0(p) -> Y to a curve of genus >= 2.

namespace x0p {

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct NewformFactor {
  std::string label;
  std::int64_t level = 0;
  std::int64_t dim = 0;
  int fricke = 0;  // +1: lies in J_0(p)^+, -1: in J_0(p)^-
  std::int64_t analytic_rank = 0;
};

// Complete factor list of one prime level, sorted by label.
struct FactorTable {
  std::int64_t level = 0;
  std::vector<NewformFactor> factors;

  std::int64_t total_dim() const;
  std::int64_t plus_dim() const;
  std::uint32_t plus_mask() const;
};

// Checks level consistency, label uniqueness, sum of dims = g_0(p), and
// (for p > 3 with positive genus) sum over the Fricke +1 part = g_0^+(p).
// The last check pins the sign convention of the data source.
void validate_factor_table(const FactorTable& table);

// One abelian subvariety A, encoded as a subset of the factor list.
struct SubvarietySelection {
  std::int64_t level = 0;
  std::uint32_t mask = 0;
  std::int64_t dim_total = 0;
  std::vector<std::string> members;  // sorted labels
  std::optional<std::int64_t> kernel_exponent;
};

// Streams all 2^n subsets in increasing bitmask order (bit i = i-th factor
// by label order), empty and full subsets included.
void for_each_selection(const FactorTable& table, const std::function<void(const SubvarietySelection&)>& fn);

// Kernel exponents exp(ker phi_A), keyed by (level, member label set).
class KernelExponentTable {
 public:
  void insert(std::int64_t level, std::vector<std::string> members, std::int64_t exponent);
  std::optional<std::int64_t> lookup(std::int64_t level, const std::vector<std::string>& members) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<std::int64_t, std::string>, std::int64_t> entries_;
};

// Levels known to have no new genus-2 quotient curve.
class Genus2QuotientTable {
 public:
  void set(std::int64_t level, bool has_genus2_new_quotient);
  std::optional<bool> lookup(std::int64_t level) const;

 private:
  std::map<std::int64_t, bool> entries_;
};

// True iff 2g - 2 < exp(ker phi_A) (2g' - 2): no curve Y with
// f^*(J(Y)) = A can exist, since deg f would violate Riemann-Hurwitz.
bool not_curve_criterion(std::int64_t g, std::int64_t g_prime, std::int64_t kernel_exponent);

// True iff exp(ker phi_A) divides the candidate degree.
bool divisibility_filter(std::int64_t deg_f, std::int64_t kernel_exponent);

// True iff 2g - 2 < 3(2g' - 2): Riemann-Hurwitz leaves only degree 2, so
// any morphism realizing the subvariety is an involution quotient.
bool forced_degree_two(std::int64_t g, std::int64_t g_prime);

enum class SubsetOutcome {
  RuledOutKernelBound,   // kernel exponent times Riemann-Hurwitz is violated
  RuledOutInvolution,    // degree forced to 2; the only involution is Fricke
  SurvivesQuotientMap,   // the Fricke +1 part: realized by X_0(p) -> X_0^+(p)
  RuledOutGenus2Table,   // dim 2 target would be a genus-2 curve; none exist
  NeedsKernelData,       // cannot decide without exp(ker phi_A)
};

const char* subset_outcome_name(SubsetOutcome o);

struct MorphismVerdict {
  SubvarietySelection selection;
  SubsetOutcome outcome;
  std::string detail;
};

// One row of the residual table: a dim-2 subvariety that survives the
// kernel-exponent test and is ruled out only by the genus-2 table.
struct ResidualRow {
  std::int64_t level;
  std::int64_t genus;
  std::int64_t genus_plus;
  std::int64_t dim;
  std::int64_t kernel_exponent;
  std::int64_t rh_degree_cap;  // floor((2g-2)/(2g'-2))
};

struct MorphismClassification {
  std::int64_t level = 0;
  std::int64_t genus = 0;
  bool only_quotient = false;  // every subset ruled out except the + part
  bool quotient_survives = false;
  std::vector<MorphismVerdict> verdicts;       // subsets with 2 <= dim < g
  std::vector<ResidualRow> residual;           // genus-2-table rows
  std::vector<SubvarietySelection> unresolved; // subsets needing exponents
};

// Classifies every proper subvariety of dimension >= 2. Empty, dim <= 1
// and full subsets are enumerated but carry no verdict: a morphism of
// degree > 1 onto a genus >= 2 curve can realize none of them.
MorphismClassification classify_morphisms(std::int64_t p, const FactorTable& table,
                                          const KernelExponentTable& exponents, const Genus2QuotientTable& genus2);

// True iff removing one largest-dimension factor from the Fricke +1 side
// and one from the -1 side leaves total dimension <= 2. Greedy removal is
// optimal because only one factor per sign may be removed.
bool satisfies_split_hypothesis(const FactorTable& table);

}  // namespace x0p

#endif
