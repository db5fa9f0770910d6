#ifndef X0P_DENSITY_HPP
#define X0P_DENSITY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "x0p/factors.hpp"

// The degree-6 point classifier: constructive infinitude witnesses first,
// then the finiteness gates (Ogg count, Kadets-Vogt genus gate, rank
// filter, Debarre-Fahlaoui minimality, imported certificates).

namespace x0p {

struct GonalityBounds {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

struct EllipticCurveRecord {
  std::int64_t conductor = 0;
  std::int64_t rank = 0;
  std::int64_t modular_degree = 0;
  std::string label;
};

// Declares the slice of the curve database the bundle contains completely:
// every curve with conductor in [cond_min, cond_max], rank >= rank_min and
// modular degree <= degree_max is present. Queries outside every window
// are unanswerable, never silently empty.
struct EllipticCoverage {
  std::int64_t cond_min = 0;
  std::int64_t cond_max = 0;
  std::int64_t rank_min = 0;
  std::int64_t degree_max = 0;
};

struct CertificateRecord {
  std::int64_t level = 0;
  std::string statement_id;
  std::string source;
};

struct ExternalFacts {
  std::map<std::int64_t, GonalityBounds> gonality;
  std::map<std::int64_t, bool> plus_cubic_infinite;
  std::vector<EllipticCurveRecord> elliptic_curves;
  std::vector<EllipticCoverage> elliptic_coverage;
  std::vector<CertificateRecord> certificates;
  std::map<std::pair<std::int64_t, int>, bool> known_density;  // (level, degree <= 5)

  std::optional<bool> known(std::int64_t level, int degree) const;
  std::optional<std::vector<EllipticCurveRecord>> query_elliptic(std::int64_t conductor, std::int64_t rank_min,
                                                                 std::int64_t degree_max) const;
  std::optional<const CertificateRecord*> find_certificate(std::int64_t level, const std::string& statement_id) const;
};

// Everything the classifiers consume, loaded once and immutable.
struct FactsBundle {
  ExternalFacts facts;
  std::map<std::int64_t, FactorTable> factor_tables;
  KernelExponentTable kernel_exponents;
  Genus2QuotientTable genus2;
};

enum class RuleId {
  KnownTable,
  GonalityDivides,
  PlusQuotientElliptic,
  PlusCubicPullback,
  OggThreshold,
  KVGate,
  RankFilter,
  DFMinimality,
  Certificate,
};

const char* rule_id_name(RuleId id);

struct EvidenceItem {
  RuleId rule;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string basis;  // the imported result the rule rests on
};

enum class Density { Infinite, Finite, Unknown };

const char* density_name(Density d);

struct DensityVerdict {
  std::int64_t level = 0;
  int degree = 0;
  Density status = Density::Unknown;
  std::vector<EvidenceItem> evidence;
  std::vector<std::string> missing_facts;
};

// Kadets-Vogt thresholds: m = ceil(d/2) - 1, epsilon = 3d - 1 - 6m, and the
// genus bound max(d(d-1)/2 + 1, 3m(m-1) + m epsilon). A curve of genus
// strictly above the bound must admit a degree >= 2 map explaining its
// density degree.
struct KvThresholds {
  std::int64_t m;
  std::int64_t epsilon;
  std::int64_t genus_bound;
};

KvThresholds kv_thresholds(std::int64_t d);

// False once 6d(d-1) + 23 > 120d - 24: the Ogg threshold already covers
// every level the genus gate could reach.
bool kv_applicable(std::int64_t d);

// Genus bound (d-1)(d-2)/2 + 2 from the minimality dichotomy.
std::int64_t df_genus_bound(std::int64_t d);

// Positive-rank abelian subvarieties of W_d^0 have dimension <= d/2.
std::int64_t rank_filter_dim_cap(std::int64_t d);

enum class GenusTwoTargets { OnlyQuotient, NoneExists };

struct SmallMapsOutcome {
  std::optional<GenusTwoTargets> value;
  std::vector<std::string> missing;
};

// Degree-d points from genus >= 2 targets, d <= 25: below 3000 the
// morphism classifier leaves only the quotient map; at or above 3000 the
// Ogg threshold leaves nothing.
SmallMapsOutcome small_degree_maps(std::int64_t p, std::int64_t d, const FactsBundle& bundle);

// Same question one level up: X_0^+(p) admits no map to a genus >= 2
// curve at all, for d <= 12.
GenusTwoTargets plus_small_degree_maps(std::int64_t p, std::int64_t d);

// First applicable degree-6 infinitude witness, if any:
//   (a) a gonality upper bound dividing 6 (compose with a power map),
//   (b) an elliptic quotient X_0^+(p) (degree 2*3 composition),
//   (c) covered by (a) with the bound equal to 6,
//   (d) infinitely many cubic points on X_0^+(p) pulling back to degree 6.
struct WitnessOutcome {
  std::optional<EvidenceItem> evidence;
  std::vector<std::string> missing;
};

WitnessOutcome infinitude_witness(std::int64_t p, const ExternalFacts& facts);

// The finiteness gates; each fires, declines, or reports missing facts.
WitnessOutcome finiteness_by_kv_deg6(std::int64_t p, const FactsBundle& bundle);
WitnessOutcome finiteness_by_rank_filter(std::int64_t p, const FactsBundle& bundle);
WitnessOutcome finiteness_by_df_minimality(std::int64_t p, const FactsBundle& bundle);
WitnessOutcome finiteness_by_certificate(std::int64_t p, const FactsBundle& bundle);

// Full cascade for degree 6. Never throws: gaps surface as Unknown with
// the missing facts listed.
DensityVerdict classify_degree6(std::int64_t p, const FactsBundle& bundle);

// Degrees 1..5 answer from the bundled classification tables; degree 6
// runs the cascade; degree >= 7 is refused (the required gonality data,
// starting at level 163, does not exist).
DensityVerdict classify_degree(std::int64_t p, int degree, const FactsBundle& bundle);

// The built-in degree-6 classification: infinitely many degree-6 points
// exactly at p <= 151 and the eight listed larger primes.
bool degree6_infinite_expected(std::int64_t p);

}  // namespace x0p

#endif
