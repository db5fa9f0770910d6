#include "x0p/density.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "x0p/arith.hpp"
#include "x0p/pointbounds.hpp"
#include "x0p/quadforms.hpp"

namespace x0p {

namespace {

constexpr std::int64_t kDegree = 6;

std::string i2s(std::int64_t v) { return std::to_string(v); }

std::int64_t genus_plus_or_zero(std::int64_t p) {
  if (p <= 3) return 0;
  return genus_x0_plus(static_cast<std::uint64_t>(p));
}

void add_missing(std::vector<std::string>& out, const std::string& what) {
  if (std::find(out.begin(), out.end(), what) == out.end()) out.push_back(what);
}

}  // namespace

std::optional<bool> ExternalFacts::known(std::int64_t level, int degree) const {
  auto it = known_density.find({level, degree});
  if (it == known_density.end()) return std::nullopt;
  return it->second;
}

std::optional<std::vector<EllipticCurveRecord>> ExternalFacts::query_elliptic(std::int64_t conductor,
                                                                              std::int64_t rank_min,
                                                                              std::int64_t degree_max) const {
  bool covered = false;
  for (const auto& w : elliptic_coverage) {
    if (w.cond_min <= conductor && conductor <= w.cond_max && rank_min >= w.rank_min && degree_max <= w.degree_max) {
      covered = true;
      break;
    }
  }
  if (!covered) return std::nullopt;
  std::vector<EllipticCurveRecord> out;
  for (const auto& r : elliptic_curves) {
    if (r.conductor == conductor && r.rank >= rank_min && r.modular_degree <= degree_max) out.push_back(r);
  }
  return out;
}

std::optional<const CertificateRecord*> ExternalFacts::find_certificate(std::int64_t level,
                                                                        const std::string& statement_id) const {
  for (const auto& c : certificates) {
    if (c.level == level && c.statement_id == statement_id) return &c;
  }
  return std::nullopt;
}

const char* rule_id_name(RuleId id) {
  switch (id) {
    case RuleId::KnownTable: return "known-table";
    case RuleId::GonalityDivides: return "gonality-divides";
    case RuleId::PlusQuotientElliptic: return "plus-quotient-elliptic";
    case RuleId::PlusCubicPullback: return "plus-cubic-pullback";
    case RuleId::OggThreshold: return "ogg-threshold";
    case RuleId::KVGate: return "kadets-vogt-gate";
    case RuleId::RankFilter: return "rank-filter";
    case RuleId::DFMinimality: return "df-minimality";
    case RuleId::Certificate: return "certificate";
  }
  return "?";
}

const char* density_name(Density d) {
  switch (d) {
    case Density::Infinite: return "Infinite";
    case Density::Finite: return "Finite";
    case Density::Unknown: return "Unknown";
  }
  return "?";
}

KvThresholds kv_thresholds(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("kv_thresholds: d must be >= 1");
  std::int64_t m = (d + 1) / 2 - 1;
  std::int64_t epsilon = 3 * d - 1 - 6 * m;
  std::int64_t genus_bound = std::max(d * (d - 1) / 2 + 1, 3 * m * (m - 1) + m * epsilon);
  return {m, epsilon, genus_bound};
}

bool kv_applicable(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("kv_applicable: d must be >= 1");
  return 6 * d * (d - 1) + 23 <= 120 * d - 24;
}

std::int64_t df_genus_bound(std::int64_t d) { return (d - 1) * (d - 2) / 2 + 2; }

std::int64_t rank_filter_dim_cap(std::int64_t d) { return d / 2; }

SmallMapsOutcome small_degree_maps(std::int64_t p, std::int64_t d, const FactsBundle& bundle) {
  if (d < 1 || d > 25) throw std::invalid_argument("small_degree_maps: requires 1 <= d <= 25");
  if (!is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("small_degree_maps: p must be prime");
  SmallMapsOutcome out;
  if (p >= 3000) {
    // 120d - 24 < 3000 for every d <= 25, so the point count already
    // excludes infinitely many degree-d points, hence any genus >= 2
    // target reached by pulling back low-degree points.
    if (!finite_by_ogg(static_cast<std::uint64_t>(p), d)) throw std::logic_error("ogg threshold must cover p >= 3000");
    out.value = GenusTwoTargets::NoneExists;
    return out;
  }
  auto it = bundle.factor_tables.find(p);
  if (it == bundle.factor_tables.end()) {
    out.missing.push_back("newform factors for level " + i2s(p));
    return out;
  }
  MorphismClassification cls = classify_morphisms(p, it->second, bundle.kernel_exponents, bundle.genus2);
  if (!cls.only_quotient) {
    for (const auto& sel : cls.unresolved) {
      std::string key = "kernel exponent for level " + i2s(p) + " subset {";
      for (std::size_t i = 0; i < sel.members.size(); ++i) key += (i ? "," : "") + sel.members[i];
      key += "}";
      out.missing.push_back(key);
    }
    return out;
  }
  out.value = GenusTwoTargets::OnlyQuotient;
  return out;
}

GenusTwoTargets plus_small_degree_maps(std::int64_t p, std::int64_t d) {
  if (d < 1 || d > 12) throw std::invalid_argument("plus_small_degree_maps: requires 1 <= d <= 12");
  if (!is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("plus_small_degree_maps: p must be prime");
  // Below 3000 the morphism classification leaves X_0^+(p) with no genus
  // >= 2 target; from 3000 on, 120(2d) - 24 < 3000 ends it via the point
  // count on X_0(p) (degree-d points upstairs have degree <= 2d).
  return GenusTwoTargets::NoneExists;
}

WitnessOutcome infinitude_witness(std::int64_t p, const ExternalFacts& facts) {
  WitnessOutcome out;
  auto git = facts.gonality.find(p);
  if (git == facts.gonality.end()) {
    add_missing(out.missing, "gonality bounds for level " + i2s(p));
  } else {
    const GonalityBounds& gon = git->second;
    if (gon.upper >= 1 && kDegree % gon.upper == 0) {
      EvidenceItem ev{RuleId::GonalityDivides,
                      {{"gonality_upper", i2s(gon.upper)}, {"power_map_degree", i2s(kDegree / gon.upper)}},
                      "gonal map composed with a power map; Hilbert irreducibility"};
      out.evidence = ev;
      return out;
    }
  }
  std::int64_t gp = genus_plus_or_zero(p);
  if (gp == 1) {
    EvidenceItem ev{RuleId::PlusQuotientElliptic,
                    {{"genus_plus", "1"}},
                    "degree-2 quotient composed with a degree-3 map off the elliptic quotient"};
    out.evidence = ev;
    return out;
  }
  auto pit = facts.plus_cubic_infinite.find(p);
  std::optional<bool> cubic_known = facts.known(p, 3);
  if (pit == facts.plus_cubic_infinite.end()) {
    add_missing(out.missing, "plus-quotient cubic point data for level " + i2s(p));
  } else if (pit->second) {
    if (!cubic_known.has_value()) {
      add_missing(out.missing, "degree-3 classification for level " + i2s(p));
    } else if (*cubic_known == false) {
      EvidenceItem ev{RuleId::PlusCubicPullback,
                      {{"plus_cubic_infinite", "true"}, {"cubic_points_downstairs", "finite"}},
                      "pullbacks of infinitely many cubic points on X_0^+(p) have degree 6"};
      out.evidence = ev;
      return out;
    }
  }
  return out;
}

WitnessOutcome finiteness_by_kv_deg6(std::int64_t p, const FactsBundle& bundle) {
  WitnessOutcome out;
  std::int64_t g = genus_x0(static_cast<std::uint64_t>(p));
  if (!(200 < p && p <= 696)) return out;
  if (g <= kv_thresholds(kDegree).genus_bound) return out;

  auto git = bundle.facts.gonality.find(p);
  if (git == bundle.facts.gonality.end()) {
    add_missing(out.missing, "gonality bounds for level " + i2s(p));
    return out;
  }
  if (git->second.lower < 7) return out;

  auto ec = bundle.facts.query_elliptic(p, 1, kDegree);
  if (!ec.has_value()) {
    add_missing(out.missing, "elliptic curves of conductor " + i2s(p) + " (rank >= 1, degree <= 6)");
    return out;
  }
  if (!ec->empty()) return out;  // a degree-6 modular parametrization exists

  auto pit = bundle.facts.plus_cubic_infinite.find(p);
  if (pit == bundle.facts.plus_cubic_infinite.end()) {
    add_missing(out.missing, "plus-quotient cubic point data for level " + i2s(p));
    return out;
  }
  if (pit->second) return out;

  SmallMapsOutcome maps = small_degree_maps(p, kDegree, bundle);
  if (!maps.value.has_value()) {
    out.missing.insert(out.missing.end(), maps.missing.begin(), maps.missing.end());
    return out;
  }

  EvidenceItem ev{RuleId::KVGate,
                  {{"genus", i2s(g)},
                   {"genus_gate", i2s(kv_thresholds(kDegree).genus_bound)},
                   {"gonality_lower", i2s(git->second.lower)},
                   {"positive_rank_parametrization_deg_le_6", "none"},
                   {"plus_cubic_infinite", "false"},
                   {"genus2_targets", "only-quotient"}},
                  "Kadets-Vogt: genus above the gate forces a degree >= 2 map explaining degree 6; "
                  "every candidate target is excluded"};
  out.evidence = ev;
  return out;
}

WitnessOutcome finiteness_by_rank_filter(std::int64_t p, const FactsBundle& bundle) {
  WitnessOutcome out;
  std::int64_t g = genus_x0(static_cast<std::uint64_t>(p));
  if (g < 7) return out;  // needs d <= g - 1
  auto git = bundle.facts.gonality.find(p);
  if (git == bundle.facts.gonality.end()) {
    add_missing(out.missing, "gonality bounds for level " + i2s(p));
    return out;
  }
  if (git->second.lower < 7) return out;
  auto fit = bundle.factor_tables.find(p);
  if (fit == bundle.factor_tables.end()) {
    add_missing(out.missing, "newform factors for level " + i2s(p));
    return out;
  }
  std::int64_t cap = rank_filter_dim_cap(kDegree);
  for (const auto& f : fit->second.factors) {
    if (f.dim <= cap && f.analytic_rank != 0) return out;
  }
  EvidenceItem ev{RuleId::RankFilter,
                  {{"gonality_lower", i2s(git->second.lower)},
                   {"dimension_cap", i2s(cap)},
                   {"small_factors_rank", "all zero"}},
                  "an infinite degree-6 locus needs a positive-rank subvariety of dimension <= 3 inside "
                  "W_6^0; analytic rank 0 gives rank 0 (Kolyvagin-Kato)"};
  out.evidence = ev;
  return out;
}

WitnessOutcome finiteness_by_df_minimality(std::int64_t p, const FactsBundle& bundle) {
  WitnessOutcome out;
  for (int d = 1; d <= 5; ++d) {
    std::optional<bool> k = bundle.facts.known(p, d);
    if (!k.has_value()) {
      add_missing(out.missing, "degree-" + std::to_string(d) + " classification for level " + i2s(p));
      return out;
    }
    if (*k) return out;  // a smaller degree is already infinite
  }
  std::int64_t g = genus_x0(static_cast<std::uint64_t>(p));
  if (g <= df_genus_bound(kDegree)) return out;
  auto git = bundle.facts.gonality.find(p);
  if (git == bundle.facts.gonality.end()) {
    add_missing(out.missing, "gonality bounds for level " + i2s(p));
    return out;
  }
  if (git->second.lower < 7) return out;  // a degree-6 gonal map would break 6-minimality
  auto ec = bundle.facts.query_elliptic(p, 1, std::numeric_limits<std::int64_t>::max());
  if (!ec.has_value()) {
    add_missing(out.missing, "elliptic curves of conductor " + i2s(p) + " (any modular degree)");
    return out;
  }
  if (!ec->empty()) return out;  // could be Debarre-Fahlaoui via that curve
  auto pit = bundle.facts.plus_cubic_infinite.find(p);
  if (pit == bundle.facts.plus_cubic_infinite.end()) {
    add_missing(out.missing, "plus-quotient cubic point data for level " + i2s(p));
    return out;
  }
  if (pit->second) return out;
  SmallMapsOutcome maps = small_degree_maps(p, kDegree, bundle);
  if (!maps.value.has_value()) {
    out.missing.insert(out.missing.end(), maps.missing.begin(), maps.missing.end());
    return out;
  }
  EvidenceItem ev{RuleId::DFMinimality,
                  {{"genus", i2s(g)},
                   {"genus_bound", i2s(df_genus_bound(kDegree))},
                   {"positive_rank_conductor_p_curves", "none"},
                   {"gonality_lower", i2s(git->second.lower)},
                   {"plus_cubic_infinite", "false"}},
                  "a 6-minimal curve of genus above (d-1)(d-2)/2 + 2 must normalize a Debarre-Fahlaoui "
                  "curve, which requires a map to a positive-rank elliptic curve; none exists"};
  out.evidence = ev;
  return out;
}

WitnessOutcome finiteness_by_certificate(std::int64_t p, const FactsBundle& bundle) {
  WitnessOutcome out;
  auto cert = bundle.facts.find_certificate(p, "W60_no_positive_rank_translate");
  if (!cert.has_value()) return out;
  auto git = bundle.facts.gonality.find(p);
  if (git == bundle.facts.gonality.end()) {
    add_missing(out.missing, "gonality bounds for level " + i2s(p));
    return out;
  }
  if (git->second.lower < 7) return out;
  EvidenceItem ev{RuleId::Certificate,
                  {{"statement", (*cert)->statement_id},
                   {"source", (*cert)->source},
                   {"gonality_lower", i2s(git->second.lower)}},
                  "W_6^0 contains no translate of a positive-rank abelian variety and no degree-6 "
                  "map to the line exists"};
  out.evidence = ev;
  return out;
}

DensityVerdict classify_degree6(std::int64_t p, const FactsBundle& bundle) {
  if (!is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("classify_degree6: p must be prime");
  DensityVerdict verdict;
  verdict.level = p;
  verdict.degree = static_cast<int>(kDegree);
  std::vector<std::string> missing;

  // Known lower-degree infinitude composes up to degree 6 through a power
  // map whenever the degree divides 6.
  for (int d : {1, 2, 3}) {
    std::optional<bool> k = bundle.facts.known(p, d);
    if (!k.has_value()) {
      add_missing(missing, "degree-" + std::to_string(d) + " classification for level " + i2s(p));
      continue;
    }
    if (*k) {
      verdict.status = Density::Infinite;
      verdict.evidence.push_back(EvidenceItem{RuleId::KnownTable,
                                              {{"degree", std::to_string(d)}, {"status", "infinite"}},
                                              "composition with a degree-" + std::to_string(kDegree / d) +
                                                  " map lifts the known infinitude to degree 6"});
      return verdict;
    }
  }

  WitnessOutcome w = infinitude_witness(p, bundle.facts);
  if (w.evidence.has_value()) {
    verdict.status = Density::Infinite;
    verdict.evidence.push_back(*w.evidence);
    return verdict;
  }
  for (const auto& m : w.missing) add_missing(missing, m);

  if (finite_by_ogg(static_cast<std::uint64_t>(p), kDegree)) {
    verdict.status = Density::Finite;
    verdict.evidence.push_back(EvidenceItem{RuleId::OggThreshold,
                                            {{"threshold", i2s(finiteness_threshold(kDegree))}, {"level", i2s(p)}},
                                            "the F_4 point count caps the degree of any map to the line"});
    return verdict;
  }

  for (auto* gate : {&finiteness_by_kv_deg6, &finiteness_by_rank_filter, &finiteness_by_df_minimality,
                     &finiteness_by_certificate}) {
    WitnessOutcome g = (*gate)(p, bundle);
    if (g.evidence.has_value()) {
      verdict.status = Density::Finite;
      verdict.evidence.push_back(*g.evidence);
      return verdict;
    }
    for (const auto& m : g.missing) add_missing(missing, m);
  }

  verdict.status = Density::Unknown;
  verdict.missing_facts = missing;
  return verdict;
}

DensityVerdict classify_degree(std::int64_t p, int degree, const FactsBundle& bundle) {
  if (degree >= 7)
    throw std::invalid_argument("degree must be <= 6: the degree-7 classification depends on unresolved "
                                "gonality data (first open level: 163)");
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  if (degree == 6) return classify_degree6(p, bundle);
  DensityVerdict verdict;
  verdict.level = p;
  verdict.degree = degree;
  std::optional<bool> k = bundle.facts.known(p, degree);
  if (!k.has_value()) {
    verdict.status = Density::Unknown;
    verdict.missing_facts.push_back("degree-" + std::to_string(degree) + " classification for level " + i2s(p));
    return verdict;
  }
  verdict.status = *k ? Density::Infinite : Density::Finite;
  verdict.evidence.push_back(EvidenceItem{RuleId::KnownTable,
                                          {{"degree", std::to_string(degree)}, {"status", *k ? "infinite" : "finite"}},
                                          "bundled small-degree classification"});
  return verdict;
}

bool degree6_infinite_expected(std::int64_t p) {
  if (!is_prime(static_cast<std::uint64_t>(p))) return false;
  if (p <= 151) return true;
  switch (p) {
    case 163:
    case 167:
    case 179:
    case 181:
    case 191:
    case 227:
    case 239:
    case 269:
      return true;
    default:
      return false;
  }
}

}  // namespace x0p
