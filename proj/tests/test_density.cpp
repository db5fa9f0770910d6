#include <doctest.h>

#include <set>

#include "x0p/arith.hpp"
#include "x0p/density.hpp"
#include "x0p/ingest.hpp"
#include "x0p/pointbounds.hpp"

using namespace x0p;

namespace {

const FactsBundle& bundle() {
  static FactsBundle b = load_facts_bundle(X0P_FIXTURES_DIR);
  return b;
}

std::vector<std::int64_t> primes_below(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p < n; ++p) {
    if (is_prime(static_cast<std::uint64_t>(p))) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("kadets-vogt thresholds") {
  auto t6 = kv_thresholds(6);
  CHECK(t6.m == 2);
  CHECK(t6.epsilon == 5);
  CHECK(t6.genus_bound == 16);
  auto t2 = kv_thresholds(2);
  CHECK(t2.m == 0);
  CHECK(t2.epsilon == 5);
  CHECK(t2.genus_bound == 2);
  auto t5 = kv_thresholds(5);
  CHECK(t5.m == 2);
  CHECK(t5.epsilon == 2);
  CHECK(t5.genus_bound == 11);
}

TEST_CASE("kadets-vogt applicability window") {
  CHECK(kv_applicable(6));    // 203 <= 696
  CHECK(kv_applicable(20));   // 2303 <= 2376
  CHECK_FALSE(kv_applicable(21));  // 2543 > 2496
}

TEST_CASE("rule constants for degree 6") {
  CHECK(df_genus_bound(6) == 12);
  CHECK(rank_filter_dim_cap(6) == 3);
}

TEST_CASE("genus stays above the degree-6 gate from level 211 on") {
  CHECK(genus_x0(211) == 17);
  for (std::int64_t p : primes_below(100000)) {
    if (p >= 211) CHECK(genus_x0(static_cast<std::uint64_t>(p)) >= 17);
  }
}

TEST_CASE("infinitude witnesses") {
  const auto& facts = bundle().facts;

  auto w59 = infinitude_witness(59, facts);  // gonality 2 divides 6
  REQUIRE(w59.evidence.has_value());
  CHECK(w59.evidence->rule == RuleId::GonalityDivides);

  auto w53 = infinitude_witness(53, facts);  // elliptic quotient
  REQUIRE(w53.evidence.has_value());
  CHECK(w53.evidence->rule == RuleId::PlusQuotientElliptic);

  auto w269 = infinitude_witness(269, facts);  // cubic pullback
  REQUIRE(w269.evidence.has_value());
  CHECK(w269.evidence->rule == RuleId::PlusCubicPullback);

  auto w151 = infinitude_witness(151, facts);  // gonality exactly 6
  REQUIRE(w151.evidence.has_value());
  CHECK(w151.evidence->rule == RuleId::GonalityDivides);

  auto w211 = infinitude_witness(211, facts);
  CHECK_FALSE(w211.evidence.has_value());

  ExternalFacts no_facts;
  auto missing = infinitude_witness(59, no_facts);
  CHECK_FALSE(missing.evidence.has_value());
  CHECK_FALSE(missing.missing.empty());
}

TEST_CASE("finiteness gates fire exactly where they should") {
  const auto& b = bundle();

  auto kv211 = finiteness_by_kv_deg6(211, b);
  REQUIRE(kv211.evidence.has_value());
  CHECK(kv211.evidence->rule == RuleId::KVGate);

  auto kv223 = finiteness_by_kv_deg6(223, b);
  CHECK(kv223.evidence.has_value());

  // 269 carries a rank-1 degree-6 parametrization: the gate declines
  CHECK_FALSE(finiteness_by_kv_deg6(269, b).evidence.has_value());
  // gonality 6 at 227: the gate declines
  CHECK_FALSE(finiteness_by_kv_deg6(227, b).evidence.has_value());

  for (std::int64_t p : {157, 173, 199}) {
    auto rf = finiteness_by_rank_filter(p, b);
    REQUIRE(rf.evidence.has_value());
    CHECK(rf.evidence->rule == RuleId::RankFilter);
  }
  // 193 has a positive-rank dim-2 factor, 197 a positive-rank curve
  CHECK_FALSE(finiteness_by_rank_filter(193, b).evidence.has_value());
  CHECK_FALSE(finiteness_by_rank_filter(197, b).evidence.has_value());

  auto df193 = finiteness_by_df_minimality(193, b);
  REQUIRE(df193.evidence.has_value());
  CHECK(df193.evidence->rule == RuleId::DFMinimality);
  CHECK_FALSE(finiteness_by_df_minimality(197, b).evidence.has_value());

  auto c197 = finiteness_by_certificate(197, b);
  REQUIRE(c197.evidence.has_value());
  CHECK(c197.evidence->rule == RuleId::Certificate);
  CHECK_FALSE(finiteness_by_certificate(193, b).evidence.has_value());
}

TEST_CASE("maps from genus >= 2 targets for small degrees") {
  const auto& b = bundle();
  auto m193 = small_degree_maps(193, 6, b);
  CHECK(m193.value == GenusTwoTargets::OnlyQuotient);
  auto m223 = small_degree_maps(223, 6, b);
  CHECK(m223.value == GenusTwoTargets::OnlyQuotient);
  auto m3001 = small_degree_maps(3001, 25, b);
  CHECK(m3001.value == GenusTwoTargets::NoneExists);
  CHECK_THROWS_AS(small_degree_maps(223, 26, b), std::invalid_argument);

  FactsBundle stripped;
  stripped.facts = b.facts;
  auto missing = small_degree_maps(223, 6, stripped);
  CHECK_FALSE(missing.value.has_value());
  CHECK_FALSE(missing.missing.empty());

  CHECK(plus_small_degree_maps(223, 6) == GenusTwoTargets::NoneExists);
  CHECK(plus_small_degree_maps(3001, 12) == GenusTwoTargets::NoneExists);
  CHECK(plus_small_degree_maps(5, 2) == GenusTwoTargets::NoneExists);
  CHECK_THROWS_AS(plus_small_degree_maps(223, 13), std::invalid_argument);
}

TEST_CASE("degree-6 verdicts at pinned levels") {
  const auto& b = bundle();

  auto v151 = classify_degree6(151, b);
  CHECK(v151.status == Density::Infinite);
  REQUIRE(v151.evidence.size() == 1);
  CHECK(v151.evidence[0].rule == RuleId::GonalityDivides);

  auto v197 = classify_degree6(197, b);
  CHECK(v197.status == Density::Finite);
  REQUIRE(v197.evidence.size() == 1);
  CHECK(v197.evidence[0].rule == RuleId::Certificate);

  auto v193 = classify_degree6(193, b);
  CHECK(v193.status == Density::Finite);
  CHECK(v193.evidence[0].rule == RuleId::DFMinimality);

  auto v701 = classify_degree6(701, b);
  CHECK(v701.status == Density::Finite);
  CHECK(v701.evidence[0].rule == RuleId::OggThreshold);

  auto v11 = classify_degree6(11, b);
  CHECK(v11.status == Density::Infinite);
  CHECK(v11.evidence[0].rule == RuleId::KnownTable);
}

TEST_CASE("degree-6 sweep below 3000 reproduces the classification") {
  const auto& b = bundle();
  std::set<std::int64_t> infinite;
  for (std::int64_t p : primes_below(3000)) {
    auto v = classify_degree6(p, b);
    CHECK(v.status != Density::Unknown);
    if (v.status == Density::Infinite) {
      infinite.insert(p);
      // infinitude is only ever claimed on a constructive witness
      REQUIRE(v.evidence.size() == 1);
      auto rule = v.evidence[0].rule;
      CHECK((rule == RuleId::KnownTable || rule == RuleId::GonalityDivides ||
             rule == RuleId::PlusQuotientElliptic || rule == RuleId::PlusCubicPullback));
    }
    CHECK(degree6_infinite_expected(p) == (v.status == Density::Infinite));
  }
  CHECK(infinite.size() == 44);
  // no prime above the Ogg threshold is ever infinite: the rule order
  // cannot override the count
  for (std::int64_t p : infinite) CHECK(p <= 696);
}

TEST_CASE("witness and finiteness evidence never both apply") {
  const auto& b = bundle();
  for (std::int64_t p : primes_below(3000)) {
    bool witness = false;
    for (int d : {1, 2, 3}) {
      auto k = b.facts.known(p, d);
      if (k.has_value() && *k) witness = true;
    }
    if (infinitude_witness(p, b.facts).evidence.has_value()) witness = true;
    bool finite = finite_by_ogg(static_cast<std::uint64_t>(p), 6) ||
                  finiteness_by_kv_deg6(p, b).evidence.has_value() ||
                  finiteness_by_rank_filter(p, b).evidence.has_value() ||
                  finiteness_by_df_minimality(p, b).evidence.has_value() ||
                  finiteness_by_certificate(p, b).evidence.has_value();
    CHECK_FALSE((witness && finite));
  }
}

TEST_CASE("verdicts replay identically") {
  const auto& b = bundle();
  for (std::int64_t p : {151, 193, 197, 211, 269, 701}) {
    auto v1 = classify_degree6(p, b);
    auto v2 = classify_degree6(p, b);
    CHECK(v1.status == v2.status);
    REQUIRE(v1.evidence.size() == v2.evidence.size());
    for (std::size_t i = 0; i < v1.evidence.size(); ++i) {
      CHECK(v1.evidence[i].rule == v2.evidence[i].rule);
      CHECK(v1.evidence[i].inputs == v2.evidence[i].inputs);
      CHECK(v1.evidence[i].basis == v2.evidence[i].basis);
    }
  }
}

TEST_CASE("general-degree entry point") {
  const auto& b = bundle();
  CHECK(classify_degree(109, 5, b).status == Density::Infinite);
  CHECK(classify_degree(113, 4, b).status == Density::Finite);
  CHECK(classify_degree(11, 2, b).status == Density::Infinite);
  CHECK(classify_degree(151, 6, b).status == Density::Infinite);
  // degree 5 at a level with infinitely many quartic points: unsettled
  CHECK(classify_degree(167, 5, b).status == Density::Unknown);
  CHECK_THROWS_AS(classify_degree(11, 7, b), std::invalid_argument);
  CHECK_THROWS_AS(classify_degree(11, 0, b), std::invalid_argument);
}

TEST_CASE("unknown verdicts carry the missing facts") {
  FactsBundle empty;
  auto v = classify_degree6(211, empty);
  CHECK(v.status == Density::Unknown);
  CHECK_FALSE(v.missing_facts.empty());
}

TEST_CASE("expected degree-6 set") {
  CHECK(degree6_infinite_expected(151));
  CHECK(degree6_infinite_expected(2));
  CHECK(degree6_infinite_expected(269));
  CHECK_FALSE(degree6_infinite_expected(157));
  CHECK_FALSE(degree6_infinite_expected(197));
  CHECK_FALSE(degree6_infinite_expected(271));
}
