#include <doctest.h>

#include <numeric>

#include "x0p/arith.hpp"

using namespace x0p;

namespace {

// Independent oracles: direct root counts and divisor sums.
std::uint64_t nu2_brute(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    if ((x * x + 1) % n == 0) ++c;
  }
  return c;
}

std::uint64_t nu3_brute(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    if ((x * x + x + 1) % n == 0) ++c;
  }
  return c;
}

int legendre_brute(std::int64_t d, std::uint64_t p) {
  // p odd prime
  std::int64_t r = ((d % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p);
  if (r == 0) return 0;
  for (std::uint64_t x = 1; x < p; ++x) {
    if ((x * x) % p == static_cast<std::uint64_t>(r)) return 1;
  }
  return -1;
}

}  // namespace

TEST_CASE("primality is deterministic and exact on small integers") {
  int count = 0;
  for (std::uint64_t n = 0; n <= 2000; ++n) {
    bool naive = n >= 2;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        naive = false;
        break;
      }
    }
    CHECK(is_prime(n) == naive);
    if (naive) ++count;
  }
  CHECK(count == 303);
  CHECK(is_prime(1000003));
  CHECK_FALSE(is_prime(1000001));  // 101 * 9901
}

TEST_CASE("psi values and multiplicativity") {
  CHECK(psi(223) == 224);
  CHECK(psi(1) == 1);
  CHECK(psi(12) == 24);
  for (std::uint64_t m = 1; m <= 500; ++m) {
    for (std::uint64_t n = m + 1; m * n <= 500; ++n) {
      if (std::gcd(m, n) != 1) continue;
      CHECK(psi(m * n) == psi(m) * psi(n));
    }
  }
}

TEST_CASE("nu2 and nu3 match brute-force root counting") {
  CHECK(nu2(37) == 2);
  CHECK(nu3(37) == 2);
  CHECK(nu2(223) == 0);
  CHECK(nu3(223) == 2);
  CHECK(nu2(2) == 1);
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    CHECK(nu2(n) == nu2_brute(n));
    CHECK(nu3(n) == nu3_brute(n));
  }
}

TEST_CASE("cusp count: divisor-sum formula, two cusps at primes") {
  CHECK(nu_inf(1) == 1);
  CHECK(nu_inf(12) == 6);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 101, 223, 1409}) CHECK(nu_inf(p) == 2);
}

TEST_CASE("genus values at selected levels") {
  CHECK(genus_x0(1) == 0);
  CHECK(genus_x0(11) == 1);
  CHECK(genus_x0(37) == 2);
  CHECK(genus_x0(211) == 17);
  CHECK(genus_x0(223) == 18);
  CHECK(genus_x0(1409) == 117);
}

TEST_CASE("genus formula is internally consistent up to 10^4") {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    std::int64_t g = genus_x0(n);
    CHECK(g >= 0);
    // Both sides of 12(g-1) = psi - 3 nu2 - 4 nu3 - 6 nu_inf as integers.
    std::int64_t lhs = 12 * (g - 1);
    std::int64_t rhs = static_cast<std::int64_t>(psi(n)) - 3 * static_cast<std::int64_t>(nu2(n)) -
                       4 * static_cast<std::int64_t>(nu3(n)) - 6 * static_cast<std::int64_t>(nu_inf(n));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("genus lower bound (p - 13)/12") {
  CHECK(genus_lower_bound(3001) == Rational(249));
  CHECK(genus_lower_bound(13) == Rational(0));
  CHECK(genus_lower_bound(17) == Rational(1, 3));
  for (std::uint64_t p = 2; p <= 100000; ++p) {
    if (!is_prime(p)) continue;
    CHECK(genus_lower_bound(p) <= Rational(genus_x0(p)));
  }
}

TEST_CASE("kronecker symbol: fixed values and brute force") {
  CHECK(kronecker(-223, 2) == 1);  // -223 = 1 mod 8
  CHECK(kronecker(5, 1) == 1);
  CHECK(kronecker(-4, 3) == -1);
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
    for (std::int64_t d = -60; d <= 60; ++d) {
      CHECK(kronecker(d, p) == legendre_brute(d, p));
    }
  }
  // full multiplicativity in the lower argument
  for (std::int64_t d : {-223, -20, -7, -3, 5, 12}) {
    for (std::uint64_t m = 1; m <= 40; ++m) {
      for (std::uint64_t n = 1; n <= 40; ++n) {
        CHECK(kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n));
      }
    }
  }
}

TEST_CASE("level rejects zero") { CHECK_THROWS_AS(Level(0), std::invalid_argument); }
