#ifndef X0P_ARITH_HPP
#define X0P_ARITH_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "x0p/rational.hpp"

// Exact arithmetic invariants of the modular curve X_0(N): the index psi,
// elliptic point counts nu2/nu3, cusp count, and the genus. Everything here
// is integer arithmetic; no floating point.

namespace x0p {

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime(std::uint64_t n);

// Trial-division factorization, prime -> exponent, increasing primes.
std::map<std::uint64_t, int> factorize(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

// A level N >= 1 together with its primality status.
struct Level {
  std::uint64_t n;
  bool prime;

  explicit Level(std::uint64_t value) : n(value), prime(is_prime(value)) {
    if (n == 0) throw std::invalid_argument("level must be >= 1");
  }
};

// psi(N) = N * prod_{r | N prime} (1 + 1/r); multiplicative, psi(p) = p + 1.
std::uint64_t psi(std::uint64_t n);

// Number of distinct prime factors.
int omega(std::uint64_t n);

// Solution counts of x^2 + 1 = 0 and x^2 + x + 1 = 0 in Z/NZ.
std::uint64_t nu2(std::uint64_t n);
std::uint64_t nu3(std::uint64_t n);

// Cusp count: sum over d | N of phi(gcd(d, N/d)).
std::uint64_t nu_inf(std::uint64_t n);

// Genus of X_0(N) via 12(g - 1) = psi - 3*nu2 - 4*nu3 - 6*nu_inf.
std::int64_t genus_x0(std::uint64_t n);

// All invariants of one level in a single record.
struct GenusProfile {
  Level level;
  std::uint64_t psi;
  int omega;
  std::uint64_t nu2;
  std::uint64_t nu3;
  std::uint64_t nu_inf;
  std::int64_t genus;
};

GenusProfile genus_profile(std::uint64_t n);

// (p - 13)/12, exact; always <= genus_x0(p).
Rational genus_lower_bound(std::uint64_t p);

// Kronecker symbol (d / n) for n >= 1, fully multiplicative in n.
int kronecker(std::int64_t d, std::uint64_t n);

}  // namespace x0p

#endif
