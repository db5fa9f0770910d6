#include "x0p/arith.hpp"

#include <algorithm>
#include <numeric>

namespace x0p {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases decide primality for every n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::map<std::uint64_t, int> factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize(0)");
  std::map<std::uint64_t, int> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t sz = out.size();
    std::uint64_t pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

std::uint64_t psi(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("psi(0)");
  std::uint64_t r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p + 1);
  return r;
}

int omega(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("omega(0)");
  return static_cast<int>(factorize(n).size());
}

std::uint64_t nu2(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("nu2(0)");
  std::uint64_t r = 1;
  for (auto [p, e] : factorize(n)) {
    if (p == 2) {
      r *= (e == 1) ? 1 : 0;
    } else if (p % 4 == 1) {
      r *= 2;  // two square roots of -1 mod p^e
    } else {
      return 0;
    }
    if (r == 0) return 0;
  }
  return r;
}

std::uint64_t nu3(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("nu3(0)");
  std::uint64_t r = 1;
  for (auto [p, e] : factorize(n)) {
    if (p == 3) {
      r *= (e == 1) ? 1 : 0;
    } else if (p % 3 == 1) {
      r *= 2;  // two primitive cube roots of unity mod p^e
    } else {
      return 0;
    }
    if (r == 0) return 0;
  }
  return r;
}

std::uint64_t nu_inf(std::uint64_t n) {
  std::uint64_t total = 0;
  for (std::uint64_t d : divisors(n)) total += euler_phi(std::gcd(d, n / d));
  return total;
}

std::int64_t genus_x0(std::uint64_t n) {
  // 12(g - 1) = psi - 3 nu2 - 4 nu3 - 6 nu_inf, and the right side is
  // always divisible by 12.
  std::int64_t rhs = static_cast<std::int64_t>(psi(n)) - 3 * static_cast<std::int64_t>(nu2(n)) -
                     4 * static_cast<std::int64_t>(nu3(n)) - 6 * static_cast<std::int64_t>(nu_inf(n));
  if ((rhs % 12 + 12) % 12 != 0) throw std::logic_error("genus formula not integral");
  std::int64_t g = rhs / 12 + 1;
  if (g < 0) throw std::logic_error("negative genus");
  return g;
}

GenusProfile genus_profile(std::uint64_t n) {
  Level lvl(n);
  return GenusProfile{lvl, psi(n), omega(n), nu2(n), nu3(n), nu_inf(n), genus_x0(n)};
}

Rational genus_lower_bound(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("genus_lower_bound: p must be prime");
  return Rational(static_cast<std::int64_t>(p) - 13, 12);
}

int kronecker(std::int64_t d, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("kronecker: n must be >= 1");
  int result = 1;
  // Factor out 2s of n: (d/2) is 0 for even d, +1 for d = +-1 mod 8, -1 otherwise.
  while (n % 2 == 0) {
    if (d % 2 == 0) return 0;
    std::int64_t r = ((d % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
    n /= 2;
  }
  if (n == 1) return result;
  // Jacobi symbol (a/n) for odd n, a = d mod n.
  std::uint64_t a = static_cast<std::uint64_t>(((d % static_cast<std::int64_t>(n)) + static_cast<std::int64_t>(n)) %
                                               static_cast<std::int64_t>(n));
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      std::uint64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return (n == 1) ? result : 0;
}

}  // namespace x0p
