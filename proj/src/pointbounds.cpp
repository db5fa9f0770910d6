#include "x0p/pointbounds.hpp"

#include <stdexcept>

#include "x0p/arith.hpp"

namespace x0p {

Rational ogg_lower_bound(std::uint64_t n, std::uint64_t q) {
  if (!is_prime(q)) throw std::invalid_argument("ogg_lower_bound: q must be prime");
  if (n % q == 0) throw std::invalid_argument("ogg_lower_bound: q must not divide N");
  std::int64_t two_omega = 1;
  for (int i = 0; i < omega(n); ++i) two_omega *= 2;
  return Rational(static_cast<std::int64_t>(q - 1) * static_cast<std::int64_t>(psi(n)), 12) + Rational(two_omega);
}

std::int64_t finiteness_threshold(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("finiteness_threshold: d must be >= 1");
  return 120 * d - 24;
}

bool finite_by_ogg(std::uint64_t p, std::int64_t d) {
  if (!is_prime(p)) throw std::invalid_argument("finite_by_ogg: p must be prime");
  return static_cast<std::int64_t>(p) > finiteness_threshold(d);
}

std::int64_t frey_gonality_cap(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("frey_gonality_cap: d must be >= 1");
  return 2 * d;
}

}  // namespace x0p
