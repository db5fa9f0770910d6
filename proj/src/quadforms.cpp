#include "x0p/quadforms.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "x0p/arith.hpp"

namespace x0p {

namespace {

std::int64_t mod4(std::int64_t v) { return ((v % 4) + 4) % 4; }

bool is_squarefree(std::uint64_t n) {
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return false;
  }
  return true;
}

Interval two_log_six() {
  Interval l6 = iv::log(iv::exact(6.0));
  return iv::mul(iv::exact(2.0), l6);
}

}  // namespace

bool is_valid_discriminant(std::int64_t D) {
  if (D >= 0) return false;
  std::int64_t r = mod4(D);
  return r == 0 || r == 1;
}

bool is_fundamental_discriminant(std::int64_t D) {
  if (!is_valid_discriminant(D)) return false;
  if (mod4(D) == 1) return is_squarefree(static_cast<std::uint64_t>(-D));
  std::int64_t k = D / 4;
  std::int64_t r = mod4(k);
  return (r == 2 || r == 3) && is_squarefree(static_cast<std::uint64_t>(-k));
}

DiscriminantDecomposition decompose_discriminant(std::int64_t D) {
  if (!is_valid_discriminant(D)) throw std::invalid_argument("not a negative discriminant");
  // Squarefree kernel of |D|, carried back with the sign.
  std::int64_t kernel = -1;
  std::int64_t root = 1;
  for (auto [p, e] : factorize(static_cast<std::uint64_t>(-D))) {
    if (e % 2 == 1) kernel *= static_cast<std::int64_t>(p);
    for (int i = 0; i < e / 2; ++i) root *= static_cast<std::int64_t>(p);
  }
  std::int64_t d = (mod4(kernel) == 1) ? kernel : 4 * kernel;
  std::int64_t m2 = D / d;
  std::int64_t m = (mod4(kernel) == 1) ? root : root / 2;
  if (m <= 0 || m * m != m2) throw std::logic_error("discriminant decomposition failed");
  return {d, m};
}

std::int64_t class_number_reduced(std::int64_t D) {
  if (!is_valid_discriminant(D)) throw std::invalid_argument("class_number_reduced: D must be < 0 and 0,1 mod 4");
  std::int64_t count = 0;
  std::int64_t limit = static_cast<std::int64_t>(std::sqrt(static_cast<double>(-D) / 3.0)) + 2;
  for (std::int64_t a = 1; a <= limit; ++a) {
    if (3 * a * a > -D + 3) {
      // b^2 = D + 4ac >= D + 4a^2 and |b| <= a force 3a^2 <= |D|.
      if (3 * a * a > -D) break;
    }
    for (std::int64_t b = -a; b <= a; ++b) {
      std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (c < a) continue;
      std::int64_t g = std::gcd(std::gcd(a, b < 0 ? -b : b), c);
      if (g != 1) continue;
      if (b < 0 && (-b == a || a == c)) continue;
      ++count;
    }
  }
  return count;
}

std::int64_t class_number_cox(std::int64_t d, std::int64_t m) {
  if (!is_fundamental_discriminant(d)) throw std::invalid_argument("class_number_cox: d must be fundamental");
  if (m < 1) throw std::invalid_argument("class_number_cox: m must be >= 1");
  std::int64_t h = class_number_reduced(d);
  std::int64_t w = 1;
  if (m != 1 && d == -3) w = 3;
  if (m != 1 && d == -4) w = 2;
  // h(d) * m / w * prod (p - (d/p)) / p over primes p | m.
  Rational value(h * m, w);
  for (auto [p, e] : factorize(static_cast<std::uint64_t>(m))) {
    std::int64_t pi = static_cast<std::int64_t>(p);
    value = value * Rational(pi - kronecker(d, p), pi);
  }
  if (!value.is_integral() || value.num <= 0) throw std::logic_error("class_number_cox: non-integral result");
  return value.num;
}

Interval ramare_bound(std::int64_t d) {
  if (d >= -4) throw std::invalid_argument("ramare_bound: requires d < -4");
  if (!is_fundamental_discriminant(d)) throw std::invalid_argument("ramare_bound: d must be fundamental");
  Interval ad = iv::from_int(-d);
  Interval coeff = iv::div(iv::sqrt(ad), iv::mul(iv::exact(2.0), iv::pi()));
  Interval paren = iv::sub(iv::add(iv::log(ad), iv::exact(5.0)), two_log_six());
  return iv::mul(coeff, paren);
}

Interval h4p_bound(std::uint64_t p) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("h4p_bound: requires prime p >= 5");
  Interval pp = iv::from_int(static_cast<std::int64_t>(p));
  Interval coeff = iv::div(iv::mul(iv::exact(3.0), iv::sqrt(pp)), iv::mul(iv::exact(2.0), iv::pi()));
  Interval paren = iv::sub(iv::add(iv::log(pp), iv::exact(5.0)), two_log_six());
  return iv::mul(coeff, paren);
}

std::int64_t genus_x0_plus(std::uint64_t p) {
  if (p <= 3 || !is_prime(p)) throw std::invalid_argument("genus_x0_plus: requires prime p > 3");
  std::int64_t g = genus_x0(p);
  std::int64_t h = class_number_reduced(-4 * static_cast<std::int64_t>(p));
  // 4 g+ = 2g + 2 - alpha * h with alpha in {2, 4/3, 1}; clear denominators.
  std::int64_t num, den;
  if (p % 8 == 7) {
    num = 2 * g + 2 - 2 * h;
    den = 4;
  } else if (p % 8 == 3) {
    num = 3 * (2 * g + 2) - 4 * h;
    den = 12;
  } else {
    num = 2 * g + 2 - h;
    den = 4;
  }
  if (num < 0 || num % den != 0) throw std::logic_error("genus_x0_plus: non-integral value");
  return num / den;
}

bool plus_genus_inequality(std::uint64_t p) {
  std::int64_t g = genus_x0(p);
  std::int64_t gp = genus_x0_plus(p);
  // g/3 + 3 < g+  <=>  g + 9 < 3 g+ ; g+ <= g/2  <=>  2 g+ <= g.
  return (g + 9 < 3 * gp) && (2 * gp <= g);
}

bool analytic_threshold_check(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("analytic_threshold_check: p must be prime");
  std::int64_t g = genus_x0(p);
  Interval lhs = iv::from_ratio(g + 9, 3);  // g/3 + 3
  Interval pp = iv::from_int(static_cast<std::int64_t>(p));
  Interval coeff = iv::div(iv::mul(iv::exact(3.0), iv::sqrt(pp)), iv::mul(iv::exact(4.0), iv::pi()));
  Interval paren = iv::sub(iv::add(iv::log(pp), iv::exact(3.0)), two_log_six());
  Interval rhs = iv::sub(iv::from_ratio(g + 1, 2), iv::mul(coeff, paren));  // g/2 + 1/2 - ...
  return iv::certainly_less(lhs, rhs);
}

}  // namespace x0p
