#ifndef X0P_QUADFORMS_HPP
#define X0P_QUADFORMS_HPP

#include <cstdint>

#include "x0p/interval.hpp"
#include "x0p/rational.hpp"

// Class numbers h(D) of primitive binary quadratic forms of negative
// discriminant, the analytic upper bounds, and the genus of the
// Atkin-Lehner quotient X_0^+(p).

namespace x0p {

bool is_valid_discriminant(std::int64_t D);  // D < 0 and D = 0,1 mod 4
bool is_fundamental_discriminant(std::int64_t D);

// D = d * m^2 with d fundamental.
struct DiscriminantDecomposition {
  std::int64_t fundamental;
  std::int64_t m;
};

DiscriminantDecomposition decompose_discriminant(std::int64_t D);

// Count of reduced primitive forms (a, b, c): |b| <= a <= c, gcd 1, and
// b >= 0 whenever |b| = a or a = c. Brute-force oracle for the module.
std::int64_t class_number_reduced(std::int64_t D);

// h(d m^2) = h(d) m / w * prod_{p | m} (1 - (d/p)/p), evaluated exactly.
// w = 3 for d = -3, m > 1; w = 2 for d = -4, m > 1; w = 1 otherwise.
std::int64_t class_number_cox(std::int64_t d, std::int64_t m);

// h(d) <= sqrt(|d|)/(2 pi) (log|d| + 5 - 2 log 6) for fundamental d < -4.
Interval ramare_bound(std::int64_t d);

// h(-4p) <= 3 sqrt(p)/(2 pi) (log p + 5 - 2 log 6) for prime p >= 5.
Interval h4p_bound(std::uint64_t p);

// g_0^+(p) = (2 g_0(p) + 2 - alpha_p h(-4p)) / 4, alpha keyed on p mod 8.
// Requires prime p > 3; a non-integral value indicates corrupted inputs.
std::int64_t genus_x0_plus(std::uint64_t p);

// g_0(p)/3 + 3 < g_0^+(p) <= g_0(p)/2, in exact integer arithmetic.
bool plus_genus_inequality(std::uint64_t p);

// The certified analytic inequality
//   g/3 + 3 < g/2 + 1/2 - (3 sqrt(p) / 4 pi)(log p + 3 - 2 log 6),
// true only when the whole enclosure satisfies it.
bool analytic_threshold_check(std::uint64_t p);

}  // namespace x0p

#endif
