#ifndef X0P_POINTBOUNDS_HPP
#define X0P_POINTBOUNDS_HPP

#include <cstdint>

#include "x0p/rational.hpp"

// Ogg's lower bound on #X_0(N)(F_{q^2}), the finiteness threshold 120d - 24
// it implies for degree-d points, and the Frey gonality cap.

namespace x0p {

// L_q(N) = (q - 1)/12 * psi(N) + 2^omega(N), exact.
Rational ogg_lower_bound(std::uint64_t n, std::uint64_t q);

// Degree-d points are finite once p exceeds this.
std::int64_t finiteness_threshold(std::int64_t d);

// True iff p > 120d - 24, so Ogg's count rules out infinitely many
// degree-d points.
bool finite_by_ogg(std::uint64_t p, std::int64_t d);

// Infinitely many points of degree <= d force gonality <= 2d.
std::int64_t frey_gonality_cap(std::int64_t d);

}  // namespace x0p

#endif
