#ifndef X0P_INTERVAL_HPP
#define X0P_INTERVAL_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "x0p/rational.hpp"

// Outward-rounded interval arithmetic for the analytic class-number bounds.
// The transcendental bounds feed strict inequalities, so a comparison is
// asserted only when the whole interval satisfies it.

namespace x0p {

struct Interval {
  double lo;
  double hi;
};

namespace iv {

inline double next_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double next_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

inline Interval exact(double x) { return {x, x}; }

inline Interval from_int(std::int64_t n) { return exact(static_cast<double>(n)); }  // |n| < 2^53 here

inline Interval from_ratio(std::int64_t num, std::int64_t den) {
  double q = static_cast<double>(num) / static_cast<double>(den);
  return {next_down(q), next_up(q)};
}

inline Interval from_rational(const Rational& r) { return from_ratio(r.num, r.den); }

inline Interval add(Interval a, Interval b) { return {next_down(a.lo + b.lo), next_up(a.hi + b.hi)}; }
inline Interval sub(Interval a, Interval b) { return {next_down(a.lo - b.hi), next_up(a.hi - b.lo)}; }

inline Interval mul(Interval a, Interval b) {
  double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  double lo = std::fmin(std::fmin(p1, p2), std::fmin(p3, p4));
  double hi = std::fmax(std::fmax(p1, p2), std::fmax(p3, p4));
  return {next_down(lo), next_up(hi)};
}

inline Interval div(Interval a, Interval b) {
  if (b.lo <= 0.0 && b.hi >= 0.0) throw std::domain_error("interval division through zero");
  double p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
  double lo = std::fmin(std::fmin(p1, p2), std::fmin(p3, p4));
  double hi = std::fmax(std::fmax(p1, p2), std::fmax(p3, p4));
  return {next_down(lo), next_up(hi)};
}

inline Interval sqrt(Interval a) {
  if (a.lo < 0.0) throw std::domain_error("interval sqrt of negative");
  // IEEE sqrt is correctly rounded; one step outward covers it.
  return {next_down(std::sqrt(a.lo)), next_up(std::sqrt(a.hi))};
}

inline Interval log(Interval a) {
  if (a.lo <= 0.0) throw std::domain_error("interval log of nonpositive");
  // libm log is faithfully rounded, not correctly rounded: two steps outward.
  return {next_down(next_down(std::log(a.lo))), next_up(next_up(std::log(a.hi)))};
}

inline Interval pi() {
  // The nearest double to pi lies below it.
  double p = 3.14159265358979323846264338327950288;
  return {p, next_up(p)};
}

// True only when the inequality holds for every point of both intervals.
inline bool certainly_less(Interval a, Interval b) { return a.hi < b.lo; }
inline bool certainly_leq(Interval a, Interval b) { return a.hi <= b.lo; }

// h <= bound, certified against the lower edge of the bound's enclosure.
inline bool certainly_leq(std::int64_t h, Interval bound) { return static_cast<double>(h) <= bound.lo; }

}  // namespace iv

}  // namespace x0p

#endif
