#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace syncwalk {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }
inline double to_double(const Int& n) { return n.template convert_to<double>(); }

// Canonical "num/den" form, denominator always written ("1/3", "0/1", "2/1").
std::string rat_to_string(const Rat& r);

// Accepts "a/b", "a", or a plain decimal without exponent ("0.25" -> 1/4).
// Throws std::invalid_argument on anything else.
Rat rat_from_string(const std::string& s);

// Exact value of the double (binary expansion), not a nearby "nice" fraction.
Rat rat_from_double(double x);

Int lcm_int(const Int& a, const Int& b);

// Best rational approximation p/q to x with 1 <= q <= max_den, by the
// continued-fraction convergent/semiconvergent scan. Ties prefer the smaller
// denominator. x must be finite and non-negative, max_den >= 1.
Rat best_rational(double x, long long max_den);

}  // namespace syncwalk
