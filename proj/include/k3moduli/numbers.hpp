#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace k3moduli {

// All arithmetic in this library is exact.  Integers are arbitrary-precision
// and rationals are always kept in lowest terms with positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Euclidean remainder in [0, m) for m > 0.
Int mod_euclid(const Int& a, const Int& m);

// Floor division paired with mod_euclid: a == floor_div(a, m) * m + mod_euclid(a, m).
Int floor_div(const Int& a, const Int& m);

// Representative of x + Z in [0, 1).
Rat mod_one(const Rat& x);

Int rat_floor(const Rat& x);

// gcd over a vector, nonnegative; 0 for an all-zero or empty vector.
Int gcd_all(const IntVec& v);

bool divides(const Int& d, const Int& a);

Int pow_int(const Int& base, unsigned exp);

// Inverse of a mod m, for m > 0 and gcd(a, m) = 1.
Int mod_inverse(const Int& a, const Int& m);

Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const RatVec& b);

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const IntVec& a, const Int& c);

std::string to_string(const Int& x);
std::string to_string(const Rat& x);  // "p/q" in lowest terms

}  // namespace k3moduli
