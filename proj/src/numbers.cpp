#include "k3moduli/numbers.hpp"

#include <boost/multiprecision/integer.hpp>

#include "k3moduli/errors.hpp"

namespace k3moduli {

Int mod_euclid(const Int& a, const Int& m) {
    if (m <= 0) throw bad_input_error("mod_euclid: modulus must be positive");
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

Int floor_div(const Int& a, const Int& m) {
    return (a - mod_euclid(a, m)) / m;
}

Int rat_floor(const Rat& x) {
    const Int num = boost::multiprecision::numerator(x);
    const Int den = boost::multiprecision::denominator(x);  // always > 0
    return floor_div(num, den);
}

Rat mod_one(const Rat& x) {
    return x - Rat(rat_floor(x));
}

Int gcd_all(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

bool divides(const Int& d, const Int& a) {
    if (d == 0) return a == 0;
    return a % d == 0;
}

Int pow_int(const Int& base, unsigned exp) {
    Int result = 1;
    Int b = base;
    while (exp > 0) {
        if (exp & 1u) result *= b;
        b *= b;
        exp >>= 1u;
    }
    return result;
}

Int mod_inverse(const Int& a, const Int& m) {
    // extended Euclid
    Int old_r = mod_euclid(a, m), r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw bad_input_error("mod_inverse: arguments are not coprime");
    return mod_euclid(old_s, m);
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw bad_input_error("dot: length mismatch");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw bad_input_error("dot: length mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVec add(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw bad_input_error("add: length mismatch");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw bad_input_error("sub: length mismatch");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVec scale(const IntVec& a, const Int& c) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

std::string to_string(const Int& x) {
    return x.str();
}

std::string to_string(const Rat& x) {
    return boost::multiprecision::numerator(x).str() + "/" +
           boost::multiprecision::denominator(x).str();
}

}  // namespace k3moduli
