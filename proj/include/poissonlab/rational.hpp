#ifndef POISSONLAB_RATIONAL_HPP
#define POISSONLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "poissonlab/errors.hpp"

namespace poissonlab {

/// Exact rational coefficient. GMP keeps values canonical (lowest terms,
/// positive denominator) through arithmetic; construction goes through
/// make_rational so that raw numerator/denominator pairs are canonicalized.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw ZeroInput("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rational_from_string(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw Error("invalid rational literal: '" + text + "'");
    if (r.get_den() == 0) throw ZeroInput("rational with zero denominator");
    r.canonicalize();
    return r;
}

/// Canonical form: "n" for integers, "n/d" otherwise.
inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

inline Rational rational_pow(const Rational& base, int exp) {
    Rational acc(1);
    for (int i = 0; i < exp; ++i) acc *= base;
    return acc;
}

}  // namespace poissonlab

#endif
