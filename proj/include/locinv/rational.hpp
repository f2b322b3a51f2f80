#pragma once

/*
 * Exact arithmetic layer.  All dimension counts in this library are produced
 * by exact rational linear algebra; no floating point appears anywhere.
 * Integers and rationals are GMP-backed (mpz_class / mpq_class).
 */

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "locinv/errors.hpp"

namespace locinv {

using Int = mpz_class;
using Rational = mpq_class;

// mpz_class has no long long constructor; on this platform long is 64-bit.
static_assert(sizeof(long) == 8, "64-bit long expected");

inline Int to_int(long long v) { return Int(static_cast<long>(v)); }

inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw Error("make_rational: zero denominator");
    Rational q{to_int(num), to_int(den)};
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Int& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline long long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw Error("integer out of machine range: " + z.get_str());
    return z.get_si();
}

// Quotient that is contractually exact; a nonzero remainder is a logic error.
inline Int exact_quotient(const Int& a, const Int& b) {
    if (b == 0) throw Error("exact_quotient: division by zero");
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw InternalMismatch("exact_quotient: inexact division " + a.get_str() + "/" + b.get_str());
    return q;
}

inline Int binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline long long binomial_ll(long long n, long long k) { return to_long(binomial(n, k)); }

// Floor division for machine integers (C++ '/' truncates toward zero).
inline long long floor_div(long long a, long long b) {
    long long q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

} // namespace locinv
