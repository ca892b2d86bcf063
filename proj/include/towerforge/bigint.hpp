#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace towerforge {

// Exact arbitrary-precision integer used throughout the library.
using Int = mpz_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int int_pow(std::uint64_t base, unsigned long e) { return int_pow(Int(static_cast<unsigned long>(base)), e); }

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int divexact(const Int& n, const Int& d) {
    Int r;
    mpz_divexact(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return r;
}

inline Int powmod(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

inline std::string dec(const Int& v) { return v.get_str(); }

inline Int from_dec(const std::string& s) { return Int(s); }

}  // namespace towerforge
