#pragma once

#include <cstdint>
#include <vector>

#include "towerforge/bigfloat.hpp"
#include "towerforge/bigint.hpp"

namespace towerforge {

// Integer polynomials, little-endian, trailing zeros trimmed.
using ZPoly = std::vector<Int>;

namespace zpoly {
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
// Exact division by a monic divisor (throws std::logic_error if not exact).
ZPoly divexact_monic(const ZPoly& a, const ZPoly& b);
}  // namespace zpoly

// N-th cyclotomic polynomial, computed by recursive division of x^N - 1 by
// the Phi_d of proper divisors; results are cached.
const ZPoly& cyclotomic_poly(unsigned long n);

enum class Lift { allow, forbid };

// Exact element of Z[zeta_N] in the power basis of Z[x]/Phi_N. Coordinates
// are arbitrary-precision from the start; the vector always has length
// deg Phi_N = totient(N) and is reduced (reduction is idempotent).
class CyclotomicInt {
   public:
    CyclotomicInt() = default;
    static CyclotomicInt zero(unsigned long n);
    static CyclotomicInt from_int(unsigned long n, const Int& v);
    static CyclotomicInt one(unsigned long n) { return from_int(n, 1); }
    // zeta_N^k (k taken mod N).
    static CyclotomicInt root_of_unity(unsigned long n, unsigned long k);
    // Arbitrary little-endian integer polynomial in zeta_N, reduced.
    static CyclotomicInt from_poly(unsigned long n, ZPoly coeffs);

    unsigned long order() const { return n_; }
    const std::vector<Int>& coords() const { return c_; }
    bool is_zero() const;

    bool operator==(const CyclotomicInt& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const CyclotomicInt& o) const { return !(*this == o); }

   private:
    unsigned long n_ = 0;
    std::vector<Int> c_;
};

CyclotomicInt add(const CyclotomicInt& a, const CyclotomicInt& b, Lift lift = Lift::allow);
CyclotomicInt sub(const CyclotomicInt& a, const CyclotomicInt& b, Lift lift = Lift::allow);
CyclotomicInt mul(const CyclotomicInt& a, const CyclotomicInt& b, Lift lift = Lift::allow);
CyclotomicInt neg(const CyclotomicInt& a);

// Canonical embedding zeta_N = zeta_M^{M/N} for N | M.
CyclotomicInt lift_to(const CyclotomicInt& a, unsigned long m);

// Complex conjugation (the Galois action zeta -> zeta^{-1}).
CyclotomicInt conjugate(const CyclotomicInt& a);

// The constant coordinate iff all non-constant coordinates vanish; throws
// NotRational carrying the offending coordinates otherwise.
Int rational_value(const CyclotomicInt& a);

// Floating embedding zeta_N -> exp(2*pi*i/N). Non-authoritative: used only
// as a cross-check oracle. Requires precision >= 53 bits.
BigComplex complex_approx(const CyclotomicInt& a, mpfr_prec_t precision_bits);

unsigned long totient(unsigned long n);

}  // namespace towerforge
