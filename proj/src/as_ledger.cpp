#include "towerforge/as_ledger.hpp"

#include <stdexcept>

#include "towerforge/errors.hpp"
#include "towerforge/zarith.hpp"

namespace towerforge {

Int as_disc_exponent(const Int& p, const Int& w) {
    if (is_prime(p) == Primality::composite) throw std::invalid_argument("as_disc_exponent: p must be prime");
    if (w < 1) throw std::invalid_argument("as_disc_exponent: pole order must be >= 1");
    if (divides(p, w))
        throw PoleOrderDivisibleByP("as_disc_exponent: pole order " + dec(w) + " divisible by p = " + dec(p));
    return (p - 1) * (w + 1);
}

DiscLedger compositum_ledger(const Int& p, const Int& h, const Int& w) {
    if (h < 1) throw std::invalid_argument("compositum_ledger: need h >= 1 ramified primes");
    DiscLedger l;
    l.p = p;
    l.h = h;
    l.w = w;
    l.e_single = as_disc_exponent(p, w);
    l.e_L = l.e_single;
    if (!h.fits_ulong_p()) throw std::invalid_argument("compositum_ledger: h too large");
    const Int scale = int_pow(p, h.get_ui() - 1);
    l.e_M = scale * l.e_single;
    l.e_norm_ML = l.e_M - scale * l.e_L;
    l.assumptions = {
        "the h Artin-Schreier extensions H_i/H are linearly disjoint",
        "all infinite places split completely in each H_i",
        "pole orders of the generators are exactly w at their primes and nonnegative elsewhere",
    };
    return l;
}

}  // namespace towerforge
