#pragma once

#include <string>
#include <vector>

#include "towerforge/bigint.hpp"

namespace towerforge {

// Discriminant exponent (p-1)(w+1) of a degree-p Artin-Schreier extension
// whose generator has pole order w at the ramified prime, gcd(w, p) = 1.
Int as_disc_exponent(const Int& p, const Int& w);  // PoleOrderDivisibleByP

// Valuation-exponent bookkeeping for the compositum M of h linearly
// disjoint Artin-Schreier extensions over a base with h ramified primes.
// The paper-level identity delta_{M/H} = delta_{L/H}^{p^{h-1}} *
// N_{L/H}(delta_{M/L}) forces the norm exponent to vanish at every prime,
// i.e. M/L is unramified. w is the pole order (the cyclotomic level m is an
// unrelated quantity).
struct DiscLedger {
    Int p;  // characteristic
    Int h;  // number of ramified primes
    Int w;  // Artin-Schreier pole order
    Int e_single;   // exponent of delta_{H_i/H} at its prime
    Int e_L;        // exponent of delta_{L/H} at each prime
    Int e_M;        // exponent of delta_{M/H} at each prime
    Int e_norm_ML;  // inferred exponent of N_{L/H}(delta_{M/L}); must be 0
    std::vector<std::string> assumptions;
};

DiscLedger compositum_ledger(const Int& p, const Int& h, const Int& w);

}  // namespace towerforge
