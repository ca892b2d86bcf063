#pragma once

#include <cstdint>
#include <vector>

#include "towerforge/bigint.hpp"
#include "towerforge/errors.hpp"

namespace towerforge {

enum class Primality { composite, probable_prime, proven_prime };

enum class Certainty { proven, probable };

struct Factor {
    Int prime;
    unsigned exponent;
    Certainty certainty;
};

// Complete factorization: primes strictly increasing, exponents >= 1,
// product of prime^exponent reconstructs the input.
using FactorList = std::vector<Factor>;

struct PartialFactorization {
    FactorList factors;
    Int cofactor;  // 1 when complete; otherwise an unfactored composite
    bool complete() const { return cofactor == 1; }
};

// Strong-pseudoprime test. Deterministic (proven) below the published
// witness-set threshold 3317044064679887385961981; fixed-round probable
// above it.
Primality is_prime(const Int& n);

// Trial division below 10^6 followed by Pollard rho with Brent cycling and
// recursive splitting. The rho seed sequence is fixed (x0 = 2, c = 1, 2, ...)
// so factorizations are reproducible run to run.
FactorList factorize(const Int& n);

// Same routine with a cap on total rho iterations; whatever remains
// unfactored is returned as the cofactor.
PartialFactorization try_factorize(const Int& n, std::uint64_t rho_budget);

enum class OrderMethod { factored_exponent, scan };

struct OrderValue {
    Int value;  // minimal f > 0 with p^f = 1 mod h
    OrderMethod method;
};

inline constexpr std::uint64_t kDefaultRhoBudget = 50'000'000;

// Multiplicative order of p modulo h. Factors the group exponent (h-1 for
// prime h, Euler phi otherwise) and strips prime factors; if the exponent
// resists factorization within the budget, falls back to a successive-
// squaring scan and reports which path produced the answer.
OrderValue mult_order(const Int& p, const Int& h, std::uint64_t rho_budget = kDefaultRhoBudget);

// Primes below the trial-division bound, computed once.
const std::vector<std::uint32_t>& small_primes();

}  // namespace towerforge
