#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "towerforge/cyclotomic.hpp"
#include "towerforge/residue_group.hpp"
#include "towerforge/zarith.hpp"

namespace towerforge {

// L(0, chi) = sum over monic a with deg a < d*m and gcd(a, p) = 1 of chi(a),
// summed degree-major in enumeration order. Exact element of Z[zeta_N].
CyclotomicInt l_value_at_zero(const DirichletCharacter& chi);  // TrivialCharacter

// Per-degree partial sums for degrees 0..max_degree (degrees >= d*m reduce
// residues mod p^m; the tails vanish for degrees at or beyond the conductor
// degree).
std::vector<CyclotomicInt> l_value_degree_partials(const DirichletCharacter& chi, unsigned max_degree);

struct LValueRecord {
    std::vector<std::uint64_t> chi_exponents;
    bool odd;
    CyclotomicInt value;
};

struct HMinusOptions {
    bool want_factorization = false;
    bool keep_l_values = false;
    std::uint64_t enum_budget = kDefaultEnumBudget;
    std::uint64_t factor_budget = kDefaultRhoBudget;
};

// Relative class numbers of K(lambda_{p^m}): h_minus is the absolute value
// of the rational product of the odd-character L(0, chi); h_tilde_minus
// divides out (q-1)^{s-1} per the place-count relation.
struct RelClassResult {
    FieldPtr field;
    Poly prime;
    unsigned m = 0;
    Int h_minus;
    Int h_tilde_minus;
    Int s_cyclotomic;
    std::optional<std::vector<LValueRecord>> l_values;
    FactorList factorization;  // empty unless requested
};

RelClassResult h_minus(const Poly& prime, unsigned m, const HMinusOptions& opts = {});

// True iff p does not divide h_tilde_minus; p must be the field
// characteristic.
bool minus_regular(const Poly& prime, unsigned m, const Int& p);

// One line per nontrivial character: exponent vector, parity, coordinates
// of L(0, chi); tab-separated, deterministic enumeration order.
void dump_character_l_values(const Poly& prime, unsigned m, std::ostream& os,
                             std::uint64_t enum_budget = kDefaultEnumBudget);

}  // namespace towerforge
