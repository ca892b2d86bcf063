#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "towerforge/cyclotomic.hpp"
#include "towerforge/poly.hpp"

namespace towerforge {

inline constexpr std::uint64_t kDefaultEnumBudget = 1'000'000;

// Structure of the unit group (A/p^m)^*: canonical generators in
// invariant-factor form n_1 | n_2 | ... | n_k, with a complete discrete-log
// table over all residue codes. Built by enumerating the group and reducing
// the relation lattice to Smith normal form; immutable and safely shared
// once constructed.
class ResidueUnitGroup {
   public:
    const FieldPtr& field() const { return field_; }
    const Poly& prime() const { return prime_; }
    unsigned level() const { return m_; }           // the exponent m of p^m
    const Poly& modulus() const { return modulus_; }
    unsigned code_len() const { return code_len_; }  // residues have degree < code_len
    const Int& order() const { return order_; }      // phi(p^m)
    const std::vector<Poly>& generators() const { return generators_; }
    const std::vector<std::uint64_t>& invariant_factors() const { return orders_; }
    std::uint64_t exponent() const { return exponent_; }  // N = n_k (1 for the trivial group)

    bool is_unit_code(std::uint64_t code) const { return unit_mask_[code]; }

    // Exponent vector of a coprime residue with respect to the generators;
    // nullopt when gcd(a, p) != 1. The code form expects a residue of degree
    // < code_len; the Poly form reduces mod p^m first.
    std::optional<std::vector<std::uint64_t>> dlog_code(std::uint64_t code) const;
    std::optional<std::vector<std::uint64_t>> dlog(const Poly& a) const;

    // dlog of the chosen generator of the embedded F_q^*.
    const std::vector<std::uint64_t>& scalar_generator_dlog() const { return scalar_gen_dlog_; }
    std::uint64_t scalar_generator() const { return scalar_gen_; }

    // Unit residue codes in increasing order.
    const std::vector<std::uint64_t>& unit_codes() const { return unit_codes_; }

   private:
    friend std::shared_ptr<const ResidueUnitGroup> unit_group(const Poly&, unsigned, std::uint64_t);

    FieldPtr field_;
    Poly prime_;
    unsigned m_ = 0;
    Poly modulus_;
    unsigned code_len_ = 0;
    Int order_;
    std::vector<Poly> generators_;
    std::vector<std::uint64_t> orders_;
    std::uint64_t exponent_ = 1;
    std::vector<std::uint8_t> unit_mask_;
    std::vector<std::uint32_t> dlog_flat_;  // k entries per code
    std::vector<std::uint64_t> unit_codes_;
    std::vector<std::uint64_t> scalar_gen_dlog_;
    std::uint64_t scalar_gen_ = 1;
};

using GroupPtr = std::shared_ptr<const ResidueUnitGroup>;

// Enumerates (A/p^m)^* and computes its invariant-factor decomposition.
// Throws ReducibleModulusPrime if p is not irreducible and BudgetExceeded
// if q^{dm} exceeds the enumeration budget.
GroupPtr unit_group(const Poly& prime, unsigned m, std::uint64_t budget = kDefaultEnumBudget);

// Character of (A/p^m)^* given by exponents on the canonical generators;
// values are N-th roots of unity. Odd means nontrivial on the embedded
// F_q^*.
struct DirichletCharacter {
    GroupPtr group;
    std::vector<std::uint64_t> exponents;  // k_j in [0, n_j)
    std::uint64_t value_order = 1;         // N
    bool odd = false;
};

DirichletCharacter make_character(GroupPtr group, std::vector<std::uint64_t> exponents);

// All Pi n_j characters, in lexicographic order on exponent vectors.
std::vector<DirichletCharacter> characters(const GroupPtr& group);

bool is_trivial(const DirichletCharacter& chi);

// chi(a) as a root-of-unity token zeta_N^k, or Zero when gcd(a, p) != 1.
struct CharValue {
    bool is_zero = false;
    std::uint64_t k = 0;
};

CharValue char_eval(const DirichletCharacter& chi, const Poly& a);
CharValue char_eval_code(const DirichletCharacter& chi, std::uint64_t code);

CyclotomicInt char_value_exact(const DirichletCharacter& chi, const Poly& a);

// Smallest j with chi factoring through (A/p^j)^*; 0 for the trivial
// character.
unsigned conductor_exponent(const DirichletCharacter& chi);

}  // namespace towerforge
