#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "towerforge/bigint.hpp"

namespace towerforge {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Finite field F_q with q = p^e. Elements are codes in [0, q): the code is
// the little-endian base-p packing of the power-basis coordinates over the
// prime field, so for e = 1 the code is the residue itself.
class Field {
   public:
    // Validates primality of p and irreducibility of the modulus over F_p.
    // The modulus (little-endian residues mod p, length e+1, monic) is
    // required exactly when e > 1; there is no built-in modulus table.
    static FieldPtr make(std::uint64_t p, unsigned e = 1, std::vector<std::uint64_t> modulus = {});

    std::uint64_t p() const { return p_; }
    unsigned e() const { return e_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    bool same_field(const Field& o) const { return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;  // throws std::domain_error on 0
    std::uint64_t pow(std::uint64_t a, const Int& n) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t n) const;

    // Embedding of the prime field: residue mod p as a constant code.
    std::uint64_t scalar(std::uint64_t residue_mod_p) const { return residue_mod_p % p_; }

    // Power-basis coordinates (length e, residues in [0, p)).
    std::vector<std::uint64_t> coords(std::uint64_t code) const;
    std::uint64_t from_coords(const std::vector<std::uint64_t>& c) const;

    // Smallest code generating F_q^*.
    std::uint64_t primitive_element() const;

    // Canonical element text: decimal residue for e = 1, "[c0,...,c_{e-1}]"
    // otherwise.
    std::string render_elem(std::uint64_t code) const;

   private:
    Field(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modulus, std::uint64_t q);

    std::uint64_t p_;
    unsigned e_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;  // empty when e == 1
};

}  // namespace towerforge
