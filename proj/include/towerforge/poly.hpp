#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "towerforge/field.hpp"

namespace towerforge {

// Univariate polynomial over F_q in the ring A = F_q[t]. Coefficients are
// little-endian element codes with no trailing zero; the zero polynomial is
// the empty sequence and its degree is a distinct sentinel (nullopt).
class Poly {
   public:
    Poly() = default;  // fieldless placeholder, only assignable
    explicit Poly(FieldPtr f) : field_(std::move(f)) {}
    Poly(FieldPtr f, std::vector<std::uint64_t> coeffs);

    static Poly zero(FieldPtr f) { return Poly(std::move(f)); }
    static Poly one(FieldPtr f) { return constant(std::move(f), 1); }
    static Poly constant(FieldPtr f, std::uint64_t code);
    static Poly t(FieldPtr f) { return Poly(std::move(f), {0, 1}); }

    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    std::optional<unsigned> degree() const;
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint64_t leading() const;
    const std::vector<std::uint64_t>& coeffs() const { return c_; }

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Canonical text rendering (descending powers, no zero terms, no "*"
    // before t for unit coefficients).
    std::string str() const;

   private:
    FieldPtr field_;
    std::vector<std::uint64_t> c_;
};

// Parses the polynomial grammar: terms `c`, `c*t`, `c*t^k`, `t`, `t^k`
// joined by `+`. Prime-field coefficients are decimal integers reduced mod
// p; for e > 1 a coefficient is `[c0,...,c_{e-1}]`. Throws ParseError with
// the byte offset of the problem.
Poly parse_poly(const std::string& text, const FieldPtr& field);

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly neg(const Poly& a);
Poly mul(const Poly& a, const Poly& b);
Poly mul_scalar(const Poly& a, std::uint64_t code);
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
Poly monic(const Poly& a);
Poly poly_gcd(const Poly& a, const Poly& b);  // monic normalization
Poly pow_n(const Poly& a, unsigned n);

Poly mulmod(const Poly& a, const Poly& b, const Poly& f);       // ZeroModulus
Poly powmod(const Poly& a, const Int& n, const Poly& f);        // square-and-multiply

// Evaluation at a point of the coefficient field.
std::uint64_t eval(const Poly& a, std::uint64_t x);
// Evaluation at a point of another field of the same characteristic; the
// coefficients embed canonically only from a prime base field (or when the
// fields coincide).
std::uint64_t eval_in(const Poly& a, std::uint64_t x, const Field& ext);

bool is_irreducible(const Poly& f);

// Smallest monic irreducible of degree d in enumeration order.
Poly find_irreducible(const FieldPtr& field, unsigned d);

// Residues of degree < len as mixed-radix codes (sum of coeff codes times
// q^i). Requires q^len to fit the implementation word.
std::uint64_t encode(const Poly& a, unsigned len);
Poly decode(const FieldPtr& field, std::uint64_t code, unsigned len);

// Streams each monic degree-d polynomial exactly once, in lexicographic
// order on the little-endian coefficient sequence, optionally restricted to
// polynomials coprime to a given one.
class MonicEnumerator {
   public:
    MonicEnumerator(FieldPtr field, unsigned d, std::optional<Poly> coprime_to = std::nullopt);
    std::optional<Poly> next();

   private:
    FieldPtr field_;
    unsigned d_;
    std::optional<Poly> coprime_to_;
    std::vector<std::uint64_t> digits_;  // big-endian odometer over [0, q)
    bool done_ = false;
    bool first_ = true;
};

std::vector<Poly> monic_polys(const FieldPtr& field, unsigned d, std::optional<Poly> coprime_to = std::nullopt);

}  // namespace towerforge
