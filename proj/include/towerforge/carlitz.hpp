#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "towerforge/poly.hpp"

namespace towerforge {

// Additive polynomial rho_f(u) = sum_i coeffs[i] * u^{q^i} with coefficients
// in A = F_q[t]. For f of degree r: coeffs has length r+1, coeffs[0] = f,
// and coeffs[r] equals the leading coefficient of f.
struct CarlitzPolynomial {
    std::vector<Poly> coeffs;
};

// rho_f built from rho_t(u) = t*u + u^q by A-linearity and composition.
CarlitzPolynomial carlitz_polynomial(const Poly& f);  // ZeroInput

// Composition of additive polynomials (the image is commutative).
CarlitzPolynomial carlitz_compose(const CarlitzPolynomial& a, const CarlitzPolynomial& b);

// Evaluates rho_f with t specialized to theta, on u, inside ext.
// Requires ext to have the characteristic of the base field; coefficients
// embed canonically from prime base fields.
std::uint64_t carlitz_act(const Poly& f, std::uint64_t u, std::uint64_t theta, const Field& ext);

// rho_f specialized at theta as an ordinary polynomial in u over ext
// (coefficient at u^{q^i} is coeffs[i](theta)).
Poly specialize(const CarlitzPolynomial& c, std::uint64_t theta, const FieldPtr& ext);

// Carlitz-Euler count q^{dm} - q^{d(m-1)} of generators of the p^m-torsion
// module, d = deg(prime).
Int euler_phi(const Poly& prime, unsigned m);  // ReducibleInput

struct PlaceCounts {
    Int s_cyclotomic;         // phi(p^m) / (q - 1)
    std::optional<Int> s_H;   // h * s_cyclotomic when h is supplied
};

PlaceCounts place_counts(const Poly& prime, unsigned m, const std::optional<Int>& h = std::nullopt);

}  // namespace towerforge
