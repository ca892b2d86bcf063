#include "towerforge/carlitz.hpp"

#include <stdexcept>

#include "towerforge/errors.hpp"

namespace towerforge {

namespace {

// b^{q^i} for b in F_q[t]: coefficients are fixed by the q-power Frobenius,
// indices dilate by q^i.
Poly q_power(const Poly& b, unsigned i) {
    if (i == 0 || b.is_zero()) return b;
    std::uint64_t stride = 1;
    const std::uint64_t q = b.field()->q();
    for (unsigned k = 0; k < i; ++k) {
        if (stride > (UINT64_C(1) << 40) / q) throw std::overflow_error("carlitz: q^i too large");
        stride *= q;
    }
    std::vector<std::uint64_t> c((b.coeffs().size() - 1) * stride + 1, 0);
    for (std::size_t l = 0; l < b.coeffs().size(); ++l) c[l * stride] = b.coeff(l);
    return Poly(b.field(), std::move(c));
}

}  // namespace

CarlitzPolynomial carlitz_compose(const CarlitzPolynomial& a, const CarlitzPolynomial& b) {
    if (a.coeffs.empty() || b.coeffs.empty()) return {};
    const FieldPtr& field = a.coeffs.front().field();
    std::vector<Poly> out(a.coeffs.size() + b.coeffs.size() - 1, Poly::zero(field));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            if (b.coeffs[j].is_zero()) continue;
            out[i + j] = add(out[i + j], mul(a.coeffs[i], q_power(b.coeffs[j], static_cast<unsigned>(i))));
        }
    }
    return CarlitzPolynomial{std::move(out)};
}

CarlitzPolynomial carlitz_polynomial(const Poly& f) {
    if (f.is_zero()) throw ZeroInput("carlitz_polynomial: zero input");
    const FieldPtr& field = f.field();
    const unsigned r = *f.degree();

    CarlitzPolynomial rho_t{{Poly::t(field), Poly::one(field)}};
    CarlitzPolynomial rho_ti{{Poly::one(field)}};  // rho_{t^0} = identity

    std::vector<Poly> acc(r + 1, Poly::zero(field));
    for (unsigned d = 0; d <= r; ++d) {
        if (d > 0) rho_ti = carlitz_compose(rho_t, rho_ti);
        const std::uint64_t fd = f.coeff(d);
        if (fd == 0) continue;
        for (std::size_t i = 0; i < rho_ti.coeffs.size(); ++i)
            acc[i] = add(acc[i], mul_scalar(rho_ti.coeffs[i], fd));
    }
    return CarlitzPolynomial{std::move(acc)};
}

std::uint64_t carlitz_act(const Poly& f, std::uint64_t u, std::uint64_t theta, const Field& ext) {
    if (f.field()->p() != ext.p()) throw CharacteristicMismatch("carlitz_act: characteristic mismatch");
    const CarlitzPolynomial rho = carlitz_polynomial(f);
    const std::uint64_t q = f.field()->q();
    u %= ext.q();
    theta %= ext.q();
    std::uint64_t acc = 0;
    std::uint64_t upow = u;  // u^{q^i}
    for (std::size_t i = 0; i < rho.coeffs.size(); ++i) {
        if (i > 0) upow = ext.pow(upow, q);
        if (rho.coeffs[i].is_zero()) continue;
        acc = ext.add(acc, ext.mul(eval_in(rho.coeffs[i], theta, ext), upow));
    }
    return acc;
}

Poly specialize(const CarlitzPolynomial& c, std::uint64_t theta, const FieldPtr& ext) {
    if (c.coeffs.empty()) return Poly::zero(ext);
    const std::uint64_t q = c.coeffs.front().field()->q();
    std::uint64_t stride = 1;
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
        if (i > 0) {
            if (stride > (UINT64_C(1) << 40) / q) throw std::overflow_error("specialize: degree too large");
            stride *= q;
        }
        std::uint64_t v = eval_in(c.coeffs[i], theta, *ext);
        if (v != 0) {
            if (out.size() <= stride) out.resize(stride + 1, 0);
            out[stride] = v;
        }
    }
    return Poly(ext, std::move(out));
}

Int euler_phi(const Poly& prime, unsigned m) {
    if (prime.is_zero() || !prime.degree() || *prime.degree() < 1 || !is_irreducible(prime))
        throw ReducibleInput("euler_phi: prime must be irreducible");
    if (m < 1) throw std::invalid_argument("euler_phi: m must be >= 1");
    const unsigned d = *prime.degree();
    const Int q(static_cast<unsigned long>(prime.field()->q()));
    return int_pow(q, static_cast<unsigned long>(d) * m) - int_pow(q, static_cast<unsigned long>(d) * (m - 1));
}

PlaceCounts place_counts(const Poly& prime, unsigned m, const std::optional<Int>& h) {
    const Int phi = euler_phi(prime, m);
    const Int qm1(static_cast<unsigned long>(prime.field()->q() - 1));
    PlaceCounts out;
    out.s_cyclotomic = divexact(phi, qm1);
    if (h) out.s_H = *h * out.s_cyclotomic;
    return out;
}

}  // namespace towerforge
