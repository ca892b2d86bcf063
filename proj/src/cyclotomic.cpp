#include "towerforge/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "towerforge/errors.hpp"

namespace towerforge {

namespace zpoly {

namespace {
void trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
}  // namespace

ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
    ZPoly c(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = (i < a.size() ? a[i] : Int(0)) - (i < b.size() ? b[i] : Int(0));
    trim(c);
    return c;
}

ZPoly divexact_monic(const ZPoly& a, const ZPoly& b) {
    if (b.empty() || b.back() != 1) throw std::logic_error("divexact_monic: divisor must be monic");
    ZPoly rem = a;
    trim(rem);
    if (rem.size() < b.size()) {
        if (!rem.empty()) throw std::logic_error("divexact_monic: division not exact");
        return {};
    }
    ZPoly quo(rem.size() - b.size() + 1, Int(0));
    for (std::size_t k = rem.size(); k-- >= b.size();) {
        Int c = rem[k];
        if (c != 0) {
            quo[k - (b.size() - 1)] = c;
            for (std::size_t j = 0; j < b.size(); ++j) rem[k - (b.size() - 1) + j] -= c * b[j];
        }
        if (k == 0) break;
    }
    for (const Int& r : rem)
        if (r != 0) throw std::logic_error("divexact_monic: division not exact");
    trim(quo);
    return quo;
}

}  // namespace zpoly

unsigned long totient(unsigned long n) {
    unsigned long result = n, m = n;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        result -= result / p;
        while (m % p == 0) m /= p;
    }
    if (m > 1) result -= result / m;
    return result;
}

const ZPoly& cyclotomic_poly(unsigned long n) {
    static std::map<unsigned long, ZPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);

    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n == 0) throw std::invalid_argument("cyclotomic_poly: n must be >= 1");

    // Compute recursively without re-locking.
    std::vector<unsigned long> stack{n};
    while (!stack.empty()) {
        unsigned long k = stack.back();
        if (cache.count(k)) {
            stack.pop_back();
            continue;
        }
        bool ready = true;
        std::vector<unsigned long> divisors;
        for (unsigned long d = 1; d * d <= k; ++d) {
            if (k % d) continue;
            divisors.push_back(d);
            if (d != k / d && k / d != k) divisors.push_back(k / d);
        }
        if (!divisors.empty() && divisors.front() == k) divisors.erase(divisors.begin());
        for (unsigned long dd : divisors) {
            if (!cache.count(dd)) {
                stack.push_back(dd);
                ready = false;
            }
        }
        if (!ready) continue;
        ZPoly xn1(k + 1, Int(0));
        xn1[0] = -1;
        xn1[k] = 1;
        ZPoly acc{Int(1)};
        for (unsigned long d : divisors) acc = zpoly::mul(acc, cache.at(d));
        cache[k] = zpoly::divexact_monic(xn1, acc);
        stack.pop_back();
    }
    return cache.at(n);
}

namespace {

// Reduce an integer polynomial modulo Phi_N and resize to totient(N).
std::vector<Int> reduce_mod_phi(unsigned long n, ZPoly c) {
    const ZPoly& phi = cyclotomic_poly(n);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t k = c.size(); k-- > deg;) {
        Int v = c[k];
        if (v == 0) continue;
        c[k] = 0;
        for (std::size_t j = 0; j < deg; ++j) c[k - deg + j] -= v * phi[j];
    }
    c.resize(deg, Int(0));
    return c;
}

unsigned long lcm_ul(unsigned long a, unsigned long b) { return a / std::gcd(a, b) * b; }

}  // namespace

CyclotomicInt CyclotomicInt::zero(unsigned long n) { return from_poly(n, {}); }

CyclotomicInt CyclotomicInt::from_int(unsigned long n, const Int& v) { return from_poly(n, {v}); }

CyclotomicInt CyclotomicInt::root_of_unity(unsigned long n, unsigned long k) {
    if (n == 0) throw std::invalid_argument("root_of_unity: n must be >= 1");
    k %= n;
    ZPoly c(k + 1, Int(0));
    c[k] = 1;
    return from_poly(n, std::move(c));
}

CyclotomicInt CyclotomicInt::from_poly(unsigned long n, ZPoly coeffs) {
    if (n == 0) throw std::invalid_argument("CyclotomicInt: order must be >= 1");
    CyclotomicInt r;
    r.n_ = n;
    r.c_ = reduce_mod_phi(n, std::move(coeffs));
    return r;
}

bool CyclotomicInt::is_zero() const {
    for (const Int& v : c_)
        if (v != 0) return false;
    return true;
}

CyclotomicInt lift_to(const CyclotomicInt& a, unsigned long m) {
    if (m % a.order() != 0) throw IncompatibleConductors("lift_to: target order not a multiple");
    if (m == a.order()) return a;
    const unsigned long stride = m / a.order();
    ZPoly c((a.coords().size() - 1) * stride + 1, Int(0));
    for (std::size_t i = 0; i < a.coords().size(); ++i) c[i * stride] = a.coords()[i];
    return CyclotomicInt::from_poly(m, std::move(c));
}

namespace {
std::pair<CyclotomicInt, CyclotomicInt> align(const CyclotomicInt& a, const CyclotomicInt& b, Lift lift) {
    if (a.order() == b.order()) return {a, b};
    if (lift == Lift::forbid)
        throw IncompatibleConductors("operands have orders " + std::to_string(a.order()) + " and " +
                                     std::to_string(b.order()) + " and lifting is disabled");
    const unsigned long m = lcm_ul(a.order(), b.order());
    return {lift_to(a, m), lift_to(b, m)};
}
}  // namespace

CyclotomicInt add(const CyclotomicInt& a, const CyclotomicInt& b, Lift lift) {
    auto [x, y] = align(a, b, lift);
    ZPoly c(x.coords());
    for (std::size_t i = 0; i < y.coords().size(); ++i) c[i] += y.coords()[i];
    return CyclotomicInt::from_poly(x.order(), std::move(c));
}

CyclotomicInt neg(const CyclotomicInt& a) {
    ZPoly c(a.coords());
    for (Int& v : c) v = -v;
    return CyclotomicInt::from_poly(a.order(), std::move(c));
}

CyclotomicInt sub(const CyclotomicInt& a, const CyclotomicInt& b, Lift lift) { return add(a, neg(b), lift); }

CyclotomicInt mul(const CyclotomicInt& a, const CyclotomicInt& b, Lift lift) {
    auto [x, y] = align(a, b, lift);
    return CyclotomicInt::from_poly(x.order(), zpoly::mul(x.coords(), y.coords()));
}

CyclotomicInt conjugate(const CyclotomicInt& a) {
    const unsigned long n = a.order();
    ZPoly c(n, Int(0));
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        if (a.coords()[i] == 0) continue;
        c[(n - i) % n] += a.coords()[i];
    }
    return CyclotomicInt::from_poly(n, std::move(c));
}

Int rational_value(const CyclotomicInt& a) {
    std::vector<std::pair<std::size_t, Int>> offending;
    for (std::size_t i = 1; i < a.coords().size(); ++i)
        if (a.coords()[i] != 0) offending.emplace_back(i, a.coords()[i]);
    if (!offending.empty())
        throw NotRational("value has nonzero non-constant coordinates (order " + std::to_string(a.order()) + ")",
                          std::move(offending));
    return a.coords().empty() ? Int(0) : a.coords()[0];
}

BigComplex complex_approx(const CyclotomicInt& a, mpfr_prec_t precision_bits) {
    if (precision_bits < 53) throw std::invalid_argument("complex_approx: precision must be >= 53 bits");
    BigComplex acc(precision_bits);
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        if (a.coords()[i] == 0) continue;
        auto [c, s] = BigFloat::cos_sin_2pi(static_cast<unsigned long>(i), a.order(), precision_bits);
        BigFloat coeff = BigFloat::from_int(a.coords()[i], precision_bits);
        acc.re = acc.re + coeff * c;
        acc.im = acc.im + coeff * s;
    }
    return acc;
}

}  // namespace towerforge
