#include "towerforge/field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "towerforge/errors.hpp"
#include "towerforge/poly.hpp"
#include "towerforge/zarith.hpp"

namespace towerforge {

namespace {

// Digit-vector helpers over Z/p (little-endian, fixed length not enforced).
void trim(std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

std::vector<std::uint64_t> digit_mul_mod(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                         const std::vector<std::uint64_t>& mod, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    // Reduce by the monic modulus.
    const std::size_t d = mod.size() - 1;
    for (std::size_t k = prod.size(); k-- > d;) {
        std::uint64_t c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (std::size_t j = 0; j < d; ++j) {
            std::uint64_t sub = (c * mod[j]) % p;
            prod[k - d + j] = (prod[k - d + j] + p - sub) % p;
        }
    }
    prod.resize(d);
    trim(prod);
    return prod;
}

}  // namespace

Field::Field(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modulus, std::uint64_t q)
    : p_(p), e_(e), q_(q), modulus_(std::move(modulus)) {}

FieldPtr Field::make(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modulus) {
    if (p < 2 || is_prime(Int(static_cast<unsigned long>(p))) == Primality::composite)
        throw NonPrimeCharacteristic("characteristic " + std::to_string(p) + " is not prime");
    if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (p >= (UINT64_C(1) << 31)) throw std::overflow_error("characteristic too large");

    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (q > (UINT64_C(1) << 62) / p) throw std::overflow_error("field size p^e too large");
        q *= p;
    }

    if (e == 1) {
        if (!modulus.empty()) throw std::invalid_argument("modulus must be omitted for prime fields");
        return FieldPtr(new Field(p, e, {}, q));
    }

    if (modulus.size() != e + 1) throw std::invalid_argument("modulus must have degree e");
    for (auto& c : modulus) c %= p;
    if (modulus.back() != 1) throw std::invalid_argument("modulus must be monic");

    // Irreducibility over the prime field.
    FieldPtr fp(new Field(p, 1, {}, p));
    Poly mpoly(fp, modulus);
    if (!is_irreducible(mpoly)) throw ReducibleModulus("modulus " + mpoly.str() + " is reducible over F_" + std::to_string(p));
    return FieldPtr(new Field(p, e, std::move(modulus), q));
}

std::uint64_t Field::add(std::uint64_t a, std::uint64_t b) const {
    if (e_ == 1) return (a + b) % p_;
    std::uint64_t r = 0, mult = 1;
    for (unsigned i = 0; i < e_; ++i) {
        r += ((a % p_ + b % p_) % p_) * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

std::uint64_t Field::neg(std::uint64_t a) const {
    if (e_ == 1) return (p_ - a % p_) % p_;
    std::uint64_t r = 0, mult = 1;
    for (unsigned i = 0; i < e_; ++i) {
        r += ((p_ - a % p_) % p_) * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

std::uint64_t Field::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const {
    if (e_ == 1) return (a * b) % p_;
    auto da = coords(a), db = coords(b);
    trim(da);
    trim(db);
    auto r = digit_mul_mod(da, db, modulus_, p_);
    r.resize(e_, 0);
    return from_coords(r);
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t n) const {
    std::uint64_t r = 1, base = a % q_;
    while (n) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

std::uint64_t Field::pow(std::uint64_t a, const Int& n) const {
    if (n < 0) throw std::invalid_argument("negative exponent");
    if (n.fits_ulong_p()) return pow(a, static_cast<std::uint64_t>(n.get_ui()));
    std::uint64_t r = 1, base = a % q_;
    for (std::size_t bit = mpz_sizeinbase(n.get_mpz_t(), 2); bit-- > 0;) {
        r = mul(r, r);
        if (mpz_tstbit(n.get_mpz_t(), bit)) r = mul(r, base);
    }
    return r;
}

std::uint64_t Field::inv(std::uint64_t a) const {
    if (a % q_ == 0) throw std::domain_error("division by zero in F_q");
    return pow(a, q_ - 2);
}

std::vector<std::uint64_t> Field::coords(std::uint64_t code) const {
    std::vector<std::uint64_t> c(e_);
    for (unsigned i = 0; i < e_; ++i) {
        c[i] = code % p_;
        code /= p_;
    }
    return c;
}

std::uint64_t Field::from_coords(const std::vector<std::uint64_t>& c) const {
    if (c.size() > e_) {
        for (std::size_t i = e_; i < c.size(); ++i)
            if (c[i] != 0) throw std::invalid_argument("coordinate vector too long");
    }
    std::uint64_t code = 0, mult = 1;
    for (unsigned i = 0; i < e_; ++i) {
        code += (i < c.size() ? c[i] % p_ : 0) * mult;
        mult *= p_;
    }
    return code;
}

std::uint64_t Field::primitive_element() const {
    const Int order(static_cast<unsigned long>(q_ - 1));
    if (order == 1) return 1 % q_;
    const FactorList fac = factorize(order);
    for (std::uint64_t g = 1; g < q_; ++g) {
        bool ok = true;
        for (const auto& f : fac) {
            Int cof = divexact(order, f.prime);
            if (pow(g, cof) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("no primitive element found");  // unreachable for a field
}

std::string Field::render_elem(std::uint64_t code) const {
    if (e_ == 1) return std::to_string(code % p_);
    std::ostringstream os;
    os << '[';
    auto c = coords(code);
    for (unsigned i = 0; i < e_; ++i) {
        if (i) os << ',';
        os << c[i];
    }
    os << ']';
    return os.str();
}

}  // namespace towerforge
