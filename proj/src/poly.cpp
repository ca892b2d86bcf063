#include "towerforge/poly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "towerforge/errors.hpp"
#include "towerforge/zarith.hpp"

namespace towerforge {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
    if (!a.field() || !b.field() || !a.field()->same_field(*b.field()))
        throw std::invalid_argument("polynomial operands live in different fields");
}

constexpr unsigned kMaxDegree = 2'000'000;

}  // namespace

Poly::Poly(FieldPtr f, std::vector<std::uint64_t> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
    if (!field_) throw std::invalid_argument("polynomial requires a field");
    for (auto& x : c_) x %= field_->q();
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(FieldPtr f, std::uint64_t code) {
    std::uint64_t v = code % f->q();
    if (v == 0) return Poly(std::move(f));
    return Poly(std::move(f), {v});
}

std::optional<unsigned> Poly::degree() const {
    if (c_.empty()) return std::nullopt;
    return static_cast<unsigned>(c_.size() - 1);
}

std::uint64_t Poly::leading() const {
    if (c_.empty()) throw std::logic_error("zero polynomial has no leading coefficient");
    return c_.back();
}

bool Poly::operator==(const Poly& o) const {
    if (!field_ || !o.field_) return c_.empty() && o.c_.empty() && (field_ == o.field_);
    return field_->same_field(*o.field_) && c_ == o.c_;
}

std::string Poly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << field_->render_elem(c_[i]);
        } else {
            if (c_[i] != 1) os << field_->render_elem(c_[i]) << '*';
            os << 't';
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

Poly parse_poly(const std::string& text, const FieldPtr& field) {
    if (!field) throw std::invalid_argument("parse_poly requires a field");
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip_ws = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto parse_uint = [&](const char* what) -> std::uint64_t {
        skip_ws();
        if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError(i, std::string("expected ") + what);
        std::uint64_t v = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            if (v > UINT64_MAX / 16) throw ParseError(i, "number too large");
            v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
            ++i;
        }
        return v;
    };
    auto parse_coeff = [&]() -> std::uint64_t {
        skip_ws();
        if (i < n && text[i] == '[') {
            if (field->e() == 1) throw ParseError(i, "bracket coefficients need an extension field");
            ++i;
            std::vector<std::uint64_t> digits;
            for (unsigned j = 0; j < field->e(); ++j) {
                if (j) {
                    skip_ws();
                    if (i >= n || text[i] != ',') throw ParseError(i, "expected ','");
                    ++i;
                }
                digits.push_back(parse_uint("coordinate") % field->p());
            }
            skip_ws();
            if (i >= n || text[i] != ']') throw ParseError(i, "expected ']'");
            ++i;
            return field->from_coords(digits);
        }
        if (field->e() > 1) {
            // Plain decimals embed as prime-field scalars.
            return field->scalar(parse_uint("coefficient"));
        }
        return parse_uint("coefficient") % field->p();
    };

    std::vector<std::uint64_t> coeffs;
    auto add_term = [&](std::uint64_t code, std::uint64_t power) {
        if (power > kMaxDegree) throw ParseError(i, "exponent too large");
        if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
        coeffs[power] = field->add(coeffs[power], code);
    };

    skip_ws();
    if (i >= n) throw ParseError(i, "empty polynomial");
    bool expect_term = true;
    while (true) {
        skip_ws();
        if (i >= n) {
            if (expect_term) throw ParseError(i, "expected a term");
            break;
        }
        if (!expect_term) {
            if (text[i] != '+') throw ParseError(i, "expected '+'");
            ++i;
            expect_term = true;
            continue;
        }
        // term := coeff ['*' tpart] | tpart
        std::uint64_t coeff_code = 1;
        bool have_coeff = false;
        if (text[i] == '[' || std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff_code = parse_coeff();
            have_coeff = true;
            skip_ws();
            if (i < n && text[i] == '*') {
                ++i;
                skip_ws();
                if (i >= n || text[i] != 't') throw ParseError(i, "expected 't'");
            } else if (i < n && text[i] == 't') {
                throw ParseError(i, "expected '*' between coefficient and t");
            } else {
                add_term(coeff_code, 0);
                expect_term = false;
                continue;
            }
        }
        if (i < n && text[i] == 't') {
            ++i;
            std::uint64_t power = 1;
            skip_ws();
            if (i < n && text[i] == '^') {
                ++i;
                power = parse_uint("exponent");
            }
            add_term(coeff_code, power);
            expect_term = false;
            continue;
        }
        if (have_coeff) continue;
        throw ParseError(i, "expected a term");
    }
    return Poly(field, std::move(coeffs));
}

Poly add(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    const Field& f = *a.field();
    std::vector<std::uint64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.coeff(i), b.coeff(i));
    return Poly(a.field(), std::move(c));
}

Poly neg(const Poly& a) {
    const Field& f = *a.field();
    std::vector<std::uint64_t> c(a.coeffs());
    for (auto& x : c) x = f.neg(x);
    return Poly(a.field(), std::move(c));
}

Poly sub(const Poly& a, const Poly& b) { return add(a, neg(b)); }

Poly mul(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
    const Field& f = *a.field();
    std::vector<std::uint64_t> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeff(i) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] = f.add(c[i + j], f.mul(a.coeff(i), b.coeff(j)));
    }
    return Poly(a.field(), std::move(c));
}

Poly mul_scalar(const Poly& a, std::uint64_t code) {
    const Field& f = *a.field();
    std::vector<std::uint64_t> c(a.coeffs());
    for (auto& x : c) x = f.mul(x, code);
    return Poly(a.field(), std::move(c));
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw ZeroModulus("polynomial division by zero");
    const Field& f = *a.field();
    if (a.coeffs().size() < b.coeffs().size()) return {Poly::zero(a.field()), a};
    std::vector<std::uint64_t> rem(a.coeffs());
    const std::size_t db = b.coeffs().size() - 1;
    std::vector<std::uint64_t> quo(rem.size() - db, 0);
    const std::uint64_t lead_inv = f.inv(b.leading());
    for (std::size_t k = rem.size(); k-- > db;) {
        std::uint64_t c = f.mul(rem[k], lead_inv);
        if (c == 0) continue;
        quo[k - db] = c;
        for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] = f.sub(rem[k - db + j], f.mul(c, b.coeff(j)));
    }
    return {Poly(a.field(), std::move(quo)), Poly(a.field(), std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& b) { return divrem(a, b).second; }

Poly monic(const Poly& a) {
    if (a.is_zero()) return a;
    return mul_scalar(a, a.field()->inv(a.leading()));
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_mod(x, y);
        x = y;
        y = r;
    }
    return monic(x);
}

Poly pow_n(const Poly& a, unsigned n) {
    Poly r = Poly::one(a.field());
    Poly base = a;
    while (n) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f) {
    if (f.is_zero()) throw ZeroModulus("mulmod: zero modulus");
    return poly_mod(mul(poly_mod(a, f), poly_mod(b, f)), f);
}

Poly powmod(const Poly& a, const Int& n, const Poly& f) {
    if (f.is_zero()) throw ZeroModulus("powmod: zero modulus");
    if (n < 0) throw std::invalid_argument("powmod: negative exponent");
    Poly r = poly_mod(Poly::one(a.field()), f);
    Poly base = poly_mod(a, f);
    for (std::size_t bit = mpz_sizeinbase(n.get_mpz_t(), 2); bit-- > 0;) {
        r = mulmod(r, r, f);
        if (mpz_tstbit(n.get_mpz_t(), bit)) r = mulmod(r, base, f);
    }
    return r;
}

std::uint64_t eval(const Poly& a, std::uint64_t x) { return eval_in(a, x, *a.field()); }

std::uint64_t eval_in(const Poly& a, std::uint64_t x, const Field& ext) {
    const Field& base = *a.field();
    if (base.p() != ext.p()) throw CharacteristicMismatch("evaluation field has different characteristic");
    const bool same = base.same_field(ext);
    if (!same && base.e() != 1)
        throw std::invalid_argument("no canonical embedding from a proper extension field");
    std::uint64_t acc = 0;
    for (std::size_t i = a.coeffs().size(); i-- > 0;) {
        std::uint64_t c = same ? a.coeff(i) : ext.scalar(a.coeff(i));
        acc = ext.add(ext.mul(acc, x), c);
    }
    return acc;
}

bool is_irreducible(const Poly& f) {
    if (f.is_zero() || !f.degree() || *f.degree() < 1) throw std::invalid_argument("irreducibility needs degree >= 1");
    const Poly g = monic(f);
    const unsigned d = *g.degree();
    if (d == 1) return true;
    const FieldPtr& field = g.field();
    const Int q(static_cast<unsigned long>(field->q()));
    const Poly t = Poly::t(field);

    // f is irreducible iff t^{q^d} = t mod f and gcd(t^{q^{d/r}} - t, f) = 1
    // for every prime r dividing d.
    Poly frob = powmod(t, int_pow(q, d), g);
    if (frob != poly_mod(t, g)) return false;
    std::vector<unsigned> prime_divisors;
    unsigned rest = d;
    for (unsigned r = 2; r * r <= rest; ++r) {
        if (rest % r) continue;
        prime_divisors.push_back(r);
        while (rest % r == 0) rest /= r;
    }
    if (rest > 1) prime_divisors.push_back(rest);
    for (unsigned r : prime_divisors) {
        Poly fr = powmod(t, int_pow(q, d / r), g);
        if (poly_gcd(sub(fr, t), g).degree() != 0u) return false;
    }
    return true;
}

Poly find_irreducible(const FieldPtr& field, unsigned d) {
    MonicEnumerator en(field, d);
    while (auto f = en.next())
        if (is_irreducible(*f)) return *f;
    throw std::logic_error("no irreducible polynomial found");  // unreachable, they exist in every degree
}

std::uint64_t encode(const Poly& a, unsigned len) {
    const std::uint64_t q = a.field()->q();
    if (a.coeffs().size() > len) throw std::invalid_argument("encode: degree out of range");
    std::uint64_t code = 0;
    for (std::size_t i = len; i-- > 0;) {
        if (code > (UINT64_C(1) << 62) / q) throw std::overflow_error("encode: q^len too large");
        code = code * q + a.coeff(i);
    }
    return code;
}

Poly decode(const FieldPtr& field, std::uint64_t code, unsigned len) {
    std::vector<std::uint64_t> c(len);
    const std::uint64_t q = field->q();
    for (unsigned i = 0; i < len; ++i) {
        c[i] = code % q;
        code /= q;
    }
    return Poly(field, std::move(c));
}

MonicEnumerator::MonicEnumerator(FieldPtr field, unsigned d, std::optional<Poly> coprime_to)
    : field_(std::move(field)), d_(d), coprime_to_(std::move(coprime_to)), digits_(d, 0) {}

std::optional<Poly> MonicEnumerator::next() {
    const std::uint64_t q = field_->q();
    while (!done_) {
        if (!first_) {
            // Advance the big-endian odometer (last digit fastest), which is
            // lexicographic order on the little-endian coefficient sequence
            // (a_0 ... a_{d-1}) since digits_[i] holds a_i.
            std::size_t k = digits_.size();
            while (k > 0) {
                if (++digits_[k - 1] < q) break;
                digits_[k - 1] = 0;
                --k;
            }
            if (k == 0) {
                done_ = true;
                break;
            }
        }
        first_ = false;
        if (d_ == 0) done_ = true;  // single monic constant
        std::vector<std::uint64_t> c(digits_.begin(), digits_.end());
        c.push_back(1);
        Poly cand(field_, std::move(c));
        if (coprime_to_ && !coprime_to_->is_zero()) {
            if (poly_gcd(cand, *coprime_to_).degree() != 0u) continue;
        }
        return cand;
    }
    return std::nullopt;
}

std::vector<Poly> monic_polys(const FieldPtr& field, unsigned d, std::optional<Poly> coprime_to) {
    std::vector<Poly> out;
    MonicEnumerator en(field, d, std::move(coprime_to));
    while (auto p = en.next()) out.push_back(std::move(*p));
    return out;
}

}  // namespace towerforge
