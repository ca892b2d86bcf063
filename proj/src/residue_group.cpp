#include "towerforge/residue_group.hpp"

#include <algorithm>
#include <stdexcept>

#include "towerforge/carlitz.hpp"
#include "towerforge/errors.hpp"
#include "towerforge/smith.hpp"
#include "towerforge/zarith.hpp"

namespace towerforge {

namespace {

constexpr std::uint32_t kNoDlog = UINT32_MAX;

std::uint64_t checked_pow_u64(std::uint64_t base, unsigned exp, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > limit / base) return 0;  // overflow marker
        r *= base;
    }
    return r;
}

}  // namespace

GroupPtr unit_group(const Poly& prime, unsigned m, std::uint64_t budget) {
    if (prime.is_zero() || !prime.degree() || *prime.degree() < 1 || !is_irreducible(prime))
        throw ReducibleModulusPrime("unit_group: modulus base must be irreducible");
    if (m < 1) throw std::invalid_argument("unit_group: m must be >= 1");

    auto g = std::make_shared<ResidueUnitGroup>();
    g->field_ = prime.field();
    g->prime_ = prime;
    g->m_ = m;
    const unsigned d = *prime.degree();
    const unsigned dm = d * m;
    const std::uint64_t q = g->field_->q();

    const std::uint64_t qdm = checked_pow_u64(q, dm, UINT64_C(1) << 62);
    if (qdm == 0 || qdm > budget)
        throw BudgetExceeded("unit_group: q^{dm} exceeds the enumeration budget of " + std::to_string(budget));

    g->modulus_ = pow_n(prime, m);
    g->code_len_ = dm;

    // Units: residues of degree < dm not divisible by p.
    g->unit_mask_.assign(qdm, 0);
    for (std::uint64_t code = 0; code < qdm; ++code) {
        Poly a = decode(g->field_, code, dm);
        if (!a.is_zero() && !poly_mod(a, prime).is_zero()) {
            g->unit_mask_[code] = 1;
            g->unit_codes_.push_back(code);
        }
    }
    g->order_ = Int(static_cast<unsigned long>(g->unit_codes_.size()));
    if (g->order_ != euler_phi(prime, m))
        throw std::logic_error("unit_group: unit count disagrees with the phi formula");

    const Poly& pm = g->modulus_;
    auto mulm = [&](const Poly& a, const Poly& b) { return poly_mod(mul(a, b), pm); };
    auto enc = [&](const Poly& a) { return encode(a, dm); };

    // Greedy generating set with the triangular relation lattice: when x is
    // appended with relative order r (minimal x^r in the current subgroup),
    // the relation r*e_x = dlog(x^r) is recorded.
    std::vector<Poly> raw_gens;
    std::vector<std::uint64_t> rel_orders;
    std::vector<std::vector<std::uint64_t>> rel_tails;

    std::vector<std::uint8_t> in_sub(qdm, 0);
    std::vector<std::vector<std::uint32_t>> nf(qdm);
    const Poly one = Poly::one(g->field_);
    in_sub[enc(one)] = 1;
    std::vector<std::uint64_t> sub_codes{enc(one)};

    for (std::uint64_t code = 0; code < qdm; ++code) {
        if (!g->unit_mask_[code] || in_sub[code]) continue;
        const Poly x = decode(g->field_, code, dm);
        // Relative order of x over the current subgroup.
        std::uint64_t r = 1;
        Poly xp = x;
        while (!in_sub[enc(xp)]) {
            xp = mulm(xp, x);
            ++r;
        }
        std::vector<std::uint64_t> tail(raw_gens.size(), 0);
        {
            const auto& v = nf[enc(xp)];
            for (std::size_t j = 0; j < v.size(); ++j) tail[j] = v[j];
        }
        raw_gens.push_back(x);
        rel_orders.push_back(r);
        rel_tails.push_back(std::move(tail));

        // Rebuild the subgroup closure with normal forms over all gens so far.
        std::vector<std::uint64_t> new_codes;
        new_codes.reserve(sub_codes.size() * r);
        Poly xa = one;
        for (std::uint64_t a = 0; a < r; ++a) {
            if (a > 0) xa = mulm(xa, x);
            for (std::uint64_t hcode : sub_codes) {
                Poly elem = a == 0 ? decode(g->field_, hcode, dm) : mulm(decode(g->field_, hcode, dm), xa);
                std::uint64_t ec = enc(elem);
                if (a > 0) {
                    std::vector<std::uint32_t> v = nf[hcode];
                    v.resize(raw_gens.size() - 1, 0);
                    v.push_back(static_cast<std::uint32_t>(a));
                    nf[ec] = std::move(v);
                    in_sub[ec] = 1;
                } else {
                    nf[ec].resize(raw_gens.size(), 0);
                }
                new_codes.push_back(ec);
            }
        }
        sub_codes = std::move(new_codes);
    }
    if (Int(static_cast<unsigned long>(sub_codes.size())) != g->order_)
        throw std::logic_error("unit_group: closure does not cover the unit group");

    const std::size_t k = raw_gens.size();

    if (k == 0) {
        g->orders_.clear();
        g->exponent_ = 1;
        g->dlog_flat_.clear();
        g->scalar_gen_ = g->field_->primitive_element();
        g->scalar_gen_dlog_.clear();
        return g;
    }

    // Relation lattice to invariant factors.
    IMat M(k, std::vector<Int>(k, Int(0)));
    for (std::size_t i = 0; i < k; ++i) {
        M[i][i] = Int(static_cast<unsigned long>(rel_orders[i]));
        for (std::size_t j = 0; j < rel_tails[i].size(); ++j)
            M[i][j] -= Int(static_cast<unsigned long>(rel_tails[i][j]));
    }
    SmithResult snf = smith_normal_form(M);

    // Coordinates transform by a -> a*V; generator j of the quotient is the
    // image of row j of V^{-1}.
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < k; ++j) {
        if (snf.D[j][j] == 0) throw std::logic_error("unit_group: relation lattice not of full rank");
        if (snf.D[j][j] != 1) kept.push_back(j);
    }
    const Int group_order = g->order_;
    for (std::size_t j : kept) {
        Poly gen = one;
        for (std::size_t i = 0; i < k; ++i) {
            Int e = snf.Vinv[j][i] % group_order;
            if (e < 0) e += group_order;
            if (e == 0) continue;
            gen = mulm(gen, powmod(raw_gens[i], e, pm));
        }
        g->generators_.push_back(gen);
        g->orders_.push_back(snf.D[j][j].get_ui());
    }
    g->exponent_ = g->orders_.empty() ? 1 : g->orders_.back();

    {
        Int prod = 1;
        for (std::uint64_t n : g->orders_) prod *= Int(static_cast<unsigned long>(n));
        if (prod != g->order_) throw std::logic_error("unit_group: invariant factors do not multiply to phi");
    }

    // Exact generator orders.
    for (std::size_t j = 0; j < g->generators_.size(); ++j) {
        const Int n(static_cast<unsigned long>(g->orders_[j]));
        if (powmod(g->generators_[j], n, pm) != poly_mod(one, pm))
            throw std::logic_error("unit_group: generator order too small");
        for (const auto& f : factorize(n)) {
            if (powmod(g->generators_[j], divexact(n, f.prime), pm) == poly_mod(one, pm))
                throw std::logic_error("unit_group: generator order not exact");
        }
    }

    // Complete dlog table by product enumeration over the new generators;
    // bijectivity onto the units certifies the decomposition.
    const std::size_t kk = g->generators_.size();
    g->dlog_flat_.assign(qdm * kk, kNoDlog);
    std::vector<std::uint64_t> idx(kk, 0);
    // prefix[j] = product of generators_[0..j-1]^idx[0..j-1]
    std::vector<Poly> prefix(kk + 1, poly_mod(one, pm));
    std::uint64_t filled = 0;
    while (true) {
        std::uint64_t ec = enc(prefix[kk]);
        if (!g->unit_mask_[ec] || g->dlog_flat_[ec * kk] != kNoDlog)
            throw std::logic_error("unit_group: dlog enumeration collision");
        for (std::size_t j = 0; j < kk; ++j) g->dlog_flat_[ec * kk + j] = static_cast<std::uint32_t>(idx[j]);
        ++filled;

        // Odometer with the last generator fastest; an advance at level lvl
        // bumps idx[lvl-1] by one, so the prefix updates by a single multiply.
        std::size_t lvl = kk;
        while (lvl > 0) {
            if (++idx[lvl - 1] < g->orders_[lvl - 1]) break;
            idx[lvl - 1] = 0;
            --lvl;
        }
        if (lvl == 0) break;
        prefix[lvl] = mulm(prefix[lvl], g->generators_[lvl - 1]);
        for (std::size_t l = lvl; l < kk; ++l) prefix[l + 1] = prefix[l];
    }
    if (Int(static_cast<unsigned long>(filled)) != g->order_)
        throw std::logic_error("unit_group: dlog table incomplete");

    g->scalar_gen_ = g->field_->primitive_element();
    {
        auto dv = g->dlog_code(encode(Poly::constant(g->field_, g->scalar_gen_), dm));
        if (!dv) throw std::logic_error("unit_group: scalar generator is not a unit");
        g->scalar_gen_dlog_ = *dv;
    }
    return g;
}

std::optional<std::vector<std::uint64_t>> ResidueUnitGroup::dlog_code(std::uint64_t code) const {
    if (code >= unit_mask_.size() || !unit_mask_[code]) return std::nullopt;
    const std::size_t k = orders_.size();
    std::vector<std::uint64_t> v(k);
    for (std::size_t j = 0; j < k; ++j) v[j] = dlog_flat_[code * k + j];
    return v;
}

std::optional<std::vector<std::uint64_t>> ResidueUnitGroup::dlog(const Poly& a) const {
    if (!a.field() || !a.field()->same_field(*field_)) throw std::invalid_argument("dlog: wrong field");
    Poly r = poly_mod(a, modulus_);
    return dlog_code(encode(r, code_len_));
}

DirichletCharacter make_character(GroupPtr group, std::vector<std::uint64_t> exponents) {
    if (!group) throw std::invalid_argument("make_character: null group");
    const auto& orders = group->invariant_factors();
    if (exponents.size() != orders.size()) throw std::invalid_argument("make_character: wrong exponent count");
    for (std::size_t j = 0; j < orders.size(); ++j)
        if (exponents[j] >= orders[j]) throw std::invalid_argument("make_character: exponent out of range");

    DirichletCharacter chi;
    chi.value_order = group->exponent();
    chi.exponents = std::move(exponents);
    chi.group = std::move(group);

    // Parity: restriction to the image of F_q^* is nontrivial iff chi is
    // nonzero on the fixed primitive scalar.
    const auto& gd = chi.group->scalar_generator_dlog();
    const std::uint64_t n = chi.value_order;
    unsigned __int128 acc = 0;
    for (std::size_t j = 0; j < chi.exponents.size(); ++j) {
        const std::uint64_t stride = n / chi.group->invariant_factors()[j];
        acc += static_cast<unsigned __int128>(chi.exponents[j]) * stride % n * (gd[j] % n) % n;
    }
    chi.odd = (acc % n) != 0;
    return chi;
}

std::vector<DirichletCharacter> characters(const GroupPtr& group) {
    const auto& orders = group->invariant_factors();
    std::vector<DirichletCharacter> out;
    Int total = 1;
    for (std::uint64_t n : orders) total *= Int(static_cast<unsigned long>(n));
    if (!total.fits_ulong_p()) throw BudgetExceeded("characters: group too large");
    out.reserve(total.get_ui());

    std::vector<std::uint64_t> exps(orders.size(), 0);
    while (true) {
        out.push_back(make_character(group, exps));
        std::size_t lvl = orders.size();
        while (lvl > 0) {
            if (++exps[lvl - 1] < orders[lvl - 1]) break;
            exps[lvl - 1] = 0;
            --lvl;
        }
        if (lvl == 0) break;
    }
    return out;
}

bool is_trivial(const DirichletCharacter& chi) {
    for (std::uint64_t e : chi.exponents)
        if (e != 0) return false;
    return true;
}

CharValue char_eval_code(const DirichletCharacter& chi, std::uint64_t code) {
    auto dv = chi.group->dlog_code(code);
    if (!dv) return CharValue{true, 0};
    const std::uint64_t n = chi.value_order;
    unsigned __int128 acc = 0;
    for (std::size_t j = 0; j < chi.exponents.size(); ++j) {
        const std::uint64_t stride = n / chi.group->invariant_factors()[j];
        acc += static_cast<unsigned __int128>(chi.exponents[j]) * stride % n * ((*dv)[j] % n) % n;
    }
    return CharValue{false, static_cast<std::uint64_t>(acc % n)};
}

CharValue char_eval(const DirichletCharacter& chi, const Poly& a) {
    Poly r = poly_mod(a, chi.group->modulus());
    return char_eval_code(chi, encode(r, chi.group->code_len()));
}

CyclotomicInt char_value_exact(const DirichletCharacter& chi, const Poly& a) {
    CharValue v = char_eval(chi, a);
    if (v.is_zero) return CyclotomicInt::zero(chi.value_order);
    return CyclotomicInt::root_of_unity(chi.value_order, v.k);
}

unsigned conductor_exponent(const DirichletCharacter& chi) {
    if (is_trivial(chi)) return 0;
    const ResidueUnitGroup& g = *chi.group;
    const unsigned d = *g.prime().degree();
    // Smallest j such that chi is trivial on the kernel of reduction mod
    // p^j, i.e. on all units congruent to 1 mod p^j.
    for (unsigned j = 1; j < g.level(); ++j) {
        const Poly pj = pow_n(g.prime(), j);
        bool trivial_on_kernel = true;
        // Kernel elements: 1 + p^j * b with deg b < d*(m-j).
        const unsigned blen = d * (g.level() - j);
        const std::uint64_t count = [&] {
            std::uint64_t c = 1;
            for (unsigned i = 0; i < blen; ++i) c *= g.field()->q();
            return c;
        }();
        for (std::uint64_t bc = 0; bc < count && trivial_on_kernel; ++bc) {
            Poly b = decode(g.field(), bc, blen == 0 ? 1 : blen);
            Poly u = add(Poly::one(g.field()), mul(pj, b));
            CharValue v = char_eval(chi, u);
            if (v.is_zero || v.k != 0) trivial_on_kernel = false;
        }
        if (trivial_on_kernel) return j;
    }
    return g.level();
}

}  // namespace towerforge
