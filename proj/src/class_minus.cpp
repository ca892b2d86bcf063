#include "towerforge/class_minus.hpp"

#include <ostream>
#include <stdexcept>

#include "towerforge/carlitz.hpp"
#include "towerforge/errors.hpp"

namespace towerforge {

namespace {

// Exponent-token histogram accumulated into an exact cyclotomic value.
CyclotomicInt histogram_to_cyc(unsigned long n, const std::vector<Int>& hist) {
    ZPoly c(hist.begin(), hist.end());
    return CyclotomicInt::from_poly(n, std::move(c));
}

void add_degree_terms(const DirichletCharacter& chi, unsigned degree, std::vector<Int>& hist) {
    const ResidueUnitGroup& g = *chi.group;
    MonicEnumerator en(g.field(), degree);
    const bool fits = degree < g.code_len();
    while (auto a = en.next()) {
        CharValue v = fits ? char_eval_code(chi, encode(*a, g.code_len())) : char_eval(chi, *a);
        if (!v.is_zero) hist[v.k] += 1;
    }
}

}  // namespace

CyclotomicInt l_value_at_zero(const DirichletCharacter& chi) {
    if (is_trivial(chi)) throw TrivialCharacter("l_value_at_zero: character must be nontrivial");
    const ResidueUnitGroup& g = *chi.group;
    const unsigned n_degrees = g.code_len();  // d * m
    std::vector<Int> hist(chi.value_order, Int(0));
    for (unsigned i = 0; i < n_degrees; ++i) add_degree_terms(chi, i, hist);
    return histogram_to_cyc(chi.value_order, hist);
}

std::vector<CyclotomicInt> l_value_degree_partials(const DirichletCharacter& chi, unsigned max_degree) {
    std::vector<CyclotomicInt> out;
    out.reserve(max_degree + 1);
    for (unsigned i = 0; i <= max_degree; ++i) {
        std::vector<Int> hist(chi.value_order, Int(0));
        add_degree_terms(chi, i, hist);
        out.push_back(histogram_to_cyc(chi.value_order, hist));
    }
    return out;
}

RelClassResult h_minus(const Poly& prime, unsigned m, const HMinusOptions& opts) {
    GroupPtr group = unit_group(prime, m, opts.enum_budget);
    const std::vector<DirichletCharacter> chars = characters(group);

    RelClassResult res;
    res.field = prime.field();
    res.prime = prime;
    res.m = m;
    res.s_cyclotomic = place_counts(prime, m).s_cyclotomic;
    if (opts.keep_l_values) res.l_values.emplace();

    const unsigned long n = group->exponent();
    CyclotomicInt prod = CyclotomicInt::one(n);
    for (const DirichletCharacter& chi : chars) {
        if (!chi.odd) continue;
        CyclotomicInt l = l_value_at_zero(chi);
        if (res.l_values) res.l_values->push_back(LValueRecord{chi.exponents, chi.odd, l});
        prod = mul(prod, l);
    }

    // The odd product is a rational integer; NotRational here signals an
    // implementation bug and must abort, never round.
    Int r = rational_value(prod);
    res.h_minus = abs(r);
    if (res.h_minus == 0) throw std::logic_error("h_minus: odd L-value product vanished");

    const Int qm1(static_cast<unsigned long>(prime.field()->q() - 1));
    const Int rosen = int_pow(qm1, static_cast<unsigned long>(res.s_cyclotomic.get_ui() - 1));
    if (!divides(rosen, res.h_minus))
        throw std::logic_error("h_minus: place-count power does not divide the class number");
    res.h_tilde_minus = divexact(res.h_minus, rosen);

    if (opts.want_factorization) {
        PartialFactorization pf = try_factorize(res.h_minus, opts.factor_budget);
        if (!pf.complete()) throw BudgetExceeded("h_minus: factorization budget exhausted");
        res.factorization = std::move(pf.factors);
    }
    return res;
}

bool minus_regular(const Poly& prime, unsigned m, const Int& p) {
    if (p != Int(static_cast<unsigned long>(prime.field()->p())))
        throw std::invalid_argument("minus_regular: p must be the field characteristic");
    HMinusOptions opts;
    RelClassResult res = h_minus(prime, m, opts);
    return !divides(p, res.h_tilde_minus);
}

void dump_character_l_values(const Poly& prime, unsigned m, std::ostream& os, std::uint64_t enum_budget) {
    GroupPtr group = unit_group(prime, m, enum_budget);
    for (const DirichletCharacter& chi : characters(group)) {
        if (is_trivial(chi)) continue;
        CyclotomicInt l = l_value_at_zero(chi);
        bool first = true;
        for (std::uint64_t e : chi.exponents) {
            os << (first ? "" : ",") << e;
            first = false;
        }
        if (chi.exponents.empty()) os << "-";
        os << '\t' << (chi.odd ? "odd" : "even") << '\t';
        first = true;
        for (const Int& c : l.coords()) {
            os << (first ? "" : ",") << dec(c);
            first = false;
        }
        os << '\n';
    }
}

}  // namespace towerforge
