#include "towerforge/tower.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "towerforge/carlitz.hpp"
#include "towerforge/errors.hpp"
#include "towerforge/version.hpp"

namespace towerforge {

using nlohmann::ordered_json;

Int condition1_margin(const Int& f, const Int& h, const Int& s_cyclotomic) {
    return f * f - 4 * f - 4 * h * s_cyclotomic;
}

Int condition2_margin(const Int& h, const Int& p, const Int& s_cyclotomic) {
    return h - 4 * p * s_cyclotomic - 4;
}

ConditionMargins condition_margins(const Poly& prime, unsigned m, const Int& h, std::uint64_t rho_budget) {
    const Int p(static_cast<unsigned long>(prime.field()->p()));
    if (int_gcd(p, h) != 1) throw NotCoprime("condition_margins: gcd(p, h) != 1");
    const Int qm1(static_cast<unsigned long>(prime.field()->q() - 1));
    const Int s = place_counts(prime, m).s_cyclotomic;
    OrderValue ord = mult_order(p, h, rho_budget);

    ConditionMargins out;
    out.f_ph = ord.value;
    out.order_method = ord.method;
    out.cond1_paper = condition1_margin(ord.value, h, s);
    out.cond1_cleared = out.cond1_paper * qm1;
    out.cond2_paper = condition2_margin(h, p, s);
    out.cond2_cleared = out.cond2_paper * qm1;
    return out;
}

bool golod_shafarevich_bound(const Int& h1, const Int& h2) {
    if (h1 < 0 || h2 < 0) throw std::invalid_argument("golod_shafarevich_bound: ranks must be nonnegative");
    return 4 * h2 > h1 * h1;
}

bool schoof_rank_criterion(const Int& dp_cl, const Int& dp_units) {
    if (dp_cl < 0 || dp_units < 0) throw std::invalid_argument("schoof_rank_criterion: ranks must be nonnegative");
    if (dp_cl < 2) return false;
    const Int a = dp_cl - 2;
    return a * a >= 4 * (dp_units + 1);
}

bool schoof_ramified_criterion(const Int& rho, const Int& dp_units_sub, const Int& dp_units) {
    if (rho < 0 || dp_units_sub < 0 || dp_units < 0)
        throw std::invalid_argument("schoof_ramified_criterion: arguments must be nonnegative");
    const Int a = rho - 3 - dp_units_sub;
    if (a < 0) return false;
    return a * a >= 4 * (dp_units + 1);
}

unsigned dp_rank(const std::vector<Int>& invariant_factors, const Int& p) {
    unsigned r = 0;
    for (const Int& n : invariant_factors) {
        if (n < 1) throw std::invalid_argument("dp_rank: invariant factors must be >= 1");
        if (divides(p, n)) ++r;
    }
    return r;
}

Int unit_p_rank(const Int& s_count, const Int& q, const Int& p) {
    if (s_count < 1) throw std::invalid_argument("unit_p_rank: place count must be >= 1");
    if (q < 2 || p < 2 || !divides(p, q)) throw std::invalid_argument("unit_p_rank: p must divide q");
    return s_count - 1;
}

std::string to_string(PlusRegularSource s) {
    return s == PlusRegularSource::external_table ? "external-table" : "unknown";
}

PlusRegularSource plus_source_from_string(const std::string& s) {
    if (s == "external-table" || s == "external") return PlusRegularSource::external_table;
    if (s == "unknown") return PlusRegularSource::unknown;
    throw std::invalid_argument("unknown plus-regularity source: " + s);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::conditional: return "conditional";
        default: return "rejected";
    }
}

std::string to_string(AssumeCase a) {
    switch (a) {
        case AssumeCase::cond1: return "I";
        case AssumeCase::cond2: return "II";
        default: return "both";
    }
}

TowerCertificate certify(const Poly& prime, unsigned m, const Int& h, const CertifyOptions& opts) {
    const FieldPtr& field = prime.field();
    TowerCertificate c;
    c.p = field->p();
    c.e = field->e();
    if (field->e() > 1) c.field_modulus = Poly(FieldPtr(Field::make(field->p())), field->modulus()).str();
    c.q = Int(static_cast<unsigned long>(field->q()));
    c.prime_text = prime.str();
    c.m = m;
    c.h = h;
    c.plus_source = opts.plus_source;
    c.assume = opts.assume;
    c.tool_version = kToolVersion;

    const Int p(static_cast<unsigned long>(field->p()));
    c.phi = euler_phi(prime, m);
    PlaceCounts pc = place_counts(prime, m, h);
    c.s_cyclotomic = pc.s_cyclotomic;
    c.s_H = *pc.s_H;

    c.h_prime = is_prime(h);
    if (c.h_prime == Primality::composite) c.reasons.push_back("h_not_prime");
    c.h_neq_p = h != p;
    if (!c.h_neq_p) c.reasons.push_back("h_equals_p");
    c.gcd_h_qminus1_is_1 = int_gcd(h, c.q - 1) == 1;
    if (!c.gcd_h_qminus1_is_1) c.reasons.push_back("gcd_h_qminus1_not_1");

    bool margins_ok_1 = false, margins_ok_2 = false;
    if (int_gcd(p, h) == 1) {
        try {
            ConditionMargins cm = condition_margins(prime, m, h, opts.factor_budget);
            c.f_ph = cm.f_ph;
            c.order_method = cm.order_method;
            c.cond1_margin = cm.cond1_paper;
            c.cond1_margin_cleared = cm.cond1_cleared;
            c.cond2_margin = cm.cond2_paper;
            c.cond2_margin_cleared = cm.cond2_cleared;
            margins_ok_1 = cm.cond1_paper >= 0;
            margins_ok_2 = cm.cond2_paper >= 0;
            if (!margins_ok_1) c.reasons.push_back("condition_I_fails");
            if (!margins_ok_2) c.reasons.push_back("condition_II_fails");
        } catch (const BudgetExceeded&) {
            c.reasons.push_back("budget_exceeded_order");
        }
    } else if (c.h_neq_p) {
        c.reasons.push_back("h_not_coprime_to_p");
    }

    bool class_numbers_ok = false;
    try {
        HMinusOptions ho;
        ho.enum_budget = opts.enum_budget;
        ho.factor_budget = opts.factor_budget;
        RelClassResult res = h_minus(prime, m, ho);
        c.h_minus_value = res.h_minus;
        c.h_tilde_minus_value = res.h_tilde_minus;
        c.h_divides_h_tilde_minus = divides(h, res.h_tilde_minus);
        c.minus_regular_fact = !divides(p, res.h_tilde_minus);
        class_numbers_ok = true;
        if (!c.h_divides_h_tilde_minus) c.reasons.push_back("h_does_not_divide_h_tilde_minus");
        if (!c.minus_regular_fact) c.reasons.push_back("minus_irregular");
    } catch (const BudgetExceeded&) {
        c.reasons.push_back("budget_exceeded_unit_group");
    }

    const bool need1 = opts.assume != AssumeCase::cond2;
    const bool need2 = opts.assume != AssumeCase::cond1;
    bool all_facts = c.h_prime != Primality::composite && c.h_neq_p && c.gcd_h_qminus1_is_1 && class_numbers_ok &&
                     c.h_divides_h_tilde_minus && c.minus_regular_fact && (!need1 || margins_ok_1) &&
                     (!need2 || margins_ok_2);

    if (!all_facts) {
        c.verdict = Verdict::rejected;
    } else if (opts.assume != AssumeCase::both) {
        c.verdict = Verdict::conditional;
        c.reasons.push_back("assumed_case_" + to_string(opts.assume));
        if (c.plus_source == PlusRegularSource::unknown) c.reasons.push_back("plus_regularity_unknown");
    } else if (c.plus_source == PlusRegularSource::unknown) {
        c.verdict = Verdict::conditional;
        c.reasons.push_back("plus_regularity_unknown");
    } else {
        c.verdict = Verdict::certified;
    }
    return c;
}

namespace {

std::string opt_dec(const std::optional<Int>& v) { return v ? dec(*v) : std::string(); }

ordered_json margin_json(const std::optional<Int>& paper, const std::optional<Int>& cleared) {
    ordered_json j;
    if (paper) {
        j["paper"] = dec(*paper);
        j["cleared"] = dec(*cleared);
        j["holds"] = *paper >= 0;
    } else {
        j["paper"] = nullptr;
        j["cleared"] = nullptr;
        j["holds"] = false;
    }
    return j;
}

}  // namespace

ordered_json certificate_to_json(const TowerCertificate& c) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = ordered_json{{"name", kToolName}, {"version", c.tool_version}};
    ordered_json inputs;
    inputs["p"] = dec(Int(static_cast<unsigned long>(c.p)));
    inputs["ext_degree"] = c.e;
    inputs["field_modulus"] = c.field_modulus.empty() ? ordered_json(nullptr) : ordered_json(c.field_modulus);
    inputs["q"] = dec(c.q);
    inputs["prime"] = c.prime_text;
    inputs["m"] = c.m;
    inputs["h"] = dec(c.h);
    inputs["plus_regular_source"] = to_string(c.plus_source);
    inputs["assume_case"] = to_string(c.assume);
    j["inputs"] = inputs;

    ordered_json facts;
    facts["phi"] = dec(c.phi);
    facts["s_cyclotomic"] = dec(c.s_cyclotomic);
    facts["s_H"] = dec(c.s_H);
    facts["f_ph"] = c.f_ph ? ordered_json(dec(*c.f_ph)) : ordered_json(nullptr);
    facts["order_method"] =
        c.order_method ? ordered_json(*c.order_method == OrderMethod::factored_exponent ? "factored-exponent" : "scan")
                       : ordered_json(nullptr);
    facts["h_prime"] = c.h_prime == Primality::proven_prime    ? "proven"
                       : c.h_prime == Primality::probable_prime ? "probable"
                                                                : "composite";
    facts["h_neq_p"] = c.h_neq_p;
    facts["gcd_h_qminus1_is_1"] = c.gcd_h_qminus1_is_1;
    facts["h_minus"] = c.h_minus_value ? ordered_json(opt_dec(c.h_minus_value)) : ordered_json(nullptr);
    facts["h_tilde_minus"] = c.h_tilde_minus_value ? ordered_json(opt_dec(c.h_tilde_minus_value)) : ordered_json(nullptr);
    facts["h_divides_h_tilde_minus"] = c.h_divides_h_tilde_minus;
    facts["minus_regular"] = c.minus_regular_fact;
    facts["plus_regular_source"] = to_string(c.plus_source);
    j["facts"] = facts;

    ordered_json margins;
    margins["I"] = margin_json(c.cond1_margin, c.cond1_margin_cleared);
    margins["II"] = margin_json(c.cond2_margin, c.cond2_margin_cleared);
    j["margins"] = margins;

    j["verdict"] = to_string(c.verdict);
    j["reasons"] = c.reasons;
    return j;
}

std::vector<std::string> recheck_certificate(const ordered_json& cert) {
    std::vector<std::string> problems;
    auto fail = [&](const std::string& msg) { problems.push_back(msg); };
    try {
        const auto& inputs = cert.at("inputs");
        const auto& facts = cert.at("facts");

        const Int p = from_dec(inputs.at("p").get<std::string>());
        const unsigned e = inputs.at("ext_degree").get<unsigned>();
        const Int q = from_dec(inputs.at("q").get<std::string>());
        if (q != int_pow(p, e)) fail("q != p^e");

        FieldPtr field;
        if (e == 1) {
            field = Field::make(p.get_ui());
        } else {
            FieldPtr fp = Field::make(p.get_ui());
            Poly mod = parse_poly(inputs.at("field_modulus").get<std::string>(), fp);
            field = Field::make(p.get_ui(), e, mod.coeffs());
        }
        const Poly prime = parse_poly(inputs.at("prime").get<std::string>(), field);
        if (!is_irreducible(prime)) fail("prime is reducible");
        const unsigned m = inputs.at("m").get<unsigned>();
        const Int h = from_dec(inputs.at("h").get<std::string>());

        const Int phi = euler_phi(prime, m);
        if (phi != from_dec(facts.at("phi").get<std::string>())) fail("phi mismatch");
        const Int s = divexact(phi, q - 1);
        if (s != from_dec(facts.at("s_cyclotomic").get<std::string>())) fail("s_cyclotomic mismatch");
        if (h * s != from_dec(facts.at("s_H").get<std::string>())) fail("s_H mismatch");

        const Primality hp = is_prime(h);
        const std::string hp_str = facts.at("h_prime").get<std::string>();
        const std::string hp_expect = hp == Primality::proven_prime    ? "proven"
                                      : hp == Primality::probable_prime ? "probable"
                                                                        : "composite";
        if (hp_str != hp_expect) fail("h_prime mismatch");
        if ((h != p) != facts.at("h_neq_p").get<bool>()) fail("h_neq_p mismatch");
        if ((int_gcd(h, q - 1) == 1) != facts.at("gcd_h_qminus1_is_1").get<bool>()) fail("gcd fact mismatch");

        // Order and margins: f_ph is re-verified from scratch (p^f = 1 mod h
        // and minimality via the prime factors of f).
        bool margins1 = false, margins2 = false, have_margins = false;
        if (!facts.at("f_ph").is_null()) {
            const Int f = from_dec(facts.at("f_ph").get<std::string>());
            if (int_gcd(p, h) != 1) {
                fail("f_ph recorded but gcd(p,h) != 1");
            } else {
                if (powmod(p, f, h) != 1) fail("p^f != 1 mod h");
                for (const auto& fac : factorize(f))
                    if (powmod(p, divexact(f, fac.prime), h) == 1) fail("f_ph not minimal");
            }
            const Int m1 = condition1_margin(f, h, s);
            const Int m2 = condition2_margin(h, p, s);
            const auto& mj = cert.at("margins");
            if (m1 != from_dec(mj.at("I").at("paper").get<std::string>())) fail("condition I margin mismatch");
            if (m1 * (q - 1) != from_dec(mj.at("I").at("cleared").get<std::string>())) fail("condition I cleared mismatch");
            if (m2 != from_dec(mj.at("II").at("paper").get<std::string>())) fail("condition II margin mismatch");
            if (m2 * (q - 1) != from_dec(mj.at("II").at("cleared").get<std::string>()))
                fail("condition II cleared mismatch");
            if ((m1 >= 0) != mj.at("I").at("holds").get<bool>()) fail("condition I holds-flag mismatch");
            if ((m2 >= 0) != mj.at("II").at("holds").get<bool>()) fail("condition II holds-flag mismatch");
            margins1 = m1 >= 0;
            margins2 = m2 >= 0;
            have_margins = true;
        }

        // Class-number facts from the embedded values.
        bool class_ok = false, hdiv = false, mreg = false;
        if (!facts.at("h_minus").is_null() && !facts.at("h_tilde_minus").is_null()) {
            const Int hm = from_dec(facts.at("h_minus").get<std::string>());
            const Int ht = from_dec(facts.at("h_tilde_minus").get<std::string>());
            if (!s.fits_ulong_p()) {
                fail("s_cyclotomic too large to recheck");
            } else if (hm != int_pow(q - 1, s.get_ui() - 1) * ht) {
                fail("h_minus != (q-1)^{s-1} * h_tilde_minus");
            }
            hdiv = divides(h, ht);
            mreg = !divides(p, ht);
            if (hdiv != facts.at("h_divides_h_tilde_minus").get<bool>()) fail("h | h_tilde_minus fact mismatch");
            if (mreg != facts.at("minus_regular").get<bool>()) fail("minus_regular fact mismatch");
            class_ok = true;
        }

        // Verdict re-derivation.
        const std::string assume = inputs.at("assume_case").get<std::string>();
        const std::string plus = inputs.at("plus_regular_source").get<std::string>();
        const bool need1 = assume != "II";
        const bool need2 = assume != "I";
        const bool all_facts = hp != Primality::composite && h != p && int_gcd(h, q - 1) == 1 && class_ok && hdiv &&
                               mreg && have_margins && (!need1 || margins1) && (!need2 || margins2);
        std::string expect;
        if (!all_facts) expect = "rejected";
        else if (assume != "both" || plus == "unknown") expect = "conditional";
        else expect = "certified";
        if (cert.at("verdict").get<std::string>() != expect)
            fail("verdict " + cert.at("verdict").get<std::string>() + " does not follow from facts (expected " + expect +
                 ")");
    } catch (const std::exception& ex) {
        fail(std::string("certificate walk failed: ") + ex.what());
    }
    return problems;
}

std::vector<SearchRow> search(const FieldPtr& field, const SearchOptions& opts) {
    std::vector<SearchRow> rows;
    const Int p(static_cast<unsigned long>(field->p()));
    const Int qm1(static_cast<unsigned long>(field->q() - 1));
    for (unsigned d = 1; d <= opts.max_deg; ++d) {
        MonicEnumerator en(field, d);
        while (auto prime = en.next()) {
            if (!is_irreducible(*prime)) continue;
            for (unsigned m = 1; m <= opts.max_m; ++m) {
                SearchRow row;
                row.prime_text = prime->str();
                row.m = m;
                try {
                    HMinusOptions ho;
                    ho.enum_budget = opts.certify_opts.enum_budget;
                    ho.factor_budget = opts.certify_opts.factor_budget;
                    RelClassResult res = h_minus(*prime, m, ho);
                    row.ok = true;
                    row.h_minus_value = res.h_minus;
                    row.h_tilde_minus_value = res.h_tilde_minus;
                    PartialFactorization pf = try_factorize(res.h_tilde_minus, opts.certify_opts.factor_budget);
                    row.unfactored_cofactor = pf.cofactor;
                    if (!pf.complete()) row.error = "factorization_incomplete";
                    for (const Factor& fac : pf.factors) {
                        if (fac.prime == p) continue;
                        if (int_gcd(fac.prime, qm1) != 1) continue;
                        row.certificates.push_back(certify(*prime, m, fac.prime, opts.certify_opts));
                    }
                } catch (const BudgetExceeded& ex) {
                    row.ok = false;
                    row.error = ex.what();
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

ordered_json search_to_json(const std::vector<SearchRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const SearchRow& row : rows) {
        ordered_json j;
        j["prime"] = row.prime_text;
        j["m"] = row.m;
        j["status"] = row.ok ? "ok" : "error";
        j["error"] = row.error.empty() ? ordered_json(nullptr) : ordered_json(row.error);
        j["h_minus"] = row.ok ? ordered_json(dec(row.h_minus_value)) : ordered_json(nullptr);
        j["h_tilde_minus"] = row.ok ? ordered_json(dec(row.h_tilde_minus_value)) : ordered_json(nullptr);
        j["unfactored_cofactor"] = dec(row.unfactored_cofactor);
        ordered_json certs = ordered_json::array();
        for (const TowerCertificate& c : row.certificates) certs.push_back(certificate_to_json(c));
        j["certificates"] = certs;
        arr.push_back(std::move(j));
    }
    ordered_json out;
    out["schema_version"] = kSchemaVersion;
    out["tool"] = ordered_json{{"name", kToolName}, {"version", kToolVersion}};
    out["rows"] = arr;
    return out;
}

}  // namespace towerforge
