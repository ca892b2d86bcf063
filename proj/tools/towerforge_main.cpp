#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "towerforge/as_ledger.hpp"
#include "towerforge/cache.hpp"
#include "towerforge/carlitz.hpp"
#include "towerforge/class_minus.hpp"
#include "towerforge/errors.hpp"
#include "towerforge/tower.hpp"
#include "towerforge/version.hpp"
#include "towerforge/zarith.hpp"

namespace tf = towerforge;
using nlohmann::ordered_json;

namespace {

// Exit codes: 0 success, 1 rejected certificate, 2 usage/parse error,
// 3 budget error.
constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct GlobalOpts {
    std::uint64_t q = 0;
    std::uint64_t char_p = 0;
    unsigned ext_degree = 1;
    std::string field_modulus;
    bool json = false;
    std::string cache_path;
    std::uint64_t budget = tf::kDefaultEnumBudget;
    bool verify_cache = false;
};

tf::FieldPtr make_field(const GlobalOpts& g) {
    if (g.q != 0 && g.char_p != 0) throw std::invalid_argument("give either --q or --char-p, not both");
    if (g.q != 0) {
        if (tf::is_prime(tf::Int(static_cast<unsigned long>(g.q))) == tf::Primality::composite)
            throw std::invalid_argument("--q must be prime; use --char-p/--ext-degree/--field-modulus for extensions");
        return tf::Field::make(g.q);
    }
    if (g.char_p == 0) throw std::invalid_argument("a field is required: --q or --char-p/--ext-degree");
    if (g.ext_degree == 1) return tf::Field::make(g.char_p);
    if (g.field_modulus.empty()) throw std::invalid_argument("--field-modulus is required when --ext-degree > 1");
    tf::FieldPtr fp = tf::Field::make(g.char_p);
    tf::Poly mod = tf::parse_poly(g.field_modulus, fp);
    return tf::Field::make(g.char_p, g.ext_degree, mod.coeffs());
}

std::string factored_string(const tf::FactorList& factors) {
    std::ostringstream os;
    bool first = true;
    for (const auto& f : factors) {
        if (!first) os << " * ";
        first = false;
        os << tf::dec(f.prime);
        if (f.exponent > 1) os << '^' << f.exponent;
    }
    if (first) os << "1";
    return os.str();
}

tf::CacheKey cache_key_for(const tf::FieldPtr& field, const tf::Poly& prime, unsigned m) {
    tf::CacheKey key;
    key.p = field->p();
    key.e = field->e();
    if (field->e() > 1) {
        key.modulus = tf::Poly(tf::Field::make(field->p()), field->modulus()).str();
    } else {
        key.modulus = "-";
    }
    key.prime = prime.str();
    key.m = m;
    return key;
}

int run_hminus(const GlobalOpts& g, const std::string& prime_text, unsigned m, bool factor,
               const std::string& dump_path) {
    tf::FieldPtr field = make_field(g);
    tf::Poly prime = tf::parse_poly(prime_text, field);

    std::optional<tf::CacheRecord> cached;
    std::optional<tf::ClassNumberCache> cache;
    if (!g.cache_path.empty()) {
        cache.emplace(g.cache_path);
        cached = cache->get(cache_key_for(field, prime, m));
    }

    std::optional<tf::RelClassResult> res;
    if (!cached || g.verify_cache || factor || !dump_path.empty()) {
        tf::HMinusOptions opts;
        opts.want_factorization = factor;
        opts.enum_budget = g.budget;
        res = tf::h_minus(prime, m, opts);
    }

    std::string h_minus_str = res ? tf::dec(res->h_minus) : cached->h_minus;
    std::string h_tilde_str = res ? tf::dec(res->h_tilde_minus) : cached->h_tilde_minus;

    if (cached && res && g.verify_cache) {
        if (cached->h_minus != h_minus_str || cached->h_tilde_minus != h_tilde_str) {
            std::cerr << "error: cache record does not byte-match recomputation for " << prime.str() << "^" << m
                      << "\n  cached:     h_minus=" << cached->h_minus << " h_tilde_minus=" << cached->h_tilde_minus
                      << "\n  recomputed: h_minus=" << h_minus_str << " h_tilde_minus=" << h_tilde_str << "\n";
            return kExitUsage;
        }
        std::cerr << "cache record verified\n";
    }
    if (cache && !cached && res) {
        tf::CacheRecord rec;
        rec.key = cache_key_for(field, prime, m);
        rec.h_minus = h_minus_str;
        rec.h_tilde_minus = h_tilde_str;
        rec.version = tf::kToolVersion;
        cache->put(rec);
    }
    if (cached && !res) std::cerr << "cache hit\n";

    if (!dump_path.empty()) {
        std::ofstream dump(dump_path);
        if (!dump) throw tf::IoError("cannot open dump file: " + dump_path);
        tf::dump_character_l_values(prime, m, dump, g.budget);
    }

    const tf::Int s = tf::place_counts(prime, m).s_cyclotomic;
    if (g.json) {
        ordered_json j;
        j["schema_version"] = tf::kSchemaVersion;
        j["tool"] = ordered_json{{"name", tf::kToolName}, {"version", tf::kToolVersion}};
        j["prime"] = prime.str();
        j["m"] = m;
        j["phi"] = tf::dec(tf::euler_phi(prime, m));
        j["s_cyclotomic"] = tf::dec(s);
        j["h_minus"] = h_minus_str;
        j["h_tilde_minus"] = h_tilde_str;
        if (res && factor) j["h_minus_factored"] = factored_string(res->factorization);
        j["from_cache"] = static_cast<bool>(cached && !res);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "prime = " << prime.str() << ", m = " << m << "\n";
        std::cout << "s_cyclotomic = " << tf::dec(s) << "\n";
        std::cout << "h_minus = " << h_minus_str << "\n";
        if (res && factor) std::cout << "h_minus_factored = " << factored_string(res->factorization) << "\n";
        std::cout << "h_tilde_minus = " << h_tilde_str << "\n";
    }
    return kExitOk;
}

int run_order(bool json, const std::string& p_str, const std::string& h_str) {
    tf::OrderValue ord = tf::mult_order(tf::from_dec(p_str), tf::from_dec(h_str));
    if (json) {
        ordered_json j;
        j["schema_version"] = tf::kSchemaVersion;
        j["f_ph"] = tf::dec(ord.value);
        j["method"] = ord.method == tf::OrderMethod::factored_exponent ? "factored-exponent" : "scan";
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << tf::dec(ord.value) << "\n";
    }
    return kExitOk;
}

int run_certify(const GlobalOpts& g, const std::string& prime_text, unsigned m, const std::string& h_str,
                const std::string& plus_source, const std::string& assume) {
    tf::FieldPtr field = make_field(g);
    tf::Poly prime = tf::parse_poly(prime_text, field);
    tf::CertifyOptions opts;
    opts.plus_source = tf::plus_source_from_string(plus_source);
    opts.enum_budget = g.budget;
    if (assume == "I") opts.assume = tf::AssumeCase::cond1;
    else if (assume == "II") opts.assume = tf::AssumeCase::cond2;
    else if (assume == "both") opts.assume = tf::AssumeCase::both;
    else throw std::invalid_argument("--assume-case must be I, II or both");

    tf::TowerCertificate cert = tf::certify(prime, m, tf::from_dec(h_str), opts);
    if (g.json) {
        std::cout << tf::certificate_to_json(cert).dump(2) << "\n";
    } else {
        std::cout << "prime = " << cert.prime_text << ", m = " << cert.m << ", h = " << tf::dec(cert.h) << "\n";
        if (cert.f_ph) std::cout << "f_ph = " << tf::dec(*cert.f_ph) << "\n";
        if (cert.cond1_margin)
            std::cout << "condition I margin = " << tf::dec(*cert.cond1_margin)
                      << (*cert.cond1_margin >= 0 ? " (holds)" : " (fails)") << "\n";
        if (cert.cond2_margin)
            std::cout << "condition II margin = " << tf::dec(*cert.cond2_margin)
                      << (*cert.cond2_margin >= 0 ? " (holds)" : " (fails)") << "\n";
        if (cert.h_tilde_minus_value) std::cout << "h_tilde_minus = " << tf::dec(*cert.h_tilde_minus_value) << "\n";
        std::cout << "verdict = " << tf::to_string(cert.verdict);
        if (!cert.reasons.empty()) {
            std::cout << " [";
            for (std::size_t i = 0; i < cert.reasons.size(); ++i) std::cout << (i ? ", " : "") << cert.reasons[i];
            std::cout << "]";
        }
        std::cout << "\n";
    }
    for (const std::string& r : cert.reasons)
        if (r.rfind("budget_exceeded", 0) == 0) return kExitBudget;
    return cert.verdict == tf::Verdict::rejected ? kExitRejected : kExitOk;
}

int run_search(const GlobalOpts& g, unsigned max_deg, unsigned max_m, const std::string& plus_source) {
    tf::FieldPtr field = make_field(g);
    tf::SearchOptions opts;
    opts.max_deg = max_deg;
    opts.max_m = max_m;
    opts.certify_opts.plus_source = tf::plus_source_from_string(plus_source);
    opts.certify_opts.enum_budget = g.budget;
    std::vector<tf::SearchRow> rows = tf::search(field, opts);
    if (g.json) {
        std::cout << tf::search_to_json(rows).dump(2) << "\n";
    } else {
        for (const tf::SearchRow& row : rows) {
            std::cout << "prime = " << row.prime_text << ", m = " << row.m;
            if (!row.ok) {
                std::cout << "  [error: " << row.error << "]\n";
                continue;
            }
            std::cout << ", h_tilde_minus = " << tf::dec(row.h_tilde_minus_value);
            if (row.unfactored_cofactor != 1)
                std::cout << " (unfactored cofactor " << tf::dec(row.unfactored_cofactor) << ")";
            std::cout << "\n";
            for (const tf::TowerCertificate& c : row.certificates)
                std::cout << "  h = " << tf::dec(c.h) << " -> " << tf::to_string(c.verdict) << "\n";
        }
    }
    return kExitOk;
}

int run_irreducible(const GlobalOpts& g, const std::string& poly_text) {
    tf::FieldPtr field = make_field(g);
    tf::Poly f = tf::parse_poly(poly_text, field);
    bool irr = tf::is_irreducible(f);
    if (g.json) {
        ordered_json j;
        j["poly"] = f.str();
        j["irreducible"] = irr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (irr ? "irreducible" : "reducible") << "\n";
    }
    return kExitOk;
}

int run_carlitz(const GlobalOpts& g, const std::string& f_text) {
    tf::FieldPtr field = make_field(g);
    tf::Poly f = tf::parse_poly(f_text, field);
    tf::CarlitzPolynomial rho = tf::carlitz_polynomial(f);
    if (g.json) {
        ordered_json j;
        j["f"] = f.str();
        ordered_json coeffs = ordered_json::array();
        for (const auto& c : rho.coeffs) coeffs.push_back(c.str());
        j["coeffs"] = coeffs;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "rho_f(u) with f = " << f.str() << ":\n";
        const tf::Int q(static_cast<unsigned long>(field->q()));
        for (std::size_t i = 0; i < rho.coeffs.size(); ++i)
            std::cout << "  u^(q^" << i << ") coefficient: " << rho.coeffs[i].str() << "\n";
    }
    return kExitOk;
}

int run_ledger(bool json, const std::string& p_str, const std::string& h_str, const std::string& w_str) {
    tf::DiscLedger l = tf::compositum_ledger(tf::from_dec(p_str), tf::from_dec(h_str), tf::from_dec(w_str));
    if (json) {
        ordered_json j;
        j["p"] = tf::dec(l.p);
        j["h"] = tf::dec(l.h);
        j["w"] = tf::dec(l.w);
        j["e_single"] = tf::dec(l.e_single);
        j["e_L"] = tf::dec(l.e_L);
        j["e_M"] = tf::dec(l.e_M);
        j["e_norm_ML"] = tf::dec(l.e_norm_ML);
        j["assumptions"] = l.assumptions;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "per-prime discriminant exponents (p=" << tf::dec(l.p) << ", h=" << tf::dec(l.h)
                  << ", w=" << tf::dec(l.w) << "):\n";
        std::cout << "  delta_{H_i/H}: " << tf::dec(l.e_single) << "\n";
        std::cout << "  delta_{L/H}:   " << tf::dec(l.e_L) << "\n";
        std::cout << "  delta_{M/H}:   " << tf::dec(l.e_M) << "\n";
        std::cout << "  N_{L/H}(delta_{M/L}) exponent: " << tf::dec(l.e_norm_ML)
                  << (l.e_norm_ML == 0 ? "  (M/L unramified)" : "") << "\n";
        for (const std::string& a : l.assumptions) std::cout << "  assumes: " << a << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of cyclotomic function fields and class-field-tower certification"};
    app.set_version_flag("--version", std::string(tf::kToolName) + " " + tf::kToolVersion);
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--q", g.q, "field size (prime; for extensions use --char-p/--ext-degree/--field-modulus)");
    app.add_option("--char-p", g.char_p, "field characteristic");
    app.add_option("--ext-degree", g.ext_degree, "extension degree e over the prime field");
    app.add_option("--field-modulus", g.field_modulus, "monic degree-e modulus over F_p (required when e > 1)");
    app.add_flag("--json", g.json, "emit JSON on stdout");
    app.add_option("--cache", g.cache_path, "class-number cache file");
    app.add_option("--budget", g.budget, "enumeration budget for unit groups");
    app.add_flag("--verify-cache", g.verify_cache, "recompute on cache hits and require byte equality");

    auto* hminus = app.add_subcommand("hminus", "relative class numbers h^- and h~^- of K(lambda_{p^m})");
    std::string prime_text, h_str, plus_source = "unknown", assume = "both", dump_path, p_str, w_str, poly_text;
    unsigned m = 1, max_deg = 1, max_m = 1;
    bool factor = false;
    hminus->add_option("--prime", prime_text, "irreducible p in F_q[t]")->required();
    hminus->add_option("--m", m, "level m of p^m")->required();
    hminus->add_flag("--factor", factor, "also factor h^-");
    hminus->add_option("--dump-chars", dump_path, "write per-character L-values to this file");

    auto* order = app.add_subcommand("order", "multiplicative order of p modulo h");
    order->add_option("--p", p_str, "base")->required();
    order->add_option("--h", h_str, "modulus")->required();

    auto* certify = app.add_subcommand("certify", "certify the infinite-tower criteria for (p, m, h)");
    certify->add_option("--prime", prime_text, "irreducible p in F_q[t]")->required();
    certify->add_option("--m", m, "level m")->required();
    certify->add_option("--h", h_str, "prime degree h of the unramified extension")->required();
    certify->add_option("--plus-regular", plus_source, "plus-part regularity source: external|unknown");
    certify->add_option("--assume-case", assume, "assume only one condition: I, II or both");

    auto* searchcmd = app.add_subcommand("search", "sweep irreducibles and levels, certifying class-number factors");
    searchcmd->add_option("--max-deg", max_deg, "maximal degree of p")->required();
    searchcmd->add_option("--max-m", max_m, "maximal level m")->required();
    searchcmd->add_option("--plus-regular", plus_source, "plus-part regularity source: external|unknown");

    auto* irr = app.add_subcommand("irreducible", "irreducibility test in F_q[t]");
    irr->add_option("--poly", poly_text, "polynomial")->required();

    auto* carlitz = app.add_subcommand("carlitz", "coefficients of the Carlitz polynomial rho_f");
    carlitz->add_option("--f", poly_text, "element f of F_q[t]")->required();

    auto* ledger = app.add_subcommand("ledger", "Artin-Schreier compositum discriminant ledger");
    ledger->add_option("--p", p_str, "characteristic (prime)")->required();
    ledger->add_option("--h", h_str, "number of ramified primes")->required();
    ledger->add_option("--w", w_str, "pole order of the generator (coprime to p)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*hminus) return run_hminus(g, prime_text, m, factor, dump_path);
        if (*order) return run_order(g.json, p_str, h_str);
        if (*certify) return run_certify(g, prime_text, m, h_str, plus_source, assume);
        if (*searchcmd) return run_search(g, max_deg, max_m, plus_source);
        if (*irr) return run_irreducible(g, poly_text);
        if (*carlitz) return run_carlitz(g, poly_text);
        if (*ledger) return run_ledger(g.json, p_str, h_str, w_str);
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const tf::BudgetExceeded& ex) {
        std::cerr << "budget error: " << ex.what() << "\n";
        return kExitBudget;
    } catch (const tf::ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    }
}
