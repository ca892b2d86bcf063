#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "towerforge/class_minus.hpp"
#include "towerforge/poly.hpp"
#include "towerforge/zarith.hpp"

namespace towerforge {

// Condition (I): f^2 - 4f >= 4*h*phi/(q-1); condition (II): h >= 4*p*phi/(q-1) + 4.
// Margins are exact integers; "paper" scale divides by (q-1) (always exact
// since (q-1) | phi), "cleared" scale multiplies through by (q-1).
Int condition1_margin(const Int& f, const Int& h, const Int& s_cyclotomic);
Int condition2_margin(const Int& h, const Int& p, const Int& s_cyclotomic);

struct ConditionMargins {
    Int f_ph;
    OrderMethod order_method;
    Int cond1_paper, cond1_cleared;
    Int cond2_paper, cond2_cleared;
};

ConditionMargins condition_margins(const Poly& prime, unsigned m, const Int& h,
                                   std::uint64_t rho_budget = kDefaultRhoBudget);  // NotCoprime

// Golod-Shafarevich inequality 4*h2 > h1^2, integer arithmetic only.
bool golod_shafarevich_bound(const Int& h1, const Int& h2);

// Schoof rank criterion dp_cl >= 2 + 2*sqrt(dp_units + 1), evaluated without
// floating point.
bool schoof_rank_criterion(const Int& dp_cl, const Int& dp_units);
// Ramified-prime form rho >= 3 + dp_units_sub + 2*sqrt(dp_units + 1).
bool schoof_ramified_criterion(const Int& rho, const Int& dp_units_sub, const Int& dp_units);

// p-rank of a finite abelian group given its invariant factors.
unsigned dp_rank(const std::vector<Int>& invariant_factors, const Int& p);

// Unit p-rank |S| - 1 (torsion contributes nothing since p never divides q-1).
Int unit_p_rank(const Int& s_count, const Int& q, const Int& p);

enum class PlusRegularSource { external_table, unknown };
enum class Verdict { certified, conditional, rejected };
enum class AssumeCase { both, cond1, cond2 };

std::string to_string(PlusRegularSource s);
std::string to_string(Verdict v);
std::string to_string(AssumeCase a);
PlusRegularSource plus_source_from_string(const std::string& s);

struct CertifyOptions {
    PlusRegularSource plus_source = PlusRegularSource::unknown;
    AssumeCase assume = AssumeCase::both;
    std::uint64_t enum_budget = kDefaultEnumBudget;
    std::uint64_t factor_budget = kDefaultRhoBudget;
};

// Full audit record of a Theorem-style tower check.
struct TowerCertificate {
    // inputs
    std::uint64_t p = 0;
    unsigned e = 1;
    std::string field_modulus;  // empty for prime fields
    Int q;
    std::string prime_text;
    unsigned m = 0;
    Int h;
    PlusRegularSource plus_source = PlusRegularSource::unknown;
    AssumeCase assume = AssumeCase::both;

    // computed facts
    Int phi;
    Int s_cyclotomic;
    Int s_H;
    std::optional<Int> f_ph;
    std::optional<OrderMethod> order_method;
    std::optional<Int> cond1_margin, cond1_margin_cleared;
    std::optional<Int> cond2_margin, cond2_margin_cleared;
    Primality h_prime = Primality::composite;
    bool h_neq_p = false;
    bool gcd_h_qminus1_is_1 = false;
    std::optional<Int> h_minus_value;
    std::optional<Int> h_tilde_minus_value;
    bool h_divides_h_tilde_minus = false;
    bool minus_regular_fact = false;

    Verdict verdict = Verdict::rejected;
    std::vector<std::string> reasons;
    std::string tool_version;
};

// Never throws for mathematical failures; those become verdict = rejected
// with reason codes. Budget exhaustion is also recorded as a rejection with
// a budget reason.
TowerCertificate certify(const Poly& prime, unsigned m, const Int& h, const CertifyOptions& opts = {});

nlohmann::ordered_json certificate_to_json(const TowerCertificate& c);

// Independent checker: walks a serialized certificate, recomputes every
// arithmetic fact from the inputs (and the embedded class numbers), and
// re-derives the verdict. Returns the list of problems (empty = valid).
std::vector<std::string> recheck_certificate(const nlohmann::ordered_json& cert);

struct SearchOptions {
    unsigned max_deg = 1;
    unsigned max_m = 1;
    CertifyOptions certify_opts;
};

// One row per (prime, m) visited by the sweep.
struct SearchRow {
    std::string prime_text;
    unsigned m = 0;
    bool ok = false;          // class-number computation completed
    std::string error;        // budget or other per-item failure
    Int h_minus_value;
    Int h_tilde_minus_value;
    Int unfactored_cofactor = 1;
    std::vector<TowerCertificate> certificates;
};

// Sweeps irreducibles of degree <= max_deg and levels m <= max_m, factors
// h_tilde_minus, and certifies every prime factor h with h != p and
// gcd(h, q-1) = 1. Per-item budget errors are recorded in the row, never
// aborting the sweep.
std::vector<SearchRow> search(const FieldPtr& field, const SearchOptions& opts);

nlohmann::ordered_json search_to_json(const std::vector<SearchRow>& rows);

}  // namespace towerforge
