#include "towerforge/zarith.hpp"

#include <algorithm>
#include <map>

namespace towerforge {

namespace {

constexpr std::uint32_t kTrialBound = 1'000'000;

// Largest n for which the witness set {2,...,41} is a deterministic
// Miller-Rabin certificate.
const Int& deterministic_threshold() {
    static const Int t("3317044064679887385961981");
    return t;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin_round_u64(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool miller_rabin_round_mpz(const Int& n, const Int& a, const Int& d, unsigned long s) {
    Int base = a % n;
    if (base == 0) return true;
    Int x = powmod(base, d, n);
    Int nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == nm1) return true;
    }
    return false;
}

constexpr std::uint32_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

std::uint64_t rho_brent_u64(std::uint64_t n, std::uint64_t c) {
    // Brent's cycle-finding variant; returns a nontrivial factor or n.
    std::uint64_t x0 = 2 % n;
    std::uint64_t y = x0, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const std::uint64_t m = 128;
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            const std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = (mulmod_u64(y, y, n) + c) % n;
                q = mulmod_u64(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += m;
        }
        r <<= 1;
    } while (g == 1);
    if (g == n) {
        do {
            ys = (mulmod_u64(ys, ys, n) + c) % n;
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

Int rho_brent_mpz(const Int& n, unsigned long c, std::uint64_t max_iters, std::uint64_t& used) {
    Int y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) {
            y = (y * y + c) % n;
            if (++used > max_iters) return Int(0);
        }
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            const std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                q = (q * abs(x - y)) % n;
                if (++used > max_iters) return Int(0);
            }
            g = int_gcd(q, n);
            k += m;
        }
        r <<= 1;
    } while (g == 1);
    if (g == n) {
        g = 1;
        do {
            ys = (ys * ys + c) % n;
            g = int_gcd(abs(x - ys), n);
            if (++used > max_iters) return Int(0);
        } while (g == 1);
    }
    return g;
}

// Splits n (no factors below the trial bound, known composite) into primes.
// Returns false if the iteration budget ran out; *leftover then holds the
// unfactored part.
bool split_composite(const Int& n, std::map<Int, unsigned>& out, std::uint64_t& budget, Int* leftover) {
    if (n == 1) return true;
    if (is_prime(n) != Primality::composite) {
        out[n] += 1;
        return true;
    }
    if (n.fits_ulong_p() || mpz_sizeinbase(n.get_mpz_t(), 2) <= 62) {
        std::uint64_t v = mpz_get_ui(n.get_mpz_t());
        for (std::uint64_t c = 1;; ++c) {
            std::uint64_t g = rho_brent_u64(v, c);
            if (g != v && g != 1) {
                return split_composite(Int(static_cast<unsigned long>(g)), out, budget, leftover) &&
                       split_composite(Int(static_cast<unsigned long>(v / g)), out, budget, leftover);
            }
        }
    }
    for (unsigned long c = 1;; ++c) {
        std::uint64_t used = 0;
        Int g = rho_brent_mpz(n, c, budget, used);
        budget = used >= budget ? 0 : budget - used;
        if (g == 0) {
            *leftover = *leftover * n;
            return false;
        }
        if (g != n && g != 1) {
            bool a = split_composite(g, out, budget, leftover);
            bool b = split_composite(n / g, out, budget, leftover);
            return a && b;
        }
    }
}

PartialFactorization factor_impl(const Int& n, std::uint64_t rho_budget) {
    if (n < 1) throw std::invalid_argument("factorize: input must be >= 1");
    PartialFactorization result;
    result.cofactor = 1;
    if (n == 1) return result;

    std::map<Int, unsigned> found;
    Int c = n;
    // Trial division by the sieved primes. Once the cofactor fits a machine
    // word the loop runs on native integers; a primality check after each
    // extracted factor stops the scan as soon as the cofactor is prime.
    bool cofactor_prime = false;
    {
        std::size_t idx = 0;
        const auto& primes = small_primes();
        while (c > 1 && idx < primes.size() && mpz_sizeinbase(c.get_mpz_t(), 2) > 62) {
            std::uint32_t p = primes[idx];
            if (mpz_divisible_ui_p(c.get_mpz_t(), p)) {
                do {
                    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
                    found[Int(p)] += 1;
                } while (mpz_divisible_ui_p(c.get_mpz_t(), p));
                if (is_prime(c) != Primality::composite) {
                    cofactor_prime = c > 1;
                    break;
                }
            } else {
                ++idx;
            }
        }
        if (!cofactor_prime && c > 1 && mpz_sizeinbase(c.get_mpz_t(), 2) <= 62) {
            std::uint64_t v = mpz_get_ui(c.get_mpz_t());
            while (idx < primes.size()) {
                std::uint64_t p = primes[idx];
                if (p * p > v) break;
                if (v % p == 0) {
                    do {
                        v /= p;
                        found[Int(static_cast<unsigned long>(p))] += 1;
                    } while (v % p == 0);
                    if (v > 1 && is_prime(Int(static_cast<unsigned long>(v))) != Primality::composite) {
                        cofactor_prime = true;
                        break;
                    }
                } else {
                    ++idx;
                }
            }
            c = Int(static_cast<unsigned long>(v));
            if (!cofactor_prime && c > 1 && (idx >= primes.size() ? false : Int(primes[idx]) * primes[idx] > c))
                cofactor_prime = true;
        }
    }
    if (c > 1) {
        if (cofactor_prime) {
            found[c] += 1;
        } else {
            Int leftover = 1;
            if (!split_composite(c, found, rho_budget, &leftover)) result.cofactor = leftover;
        }
    }
    for (const auto& [p, e] : found) {
        Certainty cert = is_prime(p) == Primality::proven_prime ? Certainty::proven : Certainty::probable;
        result.factors.push_back(Factor{p, e, cert});
    }
    return result;
}

}  // namespace

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> sieve(kTrialBound + 1, true);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= kTrialBound; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= kTrialBound; j += i) sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

Primality is_prime(const Int& n) {
    if (n < 2) return Primality::composite;
    // Small cases settled by trial division.
    if (n < 4'000'000) {
        std::uint64_t v = mpz_get_ui(n.get_mpz_t());
        for (std::uint64_t p = 2; p * p <= v; ++p)
            if (v % p == 0) return Primality::composite;
        return Primality::proven_prime;
    }
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u})
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::composite;

    const bool deterministic = n < deterministic_threshold();
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 63) {
        std::uint64_t v = mpz_get_ui(n.get_mpz_t());
        std::uint64_t d = v - 1;
        int s = 0;
        while ((d & 1) == 0) {
            d >>= 1;
            ++s;
        }
        for (std::uint32_t a : kWitnesses)
            if (!miller_rabin_round_u64(v, a, d, s)) return Primality::composite;
        return Primality::proven_prime;
    }

    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (std::uint32_t a : kWitnesses)
        if (!miller_rabin_round_mpz(n, Int(a), d, s)) return Primality::composite;
    if (deterministic) return Primality::proven_prime;
    // Extra fixed witnesses beyond the deterministic range.
    for (std::uint32_t a : {43u, 47u, 53u, 59u, 61u, 67u, 71u, 73u, 79u, 83u, 89u, 97u})
        if (!miller_rabin_round_mpz(n, Int(a), d, s)) return Primality::composite;
    return Primality::probable_prime;
}

FactorList factorize(const Int& n) {
    PartialFactorization p = factor_impl(n, UINT64_MAX);
    if (!p.complete()) throw Error("factorize: internal budget exhausted");  // unreachable with UINT64_MAX
    return p.factors;
}

PartialFactorization try_factorize(const Int& n, std::uint64_t rho_budget) { return factor_impl(n, rho_budget); }

OrderValue mult_order(const Int& p, const Int& h, std::uint64_t rho_budget) {
    if (h < 2) throw std::invalid_argument("mult_order: modulus must be >= 2");
    if (int_gcd(p, h) != 1) throw NotCoprime("mult_order: base and modulus are not coprime");

    // Group exponent bound: h-1 when h is prime, else Euler phi from the
    // factorization of h.
    Int exponent_bound;
    PartialFactorization hfac;
    if (is_prime(h) != Primality::composite) {
        exponent_bound = h - 1;
    } else {
        hfac = try_factorize(h, rho_budget);
        if (!hfac.complete()) exponent_bound = 0;  // force the scan fallback
        else {
            exponent_bound = 1;
            for (const auto& f : hfac.factors)
                exponent_bound *= int_pow(f.prime, f.exponent - 1) * (f.prime - 1);
        }
    }

    if (exponent_bound > 0) {
        PartialFactorization efac = try_factorize(exponent_bound, rho_budget);
        if (efac.complete()) {
            Int f = exponent_bound;
            for (const auto& fac : efac.factors) {
                for (unsigned i = 0; i < fac.exponent; ++i) {
                    Int cand = divexact(f, fac.prime);
                    if (powmod(p, cand, h) == 1) f = cand;
                    else break;
                }
            }
            return OrderValue{f, OrderMethod::factored_exponent};
        }
    }

    // Fallback: direct scan with a running power.
    Int pw = p % h;
    Int f = 1;
    std::uint64_t steps = 0;
    while (pw != 1) {
        pw = (pw * p) % h;
        ++f;
        if (++steps > rho_budget) throw BudgetExceeded("mult_order: scan budget exhausted");
    }
    return OrderValue{f, OrderMethod::scan};
}

}  // namespace towerforge
