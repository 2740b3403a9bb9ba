#pragma once

/**
 * @file arith.hpp
 * @brief Exact integer utilities: factorization, divisor and square-free
 * structure, integer roots, Hilbert symbols.
 *
 * Factorization is trial division followed by Brent's variant of Pollard rho.
 * Primality below 2^64 uses deterministic Miller-Rabin witnesses; above that,
 * GMP's BPSW test. Every routine acts on |n| and carries the sign separately.
 */

#include "errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace thue1728::arith {

struct PrimePower {
    mpz_class prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    mpz_class value;                  ///< the input, sign included
    std::vector<PrimePower> factors;  ///< primes of |value|, strictly increasing

    [[nodiscard]] mpz_class product() const {
        mpz_class r = 1;
        for (const auto& [p, e] : factors) {
            mpz_class pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
            r *= pe;
        }
        return r;
    }
};

struct FactorBudget {
    std::uint64_t trial_limit = 1'000'000;
    std::uint64_t rho_iterations = 1ULL << 22;  ///< per split attempt
};

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1'000'000;
        std::vector<bool> composite(limit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

inline u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

/// Nontrivial factor of composite n, or 0 if the budget ran out.
inline u64 rho_u64(u64 n, const FactorBudget& budget) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1; c < 20; ++c) {
        u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1, used = 0;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
                k += m;
                used += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1 && used < budget.rho_iterations);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

inline mpz_class rho_mpz(const mpz_class& n, const FactorBudget& budget) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1; c < 20; ++c) {
        mpz_class x = 2, y = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1, used = 0;
        const std::uint64_t m = 128;
        auto f = [&](mpz_class& v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    f(y);
                    q *= abs(x - y);
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
                used += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1 && used < budget.rho_iterations);
        if (g == n) {
            do {
                f(ys);
                mpz_class d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

inline bool fits_u64(const mpz_class& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const mpz_class& n) {
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof out, 0, 0, n.get_mpz_t());
    return out;
}

inline mpz_class from_u64(std::uint64_t v) {
    mpz_class r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
    return r;
}

}  // namespace detail

inline bool is_probable_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (detail::fits_u64(n)) return detail::is_prime_u64(detail::to_u64(n));
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

namespace detail {

/// Append the prime factors (with repetition) of n > 1 that has no factor below the trial limit.
inline void split(const mpz_class& n, std::vector<mpz_class>& out, const FactorBudget& budget) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out.push_back(n);
        return;
    }
    mpz_class root;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        split(root, out, budget);
        split(root, out, budget);
        return;
    }
    mpz_class d;
    if (fits_u64(n)) {
        d = from_u64(rho_u64(to_u64(n), budget));
    } else {
        d = rho_mpz(n, budget);
    }
    if (d == 0) throw UnfactoredError("factorization budget exceeded for " + n.get_str());
    split(d, out, budget);
    split(n / d, out, budget);
}

}  // namespace detail

/// Prime factorization of |n|. Throws DomainError for n = 0, UnfactoredError past the budget.
inline Factorization factorize(const mpz_class& n, const FactorBudget& budget = {}) {
    if (n == 0) throw DomainError("factorize: zero has no factorization");
    Factorization result{n, {}};
    mpz_class rest = abs(n);
    std::vector<mpz_class> found;
    for (std::uint32_t p : detail::small_primes()) {
        if (p > budget.trial_limit) break;
        if (mpz_cmp_ui(rest.get_mpz_t(), 1) == 0) break;
        if (mpz_cmp_ui(rest.get_mpz_t(), static_cast<unsigned long>(p) * p) < 0) break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            found.emplace_back(p);
        }
    }
    if (rest != 1) detail::split(rest, found, budget);
    std::sort(found.begin(), found.end());
    for (const auto& p : found) {
        if (!result.factors.empty() && result.factors.back().prime == p) {
            ++result.factors.back().exponent;
        } else {
            result.factors.push_back({p, 1});
        }
    }
    return result;
}

/// Number of distinct primes dividing n.
inline unsigned omega(const mpz_class& n) { return static_cast<unsigned>(factorize(n).factors.size()); }

/// n = core * cofactor^2 with core square-free.
struct SquarefreeDecomposition {
    mpz_class core;
    mpz_class cofactor;
};

inline SquarefreeDecomposition squarefree_part(const mpz_class& n) {
    if (n < 1) throw DomainError("squarefree_part: n must be positive");
    SquarefreeDecomposition d{1, 1};
    for (const auto& [p, e] : factorize(n).factors) {
        if (e % 2) d.core *= p;
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / 2);
        d.cofactor *= pe;
    }
    return d;
}

inline bool is_squarefree(const mpz_class& n) {
    if (n == 0) return false;
    const auto f = factorize(n);
    return std::all_of(f.factors.begin(), f.factors.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

/// Positive divisors of |n|, ascending.
inline std::vector<mpz_class> divisors(const mpz_class& n) {
    std::vector<mpz_class> out{1};
    for (const auto& [p, e] : factorize(n).factors) {
        const std::size_t base = out.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline mpz_class isqrt(const mpz_class& n) {
    if (n < 0) throw DomainError("isqrt of negative");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// sqrt(n) when n is a perfect square.
inline std::optional<mpz_class> exact_sqrt(const mpz_class& n) {
    if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
    return isqrt(n);
}

inline mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline mpz_class pow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

/// Exact quotient a / b when b divides a.
inline std::optional<mpz_class> exact_div(const mpz_class& a, const mpz_class& b) {
    if (b == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return std::nullopt;
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Fast perfect-square test for 128-bit values; returns the root or -1.
inline long long isqrt_exact_u128(unsigned __int128 n) {
    // quadratic residues mod 64 reject ~80% of candidates cheaply
    constexpr std::uint64_t qr64 = 0x0202021202030213ULL;
    if (!((qr64 >> static_cast<unsigned>(n & 63U)) & 1U)) return -1;
    auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? static_cast<long long>(r) : -1;
}

/// Hilbert symbol (a, b)_p for nonzero integers; p = 0 denotes the real place.
inline int hilbert_symbol(const mpz_class& a, const mpz_class& b, const mpz_class& p) {
    if (a == 0 || b == 0) throw DomainError("hilbert_symbol: zero argument");
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    auto strip = [&](mpz_class x, unsigned& v) {
        v = static_cast<unsigned>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
        return x;
    };
    unsigned alpha = 0, beta = 0;
    const mpz_class u = strip(a, alpha);
    const mpz_class w = strip(b, beta);
    if (p == 2) {
        auto mod8 = [](const mpz_class& x) {
            mpz_class r;
            mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), 8);
            return r.get_ui();
        };
        const unsigned long u8 = mod8(u), w8 = mod8(w);
        const unsigned eu = (u8 % 4 == 3), ew = (w8 % 4 == 3);
        const unsigned ou = (u8 == 3 || u8 == 5), ow = (w8 == 3 || w8 == 5);
        const unsigned e = eu * ew + alpha * ow + beta * ou;
        return (e % 2) ? -1 : 1;
    }
    int s = 1;
    mpz_class half = (p - 1) / 2;
    if ((alpha * beta) % 2 == 1 && mpz_odd_p(half.get_mpz_t())) s = -s;
    if (beta % 2 == 1) s *= mpz_legendre(u.get_mpz_t(), p.get_mpz_t());
    if (alpha % 2 == 1) s *= mpz_legendre(w.get_mpz_t(), p.get_mpz_t());
    return s;
}

/// Whether a x^2 + b y^2 + c z^2 = 0 has a nontrivial rational solution (Hasse-Minkowski).
inline bool ternary_locally_solvable(const mpz_class& a, const mpz_class& b, const mpz_class& c) {
    if (a == 0 || b == 0 || c == 0) return true;
    const mpz_class A = -a * c;
    const mpz_class B = -b * c;
    if (hilbert_symbol(A, B, 0) != 1) return false;
    std::vector<mpz_class> primes{2};
    for (const auto& pp : factorize(A).factors) primes.push_back(pp.prime);
    for (const auto& pp : factorize(B).factors) primes.push_back(pp.prime);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return std::all_of(primes.begin(), primes.end(),
                       [&](const mpz_class& p) { return hilbert_symbol(A, B, p) == 1; });
}

}  // namespace thue1728::arith
