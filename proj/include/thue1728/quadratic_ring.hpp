#pragma once

/**
 * @file quadratic_ring.hpp
 * @brief Exact arithmetic in Z[sqrt(D)] and its minimal unit.
 *
 * All unit computations stay inside the order Z[sqrt(D)], never the maximal
 * order: for D = 1 mod 4 the minimal unit can differ (D = 13 gives 18 + 5 sqrt(13),
 * not the maximal-order unit (3 + sqrt(13))/2).
 */

#include "arith.hpp"
#include "errors.hpp"
#include "real.hpp"

#include <gmpxx.h>

#include <string>

namespace thue1728::quadratic {

inline void require_nonsquare(const mpz_class& D) {
    if (D < 2 || mpz_perfect_square_p(D.get_mpz_t())) {
        throw DomainError("D must be a non-square integer > 1, got " + D.get_str());
    }
}

/// a + b sqrt(D).
struct QuadraticInteger {
    mpz_class a;
    mpz_class b;
    mpz_class D;

    QuadraticInteger() : a(0), b(0), D(2) {}
    QuadraticInteger(mpz_class a_, mpz_class b_, mpz_class D_) : a(std::move(a_)), b(std::move(b_)), D(std::move(D_)) {
        require_nonsquare(D);
    }

    [[nodiscard]] mpz_class norm() const { return a * a - D * b * b; }
    [[nodiscard]] QuadraticInteger conj() const { return {a, -b, D}; }

    /// Numerical value a + b sqrt(D).
    [[nodiscard]] Real value(Precision p) const {
        const Precision q = p.at_least(std::max(bit_length(a), bit_length(b) + bit_length(D)));
        return Real(a, q) + Real(b, q) * sqrt(Real(D, q));
    }

    friend bool operator==(const QuadraticInteger& x, const QuadraticInteger& y) {
        return x.a == y.a && x.b == y.b && x.D == y.D;
    }

    [[nodiscard]] std::string str() const { return a.get_str() + (b < 0 ? "-" : "+") + mpz_class(abs(b)).get_str() + "*sqrt(" + D.get_str() + ")"; }
};

inline QuadraticInteger mul(const QuadraticInteger& x, const QuadraticInteger& y) {
    if (x.D != y.D) throw DomainError("mul: mismatched D (" + x.D.get_str() + " vs " + y.D.get_str() + ")");
    return {x.a * y.a + x.D * x.b * y.b, x.a * y.b + x.b * y.a, x.D};
}

inline QuadraticInteger operator*(const QuadraticInteger& x, const QuadraticInteger& y) { return mul(x, y); }

inline mpz_class norm(const QuadraticInteger& x) { return x.norm(); }

inline QuadraticInteger power(QuadraticInteger base, unsigned long e) {
    QuadraticInteger r{1, 0, base.D};
    while (e) {
        if (e & 1UL) r = r * base;
        base = base * base;
        e >>= 1UL;
    }
    return r;
}

/// Exact quotient x / y in Z[sqrt(D)], if it exists.
inline std::optional<QuadraticInteger> exact_quotient(const QuadraticInteger& x, const QuadraticInteger& y) {
    if (x.D != y.D) throw DomainError("exact_quotient: mismatched D");
    const mpz_class n = y.norm();
    if (n == 0) return std::nullopt;
    const QuadraticInteger num = x * y.conj();
    auto qa = arith::exact_div(num.a, n);
    auto qb = arith::exact_div(num.b, n);
    if (!qa || !qb) return std::nullopt;
    return QuadraticInteger{*qa, *qb, x.D};
}

/// Square root inside Z[sqrt(D)], if x is a perfect square there.
inline std::optional<QuadraticInteger> exact_square_root(const QuadraticInteger& x) {
    // (m + n sqrt D)^2 = (m^2 + D n^2) + 2mn sqrt D and its norm is (m^2 - D n^2)^2
    const mpz_class nrm = x.norm();
    const auto sigma = arith::exact_sqrt(abs(nrm));
    if (!sigma || (nrm < 0)) return std::nullopt;
    for (const mpz_class& s : {*sigma, mpz_class(-*sigma)}) {
        const mpz_class twice_m2 = x.a + s;
        const mpz_class twice_dn2 = x.a - s;
        if (twice_m2 < 0 || twice_dn2 < 0 || mpz_odd_p(twice_m2.get_mpz_t())) continue;
        const auto m = arith::exact_sqrt(twice_m2 / 2);
        const auto n2 = arith::exact_div(twice_dn2 / 2, x.D);
        if (!m || !n2 || mpz_odd_p(twice_dn2.get_mpz_t())) continue;
        const auto n = arith::exact_sqrt(*n2);
        if (!n) continue;
        // sign of n follows the sqrt(D) coefficient 2mn
        QuadraticInteger r{*m, (x.b < 0) ? mpz_class(-*n) : *n, x.D};
        if (r * r == x) return r;
        r.a = -r.a;
        if (r * r == x) return r;
    }
    return std::nullopt;
}

/// Minimal unit T + U sqrt(D) > 1 of Z[sqrt(D)].
struct FundamentalUnit {
    mpz_class T;
    mpz_class U;
    mpz_class D;
    int norm = 1;

    [[nodiscard]] QuadraticInteger element() const { return {T, U, D}; }
    [[nodiscard]] Real value(Precision p) const { return element().value(p); }
    [[nodiscard]] Real log(Precision p) const { return thue1728::log(value(p)); }

    friend bool operator==(const FundamentalUnit&, const FundamentalUnit&) = default;
};

/// Minimal solution of T^2 - D U^2 = +-1 from the continued fraction of sqrt(D).
inline FundamentalUnit fundamental_unit(const mpz_class& D) {
    require_nonsquare(D);
    const mpz_class a0 = arith::isqrt(D);
    mpz_class m = 0, d = 1, a = a0;
    mpz_class p_prev = 1, p = a0;
    mpz_class q_prev = 0, q = 1;
    for (;;) {
        // partial quotient recurrence for (m + sqrt D) / d
        m = d * a - m;
        d = (D - m * m) / d;
        if (d == 1) break;  // the current convergent p/q has norm +-1
        a = (a0 + m) / d;
        mpz_class p_next = a * p + p_prev;
        mpz_class q_next = a * q + q_prev;
        p_prev = std::move(p);
        p = std::move(p_next);
        q_prev = std::move(q);
        q = std::move(q_next);
    }
    const mpz_class n = p * p - D * q * q;
    if (n != 1 && n != -1) throw IdentityFailure("fundamental_unit: convergent norm " + n.get_str());
    return {p, q, D, static_cast<int>(n.get_si())};
}

/// Smallest power of the minimal unit with norm +1.
inline FundamentalUnit plus_one_unit(const FundamentalUnit& eps) {
    if (eps.norm == 1) return eps;
    const QuadraticInteger sq = power(eps.element(), 2);
    return {sq.a, sq.b, eps.D, 1};
}

inline FundamentalUnit plus_one_unit(const mpz_class& D) { return plus_one_unit(fundamental_unit(D)); }

/// Lenstra's bound on the minimal unit, in log space: sqrt(D) (log 4D + 2).
inline Real lenstra_log_upper(const mpz_class& D, Precision p) {
    if (D < 2) throw DomainError("lenstra_upper: D must be >= 2");
    const Real d(D, p);
    return sqrt(d) * (log(d * 4L) + 2L);
}

/// exp(sqrt(D) (log 4D + 2)).
inline Real lenstra_upper(const mpz_class& D, Precision p) { return exp(lenstra_log_upper(D, p)); }

}  // namespace thue1728::quadratic
