#pragma once

/**
 * @file poly.hpp
 * @brief Exact univariate polynomial tools used by the quartic form code:
 * division and gcd over Q, Sturm sequences, and real root isolation on dyadic
 * intervals, refined to a requested precision.
 */

#include "errors.hpp"
#include "real.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <vector>

namespace thue1728::poly {

/// Coefficients in ascending degree; trailing zeros trimmed.
using RatPoly = std::vector<mpq_class>;
using IntPoly = std::vector<mpz_class>;

inline void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

inline RatPoly derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

/// Quotient and remainder of a / b (b nonzero).
inline std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
    if (b.empty()) throw DomainError("poly::divmod by zero polynomial");
    trim(a);
    RatPoly q;
    const int db = degree(b);
    if (degree(a) >= db) q.assign(static_cast<std::size_t>(degree(a) - db + 1), mpq_class(0));
    while (!a.empty() && degree(a) >= db) {
        const int shift = degree(a) - db;
        const mpq_class c = a.back() / b.back();
        q[static_cast<std::size_t>(shift)] = c;
        for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= c * b[static_cast<std::size_t>(i)];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline RatPoly monic(RatPoly p) {
    trim(p);
    if (p.empty()) return p;
    const mpq_class lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Positive rational multiple with coprime integer coefficients (signs preserved).
inline IntPoly primitive_integer(const RatPoly& p) {
    mpz_class l = 1;
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    IntPoly out;
    mpz_class g = 0;
    for (const auto& c : p) {
        out.push_back(c.get_num() * (l / c.get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g > 1) {
        for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
    return out;
}

/// num / 2^exp with exp >= 0.
struct Dyadic {
    mpz_class num;
    unsigned long exp = 0;

    [[nodiscard]] mpq_class to_rational() const {
        mpq_class r(num);
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), exp);
        return r;
    }
    [[nodiscard]] Real to_real(Precision p) const {
        Real r(num, p.at_least(bit_length(num), 8));
        mpfr_div_2ui(r.get(), r.get(), exp, MPFR_RNDN);
        return r;
    }
};

inline Dyadic midpoint(const Dyadic& a, const Dyadic& b) {
    // bring both to exponent max+1
    const unsigned long e = std::max(a.exp, b.exp) + 1;
    mpz_class na = a.num, nb = b.num;
    mpz_mul_2exp(na.get_mpz_t(), na.get_mpz_t(), e - a.exp);
    mpz_mul_2exp(nb.get_mpz_t(), nb.get_mpz_t(), e - b.exp);
    Dyadic m{(na + nb) / 2, e};
    // (na + nb) is even because both were shifted by at least one bit
    return m;
}

/// Sign of p(x) at a dyadic point, exactly.
inline int sign_at(const IntPoly& p, const Dyadic& x) {
    if (p.empty()) return 0;
    // 2^{e d} p(n / 2^e) = sum c_i n^i 2^{e (d - i)}
    const std::size_t d = p.size() - 1;
    mpz_class acc = p[d];
    for (std::size_t i = d; i-- > 0;) {
        acc *= x.num;
        mpz_class term = p[i];
        mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), x.exp * (d - i));
        acc += term;
    }
    return sgn(acc);
}

/// Sturm sequence of a square-free polynomial, scaled to integer coefficients.
inline std::vector<IntPoly> sturm_sequence(const RatPoly& f) {
    std::vector<RatPoly> seq{f, derivative(f)};
    while (!seq.back().empty() && degree(seq.back()) > 0) {
        auto r = divmod(seq[seq.size() - 2], seq.back()).second;
        for (auto& c : r) c = -c;
        trim(r);
        if (r.empty()) break;
        seq.push_back(std::move(r));
    }
    std::vector<IntPoly> out;
    for (const auto& p : seq) {
        if (!p.empty()) out.push_back(primitive_integer(p));
    }
    return out;
}

inline int variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

inline int variations_at(const std::vector<IntPoly>& seq, const Dyadic& x) {
    std::vector<int> s;
    for (const auto& p : seq) s.push_back(sign_at(p, x));
    return variations(s);
}

/// Real roots in (a, b] of the square-free polynomial generating `seq`.
inline int count_roots(const std::vector<IntPoly>& seq, const Dyadic& a, const Dyadic& b) {
    return variations_at(seq, a) - variations_at(seq, b);
}

/// Power-of-two bound on the absolute values of all complex roots.
inline Dyadic root_bound(const IntPoly& p) {
    // Cauchy: 1 + max |c_i / c_d|
    mpz_class lead = abs(p.back());
    mpz_class m = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, mpz_class(abs(p[i])));
    mpz_class b = m / lead + 2;
    const std::size_t bits = mpz_sizeinbase(b.get_mpz_t(), 2);
    mpz_class pw = 1;
    mpz_mul_2exp(pw.get_mpz_t(), pw.get_mpz_t(), bits);
    return {pw, 0};
}

struct IsolatedRoot {
    Dyadic lo;  ///< root lies in (lo, hi]
    Dyadic hi;
};

/// Disjoint isolating intervals for the distinct real roots of a square-free f, left to right.
inline std::vector<IsolatedRoot> isolate_real_roots(const RatPoly& f) {
    std::vector<IsolatedRoot> out;
    if (degree(f) < 1) return out;
    const auto seq = sturm_sequence(f);
    const Dyadic bound = root_bound(seq.front());
    std::vector<std::pair<IsolatedRoot, int>> work;
    const Dyadic lo{-bound.num, 0};
    work.push_back({{lo, bound}, count_roots(seq, lo, bound)});
    while (!work.empty()) {
        auto [iv, c] = work.back();
        work.pop_back();
        if (c == 0) continue;
        if (c == 1) {
            out.push_back(iv);
            continue;
        }
        const Dyadic mid = midpoint(iv.lo, iv.hi);
        const int left = count_roots(seq, iv.lo, mid);
        work.push_back({{mid, iv.hi}, c - left});
        work.push_back({{iv.lo, mid}, left});
    }
    std::sort(out.begin(), out.end(),
              [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.hi.to_rational() < b.hi.to_rational(); });
    return out;
}

/// Shrink an isolating interval until its width is below 2^-bits relative to max(1, |endpoint|).
inline Real refine_root(const RatPoly& f, IsolatedRoot iv, Precision p) {
    const auto seq = sturm_sequence(f);
    const IntPoly& fi = seq.front();
    if (sign_at(fi, iv.hi) == 0) return iv.hi.to_real(p);
    for (;;) {
        const mpq_class width = iv.hi.to_rational() - iv.lo.to_rational();
        mpq_class scale = abs(iv.hi.to_rational());
        if (scale < 1) scale = 1;
        mpq_class tol = scale;
        mpq_div_2exp(tol.get_mpq_t(), tol.get_mpq_t(), p.bits + 4);
        if (width <= tol) break;
        const Dyadic mid = midpoint(iv.lo, iv.hi);
        const int sm = sign_at(fi, mid);
        if (sm == 0) return mid.to_real(p);
        if (count_roots(seq, iv.lo, mid) == 1) {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
    return midpoint(iv.lo, iv.hi).to_real(p);
}

inline mpq_class eval(const RatPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

}  // namespace thue1728::poly
