#pragma once

/**
 * @file quartic.hpp
 * @brief Integer binary quartic forms: invariants, Hessian, unimodular
 * substitution, roots, irreducibility, and for totally real forms with J = 0
 * the quadratic covariant m and the conjugate resolvent pair (xi, eta).
 *
 * Forms are F(x, y) = a0 x^4 + a1 x^3 y + a2 x^2 y^2 + a3 x y^3 + a4 y^4.
 * With J = 0 the cubic X^3 - 3 I X + J has the roots 0 and +-sqrt(3I); the
 * middle root 0 gives -H/9 = m^2.
 *
 * Because eta is the complex conjugate of xi, xi^4 - eta^4 is purely imaginary,
 * so the resolvent identity is realized as xi^4 - eta^4 = i S F with
 * S = 8 sqrt(3 I |A4|); here A4 < 0, and i S is the principal square root
 * of 64 * 3 I A4.
 */

#include "errors.hpp"
#include "poly.hpp"
#include "real.hpp"

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

namespace thue1728::quartic {

struct QuarticForm {
    std::array<mpz_class, 5> a{};

    QuarticForm() = default;
    QuarticForm(mpz_class a0, mpz_class a1, mpz_class a2, mpz_class a3, mpz_class a4)
        : a{std::move(a0), std::move(a1), std::move(a2), std::move(a3), std::move(a4)} {}
    explicit QuarticForm(const std::array<mpz_class, 5>& c) : a(c) {}

    [[nodiscard]] bool is_zero() const {
        for (const auto& c : a) {
            if (c != 0) return false;
        }
        return true;
    }

    [[nodiscard]] mpz_class eval(const mpz_class& x, const mpz_class& y) const {
        mpz_class acc = a[0];
        mpz_class ypow = 1;
        // Horner in x with running powers of y
        for (std::size_t i = 1; i < 5; ++i) {
            ypow *= y;
            acc = acc * x + a[i] * ypow;
        }
        return acc;
    }

    [[nodiscard]] Real eval(const Real& x, const Real& y) const {
        const Precision p = x.precision();
        Real acc(a[0], p);
        Real ypow(1L, p);
        for (std::size_t i = 1; i < 5; ++i) {
            ypow *= y;
            acc = acc * x + Real(a[i], p) * ypow;
        }
        return acc;
    }

    [[nodiscard]] std::size_t max_bits() const {
        std::size_t b = 0;
        for (const auto& c : a) b = std::max(b, bit_length(c));
        return b;
    }

    [[nodiscard]] std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < 5; ++i) s += (i ? "," : "") + a[i].get_str();
        return s + ")";
    }

    friend bool operator==(const QuarticForm&, const QuarticForm&) = default;
};

struct InvariantSet {
    mpz_class I;
    mpz_class J;
    mpq_class Delta;
};

inline InvariantSet invariants(const QuarticForm& F) {
    const auto& [a0, a1, a2, a3, a4] = F.a;
    InvariantSet s;
    s.I = a2 * a2 - 3 * a1 * a3 + 12 * a0 * a4;
    s.J = 2 * a2 * a2 * a2 - 9 * a1 * a2 * a3 + 27 * a1 * a1 * a4 - 72 * a0 * a2 * a4 + 27 * a0 * a3 * a3;
    s.Delta = mpq_class(4 * s.I * s.I * s.I - s.J * s.J, 27);
    s.Delta.canonicalize();
    return s;
}

/// F_xx F_yy - F_xy^2 as a quartic form.
inline QuarticForm hessian(const QuarticForm& F) {
    const auto& [a0, a1, a2, a3, a4] = F.a;
    return {3 * (8 * a0 * a2 - 3 * a1 * a1), 12 * (6 * a0 * a3 - a1 * a2),
            6 * (3 * a1 * a3 + 24 * a0 * a4 - 2 * a2 * a2), 12 * (6 * a1 * a4 - a2 * a3),
            3 * (8 * a2 * a4 - 3 * a3 * a3)};
}

/// Integer matrix acting by (x, y) -> (b x + c y, d x + e y).
struct Matrix2 {
    mpz_class b, c, d, e;
    [[nodiscard]] mpz_class det() const { return b * e - c * d; }
};

namespace detail {

/// Binary form coefficients, x-degree descending.
using Binary = std::vector<mpz_class>;

inline Binary multiply(const Binary& p, const Binary& q) {
    Binary r(p.size() + q.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    }
    return r;
}

}  // namespace detail

/// F(b x + c y, d x + e y); requires det = +-1.
inline QuarticForm gl2_transform(const QuarticForm& F, const Matrix2& M) {
    const mpz_class det = M.det();
    if (det != 1 && det != -1) throw DomainError("gl2_transform: determinant " + det.get_str() + " is not +-1");
    const detail::Binary lx{M.b, M.c}, ly{M.d, M.e};
    std::array<mpz_class, 5> out{};
    for (std::size_t i = 0; i < 5; ++i) {
        detail::Binary term{F.a[i]};
        for (std::size_t j = 0; j < 4 - i; ++j) term = detail::multiply(term, lx);
        for (std::size_t j = 0; j < i; ++j) term = detail::multiply(term, ly);
        for (std::size_t j = 0; j < 5; ++j) out[j] += term[j];
    }
    return QuarticForm(out);
}

/// F(z, 1) as a polynomial in z, ascending coefficients.
inline poly::RatPoly dehomogenize(const QuarticForm& F) {
    poly::RatPoly f;
    for (std::size_t j = 0; j < 5; ++j) f.emplace_back(F.a[4 - j]);
    poly::trim(f);
    return f;
}

struct RealRoot {
    Real value;
    unsigned multiplicity = 1;
};

/// Real roots of F(z, 1) in increasing order with multiplicities.
inline std::vector<RealRoot> real_roots(const QuarticForm& F, Precision p = {}) {
    if (F.is_zero()) throw DomainError("real_roots: zero form");
    const poly::RatPoly f = dehomogenize(F);
    std::vector<RealRoot> out;
    if (poly::degree(f) < 1) return out;
    const poly::RatPoly g1 = poly::gcd(f, poly::derivative(f));
    const poly::RatPoly sf = poly::divmod(f, g1).first;
    std::vector<std::vector<poly::IntPoly>> chain;
    for (poly::RatPoly g = g1; poly::degree(g) >= 1;) {
        const poly::RatPoly gg = poly::gcd(g, poly::derivative(g));
        chain.push_back(poly::sturm_sequence(poly::divmod(g, gg).first));
        g = gg;
    }
    const Precision wp = p.at_least(F.max_bits(), 16);
    for (const auto& iv : poly::isolate_real_roots(sf)) {
        unsigned mult = 1;
        for (const auto& seq : chain) {
            if (poly::count_roots(seq, iv.lo, iv.hi) > 0) ++mult;
        }
        Real r = poly::refine_root(sf, iv, wp);
        out.push_back({Real(r), mult});
    }
    return out;
}

/// Number of real points of F = 0 on the projective line, with multiplicity (a0 = 0 contributes z = infinity).
inline unsigned real_root_count(const QuarticForm& F) {
    unsigned n = 0;
    for (const auto& r : real_roots(F, Precision{64})) n += r.multiplicity;
    const poly::RatPoly f = dehomogenize(F);
    return n + static_cast<unsigned>(4 - poly::degree(f));
}

namespace detail {

inline Complex horner(const std::vector<Real>& c, const Complex& z) {
    Complex acc(c.back(), Real(0L, z.precision()));
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + Complex(c[i], Real(0L, z.precision()));
    return acc;
}

/// Simultaneous Aberth iteration for all roots of a square-free integer polynomial.
inline std::vector<Complex> aberth(const poly::IntPoly& c, Precision p) {
    const std::size_t n = c.size() - 1;
    std::vector<Complex> z;
    if (n == 0) return z;
    std::vector<Real> coef, dcoef;
    for (const auto& x : c) coef.emplace_back(x, p);
    for (std::size_t i = 1; i < c.size(); ++i) dcoef.emplace_back(mpz_class(c[i] * static_cast<unsigned long>(i)), p);
    Real radius(1L, p);
    for (std::size_t i = 0; i < n; ++i) radius = max(radius, abs(coef[i] / coef[n]) + 1L);
    const Real two_pi = pi(p) * 2L;
    for (std::size_t k = 0; k < n; ++k) {
        const Real theta = two_pi * static_cast<long>(k) / static_cast<long>(n) + Real(0.7, p);
        z.emplace_back(radius * cos(theta), radius * sin(theta));
    }
    Real tol(1L, p);
    mpfr_div_2ui(tol.get(), tol.get(), p.bits - 12, MPFR_RNDN);
    int settled = 0;
    for (int iter = 0; iter < 5000 && settled < 3; ++iter) {
        Real worst(0L, p);
        for (std::size_t k = 0; k < n; ++k) {
            const Complex pk = horner(coef, z[k]);
            if (pk.norm2().is_zero()) continue;
            const Complex dk = n > 1 ? horner(dcoef, z[k]) : Complex(dcoef[0], Real(0L, p));
            if (dk.norm2().is_zero()) continue;
            const Complex w = pk / dk;
            Complex s(p);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                const Complex diff = z[k] - z[j];
                if (diff.norm2().is_zero()) continue;
                s += Complex(Real(1L, p), Real(0L, p)) / diff;
            }
            const Complex denom = Complex(Real(1L, p), Real(0L, p)) - w * s;
            const Complex step = denom.norm2().is_zero() ? w : w / denom;
            z[k] -= step;
            worst = max(worst, step.abs() / max(Real(1L, p), z[k].abs()));
        }
        settled = worst < tol ? settled + 1 : 0;
    }
    return z;
}

}  // namespace detail

/// Distinct complex roots of F(z, 1).
inline std::vector<Complex> complex_roots(const QuarticForm& F, Precision p = {}) {
    if (F.is_zero()) throw DomainError("complex_roots: zero form");
    const poly::RatPoly f = dehomogenize(F);
    if (poly::degree(f) < 1) return {};
    const poly::RatPoly sf = poly::divmod(f, poly::gcd(f, poly::derivative(f))).first;
    return detail::aberth(poly::primitive_integer(sf), p.at_least(4 * F.max_bits(), 64));
}

/// Irreducibility over Q. Candidate factors are read off the numerical roots and confirmed by exact division.
inline bool is_irreducible(const QuarticForm& F) {
    if (F.is_zero()) throw DomainError("is_irreducible: zero form");
    const auto& a0 = F.a[0];
    if (a0 == 0 || F.a[4] == 0) return false;
    const InvariantSet inv = invariants(F);
    if (inv.Delta == 0) return false;
    const Precision wp{static_cast<unsigned>(std::max<std::size_t>(256, 8 * F.max_bits() + 128))};
    const auto roots = complex_roots(F, wp);
    const poly::RatPoly f = dehomogenize(F);
    // a rational root r satisfies a0 r in Z; a rational quadratic factor z^2 - s z + q has a0 s, a0 q in Z
    for (const auto& r : roots) {
        const mpz_class c = (Real(a0, wp) * r.re).round();
        if (F.eval(c, a0) == 0) return false;
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            const Complex sum = roots[i] + roots[j];
            const Complex prod = roots[i] * roots[j];
            const mpz_class s = (Real(a0, wp) * sum.re).round();
            const mpz_class q = (Real(a0, wp) * prod.re).round();
            const poly::RatPoly cand{mpq_class(q), mpq_class(-s), mpq_class(a0)};
            if (poly::divmod(f, cand).second.empty()) return false;
        }
    }
    return true;
}

/// m(x, y) = A x^2 + B x y + C y^2.
struct QuadraticCovariant {
    Real A;
    Real B;
    Real C;
    Real residual;  ///< max coefficient error of m^2 + H/9, relative to H

    [[nodiscard]] Real eval(const Real& x, const Real& y) const { return A * x * x + B * x * y + C * y * y; }
};

namespace detail {

inline void require_totally_real_j0(const QuarticForm& F, const InvariantSet& inv, const char* who) {
    if (inv.J != 0) throw DomainError(std::string(who) + ": requires J = 0, got J = " + inv.J.get_str());
    if (inv.I <= 0) throw DomainError(std::string(who) + ": requires I > 0, got I = " + inv.I.get_str());
    if (real_root_count(F) != 4) throw DomainError(std::string(who) + ": F must have four real roots");
}

}  // namespace detail

/// Positive definite m with m^2 = -H/9, for J = 0, I > 0 and four real roots.
inline QuadraticCovariant covariant_m(const QuarticForm& F, Precision p = {}, double tol = 1e-9) {
    const InvariantSet inv = invariants(F);
    detail::require_totally_real_j0(F, inv, "covariant_m");
    const QuarticForm H = hessian(F);
    const Precision wp = p.at_least(2 * H.max_bits(), 64);
    std::array<Real, 5> h{Real(wp), Real(wp), Real(wp), Real(wp), Real(wp)};
    for (std::size_t i = 0; i < 5; ++i) h[i] = Real(mpq_class(-H.a[i], 9), wp);
    if (h[0].sign() <= 0) throw IdentityFailure("covariant_m: -H(1,0)/9 = " + h[0].str(20) + " is not positive");
    Real A = sqrt(h[0]);
    Real B = h[1] / (A * 2L);
    Real C = (h[2] - B * B) / (A * 2L);
    Real scale(1L, wp);
    for (const auto& x : h) scale = max(scale, abs(x));
    Real residual = max(abs(B * C * 2L - h[3]), abs(C * C - h[4])) / scale;
    if (residual.to_double() > tol) {
        throw IdentityFailure("covariant_m: m^2 + H/9 residual " + residual.str(6) + " on " + F.str());
    }
    if ((A * C * 4L - B * B).sign() <= 0) throw IdentityFailure("covariant_m: m is not positive definite on " + F.str());
    return {std::move(A), std::move(B), std::move(C), std::move(residual)};
}

/// |B| <= A <= C for the covariant m, decided exactly from the Hessian coefficients.
inline bool is_reduced(const QuarticForm& F, Precision p = {}) {
    (void)covariant_m(F, p);
    const QuarticForm H = hessian(F);
    const auto& A0 = H.a[0];
    const auto& A1 = H.a[1];
    const auto& A2 = H.a[2];
    // with h_i = -A_i/9: B^2 <= A^2 iff A1^2 <= 4 A0^2, and A <= C iff 8 A0^2 <= 4 A0 A2 - A1^2
    return A1 * A1 <= 4 * A0 * A0 && 8 * A0 * A0 <= 4 * A0 * A2 - A1 * A1;
}

/// xi = xi_x x + xi_y y and eta = conj(xi), scaled so that xi^4 - eta^4 = i * scale * F.
struct ResolventPair {
    Complex xi_x;
    Complex xi_y;
    Complex eta_x;
    Complex eta_y;
    Real scale;     ///< 8 sqrt(3 I |A4|)
    Real residual;  ///< max coefficient error of xi^4 - eta^4 - i scale F, relative to scale * max|a_i|
    mpz_class I;
    mpz_class A4;

    [[nodiscard]] Complex xi(const mpz_class& x, const mpz_class& y) const {
        const Precision p = xi_x.precision();
        return xi_x * Real(x, p) + xi_y * Real(y, p);
    }
    [[nodiscard]] Complex eta(const mpz_class& x, const mpz_class& y) const {
        const Precision p = eta_x.precision();
        return eta_x * Real(x, p) + eta_y * Real(y, p);
    }
};

namespace detail {

/// Coefficients of (alpha x + beta y)^4, x-degree descending.
inline std::array<Complex, 5> fourth_power(const Complex& alpha, const Complex& beta) {
    static constexpr std::array<long, 5> binom{1, 4, 6, 4, 1};
    const Precision p = alpha.precision();
    std::array<Complex, 5> out{Complex(p), Complex(p), Complex(p), Complex(p), Complex(p)};
    for (unsigned j = 0; j < 5; ++j) out[j] = pow(alpha, 4 - j) * pow(beta, j) * Real(binom[j], p);
    return out;
}

}  // namespace detail

/// Conjugate resolvent forms for J = 0, I > 0, four real roots, a0 != 0 and A4 != 0.
inline ResolventPair resolvent_pair(const QuarticForm& F, Precision p = {}, double tol = 1e-9) {
    const InvariantSet inv = invariants(F);
    if (inv.J != 0) throw DomainError("resolvent_pair: requires J = 0");
    if (inv.I <= 0) throw DomainError("resolvent_pair: requires I > 0");
    if (F.a[0] == 0) throw DomainError("resolvent_pair: a0 = 0; apply a unimodular shift first");
    const mpz_class A4 = hessian(F).a[4];
    if (A4 == 0) throw DomainError("resolvent_pair: A4 = 0; apply a unimodular shift first");
    const Precision wp = p.at_least(4 * F.max_bits(), 64);
    const auto roots = real_roots(F, wp);
    if (roots.size() != 4) throw DomainError("resolvent_pair: F must have four distinct real roots");

    // the pairing {ra, rb}, {rc, rd} with cross-ratio -1 splits F into (xi -+ eta)(xi -+ i eta)
    static constexpr std::array<std::array<int, 4>, 3> pairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    int best = -1;
    Real best_err(wp);
    for (int k = 0; k < 3; ++k) {
        const auto& pr = pairings[static_cast<std::size_t>(k)];
        const Real& ra = roots[static_cast<std::size_t>(pr[0])].value;
        const Real& rb = roots[static_cast<std::size_t>(pr[1])].value;
        const Real& rc = roots[static_cast<std::size_t>(pr[2])].value;
        const Real& rd = roots[static_cast<std::size_t>(pr[3])].value;
        const Real cr = (rc - ra) * (rd - rb) / ((rc - rb) * (rd - ra));
        const Real err = abs(cr + 1L);
        if (best < 0 || err < best_err) {
            best = k;
            best_err = err;
        }
    }
    const auto& pr = pairings[static_cast<std::size_t>(best)];
    const Real& ra = roots[static_cast<std::size_t>(pr[0])].value;
    const Real& rb = roots[static_cast<std::size_t>(pr[1])].value;
    const Real& rc = roots[static_cast<std::size_t>(pr[2])].value;
    const Real q = (rc - ra) / (rc - rb);
    Complex alpha(Real(1L, wp), q);
    Complex beta(-ra, -(q * rb));
    Real mu = detail::fourth_power(alpha, beta)[0].im * 2L / Real(F.a[0], wp);
    if (mu.sign() < 0) {
        alpha = alpha.conj();
        beta = beta.conj();
        mu = -mu;
    }
    if (mu.is_zero()) throw IdentityFailure("resolvent_pair: degenerate root pairing on " + F.str());
    Real scale = sqrt(Real(mpz_class(3 * inv.I * abs(A4)), wp)) * 8L;
    const Real kappa = root(scale / mu, 4);
    alpha *= kappa;
    beta *= kappa;

    const auto c = detail::fourth_power(alpha, beta);
    Real worst(0L, wp);
    Real fmax(0L, wp);
    for (std::size_t j = 0; j < 5; ++j) {
        // xi^4 - conj(xi)^4 = 2 i Im(xi^4)
        const Real diff = c[j].im * 2L - scale * Real(F.a[j], wp);
        worst = max(worst, abs(diff));
        fmax = max(fmax, abs(Real(F.a[j], wp)));
    }
    Real residual = worst / (scale * fmax);
    if (residual.to_double() >= tol) {
        throw IdentityFailure("resolvent_pair: identity residual " + residual.str(6) + " on " + F.str());
    }
    return {alpha, beta, alpha.conj(), beta.conj(), std::move(scale), std::move(residual), inv.I, A4};
}

}  // namespace thue1728::quartic
