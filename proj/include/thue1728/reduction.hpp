#pragma once

/**
 * @file reduction.hpp
 * @brief From solutions of X^2 - D Y^4 = k (k < 0) to quartic Thue equations.
 *
 * A solution lies in the class of some fundamental solution s + t sqrt(D) of
 * x^2 - D y^2 = k, and X + Y^2 sqrt(D) = (s + t sqrt D)(m + n sqrt D)^2 with
 * m + n sqrt(D) a unit. Then (x, y, z) = (t m + s n, n, Y) lies on the conic
 * -x^2 + k y^2 + t z^2 = 0. Parametrizing that conic by binary quadratics in
 * (u, v) turns the unit condition m^2 - D n^2 = +-1 into
 * F(u, v) = A1^2 - D A2^2 = (m^2 - D n^2)(P t / Q)^2 for an integer quartic F
 * with J(F) = 0.
 *
 * Every identity used along the way is checked exactly; a failure throws
 * IdentityFailure with the offending data.
 */

#include "arith.hpp"
#include "errors.hpp"
#include "pell.hpp"
#include "quadratic_ring.hpp"
#include "quartic.hpp"

#include <gmpxx.h>

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace thue1728::reduction {

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

/// s + t sqrt(D): the fundamental solution (even) or the fundamental solution times eps_D (odd).
struct ParityBranch {
    mpz_class s;
    mpz_class t;
    mpz_class D;
    mpz_class k;
    Parity parity = Parity::even;
    pell::PellSolution fundamental;
    bool norm_ok = true;  ///< s^2 - D t^2 = k; false for the odd branch when N(eps_D) = -1
};

struct BranchPair {
    ParityBranch even;
    ParityBranch odd;
};

inline BranchPair branches(const pell::PellOrbit& orbit, const quadratic::FundamentalUnit& eps) {
    if (orbit.members.empty()) throw DomainError("branches: empty orbit");
    if (eps.D != orbit.D) throw DomainError("branches: unit of the wrong ring");
    const auto& f = orbit.fundamental;
    BranchPair out;
    out.even = {f.x, f.y, orbit.D, orbit.k, Parity::even, f, true};
    const quadratic::QuadraticInteger o = f.element() * eps.element();
    out.odd = {o.a, o.b, orbit.D, orbit.k, Parity::odd, f, o.norm() == orbit.k};
    if (out.even.s * out.even.s - orbit.D * out.even.t * out.even.t != orbit.k) {
        throw IdentityFailure("branches: fundamental solution has the wrong norm");
    }
    return out;
}

/// The bound eps_D^{3/2} sqrt(|k| / 2D) on t, in log space.
inline Real branch_t_log_bound(const mpz_class& D, const mpz_class& k, const quadratic::FundamentalUnit& eps, Precision p) {
    return eps.log(p) * Real(1.5, p) + log(Real(mpz_class(abs(k)), p) / Real(mpz_class(2 * D), p)) / 2L;
}

struct TernarySolution {
    mpz_class x;
    mpz_class y;
    mpz_class z;

    friend bool operator==(const TernarySolution&, const TernarySolution&) = default;
};

/// Smallest-height solution of a x^2 + b y^2 + c z^2 = 0 with z != 0 and at most one zero coordinate.
inline TernarySolution solve_ternary(const mpz_class& a, const mpz_class& b, const mpz_class& c, const mpz_class& box) {
    if (a == 0 || b == 0 || c == 0) throw DomainError("solve_ternary: coefficients must be nonzero");
    if (arith::gcd(arith::gcd(a, b), c) != 1) throw DomainError("solve_ternary: gcd(a, b, c) must be 1");
    if (!arith::ternary_locally_solvable(a, b, c)) {
        throw NotFoundError("solve_ternary: no rational point (local obstruction)", true);
    }
    // nonnegative triples of height h in lexicographic order
    for (mpz_class h = 1; h <= box; ++h) {
        for (mpz_class x = 0; x <= h; ++x) {
            for (mpz_class y = 0; y <= h; ++y) {
                const bool top = (x == h || y == h);
                const mpz_class rest = -(a * x * x + b * y * y);
                if (top) {
                    // z ranges over [1, h]
                    auto z2 = arith::exact_div(rest, c);
                    if (!z2 || *z2 <= 0) continue;
                    auto z = arith::exact_sqrt(*z2);
                    if (!z || *z > h) continue;
                    if (x == 0 && y == 0) continue;
                    return {x, y, *z};
                }
                if (c * h * h == rest && (x != 0 || y != 0)) return {x, y, h};
            }
        }
    }
    throw NotFoundError("solve_ternary: no solution with height <= " + box.get_str() + " (box too small)", false);
}

/// Data of Walsh's lemma for a x^2 + b y^2 + c z^2 = 0, built from a base point.
struct ConicParametrization {
    mpz_class a, b, c;
    mpz_class R1, S1, T1, R2, S2, T2, z1;
    mpz_class delta;  ///< P is drawn from the divisors of delta
    TernarySolution base;

    [[nodiscard]] mpz_class q1(const mpz_class& u, const mpz_class& v) const { return R1 * u * u - 2 * S1 * u * v + T1 * v * v; }
    [[nodiscard]] mpz_class q2(const mpz_class& u, const mpz_class& v) const { return R2 * u * u - 2 * S2 * u * v + T2 * v * v; }
};

/// Throws IdentityFailure unless all four relations of the lemma hold.
inline void validate_relations(const ConicParametrization& p) {
    std::ostringstream err;
    if (p.R1 * p.T2 + p.R2 * p.T1 != 2 * p.S1 * p.S2) err << " R1T2+R2T1!=2S1S2";
    if (p.R1 * p.T2 - p.R2 * p.T1 != 0) err << " R1T2-R2T1!=0";
    if (p.S2 * p.S2 - p.R2 * p.T2 != -p.a * p.c * p.z1 * p.z1) err << " S2^2-R2T2!=-ac z1^2";
    if (p.S1 * p.S1 - p.R1 * p.T1 != -p.b * p.c * p.z1 * p.z1) err << " S1^2-R1T1!=-bc z1^2";
    if (!err.str().empty()) {
        throw IdentityFailure("conic parametrization relations fail:" + err.str() + " for (R1,S1,T1,R2,S2,T2,z1)=(" +
                              p.R1.get_str() + "," + p.S1.get_str() + "," + p.T1.get_str() + "," + p.R2.get_str() + "," +
                              p.S2.get_str() + "," + p.T2.get_str() + "," + p.z1.get_str() + ")");
    }
}

/// Parametrization through `base` (line parametrization with the sign convention P x = Q(R1 u^2 - 2 S1 u v + T1 v^2)).
inline ConicParametrization parametrize_conic(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                                              const TernarySolution& base) {
    if (a * base.x * base.x + b * base.y * base.y + c * base.z * base.z != 0) {
        throw DomainError("parametrize_conic: base is not on the conic");
    }
    const int zeros = (base.x == 0) + (base.y == 0) + (base.z == 0);
    if (zeros >= 2) throw DomainError("parametrize_conic: degenerate base point");
    ConicParametrization p;
    p.a = a;
    p.b = b;
    p.c = c;
    p.base = base;
    p.R1 = -a * base.x;
    p.S1 = b * base.y;
    p.T1 = b * base.x;
    p.R2 = a * base.y;
    p.S2 = a * base.x;
    p.T2 = -b * base.y;
    p.z1 = base.z;
    p.delta = abs(2 * a * b * c * p.z1);
    if (p.delta == 0) p.delta = abs(2 * a * b * c);
    validate_relations(p);
    return p;
}

namespace detail {

/// Positive definite A m^2 + B m n + C n^2 reduced by a unimodular change (m, n) = M (p, q).
struct ReducedBinary {
    mpz_class A, B, C;
    mpz_class m11 = 1, m12 = 0, m21 = 0, m22 = 1;
};

inline ReducedBinary gauss_reduce(mpz_class A, mpz_class B, mpz_class C) {
    ReducedBinary r{A, B, C};
    for (;;) {
        if (r.C < r.A) {
            // (m, n) = (-q, p)
            std::swap(r.A, r.C);
            r.B = -r.B;
            mpz_class n11 = r.m12, n12 = -r.m11, n21 = r.m22, n22 = -r.m21;
            r.m11 = n11;
            r.m12 = n12;
            r.m21 = n21;
            r.m22 = n22;
        }
        if (abs(r.B) <= r.A) break;
        // (m, n) = (p + j q, q) with j = round(-B / 2A)
        mpz_class num = -r.B, den = 2 * r.A, j;
        mpz_fdiv_q(j.get_mpz_t(), mpz_class(2 * num + den).get_mpz_t(), mpz_class(2 * den).get_mpz_t());
        const mpz_class newB = r.B + 2 * r.A * j;
        r.C = r.A * j * j + r.B * j + r.C;
        r.B = newB;
        r.m12 += r.m11 * j;
        r.m22 += r.m21 * j;
        if (abs(r.B) <= r.A && r.A <= r.C) break;
    }
    return r;
}

}  // namespace detail

/// Local solvability of -x^2 + k y^2 + t z^2 = 0 when s^2 - D t^2 = k with t > 0.
inline bool branch_conic_locally_solvable(const mpz_class& k, const mpz_class& s, const mpz_class& t) {
    // x^2 = k y^2 + t z^2 needs (k, t)_v = 1 everywhere. For odd p | t with p not dividing k,
    // k = s^2 mod p is a square, so only p | 2k and the real place can obstruct.
    if (t <= 0) throw DomainError("branch_conic_locally_solvable: t must be positive");
    (void)s;
    if (arith::hilbert_symbol(k, t, 0) != 1) return false;
    std::vector<mpz_class> primes{2};
    for (const auto& pp : arith::factorize(k).factors) {
        if (pp.prime != 2) primes.push_back(pp.prime);
    }
    for (const auto& p : primes) {
        if (arith::hilbert_symbol(k, t, p) != 1) return false;
    }
    return true;
}

/// A base point of -x^2 + k y^2 + t z^2 = 0 of the form (t m + s n, n, Y) with Y^2 = t m^2 + 2 s m n + t D n^2.
inline TernarySolution find_conic_base(const ParityBranch& br, const mpz_class& box = 400) {
    const mpz_class& s = br.s;
    const mpz_class& t = br.t;
    if (!branch_conic_locally_solvable(br.k, s, t)) {
        throw NotFoundError("find_conic_base: conic -x^2 + k y^2 + t z^2 = 0 has no rational point", true);
    }
    auto make = [&](const mpz_class& m, const mpz_class& n) -> std::optional<TernarySolution> {
        const mpz_class g = t * m * m + 2 * s * m * n + t * br.D * n * n;
        auto r = arith::exact_sqrt(g);
        if (!r || *r == 0) return std::nullopt;
        TernarySolution b{t * m + s * n, n, *r};
        const mpz_class d = arith::gcd(arith::gcd(b.x, b.y), b.z);
        b.x /= d;
        b.y /= d;
        b.z /= d;
        return b;
    };
    if (auto b = make(1, 0)) return *b;
    const auto red = detail::gauss_reduce(t, 2 * s, t * br.D);
    for (mpz_class h = 1; h <= box; ++h) {
        for (mpz_class p = -h; p <= h; ++p) {
            for (const mpz_class& q : {mpz_class(-h), mpz_class(h)}) {
                for (int swap = 0; swap < 2; ++swap) {
                    const mpz_class pp = swap ? q : p;
                    const mpz_class qq = swap ? p : q;
                    const mpz_class g = red.A * pp * pp + red.B * pp * qq + red.C * qq * qq;
                    if (!mpz_perfect_square_p(g.get_mpz_t())) continue;
                    if (auto b = make(red.m11 * pp + red.m12 * qq, red.m21 * pp + red.m22 * qq)) return *b;
                }
            }
        }
    }
    throw NotFoundError("find_conic_base: no base point found with reduced height <= " + box.get_str() + " (box too small)",
                        false);
}

/// h = (P t / Q)^2 with the first (P, Q) found for it.
struct Target {
    mpz_class h;
    mpz_class P;
    mpz_class Q;
};

inline std::vector<Target> make_targets(const mpz_class& delta, const mpz_class& t) {
    std::vector<Target> out;
    const auto pd = arith::divisors(delta);
    for (const auto& d : arith::divisors(delta * t)) {
        for (const auto& P : pd) {
            if (mpz_divisible_p(mpz_class(P * t).get_mpz_t(), d.get_mpz_t())) {
                out.push_back({d * d, P, P * t / d});
                break;
            }
        }
    }
    return out;
}

struct Provenance {
    std::optional<mpz_class> N;
    mpz_class D;
    mpz_class k;
    mpz_class s;
    mpz_class t;
    Parity parity = Parity::even;
};

/// I(F) against closed forms in the parametrization data.
struct InvariantCheck {
    mpz_class I;
    mpz_class closed_form;      ///< 48 k t^3 z1^2 D (R2 T2 - S2^2), asserted equal to I
    mpz_class product_form;     ///< 48 k t^3 T2 R2 z1^2 D, which equals I only when S2 = 0
    bool product_form_applicable = false;
};

struct ThueInstance {
    quartic::QuarticForm form;
    std::vector<Target> targets;
    Provenance provenance;
    ConicParametrization param;
    std::array<mpz_class, 3> A1;  ///< coefficients of u^2, uv, v^2
    std::array<mpz_class, 3> A2;
    InvariantCheck invariant;
    std::vector<std::string> notes;
};

/// F = A1^2 - D A2^2 from the branch and the parametrization, with all identities verified.
inline ThueInstance build_thue_instance(const ParityBranch& br, const ConicParametrization& prm, const mpz_class& D,
                                        const mpz_class& k) {
    if (prm.a != -1 || prm.b != k || prm.c != br.t) throw DomainError("build_thue_instance: parametrization is not for (-1, k, t)");
    if (!br.norm_ok) throw DomainError("build_thue_instance: branch has norm -k");
    validate_relations(prm);
    const mpz_class& s = br.s;
    const mpz_class& t = br.t;
    const auto& [a_, b_, c_, R1, S1, T1, R2, S2, T2, z1, delta, base] = prm;
    (void)a_, (void)b_, (void)c_, (void)delta, (void)base;
    ThueInstance inst;
    inst.form = {R1 * R1 - 2 * s * R1 * R2 + k * R2 * R2, -4 * (R1 * S1 - s * R1 * S2 - s * R2 * S1 + k * R2 * S2),
                 6 * (R1 * T1 - s * R2 * T1 - s * R1 * T2 + k * R2 * T2),
                 -4 * (S1 * T1 - s * S1 * T2 - s * S2 * T1 + k * S2 * T2), T1 * T1 - 2 * s * T1 * T2 + k * T2 * T2};
    inst.A1 = {R1 - s * R2, -2 * (S1 - s * S2), T1 - s * T2};
    inst.A2 = {R2 * t, -2 * S2 * t, T2 * t};
    inst.param = prm;
    inst.provenance = {std::nullopt, D, k, s, t, br.parity};

    // A1^2 - D A2^2 coefficient by coefficient
    std::array<mpz_class, 5> sq{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) sq[i + j] += inst.A1[i] * inst.A1[j] - D * inst.A2[i] * inst.A2[j];
    }
    if (sq != inst.form.a) {
        throw IdentityFailure("build_thue_instance: A1^2 - D A2^2 != F for " + inst.form.str() + " (D=" + D.get_str() +
                              ", k=" + k.get_str() + ", s=" + s.get_str() + ", t=" + t.get_str() + ")");
    }
    const auto inv = quartic::invariants(inst.form);
    if (inv.J != 0) throw IdentityFailure("build_thue_instance: J(F) = " + inv.J.get_str() + " on " + inst.form.str());
    if (inv.I <= 0) throw IdentityFailure("build_thue_instance: I(F) <= 0 on " + inst.form.str());
    if (inv.Delta * 27 != 4 * inv.I * inv.I * inv.I) throw IdentityFailure("build_thue_instance: 27 Delta != 4 I^3");
    if (quartic::real_root_count(inst.form) != 4) {
        throw IdentityFailure("build_thue_instance: F does not have four real roots: " + inst.form.str());
    }
    inst.invariant.I = inv.I;
    inst.invariant.closed_form = 48 * k * t * t * t * z1 * z1 * D * (R2 * T2 - S2 * S2);
    inst.invariant.product_form = 48 * k * t * t * t * T2 * R2 * z1 * z1 * D;
    inst.invariant.product_form_applicable = (S2 == 0);
    if (inst.invariant.closed_form != inv.I) {
        throw IdentityFailure("build_thue_instance: I = " + inv.I.get_str() + " but 48 k t^3 z1^2 D (R2T2 - S2^2) = " +
                              inst.invariant.closed_form.get_str());
    }
    if (!inst.invariant.product_form_applicable) {
        inst.notes.push_back("I = 48 k t^3 T2 R2 z1^2 D does not apply (S2 != 0): product form " +
                             inst.invariant.product_form.get_str() + " vs I = " + inv.I.get_str());
    }
    inst.targets = make_targets(prm.delta, t);
    return inst;
}

/// Enlarge delta so that P divides it; returns true when delta changed.
inline bool extend_delta(ThueInstance& inst, const mpz_class& P) {
    if (mpz_divisible_p(inst.param.delta.get_mpz_t(), P.get_mpz_t())) return false;
    const mpz_class old = inst.param.delta;
    inst.param.delta = arith::lcm(inst.param.delta, P);
    inst.targets = make_targets(inst.param.delta, inst.provenance.t);
    inst.notes.push_back("delta enlarged from " + old.get_str() + " to " + inst.param.delta.get_str() + " to cover P = " +
                         P.get_str());
    return true;
}

enum class Rejection { none, zero_parameter, non_integral_n, non_integral_m, not_a_unit, non_square_y };

inline const char* to_string(Rejection r) {
    switch (r) {
        case Rejection::none: return "none";
        case Rejection::zero_parameter: return "zero P or Q";
        case Rejection::non_integral_n: return "n not integral";
        case Rejection::non_integral_m: return "m not integral";
        case Rejection::not_a_unit: return "m^2 - D n^2 is not +-1";
        case Rejection::non_square_y: return "Y^2 is not a square";
    }
    return "?";
}

struct XYResult {
    std::optional<std::pair<mpz_class, mpz_class>> XY;
    Rejection reason = Rejection::none;
    mpz_class m, n;
    int norm = 0;  ///< m^2 - D n^2 when it is a unit
};

/// (u, v, P, Q) to (X, Y) through (m, n); X + Y^2 sqrt(D) = (s + t sqrt D)(m + n sqrt D)^2.
inline XYResult uv_to_XY(const ThueInstance& inst, const mpz_class& u, const mpz_class& v, const mpz_class& P,
                         const mpz_class& Q) {
    XYResult r;
    if (P == 0 || Q == 0) {
        r.reason = Rejection::zero_parameter;
        return r;
    }
    const mpz_class& s = inst.provenance.s;
    const mpz_class& t = inst.provenance.t;
    const mpz_class& D = inst.provenance.D;
    auto n = arith::exact_div(Q * inst.param.q2(u, v), P);
    if (!n) {
        r.reason = Rejection::non_integral_n;
        return r;
    }
    auto x = arith::exact_div(Q * inst.param.q1(u, v), P);
    auto m = x ? arith::exact_div(*x - s * *n, t) : std::nullopt;
    if (!m) {
        r.reason = Rejection::non_integral_m;
        return r;
    }
    r.m = *m;
    r.n = *n;
    const mpz_class nrm = r.m * r.m - D * r.n * r.n;
    if (nrm != 1 && nrm != -1) {
        r.reason = Rejection::not_a_unit;
        return r;
    }
    r.norm = static_cast<int>(nrm.get_si());
    const mpz_class sum = r.m * r.m + D * r.n * r.n;
    const mpz_class X = s * sum + 2 * D * t * r.m * r.n;
    const mpz_class Y2 = t * sum + 2 * s * r.m * r.n;
    auto Y = arith::exact_sqrt(Y2);
    if (!Y) {
        r.reason = Rejection::non_square_y;
        return r;
    }
    r.XY = std::make_pair(X, *Y);
    return r;
}

struct MNResult {
    std::optional<std::pair<mpz_class, mpz_class>> mn;
    std::string reason;
};

/// (m, n) with X + Y^2 sqrt(D) = (s + t sqrt D)(m + n sqrt D)^2, if (X, Y) belongs to this branch.
inline MNResult XY_to_mn(const mpz_class& X, const mpz_class& Y, const ParityBranch& br) {
    if (X * X - br.D * Y * Y * Y * Y != br.k) return {std::nullopt, "not a solution of X^2 - D Y^4 = k"};
    const quadratic::QuadraticInteger xi{X, Y * Y, br.D};
    const auto q = quadratic::exact_quotient(xi, {br.s, br.t, br.D});
    if (!q) return {std::nullopt, "quotient by s + t sqrt(D) is not integral"};
    const auto r = quadratic::exact_square_root(*q);
    if (!r) return {std::nullopt, "quotient is not a square in Z[sqrt(D)]"};
    return {std::make_pair(r->a, r->b), ""};
}

struct UVPreimage {
    mpz_class u, v, P, Q;
};

/// Recover (u, v, P, Q) from (m, n): the conic point (t m + s n, n, +-Y) pulled back along the parametrization.
inline std::optional<UVPreimage> mn_to_uv(const ThueInstance& inst, const mpz_class& m, const mpz_class& n) {
    const mpz_class& s = inst.provenance.s;
    const mpz_class& t = inst.provenance.t;
    const mpz_class& D = inst.provenance.D;
    const auto& prm = inst.param;
    const mpz_class x = t * m + s * n;
    const mpz_class y = n;
    const auto Y = arith::exact_sqrt(t * (m * m + D * n * n) + 2 * s * m * n);
    if (!Y) return std::nullopt;
    std::optional<UVPreimage> best;
    auto better = [](const UVPreimage& a, const UVPreimage& b) {
        if ((a.Q > 0) != (b.Q > 0)) return a.Q > 0;
        if (a.P != b.P) return a.P < b.P;
        return std::max(abs(a.u), abs(a.v)) < std::max(abs(b.u), abs(b.v));
    };
    for (const mpz_class& z : {*Y, mpz_class(-*Y)}) {
        mpz_class U = prm.base.z * x - z * prm.base.x;
        mpz_class V = prm.base.z * y - z * prm.base.y;
        if (U == 0 && V == 0) {
            // the base point itself: tangent direction
            U = prm.b * prm.base.y;
            V = -prm.a * prm.base.x;
        }
        const mpz_class g = arith::gcd(U, V);
        U /= g;
        V /= g;
        if (V < 0 || (V == 0 && U < 0)) {
            U = -U;
            V = -V;
        }
        const mpz_class q1 = prm.q1(U, V), q2 = prm.q2(U, V);
        if (q1 == 0 && q2 == 0) continue;
        mpq_class ratio = q1 != 0 ? mpq_class(x, q1) : mpq_class(y, q2);
        ratio.canonicalize();
        if (ratio * q1 != x || ratio * q2 != y || ratio == 0) continue;
        UVPreimage cand{U, V, ratio.get_den(), ratio.get_num()};
        if (!best || better(cand, *best)) best = cand;
    }
    return best;
}

enum class BranchStatus { built, excluded_norm, provably_empty, base_not_found };

inline const char* to_string(BranchStatus s) {
    switch (s) {
        case BranchStatus::built: return "built";
        case BranchStatus::excluded_norm: return "excluded (branch norm is -k)";
        case BranchStatus::provably_empty: return "no rational point on the conic";
        case BranchStatus::base_not_found: return "base point not found (box too small)";
    }
    return "?";
}

struct BranchOutcome {
    ParityBranch branch;
    BranchStatus status = BranchStatus::built;
    std::optional<ThueInstance> instance;
    std::string note;
};

struct ReductionConfig {
    mpz_class base_box = 400;
};

/// Thue instances for every class of x^2 - D y^2 = k (k < 0) and both parity branches.
inline std::vector<BranchOutcome> reduce(const mpz_class& D, const mpz_class& k, const ReductionConfig& cfg = {}) {
    quadratic::require_nonsquare(D);
    if (k >= 0) throw DomainError("reduce: requires k < 0");
    const auto eps = quadratic::fundamental_unit(D);
    std::vector<BranchOutcome> out;
    for (const auto& orbit : pell::orbits(D, k)) {
        const BranchPair bp = branches(orbit, eps);
        for (const ParityBranch* br : {&bp.even, &bp.odd}) {
            BranchOutcome o{*br, BranchStatus::built, std::nullopt, ""};
            if (br->parity == Parity::odd && eps.norm == -1) {
                // with N(eps) = -1 the class is generated by eps^2, so only the even branch carries X + Y^2 sqrt(D)
                o.status = BranchStatus::excluded_norm;
                o.note = "odd branch (" + br->s.get_str() + "," + br->t.get_str() + ") has norm " +
                         mpz_class(br->s * br->s - D * br->t * br->t).get_str();
                out.push_back(std::move(o));
                continue;
            }
            try {
                const TernarySolution base = find_conic_base(*br, cfg.base_box);
                const auto prm = parametrize_conic(-1, k, br->t, base);
                o.instance = build_thue_instance(*br, prm, D, k);
            } catch (const NotFoundError& e) {
                o.status = e.provably_empty() ? BranchStatus::provably_empty : BranchStatus::base_not_found;
                o.note = e.what();
            }
            out.push_back(std::move(o));
        }
    }
    return out;
}

/// Outcome of mapping (X, Y) into some instance and back.
struct RoundTrip {
    bool ok = false;
    std::size_t instance_index = 0;
    mpz_class m, n;
    UVPreimage pre;
    int norm = 0;
    mpz_class F_value;
    bool delta_extended = false;
    std::string failure;
};

/// XY_to_mn, then mn_to_uv, then uv_to_XY, with F(u, v) = (m^2 - D n^2)(P t / Q)^2 checked.
inline RoundTrip round_trip(std::vector<BranchOutcome>& outcomes, const mpz_class& X, const mpz_class& Y) {
    RoundTrip rt;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        auto& o = outcomes[i];
        if (!o.instance) continue;
        const auto mn = XY_to_mn(X, Y, o.branch);
        if (!mn.mn) continue;
        ThueInstance& inst = *o.instance;
        const auto pre = mn_to_uv(inst, mn.mn->first, mn.mn->second);
        if (!pre) {
            rt.failure = "no (u, v) preimage for (m, n) = (" + mn.mn->first.get_str() + "," + mn.mn->second.get_str() + ")";
            continue;
        }
        rt.delta_extended = extend_delta(inst, pre->P);
        const auto back = uv_to_XY(inst, pre->u, pre->v, pre->P, pre->Q);
        if (!back.XY || back.XY->first != X || back.XY->second != Y) {
            rt.failure = std::string("uv_to_XY did not reproduce the point: ") + to_string(back.reason);
            continue;
        }
        const mpz_class F = inst.form.eval(pre->u, pre->v);
        mpq_class h(pre->P * inst.provenance.t, pre->Q);
        h.canonicalize();
        h *= h;
        if (mpq_class(F) != h * back.norm) {
            throw IdentityFailure("round_trip: F(u, v) = " + F.get_str() + " but (m^2 - D n^2)(P t / Q)^2 = " +
                                  mpq_class(h * back.norm).get_str());
        }
        rt.ok = true;
        rt.instance_index = i;
        rt.m = mn.mn->first;
        rt.n = mn.mn->second;
        rt.pre = *pre;
        rt.norm = back.norm;
        rt.F_value = F;
        rt.failure.clear();
        return rt;
    }
    if (rt.failure.empty()) rt.failure = "(X, Y) lies in no built branch";
    return rt;
}

}  // namespace thue1728::reduction
