#pragma once

/**
 * @file thue.hpp
 * @brief Box-bounded enumeration of primitive solutions of |F(u, v)| = h and |F(u, v)| <= h,
 * their classification through the resolvent forms, gap-principle diagnostics and count bounds.
 *
 * Enumeration is exhaustive inside the box: if |F(u, v)| <= h with v != 0 then
 * |u - Re(r) v| <= |u - r v| <= (h / |a0|)^{1/4} for some root r of F(z, 1), so only
 * windows around Re(r) v need scanning. Nothing outside the box is claimed.
 */

#include "arith.hpp"
#include "errors.hpp"
#include "quartic.hpp"
#include "real.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace thue1728::thue {

enum class Mode { exact, at_most };
enum class SizeClass { unclassified, small, large };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "at_most"; }
inline const char* to_string(SizeClass c) {
    return c == SizeClass::small ? "small" : c == SizeClass::large ? "large" : "unclassified";
}

struct ThueSolution {
    mpz_class u;
    mpz_class v;
    mpz_class value;  ///< F(u, v)
    Real xi_abs{Precision{64}};
    Real eta_abs{Precision{64}};
    int related_root = -1;  ///< k with i^k the fourth root of unity nearest eta/xi
    SizeClass size_class = SizeClass::unclassified;
    Complex z{Precision{64}};  ///< 1 - (eta/xi)^4
    Real one_minus_z_abs{Precision{64}};
};

struct Enumeration {
    quartic::QuarticForm form;
    mpz_class h;
    Mode mode = Mode::exact;
    mpz_class box;
    std::vector<ThueSolution> solutions;

    [[nodiscard]] std::size_t count_v_nonzero() const {
        return static_cast<std::size_t>(
            std::count_if(solutions.begin(), solutions.end(), [](const ThueSolution& s) { return s.v != 0; }));
    }
};

/// max(1000, 100 * ceil((h / min nonzero |a0|, |a4|)^{1/4})).
inline mpz_class default_box(const quartic::QuarticForm& F, const mpz_class& h) {
    mpz_class lead = 0;
    for (const auto& c : {F.a[0], F.a[4]}) {
        if (c != 0 && (lead == 0 || abs(c) < lead)) lead = abs(c);
    }
    if (lead == 0) return 1000;
    mpz_class q = h / lead, r;
    if (h % lead != 0) ++q;
    mpz_root(r.get_mpz_t(), q.get_mpz_t(), 4);
    if (r * r * r * r < q) ++r;
    return std::max(mpz_class(1000), mpz_class(r * 100));
}

namespace detail {

inline bool accept(const mpz_class& value, const mpz_class& h, Mode mode) {
    return mode == Mode::exact ? abs(value) == h : abs(value) <= h;
}

/// Primitive (u, v) with v >= 1, |u| <= box, found by windows around the roots of F(z, 1); a0 != 0.
inline void scan_windows(const quartic::QuarticForm& F, const mpz_class& h, const mpz_class& box, Mode mode, bool swapped,
                         std::vector<std::pair<mpz_class, mpz_class>>& out, Precision p) {
    const Precision wp = p.at_least(F.max_bits() + 2 * bit_length(box), 64);
    std::vector<Real> centres;
    for (const auto& r : quartic::complex_roots(F, wp)) centres.push_back(r.re);
    // (h / |a0|)^{1/4} rounded up, plus one for the rounding of the centres
    mpz_class w;
    {
        mpz_class q = h / abs(F.a[0]);
        if (h % abs(F.a[0]) != 0) ++q;
        mpz_root(w.get_mpz_t(), q.get_mpz_t(), 4);
        if (w * w * w * w < q) ++w;
        w += 1;
    }
    mpz_class val, term, vpow;
    std::array<mpz_class, 5> c;
    for (mpz_class v = 1; v <= box; ++v) {
        // c[j] = a_j v^j so that F(u, v) = (((a0 u + c1) u + c2) u + c3) u + c4
        vpow = 1;
        for (std::size_t j = 0; j < 5; ++j) {
            c[j] = F.a[j] * vpow;
            vpow *= v;
        }
        std::vector<std::pair<mpz_class, mpz_class>> iv;
        const Real rv(v, wp);
        for (const auto& ctr : centres) {
            const mpz_class m = (ctr * rv).floor();
            mpz_class lo = std::max(mpz_class(m - w), mpz_class(-box));
            mpz_class hi = std::min(mpz_class(m + w + 1), box);
            if (lo <= hi) iv.emplace_back(lo, hi);
        }
        std::sort(iv.begin(), iv.end());
        mpz_class next = -box - 1;
        for (auto& [lo, hi] : iv) {
            if (lo < next) lo = next;
            for (mpz_class u = lo; u <= hi; ++u) {
                val = c[0];
                for (std::size_t j = 1; j < 5; ++j) {
                    val *= u;
                    val += c[j];
                }
                if (accept(val, h, mode) && arith::gcd(u, v) == 1) {
                    if (swapped) out.emplace_back(v, u);
                    else out.emplace_back(u, v);
                }
            }
            if (hi + 1 > next) next = hi + 1;
        }
    }
}

inline void canonicalize(mpz_class& u, mpz_class& v) {
    if (v < 0 || (v == 0 && u < 0)) {
        u = -u;
        v = -v;
    }
}

}  // namespace detail

/// All canonical primitive solutions with max(|u|, |v|) <= box, sorted by (v, u).
inline Enumeration enumerate_thue(const quartic::QuarticForm& F, const mpz_class& h, const mpz_class& box,
                                  Mode mode = Mode::exact, Precision p = {}) {
    if (h < 1) throw DomainError("enumerate_thue: h must be positive");
    if (box < 1) throw DomainError("enumerate_thue: box must be positive");
    if (F.is_zero()) throw DomainError("enumerate_thue: zero form");
    std::vector<std::pair<mpz_class, mpz_class>> raw;
    if (detail::accept(F.a[0], h, mode)) raw.emplace_back(1, 0);
    if (detail::accept(F.a[4], h, mode)) raw.emplace_back(0, 1);
    if (F.a[0] != 0) {
        detail::scan_windows(F, h, box, mode, false, raw, p);
    } else if (F.a[4] != 0) {
        const quartic::QuarticForm G{F.a[4], F.a[3], F.a[2], F.a[1], F.a[0]};
        detail::scan_windows(G, h, box, mode, true, raw, p);
    } else {
        for (mpz_class v = 1; v <= box; ++v) {
            for (mpz_class u = -box; u <= box; ++u) {
                if (u != 0 && arith::gcd(u, v) == 1 && detail::accept(F.eval(u, v), h, mode)) raw.emplace_back(u, v);
            }
        }
    }
    for (auto& [u, v] : raw) detail::canonicalize(u, v);
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    Enumeration e{F, h, mode, box, {}};
    for (const auto& [u, v] : raw) {
        ThueSolution s;
        s.u = u;
        s.v = v;
        s.value = F.eval(u, v);
        e.solutions.push_back(std::move(s));
    }
    return e;
}

/// Exact-mode enumerations for several right-hand sides from a single scan at the largest one.
inline std::vector<Enumeration> enumerate_thue_targets(const quartic::QuarticForm& F, const std::vector<mpz_class>& hs,
                                                       const mpz_class& box, Precision p = {}) {
    std::vector<Enumeration> out;
    if (hs.empty()) return out;
    const mpz_class hmax = *std::max_element(hs.begin(), hs.end());
    const Enumeration all = enumerate_thue(F, hmax, box, Mode::at_most, p);
    for (const auto& h : hs) {
        Enumeration e{F, h, Mode::exact, box, {}};
        for (const auto& s : all.solutions) {
            if (abs(s.value) == h) e.solutions.push_back(s);
        }
        out.push_back(std::move(e));
    }
    return out;
}

/// Resolvent pair of F, built on F∘M for a small unimodular M when a0 or A4 vanishes.
struct Resolvent {
    quartic::ResolventPair pair;  ///< forms in the coordinates of F
    mpz_class A4;                 ///< the A4 used for the normalization
};

inline Resolvent resolvent_for(const quartic::QuarticForm& F, Precision p = {}, double tol = 1e-9) {
    static const std::vector<quartic::Matrix2> shifts{{1, 0, 0, 1}, {1, 1, 0, 1}, {1, 0, 1, 1}, {1, -1, 0, 1},
                                                      {1, 0, -1, 1}, {1, 2, 0, 1}, {1, 0, 2, 1}, {1, 1, 1, 2}};
    for (const auto& M : shifts) {
        const quartic::QuarticForm G = quartic::gl2_transform(F, M);
        if (G.a[0] == 0 || quartic::hessian(G).a[4] == 0) continue;
        auto rp = quartic::resolvent_pair(G, p, tol);
        // xi_F(x, y) = xi_G(M^{-1}(x, y)); M^{-1} = [[e, -c], [-d, b]] / det
        const mpz_class det = M.det();
        const Precision wp = rp.xi_x.precision();
        const Real ip(mpz_class(M.e * det), wp), iq(mpz_class(-M.c * det), wp);
        const Real ir(mpz_class(-M.d * det), wp), is(mpz_class(M.b * det), wp);
        Complex xx = rp.xi_x * ip + rp.xi_y * ir;
        Complex xy = rp.xi_x * iq + rp.xi_y * is;
        rp.eta_x = xx.conj();
        rp.eta_y = xy.conj();
        rp.xi_x = std::move(xx);
        rp.xi_y = std::move(xy);
        return {std::move(rp), quartic::hessian(G).a[4]};
    }
    throw DomainError("resolvent_for: no small unimodular shift with a0 != 0 and A4 != 0 for " + F.str());
}

/// Fills xi, eta, related root, z and the small/large class; returns the resolvent used.
inline Resolvent classify_solutions(Enumeration& e, Precision p = {}, double tol = 1e-9) {
    Resolvent res = resolvent_for(e.form, p, tol);
    const auto& rp = res.pair;
    const Precision wp = rp.xi_x.precision();
    // large iff |xi|^4 >= 4 h^3 sqrt(3 I |A4|)
    const Real threshold = Real(mpz_class(e.h * e.h * e.h), wp) * sqrt(Real(mpz_class(3 * rp.I * abs(res.A4)), wp)) * 4L;
    for (auto& s : e.solutions) {
        const Complex xi = rp.xi(s.u, s.v);
        const Complex eta = rp.eta(s.u, s.v);
        s.xi_abs = xi.abs();
        s.eta_abs = eta.abs();
        const Complex ratio = eta / xi;
        int best = 0;
        Real best_d(wp);
        for (int k = 0; k < 4; ++k) {
            const Real d = (i_pow(k, wp) - ratio).abs();
            if (k == 0 || d < best_d) {
                best = k;
                best_d = d;
            }
        }
        s.related_root = best;
        s.z = Complex(Real(1L, wp), Real(0L, wp)) - pow(ratio, 4);
        s.one_minus_z_abs = (Complex(Real(1L, wp), Real(0L, wp)) - s.z).abs();
        const Real x4 = pow(s.xi_abs, 4);
        s.size_class = x4 >= threshold ? SizeClass::large : SizeClass::small;
    }
    return res;
}

/// |F| <= h has at most 4 floor(log(1/(2 eps) - 1/2) / log 3) + 16 primitive solutions with v != 0.
inline int thm4_count_bound(const mpq_class& eps) {
    if (eps <= 0 || eps >= mpq_class(1, 2)) throw DomainError("thm4_count_bound: requires 0 < eps < 1/2");
    // the floor term is clamped at 0: for eps > 1/3 the logarithm is negative
    const mpq_class x = (1 - eps) / (2 * eps);
    int n = 0;
    mpq_class pw = 3;
    while (pw <= x) {
        ++n;
        pw *= 3;
    }
    return 4 * n + 16;
}

/// The same bound for a real eps, with the floor computed from logarithms.
inline int thm4_count_bound(const Real& eps) {
    if (eps.sign() <= 0 || eps >= Real(0.5, eps.precision())) throw DomainError("thm4_count_bound: requires 0 < eps < 1/2");
    const Real x = (Real(1L, eps.precision()) - eps) / (eps * 2L);
    if (x < 3L) return 16;
    const mpz_class n = (log(x) / log(Real(3L, eps.precision()))).floor();
    return static_cast<int>(4 * n.get_si() + 16);
}

/// Largest eps with h <= sqrt(3) I^{1/2 - eps} / pi, if it lies in (0, 1/2).
inline std::optional<Real> thm4_epsilon(const mpz_class& I, const mpz_class& h, Precision p = {}) {
    if (I <= 1 || h < 1) return std::nullopt;
    const Real lI = log(Real(I, p));
    const Real eps = Real(0.5, p) - log(pi(p) * Real(h, p) / sqrt(Real(3L, p))) / lI;
    if (eps.sign() <= 0) return std::nullopt;
    if (eps >= Real(0.5, p)) return Real(mpq_class(1, 2) - mpq_class(1, 1000000), p);
    return eps;
}

/// 12 * 4^omega(h) primitive solutions of |F| = h.
inline mpz_class equation_count_bound(const mpz_class& h) {
    if (h < 1) throw DomainError("equation_count_bound: h must be positive");
    return 12 * arith::pow(4, arith::omega(h));
}

struct GapPair {
    mpz_class u1, v1, u2, v2;
    int root = 0;
    Real ratio{Precision{64}};  ///< |xi_2| / |xi_1|^3
    bool holds = false;         ///< ratio >= sqrt(3) / (2 pi h |A4|^{1/4})
    bool degenerate = false;    ///< u1 v2 = u2 v1
};

/// Empirical checks of the gap principle and the inequalities it is built from.
struct Diagnostics {
    Real gap_constant{Precision{64}};  ///< sqrt(3) / (2 pi h |A4|^{1/4})
    std::vector<GapPair> gap_pairs;
    std::optional<Real> best_gap_ratio;     ///< min ratio over non-degenerate pairs
    Real c62_max_deviation{Precision{64}};  ///< max | |xi eta| sqrt(3) / (H^2 |A4|)^{1/4} - 1 |
    std::optional<Real> lb2_min_ratio;      ///< min |xi1 eta2 - xi2 eta1| / (2 sqrt(I) |A4|^{1/4})
    std::optional<Real> mtheta_min_ratio;   ///< min m(u, v) / (2 sqrt(I) v^2) over v != 0
    std::optional<Real> red2_min_ratio;     ///< min |H(u, v)| / (36 I v^4) over v != 0
    bool red2_applicable = false;           ///< F is reduced
    bool unit_circle_ok = true;             ///< |1 - z| = 1 within tolerance for every solution
    bool z_below_two = true;                ///< |z| < 2 for every solution
    Real resolvent_residual{Precision{64}};
    bool resolvent_ok = true;

    /// The only gating conditions: the unit-circle identity and the resolvent residual.
    [[nodiscard]] bool gating_ok() const { return unit_circle_ok && resolvent_ok; }
};

/// Runs every diagnostic on a classified enumeration.
inline Diagnostics gap_chain_report(const Enumeration& e, const Resolvent& res, Precision p = {}, double tol = 1e-9) {
    const auto& rp = res.pair;
    const Precision wp = rp.xi_x.precision();
    Diagnostics d;
    const Real A4abs(mpz_class(abs(res.A4)), wp);
    const Real sqrtI = sqrt(Real(rp.I, wp));
    d.gap_constant = sqrt(Real(3L, wp)) / (pi(wp) * Real(e.h, wp) * root(A4abs, 4) * 2L);
    d.resolvent_residual = rp.residual;
    d.resolvent_ok = rp.residual.to_double() < tol;

    const quartic::QuarticForm H = quartic::hessian(e.form);
    // H is covariant, so the Hessian of the shifted form at M^{-1}(u, v) equals H(u, v)
    d.c62_max_deviation = Real(0L, wp);
    for (const auto& s : e.solutions) {
        const Real diff = abs(s.one_minus_z_abs - 1L);
        if (diff.to_double() > tol) d.unit_circle_ok = false;
        if (s.z.abs() >= Real(2L, wp)) d.z_below_two = false;
        const Real Hv = abs(Real(H.eval(s.u, s.v), wp));
        if (!Hv.is_zero()) {
            const Real expect = root(Hv * Hv * A4abs, 4) / sqrt(Real(3L, wp));
            d.c62_max_deviation = max(d.c62_max_deviation, abs(s.xi_abs * s.eta_abs / expect - 1L));
        }
    }

    // lb2 over all non-proportional pairs
    const Real lb2 = sqrtI * root(A4abs, 4) * 2L;
    for (std::size_t i = 0; i < e.solutions.size(); ++i) {
        for (std::size_t j = i + 1; j < e.solutions.size(); ++j) {
            const auto& a = e.solutions[i];
            const auto& b = e.solutions[j];
            if (a.u * b.v == b.u * a.v) continue;
            const Complex w = rp.xi(a.u, a.v) * rp.eta(b.u, b.v) - rp.xi(b.u, b.v) * rp.eta(a.u, a.v);
            const Real r = w.abs() / lb2;
            if (!d.lb2_min_ratio || r < *d.lb2_min_ratio) d.lb2_min_ratio = r;
        }
    }

    // mtheta and red2 need the positive definite covariant
    std::optional<quartic::QuadraticCovariant> m;
    try {
        m = quartic::covariant_m(e.form, p);
        d.red2_applicable = quartic::is_reduced(e.form, p);
    } catch (const DomainError&) {
    } catch (const IdentityFailure&) {
    }
    for (const auto& s : e.solutions) {
        if (s.v == 0) continue;
        const Real v2 = Real(mpz_class(s.v * s.v), wp);
        if (m) {
            const Real r = m->eval(Real(s.u, wp), Real(s.v, wp)) / (sqrtI * v2 * 2L);
            if (!d.mtheta_min_ratio || r < *d.mtheta_min_ratio) d.mtheta_min_ratio = r;
        }
        const Real r2 = abs(Real(H.eval(s.u, s.v), wp)) / (Real(rp.I, wp) * v2 * v2 * 36L);
        if (!d.red2_min_ratio || r2 < *d.red2_min_ratio) d.red2_min_ratio = r2;
    }

    // consecutive pairs within each related-root bucket, ordered by |xi|
    std::map<int, std::vector<const ThueSolution*>> buckets;
    for (const auto& s : e.solutions) {
        if (s.related_root >= 0) buckets[s.related_root].push_back(&s);
    }
    for (auto& [root_k, list] : buckets) {
        std::stable_sort(list.begin(), list.end(), [](const ThueSolution* a, const ThueSolution* b) { return a->xi_abs < b->xi_abs; });
        for (std::size_t i = 0; i + 1 < list.size(); ++i) {
            const auto& a = *list[i];
            const auto& b = *list[i + 1];
            GapPair g;
            g.u1 = a.u;
            g.v1 = a.v;
            g.u2 = b.u;
            g.v2 = b.v;
            g.root = root_k;
            g.degenerate = (a.u * b.v == b.u * a.v);
            g.ratio = b.xi_abs / pow(a.xi_abs, 3);
            g.holds = !g.degenerate && g.ratio >= d.gap_constant;
            if (!g.degenerate && (!d.best_gap_ratio || g.ratio < *d.best_gap_ratio)) d.best_gap_ratio = g.ratio;
            d.gap_pairs.push_back(std::move(g));
        }
    }
    return d;
}

}  // namespace thue1728::thue
