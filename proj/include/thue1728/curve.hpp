#pragma once

/**
 * @file curve.hpp
 * @brief Integral points on Y^2 = X^3 - N X, their decomposition into points of
 * x^2 - D y^4 = -N/D, and end-to-end checks of the count bounds.
 *
 * A point with X > 0, X^2 > N and X not a square is generic: X = D y^2 with D the
 * square-free part of X, and X^2 - N = D x^2. Everything else is exceptional and is
 * listed exactly but kept out of the bound comparisons.
 */

#include "arith.hpp"
#include "bounds.hpp"
#include "errors.hpp"
#include "reduction.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace thue1728::curve {

enum class Kind { generic, exceptional };

inline const char* to_string(Kind k) { return k == Kind::generic ? "generic" : "exceptional"; }

struct CurvePoint {
    mpz_class X;
    mpz_class Y;  ///< Y >= 0; (X, -Y) is also a point when Y > 0
    mpz_class N;
    Kind kind = Kind::generic;

    [[nodiscard]] int sign_count() const { return Y == 0 ? 1 : 2; }
    [[nodiscard]] bool on_curve() const { return Y * Y == X * X * X - N * X; }
};

struct QuarticPoint {
    mpz_class x;
    mpz_class y;
    mpz_class D;
    mpz_class k;

    [[nodiscard]] bool valid() const { return x * x - D * y * y * y * y == k; }
};

namespace detail {

/// Quadratic residue masks for fast rejection of non-squares.
struct SquareFilter {
    std::array<bool, 64> m64{};
    std::array<bool, 63> m63{};
    std::array<bool, 65> m65{};
    std::array<bool, 11> m11{};

    SquareFilter() {
        for (unsigned i = 0; i < 64; ++i) m64[(i * i) % 64] = true;
        for (unsigned i = 0; i < 63; ++i) m63[(i * i) % 63] = true;
        for (unsigned i = 0; i < 65; ++i) m65[(i * i) % 65] = true;
        for (unsigned i = 0; i < 11; ++i) m11[(i * i) % 11] = true;
    }

    [[nodiscard]] bool maybe_square(unsigned __int128 n) const {
        return m64[static_cast<unsigned>(n % 64)] && m63[static_cast<unsigned>(n % 63)] &&
               m65[static_cast<unsigned>(n % 65)] && m11[static_cast<unsigned>(n % 11)];
    }
};

inline const SquareFilter& square_filter() {
    static const SquareFilter f;
    return f;
}

}  // namespace detail

inline Kind classify(const mpz_class& X, const mpz_class& N) {
    if (X <= 0 || X * X <= N) return Kind::exceptional;
    return arith::squarefree_part(X).core == 1 ? Kind::exceptional : Kind::generic;
}

/// All integral points with X <= X_max, Y >= 0, ordered by X.
inline std::vector<CurvePoint> enumerate_curve_points(const mpz_class& N, const mpz_class& X_max) {
    if (N < 1 || !arith::is_squarefree(N)) throw DomainError("enumerate_curve_points: N must be square-free and positive");
    // X^3 must fit in 127 bits
    if (X_max > mpz_class("1000000000000")) throw DomainError("enumerate_curve_points: X_max above 10^12");
    const long long n = N.get_si();
    const long long lo = -arith::isqrt(N).get_si();
    const long long hi = X_max.get_si();
    const auto& filter = detail::square_filter();
    std::vector<CurvePoint> out;
    for (long long X = lo; X <= hi; ++X) {
        const __int128 x = X;
        const __int128 f = x * x * x - static_cast<__int128>(n) * x;
        if (f < 0) continue;
        const auto uf = static_cast<unsigned __int128>(f);
        if (!filter.maybe_square(uf)) continue;
        const long long r = arith::isqrt_exact_u128(uf);
        if (r < 0) continue;
        CurvePoint p{mpz_class(static_cast<long>(X)), mpz_class(static_cast<long>(r)), N, Kind::generic};
        p.kind = classify(p.X, N);
        out.push_back(std::move(p));
    }
    return out;
}

/// x^2 - D y^4 = k with x, y > 0 and y <= y_max.
inline std::vector<QuarticPoint> enumerate_quartic_points(const mpz_class& D, const mpz_class& k, const mpz_class& y_max) {
    if (y_max > 1000000) throw DomainError("enumerate_quartic_points: y_max above 10^6");
    const auto& filter = detail::square_filter();
    std::vector<QuarticPoint> out;
    const bool small = bit_length(D) + bit_length(k) < 40;
    const __int128 d = small ? D.get_si() : 0, kk = small ? k.get_si() : 0;
    for (long y = 1; y <= y_max.get_si(); ++y) {
        if (small) {
            const __int128 y2 = static_cast<__int128>(y) * y;
            const __int128 v = d * y2 * y2 + kk;
            if (v <= 0 || !filter.maybe_square(static_cast<unsigned __int128>(v))) continue;
            const long long r = arith::isqrt_exact_u128(static_cast<unsigned __int128>(v));
            if (r > 0) out.push_back({mpz_class(static_cast<long>(r)), mpz_class(y), D, k});
        } else {
            const mpz_class v = D * mpz_class(y) * y * y * y + k;
            if (v <= 0) continue;
            if (auto r = arith::exact_sqrt(v)) out.push_back({*r, mpz_class(y), D, k});
        }
    }
    return out;
}

/// X = D y^2 and X^2 - N = D x^2 for a generic point; std::nullopt for an exceptional one.
inline std::optional<QuarticPoint> decompose_point(const CurvePoint& p) {
    if (!p.on_curve()) throw DomainError("decompose_point: point is not on the curve");
    if (classify(p.X, p.N) == Kind::exceptional) return std::nullopt;
    const auto sf = arith::squarefree_part(p.X);
    const mpz_class& D = sf.core;
    const mpz_class& y = sf.cofactor;
    const auto kq = arith::exact_div(-p.N, D);
    const auto x2 = arith::exact_div(p.X * p.X - p.N, D);
    const auto x = x2 ? arith::exact_sqrt(*x2) : std::nullopt;
    if (!kq || !x) {
        throw IdentityFailure("decompose_point: (" + p.X.get_str() + "," + p.Y.get_str() + ") on N=" + p.N.get_str() +
                              " has D=" + D.get_str() + " but X^2 - N is not D x^2 with D | N");
    }
    QuarticPoint q{*x, y, D, *kq};
    if (!q.valid() || D * y * y != p.X) throw IdentityFailure("decompose_point: reconstruction failed");
    return q;
}

struct RoundTripRecord {
    QuarticPoint point;
    bool ok = false;
    mpz_class u, v, P, Q, F_value;
    bool box_miss = false;  ///< max(|u|, |v|) is beyond the Thue search box
    bool delta_extended = false;
    std::string failure;
};

struct QuarticCheck {
    mpz_class D;
    mpz_class k;
    std::vector<QuarticPoint> points;
    bounds::BoundReport main;
    bounds::BoundReport mainqe;
    Real share{Precision{64}};  ///< this D's term of the curve bound
    bool within_main = true;
    bool within_mainqe = true;
    std::vector<std::string> branch_notes;
    std::vector<RoundTripRecord> round_trips;
    std::size_t box_misses = 0;
    std::size_t round_trip_failures = 0;
};

struct VerifyConfig {
    mpz_class X_max = 1000000;
    mpz_class y_max = 10000;
    mpz_class box = 10000;
    Precision precision{256};
};

struct CurveVerification {
    mpz_class N;
    VerifyConfig config;
    std::vector<CurvePoint> points;
    std::size_t generic_signed = 0;  ///< generic points, (X, Y) and (X, -Y) counted separately
    std::size_t total_signed = 0;    ///< every integral point, sign-counted
    bounds::BoundReport curve_bound;
    bool within_curve = true;
    std::vector<QuarticCheck> quartics;
    std::vector<std::string> violations;   ///< bound violations (exit code 2)
    std::vector<std::string> failures;     ///< identity or round-trip failures

    [[nodiscard]] bool bound_violation() const { return !violations.empty(); }
    [[nodiscard]] bool ok() const { return violations.empty() && failures.empty(); }
};

/// Curve bound term of a single D: 384 sqrt(N/2) 2^omega(N/D) eps_D^{3/2} / D.
inline Real curve_share(const mpz_class& N, const mpz_class& D, Precision p) {
    const auto eps = quadratic::fundamental_unit(D);
    const Real e = eps.value(p);
    return Real(384L, p) * sqrt(Real(mpq_class(N, 2), p)) * Real(mpz_class(arith::pow(2, arith::omega(N / D))), p) * e *
           sqrt(e) / Real(D, p);
}

inline CurveVerification verify_theorems(const mpz_class& N, const VerifyConfig& cfg = {}) {
    if (N < 1 || !arith::is_squarefree(N)) throw DomainError("verify_theorems: N must be square-free and positive");
    const Precision p = cfg.precision;
    CurveVerification out;
    out.N = N;
    out.config = cfg;
    out.points = enumerate_curve_points(N, cfg.X_max);

    // generic points grouped by D
    std::map<mpz_class, std::vector<QuarticPoint>, std::less<>> from_curve;
    for (const auto& pt : out.points) {
        out.total_signed += static_cast<std::size_t>(pt.sign_count());
        if (auto q = decompose_point(pt)) {
            out.generic_signed += static_cast<std::size_t>(pt.sign_count());
            from_curve[q->D].push_back(*q);
        }
    }
    out.curve_bound = bounds::thm_missproof_bound(N, p);
    out.within_curve = Real(static_cast<long>(out.generic_signed), p) <= out.curve_bound.value;
    if (!out.within_curve) {
        out.violations.push_back("N=" + N.get_str() + ": " + std::to_string(out.generic_signed) +
                                 " generic integral points exceed the curve bound " + out.curve_bound.value.str(10));
    }

    for (const auto& D : arith::divisors(N)) {
        if (D == 1) continue;
        QuarticCheck qc;
        qc.D = D;
        qc.k = -N / D;
        if (arith::gcd(qc.k, D) != 1 || !arith::is_squarefree(qc.k)) {
            out.failures.push_back("N=" + N.get_str() + " D=" + D.get_str() + ": k is not square-free and prime to D");
        }
        qc.points = enumerate_quartic_points(D, qc.k, cfg.y_max);
        qc.main = bounds::thm_main_bound(D, qc.k, p);
        qc.mainqe = bounds::thm_mainqe(D, qc.k, p);
        qc.share = curve_share(N, D, p);
        const Real count(static_cast<long>(qc.points.size()), p);
        qc.within_main = count <= qc.main.value;
        qc.within_mainqe = !qc.mainqe.applicable || count <= qc.mainqe.value;
        std::ostringstream tag;
        tag << "N=" << N << " D=" << D << " k=" << qc.k << ": " << qc.points.size() << " points";
        if (!qc.within_main) out.violations.push_back(tag.str() + " exceed the quartic bound " + qc.main.value.str(10));
        if (!qc.within_mainqe) out.violations.push_back(tag.str() + " exceed " + qc.mainqe.value.str(10));

        // the generic curve points with this D are exactly the quartic points with D y^2 <= X_max
        std::vector<std::pair<mpz_class, mpz_class>> a, b;
        for (const auto& q : from_curve[D]) a.emplace_back(q.x, q.y);
        for (const auto& q : qc.points) {
            if (D * q.y * q.y <= cfg.X_max) b.emplace_back(q.x, q.y);
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) out.failures.push_back(tag.str() + ": curve scan and quartic scan disagree");

        if (!qc.points.empty()) {
            auto outcomes = reduction::reduce(D, qc.k);
            for (const auto& o : outcomes) {
                qc.branch_notes.push_back(std::string(reduction::to_string(o.branch.parity)) + " (" + o.branch.s.get_str() +
                                          "," + o.branch.t.get_str() + "): " + reduction::to_string(o.status) +
                                          (o.note.empty() ? "" : "; " + o.note));
            }
            for (const auto& q : qc.points) {
                RoundTripRecord rec;
                rec.point = q;
                const auto rt = reduction::round_trip(outcomes, q.x, q.y);
                rec.ok = rt.ok;
                rec.failure = rt.failure;
                if (rt.ok) {
                    rec.u = rt.pre.u;
                    rec.v = rt.pre.v;
                    rec.P = rt.pre.P;
                    rec.Q = rt.pre.Q;
                    rec.F_value = rt.F_value;
                    rec.delta_extended = rt.delta_extended;
                    rec.box_miss = std::max(abs(rt.pre.u), abs(rt.pre.v)) > cfg.box;
                    if (rec.box_miss) ++qc.box_misses;
                } else {
                    ++qc.round_trip_failures;
                    out.failures.push_back(tag.str() + ": (" + q.x.get_str() + "," + q.y.get_str() +
                                           ") did not round-trip: " + rt.failure);
                }
                qc.round_trips.push_back(std::move(rec));
            }
        }
        out.quartics.push_back(std::move(qc));
    }
    return out;
}

/// N, D, k, count, bound1, bound2-applicable, bound2, bound3-share.
inline std::string csv_header() { return "N,D,k,count,bound1,bound2_applicable,bound2,bound3_share"; }

inline std::string csv_rows(const CurveVerification& v) {
    std::ostringstream os;
    for (const auto& q : v.quartics) {
        os << v.N << ',' << q.D << ',' << q.k << ',' << q.points.size() << ',' << q.main.value.str(12) << ','
           << (q.mainqe.applicable ? "true" : "false") << ',' << (q.mainqe.applicable ? q.mainqe.value.str(12) : "")
           << ',' << q.share.str(12) << '\n';
    }
    return os.str();
}

}  // namespace thue1728::curve
