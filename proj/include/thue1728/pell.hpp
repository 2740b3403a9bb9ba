#pragma once

/**
 * @file pell.hpp
 * @brief Solutions of x^2 - D y^2 = k, their unit orbits ("classes"), and
 * fundamental solutions.
 *
 * Two solutions are in the same class when (x1 x2 - D y1 y2)/k and
 * (y1 x2 - y2 x1)/k are both integers. Nagell's bounds on the fundamental
 * solution are applied with the smallest norm +1 unit, which always has T > 1.
 */

#include "arith.hpp"
#include "quadratic_ring.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <vector>

namespace thue1728::pell {

struct PellSolution {
    mpz_class x;
    mpz_class y;
    mpz_class D;
    mpz_class k;

    [[nodiscard]] quadratic::QuadraticInteger element() const { return {x, y, D}; }
    [[nodiscard]] bool valid() const { return x * x - D * y * y == k; }

    friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

/// An equivalence class of solutions with its fundamental member.
struct PellOrbit {
    mpz_class D;
    mpz_class k;
    PellSolution fundamental;
    std::vector<PellSolution> members;  ///< members found inside the search box
    bool coprime = true;                ///< gcd(x, y) = 1 (shared by the whole class)
    bool within_nagell = true;          ///< fundamental satisfies Nagell's bounds (non-strict)
};

/// All solutions with 0 <= y <= y_max, both signs of x, ordered by (y, x).
inline std::vector<PellSolution> enumerate_pell(const mpz_class& D, const mpz_class& k, const mpz_class& y_max) {
    quadratic::require_nonsquare(D);
    if (k == 0) throw DomainError("enumerate_pell: k must be nonzero");
    std::vector<PellSolution> out;
    auto push = [&](const mpz_class& x, const mpz_class& y) {
        if (x != 0) out.push_back({-x, y, D, k});
        out.push_back({x, y, D, k});
    };
    const bool small = D.fits_slong_p() && k.fits_slong_p() && y_max.fits_slong_p() &&
                       bit_length(D) + 2 * bit_length(y_max) < 120;
    if (small) {
        const __int128 d = D.get_si(), kk = k.get_si();
        const long ym = y_max.get_si();
        for (long y = 0; y <= ym; ++y) {
            const __int128 v = kk + d * y * y;
            if (v < 0) continue;
            const long long r = arith::isqrt_exact_u128(static_cast<unsigned __int128>(v));
            if (r >= 0) push(mpz_class(static_cast<long>(r)), mpz_class(y));
        }
        return out;
    }
    for (mpz_class y = 0; y <= y_max; ++y) {
        const mpz_class v = k + D * y * y;
        if (auto r = arith::exact_sqrt(v)) push(*r, y);
    }
    return out;
}

/// Nagell's integrality test for membership in the same class.
inline bool same_orbit(const PellSolution& p, const PellSolution& q) {
    if (p.D != q.D || p.k != q.k) throw DomainError("same_orbit: solutions of different equations");
    const mpz_class first = p.x * q.x - p.y * q.y * p.D;
    const mpz_class second = p.y * q.x - q.y * p.x;
    return mpz_divisible_p(first.get_mpz_t(), p.k.get_mpz_t()) && mpz_divisible_p(second.get_mpz_t(), p.k.get_mpz_t());
}

/// Nagell's bounds for the fundamental solution of a class, using the norm +1 unit T' + U' sqrt(D).
struct NagellBounds {
    quadratic::FundamentalUnit unit;  ///< the norm +1 unit used
    mpz_class y_scan;                 ///< integer scan limit covering the y bound

    /// T' - 1 for k < 0, T' + 1 for k > 0.
    [[nodiscard]] mpz_class shifted_T(const mpz_class& k) const { return k < 0 ? mpz_class(unit.T - 1) : mpz_class(unit.T + 1); }

    /// y strictly / weakly below U' sqrt|k| / sqrt(2(T' -+ 1)), exactly.
    [[nodiscard]] int compare_y(const mpz_class& y, const mpz_class& k) const {
        const mpz_class lhs = y * y * 2 * shifted_T(k);
        const mpz_class rhs = unit.U * unit.U * abs(k);
        return cmp(lhs, rhs);
    }
    /// |x| against sqrt((T' -+ 1)|k| / 2), exactly.
    [[nodiscard]] int compare_x(const mpz_class& x, const mpz_class& k) const {
        const mpz_class lhs = x * x * 2;
        const mpz_class rhs = shifted_T(k) * abs(k);
        return cmp(lhs, rhs);
    }
};

inline NagellBounds nagell_bounds(const mpz_class& D, const mpz_class& k) {
    NagellBounds b{quadratic::plus_one_unit(D), 0};
    // y^2 <= U'^2 |k| / (2 (T' -+ 1))
    const mpz_class denom = 2 * b.shifted_T(k);
    b.y_scan = arith::isqrt(b.unit.U * b.unit.U * abs(k) / denom) + 1;
    return b;
}

/// Partition solutions into classes. Fundamentals: least positive y (least y >= 0 when k > 0), ties to x > 0.
inline std::vector<PellOrbit> orbits(const mpz_class& D, const mpz_class& k) {
    quadratic::require_nonsquare(D);
    if (k == 0) throw DomainError("orbits: k must be nonzero");
    const NagellBounds bounds = nagell_bounds(D, k);
    std::vector<PellSolution> sols = enumerate_pell(D, k, bounds.y_scan);

    std::vector<std::size_t> parent(sols.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < sols.size(); ++i) {
        for (std::size_t j = i + 1; j < sols.size(); ++j) {
            if (find(i) != find(j) && same_orbit(sols[i], sols[j])) parent[find(j)] = find(i);
        }
    }

    std::vector<PellOrbit> out;
    std::vector<std::size_t> root_of_orbit;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        const std::size_t r = find(i);
        auto it = std::find(root_of_orbit.begin(), root_of_orbit.end(), r);
        if (it == root_of_orbit.end()) {
            root_of_orbit.push_back(r);
            out.push_back(PellOrbit{D, k, sols[i], {}, true, true});
            it = root_of_orbit.end() - 1;
        }
        out[static_cast<std::size_t>(it - root_of_orbit.begin())].members.push_back(sols[i]);
    }
    for (auto& orbit : out) {
        const PellSolution* best = nullptr;
        for (const auto& s : orbit.members) {
            if (k < 0 && s.y <= 0) continue;
            if (!best || s.y < best->y || (s.y == best->y && s.x > best->x)) best = &s;
        }
        orbit.fundamental = *best;
        orbit.coprime = arith::gcd(best->x, best->y) == 1;
        orbit.within_nagell = bounds.compare_y(best->y, k) <= 0 && bounds.compare_x(best->x, k) <= 0;
    }
    std::sort(out.begin(), out.end(), [](const PellOrbit& a, const PellOrbit& b) {
        return a.fundamental.y != b.fundamental.y ? a.fundamental.y < b.fundamental.y : a.fundamental.x < b.fundamental.x;
    });
    return out;
}

/// 2^omega(k), Walsh's bound on the number of classes of coprime solutions for square-free k.
inline mpz_class orbit_count_bound(const mpz_class& k) {
    if (!arith::is_squarefree(k)) throw DomainError("orbit_count_bound: k must be square-free, got " + k.get_str());
    return arith::pow(2, arith::omega(k));
}

/// Fundamental solution of the class containing s (k < 0), by walking the unit orbit toward minimal y.
inline PellSolution fundamental_of(const PellSolution& s, const quadratic::FundamentalUnit& plus_unit) {
    if (s.k >= 0) throw DomainError("fundamental_of: requires k < 0");
    if (!s.valid()) throw DomainError("fundamental_of: not a solution");
    if (plus_unit.norm != 1 || plus_unit.D != s.D) throw DomainError("fundamental_of: need the norm +1 unit of Z[sqrt D]");
    // every member alpha * eps'^i of a k < 0 class with alpha > 0 has y > 0, and y is convex in i
    quadratic::QuadraticInteger alpha = s.y > 0 ? s.element() : quadratic::QuadraticInteger{-s.x, -s.y, s.D};
    const quadratic::QuadraticInteger up = plus_unit.element();
    const quadratic::QuadraticInteger down = up.conj();
    for (const auto& step : {down, up}) {
        for (;;) {
            quadratic::QuadraticInteger next = alpha * step;
            if (next.b < alpha.b) {
                alpha = std::move(next);
            } else {
                if (next.b == alpha.b && next.a > alpha.a) alpha = std::move(next);
                break;
            }
        }
    }
    return {alpha.a, alpha.b, s.D, s.k};
}

}  // namespace thue1728::pell
