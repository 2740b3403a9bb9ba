#pragma once

// Independent brute-force references used to freeze expected values.
// Nothing here calls into the library's algorithms under test.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

/// Plain trial division over |n|.
inline std::vector<std::pair<long, unsigned>> trial_factor(long n) {
    std::vector<std::pair<long, unsigned>> out;
    if (n < 0) n = -n;
    for (long p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool squarefree(long n) {
    for (const auto& [p, e] : trial_factor(n)) {
        if (e > 1) return false;
    }
    return n != 0;
}

inline unsigned omega(long n) { return static_cast<unsigned>(trial_factor(n).size()); }

/// Smallest (T, U) with U >= 1 and T^2 - D U^2 = +-1, scanning U upward.
inline std::pair<mpz_class, mpz_class> unit_by_scan(long D, long u_cap = 0) {
    for (long U = 1; u_cap == 0 || U <= u_cap; ++U) {
        const mpz_class du2 = mpz_class(D) * U * U;
        for (int s : {-1, 1}) {
            const mpz_class t2 = du2 + s;
            if (t2 > 0 && mpz_perfect_square_p(t2.get_mpz_t())) {
                mpz_class T;
                mpz_sqrt(T.get_mpz_t(), t2.get_mpz_t());
                return {T, mpz_class(U)};
            }
        }
    }
    return {0, 0};
}

/// All (x >= 0, y >= 0) with x^2 - D y^4 = k and y <= y_max.
inline std::vector<std::pair<mpz_class, mpz_class>> quartic_points(long D, long k, long y_max) {
    std::vector<std::pair<mpz_class, mpz_class>> out;
    for (long y = 0; y <= y_max; ++y) {
        const mpz_class v = mpz_class(D) * y * y * y * y + k;
        if (v >= 0 && mpz_perfect_square_p(v.get_mpz_t())) {
            mpz_class x;
            mpz_sqrt(x.get_mpz_t(), v.get_mpz_t());
            out.emplace_back(x, mpz_class(y));
        }
    }
    return out;
}

/// Bivariate polynomial in x, y as a map (i, j) -> coefficient of x^i y^j.
using Bivariate = std::map<std::pair<int, int>, mpz_class>;

inline Bivariate quartic_poly(const std::array<mpz_class, 5>& a) {
    Bivariate p;
    for (int i = 0; i < 5; ++i) p[{4 - i, i}] = a[static_cast<std::size_t>(i)];
    return p;
}

inline Bivariate dx(const Bivariate& p) {
    Bivariate r;
    for (const auto& [e, c] : p) {
        if (e.first > 0) r[{e.first - 1, e.second}] += c * e.first;
    }
    return r;
}

inline Bivariate dy(const Bivariate& p) {
    Bivariate r;
    for (const auto& [e, c] : p) {
        if (e.second > 0) r[{e.first, e.second - 1}] += c * e.second;
    }
    return r;
}

inline Bivariate mul(const Bivariate& p, const Bivariate& q) {
    Bivariate r;
    for (const auto& [e1, c1] : p) {
        for (const auto& [e2, c2] : q) r[{e1.first + e2.first, e1.second + e2.second}] += c1 * c2;
    }
    return r;
}

inline Bivariate sub(Bivariate p, const Bivariate& q) {
    for (const auto& [e, c] : q) p[e] -= c;
    return p;
}

/// F_xx F_yy - F_xy^2 by symbolic differentiation, as coefficients of x^{4-i} y^i.
inline std::array<mpz_class, 5> hessian_by_derivatives(const std::array<mpz_class, 5>& a) {
    const Bivariate F = quartic_poly(a);
    const Bivariate h = sub(mul(dx(dx(F)), dy(dy(F))), mul(dx(dy(F)), dx(dy(F))));
    std::array<mpz_class, 5> out{};
    for (const auto& [e, c] : h) {
        if (c != 0) out[static_cast<std::size_t>(e.second)] += c;
    }
    return out;
}

/// Determinant of a square rational matrix by Gaussian elimination.
inline mpq_class determinant(std::vector<std::vector<mpq_class>> m) {
    const std::size_t n = m.size();
    mpq_class det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const mpq_class f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

/// Discriminant of a0 z^4 + ... + a4 via the Sylvester resultant: Res(f, f') = a0 * disc (degree 4, sign +1).
inline mpq_class discriminant_by_resultant(const std::array<mpz_class, 5>& a) {
    // f = a0 z^4 + a1 z^3 + a2 z^2 + a3 z + a4; f' = 4a0 z^3 + 3a1 z^2 + 2a2 z + a3
    const std::array<mpz_class, 4> d{4 * a[0], 3 * a[1], 2 * a[2], a[3]};
    std::vector<std::vector<mpq_class>> s(7, std::vector<mpq_class>(7, 0));
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t j = 0; j < 5; ++j) s[r][r + j] = a[j];
    }
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t j = 0; j < 4; ++j) s[3 + r][r + j] = d[j];
    }
    return determinant(s) / mpq_class(a[0]);
}

/// All (X, Y >= 0) on Y^2 = X^3 - N X with |X| <= X_max, by direct scan in mpz.
inline std::vector<std::pair<mpz_class, mpz_class>> curve_points(long N, long X_max) {
    std::vector<std::pair<mpz_class, mpz_class>> out;
    for (long X = -X_max; X <= X_max; ++X) {
        const mpz_class x(X);
        const mpz_class f = x * x * x - N * x;
        if (f >= 0 && mpz_perfect_square_p(f.get_mpz_t())) {
            mpz_class Y;
            mpz_sqrt(Y.get_mpz_t(), f.get_mpz_t());
            out.emplace_back(x, Y);
        }
    }
    return out;
}

/// Seeded random integer in [lo, hi].
inline long uniform(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

}  // namespace oracle
