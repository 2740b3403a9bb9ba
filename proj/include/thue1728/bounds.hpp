#pragma once

/**
 * @file bounds.hpp
 * @brief Explicit upper bounds for X^2 - D Y^4 = k (k < 0) and Y^2 = X^3 - N X, and Walsh's earlier ones.
 *
 * Every bound is evaluated twice: directly in MPFR from the exact unit T + U sqrt(D), and as a sum of
 * logarithms. Reports carry both so the two can be compared.
 */

#include "arith.hpp"
#include "errors.hpp"
#include "quadratic_ring.hpp"
#include "real.hpp"

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace thue1728::bounds {

struct BoundReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> inputs;
    Real value{Precision{64}};      ///< direct evaluation
    Real log_value{Precision{64}};  ///< natural log, evaluated as a sum of logs
    bool applicable = true;
    std::string note;

    /// |exp(log_value) / value - 1|, or |log_value| if value is 0.
    [[nodiscard]] Real consistency() const {
        if (value.is_zero()) return abs(log_value);
        return abs(exp(log_value) / value - 1L);
    }
};

namespace detail {

inline void require_D(const mpz_class& D) {
    if (D <= 1 || !arith::is_squarefree(D)) throw DomainError("bounds: D must be a square-free integer > 1");
}

inline Real log2(Precision p) { return log(Real(2L, p)); }

}  // namespace detail

/// 384 * 2^omega(k) * eps_D^{3/2} * sqrt(|k| / 2D) solutions in positive integers.
inline BoundReport thm_main_bound(const mpz_class& D, const mpz_class& k, Precision p = {}) {
    BoundReport r;
    r.name = "quartic_count";
    r.inputs = {{"D", D.get_str()}, {"k", k.get_str()}};
    if (k >= 0 || D <= 1 || !arith::is_squarefree(D)) {
        r.applicable = false;
        r.note = "requires D > 1 square-free and k < 0";
        r.value = Real(0L, p);
        r.log_value = Real(0L, p);
        return r;
    }
    const auto eps = quadratic::fundamental_unit(D);
    const unsigned w = arith::omega(k);
    const Real e = eps.value(p);
    const Real ratio = Real(mpq_class(mpz_class(abs(k)), mpz_class(2 * D)), p);
    r.value = Real(mpz_class(384 * arith::pow(2, w)), p) * e * sqrt(e) * sqrt(ratio);
    r.log_value = log(Real(384L, p)) + detail::log2(p) * static_cast<long>(w) + eps.log(p) * Real(1.5, p) + log(ratio) / 2L;
    return r;
}

/// Threshold on |k| for the 40 * 2^omega(k) bound, in both written forms.
struct MainqeThreshold {
    Real statement{Precision{64}};  ///< pi / (2^14 3^{11/2}) * eps^12 / D^{13/2}
    Real derived{Precision{64}};    ///< (pi / (sqrt(3) 2^{2/3} 48^{5/12}))^6 * eps^12 / D^{13/2}
    Real log_statement{Precision{64}};
    Real log_derived{Precision{64}};
};

inline MainqeThreshold mainqe_threshold(const mpz_class& D, Precision p = {}) {
    detail::require_D(D);
    const auto eps = quadratic::fundamental_unit(D);
    const Real leps = eps.log(p);
    const Real lD = log(Real(D, p));
    const Real three(3L, p);
    MainqeThreshold t;
    const Real c_stmt = pi(p) / (Real(16384L, p) * pow(three, Real(5.5, p)));
    const Real c_der = pow(pi(p) / (sqrt(three) * pow(Real(2L, p), Real(mpq_class(2, 3), p)) *
                                    pow(Real(48L, p), Real(mpq_class(5, 12), p))),
                           6);
    const Real e12 = pow(eps.value(p), 12);
    const Real d13 = pow(Real(D, p), Real(6.5, p));
    t.statement = c_stmt * e12 / d13;
    t.derived = c_der * e12 / d13;
    t.log_statement = log(c_stmt) + leps * 12L - lD * Real(6.5, p);
    t.log_derived = log(c_der) + leps * 12L - lD * Real(6.5, p);
    return t;
}

/// 40 * 2^omega(k) when |k| reaches the threshold (statement constant; the derived one is reported in the note).
inline BoundReport thm_mainqe(const mpz_class& D, const mpz_class& k, Precision p = {}) {
    BoundReport r;
    r.name = "quartic_count_large_k";
    r.inputs = {{"D", D.get_str()}, {"k", k.get_str()}};
    if (k >= 0 || D <= 1 || !arith::is_squarefree(D)) {
        r.applicable = false;
        r.note = "requires D > 1 square-free and k < 0";
        r.value = Real(0L, p);
        r.log_value = Real(0L, p);
        return r;
    }
    const auto t = mainqe_threshold(D, p);
    const Real lk = log(Real(mpz_class(abs(k)), p));
    r.applicable = lk >= t.log_statement;
    const bool derived_ok = lk >= t.log_derived;
    const unsigned w = arith::omega(k);
    r.value = Real(mpz_class(40 * arith::pow(2, w)), p);
    r.log_value = log(Real(40L, p)) + detail::log2(p) * static_cast<long>(w);
    r.note = "threshold " + t.statement.str(6) + " (derived form " + t.derived.str(6) + ", " +
             (derived_ok ? "also met" : "not met") + ")";
    r.inputs.emplace_back("threshold", t.statement.str(20));
    r.inputs.emplace_back("threshold_derived", t.derived.str(20));
    return r;
}

/// 384 sqrt(N/2) * sum over D | N, D > 1 of 2^omega(N/D) eps_D^{3/2} / D.
inline BoundReport thm_missproof_bound(const mpz_class& N, Precision p = {}) {
    BoundReport r;
    r.name = "curve_count";
    r.inputs = {{"N", N.get_str()}};
    if (N < 1) throw DomainError("thm_missproof_bound: N must be positive");
    r.applicable = arith::is_squarefree(N);
    if (!r.applicable) {
        r.note = "N is not square-free";
        r.value = Real(0L, p);
        r.log_value = Real(0L, p);
        return r;
    }
    Real sum(0L, p);
    for (const auto& D : arith::divisors(N)) {
        if (D == 1) continue;
        const auto eps = quadratic::fundamental_unit(D);
        const Real e = eps.value(p);
        sum += Real(mpz_class(arith::pow(2, arith::omega(N / D))), p) * e * sqrt(e) / Real(D, p);
    }
    if (N == 1) {
        r.note = "no divisor D > 1; points with X a square are listed separately";
        r.value = Real(0L, p);
        r.log_value = Real(0L, p);
        return r;
    }
    r.value = Real(384L, p) * sqrt(Real(mpq_class(N, 2), p)) * sum;
    // log-space: log-sum-exp over the divisor terms
    std::vector<Real> logs;
    for (const auto& D : arith::divisors(N)) {
        if (D == 1) continue;
        const auto eps = quadratic::fundamental_unit(D);
        logs.push_back(detail::log2(p) * static_cast<long>(arith::omega(N / D)) + eps.log(p) * Real(1.5, p) -
                       log(Real(D, p)));
    }
    Real top = logs.front();
    for (const auto& l : logs) top = max(top, l);
    Real acc(0L, p);
    for (const auto& l : logs) acc += exp(l - top);
    r.log_value = log(Real(384L, p)) + log(Real(mpq_class(N, 2), p)) / 2L + top + log(acc);
    return r;
}

/// Walsh's count 48 * 2^omega(k) for |Y| above his threshold, against the bounds above.
struct WalshComparison {
    BoundReport walsh_count;
    BoundReport walsh_y_threshold;  ///< 2^{5/4} |k|^{39/4} eps^{45/4} / D^{13/4}
    BoundReport main;
    BoundReport mainqe;
    Real log_ratio_main{Precision{64}};    ///< log(main / walsh_count)
    Real log_ratio_mainqe{Precision{64}};  ///< log(mainqe / walsh_count), meaningful when mainqe applies
};

inline WalshComparison walsh_comparison(const mpz_class& D, const mpz_class& k, Precision p = {}) {
    detail::require_D(D);
    if (k >= 0) throw DomainError("walsh_comparison: requires k < 0");
    WalshComparison c;
    const unsigned w = arith::omega(k);
    c.walsh_count.name = "walsh_count";
    c.walsh_count.inputs = {{"D", D.get_str()}, {"k", k.get_str()}};
    c.walsh_count.value = Real(mpz_class(48 * arith::pow(2, w)), p);
    c.walsh_count.log_value = log(Real(48L, p)) + detail::log2(p) * static_cast<long>(w);
    c.walsh_count.note = "integer solutions with |Y| above walsh_y_threshold";

    const auto eps = quadratic::fundamental_unit(D);
    const Real K(mpz_class(abs(k)), p);
    const Real Dr(D, p);
    c.walsh_y_threshold.name = "walsh_y_threshold";
    c.walsh_y_threshold.inputs = c.walsh_count.inputs;
    c.walsh_y_threshold.value = pow(Real(2L, p), Real(1.25, p)) * pow(K, Real(9.75, p)) *
                                pow(eps.value(p), Real(11.25, p)) / pow(Dr, Real(3.25, p));
    c.walsh_y_threshold.log_value = detail::log2(p) * Real(1.25, p) + log(K) * Real(9.75, p) +
                                    eps.log(p) * Real(11.25, p) - log(Dr) * Real(3.25, p);

    c.main = thm_main_bound(D, k, p);
    c.mainqe = thm_mainqe(D, k, p);
    c.log_ratio_main = c.main.log_value - c.walsh_count.log_value;
    c.log_ratio_mainqe = c.mainqe.log_value - c.walsh_count.log_value;
    return c;
}

}  // namespace thue1728::bounds
