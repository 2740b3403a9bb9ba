#pragma once

/**
 * @file real.hpp
 * @brief Arbitrary precision reals and complex numbers over MPFR.
 *
 * Every Real carries its own precision. Binary operations produce a result at
 * the larger of the operand precisions, so a computation started at a given
 * precision stays there without any process-wide default.
 */

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <string>
#include <utility>

namespace thue1728 {

/// Working precision in bits.
struct Precision {
    unsigned bits = 200;

    /// Enough bits to resolve integers of the given bit length with `extra` guard bits.
    [[nodiscard]] Precision at_least(std::size_t integer_bits, unsigned extra = 64) const {
        return Precision{std::max<unsigned>(bits, static_cast<unsigned>(integer_bits) + extra)};
    }
};

class Real {
public:
    explicit Real(Precision p = {}) { mpfr_init2(v_, p.bits); mpfr_set_zero(v_, 1); }
    Real(long x, Precision p) { mpfr_init2(v_, p.bits); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(double x, Precision p) { mpfr_init2(v_, p.bits); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const mpz_class& x, Precision p) { mpfr_init2(v_, p.bits); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    Real(const mpq_class& x, Precision p) { mpfr_init2(v_, p.bits); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    [[nodiscard]] Precision precision() const { return Precision{static_cast<unsigned>(mpfr_get_prec(v_))}; }
    [[nodiscard]] mpfr_srcptr get() const { return v_; }
    [[nodiscard]] mpfr_ptr get() { return v_; }

    [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    [[nodiscard]] long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
    [[nodiscard]] int sign() const { return mpfr_sgn(v_); }

    /// Nearest integer (ties away from zero).
    [[nodiscard]] mpz_class round() const {
        mpz_class r;
        mpfr_get_z(r.get_mpz_t(), v_, MPFR_RNDNA);
        return r;
    }
    [[nodiscard]] mpz_class floor() const {
        mpz_class r;
        mpfr_get_z(r.get_mpz_t(), v_, MPFR_RNDD);
        return r;
    }

    /// Decimal rendering with `digits` significant digits (0 = all digits the precision supports).
    [[nodiscard]] std::string str(int digits = 0) const {
        if (digits <= 0) digits = static_cast<int>(static_cast<double>(mpfr_get_prec(v_)) * 0.30103);
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", digits, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    Real& operator+=(const Real& o) { widen(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { widen(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { widen(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { widen(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator+=(long x) { mpfr_add_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator-=(long x) { mpfr_sub_si(v_, v_, x, MPFR_RNDN); return *this; }

    friend Real operator+(Real a, const Real& b) { a += b; return a; }
    friend Real operator-(Real a, const Real& b) { a -= b; return a; }
    friend Real operator*(Real a, const Real& b) { a *= b; return a; }
    friend Real operator/(Real a, const Real& b) { a /= b; return a; }
    friend Real operator+(Real a, long b) { a += b; return a; }
    friend Real operator-(Real a, long b) { a -= b; return a; }
    friend Real operator*(Real a, long b) { a *= b; return a; }
    friend Real operator/(Real a, long b) { a /= b; return a; }
    friend Real operator*(long b, Real a) { a *= b; return a; }
    friend Real operator-(Real a) { mpfr_neg(a.v_, a.v_, MPFR_RNDN); return a; }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
        if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
        const int c = mpfr_cmp(a.v_, b.v_);
        return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater
                                                           : std::partial_ordering::equivalent;
    }
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend std::partial_ordering operator<=>(const Real& a, long b) {
        const int c = mpfr_cmp_si(a.v_, b);
        return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater
                                                           : std::partial_ordering::equivalent;
    }

private:
    void widen(const Real& o) {
        if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
    }

    mpfr_t v_;
};

namespace detail {
template <typename F>
Real apply_unary(const Real& x, F f) {
    Real r(x.precision());
    f(r.get(), x.get(), MPFR_RNDN);
    return r;
}
}  // namespace detail

inline Real sqrt(const Real& x) { return detail::apply_unary(x, mpfr_sqrt); }
inline Real exp(const Real& x) { return detail::apply_unary(x, mpfr_exp); }
inline Real log(const Real& x) { return detail::apply_unary(x, mpfr_log); }
inline Real log10(const Real& x) { return detail::apply_unary(x, mpfr_log10); }
inline Real abs(const Real& x) { return detail::apply_unary(x, mpfr_abs); }
inline Real sin(const Real& x) { return detail::apply_unary(x, mpfr_sin); }
inline Real cos(const Real& x) { return detail::apply_unary(x, mpfr_cos); }
inline Real atan2(const Real& y, const Real& x) {
    Real r(Precision{std::max(y.precision().bits, x.precision().bits)});
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}
inline Real pow(const Real& x, const Real& y) {
    Real r(x.precision().bits >= y.precision().bits ? x.precision() : y.precision());
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}
inline Real pow(const Real& x, long n) {
    Real r(x.precision());
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}
/// Real n-th root (n > 0).
inline Real root(const Real& x, unsigned long n) {
    Real r(x.precision());
    mpfr_rootn_ui(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}
inline Real pi(Precision p) {
    Real r(p);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}
inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }

/// Complex number with Real parts.
struct Complex {
    Real re;
    Real im;

    explicit Complex(Precision p = {}) : re(p), im(p) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    [[nodiscard]] Precision precision() const { return re.precision(); }
    [[nodiscard]] Complex conj() const { return {re, -im}; }
    [[nodiscard]] Real norm2() const { return re * re + im * im; }
    [[nodiscard]] Real abs() const { return sqrt(norm2()); }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        const Real d = o.norm2();
        Real r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const Real& s) { re *= s; im *= s; return *this; }

    friend Complex operator+(Complex a, const Complex& b) { a += b; return a; }
    friend Complex operator-(Complex a, const Complex& b) { a -= b; return a; }
    friend Complex operator*(Complex a, const Complex& b) { a *= b; return a; }
    friend Complex operator/(Complex a, const Complex& b) { a /= b; return a; }
    friend Complex operator*(Complex a, const Real& s) { a *= s; return a; }
    friend Complex operator*(const Real& s, Complex a) { a *= s; return a; }
    friend Complex operator-(Complex a) { a.re = -a.re; a.im = -a.im; return a; }
};

inline Complex pow(const Complex& z, unsigned n) {
    Complex r(Real(1L, z.precision()), Real(0L, z.precision()));
    Complex b = z;
    while (n) {
        if (n & 1U) r *= b;
        b *= b;
        n >>= 1U;
    }
    return r;
}

/// The imaginary unit raised to the power k (k mod 4).
inline Complex i_pow(int k, Precision p) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {Real(1L, p), Real(0L, p)};
        case 1: return {Real(0L, p), Real(1L, p)};
        case 2: return {Real(-1L, p), Real(0L, p)};
        default: return {Real(0L, p), Real(-1L, p)};
    }
}

/// Bit length of |x| (0 for x = 0).
inline std::size_t bit_length(const mpz_class& x) { return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2); }

}  // namespace thue1728
