#include "oracles.hpp"

#include <thue1728/arith.hpp>

#include <gtest/gtest.h>

using namespace thue1728;
using arith::PrimePower;

namespace {

std::vector<std::pair<long, unsigned>> as_pairs(const arith::Factorization& f) {
    std::vector<std::pair<long, unsigned>> out;
    for (const auto& pp : f.factors) out.emplace_back(pp.prime.get_si(), pp.exponent);
    return out;
}

}  // namespace

TEST(Factorize, SmallExamples) {
    EXPECT_TRUE(arith::factorize(1).factors.empty());
    EXPECT_EQ(as_pairs(arith::factorize(12)), (std::vector<std::pair<long, unsigned>>{{2, 2}, {3, 1}}));
    EXPECT_EQ(as_pairs(arith::factorize(338)), (std::vector<std::pair<long, unsigned>>{{2, 1}, {13, 2}}));
    EXPECT_EQ(as_pairs(arith::factorize(-30)), (std::vector<std::pair<long, unsigned>>{{2, 1}, {3, 1}, {5, 1}}));
}

TEST(Factorize, ZeroIsRejected) { EXPECT_THROW(arith::factorize(0), DomainError); }

TEST(Factorize, MatchesTrialDivision) {
    for (long n = 1; n <= 20000; ++n) {
        ASSERT_EQ(as_pairs(arith::factorize(n)), oracle::trial_factor(n)) << n;
    }
}

TEST(Factorize, LargeSemiprimes) {
    // products of primes beyond the trial-division range exercise Pollard rho
    const mpz_class p("1000000007"), q("998244353"), r("18446744073709551557");
    const auto f = arith::factorize(p * q * q * r);
    ASSERT_EQ(f.factors.size(), 3U);
    EXPECT_EQ(f.factors[0].prime, q);
    EXPECT_EQ(f.factors[0].exponent, 2U);
    EXPECT_EQ(f.factors[1].prime, p);
    EXPECT_EQ(f.factors[2].prime, r);
    EXPECT_EQ(f.product(), p * q * q * r);
}

TEST(Factorize, BudgetExhaustionIsExplicit) {
    const mpz_class p("1000000000000000003"), q("1000000000000000009");
    arith::FactorBudget tight{1000, 10};
    EXPECT_THROW(arith::factorize(p * q, tight), UnfactoredError);
}

TEST(Factorize, ProductReconstructsRandomInputs) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const mpz_class a = oracle::uniform(rng, 1, 1L << 40);
        const mpz_class b = oracle::uniform(rng, 1, 1L << 30);
        const mpz_class n = a * b;
        const auto f = arith::factorize(n);
        ASSERT_EQ(f.product(), n);
        for (std::size_t j = 0; j < f.factors.size(); ++j) {
            ASSERT_TRUE(arith::is_probable_prime(f.factors[j].prime));
            if (j) {
                ASSERT_LT(f.factors[j - 1].prime, f.factors[j].prime);
            }
        }
    }
}

TEST(Omega, Examples) {
    EXPECT_EQ(arith::omega(1), 0U);
    EXPECT_EQ(arith::omega(12), 2U);
    EXPECT_EQ(arith::omega(-30), 3U);
}

TEST(Omega, AdditiveOnCoprimePairs) {
    for (long a = 1; a <= 150; ++a) {
        for (long b = 1; b <= 150; ++b) {
            if (std::gcd(a, b) != 1) continue;
            ASSERT_EQ(arith::omega(a * b), arith::omega(a) + arith::omega(b));
        }
    }
}

TEST(SquarefreePart, Examples) {
    auto check = [](long n, long d, long f) {
        const auto s = arith::squarefree_part(n);
        EXPECT_EQ(s.core, d) << n;
        EXPECT_EQ(s.cofactor, f) << n;
    };
    check(1, 1, 1);
    check(338, 2, 13);
    check(48, 3, 4);
    EXPECT_THROW(arith::squarefree_part(0), DomainError);
}

TEST(SquarefreePart, CoreIsSquarefreeAndReconstructs) {
    for (long n = 1; n <= 5000; ++n) {
        const auto s = arith::squarefree_part(n);
        ASSERT_EQ(s.core * s.cofactor * s.cofactor, n);
        ASSERT_TRUE(oracle::squarefree(s.core.get_si()));
        ASSERT_EQ(arith::is_squarefree(n), oracle::squarefree(n));
    }
}

TEST(Divisors, Examples) {
    auto as_longs = [](const std::vector<mpz_class>& v) {
        std::vector<long> out;
        for (const auto& x : v) out.push_back(x.get_si());
        return out;
    };
    EXPECT_EQ(as_longs(arith::divisors(6)), (std::vector<long>{1, 2, 3, 6}));
    EXPECT_EQ(as_longs(arith::divisors(1)), (std::vector<long>{1}));
    EXPECT_EQ(as_longs(arith::divisors(30)), (std::vector<long>{1, 2, 3, 5, 6, 10, 15, 30}));
    for (long n = 1; n <= 500; ++n) {
        std::vector<long> brute;
        for (long d = 1; d <= n; ++d) {
            if (n % d == 0) brute.push_back(d);
        }
        ASSERT_EQ(as_longs(arith::divisors(n)), brute);
    }
}

TEST(IntegerRoots, PerfectSquares) {
    for (long n = 0; n <= 100000; ++n) {
        const long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
        const bool sq = r * r == n;
        ASSERT_EQ(arith::exact_sqrt(n).has_value(), sq) << n;
        ASSERT_EQ(arith::isqrt_exact_u128(static_cast<unsigned __int128>(n)) >= 0, sq) << n;
    }
    const unsigned __int128 big = static_cast<unsigned __int128>(3037000499ULL) * 3037000499ULL;
    EXPECT_EQ(arith::isqrt_exact_u128(big), 3037000499LL);
    EXPECT_EQ(arith::isqrt_exact_u128(big + 1), -1);
}

TEST(Hilbert, LocalSolvabilityMatchesSearch) {
    // a x^2 + b y^2 + c z^2 = 0 solvable nontrivially iff a small solution exists for these tiny coefficients
    for (long a = -6; a <= 6; ++a) {
        for (long b = -6; b <= 6; ++b) {
            for (long c = -6; c <= 6; ++c) {
                if (a == 0 || b == 0 || c == 0) continue;
                bool found = false;
                for (long x = 0; x <= 30 && !found; ++x) {
                    for (long y = 0; y <= 30 && !found; ++y) {
                        for (long z = 0; z <= 30 && !found; ++z) {
                            if ((x || y || z) && a * x * x + b * y * y + c * z * z == 0) found = true;
                        }
                    }
                }
                ASSERT_EQ(arith::ternary_locally_solvable(a, b, c), found) << a << " " << b << " " << c;
            }
        }
    }
}
