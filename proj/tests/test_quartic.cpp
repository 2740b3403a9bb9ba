#include "oracles.hpp"

#include <thue1728/quartic.hpp>

#include <gtest/gtest.h>

using namespace thue1728;
using quartic::QuarticForm;

namespace {

const QuarticForm kWorked{1, -4, -6, 4, 1};
const QuarticForm kSym{1, 0, -6, 0, 1};

QuarticForm random_form(std::mt19937_64& rng, long bound) {
    return {oracle::uniform(rng, -bound, bound), oracle::uniform(rng, -bound, bound), oracle::uniform(rng, -bound, bound),
            oracle::uniform(rng, -bound, bound), oracle::uniform(rng, -bound, bound)};
}

quartic::Matrix2 random_unimodular(std::mt19937_64& rng) {
    quartic::Matrix2 m{1, 0, 0, 1};
    for (int step = 0; step < 6; ++step) {
        const long t = oracle::uniform(rng, -3, 3);
        switch (oracle::uniform(rng, 0, 2)) {
            case 0: m = {m.b + t * m.d, m.c + t * m.e, m.d, m.e}; break;
            case 1: m = {m.b, m.c, m.d + t * m.b, m.e + t * m.c}; break;
            default: m = {m.d, m.e, m.b, m.c}; break;
        }
    }
    return m;
}

}  // namespace

TEST(Invariants, Examples) {
    auto inv = quartic::invariants({1, 1, 1, 1, 1});
    EXPECT_EQ(inv.I, 10);
    EXPECT_EQ(inv.J, -25);
    EXPECT_EQ(inv.Delta, 125);
    inv = quartic::invariants(kSym);
    EXPECT_EQ(inv.I, 48);
    EXPECT_EQ(inv.J, 0);
    EXPECT_EQ(inv.Delta, 16384);
    inv = quartic::invariants(kWorked);
    EXPECT_EQ(inv.I, 96);
    EXPECT_EQ(inv.J, 0);
    EXPECT_EQ(inv.Delta, 131072);
}

TEST(Invariants, DiscriminantMatchesResultant) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 300; ++i) {
        QuarticForm F = random_form(rng, 30);
        if (F.a[0] == 0) F.a[0] = 1;
        const auto inv = quartic::invariants(F);
        ASSERT_EQ(27 * inv.Delta, mpq_class(4 * inv.I * inv.I * inv.I - inv.J * inv.J));
        ASSERT_EQ(inv.Delta, oracle::discriminant_by_resultant(F.a)) << F.str();
    }
}

TEST(Hessian, Examples) {
    EXPECT_EQ(quartic::hessian(kSym), (QuarticForm{-144, 0, -288, 0, -144}));
    EXPECT_EQ(quartic::hessian(kWorked), (QuarticForm{-288, 0, -576, 0, -288}));
    EXPECT_EQ(quartic::hessian({1, 0, 0, 0, 1}), (QuarticForm{0, 0, 144, 0, 0}));
}

TEST(Hessian, MatchesSymbolicDifferentiation) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 300; ++i) {
        const QuarticForm F = random_form(rng, 1000);
        ASSERT_EQ(quartic::hessian(F).a, oracle::hessian_by_derivatives(F.a)) << F.str();
    }
}

TEST(Gl2Transform, ExamplesAndInvariance) {
    EXPECT_EQ(quartic::gl2_transform(kWorked, {1, 0, 0, 1}), kWorked);
    EXPECT_EQ(quartic::gl2_transform(kSym, {0, 1, 1, 0}), kSym);
    const QuarticForm sheared = quartic::gl2_transform(kWorked, {1, 1, 0, 1});
    EXPECT_EQ(quartic::invariants(sheared).I, 96);
    EXPECT_EQ(quartic::invariants(sheared).J, 0);
    EXPECT_THROW(quartic::gl2_transform(kWorked, {2, 0, 0, 1}), DomainError);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const QuarticForm F = random_form(rng, 50);
        const auto base = quartic::invariants(F);
        const auto M = random_unimodular(rng);
        const QuarticForm G = quartic::gl2_transform(F, M);
        const auto inv = quartic::invariants(G);
        ASSERT_EQ(inv.I, base.I);
        ASSERT_EQ(inv.J, base.J);
        ASSERT_EQ(inv.Delta, base.Delta);
        // evaluation agrees with substitution
        for (long x = -3; x <= 3; ++x) {
            for (long y = -3; y <= 3; ++y) {
                ASSERT_EQ(G.eval(x, y), F.eval(M.b * x + M.c * y, M.d * x + M.e * y));
            }
        }
    }
}

TEST(RealRoots, Examples) {
    const Precision p{200};
    auto roots = quartic::real_roots(kWorked, p);
    ASSERT_EQ(roots.size(), 4U);
    const std::array<double, 4> expected{-1.49660576267, -0.198912367380, 0.668178637919, 5.02733949213};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(roots[i].value.to_double(), expected[i], 1e-10);
        EXPECT_EQ(roots[i].multiplicity, 1U);
        EXPECT_LT(abs(kWorked.eval(roots[i].value, Real(1L, p))).to_double(), 1e-50);
    }
    roots = quartic::real_roots(kSym, p);
    ASSERT_EQ(roots.size(), 4U);
    const Real s2 = sqrt(Real(2L, p));
    EXPECT_LT(abs(roots[0].value + s2 + 1L).to_double(), 1e-55);
    EXPECT_LT(abs(roots[1].value - (Real(1L, p) - s2)).to_double(), 1e-55);
    EXPECT_LT(abs(roots[2].value - (s2 - 1L)).to_double(), 1e-55);
    EXPECT_LT(abs(roots[3].value - (s2 + 1L)).to_double(), 1e-55);
    EXPECT_TRUE(quartic::real_roots({1, 0, 0, 0, 1}, p).empty());
}

TEST(RealRoots, Multiplicities) {
    // (z - 1)^2 (z + 2)(z - 3) and z^4
    const auto r = quartic::real_roots({1, -3, -3, 11, -6});
    ASSERT_EQ(r.size(), 3U);
    EXPECT_EQ(r[0].multiplicity, 1U);
    EXPECT_EQ(r[1].multiplicity, 2U);
    EXPECT_NEAR(r[1].value.to_double(), 1.0, 1e-30);
    const auto z4 = quartic::real_roots({1, 0, 0, 0, 0});
    ASSERT_EQ(z4.size(), 1U);
    EXPECT_EQ(z4[0].multiplicity, 4U);
    EXPECT_EQ(quartic::real_root_count({0, 1, 0, -1, 0}), 4U);  // x y (x - y)(x + y) incl. infinity
}

TEST(RealRoots, CountsMatchSignChangesOnRandomForms) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        QuarticForm F = random_form(rng, 40);
        if (F.a[0] == 0) F.a[0] = 3;
        const auto roots = quartic::real_roots(F, Precision{128});
        for (const auto& r : roots) {
            ASSERT_LT(abs(F.eval(r.value, Real(1L, Precision{128}))).to_double(), 1e-20 * (1 + std::pow(std::abs(r.value.to_double()), 4)) * 1e6);
        }
        unsigned n = 0;
        for (const auto& r : roots) n += r.multiplicity;
        // parity of the real root count matches the sign of the discriminant for square-free quartics
        const auto inv = quartic::invariants(F);
        if (inv.Delta > 0) {
            ASSERT_TRUE(n == 0 || n == 4) << F.str();
        }
        if (inv.Delta < 0) {
            ASSERT_EQ(n, 2U) << F.str();
        }
    }
}

TEST(Irreducible, Examples) {
    EXPECT_TRUE(quartic::is_irreducible({1, 0, 0, 0, 1}));
    EXPECT_TRUE(quartic::is_irreducible({1, 1, 1, 1, 1}));
    // splits only over Q(sqrt 2)
    EXPECT_TRUE(quartic::is_irreducible(kWorked));
    EXPECT_FALSE(quartic::is_irreducible(kSym));
    EXPECT_FALSE(quartic::is_irreducible({0, 1, 0, 0, 1}));
    EXPECT_FALSE(quartic::is_irreducible({1, 2, 1, 0, 0}));
}

TEST(Irreducible, AgainstConstructedProducts) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 150; ++i) {
        const long b0 = oracle::uniform(rng, 1, 9), b1 = oracle::uniform(rng, -9, 9), b2 = oracle::uniform(rng, -9, 9);
        const long c0 = oracle::uniform(rng, 1, 9), c1 = oracle::uniform(rng, -9, 9), c2 = oracle::uniform(rng, -9, 9);
        if (b2 == 0 || c2 == 0) continue;
        const QuarticForm F{b0 * c0, b0 * c1 + b1 * c0, b0 * c2 + b1 * c1 + b2 * c0, b1 * c2 + b2 * c1, b2 * c2};
        ASSERT_FALSE(quartic::is_irreducible(F)) << F.str();
    }
    EXPECT_TRUE(quartic::is_irreducible({1, 0, 0, 0, -2}));
    EXPECT_TRUE(quartic::is_irreducible({1, 0, 0, 2, 2}));
    EXPECT_TRUE(quartic::is_irreducible({3, 0, 0, 0, -2}));
    EXPECT_FALSE(quartic::is_irreducible({1, 0, 0, 0, -4}));  // (x^2 - 2y^2)(x^2 + 2y^2)
    EXPECT_FALSE(quartic::is_irreducible({4, 0, 0, 0, 1}));  // (2x^2 + 2xy + y^2)(2x^2 - 2xy + y^2)
}

TEST(Covariant, Examples) {
    const Precision p{200};
    const auto m = quartic::covariant_m(kSym, p);
    EXPECT_LT(abs(m.A - 4L).to_double(), 1e-50);
    EXPECT_LT(abs(m.B).to_double(), 1e-50);
    EXPECT_LT(abs(m.C - 4L).to_double(), 1e-50);
    const auto w = quartic::covariant_m(kWorked, p);
    const Real r32 = sqrt(Real(32L, p));
    EXPECT_LT(abs(w.A - r32).to_double(), 1e-50);
    EXPECT_LT(abs(w.B).to_double(), 1e-50);
    EXPECT_LT(abs(w.C - r32).to_double(), 1e-50);
    EXPECT_THROW(quartic::covariant_m({1, 0, 0, 0, 1}, p), DomainError);
    EXPECT_THROW(quartic::covariant_m({1, 1, 1, 1, 1}, p), DomainError);
}

TEST(Covariant, SquaresToMinusHessianOverNine) {
    const Precision p{200};
    std::mt19937_64 rng(8);
    for (int i = 0; i < 40; ++i) {
        const QuarticForm F = quartic::gl2_transform(i % 2 ? kWorked : kSym, random_unimodular(rng));
        const auto m = quartic::covariant_m(F, p);
        const QuarticForm H = quartic::hessian(F);
        ASSERT_GT((m.A * m.C * 4L - m.B * m.B).sign(), 0);
        for (long x = -4; x <= 4; ++x) {
            for (long y = -4; y <= 4; ++y) {
                const Real mv = m.eval(Real(x, p), Real(y, p));
                const Real hv = H.eval(Real(x, p), Real(y, p));
                const Real err = abs(mv * mv + hv / 9L);
                ASSERT_LT(err.to_double(), 1e-30 * (1.0 + std::abs(hv.to_double())));
            }
        }
    }
}

TEST(Reduced, Examples) {
    EXPECT_TRUE(quartic::is_reduced(kSym));
    EXPECT_TRUE(quartic::is_reduced(kWorked));
    EXPECT_FALSE(quartic::is_reduced(quartic::gl2_transform(kSym, {1, 10, 0, 1})));
}

TEST(Resolvent, Examples) {
    const Precision p{200};
    const auto r = quartic::resolvent_pair(kSym, p);
    EXPECT_LT(abs(r.scale - 1152L).to_double(), 1e-40);
    EXPECT_LT(r.residual.to_double(), 1e-9);
    const auto w = quartic::resolvent_pair(kWorked, p);
    EXPECT_LT(abs(w.scale - 2304L).to_double(), 1e-40);
    EXPECT_LT(w.residual.to_double(), 1e-9);
    // eta is the conjugate of xi
    EXPECT_EQ(w.eta_x.re, w.xi_x.re);
    EXPECT_EQ(w.eta_x.im, -w.xi_x.im);
    // at (1, 0): |1 - (eta/xi)^4| = scale |F| / |xi|^4
    const Complex xi = w.xi(1, 0), eta = w.eta(1, 0);
    const Complex ratio = pow(eta / xi, 4);
    const Complex one(Real(1L, p), Real(0L, p));
    const Real lhs = (one - ratio).abs();
    const Real rhs = w.scale * Real(1L, p) / pow(xi.abs(), 4);
    EXPECT_LT(abs(lhs - rhs).to_double(), 1e-40);
}

TEST(Resolvent, Preconditions) {
    EXPECT_THROW(quartic::resolvent_pair({1, 1, 1, 1, 1}), DomainError);
    EXPECT_THROW(quartic::resolvent_pair({0, 1, 0, -1, 0}), DomainError);
}

TEST(Resolvent, IdentityOnTransformedForms) {
    const Precision p{256};
    std::mt19937_64 rng(9);
    int built = 0;
    for (int i = 0; i < 60; ++i) {
        const QuarticForm F = quartic::gl2_transform(i % 2 ? kWorked : kSym, random_unimodular(rng));
        if (F.a[0] == 0 || quartic::hessian(F).a[4] == 0) continue;
        const auto r = quartic::resolvent_pair(F, p);
        ASSERT_LT(r.residual.to_double(), 1e-9) << F.str();
        ++built;
    }
    EXPECT_GT(built, 30);
}
