#include "oracles.hpp"

#include <thue1728/reduction.hpp>

#include <gtest/gtest.h>

using namespace thue1728;
using reduction::Parity;
using reduction::TernarySolution;

namespace {

const reduction::ThueInstance& only_instance(const std::vector<reduction::BranchOutcome>& outs) {
    for (const auto& o : outs) {
        if (o.instance) return *o.instance;
    }
    throw std::runtime_error("no instance");
}

}  // namespace

TEST(Branches, OddBranchNorm) {
    const auto e2 = quadratic::fundamental_unit(2);
    for (const auto& orbit : pell::orbits(2, -7)) {
        const auto bp = reduction::branches(orbit, e2);
        EXPECT_TRUE(bp.even.norm_ok);
        EXPECT_FALSE(bp.odd.norm_ok);
        EXPECT_EQ(bp.odd.s * bp.odd.s - 2 * bp.odd.t * bp.odd.t, 7);
    }
    const auto bp3 = reduction::branches(pell::orbits(3, -2).at(0), quadratic::fundamental_unit(3));
    EXPECT_EQ(bp3.odd.s, 5);
    EXPECT_EQ(bp3.odd.t, 3);
    EXPECT_TRUE(bp3.odd.norm_ok);
}

TEST(Branches, TBound) {
    const Precision p{128};
    for (long D = 2; D <= 60; ++D) {
        if (!oracle::squarefree(D)) continue;
        const auto eps = quadratic::fundamental_unit(D);
        for (long k = -30; k <= -1; ++k) {
            const Real lb = reduction::branch_t_log_bound(D, k, eps, p);
            for (const auto& orbit : pell::orbits(D, k)) {
                const auto bp = reduction::branches(orbit, eps);
                for (const auto* br : {&bp.even, &bp.odd}) {
                    if (!br->norm_ok) continue;
                    ASSERT_LE(log(Real(br->t, p)), lb) << D << " " << k << " t=" << br->t;
                }
            }
        }
    }
}

TEST(SolveTernary, Examples) {
    EXPECT_EQ(reduction::solve_ternary(-1, -1, 1, 50), (TernarySolution{0, 1, 1}));
    EXPECT_EQ(reduction::solve_ternary(-1, -7, 2, 50), (TernarySolution{1, 1, 2}));
    const auto s = reduction::solve_ternary(-1, 1, 1, 50);
    EXPECT_NE(s.z, 0);
    EXPECT_EQ(-s.x * s.x + s.y * s.y + s.z * s.z, 0);
    try {
        reduction::solve_ternary(1, 1, 1, 50);
        FAIL() << "expected NotFoundError";
    } catch (const NotFoundError& e) {
        EXPECT_TRUE(e.provably_empty());
    }
    EXPECT_THROW(reduction::solve_ternary(0, 1, 1, 50), DomainError);
}

TEST(SolveTernary, AgreesWithLocalSolvability) {
    for (long a = -7; a <= 7; ++a) {
        for (long b = -7; b <= 7; ++b) {
            for (long c = -7; c <= 7; ++c) {
                if (!a || !b || !c || std::gcd(std::gcd(a, b), c) != 1) continue;
                const bool local = arith::ternary_locally_solvable(a, b, c);
                try {
                    const auto s = reduction::solve_ternary(a, b, c, 60);
                    ASSERT_TRUE(local);
                    ASSERT_EQ(a * s.x * s.x + b * s.y * s.y + c * s.z * s.z, 0);
                    ASSERT_NE(s.z, 0);
                    ASSERT_LE((s.x == 0) + (s.y == 0), 1);
                } catch (const NotFoundError& e) {
                    ASSERT_EQ(e.provably_empty(), !local) << a << " " << b << " " << c;
                }
            }
        }
    }
}

TEST(GaussReduce, ReducedAndEquivalent) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const mpz_class A = oracle::uniform(rng, 1, 100000);
        const mpz_class B = oracle::uniform(rng, -300000, 300000);
        const mpz_class C = (B * B) / (4 * A) + oracle::uniform(rng, 1, 1000);
        if (B * B - 4 * A * C >= 0) continue;
        const auto r = reduction::detail::gauss_reduce(A, B, C);
        ASSERT_LE(abs(r.B), r.A);
        ASSERT_LE(r.A, r.C);
        ASSERT_EQ(abs(r.m11 * r.m22 - r.m12 * r.m21), 1);
        ASSERT_EQ(r.B * r.B - 4 * r.A * r.C, B * B - 4 * A * C);
        for (long p = -2; p <= 2; ++p) {
            for (long q = -2; q <= 2; ++q) {
                const mpz_class m = r.m11 * p + r.m12 * q, n = r.m21 * p + r.m22 * q;
                ASSERT_EQ(A * m * m + B * m * n + C * n * n, r.A * p * p + r.B * p * q + r.C * q * q);
            }
        }
    }
}

TEST(BranchConic, LocalCheckMatchesFullHasse) {
    for (long D = 2; D <= 40; ++D) {
        if (!oracle::squarefree(D)) continue;
        const auto eps = quadratic::fundamental_unit(D);
        for (long k = -40; k <= -1; ++k) {
            for (const auto& orbit : pell::orbits(D, k)) {
                const auto bp = reduction::branches(orbit, eps);
                for (const auto* br : {&bp.even, &bp.odd}) {
                    if (!br->norm_ok || br->t > 1000000000) continue;
                    ASSERT_EQ(reduction::branch_conic_locally_solvable(k, br->s, br->t),
                              arith::ternary_locally_solvable(-1, k, br->t))
                        << D << " " << k << " t=" << br->t;
                }
            }
        }
    }
}

TEST(ParametrizeConic, WorkedBase) {
    const auto p = reduction::parametrize_conic(-1, -1, 1, {1, 0, 1});
    EXPECT_EQ(p.R1, 1);
    EXPECT_EQ(p.S1, 0);
    EXPECT_EQ(p.T1, -1);
    EXPECT_EQ(p.R2, 0);
    EXPECT_EQ(p.S2, -1);
    EXPECT_EQ(p.T2, 0);
    EXPECT_EQ(p.z1, 1);
    auto bad = p;
    bad.R1 += 1;
    EXPECT_THROW(reduction::validate_relations(bad), IdentityFailure);
    EXPECT_THROW(reduction::parametrize_conic(-1, -1, 1, {1, 1, 1}), DomainError);
    EXPECT_THROW(reduction::parametrize_conic(-1, 1, 1, {0, 0, 1}), DomainError);
}

TEST(ParametrizeConic, ImageLiesOnConic) {
    std::mt19937_64 rng(17);
    const std::vector<std::array<long, 3>> conics{{-1, -1, 1}, {-1, -7, 2}, {-1, 1, 1}, {-1, -2, 3}, {3, 5, -2}, {-1, -5, 6}};
    for (const auto& [a, b, c] : conics) {
        const auto base = reduction::solve_ternary(a, b, c, 100);
        const auto p = reduction::parametrize_conic(a, b, c, base);
        for (int i = 0; i < 200; ++i) {
            const mpz_class u = oracle::uniform(rng, -60, 60), v = oracle::uniform(rng, -60, 60);
            const mpz_class x = p.q1(u, v), y = p.q2(u, v);
            const mpz_class z = p.z1 * (a * u * u + b * v * v);
            ASSERT_EQ(a * x * x + b * y * y + c * z * z, 0) << a << " " << b << " " << c;
        }
    }
}

TEST(ThueInstance, WorkedExample) {
    auto outs = reduction::reduce(2, -1);
    ASSERT_EQ(outs.size(), 2U);
    EXPECT_EQ(outs[0].status, reduction::BranchStatus::built);
    EXPECT_EQ(outs[1].status, reduction::BranchStatus::excluded_norm);
    const auto& inst = only_instance(outs);
    EXPECT_EQ(inst.form, (quartic::QuarticForm{1, -4, -6, 4, 1}));
    EXPECT_EQ(inst.invariant.I, 96);
    EXPECT_EQ(inst.param.delta, 2);
    ASSERT_EQ(inst.targets.size(), 2U);
    EXPECT_EQ(inst.targets[0].h, 1);
    EXPECT_EQ(inst.targets[1].h, 4);
    EXPECT_EQ(inst.targets[1].P, 2);
    EXPECT_EQ(inst.targets[1].Q, 1);
}

TEST(ThueInstance, UvToXy) {
    const auto outs = reduction::reduce(2, -1);
    const auto& inst = only_instance(outs);
    auto r = reduction::uv_to_XY(inst, 1, 0, 1, 1);
    ASSERT_TRUE(r.XY);
    EXPECT_EQ(r.XY->first, 1);
    EXPECT_EQ(r.XY->second, 1);
    r = reduction::uv_to_XY(inst, 5, 1, 2, 1);
    ASSERT_TRUE(r.XY);
    EXPECT_EQ(r.XY->first, 239);
    EXPECT_EQ(r.XY->second, 13);
    EXPECT_EQ(r.m, 7);
    EXPECT_EQ(r.n, 5);
    r = reduction::uv_to_XY(inst, 1, 1, 1, 1);
    EXPECT_FALSE(r.XY);
    EXPECT_EQ(r.reason, reduction::Rejection::not_a_unit);
    EXPECT_EQ(reduction::uv_to_XY(inst, 1, 0, 0, 1).reason, reduction::Rejection::zero_parameter);
}

TEST(ThueInstance, XyToMn) {
    const auto outs = reduction::reduce(2, -1);
    const auto& br = outs[0].branch;
    const auto r = reduction::XY_to_mn(239, 13, br);
    ASSERT_TRUE(r.mn);
    EXPECT_EQ(abs(r.mn->first), 7);
    EXPECT_EQ(abs(r.mn->second), 5);
    reduction::ParityBranch other = br;
    other.s = 3;
    other.t = 2;
    EXPECT_FALSE(reduction::XY_to_mn(1, 1, other).mn);
    EXPECT_FALSE(reduction::XY_to_mn(2, 1, br).mn);
}

TEST(ThueInstance, RoundTripWorked) {
    auto outs = reduction::reduce(2, -1);
    const auto rt = reduction::round_trip(outs, 239, 13);
    ASSERT_TRUE(rt.ok) << rt.failure;
    EXPECT_EQ(rt.pre.u, 5);
    EXPECT_EQ(rt.pre.v, 1);
    EXPECT_EQ(rt.pre.P, 2);
    EXPECT_EQ(rt.pre.Q, 1);
    EXPECT_EQ(rt.F_value, -4);
    EXPECT_EQ(only_instance(outs).form.eval(5, 1), -4);
}

TEST(ThueInstance, OddBranchOfThreeMinusTwo) {
    const auto outs = reduction::reduce(3, -2);
    ASSERT_EQ(outs.size(), 2U);
    EXPECT_EQ(outs[1].branch.s, 5);
    EXPECT_EQ(outs[1].branch.t, 3);
    for (const auto& o : outs) {
        if (o.instance) {
            EXPECT_EQ(quartic::invariants(o.instance->form).J, 0);
        }
    }
}

TEST(ThueInstance, NegativeKOnly) { EXPECT_THROW(reduction::reduce(2, 7), DomainError); }

TEST(ThueInstance, EverySmallPointRoundTrips) {
    // brute-force points of X^2 - D Y^4 = k must all map to a Thue solution and back
    std::size_t points = 0;
    for (long D = 2; D <= 30; ++D) {
        if (!oracle::squarefree(D)) continue;
        for (long k = -60; k <= -1; ++k) {
            const auto pts = oracle::quartic_points(D, k, 3000);
            if (pts.empty()) continue;
            auto outs = reduction::reduce(D, k);
            for (const auto& o : outs) {
                if (o.instance) {
                    ASSERT_EQ(o.instance->invariant.I, quartic::invariants(o.instance->form).I);
                }
            }
            for (const auto& [X, Y] : pts) {
                for (const mpz_class& sx : {X, mpz_class(-X)}) {
                    const auto rt = reduction::round_trip(outs, sx, Y);
                    ASSERT_TRUE(rt.ok) << "D=" << D << " k=" << k << " (" << sx << "," << Y << "): " << rt.failure;
                    ASSERT_EQ(arith::gcd(rt.pre.u, rt.pre.v), 1);
                    ++points;
                }
            }
        }
    }
    EXPECT_GT(points, 50U);
}

TEST(ThueInstance, BuiltInstancesHaveFourRealRootsAndZeroJ) {
    for (long D = 2; D <= 50; ++D) {
        if (!oracle::squarefree(D)) continue;
        for (long k = -30; k <= -1; ++k) {
            for (const auto& o : reduction::reduce(D, k)) {
                ASSERT_NE(o.status, reduction::BranchStatus::base_not_found) << D << " " << k;
                if (!o.instance) continue;
                const auto& F = o.instance->form;
                ASSERT_EQ(quartic::invariants(F).J, 0);
                ASSERT_EQ(quartic::real_root_count(F), 4U);
                ASSERT_FALSE(o.instance->targets.empty());
            }
        }
    }
}
