#include "oracles.hpp"

#include <thue1728/curve.hpp>

#include <gtest/gtest.h>

using namespace thue1728;
using curve::Kind;

namespace {

std::vector<std::pair<mpz_class, mpz_class>> xy(const std::vector<curve::CurvePoint>& pts) {
    std::vector<std::pair<mpz_class, mpz_class>> out;
    for (const auto& p : pts) out.emplace_back(p.X, p.Y);
    return out;
}

}  // namespace

TEST(CurvePoints, Examples) {
    const auto two = curve::enumerate_curve_points(2, 1000);
    EXPECT_EQ(xy(two), (std::vector<std::pair<mpz_class, mpz_class>>{{-1, 1}, {0, 0}, {2, 2}, {338, 6214}}));
    EXPECT_EQ(two[0].kind, Kind::exceptional);
    EXPECT_EQ(two[1].kind, Kind::exceptional);
    EXPECT_EQ(two[2].kind, Kind::generic);
    EXPECT_EQ(two[3].kind, Kind::generic);
    EXPECT_EQ(two[1].sign_count(), 1);
    EXPECT_EQ(two[3].sign_count(), 2);

    EXPECT_EQ(xy(curve::enumerate_curve_points(1, 1000)),
              (std::vector<std::pair<mpz_class, mpz_class>>{{-1, 0}, {0, 0}, {1, 0}}));
    const auto five = curve::enumerate_curve_points(5, 1000);
    EXPECT_EQ(five.front().X, -1);  // X = -2 gives 2
    bool has = false;
    for (const auto& p : five) has = has || (p.X == -1 && p.Y == 2);
    EXPECT_TRUE(has);
    EXPECT_THROW(curve::enumerate_curve_points(4, 10), DomainError);
}

TEST(CurvePoints, MatchesMpzScan) {
    for (long N = 1; N <= 60; ++N) {
        if (!oracle::squarefree(N)) continue;
        const auto got = xy(curve::enumerate_curve_points(N, 20000));
        ASSERT_EQ(got, oracle::curve_points(N, 20000)) << N;
    }
}

TEST(Decompose, WorkedPoint) {
    const curve::CurvePoint p{338, 6214, 2, Kind::generic};
    const auto q = curve::decompose_point(p);
    ASSERT_TRUE(q);
    EXPECT_EQ(q->D, 2);
    EXPECT_EQ(q->y, 13);
    EXPECT_EQ(q->x, 239);
    EXPECT_EQ(q->k, -1);
    EXPECT_FALSE(curve::decompose_point({-1, 1, 2, Kind::exceptional}));
    EXPECT_FALSE(curve::decompose_point({0, 0, 2, Kind::exceptional}));
    EXPECT_THROW(curve::decompose_point({3, 1, 2, Kind::generic}), DomainError);
}

TEST(Decompose, EveryGenericPointHasDividingD) {
    for (long N = 2; N <= 200; ++N) {
        if (!oracle::squarefree(N)) continue;
        for (const auto& p : curve::enumerate_curve_points(N, 50000)) {
            const auto q = curve::decompose_point(p);
            if (!q) continue;
            ASSERT_EQ(N % q->D.get_si(), 0) << N << " X=" << p.X;
            ASSERT_TRUE(q->valid());
            ASSERT_EQ(q->D * q->y * q->y, p.X);
            ASSERT_EQ(q->x * q->y * q->D, p.Y);
        }
    }
}

TEST(QuarticPoints, MatchesOracle) {
    for (long D : {2L, 3L, 5L, 6L, 7L, 13L}) {
        for (long k : {-1L, -2L, -3L, -5L, -7L, -11L}) {
            std::vector<std::pair<mpz_class, mpz_class>> want;
            for (const auto& [x, y] : oracle::quartic_points(D, k, 3000)) {
                if (x > 0 && y > 0) want.emplace_back(x, y);
            }
            std::vector<std::pair<mpz_class, mpz_class>> got;
            for (const auto& q : curve::enumerate_quartic_points(D, k, 3000)) got.emplace_back(q.x, q.y);
            ASSERT_EQ(got, want) << D << " " << k;
        }
    }
}

TEST(Verify, TwoAndSix) {
    curve::VerifyConfig cfg;
    cfg.X_max = 100000;
    cfg.y_max = 1000;
    const auto v2 = curve::verify_theorems(2, cfg);
    EXPECT_TRUE(v2.ok());
    EXPECT_EQ(v2.generic_signed, 4U);
    EXPECT_EQ(v2.total_signed, 7U);
    ASSERT_EQ(v2.quartics.size(), 1U);
    const auto& q = v2.quartics[0];
    EXPECT_EQ(q.k, -1);
    EXPECT_EQ(q.points.size(), 2U);  // (1, 1) and (239, 13)
    EXPECT_TRUE(q.within_main);
    EXPECT_TRUE(q.mainqe.applicable);
    EXPECT_EQ(q.round_trips.size(), 2U);
    for (const auto& rt : q.round_trips) EXPECT_TRUE(rt.ok) << rt.failure;
    EXPECT_NEAR(q.share.to_double(), v2.curve_bound.value.to_double(), 1e-9);

    const auto v6 = curve::verify_theorems(6, cfg);
    EXPECT_TRUE(v6.ok());
    EXPECT_EQ(v6.quartics.size(), 3U);
    double shares = 0;
    for (const auto& qc : v6.quartics) shares += qc.share.to_double();
    EXPECT_NEAR(shares / v6.curve_bound.value.to_double(), 1.0, 1e-12);
    EXPECT_THROW(curve::verify_theorems(12, cfg), DomainError);
}

TEST(Verify, CsvRows) {
    curve::VerifyConfig cfg;
    cfg.X_max = 1000;
    cfg.y_max = 100;
    const auto v = curve::verify_theorems(30, cfg);
    const std::string rows = curve::csv_rows(v);
    EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 7);
    EXPECT_EQ(rows.rfind("30,2,-15,", 0), 0U);
    const std::string header = curve::csv_header();
    EXPECT_EQ(std::count(header.begin(), header.end(), ','), 7);
}
