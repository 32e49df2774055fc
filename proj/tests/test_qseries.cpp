#include "cftkit/error.hpp"
#include "cftkit/qseries.hpp"
#include "oracles/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cftkit;

namespace {

PuiseuxSeries random_unit_series(std::mt19937& rng, int order, bool laurent) {
    std::uniform_int_distribution<int> c(-3, 3), e(-2, 2);
    std::vector<LaurentPoly> coeffs(static_cast<std::size_t>(order));
    coeffs[0] = LaurentPoly::monomial(laurent ? e(rng) : 0, c(rng) >= 0 ? 1 : -1);
    for (int d = 1; d < order; ++d) {
        coeffs[d].add_term(0, c(rng));
        if (laurent) {
            coeffs[d].add_term(e(rng), c(rng));
            coeffs[d].add_term(e(rng), c(rng));
        }
    }
    std::uniform_int_distribution<int> num(-5, 5);
    return PuiseuxSeries(make_rational(num(rng), 8), coeffs, laurent);
}

PuiseuxSeries random_series(std::mt19937& rng, int order) {
    std::uniform_int_distribution<int> c(-4, 4), e(-3, 3);
    std::vector<LaurentPoly> coeffs(static_cast<std::size_t>(order));
    for (auto& x : coeffs) {
        x.add_term(e(rng), c(rng));
        x.add_term(e(rng), c(rng));
    }
    return PuiseuxSeries(make_rational(c(rng), 3), coeffs, true);
}

}  // namespace

TEST(LaurentPoly, Basics) {
    LaurentPoly a = LaurentPoly::sl2_character(2);
    EXPECT_EQ(a.to_string(), "z^2 + 1 + z^-2");
    EXPECT_TRUE(a.is_symmetric());
    EXPECT_EQ(a.at_one(), 3);
    LaurentPoly b = LaurentPoly::monomial(1) - LaurentPoly::monomial(-1);
    EXPECT_EQ((a * b).to_string(), "z^3 - z^-3");
    EXPECT_EQ(laurent_divide_exact(a * b, b), a);
    EXPECT_THROW(laurent_divide_exact(a, b), ConsistencyError);
    EXPECT_THROW(laurent_divide_exact(LaurentPoly::constant(3), LaurentPoly::constant(2)), ConsistencyError);
}

TEST(LaurentPoly, SymmetricProductIsSymmetric) {
    for (long i = 0; i < 6; ++i)
        for (long j = 0; j < 6; ++j) {
            LaurentPoly p = LaurentPoly::sl2_character(i) * (LaurentPoly::sl2_character(j) + LaurentPoly::constant(2));
            EXPECT_TRUE(p.is_symmetric());
        }
}

TEST(SeriesMul, Examples) {
    std::mt19937 rng(1);
    PuiseuxSeries b = random_series(rng, 8);
    PuiseuxSeries one = PuiseuxSeries::unit(5);
    EXPECT_EQ(series_mul(one, b), b.truncated(5));
    PuiseuxSeries half = PuiseuxSeries::integer_series(make_rational(1, 2), {1});
    PuiseuxSeries prod = series_mul(half, half);
    EXPECT_EQ(prod.leading_exponent(), 1);
    EXPECT_EQ(prod.integer_coeff(0), 1);
    PuiseuxSeries p = euler_phi_inverse(10);
    PuiseuxSeries r = series_mul(p, series_inv(p));
    EXPECT_EQ(r, PuiseuxSeries::unit(10));
}

TEST(SeriesMul, CommutativeAssociative) {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        PuiseuxSeries a = random_series(rng, 9), b = random_series(rng, 7), c = random_series(rng, 8);
        EXPECT_EQ(series_mul(a, b), series_mul(b, a));
        EXPECT_EQ(series_mul(series_mul(a, b), c), series_mul(a, series_mul(b, c)));
    }
}

TEST(SeriesInv, Examples) {
    EXPECT_EQ(series_inv(PuiseuxSeries::unit(4)), PuiseuxSeries::unit(4));
    PuiseuxSeries g = PuiseuxSeries::integer_series(Rational(0), {1, -1, 0, 0, 0, 0});
    EXPECT_EQ(series_inv(g), PuiseuxSeries::integer_series(Rational(0), {1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(series_inv(euler_product(30)), euler_phi_inverse(30));
    PuiseuxSeries bad = PuiseuxSeries::integer_series(Rational(0), {2, 1});
    try {
        series_inv(bad);
        FAIL() << "expected an error";
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
    }
}

TEST(SeriesInv, RoundTripRandom) {
    std::mt19937 rng(100);
    for (int trial = 0; trial < 100; ++trial) {
        PuiseuxSeries a = random_unit_series(rng, 12, trial % 2 == 1);
        PuiseuxSeries r = series_mul(a, series_inv(a));
        EXPECT_EQ(r.leading_exponent(), 0);
        ASSERT_EQ(r.order(), 12);
        EXPECT_EQ(r.coeff(0), LaurentPoly::constant(1));
        for (int d = 1; d < 12; ++d) EXPECT_TRUE(r.coeff(d).is_zero()) << "trial " << trial << " degree " << d;
    }
}

TEST(EulerPhiInverse, MatchesPartitionOracle) {
    EXPECT_EQ(euler_phi_inverse(1).graded_dimensions(), std::vector<Integer>{1});
    std::vector<Integer> first{1, 1, 2, 3, 5, 7, 11, 15, 22, 30};
    EXPECT_EQ(euler_phi_inverse(10).graded_dimensions(), first);
    auto p = oracle::partitions(51);
    auto mine = euler_phi_inverse(51).graded_dimensions();
    EXPECT_EQ(mine, p);
    EXPECT_EQ(mine[50], 204226);
}

TEST(EulerPhiInverse, PrefixExtension) {
    for (int n = 1; n < 40; ++n) {
        auto a = euler_phi_inverse(n).coeffs();
        auto b = euler_phi_inverse(n + 1).coeffs();
        ASSERT_EQ(b.size(), a.size() + 1);
        EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
    }
}

TEST(SeriesAdd, SectorDiscipline) {
    PuiseuxSeries a = PuiseuxSeries::integer_series(make_rational(1, 3), {1, 2, 3, 4});
    PuiseuxSeries b = PuiseuxSeries::integer_series(make_rational(4, 3), {10, 20, 30});
    PuiseuxSeries s = series_add(a, b);
    EXPECT_EQ(s.leading_exponent(), make_rational(1, 3));
    EXPECT_EQ(s.graded_dimensions(), (std::vector<Integer>{1, 12, 23, 34}));
    PuiseuxSeries c = PuiseuxSeries::integer_series(make_rational(1, 2), {1});
    EXPECT_FALSE(same_sector(a, c));
    EXPECT_THROW(series_add(a, c), UsageError);
}
